//! Command-line front end. Every command prints human-readable lines, then a `[result]`
//! block of `key=value` pairs that is byte-stable for fixed inputs and seed.

use crate::complexes::builders::{self, Cell};
use crate::complexes::io::{parse_surface, parse_tri3, serialize_surface, serialize_tri3};
use crate::complexes::random::{random_surface_move, random_tri3_move};
use crate::complexes::{dehn_twist, DehnWord, SurfaceComplex, Triangulation3};
use crate::groups::{FiniteGroup, DEFAULT_HOM_CAP};
use crate::qsim::{self, DEFAULT_MAX_QUBITS};
use crate::scalars::{fmt_rational, rational_to_f64, Scalar};
use crate::tensornet::{budget_from_env, TensorNetwork, DEFAULT_MEMORY};
use crate::{tlft2d, turaevviro};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "pachner", version, about = "Topological tensor network invariants, builders and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite-group surface invariants
    #[command(subcommand)]
    Tlft2(Tlft2Cmd),
    /// Fibonacci Turaev-Viro invariant
    #[command(subcommand)]
    Tv(TvCmd),
    /// Triangulation builders
    #[command(subcommand)]
    Build(BuildCmd),
    /// Pachner and Dehn-twist move checks
    #[command(subcommand)]
    Moves(MovesCmd),
    /// Simulated quantum contraction
    #[command(subcommand)]
    Qsim(QsimCmd),
}

#[derive(Args, Debug)]
struct GroupSurface {
    /// Group name (cyclic:n, dihedral:n, symmetric:n, quaternion8) or multiplication-table file
    #[arg(long)]
    group: String,
    #[arg(long)]
    surface: PathBuf,
}

#[derive(Args, Debug, Default)]
struct PlanArgs {
    /// `greedy` or a file of vertex indices
    #[arg(long, default_value = "greedy")]
    plan: String,
    /// Explicit vertex order, comma separated; overrides --plan
    #[arg(long)]
    order: Option<String>,
    /// Largest intermediate tensor, in entries
    #[arg(long, default_value_t = DEFAULT_MEMORY)]
    memory: usize,
}

#[derive(Subcommand, Debug)]
enum Tlft2Cmd {
    /// Exact invariant by state sum and by contraction
    Compute {
        #[command(flatten)]
        gs: GroupSurface,
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Three-way check against the homomorphism count and the irrep dimension sum
    Mednykh {
        #[command(flatten)]
        gs: GroupSurface,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Monte Carlo estimate of the invariant
    Mc {
        #[command(flatten)]
        gs: GroupSurface,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cap count of an ordering, or the minimum over orderings
    Caps {
        #[arg(long)]
        surface: PathBuf,
        /// Cells like `t0 e1 e2 e3 t1`
        #[arg(long)]
        ordering: Option<String>,
        /// Triangles of a disk to contract internally, comma separated
        #[arg(long)]
        disk: Option<String>,
        /// Group for the scale factor
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TvCmd {
    /// Exact invariant by enumeration
    Exact {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Invariant by contraction, with the approximation scale
    Contract {
        #[arg(long)]
        manifold: PathBuf,
        #[command(flatten)]
        plan: PlanArgs,
        /// Also enumerate and compare
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Orthogonality, pentagon, dimension and symmetry checks
    Identities,
    /// F-move unitarity and two-face step norms
    Fmove,
}

#[derive(Args, Debug)]
struct WordArgs {
    /// Signed curve indices, e.g. "1 -2"
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Grid squares
    #[arg(long, default_value_t = 3)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// Torus from a row of k squares
    TorusGrid {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-vertex genus-g surface
    Genus {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mapping torus of a Dehn word
    MappingTorus {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twisted layer capped by two solid tori
    Heegaard {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace a triangle by a capped disk
    CapDisk {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, default_value_t = 0)]
        triangle: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum MovesCmd {
    /// Random Pachner sequences; the invariant must not change
    Pachner {
        /// Surface, checked with --group
        #[arg(long, conflicts_with = "manifold", required_unless_present = "manifold")]
        surface: Option<PathBuf>,
        #[arg(long, requires = "surface")]
        group: Option<String>,
        #[arg(long)]
        manifold: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        sequences: usize,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Triangle or tetrahedron cap for growing moves
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Dehn twist on the k-square torus by flips
    DehnTwist {
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// 1 is the curve along the row, 2 the curve across square 0
        #[arg(long, default_value_t = 1)]
        curve: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        direction: i8,
    },
}

#[derive(Subcommand, Debug)]
enum QsimCmd {
    /// Compile, evaluate exactly and estimate by Hadamard tests
    Run {
        #[arg(long, conflicts_with = "manifold", required_unless_present = "manifold")]
        surface: Option<PathBuf>,
        #[arg(long, requires = "surface")]
        group: Option<String>,
        #[arg(long)]
        manifold: Option<PathBuf>,
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seeds seed..seed+runs; reports the failure fraction
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A check failed or a computation could not finish: exit 1.
    Check(String),
}

type Res<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn check<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

#[derive(Default)]
struct Report {
    text: Vec<String>,
    kv: Vec<(String, String)>,
    failed: bool,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn kv(&mut self, k: &str, v: impl ToString) {
        self.kv.push((k.to_string(), v.to_string()));
    }

    /// Records a pass/fail check as both a line and a key.
    fn verdict(&mut self, key: &str, ok: bool) {
        self.failed |= !ok;
        self.kv(key, if ok { "ok" } else { "FAIL" });
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for l in &self.text {
            writeln!(out, "{l}")?;
        }
        writeln!(out, "[result]")?;
        for (k, v) in &self.kv {
            writeln!(out, "{k}={v}")?;
        }
        Ok(())
    }
}

fn dec(x: f64) -> String {
    format!("{x:.10}")
}

/// Parses `argv` (program name first), runs the command and writes its report. Returns the
/// exit code: 0 on success, 1 when a check fails, 2 on a usage or input error.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut rep = Report::default();
    let res = match cli.command {
        Command::Tlft2(c) => tlft2(c, &mut rep),
        Command::Tv(c) => tv(c, &mut rep),
        Command::Build(c) => build(c, &mut rep),
        Command::Moves(c) => moves(c, &mut rep),
        Command::Qsim(c) => qsim_cmd(c, &mut rep),
    };
    match res {
        Ok(()) => {
            if rep.write(out).is_err() {
                return 1;
            }
            i32::from(rep.failed)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Check(m)) => {
            let _ = rep.write(out);
            eprintln!("error: {m}");
            1
        }
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Res<SurfaceComplex> {
    parse_surface(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_manifold(path: &Path) -> Res<Triangulation3> {
    parse_tri3(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(arg: &str) -> Res<FiniteGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        FiniteGroup::parse(&read(path)?).map_err(|e| Failure::Input(format!("{arg}: {e}")))
    } else {
        FiniteGroup::named(arg).map_err(input)
    }
}

fn parse_list(text: &str) -> Res<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Input(format!("`{t}` is not an index"))))
        .collect()
}

fn plan_for<S: Scalar>(net: &TensorNetwork<S>, p: &PlanArgs) -> Res<Vec<usize>> {
    if let Some(o) = &p.order {
        return parse_list(o);
    }
    if p.plan == "greedy" {
        return Ok(net.greedy_plan());
    }
    let text = read(Path::new(&p.plan))?;
    let body: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap()).collect();
    parse_list(&body.join(" "))
}

fn parse_cells(text: &str) -> Res<Vec<Cell>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Failure::Input(format!("`{t}` is not a cell like t0 or e3"));
            let (kind, idx) = t.split_at(1);
            let i: usize = idx.parse().map_err(|_| bad())?;
            match kind {
                "t" => Ok(Cell::Triangle(i)),
                "e" => Ok(Cell::Edge(i)),
                _ => Err(bad()),
            }
        })
        .collect()
}

fn fmt_cells(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells
        .iter()
        .map(|c| match c {
            Cell::Triangle(i) => format!("t{i}"),
            Cell::Edge(i) => format!("e{i}"),
        })
        .collect();
    parts.join(" ")
}

fn describe_surface(s: &SurfaceComplex, rep: &mut Report) {
    let genus = s.genus().map_or("-".to_string(), |g| g.to_string());
    rep.line(format!(
        "surface: {} triangles, {} edges, {} vertices, genus {genus}",
        s.triangle_count(),
        s.edge_count(),
        s.vertex_count()
    ));
}

fn describe_manifold(m: &Triangulation3, rep: &mut Report) {
    rep.line(format!(
        "triangulation: {} tetrahedra, {} edges, {} vertices, {}",
        m.tet_count(),
        m.edge_count(),
        m.vertex_count(),
        if m.is_closed() { "closed" } else { "with boundary" }
    ));
}

fn tlft2(cmd: Tlft2Cmd, rep: &mut Report) -> Res<()> {
    match cmd {
        Tlft2Cmd::Compute { gs, plan, budget } => {
            let g = load_group(&gs.group)?;
            let s = load_surface(&gs.surface)?;
            describe_surface(&s, rep);
            let exact = tlft2d::invariant_exact(&g, &s, budget.unwrap_or_else(budget_from_env)).map_err(check)?;
            let net = tlft2d::build_network(&g, &s).map_err(input)?;
            let order = plan_for(&net.network, &plan)?;
            let (val, report) = tlft2d::invariant_contract(&g, &s, Some(&order), plan.memory).map_err(check)?;
            rep.line(format!("group {} of order {}", g.name(), g.order()));
            rep.line(format!("invariant (state sum): {}  ≈ {}", fmt_rational(&exact), dec(rational_to_f64(&exact))));
            rep.line(format!("invariant (contraction): {}  Δ = {}", fmt_rational(&val), dec(report.delta)));
            rep.kv("group", g.name());
            rep.kv("value", fmt_rational(&exact));
            rep.kv("value_decimal", dec(rational_to_f64(&exact)));
            rep.kv("contract_value", fmt_rational(&val));
            rep.kv("delta", dec(report.delta));
            rep.kv("plan", join(&order));
            rep.verdict("agree", val == exact);
        }
        Tlft2Cmd::Mednykh { gs, budget } => {
            let g = load_group(&gs.group)?;
            let s = load_surface(&gs.surface)?;
            describe_surface(&s, rep);
            let exact = tlft2d::invariant_exact(&g, &s, budget.unwrap_or_else(budget_from_env)).map_err(check)?;
            let rhs = tlft2d::mednykh_rhs(&g, &s, DEFAULT_HOM_CAP).map_err(check)?;
            let closed = tlft2d::closed_form(&g, &s).map_err(check)?;
            rep.line(format!("state sum:            {}", fmt_rational(&exact)));
            rep.line(format!("|G|^(χ-1)·|Hom|:      {}", fmt_rational(&rhs)));
            let closed_s = closed.as_ref().map_or("unavailable".to_string(), fmt_rational);
            rep.line(format!("Σ dim^χ:              {closed_s}"));
            let ok = exact == rhs && closed.as_ref().is_none_or(|c| *c == exact);
            rep.line(if ok { "OK" } else { "MISMATCH" });
            rep.kv("group", g.name());
            rep.kv("value", fmt_rational(&exact));
            rep.kv("mednykh", fmt_rational(&rhs));
            rep.kv("irrep_sum", closed_s);
            rep.verdict("agree", ok);
        }
        Tlft2Cmd::Mc { gs, samples, seed } => {
            let g = load_group(&gs.group)?;
            let s = load_surface(&gs.surface)?;
            describe_surface(&s, rep);
            let est = tlft2d::monte_carlo_estimate(&g, &s, samples, seed).map_err(check)?;
            rep.line(format!("estimate {} ± {} ({} of {} samples valid)", dec(est.estimate), dec(est.std_error), est.valid, est.samples));
            rep.kv("estimate", dec(est.estimate));
            rep.kv("std_error", dec(est.std_error));
            rep.kv("valid", est.valid);
            rep.kv("samples", est.samples);
            rep.kv("seed", seed);
        }
        Tlft2Cmd::Caps { surface, ordering, disk, group } => {
            let s = load_surface(&surface)?;
            describe_surface(&s, rep);
            let k = if let Some(o) = ordering {
                let cells = parse_cells(&o)?;
                let k = tlft2d::cap_count(&s, &cells).map_err(input)?;
                rep.line(format!("ordering {} has {k} caps", fmt_cells(&cells)));
                k
            } else {
                let disk = disk.as_deref().map(parse_list).transpose()?.unwrap_or_default();
                match tlft2d::min_cap_count(&s, &disk).map_err(|e| match e {
                    tlft2d::TlftError::BadDisk(_) => input(e),
                    e => check(e),
                })? {
                    Some((k, w)) => {
                        rep.line(format!("minimum {k} caps, witness {}", fmt_cells(&w)));
                        rep.kv("witness", fmt_cells(&w));
                        k
                    }
                    None => return Err(Failure::Check("no ordering satisfies the disk constraints".into())),
                }
            };
            rep.kv("caps", k);
            if let Some(gname) = group {
                let g = load_group(&gname)?;
                rep.line(format!("scale factor |G|^(k/2) = {}", dec(tlft2d::cap_scale(&g, k))));
                rep.kv("cap_scale", dec(tlft2d::cap_scale(&g, k)));
            }
        }
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn tv(cmd: TvCmd, rep: &mut Report) -> Res<()> {
    match cmd {
        TvCmd::Exact { manifold, budget } => {
            let m = load_manifold(&manifold)?;
            describe_manifold(&m, rep);
            let v = turaevviro::tv_exact(&m, budget.unwrap_or_else(budget_from_env)).map_err(check)?;
            rep.line(format!("TV = {v}  ≈ {}", dec(v.to_f64())));
            rep.line("coefficients are over 1, t, t², t³ with t⁴ = t² + 1");
            rep.kv("value", v.coeff_string());
            rep.kv("value_decimal", dec(v.to_f64()));
        }
        TvCmd::Contract { manifold, plan, verify, budget } => {
            let m = load_manifold(&manifold)?;
            describe_manifold(&m, rep);
            let net = turaevviro::build_network(&m).map_err(input)?;
            let order = plan_for(&net.network, &plan)?;
            let c = turaevviro::tv_contract(&m, Some(&order), plan.memory).map_err(check)?;
            let floor = turaevviro::delta_prime_floor(&m);
            rep.line(format!("TV = {}  ≈ {}", c.value, dec(c.value.to_f64())));
            rep.line(format!("Δ′ = {} (floor {})", dec(c.scale), dec(floor.to_f64())));
            rep.kv("value", c.value.coeff_string());
            rep.kv("value_decimal", dec(c.value.to_f64()));
            rep.kv("delta_prime", dec(c.scale));
            rep.kv("delta_prime_floor", floor.coeff_string());
            rep.kv("plan", join(&order));
            if verify {
                let e = turaevviro::tv_exact(&m, budget.unwrap_or_else(budget_from_env)).map_err(check)?;
                rep.line(format!("enumeration: {e}"));
                rep.verdict("agree", e == c.value);
            }
        }
        TvCmd::Identities => {
            let id = turaevviro::verify_identities().map_err(check)?;
            let sym = turaevviro::verify_symmetries().map_err(check)?;
            rep.line(format!(
                "orthogonality {} cases, pentagon {} cases, dimension {} cases, symmetry {} comparisons",
                id.orthogonality, id.pentagon, id.dimension, sym
            ));
            rep.line("OK");
            rep.kv("orthogonality", id.orthogonality);
            rep.kv("pentagon", id.pentagon);
            rep.kv("dimension", id.dimension);
            rep.kv("symmetry", sym);
            rep.verdict("identities", true);
        }
        TvCmd::Fmove => {
            let mut unitary = 0;
            for x in 0..16u8 {
                let f = turaevviro::f_move_matrix(x & 1, x >> 1 & 1, x >> 2 & 1, x >> 3 & 1);
                if f.is_unitary() {
                    unitary += 1;
                } else {
                    rep.line(format!("F({}, {}, {}, {}) is not unitary", x & 1, x >> 1 & 1, x >> 2 & 1, x >> 3 & 1));
                }
            }
            let worst = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .iter()
                .map(|&e| (turaevviro::two_face_step_norm(e) - 1.0).abs())
                .fold(0.0, f64::max);
            rep.line(format!("{unitary}/16 F-moves unitary; two-face step norms within {worst:.1e} of 1"));
            let ok = unitary == 16 && worst < 1e-9;
            rep.line(if ok { "OK" } else { "FAIL" });
            rep.kv("unitary", format!("{unitary}/16"));
            rep.kv("two_face_norm_error", format!("{worst:.1e}"));
            rep.verdict("fmove", ok);
        }
    }
    Ok(())
}

fn emit(text: String, out: Option<PathBuf>, rep: &mut Report) -> Res<()> {
    match out {
        Some(p) => {
            std::fs::write(&p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            rep.line(format!("wrote {}", p.display()));
        }
        None => rep.text.extend(text.lines().map(str::to_string)),
    }
    Ok(())
}

fn surface_kv(s: &SurfaceComplex, rep: &mut Report) {
    rep.kv("triangles", s.triangle_count());
    rep.kv("edges", s.edge_count());
    rep.kv("vertices", s.vertex_count());
    rep.kv("euler", s.euler_characteristic());
}

fn manifold_kv(m: &Triangulation3, rep: &mut Report) {
    let r = m.report();
    rep.kv("tetrahedra", r.tetrahedra);
    rep.kv("edges", r.edges);
    rep.kv("vertices", r.vertices);
    rep.kv("closed", r.closed);
    rep.kv("orientable", r.orientable);
    rep.verdict("valid", r.manifold);
}

fn build(cmd: BuildCmd, rep: &mut Report) -> Res<()> {
    match cmd {
        BuildCmd::TorusGrid { k, out } => {
            let s = builders::torus_grid(k).map_err(input)?;
            emit(serialize_surface(&s), out, rep)?;
            surface_kv(&s, rep);
        }
        BuildCmd::Genus { genus, out } => {
            let s = builders::genus_surface(genus).map_err(input)?;
            emit(serialize_surface(&s), out, rep)?;
            surface_kv(&s, rep);
        }
        BuildCmd::MappingTorus { word, out } => {
            let w = DehnWord::parse(word.genus, &word.word).map_err(input)?;
            let b = builders::mapping_torus(&w, word.k).map_err(input)?;
            emit(serialize_tri3(&b.manifold), out, rep)?;
            rep.kv("word", &w);
            rep.kv("twist_tetrahedra", b.twist_tets.len());
            manifold_kv(&b.manifold, rep);
        }
        BuildCmd::Heegaard { word, out } => {
            let w = DehnWord::parse(word.genus, &word.word).map_err(input)?;
            let b = builders::heegaard(&w, word.k).map_err(input)?;
            emit(serialize_tri3(&b.manifold), out, rep)?;
            rep.kv("word", &w);
            rep.kv("twist_tetrahedra", b.twist_tets.len());
            manifold_kv(&b.manifold, rep);
        }
        BuildCmd::CapDisk { surface, triangle, out } => {
            let s = load_surface(&surface)?;
            let (s2, disk) = builders::insert_cap_disk(&s, triangle).map_err(input)?;
            emit(serialize_surface(&s2), out, rep)?;
            rep.kv("disk", join(&disk));
            surface_kv(&s2, rep);
        }
    }
    Ok(())
}

fn moves(cmd: MovesCmd, rep: &mut Report) -> Res<()> {
    match cmd {
        MovesCmd::Pachner { surface, group, manifold, sequences, steps, max_size, seed, budget } => {
            let budget = budget.unwrap_or_else(budget_from_env);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut changed = 0;
            if let Some(path) = surface {
                let g = load_group(group.as_deref().ok_or_else(|| Failure::Input("--group is required with --surface".into()))?)?;
                let base = load_surface(&path)?;
                let want = tlft2d::invariant_exact(&g, &base, budget).map_err(check)?;
                rep.line(format!("base invariant {}", fmt_rational(&want)));
                for _ in 0..sequences {
                    let mut s = base.clone();
                    let mut names = Vec::new();
                    for _ in 0..steps {
                        let (next, mv) = random_surface_move(&s, &mut rng, max_size.max(base.triangle_count())).map_err(check)?;
                        names.push(mv.to_string());
                        s = next;
                    }
                    let got = tlft2d::invariant_exact(&g, &s, budget).map_err(check)?;
                    if got != want {
                        changed += 1;
                        rep.line(format!("changed to {} after {}", fmt_rational(&got), names.join(", ")));
                    } else if sequences == 1 {
                        rep.line(format!("unchanged after {}", names.join(", ")));
                    }
                }
                rep.kv("value", fmt_rational(&want));
            } else {
                let base = load_manifold(manifold.as_deref().unwrap())?;
                let want = turaevviro::tv_exact(&base, budget).map_err(check)?;
                rep.line(format!("base invariant {want}"));
                for _ in 0..sequences {
                    let mut m = base.clone();
                    let mut names = Vec::new();
                    for _ in 0..steps {
                        let (next, mv) = random_tri3_move(&m, &mut rng, max_size.max(base.tet_count())).map_err(check)?;
                        names.push(mv.to_string());
                        m = next;
                    }
                    let got = turaevviro::tv_exact(&m, budget).map_err(check)?;
                    if got != want {
                        changed += 1;
                        rep.line(format!("changed to {got} after {}", names.join(", ")));
                    } else if sequences == 1 {
                        rep.line(format!("unchanged after {}", names.join(", ")));
                    }
                }
                rep.kv("value", want.coeff_string());
            }
            rep.line(format!("{} of {sequences} sequences changed the invariant", changed));
            rep.kv("sequences", sequences);
            rep.kv("changed", changed);
            rep.verdict("invariant", changed == 0);
        }
        MovesCmd::DehnTwist { k, curve, direction } => {
            if direction != 1 && direction != -1 {
                return Err(Failure::Input("--direction must be 1 or -1".into()));
            }
            let s = builders::torus_grid(k).map_err(input)?;
            let strip = match curve {
                1 => builders::horizontal_strip(k),
                2 => builders::vertical_strip(k, 0),
                _ => return Err(Failure::Input("--curve must be 1 or 2".into())),
            };
            let tw = dehn_twist(&s, &strip, direction).map_err(check)?;
            let flips: Vec<String> = tw.flips.iter().map(|(t, sl)| format!("{t}.{sl}")).collect();
            rep.line(format!("{} flips on a strip of {} triangles: {}", flips.len(), strip.len(), flips.join(" ")));
            rep.kv("flips", flips.len());
            rep.kv("strip", strip.len());
            rep.verdict("length", tw.flips.len() == 2 * strip.len());
            rep.verdict("incidence", tw.surface.incidence_matrix() == s.incidence_matrix());
        }
    }
    Ok(())
}

fn qsim_cmd(cmd: QsimCmd, rep: &mut Report) -> Res<()> {
    let QsimCmd::Run { surface, group, manifold, plan, eps, seed, runs, max_qubits, budget } = cmd;
    let budget = budget.unwrap_or_else(budget_from_env);
    if !(eps > 0.0) {
        return Err(Failure::Input("--eps must be positive".into()));
    }
    // Raw network value T, its exact print, and the factor mapping it to the invariant.
    let (circuit, t, t_exact, factor) = if let Some(path) = surface {
        let g = load_group(group.as_deref().ok_or_else(|| Failure::Input("--group is required with --surface".into()))?)?;
        let s = load_surface(&path)?;
        describe_surface(&s, rep);
        let net = tlft2d::build_network(&g, &s).map_err(input)?;
        let order = plan_for(&net.network, &plan)?;
        let c = qsim::compile(&net.network, &order, max_qubits).map_err(check)?;
        let t = net.network.state_sum(budget).map_err(check)?;
        (c, t.to_f64(), t.to_string(), 1.0)
    } else {
        let m = load_manifold(manifold.as_deref().unwrap())?;
        describe_manifold(&m, rep);
        let net = turaevviro::build_network(&m).map_err(input)?;
        let order = plan_for(&net.network, &plan)?;
        let c = qsim::compile(&net.network, &order, max_qubits).map_err(check)?;
        let t = net.network.state_sum(budget).map_err(check)?;
        (c, t.to_f64(), t.coeff_string(), turaevviro::vertex_factor(net.vertices).to_f64())
    };
    let entry = circuit.entry();
    let err = (entry - t / circuit.delta).abs();
    let (ue, be) = (circuit.unitarity_error(), circuit.block_error());
    rep.line(format!(
        "circuit: {} main qubits, {} ancillas, {} steps",
        circuit.main_qubits,
        circuit.ancillas,
        circuit.steps.len()
    ));
    rep.line(format!("Δ = {}, entry = {} (T/Δ = {}, error {err:.1e})", dec(circuit.delta), dec(entry), dec(t / circuit.delta)));
    let mut fails = 0;
    let mut first = None;
    for s in seed..seed + runs {
        let h = qsim::hadamard_estimate(&circuit, eps, s).map_err(check)?;
        first.get_or_insert(h);
        if (h.x.re - t).hypot(h.x.im) >= eps * circuit.delta {
            fails += 1;
        }
    }
    let h = first.unwrap();
    rep.line(format!(
        "Hadamard estimate x = {} {:+.10}i from {} shots per part (seed {seed})",
        dec(h.x.re),
        h.x.im,
        h.samples
    ));
    if factor != 1.0 {
        rep.line(format!("invariant estimate x·D^(-2V) = {}", dec(h.x.re * factor)));
    }
    rep.kv("qubits", circuit.qubits());
    rep.kv("ancillas", circuit.ancillas);
    rep.kv("delta", dec(circuit.delta));
    rep.kv("value", t_exact);
    rep.kv("entry", dec(entry));
    rep.kv("x_re", dec(h.x.re));
    rep.kv("x_im", dec(h.x.im));
    rep.kv("samples", h.samples);
    rep.kv("failures", format!("{fails}/{runs}"));
    rep.verdict("entry_check", err <= 1e-7);
    rep.verdict("unitary_check", ue <= 1e-9);
    rep.verdict("block_check", be <= 1e-9);
    Ok(())
}
