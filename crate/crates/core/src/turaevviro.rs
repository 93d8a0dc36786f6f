//! The Fibonacci Turaev-Viro model.

use crate::complexes::simplicial::local_edge_index;
use crate::complexes::{ComplexError, Triangulation3};
use crate::scalars::{FibScalar, Scalar};
use crate::tensornet::{spectral_norm, ContractionReport, Endpoint, NetError, Tensor, TensorNetwork};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TvError {
    #[error("triangulation must be closed")]
    NotClosed,
    #[error("identity check failed: {0}")]
    Identity(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Quantum dimension d₀ = 1, d₁ = φ.
pub fn d(i: u8) -> FibScalar {
    if i == 0 {
        FibScalar::one()
    } else {
        FibScalar::phi()
    }
}

/// √d₀ = 1, √d₁ = t.
pub fn sqrt_d(i: u8) -> FibScalar {
    if i == 0 {
        FibScalar::one()
    } else {
        FibScalar::t()
    }
}

/// D² = d₀² + d₁² = (5 + √5)/2.
pub fn d_squared() -> FibScalar {
    (&FibScalar::from_ints([5, 0, 0, 0]) + &FibScalar::sqrt5()).mul_ref(&FibScalar::from_rational(crate::scalars::rat(1, 2)))
}

/// A triple is admissible unless it carries exactly one 1-label.
pub fn admissible(a: u8, b: u8, c: u8) -> bool {
    a + b + c != 1
}

/// Edge order (i, j, k, l, m, n) = local edges 01, 02, 12, 23, 13, 03; the faces
/// {0,1,2}, {1,2,3}, {0,1,3}, {0,2,3} carry (i,j,k), (k,l,m), (m,n,i), (j,l,n).
pub const FACES: [[usize; 3]; 4] = [[0, 1, 2], [2, 3, 4], [4, 5, 0], [1, 3, 5]];

pub fn tuple_admissible(j: &[u8; 6]) -> bool {
    FACES.iter().all(|f| admissible(j[f[0]], j[f[1]], j[f[2]]))
}

fn symbol_uncached(j: &[u8; 6]) -> FibScalar {
    if !tuple_admissible(j) {
        return FibScalar::zero();
    }
    let one = FibScalar::one();
    let two = FibScalar::from_ints([2, 0, 0, 0]);
    let s5 = FibScalar::sqrt5();
    match j.iter().map(|&x| x as u32).sum::<u32>() {
        0 => one,
        // √(2/(1+√5)): the positive root of 1/φ is 1/t.
        3 => FibScalar::t().inv(),
        4 | 5 => &two / &(&one + &s5),
        6 => -(&two / &(&FibScalar::from_ints([3, 0, 0, 0]) + &s5)),
        s => unreachable!("admissible tuple with label sum {s}"),
    }
}

fn symbol_table() -> &'static [FibScalar; 64] {
    static TABLE: OnceLock<[FibScalar; 64]> = OnceLock::new();
    TABLE.get_or_init(|| std::array::from_fn(|x| symbol_uncached(&unpack(x))))
}

fn unpack(x: usize) -> [u8; 6] {
    std::array::from_fn(|k| ((x >> (5 - k)) & 1) as u8)
}

fn pack(j: &[u8; 6]) -> usize {
    j.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

/// The symbol |j₁ j₂ j₃; j₄ j₅ j₆|.
pub fn symbol(j: &[u8; 6]) -> FibScalar {
    symbol_table()[pack(j)].clone()
}

/// Each nonzero symbol is ±t^e; (sign, e) per packed tuple.
fn symbol_monomials() -> &'static [Option<(i8, i32)>; 64] {
    static MONO: OnceLock<[Option<(i8, i32)>; 64]> = OnceLock::new();
    MONO.get_or_init(|| {
        std::array::from_fn(|x| {
            let v = &symbol_table()[x];
            if v.is_zero() {
                return None;
            }
            for e in -8..=8 {
                for sign in [1i8, -1] {
                    let m = FibScalar::t().powi(e);
                    let m = if sign < 0 { -m } else { m };
                    if &m == v {
                        return Some((sign, e));
                    }
                }
            }
            panic!("symbol {v} is not a signed power of t")
        })
    })
}

/// The identity and the five index maps that must leave the symbol unchanged.
pub const SYMMETRIES: [[usize; 6]; 6] =
    [[0, 1, 2, 3, 4, 5], [1, 0, 2, 4, 3, 5], [0, 2, 1, 3, 5, 4], [0, 4, 5, 3, 1, 2], [3, 4, 2, 0, 1, 5], [3, 1, 5, 0, 4, 2]];

/// Number of (tuple, symmetry) pairs checked; fails on the first disagreement.
pub fn verify_symmetries() -> Result<usize, TvError> {
    let mut checked = 0;
    for x in 0..64 {
        let j = unpack(x);
        let base = symbol(&j);
        for s in &SYMMETRIES {
            let p: [u8; 6] = std::array::from_fn(|k| j[s[k]]);
            if symbol(&p) != base {
                return Err(TvError::Identity(format!("symmetry {s:?} at {j:?}")));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub orthogonality: usize,
    pub pentagon: usize,
    pub dimension: usize,
}

/// Exhaustive check of the orthogonality, pentagon and dimension identities.
pub fn verify_identities() -> Result<IdentityReport, TvError> {
    let sym = |a: [u8; 6]| symbol(&a);
    let labels = [0u8, 1];
    let mut rep = IdentityReport { orthogonality: 0, pentagon: 0, dimension: 0 };
    for x in 0..64 {
        let [j1, j2, j3, j4, j5, j6] = unpack(x);
        if !(admissible(j1, j3, j4) && admissible(j2, j4, j5) && admissible(j1, j3, j6) && admissible(j2, j5, j6)) {
            continue;
        }
        let mut sum = FibScalar::zero();
        for &j in &labels {
            let term = d(j).mul_ref(&d(j4)).mul_ref(&sym([j2, j1, j, j3, j5, j4])).mul_ref(&sym([j3, j1, j6, j2, j5, j]));
            sum = sum.add_ref(&term);
        }
        let want = if j4 == j6 { FibScalar::one() } else { FibScalar::zero() };
        if sum != want {
            return Err(TvError::Identity(format!("orthogonality at {:?}: {sum}", [j1, j2, j3, j4, j5, j6])));
        }
        rep.orthogonality += 1;
    }
    for x in 0..512usize {
        let b: [u8; 9] = std::array::from_fn(|k| ((x >> (8 - k)) & 1) as u8);
        let [j1, j2, j3, j4, j5, j6, j7, j8, j9] = b;
        if !(tuple_admissible(&[j9, j1, j4, j6, j5, j2]) && tuple_admissible(&[j8, j7, j9, j2, j5, j3])) {
            continue;
        }
        let mut lhs = FibScalar::zero();
        for &j in &labels {
            let term = d(j)
                .mul_ref(&sym([j7, j1, j, j6, j3, j2]))
                .mul_ref(&sym([j8, j, j4, j6, j5, j3]))
                .mul_ref(&sym([j8, j7, j9, j1, j4, j]));
            lhs = lhs.add_ref(&term);
        }
        let rhs = sym([j9, j1, j4, j6, j5, j2]).mul_ref(&sym([j8, j7, j9, j2, j5, j3]));
        if lhs != rhs {
            return Err(TvError::Identity(format!("pentagon at {b:?}: {lhs} vs {rhs}")));
        }
        rep.pentagon += 1;
    }
    for &j in &labels {
        let mut sum = FibScalar::zero();
        for &k in &labels {
            for &l in &labels {
                if admissible(j, k, l) {
                    sum = sum.add_ref(&d(k).mul_ref(&d(l)));
                }
            }
        }
        let v = &sum / &d(j);
        if v != d_squared() {
            return Err(TvError::Identity(format!("dimension at j = {j}: {v}")));
        }
        rep.dimension += 1;
    }
    Ok(rep)
}

/// Sum over admissible edge labelings. Interior edges weigh d_i, boundary edges √d_i; each
/// term is ±t^e, so terms are tallied by boundary labeling and exponent.
fn labeling_tally(m: &Triangulation3, budget: u64) -> Result<(Vec<usize>, HashMap<(u64, i32), i64>), TvError> {
    let ne = m.edge_count();
    let nt = m.tet_count();
    let boundary: Vec<usize> = (0..ne).filter(|&e| m.skeleton().edge_boundary[e]).collect();
    if boundary.len() > 63 {
        return Err(TvError::BudgetExceeded(budget));
    }
    // Edge order: tetrahedra in index order, each contributing its unseen edges.
    let mut order = Vec::with_capacity(ne);
    let mut level = vec![usize::MAX; ne];
    for t in 0..nt {
        for k in 0..6 {
            let e = m.edge_of(t, k);
            if level[e] == usize::MAX {
                level[e] = order.len();
                order.push(e);
            }
        }
    }
    let mut face_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); ne];
    for f in m.face_edges() {
        let l = f.iter().map(|&e| level[e]).max().unwrap();
        face_at[l].push(f);
    }
    let mut tet_at: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for t in 0..nt {
        let l = (0..6).map(|k| level[m.edge_of(t, k)]).max().unwrap();
        tet_at[l].push(t);
    }
    let weight_exp: Vec<i32> = (0..ne).map(|e| if m.skeleton().edge_boundary[e] { 1 } else { 2 }).collect();
    let bpos: Vec<Option<usize>> = (0..ne).map(|e| boundary.iter().position(|&b| b == e)).collect();
    let ctx = Tally { m, order: &order, face_at: &face_at, tet_at: &tet_at, weight_exp: &weight_exp, bpos: &bpos, budget, nodes: AtomicU64::new(0) };
    let prefix = order.len().min(6);
    let parts: Result<Vec<HashMap<(u64, i32), i64>>, TvError> = (0..1usize << prefix)
        .into_par_iter()
        .map(|p| {
            let mut st = TallyState { labels: vec![0u8; ne], sign: 1, exp: 0, out: HashMap::new() };
            ctx.descend(0, p, prefix, &mut st)?;
            Ok(st.out)
        })
        .collect();
    let mut out: HashMap<(u64, i32), i64> = HashMap::new();
    for part in parts? {
        for (k, v) in part {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok((boundary, out))
}

struct Tally<'a> {
    m: &'a Triangulation3,
    order: &'a [usize],
    face_at: &'a [Vec<[usize; 3]>],
    tet_at: &'a [Vec<usize>],
    weight_exp: &'a [i32],
    bpos: &'a [Option<usize>],
    budget: u64,
    nodes: AtomicU64,
}

struct TallyState {
    labels: Vec<u8>,
    sign: i8,
    exp: i32,
    out: HashMap<(u64, i32), i64>,
}

impl Tally<'_> {
    fn descend(&self, l: usize, prefix_bits: usize, prefix: usize, st: &mut TallyState) -> Result<(), TvError> {
        if l == self.order.len() {
            let key = st.labels.iter().enumerate().fold(0u64, |acc, (e, &x)| match self.bpos[e] {
                Some(p) if x == 1 => acc | 1 << p,
                _ => acc,
            });
            *st.out.entry((key, st.exp)).or_insert(0) += st.sign as i64;
            return Ok(());
        }
        let choices: &[u8] = if l < prefix { if (prefix_bits >> l) & 1 == 1 { &[1] } else { &[0] } } else { &[0, 1] };
        for &x in choices {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(TvError::BudgetExceeded(self.budget));
            }
            let e = self.order[l];
            st.labels[e] = x;
            if !self.face_at[l].iter().all(|f| admissible(st.labels[f[0]], st.labels[f[1]], st.labels[f[2]])) {
                continue;
            }
            let (sign0, exp0) = (st.sign, st.exp);
            st.exp += self.weight_exp[e] * x as i32;
            let mut alive = true;
            for &t in &self.tet_at[l] {
                let j: [u8; 6] = std::array::from_fn(|k| st.labels[self.m.edge_of(t, k)]);
                match symbol_monomials()[pack(&j)] {
                    Some((s, ex)) => {
                        st.sign *= s;
                        st.exp += ex;
                    }
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                self.descend(l + 1, prefix_bits, prefix, st)?;
            }
            st.sign = sign0;
            st.exp = exp0;
        }
        st.labels[self.order[l]] = 0;
        Ok(())
    }
}

fn monomial_sum<'a>(terms: impl Iterator<Item = (&'a i32, &'a i64)>) -> FibScalar {
    let mut acc = FibScalar::zero();
    for (&e, &c) in terms {
        acc = acc.add_ref(&FibScalar::t().powi(e).mul_ref(&FibScalar::from_ints([c, 0, 0, 0])));
    }
    acc
}

/// D^(−2|𝒱|).
pub fn vertex_factor(vertices: usize) -> FibScalar {
    d_squared().powi(-(vertices as i32))
}

/// The invariant by direct enumeration of admissible edge labelings.
pub fn tv_exact(m: &Triangulation3, budget: u64) -> Result<FibScalar, TvError> {
    if !m.is_closed() {
        return Err(TvError::NotClosed);
    }
    let (_, tally) = labeling_tally(m, budget)?;
    let mut terms: Vec<(i32, i64)> = tally.into_iter().map(|((_, e), c)| (e, c)).collect();
    terms.sort_unstable();
    let sum = monomial_sum(terms.iter().map(|(e, c)| (e, c)));
    Ok(sum.mul_ref(&vertex_factor(m.vertex_count())))
}

/// tqft(M): a tensor over the boundary edges (sorted by edge class), one axis each.
/// A closed input gives a rank-0 tensor equal to D^(2|𝒱|)·TV(M).
pub fn tqft_boundary(m: &Triangulation3, budget: u64) -> Result<(Vec<usize>, Tensor<FibScalar>), TvError> {
    let (boundary, tally) = labeling_tally(m, budget)?;
    let mut grouped: HashMap<u64, Vec<(i32, i64)>> = HashMap::new();
    for ((b, e), c) in tally {
        grouped.entry(b).or_default().push((e, c));
    }
    let nb = boundary.len();
    let t = Tensor::from_fn(&vec![2; nb], |idx| {
        let key = idx.iter().enumerate().fold(0u64, |acc, (p, &x)| acc | (x as u64) << p);
        match grouped.get_mut(&key) {
            Some(v) => {
                v.sort_unstable();
                monomial_sum(v.iter().map(|(e, c)| (e, c)))
            }
            None => FibScalar::zero(),
        }
    });
    Ok((boundary, t))
}

/// Symbol tensor per tetrahedron (vertex t), gluing tensor per edge class (vertex T + e).
#[derive(Debug, Clone)]
pub struct TvNetwork {
    pub network: TensorNetwork<FibScalar>,
    pub vertices: usize,
    pub tets: usize,
    /// Edge classes whose gluing tensor carries a free last axis.
    pub boundary_edges: Vec<usize>,
}

pub fn symbol_tensor() -> Tensor<FibScalar> {
    Tensor::from_fn(&[2; 6], |i| symbol(&std::array::from_fn(|k| i[k] as u8)))
}

/// Rank-`r` tensor with value `w(i)` when every index equals i.
pub fn diagonal_tensor(rank: usize, w: impl Fn(u8) -> FibScalar) -> Tensor<FibScalar> {
    Tensor::from_fn(&vec![2; rank], |i| if i.iter().all(|&x| x == i[0]) { w(i[0] as u8) } else { FibScalar::zero() })
}

pub fn build_network(m: &Triangulation3) -> Result<TvNetwork, TvError> {
    let nt = m.tet_count();
    let ne = m.edge_count();
    let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
    for t in 0..nt {
        for k in 0..6 {
            slots[m.edge_of(t, k)].push((t, k));
        }
    }
    let sym = symbol_tensor();
    let mut net = TensorNetwork::new();
    for _ in 0..nt {
        net.add_tensor(sym.clone());
    }
    let mut boundary_edges = Vec::new();
    for (e, sl) in slots.iter().enumerate() {
        let bd = m.skeleton().edge_boundary[e];
        let g = if bd {
            boundary_edges.push(e);
            diagonal_tensor(sl.len() + 1, sqrt_d)
        } else {
            diagonal_tensor(sl.len(), d)
        };
        let v = net.add_tensor(g);
        for (axis, &(t, k)) in sl.iter().enumerate() {
            net.connect(Endpoint { vertex: v, axis }, Endpoint { vertex: t, axis: k })?;
        }
    }
    Ok(TvNetwork { network: net, vertices: m.vertex_count(), tets: nt, boundary_edges })
}

#[derive(Debug, Clone)]
pub struct TvContraction {
    pub value: FibScalar,
    pub report: ContractionReport<FibScalar>,
    /// Δ·D^(−2|𝒱|).
    pub scale: f64,
}

/// Contracts the closed network along `plan` (greedy when absent) and rescales by D^(−2|𝒱|).
pub fn tv_contract(m: &Triangulation3, plan: Option<&[usize]>, memory: usize) -> Result<TvContraction, TvError> {
    if !m.is_closed() {
        return Err(TvError::NotClosed);
    }
    let net = build_network(m)?;
    let plan = plan.map(<[usize]>::to_vec).unwrap_or_else(|| net.network.greedy_plan());
    let report = net.network.contract(&plan, memory)?;
    let vf = vertex_factor(net.vertices);
    Ok(TvContraction { value: report.value.mul_ref(&vf), scale: report.delta * vf.to_f64(), report })
}

/// Product of the per-tensor norm floors, d₁^|ℰ|·D^(−2|𝒱|): every symbol tensor has norm at least
/// 1 and every gluing tensor at least d₁.
pub fn delta_prime_floor(m: &Triangulation3) -> FibScalar {
    d(1).powi(m.edge_count() as i32).mul_ref(&vertex_factor(m.vertex_count()))
}

/// Best-case growth per tetrahedron of Δ′ under one-tensor-at-a-time contraction: √(d₁³/D²).
pub fn growth_floor_per_tet() -> f64 {
    (d(1).powi(3) / d_squared()).to_f64().sqrt()
}

#[derive(Debug, Clone)]
pub struct FMove {
    /// Admissible labels of the diagonal j on the row side and j₄ on the column side.
    pub rows: Vec<u8>,
    pub cols: Vec<u8>,
    pub entries: Vec<Vec<FibScalar>>,
}

impl FMove {
    /// FᵀF, exactly.
    pub fn gram(&self) -> Vec<Vec<FibScalar>> {
        let n = self.cols.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.entries.iter().fold(FibScalar::zero(), |acc, row| acc.add_ref(&row[a].mul_ref(&row[b]))))
                    .collect()
            })
            .collect()
    }

    pub fn is_unitary(&self) -> bool {
        self.rows.len() == self.cols.len()
            && self.gram().iter().enumerate().all(|(a, r)| r.iter().enumerate().all(|(b, x)| *x == if a == b { FibScalar::one() } else { FibScalar::zero() }))
    }
}

/// F_{j, j₄} = √(d_j d_{j₄})·|j₂ j₁ j; j₃ j₅ j₄| over admissible diagonals.
pub fn f_move_matrix(j1: u8, j2: u8, j3: u8, j5: u8) -> FMove {
    let rows: Vec<u8> = [0, 1].into_iter().filter(|&j| admissible(j2, j1, j) && admissible(j, j3, j5)).collect();
    let cols: Vec<u8> = [0, 1].into_iter().filter(|&j4| admissible(j5, j4, j2) && admissible(j1, j3, j4)).collect();
    let entries = rows
        .iter()
        .map(|&j| cols.iter().map(|&j4| sqrt_d(j).mul_ref(&sqrt_d(j4)).mul_ref(&symbol(&[j2, j1, j, j3, j5, j4]))).collect())
        .collect();
    FMove { rows, cols, entries }
}

/// Operator of a tetrahedron attached along the two faces containing local edge `old`:
/// the other four edges pass through, `old` is traded for its opposite edge, and each
/// diagonal carries √d. Rows and columns are (outer labels, diagonal label).
pub fn two_face_operator(old: (u8, u8)) -> DMatrix<f64> {
    let (a, b) = old;
    let rest: Vec<u8> = (0..4).filter(|&v| v != a && v != b).collect();
    let old_e = local_edge_index::<4>(a, b);
    let new_e = local_edge_index::<4>(rest[0], rest[1]);
    let outer: Vec<usize> = (0..6).filter(|&e| e != old_e && e != new_e).collect();
    let mut m = DMatrix::zeros(32, 32);
    for o in 0..16usize {
        for x in 0..2u8 {
            for y in 0..2u8 {
                let mut j = [0u8; 6];
                for (p, &e) in outer.iter().enumerate() {
                    j[e] = ((o >> p) & 1) as u8;
                }
                j[old_e] = x;
                j[new_e] = y;
                let v = sqrt_d(x).mul_ref(&sqrt_d(y)).mul_ref(&symbol(&j));
                m[(o * 2 + y as usize, o * 2 + x as usize)] = v.to_f64();
            }
        }
    }
    m
}

/// Step norm of the two-face attachment, the operator norm of `two_face_operator`.
pub fn two_face_step_norm(old: (u8, u8)) -> f64 {
    spectral_norm(&two_face_operator(old))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensornet::{DEFAULT_BUDGET, DEFAULT_MEMORY};

    #[test]
    fn symbol_cases() {
        assert_eq!(symbol(&[0; 6]), FibScalar::one());
        assert!(symbol(&[1, 0, 0, 0, 0, 0]).is_zero());
        let v = symbol(&[1; 6]);
        assert!((v.to_f64() + 2.0 / (3.0 + 5f64.sqrt())).abs() < 1e-14);
        let s3 = symbol(&[0, 0, 0, 1, 1, 1]);
        assert_eq!(s3.mul_ref(&s3), symbol(&[0, 1, 1, 0, 1, 1]));
        assert_eq!((0..64).filter(|&x| tuple_admissible(&unpack(x))).count(), 15);
    }

    #[test]
    fn identities_and_symmetries() {
        let r = verify_identities().unwrap();
        assert_eq!(r.dimension, 2);
        assert!(r.orthogonality > 0 && r.pentagon > 0);
        assert_eq!(verify_symmetries().unwrap(), 384);
    }

    #[test]
    fn sphere_value() {
        let v2 = tv_exact(&Triangulation3::two_tet_sphere(), DEFAULT_BUDGET).unwrap();
        let v5 = tv_exact(&Triangulation3::five_tet_sphere(), DEFAULT_BUDGET).unwrap();
        assert_eq!(v2, d_squared().inv());
        assert_eq!(v2, v5);
        let c = tv_contract(&Triangulation3::two_tet_sphere(), None, DEFAULT_MEMORY).unwrap();
        assert_eq!(c.value, v2);
        assert!(tv_exact(&Triangulation3::single_tetrahedron(), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn delta_floor_single_tet() {
        let want = &(&FibScalar::from_ints([3, 0, 0, 0]) + &FibScalar::sqrt5()) / &FibScalar::from_ints([50, 0, 0, 0]);
        assert_eq!(delta_prime_floor(&Triangulation3::single_tetrahedron()), want);
        assert!((growth_floor_per_tet() - 1.0820).abs() < 1e-3);
    }

    #[test]
    fn f_moves_unitary() {
        for o in 0..16u8 {
            let f = f_move_matrix(o & 1, o >> 1 & 1, o >> 2 & 1, o >> 3 & 1);
            assert!(f.is_unitary(), "{o}");
        }
        assert_eq!(f_move_matrix(0, 0, 0, 0).entries, vec![vec![FibScalar::one()]]);
        assert!((two_face_step_norm((0, 3)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_tensor() {
        let (bd, t) = tqft_boundary(&Triangulation3::single_tetrahedron(), DEFAULT_BUDGET).unwrap();
        assert_eq!(bd.len(), 6);
        assert_eq!(t.rank(), 6);
        let (_, closed) = tqft_boundary(&Triangulation3::two_tet_sphere(), DEFAULT_BUDGET).unwrap();
        let v = tv_exact(&Triangulation3::two_tet_sphere(), DEFAULT_BUDGET).unwrap();
        assert_eq!(closed.data()[0], v.mul_ref(&d_squared().powi(4)));
    }
}
