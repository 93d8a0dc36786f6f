//! The lattice field theory of a finite group on closed oriented surfaces.

use crate::complexes::builders::Cell;
use crate::complexes::SurfaceComplex;
use crate::groups::{FiniteGroup, GroupError};
use crate::scalars::{QuadScalar, Scalar};
use crate::tensornet::{ContractionReport, Endpoint, NetError, Tensor, TensorNetwork};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlftError {
    #[error("surface must be closed and orientable")]
    NotClosedOriented,
    #[error("triangle tensor is not cyclically invariant")]
    NotCyclic,
    #[error("2-2 move equation fails at ({0}, {1}, {2}, {3})")]
    Associativity(usize, usize, usize, usize),
    #[error("state sum is irrational: {0}")]
    Irrational(String),
    #[error("ordering is not a permutation of the surface's edges and triangles")]
    BadOrdering,
    #[error("disk triangle {0} is out of range")]
    BadDisk(usize),
    #[error("{0} cells are too many for the exhaustive ordering search")]
    TooManyCells(usize),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The triangle tensor C and gluing tensor g of a group.
pub fn triangle_tensor(g: &FiniteGroup) -> Tensor<QuadScalar> {
    let n = g.order();
    let c = QuadScalar::new(BigRational::zero(), BigRational::new(BigInt::one(), BigInt::from(n)), n as u64);
    Tensor::from_fn(&[n; 3], |i| if g.mul(g.mul(i[0], i[1]), i[2]) == 0 { c.clone() } else { QuadScalar::zero() })
}

pub fn gluing_tensor(g: &FiniteGroup) -> Tensor<QuadScalar> {
    let n = g.order();
    Tensor::from_fn(&[n; 2], |i| QuadScalar::from_rational(BigRational::from_integer(BigInt::from((g.mul(i[0], i[1]) == 0) as u8))))
}

/// Network of a closed oriented surface: vertex `t` is triangle `t`, vertex `T + e` is edge `e`.
#[derive(Debug, Clone)]
pub struct Tlft2dNetwork {
    pub network: TensorNetwork<QuadScalar>,
    pub cells: Vec<Cell>,
}

impl Tlft2dNetwork {
    pub fn vertex_of(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&x| x == c)
    }

    /// Contraction plan following an ordering of cells.
    pub fn plan_for(&self, ordering: &[Cell]) -> Option<Vec<usize>> {
        ordering.iter().map(|&c| self.vertex_of(c)).collect()
    }
}

fn require_oriented(s: &SurfaceComplex) -> Result<(), TlftError> {
    if s.is_closed() && s.is_oriented() {
        Ok(())
    } else {
        Err(TlftError::NotClosedOriented)
    }
}

/// Triangle axes follow slots 0, 1, 2, which is the boundary cycle of an oriented triangle.
/// The lower (triangle, slot) side of each edge feeds axis 0 of its gluing tensor.
pub fn build_network(g: &FiniteGroup, s: &SurfaceComplex) -> Result<Tlft2dNetwork, TlftError> {
    let s = if s.is_closed() && s.is_orientable() && !s.is_oriented() { s.oriented().ok_or(TlftError::NotClosedOriented)? } else { s.clone() };
    require_oriented(&s)?;
    let c = triangle_tensor(g);
    let gl = gluing_tensor(g);
    verify_cyclic(&c)?;
    verify_associativity(g, &c, &gl)?;
    let mut net = TensorNetwork::new();
    let mut cells = Vec::new();
    for t in 0..s.triangle_count() {
        net.add_tensor(c.clone());
        cells.push(Cell::Triangle(t));
    }
    for (e, sides) in s.edge_sides().iter().enumerate() {
        let v = net.add_tensor(gl.clone());
        cells.push(Cell::Edge(e));
        let mut sides = sides.clone();
        sides.sort_unstable();
        for (axis, &(t, k)) in sides.iter().enumerate() {
            net.connect(Endpoint { vertex: v, axis }, Endpoint { vertex: t, axis: k as usize })?;
        }
    }
    Ok(Tlft2dNetwork { network: net, cells })
}

pub fn verify_cyclic(c: &Tensor<QuadScalar>) -> Result<(), TlftError> {
    let n = c.dims()[0];
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                if c.get(&[a, b, d]) != c.get(&[b, d, a]) {
                    return Err(TlftError::NotCyclic);
                }
            }
        }
    }
    Ok(())
}

/// Checks C^{abc} g_{cd} C^{def} = C^{acf} g_{cd} C^{bed} entrywise, summing over c and d.
pub fn verify_associativity(g: &FiniteGroup, c: &Tensor<QuadScalar>, gl: &Tensor<QuadScalar>) -> Result<(), TlftError> {
    let n = g.order();
    let nz3: Vec<(usize, usize, usize)> =
        (0..n * n * n).map(|o| (o / (n * n), (o / n) % n, o % n)).filter(|&(a, b, d)| !c.get(&[a, b, d]).is_zero()).collect();
    let nz2: Vec<(usize, usize)> = (0..n * n).map(|o| (o / n, o % n)).filter(|&(a, b)| !gl.get(&[a, b]).is_zero()).collect();
    let mut g_by_first: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(x, y) in &nz2 {
        g_by_first.entry(x).or_default().push(y);
    }
    let mut c_by_first: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut c_by_last: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &(x, y, z) in &nz3 {
        c_by_first.entry(x).or_default().push((y, z));
        c_by_last.entry(z).or_default().push((x, y));
    }
    let mut lhs: HashMap<[usize; 4], QuadScalar> = HashMap::new();
    let mut rhs: HashMap<[usize; 4], QuadScalar> = HashMap::new();
    let add = |m: &mut HashMap<[usize; 4], QuadScalar>, k: [usize; 4], v: QuadScalar| {
        let e = m.entry(k).or_insert_with(QuadScalar::zero);
        *e = e.add_ref(&v);
    };
    for &(a, b, cc) in &nz3 {
        for &d in g_by_first.get(&cc).into_iter().flatten() {
            for &(e, f) in c_by_first.get(&d).into_iter().flatten() {
                let v = c.get(&[a, b, cc]).mul_ref(gl.get(&[cc, d])).mul_ref(c.get(&[d, e, f]));
                add(&mut lhs, [a, b, e, f], v);
            }
        }
    }
    // Right side: C^{acf} g_{cd} C^{bed}.
    for &(a, cc, f) in &nz3 {
        for &d in g_by_first.get(&cc).into_iter().flatten() {
            for &(b, e) in c_by_last.get(&d).into_iter().flatten() {
                let v = c.get(&[a, cc, f]).mul_ref(gl.get(&[cc, d])).mul_ref(c.get(&[b, e, d]));
                add(&mut rhs, [a, b, e, f], v);
            }
        }
    }
    lhs.retain(|_, v| !v.is_zero());
    rhs.retain(|_, v| !v.is_zero());
    for (k, v) in lhs.iter() {
        if rhs.get(k) != Some(v) {
            return Err(TlftError::Associativity(k[0], k[1], k[2], k[3]));
        }
    }
    if let Some(k) = rhs.keys().find(|k| !lhs.contains_key(*k)) {
        return Err(TlftError::Associativity(k[0], k[1], k[2], k[3]));
    }
    Ok(())
}

fn demote(v: QuadScalar) -> Result<BigRational, TlftError> {
    v.to_rational().ok_or_else(|| TlftError::Irrational(v.to_string()))
}

/// The invariant as an exact state sum.
pub fn invariant_exact(g: &FiniteGroup, s: &SurfaceComplex, budget: u64) -> Result<BigRational, TlftError> {
    demote(build_network(g, s)?.network.state_sum(budget)?)
}

/// Contracts along `plan` (or the greedy plan) and demotes the value.
pub fn invariant_contract(g: &FiniteGroup, s: &SurfaceComplex, plan: Option<&[usize]>, memory: usize) -> Result<(BigRational, ContractionReport<QuadScalar>), TlftError> {
    let n = build_network(g, s)?.network;
    let plan = plan.map(<[usize]>::to_vec).unwrap_or_else(|| n.greedy_plan());
    let r = n.contract(&plan, memory)?;
    Ok((demote(r.value.clone())?, r))
}

fn pow_rational(base: usize, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

fn genus_of(s: &SurfaceComplex) -> Result<usize, TlftError> {
    s.genus().ok_or(TlftError::NotClosedOriented)
}

/// |G|^(χ−1) · |Hom(π₁(S), G)|.
pub fn mednykh_rhs(g: &FiniteGroup, s: &SurfaceComplex, cap: u64) -> Result<BigRational, TlftError> {
    let genus = genus_of(s)?;
    let hom = g.hom_count(genus, cap)?;
    Ok(pow_rational(g.order(), s.euler_characteristic() - 1) * BigRational::from_integer(BigInt::from(hom)))
}

/// Σ dim(ρ)^χ over the shipped irrep dimensions.
pub fn closed_form(g: &FiniteGroup, s: &SurfaceComplex) -> Result<Option<BigRational>, TlftError> {
    let chi = s.euler_characteristic();
    genus_of(s)?;
    Ok(g.irrep_dims().map(|dims| dims.iter().map(|&d| pow_rational(d as usize, chi)).sum()))
}

/// One element per edge on its lower side, the inverse on the other; counts assignments where
/// every triangle's slots multiply, in slot order, to the identity.
pub fn valid_labeling_count(g: &FiniteGroup, s: &SurfaceComplex, budget: u64) -> Result<u128, TlftError> {
    require_oriented(s)?;
    let sides = s.edge_sides();
    let nt = s.triangle_count();
    // slot_ref[t][k] = (edge, inverted)
    let mut slot_ref = vec![[(0usize, false); 3]; nt];
    for (e, sd) in sides.iter().enumerate() {
        let mut sd = sd.clone();
        sd.sort_unstable();
        for (i, &(t, k)) in sd.iter().enumerate() {
            slot_ref[t][k as usize] = (e, i == 1);
        }
    }
    // Edge order: triangle by triangle, so constraints close early.
    let mut order = Vec::new();
    let mut placed = vec![usize::MAX; sides.len()];
    for row in &slot_ref {
        for &(e, _) in row {
            if placed[e] == usize::MAX {
                placed[e] = order.len();
                order.push(e);
            }
        }
    }
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (t, row) in slot_ref.iter().enumerate() {
        let last = row.iter().map(|&(e, _)| placed[e]).max().unwrap();
        closes[last].push(t);
    }
    let n = g.order();
    let nodes = std::sync::atomic::AtomicU64::new(0);
    let ctx = LabelSearch { g, slot_ref: &slot_ref, order: &order, closes: &closes, budget, nodes: &nodes };
    let total: Result<Vec<u128>, TlftError> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut labels = vec![0usize; order.len()];
            ctx.count(0, x, &mut labels)
        })
        .collect();
    Ok(total?.into_iter().sum())
}

struct LabelSearch<'a> {
    g: &'a FiniteGroup,
    slot_ref: &'a [[(usize, bool); 3]],
    order: &'a [usize],
    closes: &'a [Vec<usize>],
    budget: u64,
    nodes: &'a std::sync::atomic::AtomicU64,
}

impl LabelSearch<'_> {
    fn count(&self, l: usize, x: usize, labels: &mut [usize]) -> Result<u128, TlftError> {
        if self.nodes.fetch_add(1, std::sync::atomic::Ordering::Relaxed) >= self.budget {
            return Err(NetError::BudgetExceeded(self.budget).into());
        }
        labels[self.order[l]] = x;
        for &t in &self.closes[l] {
            let prod = self.slot_ref[t].iter().fold(0, |acc, &(e, inv)| {
                let y = if inv { self.g.inv(labels[e]) } else { labels[e] };
                self.g.mul(acc, y)
            });
            if prod != 0 {
                return Ok(0);
            }
        }
        if l + 1 == self.order.len() {
            return Ok(1);
        }
        let mut total = 0;
        for y in 0..self.g.order() {
            total += self.count(l + 1, y, labels)?;
        }
        Ok(total)
    }
}

/// |G|^(T−E) · count.
pub fn labeling_identity(g: &FiniteGroup, s: &SurfaceComplex, count: u128) -> BigRational {
    let e = s.triangle_count() as i64 - s.edge_count() as i64;
    pow_rational(g.order(), e) * BigRational::from_integer(BigInt::from(count))
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub valid: u64,
    pub samples: u64,
}

const MC_BLOCK: u64 = 1 << 16;

/// Samples every triangle slot uniformly and independently; the hit rate times |G|^(4T−E)
/// estimates the invariant. Blocks draw from separate streams of one seed, so the result
/// does not depend on thread count.
pub fn monte_carlo_estimate(g: &FiniteGroup, s: &SurfaceComplex, samples: u64, seed: u64) -> Result<McEstimate, TlftError> {
    require_oriented(s)?;
    let samples = samples.max(1);
    let nt = s.triangle_count();
    let n = g.order();
    let glued: Vec<(usize, usize)> = s
        .edge_sides()
        .iter()
        .map(|sd| (sd[0].0 * 3 + sd[0].1 as usize, sd[1].0 * 3 + sd[1].1 as usize))
        .collect();
    let blocks = samples.div_ceil(MC_BLOCK);
    let valid: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut slots = vec![0usize; 3 * nt];
            let mut hits = 0;
            for _ in 0..count {
                for x in slots.iter_mut() {
                    *x = rng.gen_range(0..n);
                }
                let tri_ok = (0..nt).all(|t| g.mul(g.mul(slots[3 * t], slots[3 * t + 1]), slots[3 * t + 2]) == 0);
                if tri_ok && glued.iter().all(|&(a, b)| g.mul(slots[a], slots[b]) == 0) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let scale = (n as f64).powi(4 * nt as i32 - s.edge_count() as i32);
    let p = valid as f64 / samples as f64;
    Ok(McEstimate { estimate: scale * p, std_error: scale * (p * (1.0 - p) / samples as f64).sqrt(), valid, samples })
}

fn cell_neighbours(s: &SurfaceComplex) -> (Vec<Cell>, Vec<Vec<usize>>) {
    let nt = s.triangle_count();
    let cells: Vec<Cell> = (0..nt).map(Cell::Triangle).chain((0..s.edge_count()).map(Cell::Edge)).collect();
    let mut nb = vec![Vec::new(); cells.len()];
    for t in 0..nt {
        for k in 0..3 {
            let e = nt + s.edge_of(t, k);
            nb[t].push(e);
            nb[e].push(t);
        }
    }
    (cells, nb)
}

/// Number of caps: cells whose neighbours all come before it or all after it.
pub fn cap_count(s: &SurfaceComplex, ordering: &[Cell]) -> Result<usize, TlftError> {
    let (cells, nb) = cell_neighbours(s);
    let mut rank = vec![usize::MAX; cells.len()];
    if ordering.len() != cells.len() {
        return Err(TlftError::BadOrdering);
    }
    for (i, c) in ordering.iter().enumerate() {
        let j = cells.iter().position(|x| x == c).ok_or(TlftError::BadOrdering)?;
        if rank[j] != usize::MAX {
            return Err(TlftError::BadOrdering);
        }
        rank[j] = i;
    }
    Ok((0..cells.len())
        .filter(|&x| nb[x].iter().all(|&y| rank[y] < rank[x]) || nb[x].iter().all(|&y| rank[y] > rank[x]))
        .count())
}

/// |G|^(k/2), the scale cost of `k` caps.
pub fn cap_scale(g: &FiniteGroup, k: usize) -> f64 {
    (g.order() as f64).powf(k as f64 / 2.0)
}

pub const MAX_SEARCH_CELLS: usize = 26;

/// Minimum cap count over orderings that contract the disk made of `disk` triangles internally:
/// no disk cell comes first or last, and no edge interior to the disk is a cap. Returns a
/// witness ordering. Exhaustive over subsets of placed cells.
pub fn min_cap_count(s: &SurfaceComplex, disk: &[usize]) -> Result<Option<(usize, Vec<Cell>)>, TlftError> {
    let (cells, nb) = cell_neighbours(s);
    let n = cells.len();
    if n > MAX_SEARCH_CELLS {
        return Err(TlftError::TooManyCells(n));
    }
    let nt = s.triangle_count();
    if let Some(&t) = disk.iter().find(|&&t| t >= nt) {
        return Err(TlftError::BadDisk(t));
    }
    let internal = interior_edges(s, disk);
    let masks: Vec<u32> = nb.iter().map(|v| v.iter().fold(0u32, |m, &y| m | 1 << y)).collect();
    let forced: Vec<bool> = (0..n).map(|x| x >= nt && internal.contains(&(x - nt))).collect();
    let in_disk: Vec<bool> = (0..n).map(|x| forced[x] || (x < nt && disk.contains(&x))).collect();
    let full = (1u32 << n) - 1;
    // Cap flag of placing x after `set`, or None when the placement is not allowed.
    let step = |set: u32, x: usize| -> Option<bool> {
        let cap = masks[x] & !set == 0 || masks[x] & set == 0;
        let end = set == 0 || set | 1 << x == full;
        (!(cap && forced[x]) && !(end && in_disk[x])).then_some(cap)
    };
    const NONE: u8 = u8::MAX;
    let mut dp = vec![NONE; 1usize << n];
    dp[0] = 0;
    for set in 0..=full {
        let cur = dp[set as usize];
        if cur == NONE {
            continue;
        }
        for x in (0..n).filter(|&x| set >> x & 1 == 0) {
            if let Some(cap) = step(set, x) {
                let next = (set | 1 << x) as usize;
                dp[next] = dp[next].min(cur + cap as u8);
            }
        }
    }
    if dp[full as usize] == NONE {
        return Ok(None);
    }
    // Walk back from the full set to recover a witness.
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let x = (0..n)
            .find(|&x| {
                let prev = set & !(1 << x);
                set >> x & 1 == 1
                    && dp[prev as usize] != NONE
                    && step(prev, x).is_some_and(|cap| dp[prev as usize] + cap as u8 == dp[set as usize])
            })
            .unwrap();
        order.push(cells[x]);
        set &= !(1 << x);
    }
    order.reverse();
    Ok(Some((dp[full as usize] as usize, order)))
}

/// Edges with both sides inside `tris`.
pub fn interior_edges(s: &SurfaceComplex, tris: &[usize]) -> Vec<usize> {
    s.edge_sides().iter().enumerate().filter(|(_, sd)| sd.iter().all(|(t, _)| tris.contains(t))).map(|(e, _)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::builders::{genus_surface, insert_cap_disk, torus_grid};
    use crate::scalars::int;
    use crate::tensornet::DEFAULT_BUDGET;

    fn grp(s: &str) -> FiniteGroup {
        FiniteGroup::named(s).unwrap()
    }

    #[test]
    fn network_shapes() {
        let n = build_network(&grp("cyclic:2"), &torus_grid(1).unwrap()).unwrap();
        assert_eq!(n.network.vertex_count(), 5);
        assert!(n.network.is_closed());
        let n = build_network(&grp("symmetric:3"), &SurfaceComplex::sphere()).unwrap();
        assert_eq!(n.network.vertex_count(), 10);
    }

    #[test]
    fn small_values() {
        let s3 = grp("symmetric:3");
        assert_eq!(invariant_exact(&s3, &SurfaceComplex::sphere(), DEFAULT_BUDGET).unwrap(), int(6));
        let torus = torus_grid(1).unwrap();
        assert_eq!(invariant_exact(&s3, &torus, DEFAULT_BUDGET).unwrap(), int(3));
        assert_eq!(mednykh_rhs(&s3, &torus, 1 << 20).unwrap(), int(3));
        let c2 = grp("cyclic:2");
        assert_eq!(invariant_exact(&c2, &torus, DEFAULT_BUDGET).unwrap(), int(2));
        let count = valid_labeling_count(&c2, &torus, DEFAULT_BUDGET).unwrap();
        assert_eq!(labeling_identity(&c2, &torus, count), int(2));
        let g2 = genus_surface(2).unwrap();
        assert_eq!(invariant_exact(&s3, &g2, DEFAULT_BUDGET).unwrap(), crate::scalars::rat(9, 4));
    }

    #[test]
    fn torus_caps() {
        let torus = torus_grid(1).unwrap();
        let ord = [Cell::Triangle(0), Cell::Edge(0), Cell::Edge(1), Cell::Edge(2), Cell::Triangle(1)];
        assert_eq!(cap_count(&torus, &ord).unwrap(), 2);
        assert!(cap_count(&torus, &ord[..4]).is_err());
        assert_eq!(min_cap_count(&torus, &[]).unwrap().unwrap().0, 2);
        let (s1, disk) = insert_cap_disk(&torus, 0).unwrap();
        let (k, witness) = min_cap_count(&s1, &disk).unwrap().unwrap();
        assert_eq!(k, 3);
        assert_eq!(cap_count(&s1, &witness).unwrap(), 3);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let torus = torus_grid(1).unwrap();
        let c2 = grp("cyclic:2");
        let a = monte_carlo_estimate(&c2, &torus, 100_000, 7).unwrap();
        let b = monte_carlo_estimate(&c2, &torus, 100_000, 7).unwrap();
        assert_eq!(a, b);
        assert!((a.estimate - 2.0).abs() < 5.0 * a.std_error);
    }
}
