//! Closed tensor networks over an exact scalar field.

use crate::scalars::Scalar;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_BUDGET: u64 = 1 << 24;
pub const DEFAULT_MEMORY: usize = 1 << 24;

/// Enumeration budget: `PACHNER_BUDGET` when set to a positive integer, else 2²⁴.
pub fn budget_from_env() -> u64 {
    std::env::var("PACHNER_BUDGET").ok().and_then(|v| v.trim().parse().ok()).filter(|&b| b > 0).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("tensor shape {dims:?} needs {expected} entries, got {got}")]
    Shape { dims: Vec<usize>, expected: usize, got: usize },
    #[error("vertex {vertex} axis {axis} does not exist")]
    NoAxis { vertex: usize, axis: usize },
    #[error("vertex {vertex} axis {axis} is already wired")]
    AxisReused { vertex: usize, axis: usize },
    #[error("edge joins axes of dimension {0} and {1}")]
    DimMismatch(usize, usize),
    #[error("network has {0} unmatched axes")]
    Open(usize),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("intermediate tensor of {entries} entries exceeds the limit {limit}")]
    Memory { entries: usize, limit: usize },
    #[error("plan is not a permutation of 0..{0}")]
    BadPlan(usize),
}

/// Dense tensor, row-major: the last axis varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S> {
    dims: Vec<usize>,
    data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn new(dims: Vec<usize>, data: Vec<S>) -> Result<Self, NetError> {
        let expected = dims.iter().product::<usize>();
        if expected != data.len() {
            return Err(NetError::Shape { dims, expected, got: data.len() });
        }
        Ok(Tensor { dims, data })
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> S) -> Self {
        let len = dims.iter().product::<usize>();
        let mut idx = vec![0; dims.len()];
        let mut data = Vec::with_capacity(len);
        for _ in 0..len {
            data.push(f(&idx));
            advance(&mut idx, dims);
        }
        Tensor { dims: dims.to_vec(), data }
    }

    pub fn scalar(v: S) -> Self {
        Tensor { dims: Vec::new(), data: vec![v] }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        Tensor { dims: dims.to_vec(), data: vec![S::zero(); dims.iter().product()] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Multi-index of a flat offset.
    pub fn unravel(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for a in (0..self.dims.len()).rev() {
            idx[a] = off % self.dims[a];
            off /= self.dims[a];
        }
        idx
    }

    /// Σ of squared entries.
    pub fn l2_norm_squared(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)))
    }

    /// Float matrix with rows indexed by `rows` axes and columns by `cols` axes, each in the given order.
    pub fn matricize(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        let nr: usize = rows.iter().map(|&a| self.dims[a]).product();
        let nc: usize = cols.iter().map(|&a| self.dims[a]).product();
        let mut m = DMatrix::zeros(nr, nc);
        for (off, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.unravel(off);
            let r = rows.iter().fold(0, |acc, &a| acc * self.dims[a] + idx[a]);
            let c = cols.iter().fold(0, |acc, &a| acc * self.dims[a] + idx[a]);
            m[(r, c)] = v.to_f64();
        }
        m
    }

    /// Operator norm of the map from the first `k` axes to the rest.
    pub fn operator_norm(&self, k: usize) -> f64 {
        let cols: Vec<usize> = (0..k).collect();
        let rows: Vec<usize> = (k..self.rank()).collect();
        spectral_norm(&self.matricize(&rows, &cols))
    }
}

/// Largest singular value; vectors and scalars take the Euclidean norm.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        0.0
    } else if m.nrows() == 1 || m.ncols() == 1 {
        m.norm()
    } else {
        m.clone().svd(false, false).singular_values.max()
    }
}

fn advance(idx: &mut [usize], dims: &[usize]) {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < dims[a] {
            return;
        }
        idx[a] = 0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub vertex: usize,
    pub axis: usize,
}

/// Tensors wired along edges. An edge runs from its `a` end (covariant) to its `b` end (contravariant).
#[derive(Debug, Clone)]
pub struct TensorNetwork<S> {
    tensors: Vec<Tensor<S>>,
    edges: Vec<(Endpoint, Endpoint)>,
    wiring: Vec<Vec<Option<usize>>>,
}

impl<S: Scalar> Default for TensorNetwork<S> {
    fn default() -> Self {
        TensorNetwork { tensors: Vec::new(), edges: Vec::new(), wiring: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepLog {
    pub vertex: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport<S> {
    pub value: S,
    pub value_f64: f64,
    pub delta: f64,
    pub steps: Vec<StepLog>,
}

impl<S: Scalar> TensorNetwork<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_tensor(&mut self, t: Tensor<S>) -> usize {
        self.wiring.push(vec![None; t.rank()]);
        self.tensors.push(t);
        self.tensors.len() - 1
    }

    pub fn connect(&mut self, a: Endpoint, b: Endpoint) -> Result<usize, NetError> {
        let da = self.axis_dim(a)?;
        let db = self.axis_dim(b)?;
        if da != db {
            return Err(NetError::DimMismatch(da, db));
        }
        for e in [a, b] {
            if self.wiring[e.vertex][e.axis].is_some() || a == b {
                return Err(NetError::AxisReused { vertex: e.vertex, axis: e.axis });
            }
        }
        let id = self.edges.len();
        self.wiring[a.vertex][a.axis] = Some(id);
        self.wiring[b.vertex][b.axis] = Some(id);
        self.edges.push((a, b));
        Ok(id)
    }

    fn axis_dim(&self, e: Endpoint) -> Result<usize, NetError> {
        self.tensors
            .get(e.vertex)
            .and_then(|t| t.dims.get(e.axis).copied())
            .ok_or(NetError::NoAxis { vertex: e.vertex, axis: e.axis })
    }

    pub fn vertex_count(&self) -> usize {
        self.tensors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn tensor(&self, v: usize) -> &Tensor<S> {
        &self.tensors[v]
    }

    pub fn tensors(&self) -> &[Tensor<S>] {
        &self.tensors
    }

    pub fn edges(&self) -> &[(Endpoint, Endpoint)] {
        &self.edges
    }

    /// Edge id of each axis of `v`, `None` when the axis is open.
    pub fn wiring(&self, v: usize) -> &[Option<usize>] {
        &self.wiring[v]
    }

    pub fn edge_dim(&self, e: usize) -> usize {
        let a = self.edges[e].0;
        self.tensors[a.vertex].dims[a.axis]
    }

    pub fn open_axes(&self) -> Vec<Endpoint> {
        let mut out = Vec::new();
        for (v, w) in self.wiring.iter().enumerate() {
            for (axis, e) in w.iter().enumerate() {
                if e.is_none() {
                    out.push(Endpoint { vertex: v, axis });
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.wiring.iter().flatten().all(Option::is_some)
    }

    fn require_closed(&self) -> Result<(), NetError> {
        match self.open_axes().len() {
            0 => Ok(()),
            n => Err(NetError::Open(n)),
        }
    }

    /// Exact sum over all edge labelings of the product of the selected entries.
    ///
    /// Depth-first over edges in a greedy order; a partial labeling is cut as soon as some tensor's
    /// assigned axes fall outside the projection of its support. `budget` bounds the number of
    /// search nodes visited.
    pub fn state_sum(&self, budget: u64) -> Result<S, NetError> {
        self.require_closed()?;
        let order = self.variable_order();
        let ne = order.len();
        let mut level = vec![0usize; ne];
        for (l, &e) in order.iter().enumerate() {
            level[e] = l;
        }

        // Intern nonzero entries so leaves only count exponent vectors.
        let mut values: Vec<S> = Vec::new();
        let mut codes: Vec<Vec<u32>> = Vec::with_capacity(self.tensors.len());
        for t in &self.tensors {
            codes.push(
                t.data
                    .iter()
                    .map(|x| {
                        if x.is_zero() {
                            u32::MAX
                        } else if let Some(i) = values.iter().position(|v| v == x) {
                            i as u32
                        } else {
                            values.push(x.clone());
                            (values.len() - 1) as u32
                        }
                    })
                    .collect(),
            );
        }

        let mut constant: Vec<u32> = Vec::new();
        let mut checks: Vec<Vec<Check>> = vec![Vec::new(); ne];
        for (v, t) in self.tensors.iter().enumerate() {
            if t.rank() == 0 {
                if codes[v][0] == u32::MAX {
                    return Ok(S::zero());
                }
                constant.push(codes[v][0]);
                continue;
            }
            // Axes sorted by the level at which they are assigned.
            let mut axes: Vec<usize> = (0..t.rank()).collect();
            axes.sort_by_key(|&a| (level[self.wiring[v][a].unwrap()], a));
            let strides: Vec<usize> = (0..t.rank()).map(|a| t.dims[a + 1..].iter().product()).collect();
            let mut k = 0;
            while k < axes.len() {
                let l = level[self.wiring[v][axes[k]].unwrap()];
                while k < axes.len() && level[self.wiring[v][axes[k]].unwrap()] == l {
                    k += 1;
                }
                let prefix: Vec<usize> = axes[..k].to_vec();
                let complete = k == axes.len();
                let allowed: HashSet<u64> = if complete {
                    HashSet::new()
                } else {
                    (0..t.data.len())
                        .filter(|&o| codes[v][o] != u32::MAX)
                        .map(|o| prefix.iter().fold(0u64, |acc, &a| acc * t.dims[a] as u64 + ((o / strides[a]) % t.dims[a]) as u64))
                        .collect()
                };
                let wires = prefix.iter().map(|&a| self.wiring[v][a].unwrap()).collect();
                let pstrides = prefix.iter().map(|&a| strides[a]).collect();
                checks[l].push(Check { vertex: v, wires, dims: prefix.iter().map(|&a| t.dims[a]).collect(), strides: pstrides, complete, allowed });
            }
        }

        let search = Search { order: &order, checks: &checks, codes: &codes, dims: order.iter().map(|&e| self.edge_dim(e)).collect(), nvals: values.len(), budget, nodes: AtomicU64::new(0) };
        let counts: HashMap<Vec<u16>, u64> = if ne == 0 {
            HashMap::from([(vec![0u16; values.len()], 1)])
        } else {
            let first = search.dims[0];
            let parts: Result<Vec<HashMap<Vec<u16>, u64>>, NetError> = (0..first)
                .into_par_iter()
                .map(|x| {
                    let mut st = SearchState { labels: vec![0; self.edges.len()], exps: vec![0; values.len()], counts: HashMap::new() };
                    search.descend(0, x, &mut st)?;
                    Ok(st.counts)
                })
                .collect();
            let mut merged = HashMap::new();
            for p in parts? {
                for (k, c) in p {
                    *merged.entry(k).or_insert(0) += c;
                }
            }
            merged
        };

        let base = constant.iter().fold(S::one(), |acc, &c| acc.mul_ref(&values[c as usize]));
        let mut keys: Vec<_> = counts.into_iter().collect();
        keys.sort();
        let mut total = S::zero();
        for (exps, c) in keys {
            let mut term = S::from_rational(BigRational::from_integer(BigInt::from(c)));
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul_ref(&values[i].pow(e as u32));
                }
            }
            total = total.add_ref(&term);
        }
        Ok(total.mul_ref(&base))
    }

    /// Greedy static order: prefer edges that complete the most tensors, then edges touching assigned tensors.
    fn variable_order(&self) -> Vec<usize> {
        let ne = self.edges.len();
        let mut remaining: Vec<usize> = self.tensors.iter().enumerate().map(|(_, t)| t.rank()).collect();
        let mut done = vec![false; ne];
        let mut order = Vec::with_capacity(ne);
        for _ in 0..ne {
            let mut best: Option<((usize, usize), usize)> = None;
            for e in (0..ne).filter(|&e| !done[e]) {
                let (a, b) = self.edges[e];
                let ends: Vec<usize> = if a.vertex == b.vertex { vec![a.vertex] } else { vec![a.vertex, b.vertex] };
                let completes = ends.iter().filter(|&&v| remaining[v] == if a.vertex == b.vertex { 2 } else { 1 }).count();
                let touches = ends.iter().filter(|&&v| remaining[v] < self.tensors[v].rank()).count();
                let score = (completes, touches);
                if best.is_none_or(|(s, _)| score > s) {
                    best = Some((score, e));
                }
            }
            let e = best.unwrap().1;
            done[e] = true;
            remaining[self.edges[e].0.vertex] -= 1;
            remaining[self.edges[e].1.vertex] -= 1;
            order.push(e);
        }
        order
    }

    /// Contracts tensors one at a time in plan order, recording the operator norm of each step.
    ///
    /// At each step the tensor's axes wired to already-contracted tensors are incoming and the rest
    /// outgoing, each group sorted by edge id; axes wired to itself are traced first.
    pub fn contract(&self, plan: &[usize], memory: usize) -> Result<ContractionReport<S>, NetError> {
        let steps = self.plan_steps(plan, memory)?;
        let mut state: Vec<S> = vec![S::one()];
        let mut delta = 1.0;
        let mut log = Vec::with_capacity(steps.len());
        for st in &steps {
            delta *= st.norm;
            log.push(StepLog { vertex: st.vertex, incoming: st.incoming, outgoing: st.outgoing, norm: st.norm });
            let mut next = vec![S::zero(); st.new_size()];
            st.for_each(|o| !state[o].is_zero(), |o, n, x| next[n] = next[n].add_ref(&state[o].mul_ref(x)));
            state = next;
        }
        let value = state.pop().unwrap();
        Ok(ContractionReport { value_f64: value.to_f64(), value, delta, steps: log })
    }

    /// Each step of `plan` as a float matrix from the open-wire space before it to the one after,
    /// with the operator norm of the contracted tensor alone.
    pub fn step_matrices(&self, plan: &[usize], memory: usize) -> Result<Vec<(DMatrix<f64>, f64)>, NetError> {
        let steps = self.plan_steps(plan, memory)?;
        Ok(steps
            .iter()
            .map(|st| {
                let mut m = DMatrix::zeros(st.new_size(), st.old_size());
                st.for_each(|_| true, |o, n, x| m[(n, o)] += x.to_f64());
                (m, st.norm)
            })
            .collect())
    }

    fn plan_steps(&self, plan: &[usize], memory: usize) -> Result<Vec<Step<S>>, NetError> {
        self.require_closed()?;
        let n = self.tensors.len();
        let mut seen = vec![false; n];
        if plan.len() != n || plan.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(NetError::BadPlan(n));
        }
        let mut done = vec![false; n];
        // Open wires, sorted by edge id.
        let mut wires: Vec<usize> = Vec::new();
        let mut steps = Vec::with_capacity(n);
        let wdim = |e: usize| self.edge_dim(e);
        for &v in plan {
            let (t, axis_edges) = self.traced(v);
            let other = |e: usize| {
                let (a, b) = self.edges[e];
                if a.vertex == v {
                    b.vertex
                } else {
                    a.vertex
                }
            };
            let mut inc: Vec<usize> = (0..t.rank()).filter(|&a| done[other(axis_edges[a])]).collect();
            let mut out: Vec<usize> = (0..t.rank()).filter(|&a| !done[other(axis_edges[a])]).collect();
            inc.sort_by_key(|&a| axis_edges[a]);
            out.sort_by_key(|&a| axis_edges[a]);
            let norm = spectral_norm(&t.matricize(&out, &inc));

            let inc_edges: Vec<usize> = inc.iter().map(|&a| axis_edges[a]).collect();
            let mut new_wires: Vec<usize> = wires.iter().copied().filter(|e| !inc_edges.contains(e)).collect();
            new_wires.extend(out.iter().map(|&a| axis_edges[a]));
            new_wires.sort_unstable();
            let size: usize = new_wires.iter().map(|&e| wdim(e)).product();
            if size > memory {
                return Err(NetError::Memory { entries: size, limit: memory });
            }
            // Nonzeros of the tensor grouped by their incoming labels.
            let mut by_inc: HashMap<Vec<usize>, Vec<(Vec<usize>, S)>> = HashMap::new();
            for (off, x) in t.data.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let idx = t.unravel(off);
                by_inc.entry(inc.iter().map(|&a| idx[a]).collect()).or_default().push((out.iter().map(|&a| idx[a]).collect(), x.clone()));
            }
            steps.push(Step {
                vertex: v,
                norm,
                incoming: inc.len(),
                outgoing: out.len(),
                old_dims: wires.iter().map(|&e| wdim(e)).collect(),
                new_dims: new_wires.iter().map(|&e| wdim(e)).collect(),
                pos_old: wires.iter().map(|e| new_wires.iter().position(|x| x == e).filter(|_| !inc_edges.contains(e))).collect(),
                inc_pos: inc_edges.iter().map(|e| wires.iter().position(|x| x == e).unwrap()).collect(),
                out_pos: out.iter().map(|&a| new_wires.iter().position(|&x| x == axis_edges[a]).unwrap()).collect(),
                by_inc,
            });
            wires = new_wires;
            done[v] = true;
        }
        Ok(steps)
    }

    /// The tensor at `v` with self-loop axis pairs summed out, and the edge id of each remaining axis.
    fn traced(&self, v: usize) -> (Tensor<S>, Vec<usize>) {
        let t = &self.tensors[v];
        let w: Vec<usize> = self.wiring[v].iter().map(|e| e.unwrap()).collect();
        let keep: Vec<usize> = (0..t.rank()).filter(|&a| w.iter().filter(|&&e| e == w[a]).count() == 1).collect();
        if keep.len() == t.rank() {
            return (t.clone(), w);
        }
        let dims: Vec<usize> = keep.iter().map(|&a| t.dims[a]).collect();
        let mut out = Tensor::<S>::zeros(&dims);
        for (off, x) in t.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let idx = t.unravel(off);
            let diagonal = (0..t.rank()).all(|a| keep.contains(&a) || {
                let b = (0..t.rank()).find(|&b| b != a && w[b] == w[a]).unwrap();
                idx[a] == idx[b]
            });
            if diagonal {
                let k: Vec<usize> = keep.iter().map(|&a| idx[a]).collect();
                let o = out.offset(&k);
                out.data[o] = out.data[o].add_ref(x);
            }
        }
        (out, keep.iter().map(|&a| w[a]).collect())
    }

    /// Repeatedly picks the vertex leaving the fewest open wires, lowest index on ties.
    pub fn greedy_plan(&self) -> Vec<usize> {
        let n = self.tensors.len();
        let mut done = vec![false; n];
        let mut open: i64 = 0;
        let mut plan = Vec::with_capacity(n);
        for _ in 0..n {
            let mut best: Option<(i64, usize)> = None;
            for v in (0..n).filter(|&v| !done[v]) {
                let mut delta = 0i64;
                for e in self.wiring[v].iter().flatten() {
                    let (a, b) = self.edges[*e];
                    if a.vertex == b.vertex {
                        continue;
                    }
                    let o = if a.vertex == v { b.vertex } else { a.vertex };
                    delta += if done[o] { -1 } else { 1 };
                }
                if best.is_none_or(|(s, _)| open + delta < s) {
                    best = Some((open + delta, v));
                }
            }
            let (s, v) = best.unwrap();
            open = s;
            done[v] = true;
            plan.push(v);
        }
        plan
    }
}

/// One contraction step as a map between open-wire spaces.
struct Step<S> {
    vertex: usize,
    norm: f64,
    incoming: usize,
    outgoing: usize,
    old_dims: Vec<usize>,
    new_dims: Vec<usize>,
    /// Position in the new wire list of each old wire that stays open.
    pos_old: Vec<Option<usize>>,
    inc_pos: Vec<usize>,
    out_pos: Vec<usize>,
    by_inc: HashMap<Vec<usize>, Vec<(Vec<usize>, S)>>,
}

impl<S> Step<S> {
    fn old_size(&self) -> usize {
        self.old_dims.iter().product()
    }

    fn new_size(&self) -> usize {
        self.new_dims.iter().product()
    }

    /// Calls `f(old offset, new offset, entry)` for every nonzero transition out of offsets
    /// accepted by `keep`.
    fn for_each(&self, keep: impl Fn(usize) -> bool, mut f: impl FnMut(usize, usize, &S)) {
        let mut idx = vec![0; self.old_dims.len()];
        let mut nidx = vec![0; self.new_dims.len()];
        for off in 0..self.old_size() {
            if off > 0 {
                advance(&mut idx, &self.old_dims);
            }
            if !keep(off) {
                continue;
            }
            let key: Vec<usize> = self.inc_pos.iter().map(|&p| idx[p]).collect();
            let Some(list) = self.by_inc.get(&key) else { continue };
            for (p, q) in self.pos_old.iter().enumerate() {
                if let Some(q) = q {
                    nidx[*q] = idx[p];
                }
            }
            for (outs, x) in list {
                for (k, &p) in self.out_pos.iter().enumerate() {
                    nidx[p] = outs[k];
                }
                let o = nidx.iter().zip(&self.new_dims).fold(0, |acc, (&i, &d)| acc * d + i);
                f(off, o, x);
            }
        }
    }
}

#[derive(Clone)]
struct Check {
    vertex: usize,
    wires: Vec<usize>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    complete: bool,
    allowed: HashSet<u64>,
}

struct Search<'a> {
    order: &'a [usize],
    checks: &'a [Vec<Check>],
    codes: &'a [Vec<u32>],
    dims: Vec<usize>,
    nvals: usize,
    budget: u64,
    nodes: AtomicU64,
}

struct SearchState {
    labels: Vec<usize>,
    exps: Vec<u16>,
    counts: HashMap<Vec<u16>, u64>,
}

impl Search<'_> {
    fn descend(&self, l: usize, x: usize, st: &mut SearchState) -> Result<(), NetError> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(NetError::BudgetExceeded(self.budget));
        }
        st.labels[self.order[l]] = x;
        let mut pushed: Vec<u32> = Vec::new();
        let mut ok = true;
        for c in &self.checks[l] {
            if c.complete {
                let off: usize = c.wires.iter().zip(&c.strides).map(|(&e, &s)| st.labels[e] * s).sum();
                let code = self.codes[c.vertex][off];
                if code == u32::MAX {
                    ok = false;
                    break;
                }
                pushed.push(code);
            } else {
                let key = c.wires.iter().zip(&c.dims).fold(0u64, |acc, (&e, &d)| acc * d as u64 + st.labels[e] as u64);
                if !c.allowed.contains(&key) {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for &p in &pushed {
                st.exps[p as usize] += 1;
            }
            if l + 1 == self.order.len() {
                debug_assert_eq!(st.exps.len(), self.nvals);
                *st.counts.entry(st.exps.clone()).or_insert(0) += 1;
            } else {
                for y in 0..self.dims[l + 1] {
                    self.descend(l + 1, y, st)?;
                }
            }
            for &p in &pushed {
                st.exps[p as usize] -= 1;
            }
        }
        Ok(())
    }
}
