//! Dimension-generic gluing data: `N` = vertices per simplex (3 for surfaces, 4 for 3-manifolds).
//!
//! Facet `f` of a simplex is the one omitting local vertex `f`. A gluing of facet `f`
//! stores the partner simplex and a permutation `p` of local vertices with `p[f]` the
//! partner's facet; the partner stores the inverse permutation.

use super::perm;
use super::union_find::UnionFind;
use super::ComplexError;
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing<const N: usize> {
    pub simplex: usize,
    pub perm: [u8; N],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex<const N: usize> {
    glue: Vec<[Option<Gluing<N>>; N]>,
}

/// Local edges in a fixed order. For triangles edge `k` is the one opposite vertex `k`;
/// for tetrahedra the order is 01, 02, 12, 23, 13, 03.
pub fn local_edges<const N: usize>() -> &'static [(u8, u8)] {
    match N {
        3 => &[(1, 2), (0, 2), (0, 1)],
        4 => &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3)],
        _ => panic!("unsupported simplex size {N}"),
    }
}

pub fn local_edge_index<const N: usize>(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    local_edges::<N>().iter().position(|&e| e == (a, b)).expect("not a local edge")
}

/// Quotient data derived from a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    /// Vertex class of corner `s*N + v`.
    pub vertex_of: Vec<usize>,
    pub n_vertices: usize,
    /// Edge class of local edge `s*E + e` with `E = local_edges().len()`.
    pub edge_of: Vec<usize>,
    pub n_edges: usize,
    /// Number of (simplex, local edge) slots in each edge class.
    pub edge_degree: Vec<usize>,
    pub edge_boundary: Vec<bool>,
    pub vertex_boundary: Vec<bool>,
    /// Number of corners in each vertex class.
    pub vertex_degree: Vec<usize>,
    pub n_facets: usize,
    pub n_boundary_facets: usize,
    /// Some edge is identified with itself in reverse.
    pub reversed_edge: bool,
}

/// Result of a local retriangulation.
#[derive(Clone, Debug)]
pub struct Retriangulation<const N: usize> {
    pub complex: Complex<N>,
    /// Index in the new complex of each new simplex, in the order given.
    pub new_index: Vec<usize>,
    /// Final vertex labels of each new simplex (possibly reordered to keep orientation).
    pub new_labels: Vec<[u32; N]>,
    /// New index of every old simplex outside the region.
    pub old_index: Vec<Option<usize>>,
    /// Old boundary facet of the region -> the new facet that replaced it.
    pub facet_map: HashMap<(usize, u8), (usize, u8)>,
}

impl<const N: usize> Complex<N> {
    pub fn new(n: usize) -> Self {
        Complex { glue: vec![[None; N]; n] }
    }

    pub fn len(&self) -> usize {
        self.glue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glue.is_empty()
    }

    pub fn gluing(&self, s: usize, f: usize) -> Option<Gluing<N>> {
        self.glue[s][f]
    }

    pub fn add_simplex(&mut self) -> usize {
        self.glue.push([None; N]);
        self.glue.len() - 1
    }

    /// Sets one side only; callers must restore the involution before validating.
    pub fn set_raw(&mut self, s: usize, f: usize, g: Option<Gluing<N>>) {
        self.glue[s][f] = g;
    }

    /// Glues facet `f` of `s` to facet `p[f]` of `t`, setting both sides.
    pub fn glue(&mut self, s: usize, f: usize, t: usize, p: [u8; N]) -> Result<(), ComplexError> {
        if !perm::is_perm(&p) {
            return Err(ComplexError::BadPermutation(format!("{p:?}")));
        }
        let g = p[f] as usize;
        if t >= self.len() || s >= self.len() {
            return Err(ComplexError::Dangling { simplex: s, facet: f, partner: t });
        }
        if s == t && f == g {
            return Err(ComplexError::SelfGluing { simplex: s, facet: f });
        }
        if self.glue[s][f].is_some() || self.glue[t][g].is_some() {
            return Err(ComplexError::Precondition(format!("facet {s}.{f} or {t}.{g} already glued")));
        }
        self.glue[s][f] = Some(Gluing { simplex: t, perm: p });
        self.glue[t][g] = Some(Gluing { simplex: s, perm: perm::inverse(&p) });
        Ok(())
    }

    pub fn unglue(&mut self, s: usize, f: usize) {
        if let Some(g) = self.glue[s][f].take() {
            self.glue[g.simplex][g.perm[f] as usize] = None;
        }
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        for (s, row) in self.glue.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.simplex >= self.len() {
                    return Err(ComplexError::Dangling { simplex: s, facet: f, partner: g.simplex });
                }
                if !perm::is_perm(&g.perm) {
                    return Err(ComplexError::BadPermutation(format!("{:?} at {s}.{f}", g.perm)));
                }
                let h = g.perm[f] as usize;
                if g.simplex == s && h == f {
                    return Err(ComplexError::SelfGluing { simplex: s, facet: f });
                }
                let back = self.glue[g.simplex][h];
                if back != Some(Gluing { simplex: s, perm: perm::inverse(&g.perm) }) {
                    return Err(ComplexError::NotInvolution { simplex: s, facet: f });
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.glue.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn boundary_facets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.glue.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if g.is_none() {
                    out.push((s, f));
                }
            }
        }
        out
    }

    pub fn skeleton(&self) -> Skeleton {
        let n = self.len();
        let edges = local_edges::<N>();
        let ne = edges.len();
        let mut vuf = UnionFind::new(n * N);
        let mut euf = UnionFind::new(n * ne);
        let mut reversed_edge = false;
        let mut n_boundary_facets = 0;
        let mut glued_slots = 0;
        for s in 0..n {
            for f in 0..N {
                let Some(g) = self.glue[s][f] else {
                    n_boundary_facets += 1;
                    continue;
                };
                glued_slots += 1;
                for v in 0..N {
                    if v != f {
                        vuf.union(s * N + v, g.simplex * N + g.perm[v] as usize, false);
                    }
                }
                for (e, &(a, b)) in edges.iter().enumerate() {
                    if a as usize == f || b as usize == f {
                        continue;
                    }
                    let (pa, pb) = (g.perm[a as usize], g.perm[b as usize]);
                    let pe = local_edge_index::<N>(pa, pb);
                    if !euf.union(s * ne + e, g.simplex * ne + pe, pa > pb) {
                        reversed_edge = true;
                    }
                }
            }
        }
        let (vertex_of, n_vertices) = vuf.classes();
        let (edge_of, n_edges) = euf.classes();
        let mut edge_degree = vec![0; n_edges];
        for &c in &edge_of {
            edge_degree[c] += 1;
        }
        let mut vertex_degree = vec![0; n_vertices];
        for &c in &vertex_of {
            vertex_degree[c] += 1;
        }
        let mut edge_boundary = vec![false; n_edges];
        let mut vertex_boundary = vec![false; n_vertices];
        for s in 0..n {
            for f in 0..N {
                if self.glue[s][f].is_some() {
                    continue;
                }
                for v in 0..N {
                    if v != f {
                        vertex_boundary[vertex_of[s * N + v]] = true;
                    }
                }
                for (e, &(a, b)) in edges.iter().enumerate() {
                    if a as usize != f && b as usize != f {
                        edge_boundary[edge_of[s * ne + e]] = true;
                    }
                }
            }
        }
        Skeleton {
            vertex_of,
            n_vertices,
            edge_of,
            n_edges,
            edge_degree,
            edge_boundary,
            vertex_boundary,
            vertex_degree,
            n_facets: glued_slots / 2 + n_boundary_facets,
            n_boundary_facets,
            reversed_edge,
        }
    }

    /// Connected component of each simplex.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.len());
        for s in 0..self.len() {
            for g in self.glue[s].iter().flatten() {
                uf.union(s, g.simplex, false);
            }
        }
        uf.classes()
    }

    /// Orientation sign per simplex making every gluing odd, if one exists.
    pub fn orientation_signs(&self) -> Option<Vec<bool>> {
        let mut sign: Vec<Option<bool>> = vec![None; self.len()];
        for root in 0..self.len() {
            if sign[root].is_some() {
                continue;
            }
            sign[root] = Some(true);
            let mut queue = VecDeque::from([root]);
            while let Some(s) = queue.pop_front() {
                let ss = sign[s].unwrap();
                for g in self.glue[s].iter().flatten() {
                    let want = if perm::is_odd(&g.perm) { ss } else { !ss };
                    match sign[g.simplex] {
                        None => {
                            sign[g.simplex] = Some(want);
                            queue.push_back(g.simplex);
                        }
                        Some(x) if x != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sign.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_signs().is_some()
    }

    /// Every gluing permutation is odd.
    pub fn is_oriented(&self) -> bool {
        self.glue.iter().flatten().flatten().all(|g| perm::is_odd(&g.perm))
    }

    /// Applies a consistent orientation by swapping the last two local vertices where needed.
    pub fn orient(&self) -> Option<Complex<N>> {
        let signs = self.orientation_signs()?;
        let mut swap = perm::identity::<N>();
        swap.swap(N - 2, N - 1);
        let perms: Vec<[u8; N]> = signs.iter().map(|&s| if s { perm::identity() } else { swap }).collect();
        Some(self.relabel(&(0..self.len()).collect::<Vec<_>>(), &perms))
    }

    /// Moves simplex `s` to index `index[s]` and renames its local vertex `v` to `perms[s][v]`.
    pub fn relabel(&self, index: &[usize], perms: &[[u8; N]]) -> Complex<N> {
        let mut out = Complex::new(self.len());
        for s in 0..self.len() {
            let inv = perm::inverse(&perms[s]);
            for f in 0..N {
                if let Some(g) = self.glue[s][f] {
                    let p = perm::compose(&perms[g.simplex], &perm::compose(&g.perm, &inv));
                    out.glue[index[s]][perms[s][f] as usize] = Some(Gluing { simplex: index[g.simplex], perm: p });
                }
            }
        }
        out
    }

    pub fn disjoint_union(parts: &[&Complex<N>]) -> (Complex<N>, Vec<usize>) {
        let mut out = Complex::new(0);
        let mut offsets = Vec::new();
        for c in parts {
            let off = out.len();
            offsets.push(off);
            for row in &c.glue {
                out.glue.push(row.map(|g| g.map(|g| Gluing { simplex: g.simplex + off, perm: g.perm })));
            }
        }
        (out, offsets)
    }

    /// Breadth-first relabeling from `(start, p0)` over one component. Gives up (None) as
    /// soon as the code exceeds `best`. Returns the code and (old simplex, perm) in new order.
    fn bfs_code(&self, start: usize, p0: [u8; N], best: Option<&[u32]>) -> Option<(Vec<u32>, Vec<(usize, [u8; N])>)> {
        let fact: u32 = (1..=N as u32).product();
        let mut assigned: HashMap<usize, (usize, [u8; N])> = HashMap::new();
        let mut order = vec![(start, p0)];
        assigned.insert(start, (0, p0));
        let mut code = Vec::with_capacity(self.len() * N);
        let mut tied = best.is_some();
        let mut i = 0;
        while i < order.len() {
            let (s, p) = order[i];
            let pinv = perm::inverse(&p);
            for nf in 0..N {
                let f = pinv[nf] as usize;
                let entry = match self.glue[s][f] {
                    None => u32::MAX,
                    Some(g) => {
                        let (ti, tp) = *assigned.entry(g.simplex).or_insert_with(|| {
                            let tp = perm::compose(&p, &perm::inverse(&g.perm));
                            order.push((g.simplex, tp));
                            (order.len() - 1, tp)
                        });
                        let newp = perm::compose(&tp, &perm::compose(&g.perm, &pinv));
                        ti as u32 * fact + perm::rank(&newp)
                    }
                };
                if tied {
                    let b = best.unwrap();
                    let k = code.len();
                    if k < b.len() {
                        if entry > b[k] {
                            return None;
                        }
                        tied = entry == b[k];
                    }
                }
                code.push(entry);
            }
            i += 1;
        }
        Some((code, order))
    }

    /// Lexicographically least BFS code of the component containing simplex `within`,
    /// with the relabeling that achieves it (old simplex, local perm) in new-index order.
    fn component_canonical(&self, within_component: &[usize], orientation_preserving: bool) -> (Vec<u32>, Vec<(usize, [u8; N])>) {
        let starts: Vec<[u8; N]> =
            perm::all::<N>().into_iter().filter(|p| !orientation_preserving || !perm::is_odd(p)).collect();
        let mut best: Option<(Vec<u32>, Vec<(usize, [u8; N])>)> = None;
        for &s in within_component {
            for &p in &starts {
                if let Some(res) = self.bfs_code(s, p, best.as_ref().map(|b| b.0.as_slice())) {
                    if best.as_ref().map_or(true, |b| res.0 < b.0) {
                        best = Some(res);
                    }
                }
            }
        }
        best.expect("empty component")
    }

    /// Canonical relabeling: (code, order of (old simplex, perm)). Components are ordered by code.
    pub fn canonical(&self, orientation_preserving: bool) -> (Vec<Vec<u32>>, Vec<(usize, [u8; N])>) {
        let (comp, nc) = self.components();
        let mut parts: Vec<(Vec<u32>, Vec<(usize, [u8; N])>)> = (0..nc)
            .map(|c| {
                let members: Vec<usize> = (0..self.len()).filter(|&s| comp[s] == c).collect();
                self.component_canonical(&members, orientation_preserving)
            })
            .collect();
        parts.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let codes = parts.iter().map(|p| p.0.clone()).collect();
        let order = parts.into_iter().flat_map(|p| p.1).collect();
        (codes, order)
    }

    /// An isomorphism `self -> other` as (target simplex, local perm) per simplex of `self`.
    pub fn isomorphism(&self, other: &Complex<N>, orientation_preserving: bool) -> Option<Vec<(usize, [u8; N])>> {
        if self.len() != other.len() {
            return None;
        }
        let (ca, oa) = self.canonical(orientation_preserving);
        let (cb, ob) = other.canonical(orientation_preserving);
        if ca != cb {
            return None;
        }
        let mut map = vec![(0, [0u8; N]); self.len()];
        for (&(s, ps), &(t, pt)) in oa.iter().zip(ob.iter()) {
            map[s] = (t, perm::compose(&perm::inverse(&pt), &ps));
        }
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &Complex<N>) -> bool {
        self.isomorphism(other, false).is_some()
    }

    /// Replaces the `region` simplices (each with distinct vertex labels) by `new_simplices`,
    /// matching facets by label sets. New simplices are reoriented to agree with the region.
    pub fn retriangulate(&self, region: &[(usize, [u32; N])], new_simplices: &[[u32; N]]) -> Result<Retriangulation<N>, ComplexError> {
        let pre = |m: &str| Err(ComplexError::Precondition(m.to_string()));
        let mut labels_of: HashMap<usize, [u32; N]> = HashMap::new();
        for &(s, l) in region {
            if s >= self.len() {
                return pre("region simplex out of range");
            }
            if l.iter().collect::<BTreeSet<_>>().len() != N {
                return pre("repeated label within a simplex");
            }
            if labels_of.insert(s, l).is_some() {
                return pre("region simplices are not distinct");
            }
        }
        let key = |l: &[u32; N], f: usize| -> Vec<u32> {
            let mut k: Vec<u32> = (0..N).filter(|&v| v != f).map(|v| l[v]).collect();
            k.sort_unstable();
            k
        };
        let pos = |l: &[u32; N], x: u32| -> usize { l.iter().position(|&y| y == x).expect("label present") };

        // Old boundary facets of the region.
        let mut old_boundary: HashMap<Vec<u32>, (usize, usize)> = HashMap::new();
        for &(s, ls) in region {
            for f in 0..N {
                if let Some(g) = self.glue[s][f] {
                    if let Some(lt) = labels_of.get(&g.simplex) {
                        if (0..N).all(|v| v == f || lt[g.perm[v] as usize] == ls[v]) {
                            continue;
                        }
                    }
                }
                if old_boundary.insert(key(&ls, f), (s, f)).is_some() {
                    return pre("region boundary has two facets with the same labels");
                }
            }
        }

        // Orientation of new simplices follows the old simplex across a shared boundary facet.
        let mut new_labels: Vec<[u32; N]> = new_simplices.to_vec();
        for nl in new_labels.iter_mut() {
            for g in 0..N {
                if let Some(&(s, f)) = old_boundary.get(&key(nl, g)) {
                    let ls = labels_of[&s];
                    let induced = |l: &[u32; N], f: usize| {
                        let rest: Vec<u32> = (0..N).filter(|&v| v != f).map(|v| l[v]).collect();
                        perm::sequence_is_odd(&rest) ^ (f % 2 == 1)
                    };
                    if induced(&ls, f) != induced(nl, g) {
                        nl.swap(N - 2, N - 1);
                    }
                    break;
                }
            }
        }

        let mut new_facets: HashMap<Vec<u32>, Vec<(usize, usize)>> = HashMap::new();
        for (j, nl) in new_labels.iter().enumerate() {
            if nl.iter().collect::<BTreeSet<_>>().len() != N {
                return pre("repeated label within a new simplex");
            }
            for g in 0..N {
                new_facets.entry(key(nl, g)).or_default().push((j, g));
            }
        }
        for (k, sites) in &new_facets {
            match (sites.len(), old_boundary.contains_key(k)) {
                (1, true) | (2, false) => {}
                _ => return pre("new simplices do not fill the region boundary"),
            }
        }
        if old_boundary.keys().any(|k| !new_facets.contains_key(k)) {
            return pre("region boundary facet left unmatched");
        }

        // Placement: reuse region slots in ascending order, then append or compact.
        let mut slots: Vec<usize> = region.iter().map(|r| r.0).collect();
        slots.sort_unstable();
        let m = new_labels.len();
        let n_old = self.len();
        let removed: BTreeSet<usize> = slots.iter().skip(m).copied().collect();
        let mut compact = vec![usize::MAX; n_old + m.saturating_sub(slots.len())];
        let mut next = 0;
        for (i, c) in compact.iter_mut().enumerate() {
            if !removed.contains(&i) {
                *c = next;
                next += 1;
            }
        }
        let n_new = next;
        let new_index: Vec<usize> =
            (0..m).map(|j| compact[if j < slots.len() { slots[j] } else { n_old + j - slots.len() }]).collect();
        let old_index: Vec<Option<usize>> =
            (0..n_old).map(|s| if labels_of.contains_key(&s) { None } else { Some(compact[s]) }).collect();

        // Where each old boundary facet went.
        let mut facet_map = HashMap::new();
        for (k, &(s, f)) in &old_boundary {
            let (j, g) = new_facets[k][0];
            facet_map.insert((s, f as u8), (new_index[j], g as u8));
        }

        let mut out = Complex::new(n_new);
        for s in 0..n_old {
            let Some(ns) = old_index[s] else { continue };
            for f in 0..N {
                let Some(g) = self.glue[s][f] else { continue };
                let new = match labels_of.get(&g.simplex) {
                    None => Gluing { simplex: old_index[g.simplex].unwrap(), perm: g.perm },
                    Some(lt) => {
                        let tf = g.perm[f] as usize;
                        let (j, jg) = new_facets[&key(lt, tf)][0];
                        let nl = &new_labels[j];
                        let p: [u8; N] = std::array::from_fn(|v| {
                            if v == f {
                                jg as u8
                            } else {
                                pos(nl, lt[g.perm[v] as usize]) as u8
                            }
                        });
                        Gluing { simplex: new_index[j], perm: p }
                    }
                };
                out.glue[ns][f] = Some(new);
            }
        }
        for (j, nl) in new_labels.iter().enumerate() {
            for g in 0..N {
                let k = key(nl, g);
                let sites = &new_facets[&k];
                let glued = if sites.len() == 2 {
                    let (j2, g2) = if sites[0] == (j, g) { sites[1] } else { sites[0] };
                    let nl2 = &new_labels[j2];
                    let p: [u8; N] = std::array::from_fn(|v| if v == g { g2 as u8 } else { pos(nl2, nl[v]) as u8 });
                    Some(Gluing { simplex: new_index[j2], perm: p })
                } else {
                    let (s, f) = old_boundary[&k];
                    let ls = &labels_of[&s];
                    self.glue[s][f].map(|og| {
                        // Old outside partner, or another region boundary facet.
                        let old_local = |v: usize| pos(ls, nl[v]);
                        match labels_of.get(&og.simplex) {
                            None => {
                                let p: [u8; N] = std::array::from_fn(|v| {
                                    if v == g {
                                        og.perm[f]
                                    } else {
                                        og.perm[old_local(v)]
                                    }
                                });
                                Gluing { simplex: old_index[og.simplex].unwrap(), perm: p }
                            }
                            Some(lt) => {
                                let tf = og.perm[f] as usize;
                                let (j2, g2) = new_facets[&key(lt, tf)][0];
                                let nl2 = &new_labels[j2];
                                let p: [u8; N] = std::array::from_fn(|v| {
                                    if v == g {
                                        g2 as u8
                                    } else {
                                        pos(nl2, lt[og.perm[old_local(v)] as usize]) as u8
                                    }
                                });
                                Gluing { simplex: new_index[j2], perm: p }
                            }
                        }
                    })
                };
                out.glue[new_index[j]][g] = glued;
            }
        }
        out.validate()?;
        Ok(Retriangulation { complex: out, new_index, new_labels, old_index, facet_map })
    }

    /// Labels the star of `core` (labels already present in `start_labels`) by walking
    /// through facets that contain every core label. Fresh labels start after the largest
    /// start label and are merged when the walk closes up.
    pub fn label_star(&self, start: usize, start_labels: [u32; N], core: &[u32]) -> Result<Vec<(usize, [u32; N])>, ComplexError> {
        let pre = |m: &str| Err(ComplexError::Precondition(m.to_string()));
        let mut next = start_labels.iter().max().copied().unwrap_or(0) + 1;
        let mut labels: HashMap<usize, [u32; N]> = HashMap::from([(start, start_labels)]);
        let mut order = vec![start];
        let mut merges: Vec<(u32, u32)> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            let ls = labels[&s];
            for f in 0..N {
                if core.contains(&ls[f]) {
                    continue;
                }
                let Some(g) = self.glue[s][f] else {
                    return pre("star touches the boundary");
                };
                match labels.get(&g.simplex) {
                    Some(lt) => {
                        for v in 0..N {
                            if v != f && lt[g.perm[v] as usize] != ls[v] {
                                merges.push((lt[g.perm[v] as usize], ls[v]));
                            }
                        }
                    }
                    None => {
                        let mut lt = [0u32; N];
                        for v in 0..N {
                            lt[g.perm[v] as usize] = if v == f {
                                next += 1;
                                next - 1
                            } else {
                                ls[v]
                            };
                        }
                        labels.insert(g.simplex, lt);
                        order.push(g.simplex);
                    }
                }
            }
            i += 1;
        }
        let mut uf = UnionFind::new(next as usize);
        for (a, b) in merges {
            uf.union(a as usize, b as usize, false);
        }
        let mut out = Vec::new();
        for s in order {
            let l = labels[&s].map(|x| {
                // Prefer the core/start label as representative.
                (0..next).find(|&y| uf.find(y as usize).0 == uf.find(x as usize).0).unwrap()
            });
            if l.iter().collect::<BTreeSet<_>>().len() != N {
                return pre("star is degenerate");
            }
            out.push((s, l));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Boundary of a simplex on `N+1` labels.
    pub(crate) fn sphere<const N: usize>() -> Complex<N> {
        let cells: Vec<[u32; N]> = (0..=N as u32)
            .map(|omit| {
                let v: Vec<u32> = (0..=N as u32).filter(|&x| x != omit).collect();
                v.try_into().unwrap()
            })
            .collect();
        from_cells(&cells)
    }

    pub(crate) fn from_cells<const N: usize>(cells: &[[u32; N]]) -> Complex<N> {
        crate::complexes::from_labeled_cells(cells).unwrap()
    }

    #[test]
    fn relabel_preserves_isomorphism_class() {
        let c = sphere::<4>();
        let perms: Vec<[u8; 4]> = vec![[1, 0, 2, 3], [0, 1, 2, 3], [3, 2, 1, 0], [0, 2, 1, 3], [2, 3, 0, 1]];
        let r = c.relabel(&[4, 2, 0, 1, 3], &perms);
        r.validate().unwrap();
        assert!(c.is_isomorphic(&r));
        let iso = c.isomorphism(&r, false).unwrap();
        assert_eq!(c.relabel(&iso.iter().map(|x| x.0).collect::<Vec<_>>(), &iso.iter().map(|x| x.1).collect::<Vec<_>>()), r);
    }

    #[test]
    fn orient_gives_odd_gluings() {
        let c = sphere::<3>();
        let o = c.orient().unwrap();
        assert!(o.is_oriented());
        assert_eq!(o.skeleton().n_vertices, 4);
    }

    #[test]
    fn retriangulate_checks_coverage() {
        let c = sphere::<3>();
        let region = [(0usize, [0u32, 1, 2])];
        assert!(c.retriangulate(&region, &[[0, 1, 3]]).is_err());
    }
}
