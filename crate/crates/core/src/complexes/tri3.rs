use super::perm;
use super::simplicial::{local_edges, Complex, Gluing, Skeleton};
use super::surface::SurfaceComplex;
use super::ComplexError;

/// A triangulated 3-manifold, possibly with boundary. Face `k` omits local vertex `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation3 {
    complex: Complex<4>,
    skel: Skeleton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tri3Report {
    pub tetrahedra: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub boundary_faces: usize,
    pub closed: bool,
    pub orientable: bool,
    pub edge_degrees: Vec<usize>,
    /// Euler characteristic of each vertex link.
    pub link_euler: Vec<i64>,
    /// Vertex links are spheres (interior) or disks (boundary) and no edge is folded onto itself.
    pub manifold: bool,
}

/// A boundary surface together with the (tetrahedron, face) behind each of its triangles.
/// Triangle local vertices are the face's tetrahedron vertices in increasing order.
#[derive(Clone, Debug)]
pub struct BoundarySurface {
    pub surface: SurfaceComplex,
    pub faces: Vec<(usize, usize)>,
}

fn others(x: usize) -> [usize; 3] {
    let v: Vec<usize> = (0..4).filter(|&y| y != x).collect();
    [v[0], v[1], v[2]]
}

impl Triangulation3 {
    pub fn new(complex: Complex<4>) -> Result<Self, ComplexError> {
        complex.validate()?;
        let skel = complex.skeleton();
        Ok(Triangulation3 { complex, skel })
    }

    pub fn from_cells(cells: &[[u32; 4]]) -> Result<Self, ComplexError> {
        Self::new(super::from_labeled_cells(cells)?)
    }

    /// Two tetrahedra glued face-to-face by the identity: the 3-sphere.
    pub fn two_tet_sphere() -> Self {
        let mut c = Complex::new(2);
        for k in 0..4 {
            c.glue(0, k, 1, perm::identity()).unwrap();
        }
        Self::new(c).unwrap()
    }

    /// Boundary of the 4-simplex.
    pub fn five_tet_sphere() -> Self {
        let cells: Vec<[u32; 4]> = (0..5u32)
            .map(|omit| {
                let v: Vec<u32> = (0..5).filter(|&x| x != omit).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        Self::from_cells(&cells).unwrap()
    }

    pub fn single_tetrahedron() -> Self {
        Self::new(Complex::new(1)).unwrap()
    }

    pub fn complex(&self) -> &Complex<4> {
        &self.complex
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn tet_count(&self) -> usize {
        self.complex.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.skel.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.skel.n_edges
    }

    pub fn is_closed(&self) -> bool {
        self.complex.is_closed()
    }

    /// Edge class of local edge `e` (in the 01,02,12,23,13,03 order) of tetrahedron `t`.
    pub fn edge_of(&self, t: usize, e: usize) -> usize {
        self.skel.edge_of[t * 6 + e]
    }

    pub fn edge_degree(&self, e: usize) -> usize {
        self.skel.edge_degree[e]
    }

    /// Faces as triples of edge classes (glued pairs counted once).
    pub fn face_edges(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for t in 0..self.tet_count() {
            for f in 0..4 {
                if let Some(g) = self.complex.gluing(t, f) {
                    if (g.simplex, g.perm[f] as usize) < (t, f) {
                        continue;
                    }
                }
                let [a, b, c] = others(f);
                let e = |x: usize, y: usize| self.edge_of(t, super::simplicial::local_edge_index::<4>(x as u8, y as u8));
                out.push([e(a, b), e(b, c), e(a, c)]);
            }
        }
        out
    }

    pub fn report(&self) -> Tri3Report {
        let link = self.vertex_links();
        let (comp, nc) = link.components();
        let lsk = link.skeleton();
        // Link component of corner (t,v) is the vertex class of (t,v).
        let mut comp_vertex = vec![usize::MAX; nc];
        for c in 0..self.tet_count() * 4 {
            comp_vertex[comp[c]] = self.skel.vertex_of[c];
        }
        let mut v_count = vec![std::collections::BTreeSet::new(); nc];
        let mut e_count = vec![std::collections::BTreeSet::new(); nc];
        let mut f_count = vec![0i64; nc];
        for c in 0..link.len() {
            f_count[comp[c]] += 1;
            for v in 0..3 {
                v_count[comp[c]].insert(lsk.vertex_of[c * 3 + v]);
                e_count[comp[c]].insert(lsk.edge_of[c * 3 + v]);
            }
        }
        let mut link_euler = vec![0i64; self.vertex_count()];
        for k in 0..nc {
            link_euler[comp_vertex[k]] = v_count[k].len() as i64 - e_count[k].len() as i64 + f_count[k];
        }
        let links_ok = (0..self.vertex_count()).all(|v| {
            let want = if self.skel.vertex_boundary[v] { 1 } else { 2 };
            link_euler[v] == want
        });
        Tri3Report {
            tetrahedra: self.tet_count(),
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            faces: self.skel.n_facets,
            boundary_faces: self.skel.n_boundary_facets,
            closed: self.is_closed(),
            orientable: self.complex.is_orientable(),
            edge_degrees: self.skel.edge_degree.clone(),
            link_euler,
            manifold: links_ok && !self.skel.reversed_edge && link.is_orientable(),
        }
    }

    /// Disjoint union of all vertex links; link triangle `4t+v` has local vertices
    /// `others(v)` of tetrahedron `t`.
    pub fn vertex_links(&self) -> Complex<3> {
        let mut link = Complex::<3>::new(self.tet_count() * 4);
        for t in 0..self.tet_count() {
            for v in 0..4 {
                let ov = others(v);
                for (i, &w) in ov.iter().enumerate() {
                    let Some(g) = self.complex.gluing(t, w) else { continue };
                    let v2 = g.perm[v] as usize;
                    let o2 = others(v2);
                    let pos = |x: u8| o2.iter().position(|&y| y == x as usize).unwrap() as u8;
                    let p: [u8; 3] = std::array::from_fn(|j| pos(g.perm[ov[j]]));
                    debug_assert_eq!(p[i], pos(g.perm[w]));
                    link.set_raw(t * 4 + v, i, Some(Gluing { simplex: g.simplex * 4 + v2, perm: p }));
                }
            }
        }
        link
    }

    /// The boundary surface with the face behind each triangle.
    pub fn boundary_surface(&self) -> Result<BoundarySurface, ComplexError> {
        let faces = self.complex.boundary_facets();
        let index: std::collections::HashMap<(usize, usize), usize> =
            faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut c = Complex::<3>::new(faces.len());
        for (bi, &(t, f)) in faces.iter().enumerate() {
            let w = others(f);
            for i in 0..3 {
                let (a, b) = (w[(i + 1) % 3], w[(i + 2) % 3]);
                // Walk around edge ab from face f towards face w[i].
                let (mut tt, mut pa, mut pb, mut x, mut y) = (t, a, b, f, w[i]);
                let mut steps = 0;
                while let Some(g) = self.complex.gluing(tt, y) {
                    let p = g.perm;
                    tt = g.simplex;
                    (pa, pb, x, y) = (p[pa] as usize, p[pb] as usize, p[y] as usize, p[x] as usize);
                    steps += 1;
                    if steps > 4 * self.tet_count() + 4 {
                        return Err(ComplexError::Precondition("boundary walk does not terminate".into()));
                    }
                }
                let j = index[&(tt, y)];
                let w2 = others(y);
                let pos = |z: usize| w2.iter().position(|&q| q == z).unwrap() as u8;
                let mut p = [0u8; 3];
                p[i] = pos(x);
                p[(i + 1) % 3] = pos(pa);
                p[(i + 2) % 3] = pos(pb);
                c.set_raw(bi, i, Some(Gluing { simplex: j, perm: p }));
            }
        }
        Ok(BoundarySurface { surface: SurfaceComplex::new(c)?, faces })
    }

    /// 2-3 move across face `f` of tetrahedron `t`.
    pub fn pachner23(&self, t: usize, f: usize) -> Result<Self, ComplexError> {
        if t >= self.tet_count() || f > 3 {
            return Err(ComplexError::Precondition(format!("no face {t}.{f}")));
        }
        let g = self
            .complex
            .gluing(t, f)
            .ok_or_else(|| ComplexError::Precondition("2-3 move on a boundary face".into()))?;
        if g.simplex == t {
            return Err(ComplexError::Precondition("2-3 move needs two distinct tetrahedra".into()));
        }
        let mut lu = [0u32; 4];
        for v in 0..4 {
            lu[g.perm[v] as usize] = if v == f { 4 } else { v as u32 };
        }
        let [a, b, c] = others(f).map(|x| x as u32);
        let x = f as u32;
        let new = [[x, 4, a, b], [x, 4, b, c], [x, 4, c, a]];
        let r = self.complex.retriangulate(&[(t, [0, 1, 2, 3]), (g.simplex, lu)], &new)?;
        Self::new(r.complex)
    }

    /// 3-2 move removing an interior edge of degree 3.
    pub fn pachner32(&self, e: usize) -> Result<Self, ComplexError> {
        let pre = |m: &str| Err(ComplexError::Precondition(m.to_string()));
        if e >= self.edge_count() {
            return pre("no such edge");
        }
        if self.skel.edge_degree[e] != 3 || self.skel.edge_boundary[e] {
            return pre("3-2 move needs an interior edge of degree 3");
        }
        let slots: Vec<usize> = (0..self.tet_count() * 6).filter(|&i| self.skel.edge_of[i] == e).collect();
        let mut tets: Vec<usize> = slots.iter().map(|&i| i / 6).collect();
        tets.dedup();
        if tets.len() != 3 {
            return pre("3-2 move needs three distinct tetrahedra");
        }
        let (t0, le) = (slots[0] / 6, slots[0] % 6);
        let (a, b) = local_edges::<4>()[le];
        let mut l = [0u32; 4];
        let mut next = 2;
        for v in 0..4u8 {
            l[v as usize] = if v == a {
                0
            } else if v == b {
                1
            } else {
                next += 1;
                next - 1
            };
        }
        let star = self.complex.label_star(t0, l, &[0, 1])?;
        let mut link: Vec<u32> = star.iter().flat_map(|x| x.1).filter(|&x| x > 1).collect();
        link.sort_unstable();
        link.dedup();
        if star.len() != 3 || link.len() != 3 {
            return pre("edge star is not three tetrahedra around a triangle");
        }
        let new = [[0, link[0], link[1], link[2]], [1, link[0], link[1], link[2]]];
        let r = self.complex.retriangulate(&star, &new)?;
        Self::new(r.complex)
    }

    /// 1-4 move: cone tetrahedron `t` from a new interior vertex.
    pub fn pachner14(&self, t: usize) -> Result<Self, ComplexError> {
        if t >= self.tet_count() {
            return Err(ComplexError::Precondition(format!("no tetrahedron {t}")));
        }
        let new = [[4, 1, 2, 3], [0, 4, 2, 3], [0, 1, 4, 3], [0, 1, 2, 4]];
        let r = self.complex.retriangulate(&[(t, [0, 1, 2, 3])], &new)?;
        Self::new(r.complex)
    }

    /// 4-1 move removing an interior vertex of degree 4.
    pub fn pachner41(&self, v: usize) -> Result<Self, ComplexError> {
        let pre = |m: &str| Err(ComplexError::Precondition(m.to_string()));
        if v >= self.vertex_count() {
            return pre("no such vertex");
        }
        let corners: Vec<usize> = (0..self.tet_count() * 4).filter(|&c| self.skel.vertex_of[c] == v).collect();
        if corners.len() != 4 || self.skel.vertex_boundary[v] {
            return pre("4-1 move needs an interior vertex of degree 4");
        }
        let mut tets: Vec<usize> = corners.iter().map(|&c| c / 4).collect();
        tets.dedup();
        if tets.len() != 4 {
            return pre("4-1 move needs four distinct tetrahedra");
        }
        let (t0, c) = (corners[0] / 4, corners[0] % 4);
        let mut l = [0u32; 4];
        let mut next = 1;
        for (x, lx) in l.iter_mut().enumerate() {
            if x != c {
                *lx = next;
                next += 1;
            }
        }
        let star = self.complex.label_star(t0, l, &[0])?;
        let mut link: Vec<u32> = star.iter().flat_map(|x| x.1).filter(|&x| x != 0).collect();
        link.sort_unstable();
        link.dedup();
        if star.len() != 4 || link.len() != 4 {
            return pre("vertex star is not four tetrahedra");
        }
        let r = self.complex.retriangulate(&star, &[[link[0], link[1], link[2], link[3]]])?;
        Self::new(r.complex)
    }

    /// Interior edges admitting a 3-2 move (degree 3, three distinct tetrahedra).
    pub fn degree3_edges(&self) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| self.skel.edge_degree[e] == 3 && !self.skel.edge_boundary[e])
            .filter(|&e| {
                let mut ts: Vec<usize> = (0..self.tet_count() * 6).filter(|&i| self.skel.edge_of[i] == e).map(|i| i / 6).collect();
                ts.dedup();
                ts.len() == 3
            })
            .collect()
    }

    /// Interior vertices admitting a 4-1 move.
    pub fn degree4_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.skel.vertex_degree[v] == 4 && !self.skel.vertex_boundary[v])
            .filter(|&v| {
                let mut ts: Vec<usize> = (0..self.tet_count() * 4).filter(|&c| self.skel.vertex_of[c] == v).map(|c| c / 4).collect();
                ts.dedup();
                ts.len() == 4
            })
            .collect()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.complex.is_isomorphic(&other.complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_tet_sphere_quotients() {
        let r = Triangulation3::two_tet_sphere().report();
        assert!(r.closed && r.manifold && r.orientable);
        assert_eq!((r.vertices, r.edges, r.faces), (4, 6, 4));
        assert!(r.edge_degrees.iter().all(|&d| d == 2));
        assert_eq!(r.link_euler, vec![2; 4]);
    }

    #[test]
    fn five_tet_sphere_quotients() {
        let r = Triangulation3::five_tet_sphere().report();
        assert!(r.closed && r.manifold);
        assert_eq!((r.vertices, r.edges), (5, 10));
        assert!(r.edge_degrees.iter().all(|&d| d == 3));
    }

    #[test]
    fn single_tetrahedron_has_boundary() {
        let r = Triangulation3::single_tetrahedron().report();
        assert!(!r.closed && r.manifold);
        assert_eq!(r.boundary_faces, 4);
        let b = Triangulation3::single_tetrahedron().boundary_surface().unwrap();
        assert_eq!(b.surface.euler_characteristic(), 2);
        assert!(b.surface.is_closed());
    }

    #[test]
    fn moves_on_spheres() {
        let two = Triangulation3::two_tet_sphere();
        let t = two.pachner23(0, 0).unwrap();
        assert_eq!(t.tet_count(), 3);
        assert!(t.report().manifold && t.is_closed());
        let e = t.degree3_edges();
        assert!(!e.is_empty());
        let back = t.pachner32(e[0]).unwrap();
        assert_eq!(back.tet_count(), 2);
        assert!(back.is_isomorphic(&two));

        let five = Triangulation3::five_tet_sphere();
        let up = five.pachner14(3).unwrap();
        assert_eq!((up.tet_count(), up.vertex_count()), (8, 6));
        let v = up.degree4_vertices();
        let down = up.pachner41(v[0]).unwrap();
        assert!(down.is_isomorphic(&five));
    }

    #[test]
    fn thirtytwo_rejects_wrong_degree() {
        let two = Triangulation3::two_tet_sphere();
        assert!(matches!(two.pachner32(0), Err(ComplexError::Precondition(_))));
    }

    #[test]
    fn moves_keep_orientation() {
        let c = Triangulation3::five_tet_sphere().complex().orient().unwrap();
        let t = Triangulation3::new(c).unwrap();
        assert!(t.complex().is_oriented());
        let t = t.pachner14(0).unwrap().pachner23(1, 2).unwrap();
        assert!(t.complex().is_oriented());
    }
}
