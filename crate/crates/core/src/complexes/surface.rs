use super::perm;
use super::simplicial::{Complex, Gluing, Retriangulation, Skeleton};
use super::ComplexError;

/// A triangulated surface. Slot `k` of a triangle is the edge opposite local vertex `k`,
/// running from vertex `k+1` to `k+2` (mod 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComplex {
    complex: Complex<3>,
    skel: Skeleton,
}

/// Gluing permutation for slot `k` glued to slot `k2`; `compatible` means the two
/// triangles induce opposite directions on the shared edge (orientations agree).
pub fn flag_perm(k: u8, k2: u8, compatible: bool) -> [u8; 3] {
    let mut p = [0u8; 3];
    p[k as usize] = k2;
    let (a, b) = ((k + 1) % 3, (k + 2) % 3);
    if compatible {
        p[a as usize] = (k2 + 2) % 3;
        p[b as usize] = (k2 + 1) % 3;
    } else {
        p[a as usize] = (k2 + 1) % 3;
        p[b as usize] = (k2 + 2) % 3;
    }
    p
}

impl SurfaceComplex {
    pub fn new(complex: Complex<3>) -> Result<Self, ComplexError> {
        complex.validate()?;
        let skel = complex.skeleton();
        Ok(SurfaceComplex { complex, skel })
    }

    /// One row per triangle: `(partner, partner slot, compatible)` per slot.
    pub fn from_flags(rows: &[[Option<(usize, u8, bool)>; 3]]) -> Result<Self, ComplexError> {
        let mut c = Complex::new(rows.len());
        for (t, row) in rows.iter().enumerate() {
            for (k, g) in row.iter().enumerate() {
                if let Some((u, k2, compat)) = *g {
                    if u >= rows.len() {
                        return Err(ComplexError::Dangling { simplex: t, facet: k, partner: u });
                    }
                    if k2 > 2 {
                        return Err(ComplexError::BadPermutation(format!("slot {k2}")));
                    }
                    c.set_raw(t, k, Some(Gluing { simplex: u, perm: flag_perm(k as u8, k2, compat) }));
                }
            }
        }
        Self::new(c)
    }

    /// Boundary of the tetrahedron, consistently oriented.
    pub fn sphere() -> Self {
        let cells = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
        let c = super::from_labeled_cells(&cells).unwrap().orient().unwrap();
        Self::new(c).unwrap()
    }

    pub fn complex(&self) -> &Complex<3> {
        &self.complex
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn triangle_count(&self) -> usize {
        self.complex.len()
    }

    pub fn edge_count(&self) -> usize {
        self.skel.n_edges
    }

    pub fn vertex_count(&self) -> usize {
        self.skel.n_vertices
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangle_count() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.complex.is_closed()
    }

    pub fn is_orientable(&self) -> bool {
        self.complex.is_orientable()
    }

    pub fn is_oriented(&self) -> bool {
        self.complex.is_oriented()
    }

    pub fn is_connected(&self) -> bool {
        self.complex.components().1 <= 1
    }

    /// A consistently oriented copy, if orientable.
    pub fn oriented(&self) -> Option<Self> {
        Self::new(self.complex.orient()?).ok()
    }

    /// Genus of a closed connected orientable surface.
    pub fn genus(&self) -> Option<usize> {
        let chi = self.euler_characteristic();
        (self.is_closed() && self.is_orientable() && self.is_connected() && chi <= 2 && chi % 2 == 0)
            .then(|| ((2 - chi) / 2) as usize)
    }

    pub fn partner(&self, t: usize, k: usize) -> Option<(usize, u8, bool)> {
        self.complex.gluing(t, k).map(|g| (g.simplex, g.perm[k], perm::is_odd(&g.perm)))
    }

    /// Edge class of slot `k` of triangle `t`.
    pub fn edge_of(&self, t: usize, k: usize) -> usize {
        self.skel.edge_of[t * 3 + k]
    }

    pub fn vertex_of(&self, t: usize, v: usize) -> usize {
        self.skel.vertex_of[t * 3 + v]
    }

    /// The (triangle, slot) sides of each edge class.
    pub fn edge_sides(&self) -> Vec<Vec<(usize, u8)>> {
        let mut out = vec![Vec::new(); self.edge_count()];
        for t in 0..self.triangle_count() {
            for k in 0..3 {
                out[self.edge_of(t, k)].push((t, k as u8));
            }
        }
        out
    }

    /// Vertex-by-edge incidence counts (a loop edge counts its vertex twice).
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.edge_count()]; self.vertex_count()];
        for (e, sides) in self.edge_sides().iter().enumerate() {
            let (t, k) = sides[0];
            let k = k as usize;
            m[self.vertex_of(t, (k + 1) % 3)][e] += 1;
            m[self.vertex_of(t, (k + 2) % 3)][e] += 1;
        }
        m
    }

    /// Flips the edge in slot `k` of triangle `t`.
    pub fn pachner22(&self, t: usize, k: usize) -> Result<Self, ComplexError> {
        Ok(self.pachner22_detailed(t, k)?.0)
    }

    /// The flip with its relabeling record. New triangles carry labels
    /// `A = k`, `P = k+1`, `Q = k+2` (local vertices of `t`) and `B = 3`, as `[A,P,B]` and `[A,B,Q]`.
    pub fn pachner22_detailed(&self, t: usize, k: usize) -> Result<(Self, Retriangulation<3>), ComplexError> {
        if t >= self.triangle_count() || k > 2 {
            return Err(ComplexError::Precondition(format!("no edge slot {t}.{k}")));
        }
        let g = self
            .complex
            .gluing(t, k)
            .ok_or_else(|| ComplexError::Precondition("2-2 move on a boundary edge".into()))?;
        if g.simplex == t {
            return Err(ComplexError::Precondition("2-2 move needs two distinct triangles".into()));
        }
        let mut lu = [0u32; 3];
        for v in 0..3 {
            lu[g.perm[v] as usize] = if v == k { 3 } else { v as u32 };
        }
        let (a, p, q) = (k as u32, (k as u32 + 1) % 3, (k as u32 + 2) % 3);
        let r = self.complex.retriangulate(&[(t, [0, 1, 2]), (g.simplex, lu)], &[[a, p, 3], [a, 3, q]])?;
        Ok((Self::new(r.complex.clone())?, r))
    }

    /// Subdivides triangle `t` by a new interior vertex.
    pub fn pachner13(&self, t: usize) -> Result<Self, ComplexError> {
        if t >= self.triangle_count() {
            return Err(ComplexError::Precondition(format!("no triangle {t}")));
        }
        let r = self.complex.retriangulate(&[(t, [0, 1, 2])], &[[3, 1, 2], [3, 2, 0], [3, 0, 1]])?;
        Self::new(r.complex)
    }

    /// Removes an interior vertex of degree 3 (vertex class index).
    pub fn pachner31(&self, v: usize) -> Result<Self, ComplexError> {
        let pre = |m: &str| Err(ComplexError::Precondition(m.to_string()));
        if v >= self.vertex_count() {
            return pre("no such vertex");
        }
        let corners: Vec<(usize, usize)> = (0..self.triangle_count() * 3)
            .filter(|&c| self.skel.vertex_of[c] == v)
            .map(|c| (c / 3, c % 3))
            .collect();
        if corners.len() != 3 || self.skel.vertex_boundary[v] {
            return pre("3-1 move needs an interior vertex of degree 3");
        }
        let mut tris: Vec<usize> = corners.iter().map(|c| c.0).collect();
        tris.dedup();
        if tris.len() != 3 {
            return pre("3-1 move needs three distinct triangles");
        }
        let (t0, c) = corners[0];
        let mut l = [0u32; 3];
        l[c] = 0;
        l[(c + 1) % 3] = 1;
        l[(c + 2) % 3] = 2;
        let star = self.complex.label_star(t0, l, &[0])?;
        let mut link: Vec<u32> = star.iter().flat_map(|x| x.1).filter(|&x| x != 0).collect();
        link.sort_unstable();
        link.dedup();
        if star.len() != 3 || link.len() != 3 {
            return pre("vertex star is not a disk of three triangles");
        }
        let r = self.complex.retriangulate(&star, &[[link[0], link[1], link[2]]])?;
        Self::new(r.complex)
    }

    /// Interior vertices of degree 3 whose star is three distinct triangles.
    pub fn removable_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.skel.vertex_degree[v] == 3 && !self.skel.vertex_boundary[v])
            .filter(|&v| {
                let mut ts: Vec<usize> =
                    (0..self.triangle_count() * 3).filter(|&c| self.skel.vertex_of[c] == v).map(|c| c / 3).collect();
                ts.dedup();
                ts.len() == 3
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

    pub(crate) fn torus2() -> SurfaceComplex {
        super::super::builders::torus_grid(1).unwrap()
    }

    #[test]
    fn flag_perms_have_expected_parity() {
        for k in 0..3 {
            for k2 in 0..3 {
                assert!(perm::is_odd(&flag_perm(k, k2, true)));
                assert!(!perm::is_odd(&flag_perm(k, k2, false)));
            }
        }
    }

    #[test]
    fn sphere_counts() {
        let s = SurfaceComplex::sphere();
        assert_eq!((s.vertex_count(), s.edge_count(), s.triangle_count()), (4, 6, 4));
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_oriented());
    }

    #[test]
    fn flip_on_two_triangle_torus() {
        let t = torus2();
        assert_eq!((t.vertex_count(), t.edge_count(), t.triangle_count()), (1, 3, 2));
        for k in 0..3 {
            let f = t.pachner22(0, k).unwrap();
            assert_eq!((f.vertex_count(), f.edge_count(), f.triangle_count()), (1, 3, 2));
            assert!(f.is_oriented());
        }
    }

    #[test]
    fn subdivide_sphere() {
        let s = SurfaceComplex::sphere().pachner13(2).unwrap();
        assert_eq!(s.triangle_count(), 6);
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_oriented());
    }

    #[test]
    fn thirteen_then_thirtyone_is_identity() {
        let base = torus2();
        let up = base.pachner13(1).unwrap();
        let v = up.removable_vertices();
        assert_eq!(v.len(), 1);
        let down = up.pachner31(v[0]).unwrap();
        assert!(down.is_isomorphic(&base));
    }

    #[test]
    fn thirtyone_rejects_high_degree() {
        let t = torus2();
        assert!(matches!(t.pachner31(0), Err(ComplexError::Precondition(_))));
    }

    #[test]
    fn flip_rejects_boundary_and_self_glued_edges() {
        let s = SurfaceComplex::from_flags(&[[None, None, None]]).unwrap();
        assert!(s.pachner22(0, 0).is_err());
    }
}
