//! Fixed triangulations: the 1×k grid torus, genus-g polygon fans, the cap disk,
//! and closed 3-manifolds from genus-1 Dehn words.

use super::dehn::{dehn_twist, DehnWord, Strip};
use super::perm;
use super::simplicial::{Complex, Gluing};
use super::surface::{flag_perm, SurfaceComplex};
use super::tri3::Triangulation3;
use super::ComplexError;

/// An edge or triangle of a surface, for contraction orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Triangle(usize),
    Edge(usize),
}

/// Torus from a row of `k` unit squares, each cut by its diagonal.
///
/// Square `i` has corners BL, BR, TR, TL; triangle `2i` is (BL, BR, TR) and `2i+1` is
/// (BL, TR, TL). Top and bottom sides are identified, as are the ends of the row.
pub fn torus_grid(k: usize) -> Result<SurfaceComplex, ComplexError> {
    if k == 0 {
        return Err(ComplexError::Precondition("grid needs at least one square".into()));
    }
    let mut rows = vec![[None; 3]; 2 * k];
    for i in 0..k {
        let (r, l, l_next) = (2 * i, 2 * i + 1, (2 * i + 3) % (2 * k));
        // diagonal, horizontal side, vertical side shared with the next square
        rows[r][1] = Some((l, 2, true));
        rows[l][2] = Some((r, 1, true));
        rows[r][2] = Some((l, 0, true));
        rows[l][0] = Some((r, 2, true));
        rows[r][0] = Some((l_next, 1, true));
        rows[l_next][1] = Some((r, 0, true));
    }
    SurfaceComplex::from_flags(&rows)
}

/// Strip of all `2k` grid triangles around the horizontal curve.
pub fn horizontal_strip(k: usize) -> Strip {
    let mut pos = Vec::new();
    for i in 0..k {
        pos.push((2 * i + 1, 1, 2));
        pos.push((2 * i, 1, 0));
    }
    Strip::new(pos)
}

/// Strip of the two triangles of square `col`, around the vertical curve.
pub fn vertical_strip(_k: usize, col: usize) -> Strip {
    Strip::new(vec![(2 * col + 1, 0, 2), (2 * col, 1, 2)])
}

/// Closed orientable genus-`g` surface: the fan triangulation of the 4g-gon with sides
/// a₁b₁a₁⁻¹b₁⁻¹⋯ (4g − 2 triangles, one vertex). Genus 0 gives the tetrahedron boundary.
pub fn genus_surface(g: usize) -> Result<SurfaceComplex, ComplexError> {
    Ok(genus_surface_two_cap(g)?.0)
}

/// The genus-`g` surface with an ordering of its cells that has exactly two caps.
pub fn genus_surface_two_cap(g: usize) -> Result<(SurfaceComplex, Vec<Cell>), ComplexError> {
    if g == 0 {
        let s = SurfaceComplex::sphere();
        let ord = path_ordering(&s, &[0, 1, 2, 3]);
        return Ok((s, ord));
    }
    let m = 4 * g - 2;
    let side = |j: usize| -> (usize, u8) {
        if j == 0 {
            (0, 2)
        } else if j < 4 * g - 1 {
            (j - 1, 0)
        } else {
            (m - 1, 1)
        }
    };
    let mut rows = vec![[None; 3]; m];
    for i in 0..m - 1 {
        rows[i][1] = Some((i + 1, 2, true));
        rows[i + 1][2] = Some((i, 1, true));
    }
    for h in 0..g {
        for (a, b) in [(4 * h, 4 * h + 2), (4 * h + 1, 4 * h + 3)] {
            let (ta, sa) = side(a);
            let (tb, sb) = side(b);
            rows[ta][sa as usize] = Some((tb, sb, true));
            rows[tb][sb as usize] = Some((ta, sa, true));
        }
    }
    let s = SurfaceComplex::from_flags(&rows)?;
    let ord = path_ordering(&s, &(0..m).collect::<Vec<_>>());
    Ok((s, ord))
}

/// Orders triangles as given, placing each edge right after the earlier of its two triangles.
/// When consecutive triangles share an edge this leaves exactly two caps.
pub fn path_ordering(s: &SurfaceComplex, tris: &[usize]) -> Vec<Cell> {
    let mut rank = vec![usize::MAX; s.triangle_count()];
    for (i, &t) in tris.iter().enumerate() {
        rank[t] = i;
    }
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); tris.len()];
    for (e, sides) in s.edge_sides().iter().enumerate() {
        let first = sides.iter().map(|&(t, _)| rank[t]).min().unwrap();
        after[first].push(e);
    }
    let mut out = Vec::new();
    for (i, &t) in tris.iter().enumerate() {
        out.push(Cell::Triangle(t));
        out.extend(after[i].iter().map(|&e| Cell::Edge(e)));
    }
    out
}

/// Replaces triangle `t` by a quadrilateral around a new loop at its vertex 0, filled by
/// a once-subdivided folded disk. Returns the surface and the disk's triangles.
pub fn insert_cap_disk(s: &SurfaceComplex, t: usize) -> Result<(SurfaceComplex, Vec<usize>), ComplexError> {
    if t >= s.triangle_count() {
        return Err(ComplexError::Precondition(format!("no triangle {t}")));
    }
    let n = s.triangle_count();
    let (r1, r2, m) = (t, n, n + 1);
    // Old slots of t land in R1 (slot 2, same labels) or R2 (t rotated by tau).
    let tau = [1u8, 2, 0];
    let id = perm::identity::<3>();
    let loc = |slot: usize| -> (usize, [u8; 3]) {
        if slot == 2 {
            (r1, id)
        } else {
            (r2, tau)
        }
    };
    let old = s.complex();
    let mut c = Complex::<3>::new(n + 2);
    for u in 0..n {
        for f in 0..3 {
            let Some(g) = old.gluing(u, f) else { continue };
            let (x, sx) = if u == t { loc(f) } else { (u, id) };
            let (y, sy) = if g.simplex == t { loc(g.perm[f] as usize) } else { (g.simplex, id) };
            // x-local -> u-local -> partner-local -> y-local
            let p = perm::compose(&perm::inverse(&sy), &perm::compose(&g.perm, &sx));
            let xf = perm::inverse(&sx)[f] as usize;
            c.set_raw(x, xf, Some(Gluing { simplex: y, perm: p }));
        }
    }
    c.glue(r1, 0, r2, flag_perm(0, 1, true))?;
    c.glue(r1, 1, m, flag_perm(1, 2, true))?;
    c.glue(m, 0, m, flag_perm(0, 1, true))?;
    let folded = SurfaceComplex::new(c)?;
    let out = folded.pachner13(m)?;
    Ok((out, vec![m, m + 1, m + 2]))
}

/// Where a surface triangle sits on the boundary of a 3-complex: tetrahedron, face, and
/// the map from triangle-local to tetrahedron-local vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
    pub map: [u8; 3],
}

/// Glues two boundary faces realizing the same surface triangle (identity on triangle-local vertices).
fn glue_faces(c: &mut Complex<4>, a: FaceRef, b: FaceRef) -> Result<(), ComplexError> {
    let mut p = [0u8; 4];
    p[a.face] = b.face as u8;
    for v in 0..3 {
        p[a.map[v] as usize] = b.map[v];
    }
    c.glue(a.tet, a.face, b.tet, p)
}

/// Branching rank of each local vertex of grid triangle `t`:
/// horizontal edges point right, vertical edges up, diagonals to the top right.
fn grid_rank(t: usize) -> [u8; 3] {
    if t % 2 == 0 {
        [0, 1, 2]
    } else {
        [0, 2, 1]
    }
}

/// Surface × interval over the grid torus: three tetrahedra per triangle.
fn prism_layer(base: &SurfaceComplex) -> Result<(Complex<4>, Vec<FaceRef>, Vec<FaceRef>), ComplexError> {
    const KEYS: [[(u8, u8); 4]; 3] = [
        [(0, 0), (1, 0), (2, 0), (2, 1)],
        [(0, 0), (1, 0), (1, 1), (2, 1)],
        [(0, 0), (0, 1), (1, 1), (2, 1)],
    ];
    let n = base.triangle_count();
    let mut c = Complex::<4>::new(3 * n);
    let face_keys = |x: usize, f: usize| -> Vec<(u8, u8)> {
        let mut k: Vec<(u8, u8)> = (0..4).filter(|&v| v != f).map(|v| KEYS[x][v]).collect();
        k.sort_unstable();
        k
    };
    let find = |want: &[(u8, u8)], skip: Option<(usize, usize)>| -> (usize, usize) {
        for x in 0..3 {
            for f in 0..4 {
                if face_keys(x, f) == want && skip != Some((x, f)) {
                    return (x, f);
                }
            }
        }
        unreachable!("prism face {want:?}")
    };
    let glue_by_keys = |c: &mut Complex<4>, t1: usize, x: usize, f: usize, t2: usize, map: &dyn Fn((u8, u8)) -> (u8, u8)| {
        let mut want: Vec<(u8, u8)> = (0..4).filter(|&v| v != f).map(|v| map(KEYS[x][v])).collect();
        want.sort_unstable();
        let (y, h) = find(&want, (t1 == t2).then_some((x, f)));
        let p: [u8; 4] = std::array::from_fn(|v| {
            if v == f {
                h as u8
            } else {
                KEYS[y].iter().position(|&q| q == map(KEYS[x][v])).unwrap() as u8
            }
        });
        if c.gluing(3 * t1 + x, f).is_none() {
            c.glue(3 * t1 + x, f, 3 * t2 + y, p)
        } else {
            Ok(())
        }
    };
    for t in 0..n {
        glue_by_keys(&mut c, t, 0, 2, t, &|k| k)?;
        glue_by_keys(&mut c, t, 1, 1, t, &|k| k)?;
        let rank = grid_rank(t);
        let unrank = perm::inverse(&rank);
        for slot in 0..3 {
            let (u, _, _) = base.partner(t, slot).expect("closed base");
            let sigma = base.complex().gluing(t, slot).unwrap().perm;
            let urank = grid_rank(u);
            let ends = [rank[(slot + 1) % 3], rank[(slot + 2) % 3]];
            for x in 0..3 {
                for f in 0..4 {
                    let keys = face_keys(x, f);
                    if !keys.iter().all(|k| ends.contains(&k.0)) || keys.iter().all(|k| k.1 == keys[0].1) {
                        continue;
                    }
                    let map = |(r, lvl): (u8, u8)| (urank[sigma[unrank[r as usize] as usize] as usize], lvl);
                    glue_by_keys(&mut c, t, x, f, u, &map)?;
                }
            }
        }
    }
    let bottom = (0..n).map(|t| FaceRef { tet: 3 * t, face: 3, map: grid_rank(t) }).collect();
    let top = (0..n).map(|t| FaceRef { tet: 3 * t + 2, face: 0, map: grid_rank(t).map(|r| r + 1) }).collect();
    Ok((c, bottom, top))
}

/// Solid torus whose boundary is the `k`-square grid torus and whose meridians are the
/// vertical grid loops. Block `i` is the cone over the sphere formed by square `i` and
/// two folded disks on its vertical sides; consecutive blocks share a disk.
pub fn solid_torus(k: usize) -> Result<(Complex<4>, Vec<FaceRef>), ComplexError> {
    if k == 0 {
        return Err(ComplexError::Precondition("grid needs at least one square".into()));
    }
    const L: usize = 0;
    const R: usize = 1;
    const MA: usize = 2;
    const MB: usize = 3;
    let ext = |p: [u8; 3]| [p[0], p[1], p[2], 3u8];
    let mut c = Complex::<4>::new(4 * k);
    for i in 0..k {
        let b = 4 * i;
        for (x, sx, y, sy) in [(L, 2, R, 1), (L, 0, R, 2), (L, 1, MA, 2), (R, 0, MB, 2), (MA, 0, MA, 1), (MB, 0, MB, 1)] {
            c.glue(b + x, sx, b + y, ext(flag_perm(sx as u8, sy as u8, true)))?;
        }
        let nb = 4 * ((i + 1) % k);
        c.glue(b + MB, 3, nb + MA, [1, 0, 2, 3])?;
    }
    let boundary = (0..2 * k)
        .map(|t| {
            let (i, tri) = (t / 2, if t % 2 == 0 { R } else { L });
            FaceRef { tet: 4 * i + tri, face: 3, map: [0, 1, 2] }
        })
        .collect();
    Ok((c, boundary))
}

const SOLID_TORUS_K3: &str = include_str!("../../data/solid_torus_k3.t3m");

fn load_solid_torus(k: usize) -> Result<(Complex<4>, Vec<FaceRef>), ComplexError> {
    let (built, boundary) = solid_torus(k)?;
    if k == 3 {
        let shipped = super::io::parse_tri3(SOLID_TORUS_K3)?;
        return Ok((shipped.complex().clone(), boundary));
    }
    Ok((built, boundary))
}

/// A closed 3-manifold build with the record of its twist tetrahedra.
#[derive(Clone, Debug)]
pub struct Build3 {
    pub manifold: Triangulation3,
    /// Tetrahedra attached by flips, with vertex order (P, A, B, Q): the flipped
    /// diagonal PQ is local edge 03 and the new diagonal AB is local edge 12.
    pub twist_tets: Vec<usize>,
    pub base_tets: usize,
}

/// Product layer T²×I followed by one tetrahedron per flip of each letter's Dehn twist.
fn twisted_layer(word: &DehnWord, k: usize) -> Result<(Complex<4>, Vec<FaceRef>, Vec<FaceRef>, Vec<usize>), ComplexError> {
    if word.genus != 1 {
        return Err(ComplexError::Unsupported(format!(
            "genus {} builders are not available; only genus 1 is implemented",
            word.genus
        )));
    }
    if k < 3 {
        return Err(ComplexError::Precondition("the grid needs k ≥ 3".into()));
    }
    let base = torus_grid(k)?;
    let (mut c, bottom, mut top) = prism_layer(&base)?;
    let mut twist_tets = Vec::new();
    for &(curve, sign) in &word.letters {
        let strip = if curve == 1 { horizontal_strip(k) } else { vertical_strip(k, 0) };
        let tw = dehn_twist(&base, &strip, sign)?;
        let mut surf = base.clone();
        for &(t, slot) in &tw.flips {
            let slot = slot as usize;
            let g = surf.complex().gluing(t, slot).unwrap();
            let u = g.simplex;
            let (next, r) = surf.pachner22_detailed(t, slot)?;
            // Labels: A = slot, P = slot+1, Q = slot+2 on t; B = 3 on u.
            let (a, p, q) = (slot, (slot + 1) % 3, (slot + 2) % 3);
            let local = |label: u32| -> u8 {
                match label {
                    3 => 2,
                    x if x as usize == p => 0,
                    x if x as usize == a => 1,
                    _ => 3,
                }
            };
            let tet = c.add_simplex();
            twist_tets.push(tet);
            let ft = top[t];
            let mut pt = [0u8; 4];
            pt[0] = ft.map[p];
            pt[1] = ft.map[a];
            pt[3] = ft.map[q];
            pt[2] = ft.face as u8;
            c.glue(tet, 2, ft.tet, pt)?;
            let fu = top[u];
            // u-local position of a t-local vertex; the apex of slot `a` maps to B.
            let pos_u = |v: usize| g.perm[v] as usize;
            let mut pu = [0u8; 4];
            pu[0] = fu.map[pos_u(p)];
            pu[2] = fu.map[pos_u(a)];
            pu[3] = fu.map[pos_u(q)];
            pu[1] = fu.face as u8;
            c.glue(tet, 1, fu.tet, pu)?;
            for (j, &ni) in r.new_index.iter().enumerate() {
                let map = r.new_labels[j].map(local);
                let face = (0..4).find(|x| !map.contains(&(*x as u8))).unwrap();
                top[ni] = FaceRef { tet, face, map };
            }
            surf = next;
        }
        let mut relabeled = top.clone();
        for (j, &(ti, pi)) in tw.relabel.iter().enumerate() {
            let inv = perm::inverse(&pi);
            relabeled[ti] = FaceRef { tet: top[j].tet, face: top[j].face, map: std::array::from_fn(|x| top[j].map[inv[x] as usize]) };
        }
        top = relabeled;
    }
    Ok((c, bottom, top, twist_tets))
}

/// Mapping torus of the word's product of Dehn twists on the `k`-square grid torus.
pub fn mapping_torus(word: &DehnWord, k: usize) -> Result<Build3, ComplexError> {
    let (mut c, bottom, top, twist_tets) = twisted_layer(word, k)?;
    for (b, t) in bottom.iter().zip(&top) {
        glue_faces(&mut c, *t, *b)?;
    }
    Ok(Build3 { manifold: Triangulation3::new(c)?, twist_tets, base_tets: 6 * k })
}

/// Both ends of the twisted layer capped by solid tori.
pub fn heegaard(word: &DehnWord, k: usize) -> Result<Build3, ComplexError> {
    let (layer, bottom, top, twist_tets) = twisted_layer(word, k)?;
    let (st, st_boundary) = load_solid_torus(k)?;
    let (mut c, off) = Complex::disjoint_union(&[&layer, &st, &st]);
    let shift = |f: &FaceRef, o: usize| FaceRef { tet: f.tet + o, ..*f };
    for (i, b) in bottom.iter().enumerate() {
        glue_faces(&mut c, *b, shift(&st_boundary[i], off[1]))?;
    }
    for (i, t) in top.iter().enumerate() {
        glue_faces(&mut c, *t, shift(&st_boundary[i], off[2]))?;
    }
    Ok(Build3 { manifold: Triangulation3::new(c)?, twist_tets, base_tets: 6 * k + 8 * k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::io::serialize_tri3;

    #[test]
    fn grid_torus_counts() {
        for k in 1..6 {
            let s = torus_grid(k).unwrap();
            assert_eq!((s.vertex_count(), s.edge_count(), s.triangle_count()), (k, 3 * k, 2 * k));
            assert!(s.is_oriented() && s.is_closed());
            horizontal_strip(k).validate(&s).unwrap();
            for c in 0..k {
                vertical_strip(k, c).validate(&s).unwrap();
            }
        }
    }

    #[test]
    fn genus_surfaces() {
        for g in 0..5 {
            let s = genus_surface(g).unwrap();
            assert_eq!(s.euler_characteristic(), 2 - 2 * g as i64);
            assert!(s.is_oriented() && s.is_closed());
            assert_eq!(s.genus(), Some(g));
        }
    }

    #[test]
    fn cap_disk_insertion() {
        let s = torus_grid(1).unwrap();
        let (once, disk) = insert_cap_disk(&s, 0).unwrap();
        assert_eq!(once.triangle_count(), 6);
        assert_eq!(disk.len(), 3);
        assert_eq!(once.euler_characteristic(), 0);
        assert!(once.is_oriented());
        let (twice, _) = insert_cap_disk(&once, 3).unwrap();
        assert_eq!(twice.triangle_count(), 10);
        assert_eq!(twice.euler_characteristic(), 0);
        let sphere = SurfaceComplex::sphere();
        assert_eq!(insert_cap_disk(&sphere, 2).unwrap().0.euler_characteristic(), 2);
    }

    #[test]
    fn solid_torus_boundary_is_the_grid() {
        for k in 1..5 {
            let (c, bnd) = solid_torus(k).unwrap();
            let m = Triangulation3::new(c).unwrap();
            let r = m.report();
            assert!(r.manifold, "{r:?}");
            assert!(r.orientable);
            let b = m.boundary_surface().unwrap();
            let grid = torus_grid(k).unwrap();
            let index: Vec<usize> = b
                .faces
                .iter()
                .map(|&(t, f)| bnd.iter().position(|x| x.tet == t && x.face == f).unwrap())
                .collect();
            let relabeled = b.surface.complex().relabel(&index, &vec![perm::identity(); index.len()]);
            assert_eq!(&relabeled, grid.complex());
        }
    }

    #[test]
    fn shipped_solid_torus_matches_builder() {
        let (c, _) = solid_torus(3).unwrap();
        assert_eq!(serialize_tri3(&Triangulation3::new(c).unwrap()), SOLID_TORUS_K3);
    }

    #[test]
    fn identity_mapping_torus() {
        let b = mapping_torus(&DehnWord::empty(1), 3).unwrap();
        let r = b.manifold.report();
        assert!(r.closed && r.manifold && r.orientable, "{r:?}");
        assert_eq!(r.tetrahedra, 18);
        // T³ from a one-vertex-per-column grid: χ = 0 and every vertex link a sphere.
        assert_eq!(r.vertices as i64 - r.edges as i64 + r.faces as i64 - r.tetrahedra as i64, 0);
    }

    #[test]
    fn twisted_mapping_tori() {
        for word in ["1", "2", "-1 2", "1 1 -2"] {
            let w = DehnWord::parse(1, word).unwrap();
            let b = mapping_torus(&w, 3).unwrap();
            let flips: usize = w.letters.iter().map(|&(c, _)| if c == 1 { 12 } else { 4 }).sum();
            assert_eq!(b.manifold.tet_count(), 18 + flips);
            assert_eq!(b.twist_tets.len(), flips);
            let r = b.manifold.report();
            assert!(r.closed && r.manifold && r.orientable, "{word}: {r:?}");
        }
    }

    #[test]
    fn heegaard_builds() {
        for word in ["", "1", "2 -1"] {
            let w = DehnWord::parse(1, word).unwrap();
            let b = heegaard(&w, 3).unwrap();
            let r = b.manifold.report();
            assert!(r.closed && r.manifold && r.orientable, "{word}: {r:?}");
        }
    }

    #[test]
    fn higher_genus_is_unsupported() {
        let w = DehnWord::parse(2, "1").unwrap();
        assert!(matches!(mapping_torus(&w, 3), Err(ComplexError::Unsupported(_))));
    }
}
