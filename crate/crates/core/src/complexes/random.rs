//! Random Pachner moves for invariance testing.

use super::surface::SurfaceComplex;
use super::tri3::Triangulation3;
use super::ComplexError;
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceMove {
    /// 2-2 flip of slot `k` of triangle `t`.
    Flip(usize, usize),
    /// 1-3 subdivision of a triangle.
    Split(usize),
    /// 3-1 removal of a vertex.
    Merge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri3Move {
    TwoThree(usize, usize),
    ThreeTwo(usize),
    OneFour(usize),
    FourOne(usize),
}

impl fmt::Display for SurfaceMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurfaceMove::Flip(t, k) => write!(f, "2-2 {t}.{k}"),
            SurfaceMove::Split(t) => write!(f, "1-3 {t}"),
            SurfaceMove::Merge(v) => write!(f, "3-1 v{v}"),
        }
    }
}

impl fmt::Display for Tri3Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Tri3Move::TwoThree(t, k) => write!(f, "2-3 {t}.{k}"),
            Tri3Move::ThreeTwo(e) => write!(f, "3-2 e{e}"),
            Tri3Move::OneFour(t) => write!(f, "1-4 {t}"),
            Tri3Move::FourOne(v) => write!(f, "4-1 v{v}"),
        }
    }
}

const ATTEMPTS: usize = 64;

fn exhausted() -> ComplexError {
    ComplexError::Precondition("no applicable move found".into())
}

/// One uniformly chosen applicable move; subdivisions are skipped once the surface has
/// `max_triangles` triangles.
pub fn random_surface_move<R: Rng>(s: &SurfaceComplex, rng: &mut R, max_triangles: usize) -> Result<(SurfaceComplex, SurfaceMove), ComplexError> {
    let n = s.triangle_count();
    for _ in 0..ATTEMPTS {
        let mv = match rng.gen_range(0..3) {
            0 => SurfaceMove::Flip(rng.gen_range(0..n), rng.gen_range(0..3)),
            1 if n + 2 <= max_triangles => SurfaceMove::Split(rng.gen_range(0..n)),
            2 => match s.removable_vertices().choose(rng) {
                Some(&v) => SurfaceMove::Merge(v),
                None => continue,
            },
            _ => continue,
        };
        if let Ok(next) = apply_surface_move(s, mv) {
            return Ok((next, mv));
        }
    }
    Err(exhausted())
}

pub fn apply_surface_move(s: &SurfaceComplex, mv: SurfaceMove) -> Result<SurfaceComplex, ComplexError> {
    match mv {
        SurfaceMove::Flip(t, k) => s.pachner22(t, k),
        SurfaceMove::Split(t) => s.pachner13(t),
        SurfaceMove::Merge(v) => s.pachner31(v),
    }
}

/// As [`random_surface_move`] for closed 3-manifolds; 2-3 and 1-4 moves are skipped at `max_tets`.
pub fn random_tri3_move<R: Rng>(m: &Triangulation3, rng: &mut R, max_tets: usize) -> Result<(Triangulation3, Tri3Move), ComplexError> {
    let n = m.tet_count();
    for _ in 0..ATTEMPTS {
        let mv = match rng.gen_range(0..4) {
            0 if n < max_tets => Tri3Move::TwoThree(rng.gen_range(0..n), rng.gen_range(0..4)),
            1 => match m.degree3_edges().choose(rng) {
                Some(&e) => Tri3Move::ThreeTwo(e),
                None => continue,
            },
            2 if n + 3 <= max_tets => Tri3Move::OneFour(rng.gen_range(0..n)),
            3 => match m.degree4_vertices().choose(rng) {
                Some(&v) => Tri3Move::FourOne(v),
                None => continue,
            },
            _ => continue,
        };
        if let Ok(next) = apply_tri3_move(m, mv) {
            return Ok((next, mv));
        }
    }
    Err(exhausted())
}

pub fn apply_tri3_move(m: &Triangulation3, mv: Tri3Move) -> Result<Triangulation3, ComplexError> {
    match mv {
        Tri3Move::TwoThree(t, f) => m.pachner23(t, f),
        Tri3Move::ThreeTwo(e) => m.pachner32(e),
        Tri3Move::OneFour(t) => m.pachner14(t),
        Tri3Move::FourOne(v) => m.pachner41(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::builders::torus_grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_moves_keep_topology() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = torus_grid(2).unwrap();
        for _ in 0..50 {
            s = random_surface_move(&s, &mut rng, 12).unwrap().0;
            assert_eq!(s.euler_characteristic(), 0);
            assert!(s.triangle_count() <= 12);
        }
        let mut m = Triangulation3::two_tet_sphere();
        for _ in 0..30 {
            m = random_tri3_move(&m, &mut rng, 8).unwrap().0;
            assert!(m.is_closed() && m.tet_count() <= 8);
            assert!(m.report().manifold);
        }
    }
}
