//! Triangulated surfaces and 3-manifolds.

pub mod builders;
pub mod dehn;
pub mod io;
pub mod perm;
pub mod random;
pub mod simplicial;
pub mod surface;
pub mod tri3;
mod union_find;

pub use dehn::{dehn_twist, DehnTwist, DehnWord, Strip};
pub use simplicial::{Complex, Gluing, Skeleton};
pub use surface::SurfaceComplex;
pub use tri3::{Tri3Report, Triangulation3};

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simplex {simplex} facet {facet} refers to missing simplex {partner}")]
    Dangling { simplex: usize, facet: usize, partner: usize },
    #[error("simplex {simplex} facet {facet} is glued to itself")]
    SelfGluing { simplex: usize, facet: usize },
    #[error("gluing at simplex {simplex} facet {facet} is not matched by its partner")]
    NotInvolution { simplex: usize, facet: usize },
    #[error("invalid permutation {0}")]
    BadPermutation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Glues cells along facets carrying equal label sets. Each facet label set may occur at most twice.
pub fn from_labeled_cells<const N: usize>(cells: &[[u32; N]]) -> Result<Complex<N>, ComplexError> {
    let mut sites: HashMap<Vec<u32>, Vec<(usize, usize)>> = HashMap::new();
    for (s, c) in cells.iter().enumerate() {
        for f in 0..N {
            let mut k: Vec<u32> = (0..N).filter(|&v| v != f).map(|v| c[v]).collect();
            k.sort_unstable();
            sites.entry(k).or_default().push((s, f));
        }
    }
    let mut out = Complex::new(cells.len());
    let mut keys: Vec<_> = sites.into_iter().collect();
    keys.sort();
    for (_, v) in keys {
        match v.as_slice() {
            [_] => {}
            [(s, f), (t, g)] => {
                let (cs, ct) = (&cells[*s], &cells[*t]);
                let p: [u8; N] = std::array::from_fn(|x| {
                    if x == *f {
                        *g as u8
                    } else {
                        ct.iter().position(|&y| y == cs[x]).unwrap() as u8
                    }
                });
                out.glue(*s, *f, *t, p)?;
            }
            _ => return Err(ComplexError::Precondition("facet shared by more than two cells".into())),
        }
    }
    Ok(out)
}
