use super::surface::SurfaceComplex;
use super::ComplexError;
use std::fmt;
use std::str::FromStr;

/// A word in the canonical curves of a genus-g surface: `(curve, ±1)` letters, curves numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DehnWord {
    pub genus: usize,
    pub letters: Vec<(usize, i8)>,
}

impl DehnWord {
    pub fn new(genus: usize, letters: Vec<(usize, i8)>) -> Result<Self, ComplexError> {
        if genus == 0 {
            return Err(ComplexError::Precondition("genus must be positive".into()));
        }
        let max = 3 * genus - 1;
        for &(c, s) in &letters {
            if c == 0 || c > max {
                return Err(ComplexError::Precondition(format!("curve {c} outside 1..={max} for genus {genus}")));
            }
            if s != 1 && s != -1 {
                return Err(ComplexError::Precondition(format!("letter sign {s} is not ±1")));
            }
        }
        Ok(DehnWord { genus, letters })
    }

    pub fn empty(genus: usize) -> Self {
        DehnWord { genus, letters: Vec::new() }
    }

    /// Parses whitespace- or comma-separated signed curve indices, e.g. `"1 -2 1"`.
    pub fn parse(genus: usize, text: &str) -> Result<Self, ComplexError> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v = i64::from_str(tok)
                .map_err(|_| ComplexError::Parse { line: 1, msg: format!("bad Dehn word letter `{tok}`") })?;
            if v == 0 {
                return Err(ComplexError::Parse { line: 1, msg: "curve index 0".into() });
            }
            letters.push((v.unsigned_abs() as usize, v.signum() as i8));
        }
        Self::new(genus, letters)
    }
}

impl fmt::Display for DehnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|&(c, s)| format!("{}", c as i64 * s as i64)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An annulus of triangles around a curve: position `p` is `(triangle, prev slot, next slot)`,
/// where the next slot of `p` is glued to the prev slot of `p+1` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    positions: Vec<(usize, u8, u8)>,
}

impl Strip {
    pub fn new(positions: Vec<(usize, u8, u8)>) -> Self {
        Strip { positions }
    }

    pub fn positions(&self) -> &[(usize, u8, u8)] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Builds a strip from a cyclic triangle list when each consecutive pair shares exactly one edge.
    pub fn from_triangles(s: &SurfaceComplex, tris: &[usize]) -> Result<Self, ComplexError> {
        let n = tris.len();
        let mut next = vec![0u8; n];
        let mut prev = vec![0u8; n];
        for p in 0..n {
            let (a, b) = (tris[p], tris[(p + 1) % n]);
            let shared: Vec<(u8, u8)> = (0..3)
                .filter_map(|k| s.partner(a, k).filter(|x| x.0 == b).map(|x| (k as u8, x.1)))
                .collect();
            if shared.len() != 1 {
                return Err(ComplexError::Precondition(format!("triangles {a} and {b} do not share exactly one edge")));
            }
            next[p] = shared[0].0;
            prev[(p + 1) % n] = shared[0].1;
        }
        Ok(Strip { positions: (0..n).map(|p| (tris[p], prev[p], next[p])).collect() })
    }

    /// Position type: true when the next slot follows the prev slot cyclically.
    fn kind(&self, p: usize) -> bool {
        let (_, pr, nx) = self.positions[p];
        nx == (pr + 1) % 3
    }

    pub fn validate(&self, s: &SurfaceComplex) -> Result<(), ComplexError> {
        let bad = |m: String| Err(ComplexError::Precondition(m));
        let n = self.len();
        if n == 0 || n % 2 == 1 {
            return bad(format!("strip has odd or zero length {n}"));
        }
        let mut seen = std::collections::HashSet::new();
        for p in 0..n {
            let (t, pr, nx) = self.positions[p];
            if t >= s.triangle_count() || pr > 2 || nx > 2 || pr == nx {
                return bad(format!("strip position {p} is malformed"));
            }
            if !seen.insert(t) {
                return bad(format!("triangle {t} repeats in the strip"));
            }
            let (t2, pr2, _) = self.positions[(p + 1) % n];
            if s.partner(t, nx as usize).map(|x| (x.0, x.1)) != Some((t2, pr2)) {
                return bad(format!("strip positions {p} and {} are not glued", (p + 1) % n));
            }
            if self.kind(p) == self.kind((p + 1) % n) {
                return bad("strip is not an annulus: triangle types do not alternate".into());
            }
        }
        Ok(())
    }
}

/// A Dehn twist realized by edge flips.
#[derive(Clone, Debug)]
pub struct DehnTwist {
    /// The twisted surface relabeled back onto the input; equal to the input.
    pub surface: SurfaceComplex,
    /// Flipped edges as `(triangle, slot)`, each valid on the surface produced by the previous flips.
    pub flips: Vec<(usize, u8)>,
    /// Isomorphism from the flipped surface back to the input: `(triangle, local perm)`.
    pub relabel: Vec<(usize, [u8; 3])>,
}

/// Four rounds of `k` flips on a strip of `2k` triangles. Each round flips the crossing
/// edge of every position pair whose types read (true, false) when `forward`, else (false, true).
fn flip_rounds(s: &SurfaceComplex, strip: &Strip, forward: bool) -> Result<(SurfaceComplex, Vec<(usize, u8)>, Strip), ComplexError> {
    let n = strip.len();
    let mut cur = strip.clone();
    let mut surf = s.clone();
    let mut flips = Vec::with_capacity(2 * n);
    for _round in 0..4 {
        let starts: Vec<usize> = (0..n).filter(|&p| cur.kind(p) == forward && cur.kind((p + 1) % n) != forward).collect();
        debug_assert_eq!(starts.len(), n / 2);
        for p in starts {
            let q = (p + 1) % n;
            let (t, pr, nx) = cur.positions[p];
            let (u, _, unx) = cur.positions[q];
            let (next_surf, r) = surf.pachner22_detailed(t, nx as usize)?;
            flips.push((t, nx));
            let (ka, kb) = (nx as u32, 3u32);
            // Diagonal slot of a new triangle: opposite its label that is not A or B.
            let diag = |j: usize| r.new_labels[j].iter().position(|&x| x != ka && x != kb).unwrap() as u8;
            let (x, xs) = r.facet_map[&(t, pr)];
            let (y, ys) = r.facet_map[&(u, unx)];
            let jx = r.new_index.iter().position(|&i| i == x).unwrap();
            let jy = r.new_index.iter().position(|&i| i == y).unwrap();
            cur.positions[p] = (x, xs, diag(jx));
            cur.positions[q] = (y, diag(jy), ys);
            surf = next_surf;
        }
    }
    Ok((surf, flips, cur))
}

fn back_onto(surf: &SurfaceComplex, s: &SurfaceComplex) -> Result<Vec<(usize, [u8; 3])>, ComplexError> {
    surf.complex()
        .isomorphism(s.complex(), true)
        .ok_or_else(|| ComplexError::Precondition("flipped surface is not isomorphic to the input".into()))
}

/// Twists along `strip` with `4k` flips, where `2k` is the strip length.
///
/// Direction +1 runs four forward rounds. Direction −1 runs the exact reverse of that
/// sequence: the forward twist's final strip is carried back onto the input by the
/// isomorphism, and the rounds flip the opposite pairs, undoing it step by step.
pub fn dehn_twist(s: &SurfaceComplex, strip: &Strip, direction: i8) -> Result<DehnTwist, ComplexError> {
    strip.validate(s)?;
    let (surf, flips) = if direction > 0 {
        let (surf, flips, _) = flip_rounds(s, strip, true)?;
        (surf, flips)
    } else {
        let (fwd, _, end) = flip_rounds(s, strip, true)?;
        let iso = back_onto(&fwd, s)?;
        let carried = Strip::new(
            end.positions
                .iter()
                .map(|&(t, pr, nx)| (iso[t].0, iso[t].1[pr as usize], iso[t].1[nx as usize]))
                .collect(),
        );
        carried.validate(s)?;
        let (surf, flips, _) = flip_rounds(s, &carried, false)?;
        (surf, flips)
    };
    let iso = back_onto(&surf, s)?;
    let idx: Vec<usize> = iso.iter().map(|x| x.0).collect();
    let perms: Vec<[u8; 3]> = iso.iter().map(|x| x.1).collect();
    let back = SurfaceComplex::new(surf.complex().relabel(&idx, &perms))?;
    debug_assert_eq!(back.complex(), s.complex());
    Ok(DehnTwist { surface: back, flips, relabel: iso })
}
