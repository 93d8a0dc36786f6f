//! Line-based text formats.
//!
//! Surfaces: `surface <n>` then `tri <id>: <e0> <e1> <e2>`, each entry `-` or `<tid>.<slot><+|->`.
//! 3-manifolds: `tri3 <n>` then `tet <id>: <f0> <f1> <f2> <f3>`, each entry `-` or `<tid>(<p0><p1><p2><p3>)`.
//! `#` starts a comment. Serialization emits no comments, one line per simplex in id order.

use super::perm;
use super::simplicial::{Complex, Gluing};
use super::surface::SurfaceComplex;
use super::tri3::Triangulation3;
use super::ComplexError;
use std::fmt::Write;

fn perr(line: usize, msg: impl Into<String>) -> ComplexError {
    ComplexError::Parse { line, msg: msg.into() }
}

/// Non-empty content lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses the header and per-simplex rows, checking ids.
fn rows<'a>(text: &'a str, header: &str, row: &str, width: usize) -> Result<(Vec<Vec<&'a str>>, Vec<usize>), ComplexError> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut it = h.split_whitespace();
    if it.next() != Some(header) {
        return Err(perr(hl, format!("expected header `{header} <n>`")));
    }
    let n: usize = it
        .next()
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| perr(hl, "missing or invalid simplex count"))?;
    if it.next().is_some() {
        return Err(perr(hl, "trailing text after header"));
    }
    let mut out: Vec<Option<Vec<&str>>> = vec![None; n];
    let mut line_of = vec![0; n];
    for (ln, l) in lines {
        let (head, rest) = l.split_once(':').ok_or_else(|| perr(ln, "expected `:`"))?;
        let mut h = head.split_whitespace();
        if h.next() != Some(row) {
            return Err(perr(ln, format!("expected `{row} <id>:`")));
        }
        let id: usize = h.next().and_then(|x| x.parse().ok()).ok_or_else(|| perr(ln, "invalid id"))?;
        if h.next().is_some() {
            return Err(perr(ln, "unexpected text before `:`"));
        }
        if id >= n {
            return Err(perr(ln, format!("id {id} out of range for {n} simplices")));
        }
        if out[id].is_some() {
            return Err(perr(ln, format!("duplicate id {id}")));
        }
        let entries: Vec<&str> = rest.split_whitespace().collect();
        if entries.len() != width {
            return Err(perr(ln, format!("expected {width} entries, found {}", entries.len())));
        }
        out[id] = Some(entries);
        line_of[id] = ln;
    }
    if let Some(missing) = out.iter().position(Option::is_none) {
        return Err(perr(hl, format!("{row} {missing} is missing")));
    }
    Ok((out.into_iter().map(Option::unwrap).collect(), line_of))
}

/// Attaches line numbers to structural errors found after parsing.
fn locate(e: ComplexError, line_of: &[usize]) -> ComplexError {
    match e {
        ComplexError::Dangling { simplex, facet, partner } => {
            perr(line_of[simplex], format!("slot {facet} refers to missing simplex {partner}"))
        }
        ComplexError::NotInvolution { simplex, facet } => {
            perr(line_of[simplex], format!("slot {facet}: partner does not point back"))
        }
        ComplexError::SelfGluing { simplex, facet } => perr(line_of[simplex], format!("slot {facet} is glued to itself")),
        other => other,
    }
}

pub fn parse_surface(text: &str) -> Result<SurfaceComplex, ComplexError> {
    let (rows, line_of) = rows(text, "surface", "tri", 3)?;
    let n = rows.len();
    let mut flags = Vec::with_capacity(n);
    for (t, r) in rows.iter().enumerate() {
        let ln = line_of[t];
        let mut row = [None; 3];
        for (k, e) in r.iter().enumerate() {
            if *e == "-" {
                continue;
            }
            let bad = || perr(ln, format!("malformed entry `{e}`"));
            let (body, compat) = match e.as_bytes().last() {
                Some(b'+') => (&e[..e.len() - 1], true),
                Some(b'-') => (&e[..e.len() - 1], false),
                _ => return Err(bad()),
            };
            let (tid, slot) = body.split_once('.').ok_or_else(bad)?;
            let tid: usize = tid.parse().map_err(|_| bad())?;
            let slot: u8 = slot.parse().map_err(|_| bad())?;
            if slot > 2 {
                return Err(perr(ln, format!("slot {slot} out of range")));
            }
            if tid >= n {
                return Err(perr(ln, format!("dangling reference to triangle {tid}")));
            }
            row[k] = Some((tid, slot, compat));
        }
        flags.push(row);
    }
    SurfaceComplex::from_flags(&flags).map_err(|e| locate(e, &line_of))
}

pub fn serialize_surface(s: &SurfaceComplex) -> String {
    let mut out = format!("surface {}\n", s.triangle_count());
    for t in 0..s.triangle_count() {
        write!(out, "tri {t}:").unwrap();
        for k in 0..3 {
            match s.partner(t, k) {
                None => out.push_str(" -"),
                Some((u, k2, compat)) => write!(out, " {u}.{k2}{}", if compat { '+' } else { '-' }).unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_tri3(text: &str) -> Result<Triangulation3, ComplexError> {
    let (rows, line_of) = rows(text, "tri3", "tet", 4)?;
    let n = rows.len();
    let mut c = Complex::<4>::new(n);
    for (t, r) in rows.iter().enumerate() {
        let ln = line_of[t];
        for (f, e) in r.iter().enumerate() {
            if *e == "-" {
                continue;
            }
            let bad = || perr(ln, format!("malformed entry `{e}`"));
            let (tid, rest) = e.split_once('(').ok_or_else(bad)?;
            let digits = rest.strip_suffix(')').ok_or_else(bad)?;
            let tid: usize = tid.parse().map_err(|_| bad())?;
            if digits.len() != 4 || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(perr(ln, format!("malformed gluing permutation `{e}`")));
            }
            let p: [u8; 4] = std::array::from_fn(|i| digits.as_bytes()[i] - b'0');
            if !perm::is_perm(&p) {
                return Err(perr(ln, format!("malformed gluing permutation `{e}`")));
            }
            if tid >= n {
                return Err(perr(ln, format!("dangling reference to tetrahedron {tid}")));
            }
            c.set_raw(t, f, Some(Gluing { simplex: tid, perm: p }));
        }
    }
    Triangulation3::new(c).map_err(|e| locate(e, &line_of))
}

pub fn serialize_tri3(m: &Triangulation3) -> String {
    let c = m.complex();
    let mut out = format!("tri3 {}\n", c.len());
    for t in 0..c.len() {
        write!(out, "tet {t}:").unwrap();
        for f in 0..4 {
            match c.gluing(t, f) {
                None => out.push_str(" -"),
                Some(g) => {
                    let [a, b, x, y] = g.perm;
                    write!(out, " {}({a}{b}{x}{y})", g.simplex).unwrap();
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "surface 2\ntri 0: 1.0+ 1.1+ 1.2+\ntri 1: 0.0+ 0.1+ 0.2+\n";

    #[test]
    fn torus_round_trip() {
        let s = parse_surface(TORUS).unwrap();
        assert_eq!((s.triangle_count(), s.edge_count(), s.vertex_count()), (2, 3, 1));
        assert_eq!(serialize_surface(&s), TORUS);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a torus\nsurface 2\n\ntri 1: 0.0+ 0.1+ 0.2+   # second\ntri 0: 1.0+ 1.1+ 1.2+\n";
        assert_eq!(serialize_surface(&parse_surface(text).unwrap()), TORUS);
    }

    #[test]
    fn unglued_slot_gives_boundary() {
        let s = parse_surface("surface 2\ntri 0: 1.0+ 1.1+ -\ntri 1: 0.0+ 0.1+ -\n").unwrap();
        assert!(!s.is_closed());
    }

    #[test]
    fn dangling_reference() {
        let e = parse_surface("surface 2\ntri 0: 7.0+ 1.1+ 1.2+\ntri 1: 0.0+ 0.1+ 0.2+\n").unwrap_err();
        assert!(matches!(e, ComplexError::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn non_involutive_reports_line() {
        let e = parse_surface("surface 2\ntri 0: 1.0+ 1.1+ 1.2+\ntri 1: 0.0+ 0.2+ 0.1+\n").unwrap_err();
        assert!(matches!(e, ComplexError::Parse { .. }), "{e}");
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_surface("surface 1\ntri 0 1.0+ - -\n").is_err());
        assert!(parse_surface("surface 1\ntri 0: 0.4+ - -\n").is_err());
        assert!(parse_tri3("tri3 1\ntet 0: 0(0123) - - -\n").is_err());
        assert!(parse_tri3("tri3 2\ntet 0: 1(0023) - - -\ntet 1: - - - -\n").is_err());
    }

    #[test]
    fn tri3_round_trip() {
        let text = "tri3 2\ntet 0: 1(0123) 1(0123) 1(0123) 1(0123)\ntet 1: 0(0123) 0(0123) 0(0123) 0(0123)\n";
        let m = parse_tri3(text).unwrap();
        assert_eq!(serialize_tri3(&m), text);
        assert_eq!(m, Triangulation3::two_tet_sphere());
        let five = Triangulation3::five_tet_sphere();
        assert_eq!(parse_tri3(&serialize_tri3(&five)).unwrap(), five);
    }
}
