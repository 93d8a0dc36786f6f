//! Finite groups as multiplication tables.

use rayon::prelude::*;
use std::fmt::Write as _;

pub const DEFAULT_HOM_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown group `{0}`")]
    UnknownName(String),
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error("element 0 is not an identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    MissingInverse(usize),
    #[error("non-associative triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("irrep dimensions {0:?} do not match the group")]
    BadIrrepData(Vec<u32>),
    #[error("enumeration needs {needed} tuples, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
}

/// A finite group with elements `0..order`; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<u32>,
    inverse: Vec<usize>,
    irrep_dims: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Validates a row-major multiplication table.
    pub fn from_table(name: &str, order: usize, mult: Vec<u32>) -> Result<Self, GroupError> {
        if order == 0 || mult.len() != order * order {
            return Err(GroupError::Parse { line: 0, msg: format!("table must have {} entries", order * order) });
        }
        if let Some(i) = mult.iter().position(|&x| x as usize >= order) {
            return Err(GroupError::OutOfRange(i));
        }
        let m = |a: usize, b: usize| mult[a * order + b] as usize;
        if (0..order).any(|a| m(0, a) != a || m(a, 0) != a) {
            return Err(GroupError::NoIdentity);
        }
        let mut inverse = vec![0; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order).find(|&b| m(a, b) == 0 && m(b, a) == 0).ok_or(GroupError::MissingInverse(a))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), order, mult, inverse, irrep_dims: None })
    }

    /// `cyclic:n`, `dihedral:n` (order 2n), `symmetric:n` (n ≤ 5) or `quaternion8`.
    pub fn named(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k, Some(a.parse::<usize>().map_err(|_| unknown())?)),
            None => (name, None),
        };
        let (table, order, dims) = match (kind, arg) {
            ("cyclic", Some(n)) if n >= 1 => {
                (table_from(n, |a, b| (a + b) % n), n, vec![1; n])
            }
            ("dihedral", Some(n)) if n >= 1 => {
                // r^a s^b at index a + n·b; s r = r⁻¹ s.
                let mul = |x: usize, y: usize| {
                    let (a, b, c, d) = (x % n, x / n, y % n, y / n);
                    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    rot + n * ((b + d) % 2)
                };
                let ones = if n % 2 == 0 { 4 } else { 2 };
                let mut dims = vec![1; ones];
                dims.extend(std::iter::repeat(2).take((2 * n - ones) / 4));
                (table_from(2 * n, mul), 2 * n, dims)
            }
            ("symmetric", Some(n)) if (1..=5).contains(&n) => {
                let perms = permutations(n);
                let index = |p: &Vec<u8>| perms.binary_search(p).unwrap();
                // (a·b)(x) = a(b(x)).
                let mul = |x: usize, y: usize| {
                    let c: Vec<u8> = perms[y].iter().map(|&v| perms[x][v as usize]).collect();
                    index(&c)
                };
                let dims = match n {
                    1 => vec![1],
                    2 => vec![1, 1],
                    3 => vec![1, 1, 2],
                    4 => vec![1, 1, 2, 3, 3],
                    _ => vec![1, 1, 4, 4, 5, 5, 6],
                };
                (table_from(perms.len(), mul), perms.len(), dims)
            }
            ("quaternion8", None) => {
                // Index 2u + s is (−1)^s times the unit u ∈ {1, i, j, k}.
                const UNIT: [[(usize, usize); 4]; 4] =
                    [[(0, 0), (1, 0), (2, 0), (3, 0)], [(1, 0), (0, 1), (3, 0), (2, 1)], [(2, 0), (3, 1), (0, 1), (1, 0)], [(3, 0), (2, 0), (1, 1), (0, 1)]];
                let mul = |x: usize, y: usize| {
                    let (u, s) = UNIT[x / 2][y / 2];
                    2 * u + (s + x % 2 + y % 2) % 2
                };
                (table_from(8, mul), 8, vec![1, 1, 1, 1, 2])
            }
            _ => return Err(unknown()),
        };
        let mut g = Self::from_table(name, order, table)?;
        g.set_irrep_dims(dims)?;
        Ok(g)
    }

    /// Parses `group <order>` followed by the table rows; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: &str| GroupError::Parse { line, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| err(1, "empty group file"))?;
        let order = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["group", n] => n.parse::<usize>().map_err(|_| err(hl, "bad order"))?,
            _ => return Err(err(hl, "expected `group <order>`")),
        };
        let mut table = Vec::with_capacity(order * order);
        let mut rows = 0;
        for (ln, line) in lines {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| err(ln, &format!("bad entry `{t}`"))))
                .collect::<Result<_, _>>()?;
            if row.len() != order {
                return Err(err(ln, &format!("row has {} entries, expected {order}", row.len())));
            }
            table.extend(row);
            rows += 1;
        }
        if rows != order {
            return Err(err(0, &format!("{rows} rows, expected {order}")));
        }
        Self::from_table("table", order, table)
    }

    pub fn to_table_string(&self) -> String {
        let mut s = format!("group {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    /// Attaches irrep dimensions after checking Σ d² = |G| and the class count.
    pub fn set_irrep_dims(&mut self, dims: Vec<u32>) -> Result<(), GroupError> {
        let sq: u64 = dims.iter().map(|&d| d as u64 * d as u64).sum();
        if sq != self.order as u64 || dims.len() != self.conjugacy_class_count() {
            return Err(GroupError::BadIrrepData(dims));
        }
        self.irrep_dims = Some(dims);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn irrep_dims(&self) -> Option<&[u32]> {
        self.irrep_dims.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn chi_reg(&self, x: usize) -> u64 {
        if x == 0 {
            self.order as u64
        } else {
            0
        }
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn centralizer_order(&self, x: usize) -> usize {
        (0..self.order).filter(|&g| self.mul(g, x) == self.mul(x, g)).count()
    }

    pub fn conjugacy_class_count(&self) -> usize {
        let mut seen = vec![false; self.order];
        let mut classes = 0;
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            classes += 1;
            for g in 0..self.order {
                seen[self.mul(self.mul(g, x), self.inv(g))] = true;
            }
        }
        classes
    }

    /// Counts 2g-tuples (a₁, b₁, …, a_g, b_g) with Π [aᵢ, bᵢ] = 1 by a full scan.
    pub fn hom_count(&self, genus: usize, cap: u64) -> Result<u64, GroupError> {
        if genus == 0 {
            return Ok(1);
        }
        let needed = (self.order as u128).checked_pow(2 * genus as u32).unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(GroupError::BudgetExceeded { needed, cap });
        }
        let n = self.order;
        Ok((0..n)
            .into_par_iter()
            .map(|a| (0..n).map(|b| self.count_from(self.commutator(a, b), genus - 1)).sum::<u64>())
            .sum())
    }

    fn count_from(&self, acc: usize, left: usize) -> u64 {
        if left == 0 {
            return (acc == 0) as u64;
        }
        let mut total = 0;
        for a in 0..self.order {
            for b in 0..self.order {
                total += self.count_from(self.mul(acc, self.commutator(a, b)), left - 1);
            }
        }
        total
    }
}

fn table_from(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<u32> {
    (0..n * n).map(|i| mul(i / n, i % n) as u32).collect()
}

/// All permutations of 0..n in lexicographic order, so the identity comes first.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        for (s, o, k) in [("cyclic:4", 4, 4), ("dihedral:4", 8, 5), ("dihedral:5", 10, 4), ("symmetric:3", 6, 3), ("symmetric:4", 24, 5), ("symmetric:5", 120, 7), ("quaternion8", 8, 5)] {
            let g = FiniteGroup::named(s).unwrap();
            assert_eq!(g.order(), o, "{s}");
            assert_eq!(g.conjugacy_class_count(), k, "{s}");
        }
        assert!(FiniteGroup::named("quaternion8").unwrap().mul(2, 4) == 6);
        assert!(!FiniteGroup::named("quaternion8").unwrap().is_abelian());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let g = FiniteGroup::named("symmetric:3").unwrap();
        let h = FiniteGroup::parse(&g.to_table_string()).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.conjugacy_class_count(), 3);
        let bad = "group 3\n0 1 2\n1 0 2\n2 2 0\n";
        assert!(matches!(FiniteGroup::parse(bad), Err(GroupError::NonAssociative(..)) | Err(GroupError::MissingInverse(_))));
        assert!(matches!(FiniteGroup::parse("group 2\n0 1\n"), Err(GroupError::Parse { .. })));
        assert!(matches!(FiniteGroup::parse("grp 2\n"), Err(GroupError::Parse { line: 1, .. })));
    }

    #[test]
    fn hom_counts() {
        let s3 = FiniteGroup::named("symmetric:3").unwrap();
        assert_eq!(s3.hom_count(0, DEFAULT_HOM_CAP), Ok(1));
        assert_eq!(s3.hom_count(1, DEFAULT_HOM_CAP), Ok(18));
        assert_eq!(s3.hom_count(2, DEFAULT_HOM_CAP), Ok(486));
        assert!(matches!(s3.hom_count(2, 100), Err(GroupError::BudgetExceeded { .. })));
        let c4 = FiniteGroup::named("cyclic:4").unwrap();
        assert_eq!(c4.hom_count(2, DEFAULT_HOM_CAP), Ok(4u64.pow(4)));
    }

    #[test]
    fn bad_dims_rejected() {
        let mut g = FiniteGroup::named("cyclic:3").unwrap();
        assert!(g.set_irrep_dims(vec![1, 1]).is_err());
        assert!(g.set_irrep_dims(vec![1, 1, 1]).is_ok());
    }
}
