//! Small permutations of local vertex indices, stored as `p[i] = image of i`.

pub fn identity<const N: usize>() -> [u8; N] {
    std::array::from_fn(|i| i as u8)
}

pub fn inverse<const N: usize>(p: &[u8; N]) -> [u8; N] {
    let mut q = [0u8; N];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

/// `a ∘ b`: apply `b` first.
pub fn compose<const N: usize>(a: &[u8; N], b: &[u8; N]) -> [u8; N] {
    std::array::from_fn(|i| a[b[i] as usize])
}

pub fn is_perm<const N: usize>(p: &[u8; N]) -> bool {
    let mut seen = [false; N];
    for &x in p {
        if x as usize >= N || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

pub fn is_odd<const N: usize>(p: &[u8; N]) -> bool {
    sequence_is_odd(p)
}

/// Parity of the permutation that sorts a sequence of distinct keys.
pub fn sequence_is_odd<T: Ord>(s: &[T]) -> bool {
    let mut inv = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// All permutations of `0..N` in lexicographic order.
pub fn all<const N: usize>() -> Vec<[u8; N]> {
    let mut out = Vec::new();
    let mut cur = identity::<N>();
    loop {
        out.push(cur);
        // next lexicographic permutation
        let Some(i) = (0..N.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..N).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Rank in lexicographic order.
pub fn rank<const N: usize>(p: &[u8; N]) -> u32 {
    let mut r = 0u32;
    for i in 0..N {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count() as u32;
        r = r * (N - i) as u32 + smaller;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_rank_agree() {
        let ps = all::<4>();
        assert_eq!(ps.len(), 24);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(rank(p) as usize, i);
            assert_eq!(compose(p, &inverse(p)), identity());
        }
        assert_eq!(ps.iter().filter(|p| is_odd(*p)).count(), 12);
    }
}
