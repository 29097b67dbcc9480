//! Shuffle permutations and their signatures.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// ±1, the signature of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A (n₁,…,n_k)-shuffle σ stored 0-based: `perm[p] = σ(p+1) − 1`.
///
/// Block b occupies slots `offset_b..offset_b + n_b` and σ is increasing on each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedShuffle {
    pub perm: Vec<usize>,
    pub sign: Sign,
}

impl SignedShuffle {
    /// Images of block `b`, which are increasing.
    pub fn block<'a>(&'a self, sizes: &[usize], b: usize) -> &'a [usize] {
        let start: usize = sizes[..b].iter().sum();
        &self.perm[start..start + sizes[b]]
    }
}

/// Number of inversions of a sequence of distinct integers.
pub fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// Sorts a tuple of indices. `None` when an index repeats; otherwise the sign of the sort.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, Sign)> {
    let mut v = indices.to_vec();
    let mut swaps = 0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, Sign::from_parity(swaps)))
}

fn generate(sizes: &[usize]) -> Vec<SignedShuffle> {
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(total);
    let mut remaining = sizes.to_vec();
    fn rec(labels: &mut Vec<usize>, remaining: &mut [usize], total: usize, sizes: &[usize], out: &mut Vec<SignedShuffle>) {
        if labels.len() == total {
            let mut perm = Vec::with_capacity(total);
            for b in 0..sizes.len() {
                perm.extend(labels.iter().enumerate().filter(|(_, &l)| l == b).map(|(pos, _)| pos));
            }
            let sign = Sign::from_parity(inversions(&perm));
            out.push(SignedShuffle { perm, sign });
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                labels.push(b);
                rec(labels, remaining, total, sizes, out);
                labels.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut labels, &mut remaining, total, sizes, &mut out);
    out
}

type ShuffleCache = Mutex<HashMap<Vec<usize>, Arc<Vec<SignedShuffle>>>>;

/// Every (n₁,…,n_k)-shuffle exactly once, with its signature. Results are memoized.
pub fn shuffles(sizes: &[usize]) -> Arc<Vec<SignedShuffle>> {
    static CACHE: OnceLock<ShuffleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("shuffle cache poisoned").get(sizes) {
        return hit.clone();
    }
    let fresh = Arc::new(generate(sizes));
    cache.lock().expect("shuffle cache poisoned").entry(sizes.to_vec()).or_insert(fresh).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(sizes: &[usize]) -> Vec<(Vec<usize>, Sign)> {
        let n: usize = sizes.iter().sum();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut ok = true;
            let mut start = 0;
            for &s in sizes {
                if perm[start..start + s].windows(2).any(|w| w[0] > w[1]) {
                    ok = false;
                }
                start += s;
            }
            if ok {
                let mut swaps = 0;
                let mut p = perm.clone();
                for i in 0..n {
                    while p[i] != i {
                        let t = p[i];
                        p.swap(i, t);
                        swaps += 1;
                    }
                }
                out.push((perm.clone(), Sign::from_parity(swaps)));
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        out
    }

    #[test]
    fn small_cases() {
        let s11 = shuffles(&[1, 1]);
        assert_eq!(s11.len(), 2);
        assert_eq!(s11[0], SignedShuffle { perm: vec![0, 1], sign: Sign::Plus });
        assert_eq!(s11[1], SignedShuffle { perm: vec![1, 0], sign: Sign::Minus });

        let signs: Vec<Sign> = shuffles(&[2, 1]).iter().map(|s| s.sign).collect();
        assert_eq!(signs, vec![Sign::Plus, Sign::Minus, Sign::Plus]);

        let s30 = shuffles(&[3, 0]);
        assert_eq!(s30.len(), 1);
        assert_eq!(s30[0].perm, vec![0, 1, 2]);
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], Sign::Plus)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], Sign::Minus)));
        assert_eq!(sort_with_sign(&[1, 3, 1]), None);
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    proptest! {
        #[test]
        fn matches_filtered_symmetric_group(sizes in proptest::collection::vec(0usize..3, 1..4)) {
            prop_assume!(sizes.iter().sum::<usize>() <= 6);
            let mut ours: Vec<(Vec<usize>, Sign)> = shuffles(&sizes).iter().map(|s| (s.perm.clone(), s.sign)).collect();
            let mut theirs = brute_force(&sizes);
            ours.sort_by(|a, b| a.0.cmp(&b.0));
            theirs.sort_by(|a, b| a.0.cmp(&b.0));
            prop_assert_eq!(ours, theirs);
        }

        #[test]
        fn count_and_partition(m in 1usize..4, n in 1usize..4) {
            let all = shuffles(&[m, n]);
            prop_assert_eq!(all.len(), binom(m + n, m));
            // σ(1) = 1 gives a copy of Sh(m−1,n); σ(m+1) = 1 gives a copy of Sh(m,n−1) with sign (−1)^m.
            let first: Vec<_> = all.iter().filter(|s| s.perm[0] == 0).collect();
            let second: Vec<_> = all.iter().filter(|s| s.perm[m] == 0).collect();
            prop_assert_eq!(first.len() + second.len(), all.len());
            let sub_a = shuffles(&[m - 1, n]);
            for s in &first {
                let rest: Vec<usize> = s.perm[1..].iter().map(|p| p - 1).collect();
                let hit = sub_a.iter().find(|t| t.perm == rest).unwrap();
                prop_assert_eq!(hit.sign, s.sign);
            }
            let sub_b = shuffles(&[m, n - 1]);
            for s in &second {
                let rest: Vec<usize> = s.perm.iter().enumerate().filter(|(i, _)| *i != m).map(|(_, p)| p - 1).collect();
                let hit = sub_b.iter().find(|t| t.perm == rest).unwrap();
                prop_assert_eq!(hit.sign * Sign::from_parity(m), s.sign);
            }
        }
    }
}
