//! Special multisets: the losing fingerprint of the triangle part of G4.
//!
//! A 3-multiset is `(k, l, m, i)`-special when it equals
//! `{k+1+(m+1)l, k+i+(m+1)l, k+m+2-i+(m+1)l}` with `1 <= i <= m+1` and
//! `m(m+1)/2 <= k <= m(m+3)/2`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpecialWitness {
    pub k: u64,
    pub l: u64,
    pub m: u64,
    pub i: u64,
}

impl SpecialWitness {
    /// The multiset this witness describes, ascending.
    pub fn expand(&self) -> [u64; 3] {
        let base = self.k + (self.m + 1) * self.l;
        let mut out = [base + 1, base + self.i, base + self.m + 2 - self.i];
        out.sort_unstable();
        out
    }

    /// Whether `(k, m, i)` satisfies the range condition.
    pub fn in_range(&self) -> bool {
        let (lo, hi) = k_range(self.m);
        self.m >= 1 && self.k >= 1 && (1..=self.m + 1).contains(&self.i) && (lo..=hi).contains(&self.k)
    }
}

/// The admissible `k` for a given `m`: `[m(m+1)/2, m(m+3)/2]`. These ranges partition the
/// positive integers.
pub fn k_range(m: u64) -> (u64, u64) {
    (m * (m + 1) / 2, m * (m + 3) / 2)
}

fn sorted(multiset: [u32; 3]) -> [u64; 3] {
    let mut s = multiset.map(u64::from);
    s.sort_unstable();
    s
}

/// Inequality test: with `a <= b <= c` not all equal, special iff `2a > (b+c-2a)(b+c-2a+1)`.
pub fn is_special(multiset: [u32; 3]) -> bool {
    let [a, b, c] = sorted(multiset);
    if a == c {
        return false;
    }
    let m = b + c - 2 * a;
    2 * a > m * (m + 1)
}

/// Builds the unique witness, if any. `m` and `i` are forced by the sorted elements and `k`
/// is the one value in `k_range(m)` congruent to `a - 1` modulo `m + 1`.
pub fn special_witness(multiset: [u32; 3]) -> Option<SpecialWitness> {
    let [a, b, c] = sorted(multiset);
    let m = b + c - 2 * a;
    if m < 1 || a == 0 {
        return None;
    }
    let (lo, _) = k_range(m);
    let k = lo + (a - 1 + (m + 1) - lo % (m + 1)) % (m + 1);
    finish(a, b, m, k)
}

/// Like [`special_witness`] with `k` prescribed (the weight on the disjoint edge of G4).
pub fn is_k_special(k: u64, multiset: [u32; 3]) -> Option<SpecialWitness> {
    let [a, b, c] = sorted(multiset);
    let m = b + c - 2 * a;
    let (lo, hi) = k_range(m);
    if m < 1 || a == 0 || !(lo..=hi).contains(&k) {
        return None;
    }
    finish(a, b, m, k)
}

fn finish(a: u64, b: u64, m: u64, k: u64) -> Option<SpecialWitness> {
    if k == 0 || a < k + 1 || !(a - 1 - k).is_multiple_of(m + 1) {
        return None;
    }
    let witness = SpecialWitness {
        k,
        l: (a - 1 - k) / (m + 1),
        m,
        i: b - a + 1,
    };
    debug_assert!(witness.in_range());
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(is_special([2, 2, 3]));
        assert!(is_special([9, 7, 8]));
        assert!(!is_special([1, 1, 1]));
        assert!(!is_special([3, 4, 5]));

        assert_eq!(special_witness([2, 2, 3]), Some(SpecialWitness { k: 1, l: 0, m: 1, i: 1 }));
        assert_eq!(special_witness([7, 8, 9]), Some(SpecialWitness { k: 6, l: 0, m: 3, i: 2 }));
        assert_eq!(special_witness([1, 1, 1]), None);
        assert_eq!(special_witness([3, 4, 5]), None);
    }

    #[test]
    fn prescribed_k() {
        assert_eq!(is_k_special(1, [2, 2, 3]), Some(SpecialWitness { k: 1, l: 0, m: 1, i: 1 }));
        assert_eq!(is_k_special(2, [2, 2, 3]), None);
        assert_eq!(is_k_special(6, [7, 8, 9]), Some(SpecialWitness { k: 6, l: 0, m: 3, i: 2 }));
        assert_eq!(is_k_special(7, [7, 8, 9]), None);
    }

    #[test]
    fn ranges_partition_positive_integers() {
        let mut next = 1;
        for m in 1..50 {
            let (lo, hi) = k_range(m);
            assert_eq!(lo, next);
            assert_eq!(hi - lo, m);
            next = hi + 1;
        }
    }

    #[test]
    fn witness_expands_to_input() {
        for a in 1..=20u32 {
            for b in a..=20 {
                for c in b..=20 {
                    if let Some(w) = special_witness([a, b, c]) {
                        assert_eq!(w.expand(), [a, b, c].map(u64::from));
                        assert!(w.in_range());
                        assert_eq!(is_k_special(w.k, [c, a, b]), Some(w));
                    }
                }
            }
        }
    }
}
