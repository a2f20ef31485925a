//! Insertion/deletion edit distance via longest common subsequence.

use crate::bits::BitWord;

/// Length of the longest common subsequence, by the standard dynamic program
/// with a rolling row.
pub fn lcs_len(a: &BitWord, b: &BitWord) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let sa = short.as_bytes();
    let sb = long.as_bytes();
    let mut prev = vec![0usize; sa.len() + 1];
    let mut cur = vec![0usize; sa.len() + 1];
    for &cb in sb {
        for (i, &ca) in sa.iter().enumerate() {
            cur[i + 1] = if ca == cb {
                prev[i] + 1
            } else {
                prev[i + 1].max(cur[i])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[sa.len()]
}

/// Insdel-only edit distance: `|a| + |b| - 2 * LCS(a, b)`. Substitutions are
/// not counted as a primitive; callers model one as a deletion plus an
/// insertion.
pub fn edit_distance(a: &BitWord, b: &BitWord) -> usize {
    a.len() + b.len() - 2 * lcs_len(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn edit_distance_examples() {
        let s = w("100101");
        assert_eq!(edit_distance(&s, &s), 0);
        // LCS(0101, 001) = 3.
        assert_eq!(edit_distance(&w("0101"), &w("001")), 1);
        assert_eq!(edit_distance(&w(""), &w("101")), 3);
    }

    /// Exponential-time oracle: the longest subsequence of `a` that is also a
    /// subsequence of `b`, found by enumerating all subsequences of `a`.
    fn lcs_oracle(a: &BitWord, b: &BitWord) -> usize {
        fn is_subsequence(needle: &[u8], hay: &[u8]) -> bool {
            let mut it = hay.iter();
            needle.iter().all(|n| it.any(|h| h == n))
        }
        let bits = a.as_bytes();
        let mut best = 0;
        for mask in 0u32..(1 << bits.len()) {
            let sub: Vec<u8> = (0..bits.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| bits[i])
                .collect();
            if sub.len() > best && is_subsequence(&sub, b.as_bytes()) {
                best = sub.len();
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_exponential_oracle(a in proptest::collection::vec(any::<bool>(), 0..=8),
                                      b in proptest::collection::vec(any::<bool>(), 0..=10)) {
            let a = BitWord::from_bits(a);
            let b = BitWord::from_bits(b);
            let ed = edit_distance(&a, &b);
            prop_assert_eq!(ed, a.len() + b.len() - 2 * lcs_oracle(&a, &b));
        }

        #[test]
        fn symmetry_parity_triangle(a in proptest::collection::vec(any::<bool>(), 0..=30),
                                    b in proptest::collection::vec(any::<bool>(), 0..=30),
                                    c in proptest::collection::vec(any::<bool>(), 0..=30)) {
            let a = BitWord::from_bits(a);
            let b = BitWord::from_bits(b);
            let c = BitWord::from_bits(c);
            let ab = edit_distance(&a, &b);
            prop_assert_eq!(ab, edit_distance(&b, &a));
            prop_assert_eq!(ab % 2, (a.len() + b.len()) % 2);
            prop_assert!((ab == 0) == (a == b));
            prop_assert!(ab <= edit_distance(&a, &c) + edit_distance(&c, &b));
        }
    }
}
