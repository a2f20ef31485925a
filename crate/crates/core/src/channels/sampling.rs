//! Shared sampling primitives for the deletion processes.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Sorted 1-based positions of an i.i.d. Bernoulli(p) subset of
/// `[1, universe]`, sampled with geometric jumps so the cost is proportional
/// to the number of deletions rather than the universe.
pub fn sample_iid_subset(universe: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<u32> {
    assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    if p <= 0.0 || universe == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (1..=universe as u32).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut out = Vec::with_capacity((universe as f64 * p * 1.2) as usize + 4);
    let mut pos = 0u64;
    loop {
        // Gap to the next selected position is geometric on {1, 2, ...}.
        let u = 1.0 - rng.random::<f64>(); // in (0, 1]
        let jump = (u.ln() / log_q).floor() as u64 + 1;
        pos = pos.saturating_add(jump);
        if pos > universe as u64 {
            return out;
        }
        out.push(pos as u32);
    }
}

/// The `count` smallest positions of `[1, universe]` not present in the
/// sorted list `deleted`. Fewer may be returned if the survivors run out.
pub fn first_survivors(deleted: &[u32], universe: usize, count: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    let mut iter = deleted.iter().peekable();
    let mut pos = 1u32;
    while out.len() < count && pos as usize <= universe {
        if iter.peek().is_some_and(|&&d| d == pos) {
            iter.next();
        } else {
            out.push(pos);
        }
        pos += 1;
    }
    out
}

/// Merge two sorted position lists, deduplicating.
pub fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;

    #[test]
    fn iid_subset_edge_rates() {
        let mut rng = seed_rng(0);
        assert!(sample_iid_subset(100, 0.0, &mut rng).is_empty());
        assert_eq!(sample_iid_subset(5, 1.0, &mut rng), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn iid_subset_matches_bernoulli_rate() {
        let n = 100_000;
        let p = 0.1;
        let mut rng = seed_rng(42);
        let s = sample_iid_subset(n, p, &mut rng);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            ((s.len() as f64) - n as f64 * p).abs() < 4.0 * sigma,
            "count {} too far from {}",
            s.len(),
            n as f64 * p
        );
    }

    #[test]
    fn iid_subset_positions_look_uniform() {
        // Mean position of an i.i.d. subset is the middle of the universe.
        let n = 50_000usize;
        let mut rng = seed_rng(7);
        let s = sample_iid_subset(n, 0.2, &mut rng);
        let mean = s.iter().map(|&p| f64::from(p)).sum::<f64>() / s.len() as f64;
        assert!((mean - n as f64 / 2.0).abs() < n as f64 * 0.01);
    }

    #[test]
    fn first_survivors_skips_deleted() {
        assert_eq!(first_survivors(&[1, 3], 6, 3), vec![2, 4, 5]);
        assert_eq!(first_survivors(&[], 3, 5), vec![1, 2, 3]);
        assert_eq!(first_survivors(&[1, 2, 3], 3, 1), Vec::<u32>::new());
    }

    #[test]
    fn merge_dedups() {
        assert_eq!(merge_sorted(&[1, 4, 6], &[2, 4, 7]), vec![1, 2, 4, 6, 7]);
        assert_eq!(merge_sorted(&[], &[5]), vec![5]);
    }
}
