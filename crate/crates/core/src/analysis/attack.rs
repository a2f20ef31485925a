//! The i.i.d. deletion attack on the lexicographic Hadamard code: estimates
//! how much probability mass a fixed-partition pair decoder keeps on pairs
//! that still align with partition pairs after the channel, and its
//! end-to-end success.

use crate::analysis::estimators::Streams;
use crate::analysis::stats::Estimate;
use crate::channels::sample_iid_subset;
use crate::codes::hadamard_bit;
use crate::error::{Error, Result};
use rand::Rng;
use rayon::prelude::*;

/// A perfect matching of the codeword positions `[N]` into `N/2` pairs.
#[derive(Debug, Clone)]
pub enum PairPartition {
    /// The standard lexicographic decoder for message bit `bit` (0-based):
    /// pairs `(a + 1, a + 1 + 2^bit)` over addresses `a` with bit `bit`
    /// clear.
    StandardBit { n: usize, bit: usize },
    /// Arbitrary matching, positions 1-based.
    Custom { n: usize, pairs: Vec<(u32, u32)> },
}

impl PairPartition {
    pub fn n(&self) -> usize {
        match self {
            PairPartition::StandardBit { n, .. } | PairPartition::Custom { n, .. } => *n,
        }
    }

    pub fn codeword_len(&self) -> usize {
        1usize << self.n()
    }

    pub fn n_pairs(&self) -> usize {
        match self {
            PairPartition::StandardBit { n, .. } => (1usize << n) / 2,
            PairPartition::Custom { pairs, .. } => pairs.len(),
        }
    }

    /// The `idx`-th pair, 1-based positions, left < right.
    pub fn pair(&self, idx: usize) -> (u32, u32) {
        match self {
            PairPartition::StandardBit { bit, .. } => {
                // idx enumerates addresses with bit `bit` clear: splice idx's
                // bits around the cleared bit.
                let low = idx as u64 & ((1u64 << bit) - 1);
                let high = (idx as u64 >> bit) << (bit + 1);
                let a = high | low;
                ((a + 1) as u32, (a + 1 + (1 << bit)) as u32)
            }
            PairPartition::Custom { pairs, .. } => pairs[idx],
        }
    }

    /// Is `(s, t)` (1-based, s < t) one of the partition pairs?
    pub fn contains(&self, s: u64, t: u64) -> bool {
        match self {
            PairPartition::StandardBit { bit, .. } => {
                let a = s - 1;
                t - s == (1 << bit) && (a >> bit) & 1 == 0
            }
            PairPartition::Custom { pairs, .. } => pairs.contains(&(s as u32, t as u32)),
        }
    }
}

/// Exact number of pairs `(s, t)` with `s <= t` in `[N]` and
/// `t - s < n^{2/3}`, plus the bounds it must respect. The gap comparison is
/// exact: `d < n^{2/3}` iff `d^3 < n^2`.
#[derive(Debug, Clone, Copy)]
pub struct NearPairCount {
    pub n: usize,
    pub count: u128,
    /// `N (floor(n^{2/3}) + 1)`.
    pub per_position_bound: u128,
    /// `2 N n^{2/3}`.
    pub loose_bound: f64,
}

pub fn near_pair_count(n: usize) -> NearPairCount {
    let big_n = 1u128 << n;
    // Largest integer gap strictly below n^{2/3}.
    let gm = (0u128..)
        .take_while(|&d| d * d * d < (n as u128) * (n as u128))
        .last()
        .unwrap_or(0);
    // Gaps d = 0..=gm, each with N - d ordered (s <= t) pairs.
    let count = (0..=gm).map(|d| big_n - d).sum();
    let floor_n23 = {
        let mut v = 0u128;
        while (v + 1) * (v + 1) * (v + 1) <= (n as u128) * (n as u128) {
            v += 1;
        }
        v
    };
    NearPairCount {
        n,
        count,
        per_position_bound: big_n * (floor_n23 + 1),
        loose_bound: 2.0 * big_n as f64 * (n as f64).powf(2.0 / 3.0),
    }
}

/// Smallest bit index whose standard-partition gap `2^bit` is at least
/// `n^{2/3}`, i.e. the first "far" bit.
pub fn first_far_bit(n: usize) -> usize {
    (0..n)
        .find(|&b| {
            let gap = 1u128 << b;
            gap * gap * gap >= (n as u128) * (n as u128)
        })
        .expect("2^{n-1} >= n^{2/3} for n >= 1")
}

#[derive(Debug, Clone)]
pub struct AttackReport {
    pub n: usize,
    pub alpha: f64,
    pub bit: usize,
    /// Probability that a uniformly chosen far partition pair still maps to a
    /// partition pair after the deletions.
    pub good_pair_mass: Estimate,
    /// End-to-end success of the fixed-partition decoder for `bit` over
    /// uniform messages.
    pub success: Estimate,
    pub near_pairs: NearPairCount,
}

/// `phi_D(p)` for sorted deletions `dels`: the original index of the `p`-th
/// survivor, or None when fewer than `p` positions survive.
fn map_position(dels: &[u32], universe: u64, p: u64) -> Option<u64> {
    let mut skipped = 0u64;
    loop {
        let candidate = p + skipped;
        if candidate > universe {
            return None;
        }
        let now = dels.partition_point(|&d| u64::from(d) <= candidate) as u64;
        if now == skipped {
            return Some(candidate);
        }
        skipped = now;
    }
}

/// Run the attack: i.i.d. deletions at rate `alpha`, padding restored with
/// uniform bits. One channel sample per trial serves both estimates.
pub fn hadamard_attack(
    partition: &PairPartition,
    alpha: f64,
    trials: u64,
    streams: &Streams,
    parallel: bool,
) -> Result<AttackReport> {
    let n = partition.n();
    if n > 26 {
        return Err(Error::SizeLimit("attack supports n <= 26".into()));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be in [0, 1), got {alpha}"
        )));
    }
    let bit = match partition {
        PairPartition::StandardBit { bit, .. } => *bit,
        PairPartition::Custom { .. } => first_far_bit(n),
    };
    let universe = 1u64 << n;
    let n_pairs = partition.n_pairs();

    let trial = |rng: &mut rand_chacha::ChaCha8Rng| -> (u64, u64) {
        let dels = sample_iid_subset(universe as usize, alpha, rng);
        let (s, t) = partition.pair(rng.random_range(0..n_pairs));
        let (s, t) = (u64::from(s), u64::from(t));
        let ms = map_position(&dels, universe, s);
        let mt = map_position(&dels, universe, t);
        let good = match (ms, mt) {
            (Some(sp), Some(tp)) => partition.contains(sp, tp),
            _ => false,
        };

        // Decoder success on a fresh uniform message: read the two positions
        // of the padded-and-truncated corrupted word.
        let x_mask: u64 = rng.random::<u64>() & (universe - 1);
        let read = |mapped: Option<u64>, rng: &mut rand_chacha::ChaCha8Rng| match mapped {
            Some(orig) => hadamard_bit(x_mask, orig - 1),
            None => rng.random::<bool>(), // appended uniform bit
        };
        let out = read(ms, rng) ^ read(mt, rng);
        let correct = out == (x_mask >> bit & 1 == 1);
        (u64::from(good), u64::from(correct))
    };

    let (good, correct) = if parallel {
        (0..trials)
            .into_par_iter()
            .map(|t| trial(&mut streams.rng(t)))
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    } else {
        (0..trials).fold((0, 0), |acc, t| {
            let r = trial(&mut streams.rng(t));
            (acc.0 + r.0, acc.1 + r.1)
        })
    };

    Ok(AttackReport {
        n,
        alpha,
        bit,
        good_pair_mass: Estimate::from_counts(good, trials),
        success: Estimate::from_counts(correct, trials),
        near_pairs: near_pair_count(n),
    })
}
