//! Monte Carlo estimators: hitting probabilities, induced query-tuple
//! distributions, and end-to-end decoder success. Every estimator derives one
//! RNG stream per trial from `(master seed, experiment tag, trial index)`, so
//! results are identical for any worker count.

use crate::analysis::goodsets::GoodnessTable;
use crate::analysis::stats::Estimate;
use crate::bits::{BitWord, PadPolicy};
use crate::channels::{budget_check, BudgetStatus, DeletionChannel, WordCorruptor};
use crate::codes::{DecoderQueryProfile, LocalCode};
use crate::error::Result;
use crate::query::QueryTuple;
use crate::rng::{experiment_tag, trial_rng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Per-trial RNG streams for one estimator run.
#[derive(Debug, Clone, Copy)]
pub struct Streams {
    master: u64,
    tag: u64,
}

impl Streams {
    pub fn new(master_seed: u64, label: &str) -> Self {
        Self {
            master: master_seed,
            tag: experiment_tag(label),
        }
    }

    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        trial_rng(self.master, self.tag, trial)
    }
}

/// Map-reduce over trials with a deterministic merge. `parallel` only changes
/// the schedule, never the result.
fn run_trials<T, F, M>(trials: u64, streams: &Streams, parallel: bool, trial_fn: F, merge: M) -> T
where
    T: Default + Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    if parallel {
        (0..trials)
            .into_par_iter()
            .map(|t| trial_fn(&mut streams.rng(t)))
            .reduce(T::default, &merge)
    } else {
        (0..trials).fold(T::default(), |acc, t| {
            merge(acc, trial_fn(&mut streams.rng(t)))
        })
    }
}

/// Outcome counts of a hitting-probability run.
#[derive(Debug, Clone, Default)]
pub struct HittingReport {
    pub hits: u64,
    pub trials: u64,
    pub total_exceeded: u64,
    pub prefix_exceeded: u64,
    pub monotonicity_violations: u64,
}

impl HittingReport {
    pub fn estimate(&self) -> Estimate {
        Estimate::from_counts(self.hits, self.trials)
    }

    fn merge(mut self, other: Self) -> Self {
        self.hits += other.hits;
        self.trials += other.trials;
        self.total_exceeded += other.total_exceeded;
        self.prefix_exceeded += other.prefix_exceeded;
        self.monotonicity_violations += other.monotonicity_violations;
        self
    }
}

/// Estimate the probability that the decoder's query, pushed through the
/// sampled deletions, lands in the good set of index `i`. Samples exceeding
/// the total deletion budget count as misses outright.
#[allow(clippy::too_many_arguments)]
pub fn hitting_probability(
    profile: &DecoderQueryProfile,
    channel: &dyn DeletionChannel,
    table: &GoodnessTable,
    i: usize,
    delta: f64,
    trials: u64,
    streams: &Streams,
    parallel: bool,
) -> HittingReport {
    let m = channel.truncation_len();
    let universe = channel.universe();
    assert_eq!(
        universe,
        table.universe(),
        "channel universe must match the table"
    );
    run_trials(
        trials,
        streams,
        parallel,
        |rng| {
            let mut rep = HittingReport {
                trials: 1,
                ..Default::default()
            };
            let deletions = channel.sample(rng);
            match budget_check(&deletions, m, delta) {
                BudgetStatus::TotalExceeded => {
                    rep.total_exceeded = 1;
                    return rep;
                }
                BudgetStatus::PrefixExceeded => rep.prefix_exceeded = 1,
                BudgetStatus::Within => {}
            }
            let query = profile.distribution(i).sample(rng).clone();
            if query.last() > universe - deletions.len() {
                return rep;
            }
            let mapped = query
                .corresponds(&deletions)
                .expect("query inside the map domain");
            if mapped.first() < query.first()
                || mapped
                    .gaps()
                    .iter()
                    .zip(query.gaps())
                    .any(|(dm, dq)| dm < dq)
            {
                rep.monotonicity_violations = 1;
                return rep;
            }
            if table.is_good(i, &mapped) {
                rep.hits = 1;
            }
            rep
        },
        HittingReport::merge,
    )
}

/// Empirical joint distribution of the corresponding tuple `Q^D`.
#[derive(Debug, Clone, Default)]
pub struct InducedHistogram {
    pub counts: HashMap<Vec<u32>, u64>,
    pub trials: u64,
    pub out_of_range: u64,
    pub monotonicity_violations: u64,
}

impl InducedHistogram {
    fn merge(mut self, other: Self) -> Self {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.trials += other.trials;
        self.out_of_range += other.out_of_range;
        self.monotonicity_violations += other.monotonicity_violations;
        self
    }

    /// Largest point mass over all observed tuples, as a fraction of trials.
    /// Ties resolve to the smallest tuple so the result never depends on map
    /// iteration order.
    pub fn max_point_mass(&self) -> (f64, Option<QueryTuple>) {
        let best = self
            .counts
            .iter()
            .max_by(|(ka, ca), (kb, cb)| ca.cmp(cb).then_with(|| kb.cmp(ka)));
        match best {
            None => (0.0, None),
            Some((key, &c)) => (
                c as f64 / self.trials as f64,
                Some(
                    QueryTuple::from_positions(
                        &key.iter().map(|&p| p as usize).collect::<Vec<_>>(),
                    )
                    .expect("stored tuples valid"),
                ),
            ),
        }
    }

    /// Fraction of trials whose mapped gap `gap_idx` exceeded
    /// `factor * base_gap`. Out-of-range samples count as exceeding.
    pub fn tail_fraction(&self, base: &QueryTuple, gap_idx: usize, factor: f64) -> f64 {
        let threshold = factor * base.gaps()[gap_idx] as f64;
        let mut exceed = self.out_of_range;
        for (key, &c) in &self.counts {
            let positions: Vec<usize> = key.iter().map(|&p| p as usize).collect();
            let gap = positions[gap_idx + 1] - positions[gap_idx];
            if gap as f64 > threshold {
                exceed += c;
            }
        }
        exceed as f64 / self.trials as f64
    }
}

/// Sample the tuple corresponding to `query` under the channel, `trials`
/// times.
pub fn induced_distribution(
    query: &QueryTuple,
    channel: &dyn DeletionChannel,
    trials: u64,
    streams: &Streams,
    parallel: bool,
) -> InducedHistogram {
    let universe = channel.universe();
    run_trials(
        trials,
        streams,
        parallel,
        |rng| {
            let mut hist = InducedHistogram {
                trials: 1,
                ..Default::default()
            };
            let deletions = channel.sample(rng);
            if query.last() > universe - deletions.len() {
                hist.out_of_range = 1;
                return hist;
            }
            let mapped = query
                .corresponds(&deletions)
                .expect("query inside the map domain");
            if mapped.first() < query.first()
                || mapped
                    .gaps()
                    .iter()
                    .zip(query.gaps())
                    .any(|(dm, dq)| dm < dq)
            {
                hist.monotonicity_violations = 1;
                return hist;
            }
            let key: Vec<u32> = mapped.positions().iter().map(|&p| p as u32).collect();
            hist.counts.insert(key, 1);
            hist
        },
        InducedHistogram::merge,
    )
}

/// End-to-end decoder success over fresh uniform messages: encode, corrupt,
/// decode one bit, compare. Decoder errors (word too short to query) count as
/// failures.
pub fn decode_success(
    code: &(dyn LocalCode + Sync),
    channel: &dyn WordCorruptor,
    i: usize,
    trials: u64,
    streams: &Streams,
    parallel: bool,
) -> Result<Estimate> {
    let n = code.message_len();
    let successes = run_trials(
        trials,
        streams,
        parallel,
        |rng| {
            let x = BitWord::uniform(n, rng);
            let y = code.encode(&x);
            let sample = channel
                .corrupt(&y, rng)
                .expect("channel accepts the codeword");
            match code.decode_bit(&sample.corrupted, i, rng) {
                Ok(bit) => u64::from(bit == x.bit(i + 1)),
                Err(_) => 0,
            }
        },
        |a, b| a + b,
    );
    Ok(Estimate::from_counts(successes, trials))
}

/// Augment-then-delete corruption with uniform padding, the default way the
/// estimators pair a deletion process with words.
pub fn uniform_pad(
    channel: impl DeletionChannel,
) -> crate::channels::ProcessCorruptor<impl DeletionChannel> {
    crate::channels::ProcessCorruptor {
        channel,
        pad: PadPolicy::Uniform,
    }
}
