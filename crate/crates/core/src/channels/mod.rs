//! Deletion processes as samplable channels. Every channel yields the ground
//! truth deletion set so the analysis can compute exact correspondences
//! instead of inferring alignment.

mod iid;
mod layered;
mod sampling;
mod two_query;
mod type1;

pub use iid::{sample_iid_deletions, IidDeletionChannel};
pub use layered::{make_adversarial_spec, make_oblivious_spec, ChannelSpec, Layer, LayeredChannel};
pub use sampling::sample_iid_subset;
pub use two_query::TwoQueryChannel;
pub use type1::{corrupt_type1, Type1Channel};

use crate::bits::{augment, truncate, BitWord, PadPolicy};
use crate::deletion::{apply_deletions, DeletionSet};
use crate::error::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// Number of deletions contributed by one step of a process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCount {
    pub step: String,
    pub deleted: u64,
}

/// One sampled corruption: the deletion set, the corrupted word and the
/// per-step audit trace.
#[derive(Debug, Clone)]
pub struct ChannelSample {
    pub deletions: DeletionSet,
    pub corrupted: BitWord,
    pub trace: Vec<StepCount>,
}

/// Budget classification of a sampled deletion set against the `(m, delta)`
/// preconditions of the hitting lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetStatus {
    /// `|D ∩ [m]| <= delta m` and `|D| <= m`.
    Within,
    /// Too many deletions in the codeword half, but `|D| <= m`.
    PrefixExceeded,
    /// More than `m` deletions in total; the analysis treats the decoder as
    /// never hitting the good set on such samples.
    TotalExceeded,
}

pub fn budget_check(deletions: &DeletionSet, m: usize, delta: f64) -> BudgetStatus {
    if deletions.len() > m {
        BudgetStatus::TotalExceeded
    } else if deletions.prefix_count(m) as f64 > delta * m as f64 {
        BudgetStatus::PrefixExceeded
    } else {
        BudgetStatus::Within
    }
}

/// A random deletion process over a fixed universe of original positions.
pub trait DeletionChannel: Sync {
    /// Size of the index universe the deletions live in (`2m` for the
    /// augmented-codeword processes, `N` for the raw i.i.d. channel).
    fn universe(&self) -> usize;

    /// Length the corrupted word is cut or padded to.
    fn truncation_len(&self) -> usize;

    /// Whether padding happens after the deletions (i.i.d. attack channel)
    /// instead of augmenting the codeword beforehand.
    fn pads_after(&self) -> bool {
        false
    }

    fn sample_with_trace(&self, rng: &mut ChaCha8Rng) -> (DeletionSet, Vec<StepCount>);

    fn sample(&self, rng: &mut ChaCha8Rng) -> DeletionSet {
        self.sample_with_trace(rng).0
    }
}

/// Run a deletion channel against a concrete codeword: augment, delete,
/// truncate (or delete then pad for pad-after channels).
pub fn corrupt_with<C: DeletionChannel + ?Sized>(
    channel: &C,
    codeword: &BitWord,
    pad: PadPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<ChannelSample> {
    let (deletions, trace) = channel.sample_with_trace(rng);
    let corrupted = if channel.pads_after() {
        if codeword.len() != channel.universe() {
            return Err(Error::UniverseMismatch {
                word_len: codeword.len(),
                universe: channel.universe(),
            });
        }
        let shortened = apply_deletions(codeword, &deletions)?;
        let pad_word = match pad {
            PadPolicy::Uniform => BitWord::uniform(deletions.len(), rng),
            PadPolicy::Fixed(b) => BitWord::from_bits(std::iter::repeat_n(b, deletions.len())),
        };
        truncate(&shortened.concat(&pad_word), channel.truncation_len())
    } else {
        let pad_len =
            channel
                .universe()
                .checked_sub(codeword.len())
                .ok_or(Error::UniverseMismatch {
                    word_len: codeword.len(),
                    universe: channel.universe(),
                })?;
        if pad_len != codeword.len() {
            return Err(Error::UniverseMismatch {
                word_len: codeword.len(),
                universe: channel.universe(),
            });
        }
        let augmented = augment(codeword, pad, rng);
        truncate(
            &apply_deletions(&augmented, &deletions)?,
            channel.truncation_len(),
        )
    };
    Ok(ChannelSample {
        deletions,
        corrupted,
        trace,
    })
}

/// Channels as word corruptors, the interface the decode-success estimator
/// drives.
pub trait WordCorruptor: Sync {
    fn corrupt(&self, y: &BitWord, rng: &mut ChaCha8Rng) -> Result<ChannelSample>;
}

/// The identity channel: no deletions, no padding.
pub struct IdentityCorruptor;

impl WordCorruptor for IdentityCorruptor {
    fn corrupt(&self, y: &BitWord, _rng: &mut ChaCha8Rng) -> Result<ChannelSample> {
        Ok(ChannelSample {
            deletions: DeletionSet::empty(y.len()),
            corrupted: y.clone(),
            trace: Vec::new(),
        })
    }
}

/// Any deletion channel plus a pad policy acts on words.
pub struct ProcessCorruptor<C> {
    pub channel: C,
    pub pad: PadPolicy,
}

impl<C: DeletionChannel> WordCorruptor for ProcessCorruptor<C> {
    fn corrupt(&self, y: &BitWord, rng: &mut ChaCha8Rng) -> Result<ChannelSample> {
        corrupt_with(&self.channel, y, self.pad, rng)
    }
}
