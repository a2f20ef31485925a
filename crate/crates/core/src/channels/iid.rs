//! Plain i.i.d. deletions over the raw codeword, the attack channel from the
//! Hadamard note. The caller restores the length by pad-and-truncate, which
//! `corrupt_with` does for this channel by appending after the deletions.

use super::sampling::sample_iid_subset;
use super::{DeletionChannel, StepCount};
use crate::deletion::DeletionSet;
use crate::error::{Error, Result};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct IidDeletionChannel {
    n: usize,
    alpha: f64,
}

impl IidDeletionChannel {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be in [0, 1], got {alpha}"
            )));
        }
        Ok(Self { n, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl DeletionChannel for IidDeletionChannel {
    fn universe(&self) -> usize {
        self.n
    }

    fn truncation_len(&self) -> usize {
        self.n
    }

    fn pads_after(&self) -> bool {
        true
    }

    fn sample_with_trace(&self, rng: &mut ChaCha8Rng) -> (DeletionSet, Vec<StepCount>) {
        let positions = sample_iid_subset(self.n, self.alpha, rng);
        let deleted = positions.len() as u64;
        (
            DeletionSet::new(positions, self.n).expect("sorted by construction"),
            vec![StepCount {
                step: "iid".into(),
                deleted,
            }],
        )
    }
}

/// Each position of `[N]` deleted independently with probability `alpha`.
pub fn sample_iid_deletions(n: usize, alpha: f64, rng: &mut ChaCha8Rng) -> Result<DeletionSet> {
    Ok(IidDeletionChannel::new(n, alpha)?.sample(rng))
}
