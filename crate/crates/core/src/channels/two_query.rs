//! The two-step deletion process behind the 2-query bounds: an i.i.d. layer
//! whose rate is itself uniform on `[delta/8, delta/4]`, followed by a random
//! prefix deletion.

use super::sampling::{first_survivors, merge_sorted, sample_iid_subset};
use super::{DeletionChannel, StepCount};
use crate::deletion::DeletionSet;
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct TwoQueryChannel {
    m: usize,
    delta: f64,
}

impl TwoQueryChannel {
    pub fn new(m: usize, delta: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("need m >= 1".into()));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must be in (0, 1], got {delta}"
            )));
        }
        Ok(Self { m, delta })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

impl DeletionChannel for TwoQueryChannel {
    fn universe(&self) -> usize {
        2 * self.m
    }

    fn truncation_len(&self) -> usize {
        self.m
    }

    fn sample_with_trace(&self, rng: &mut ChaCha8Rng) -> (DeletionSet, Vec<StepCount>) {
        let universe = 2 * self.m;
        // Step 1: rate beta uniform on [delta/8, delta/4], then i.i.d.
        let beta = self.delta / 8.0 + rng.random::<f64>() * (self.delta / 8.0);
        let step1 = sample_iid_subset(universe, beta, rng);

        // Step 2: delete the first e2 surviving positions. The set is
        // accumulated over original indices, so this means the e2 smallest
        // indices not already deleted.
        let e2_max = (self.delta * self.m as f64 / 4.0).floor() as usize;
        let e2 = rng.random_range(0..=e2_max);
        let prefix = first_survivors(&step1, universe, e2);

        let trace = vec![
            StepCount {
                step: "iid".into(),
                deleted: step1.len() as u64,
            },
            StepCount {
                step: "prefix".into(),
                deleted: prefix.len() as u64,
            },
        ];
        let positions = merge_sorted(&step1, &prefix);
        (
            DeletionSet::new(positions, universe).expect("sampled positions are sorted"),
            trace,
        )
    }
}
