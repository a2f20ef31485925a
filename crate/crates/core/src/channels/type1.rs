//! Type-1 errors: delete the first `e` bits, append `e` arbitrary bits at the
//! end, preserving the total length.

use super::{corrupt_with, ChannelSample, DeletionChannel, StepCount};
use crate::bits::{BitWord, PadPolicy};
use crate::deletion::DeletionSet;
use crate::error::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// The deterministic prefix-deletion pattern `D = {1, ..., e}` over `[2m]`.
#[derive(Debug, Clone, Copy)]
pub struct Type1Channel {
    m: usize,
    e: usize,
}

impl Type1Channel {
    pub fn new(m: usize, e: usize) -> Result<Self> {
        if e > m {
            return Err(Error::InvalidParameter(format!(
                "prefix deletion e={e} exceeds codeword length m={m}"
            )));
        }
        Ok(Self { m, e })
    }

    pub fn e(&self) -> usize {
        self.e
    }
}

impl DeletionChannel for Type1Channel {
    fn universe(&self) -> usize {
        2 * self.m
    }

    fn truncation_len(&self) -> usize {
        self.m
    }

    fn sample_with_trace(&self, _rng: &mut ChaCha8Rng) -> (DeletionSet, Vec<StepCount>) {
        let d = DeletionSet::new((1..=self.e as u32).collect(), 2 * self.m)
            .expect("prefix range is sorted");
        (
            d,
            vec![StepCount {
                step: "prefix".into(),
                deleted: self.e as u64,
            }],
        )
    }
}

/// Apply a Type-1 error: output has length exactly `m`, with positions
/// `1..=m-e` equal to `y[e+1..=m]` and the last `e` positions filled per the
/// suffix policy.
pub fn corrupt_type1(
    y: &BitWord,
    e: usize,
    suffix: PadPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<ChannelSample> {
    let channel = Type1Channel::new(y.len(), e)?;
    corrupt_with(&channel, y, suffix, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::edit_distance;
    use crate::rng::seed_rng;

    #[test]
    fn identity_at_zero() {
        let y: BitWord = "0101".parse().unwrap();
        let s = corrupt_type1(&y, 0, PadPolicy::Fixed(false), &mut seed_rng(0)).unwrap();
        assert_eq!(s.corrupted, y);
        assert!(s.deletions.is_empty());
    }

    #[test]
    fn shift_and_append() {
        let y: BitWord = "0101".parse().unwrap();
        let s = corrupt_type1(&y, 1, PadPolicy::Fixed(false), &mut seed_rng(0)).unwrap();
        assert_eq!(s.corrupted.to_string(), "1010");
    }

    #[test]
    fn length_preserved_and_edit_bounded() {
        let mut rng = seed_rng(7);
        let y = BitWord::uniform(32, &mut rng);
        for e in 0..=10 {
            let s = corrupt_type1(&y, e, PadPolicy::Uniform, &mut rng).unwrap();
            assert_eq!(s.corrupted.len(), 32);
            for p in 1..=32 - e {
                assert_eq!(s.corrupted.bit(p), y.bit(p + e));
            }
            assert!(edit_distance(&y, &s.corrupted) <= 2 * e);
        }
    }

    #[test]
    fn oversized_e_rejected() {
        let y: BitWord = "01".parse().unwrap();
        assert!(corrupt_type1(&y, 3, PadPolicy::Uniform, &mut seed_rng(0)).is_err());
    }
}
