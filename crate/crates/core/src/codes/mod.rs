//! Encoders and local decoders.

mod adaptive;
mod hadamard;
mod linear;
mod otp;
mod profile;

pub use adaptive::{adaptive_to_nonadaptive, AdaptiveDecoder, NonAdaptivePlan, NonAdaptiveWrapper};
pub use hadamard::{hadamard_bit, hadamard_encode, is_good_address, SpacedHadamardCode};
pub use linear::systematicize;
pub use otp::{otp_decode, otp_encode, otp_keygen, OtpCode, PrivateKey};
pub use profile::{DecoderQueryProfile, QueryDistribution};

use crate::bits::BitWord;
use crate::error::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// The `(q, delta, epsilon)` parameter bundle of a locally decodable insdel
/// code, together with its message and codeword lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeParams {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub delta: f64,
    pub epsilon: f64,
}

impl CodeParams {
    pub fn new(n: usize, m: usize, q: usize, delta: f64, epsilon: f64) -> Result<Self> {
        if n < 1 || m < n {
            return Err(Error::InvalidParameter(format!(
                "need m >= n >= 1, got n={n}, m={m}"
            )));
        }
        if q < 1 {
            return Err(Error::InvalidParameter("need q >= 1".into()));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!(
                "delta must be in [0,1], got {delta}"
            )));
        }
        if !(epsilon > 0.0 && epsilon <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be in (0, 1/2], got {epsilon}"
            )));
        }
        Ok(Self {
            n,
            m,
            q,
            delta,
            epsilon,
        })
    }
}

/// A code with a per-bit local decoder, the interface the Monte Carlo
/// estimators drive.
pub trait LocalCode {
    fn message_len(&self) -> usize;
    fn codeword_len(&self) -> usize;
    fn encode(&self, x: &BitWord) -> BitWord;
    /// Decode message bit `i` (0-based) from a possibly corrupted word.
    fn decode_bit(&self, y: &BitWord, i: usize, rng: &mut ChaCha8Rng) -> Result<bool>;
}
