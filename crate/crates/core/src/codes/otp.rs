//! Private-key one-query code: XOR the replicated message with a one-time
//! pad and shuffle with a secret permutation.

use super::LocalCode;
use crate::bits::BitWord;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shared secret of the private-key code: a permutation of `[tn]` and a
/// uniform pad. `pi` is stored 0-based; `pi[j]` is the source position the
/// output position `j` reads from, following the shuffle convention
/// `pi(z) = z[pi(1)] ... z[pi(tn)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pi: Vec<usize>,
    otp: BitWord,
    t: usize,
}

impl PrivateKey {
    pub fn new(pi: Vec<usize>, otp: BitWord, t: usize) -> Result<Self> {
        let len = pi.len();
        if len != otp.len() || t == 0 || !len.is_multiple_of(t) {
            return Err(Error::InvalidParameter(
                "key needs |pi| = |otp| = t * n".into(),
            ));
        }
        let mut seen = vec![false; len];
        for &p in &pi {
            if p >= len || seen[p] {
                return Err(Error::InvalidParameter(
                    "pi is not a permutation of [tn]".into(),
                ));
            }
            seen[p] = true;
        }
        Ok(Self { pi, otp, t })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.pi.len() / self.t
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn otp(&self) -> &BitWord {
        &self.otp
    }

    /// The codeword positions that carry `x_i` (0-based `i`): all `j` with
    /// `pi[j] = i mod n` under the block-repetition layout of `x^t`.
    pub fn carrier_positions(&self, i: usize) -> Vec<usize> {
        let n = self.n();
        (0..self.pi.len())
            .filter(|&j| self.pi[j] % n == i)
            .collect()
    }

    /// Text record: `t` line, permutation as comma-separated indices
    /// (1-based), pad as a bit string.
    pub fn to_text(&self) -> String {
        let pi = self
            .pi
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("t={}\npi={}\notp={}\n", self.t, pi, self.otp)
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut t = None;
        let mut pi = None;
        let mut otp = None;
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad key line {line:?}")))?;
            match k {
                "t" => {
                    t = Some(
                        v.parse::<usize>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                "pi" => {
                    pi = Some(
                        v.split(',')
                            .map(|tok| {
                                tok.trim()
                                    .parse::<usize>()
                                    .map_err(|e| Error::Parse(e.to_string()))
                                    .and_then(|p| {
                                        p.checked_sub(1).ok_or_else(|| {
                                            Error::Parse("pi indices are 1-based".into())
                                        })
                                    })
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "otp" => otp = Some(v.parse::<BitWord>()?),
                other => return Err(Error::Parse(format!("unknown key field {other:?}"))),
            }
        }
        match (t, pi, otp) {
            (Some(t), Some(pi), Some(otp)) => PrivateKey::new(pi, otp, t),
            _ => Err(Error::Parse("key record missing t, pi or otp".into())),
        }
    }
}

/// Sample a fresh key: uniform permutation, uniform pad.
pub fn otp_keygen(n: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<PrivateKey> {
    if n < 1 || t < 1 {
        return Err(Error::InvalidParameter("need n >= 1 and t >= 1".into()));
    }
    let mut pi: Vec<usize> = (0..t * n).collect();
    pi.shuffle(rng);
    let otp = BitWord::uniform(t * n, rng);
    PrivateKey::new(pi, otp, t)
}

/// `x^t`: the message concatenated to itself `t` times.
fn replicate(x: &BitWord, t: usize) -> BitWord {
    let mut out = BitWord::new();
    for _ in 0..t {
        out = out.concat(x);
    }
    out
}

/// Encode: shuffle `x^t xor OTP` with the key permutation.
pub fn otp_encode(x: &BitWord, key: &PrivateKey) -> BitWord {
    assert_eq!(x.len(), key.n(), "message length must match key");
    let z = replicate(x, key.t()).xor(key.otp());
    BitWord::from_bits(key.pi().iter().map(|&src| z.bit(src + 1)))
}

/// Decode bit `i` (0-based) with one query: pick a uniform carrier position
/// `j` and return `y[j] xor OTP[pi(j)]`.
pub fn otp_decode(y: &BitWord, i: usize, key: &PrivateKey, rng: &mut ChaCha8Rng) -> Result<bool> {
    if y.len() != key.pi().len() {
        return Err(Error::UniverseMismatch {
            word_len: y.len(),
            universe: key.pi().len(),
        });
    }
    let carriers = key.carrier_positions(i);
    let j = carriers[rng.random_range(0..carriers.len())];
    Ok(y.bit(j + 1) ^ key.otp().bit(key.pi()[j] + 1))
}

/// The code bundled with its key, for the generic estimator interface.
#[derive(Debug, Clone)]
pub struct OtpCode {
    pub key: PrivateKey,
}

impl LocalCode for OtpCode {
    fn message_len(&self) -> usize {
        self.key.n()
    }

    fn codeword_len(&self) -> usize {
        self.key.pi().len()
    }

    fn encode(&self, x: &BitWord) -> BitWord {
        otp_encode(x, &self.key)
    }

    fn decode_bit(&self, y: &BitWord, i: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
        otp_decode(y, i, &self.key, rng)
    }
}
