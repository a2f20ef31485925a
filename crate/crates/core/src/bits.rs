//! Binary strings: messages, codewords and corrupted words.

use crate::error::{Error, Result};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// A finite binary string. Positions are 1-based in every public contract,
/// matching the index sets `[m]` and `[2m]` used throughout.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitWord {
    bits: Vec<u8>,
}

impl BitWord {
    pub fn new() -> Self {
        Self { bits: Vec::new() }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![0; len] }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().map(u8::from).collect(),
        }
    }

    /// Word whose position `a + 1` holds bit `a` of `mask`, for `a < len`.
    /// Bit order is LSB-first: `mask & 1` lands at position 1.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self::from_bits((0..len).map(|a| (mask >> a) & 1 == 1))
    }

    pub fn uniform<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self::from_bits((0..len).map(|_| rng.random::<bool>()))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-based position `pos`.
    ///
    /// # Panics
    /// Panics if `pos` is 0 or exceeds the length.
    pub fn bit(&self, pos: usize) -> bool {
        assert!(
            pos >= 1 && pos <= self.bits.len(),
            "position {pos} out of range [1, {}]",
            self.bits.len()
        );
        self.bits[pos - 1] == 1
    }

    pub fn set_bit(&mut self, pos: usize, value: bool) {
        assert!(pos >= 1 && pos <= self.bits.len());
        self.bits[pos - 1] = u8::from(value);
    }

    pub fn push(&mut self, value: bool) {
        self.bits.push(u8::from(value));
    }

    /// Bits as a 0-based slice of 0/1 bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().map(|&b| b == 1)
    }

    /// Interpret the word as an LSB-first integer (length <= 64).
    pub fn to_mask(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (a, &b)| acc | (u64::from(b) << a))
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.len(), other.len(), "xor requires equal lengths");
        BitWord {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BitWord { bits }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({})", self)
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord::from_bits)
    }
}

/// How the appended half of an augmented codeword is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadPolicy {
    /// Independent uniform bits, the default in the deletion processes.
    Uniform,
    /// Every appended bit equals the given value.
    Fixed(bool),
}

/// Append `m` bits to a length-`m` codeword, yielding the augmented codeword
/// of length `2m` that the deletion processes act on.
pub fn augment<R: Rng + ?Sized>(codeword: &BitWord, pad: PadPolicy, rng: &mut R) -> BitWord {
    let m = codeword.len();
    let tail = match pad {
        PadPolicy::Uniform => BitWord::uniform(m, rng),
        PadPolicy::Fixed(b) => BitWord::from_bits(std::iter::repeat_n(b, m)),
    };
    codeword.concat(&tail)
}

/// First `min(|word|, m)` bits. Words already shorter than `m` pass through
/// unchanged.
pub fn truncate(word: &BitWord, m: usize) -> BitWord {
    BitWord {
        bits: word.as_bytes()[..word.len().min(m)].to_vec(),
    }
}
