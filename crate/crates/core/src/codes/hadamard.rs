//! Lexicographic Hadamard code and its zero-spaced variant.
//!
//! Addresses run `0..2^n - 1` and map to codeword positions `a + 1`. Address
//! bit `a_j` is the coefficient of `2^j` (LSB first). The codeword bit at
//! address `a` is the inner product of the address bits with the message.

use super::LocalCode;
use crate::bits::BitWord;
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Evaluate the Hadamard codeword bit at `address` for message mask `x`.
#[inline]
pub fn hadamard_bit(x_mask: u64, address: u64) -> bool {
    (x_mask & address).count_ones() & 1 == 1
}

/// Full Hadamard encoding of `x`, length `2^n`. Address 0 always encodes 0
/// (the empty parity).
pub fn hadamard_encode(x: &BitWord) -> BitWord {
    let n = x.len();
    assert!(
        (1..=26).contains(&n),
        "hadamard_encode supports 1 <= n <= 26"
    );
    let mask = x.to_mask();
    BitWord::from_bits((0..1u64 << n).map(|a| hadamard_bit(mask, a)))
}

/// Is `a` good for message index `i`? Bad means address bits
/// `t*i ..= t*(i+1) - 1` are all set; a good address guarantees
/// `f(a) xor f(a + 2^{t i}) = x_i` for every message.
pub fn is_good_address(a: u64, i: usize, t: usize, _n: usize) -> bool {
    let block = (a >> (t * i)) & ((1u64 << t) - 1);
    block != (1u64 << t) - 1
}

/// The Hadamard code applied to the message with `t - 1` zeros interleaved
/// after each bit, decodable with two queries under prefix deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacedHadamardCode {
    n: usize,
    t: usize,
}

impl SpacedHadamardCode {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n < 1 || t < 1 {
            return Err(Error::InvalidParameter("need n >= 1 and t >= 1".into()));
        }
        if n * t > 26 {
            return Err(Error::SizeLimit(format!(
                "codeword length 2^{} too large to materialize",
                n * t
            )));
        }
        Ok(Self { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Codeword length `2^(t n)`.
    pub fn m(&self) -> usize {
        1usize << (self.t * self.n)
    }

    /// The spaced message: bit `t*i` of the result equals `x_i`.
    pub fn spaced_message(&self, x: &BitWord) -> BitWord {
        assert_eq!(x.len(), self.n);
        let mut spaced = BitWord::zeros(self.t * self.n);
        for i in 0..self.n {
            spaced.set_bit(self.t * i + 1, x.bit(i + 1));
        }
        spaced
    }

    pub fn encode(&self, x: &BitWord) -> BitWord {
        hadamard_encode(&self.spaced_message(x))
    }

    /// Codeword bit at `address` without materializing the codeword.
    pub fn encode_bit(&self, x: &BitWord, address: u64) -> bool {
        hadamard_bit(self.spaced_message(x).to_mask(), address)
    }

    /// Two-query decoder: sample `a` uniformly with `a + 2^{t i}` inside the
    /// received word, output `y(a) xor y(a + 2^{t i})`. The sampling range is
    /// clipped to the word actually received, never past `2^{t n} - 1`.
    pub fn decode(&self, y: &BitWord, i: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
        assert!(i < self.n, "message index {i} out of range");
        let gap = 1u64 << (self.t * i);
        let top = (self.m() as u64).min(y.len() as u64);
        if top <= gap {
            return Err(Error::WordTooShort {
                len: y.len(),
                need: gap as usize + 1,
            });
        }
        // a in {0, ..., top - 1 - gap}; positions are addresses + 1.
        let a = rng.random_range(0..top - gap);
        Ok(y.bit(a as usize + 1) ^ y.bit((a + gap) as usize + 1))
    }

    /// Number of addresses the decoder for index `i` samples from on an
    /// uncorrupted word.
    pub fn decoder_range(&self, i: usize) -> usize {
        self.m() - (1usize << (self.t * i))
    }
}

impl LocalCode for SpacedHadamardCode {
    fn message_len(&self) -> usize {
        self.n
    }

    fn codeword_len(&self) -> usize {
        self.m()
    }

    fn encode(&self, x: &BitWord) -> BitWord {
        SpacedHadamardCode::encode(self, x)
    }

    fn decode_bit(&self, y: &BitWord, i: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
        self.decode(y, i, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(hadamard_encode(&w("00")).to_string(), "0000");
        // x0 = 1, x1 = 0: addresses 0..3 evaluate to 0,1,0,1.
        assert_eq!(hadamard_encode(&w("10")).to_string(), "0101");
        for n in 1..=6 {
            let x = BitWord::from_mask(0x2d & ((1 << n) - 1), n);
            assert!(!hadamard_encode(&x).bit(1), "address 0 must encode 0");
        }
    }

    #[test]
    fn hadamard_linearity_exhaustive() {
        for n in 1..=8usize {
            for a in 0..1u64 << n {
                let b = a.wrapping_mul(0x9e37) & ((1 << n) - 1);
                let ca = hadamard_encode(&BitWord::from_mask(a, n));
                let cb = hadamard_encode(&BitWord::from_mask(b, n));
                let cab = hadamard_encode(&BitWord::from_mask(a ^ b, n));
                assert_eq!(ca.xor(&cb), cab);
            }
        }
    }

    #[test]
    fn spaced_encode_examples() {
        let code = SpacedHadamardCode::new(1, 2).unwrap();
        assert_eq!(code.encode(&w("1")).to_string(), "0101");
        assert_eq!(code.encode(&w("0")).to_string(), "0000");
    }

    #[test]
    fn spaced_bit_at_power_address_recovers_message() {
        for (n, t) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let code = SpacedHadamardCode::new(n, t).unwrap();
            for mask in 0..1u64 << n {
                let x = BitWord::from_mask(mask, n);
                let y = code.encode(&x);
                for i in 0..n {
                    let address = 1u64 << (t * i);
                    assert_eq!(y.bit(address as usize + 1), x.bit(i + 1));
                }
            }
        }
    }

    #[test]
    fn spaced_decode_uncorrupted_success() {
        // Exhaustive over the decoder's address choice. Bad addresses (block
        // of a all ones) can decode wrongly even without corruption, so the
        // guarantee is the good-address fraction 1 - 2^-t, not 1; for n = 1
        // every bad address falls outside the sampling range and success is
        // exactly 1.
        for (n, t) in [(1, 2), (1, 3), (2, 2), (3, 3), (2, 3)] {
            let code = SpacedHadamardCode::new(n, t).unwrap();
            for mask in 0..1u64 << n {
                let x = BitWord::from_mask(mask, n);
                let y = code.encode(&x);
                for i in 0..n {
                    let gap = 1usize << (t * i);
                    let range = code.m() - gap;
                    let correct = (0..range)
                        .filter(|&a| y.bit(a + 1) ^ y.bit(a + gap + 1) == x.bit(i + 1))
                        .count();
                    assert!(
                        correct * (1 << t) >= range * ((1 << t) - 1),
                        "n={n} t={t} i={i}: {correct}/{range}"
                    );
                    if n == 1 {
                        assert_eq!(correct, range, "n=1 must be exact");
                    }
                }
            }
        }
    }

    #[test]
    fn good_address_examples() {
        assert!(!is_good_address(3, 0, 2, 1));
        for a in [0u64, 1, 2] {
            assert!(is_good_address(a, 0, 2, 1));
        }
        // Good fraction over the full address space is exactly 1 - 2^-t.
        for (n, t) in [(2, 2), (2, 3), (3, 2)] {
            let total = 1u64 << (t * n);
            for i in 0..n {
                let good = (0..total).filter(|&a| is_good_address(a, i, t, n)).count() as u64;
                assert_eq!(good * (1 << t), total * ((1 << t) - 1));
            }
        }
    }

    #[test]
    fn good_address_implies_correct_pair() {
        for (n, t) in [(2, 2), (2, 3)] {
            let code = SpacedHadamardCode::new(n, t).unwrap();
            for mask in 0..1u64 << n {
                let x = BitWord::from_mask(mask, n);
                let y = code.encode(&x);
                for i in 0..n {
                    let gap = 1u64 << (t * i);
                    for a in 0..(code.m() as u64 - gap) {
                        if is_good_address(a, i, t, n) {
                            let out = y.bit(a as usize + 1) ^ y.bit((a + gap) as usize + 1);
                            assert_eq!(out, x.bit(i + 1));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn type1_shift_keeps_most_pairs_correct() {
        // n=1, t=2, x=1: codeword 0101; deleting the first bit and appending
        // a suffix bit gives 101b. The pairs at a in {0, 1} still decode 1,
        // whatever b is, so success over a is at least 2/3.
        use crate::bits::PadPolicy;
        use crate::channels::corrupt_type1;
        let code = SpacedHadamardCode::new(1, 2).unwrap();
        let y = code.encode(&w("1"));
        assert_eq!(y.to_string(), "0101");
        for fill in [false, true] {
            let s = corrupt_type1(&y, 1, PadPolicy::Fixed(fill), &mut seed_rng(0)).unwrap();
            for a in [0usize, 1] {
                assert!(s.corrupted.bit(a + 1) ^ s.corrupted.bit(a + 2));
            }
        }
    }

    #[test]
    fn decode_on_too_short_word_fails() {
        let code = SpacedHadamardCode::new(2, 2).unwrap();
        let mut rng = seed_rng(0);
        // Decoding i=1 needs a pair with gap 4; a 4-bit word cannot hold one.
        let short = w("0101");
        assert!(code.decode(&short, 1, &mut rng).is_err());
        assert!(code.decode(&short, 0, &mut rng).is_ok());
    }
}
