//! Exact arithmetic for the compound binomial `B(n, U[s, t])` and its
//! anti-concentration bound `1/((t - s)(n + 1))`.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// `B(n, U[s, t])`: a binomial whose success probability is uniform on the
/// rational interval `[s, t]`.
#[derive(Debug, Clone)]
pub struct CompoundBinomial {
    n: usize,
    s: BigRational,
    t: BigRational,
    /// Pascal row `C(n+1, 0..=n+1)`.
    binomials: Vec<BigInt>,
}

fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl CompoundBinomial {
    pub fn new(n: usize, s: BigRational, t: BigRational) -> Result<Self> {
        if s < BigRational::zero() || t > BigRational::one() || s >= t {
            return Err(Error::InvalidParameter(
                "need 0 <= s < t <= 1 for the rate interval".into(),
            ));
        }
        Ok(Self {
            binomials: pascal_row(n + 1),
            n,
            s,
            t,
        })
    }

    /// Convenience constructor from integer fractions.
    pub fn from_fractions(n: usize, s: (i64, i64), t: (i64, i64)) -> Result<Self> {
        let frac = |(num, den): (i64, i64)| -> Result<BigRational> {
            if den == 0 {
                return Err(Error::InvalidParameter("zero denominator".into()));
            }
            Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
        };
        Self::new(n, frac(s)?, frac(t)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Antiderivative of the integrand, evaluated exactly:
    /// `F(u) = (1/(n+1)) * sum_{j=k+1}^{n+1} C(n+1, j) u^j (1-u)^{n+1-j}`,
    /// so that `integral_s^t C(n,k) x^k (1-x)^{n-k} dx = F(t) - F(s)`.
    fn antiderivative(&self, k: usize, u: &BigRational) -> BigRational {
        let n1 = self.n + 1;
        let one_minus = BigRational::one() - u;
        let mut u_pows = Vec::with_capacity(n1 + 1);
        let mut q_pows = Vec::with_capacity(n1 + 1);
        u_pows.push(BigRational::one());
        q_pows.push(BigRational::one());
        for i in 1..=n1 {
            let up = &u_pows[i - 1] * u;
            u_pows.push(up);
            let qp = &q_pows[i - 1] * &one_minus;
            q_pows.push(qp);
        }
        let mut sum = BigRational::zero();
        for j in (k + 1)..=n1 {
            sum += BigRational::from(self.binomials[j].clone()) * &u_pows[j] * &q_pows[n1 - j];
        }
        sum / BigRational::from(BigInt::from(n1))
    }

    /// Exact probability `Pr[X = k]`, the average of the binomial pmf over
    /// the rate interval.
    pub fn pmf(&self, k: usize) -> Result<BigRational> {
        if k > self.n {
            return Err(Error::OutOfDomain {
                index: k,
                domain: self.n,
            });
        }
        let width = &self.t - &self.s;
        Ok((self.antiderivative(k, &self.t) - self.antiderivative(k, &self.s)) / width)
    }

    /// The anti-concentration bound `1/((t - s)(n + 1))` every point mass is
    /// dominated by.
    pub fn anticoncentration_bound(&self) -> BigRational {
        let width = &self.t - &self.s;
        BigRational::one() / (width * BigRational::from(BigInt::from(self.n + 1)))
    }

    /// All point masses at once. The antiderivative at `k` is a suffix sum of
    /// one shared term table, so the whole pmf costs the same as a few single
    /// evaluations.
    pub fn pmf_all(&self) -> Vec<BigRational> {
        let n1 = self.n + 1;
        let term = |u: &BigRational| -> Vec<BigRational> {
            let one_minus = BigRational::one() - u;
            let mut u_pows = vec![BigRational::one()];
            let mut q_pows = vec![BigRational::one()];
            for i in 1..=n1 {
                let up = &u_pows[i - 1] * u;
                u_pows.push(up);
                let qp = &q_pows[i - 1] * &one_minus;
                q_pows.push(qp);
            }
            (0..=n1)
                .map(|j| {
                    BigRational::from(self.binomials[j].clone()) * &u_pows[j] * &q_pows[n1 - j]
                })
                .collect()
        };
        let top = term(&self.t);
        let bot = term(&self.s);
        let scale = (&self.t - &self.s) * BigRational::from(BigInt::from(n1));
        // pmf(k) = sum_{j = k+1}^{n+1} (top_j - bot_j) / scale: suffix sums.
        let mut suffix = BigRational::zero();
        let mut out = vec![BigRational::zero(); self.n + 1];
        for j in (1..=n1).rev() {
            suffix += &top[j] - &bot[j];
            if j >= 1 && j - 1 <= self.n {
                out[j - 1] = &suffix / &scale;
            }
        }
        out
    }

    /// Largest point mass and where it is attained.
    pub fn max_pmf(&self) -> Result<(usize, BigRational)> {
        let all = self.pmf_all();
        let (best_k, best) = all
            .into_iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.cmp(b))
            .expect("pmf non-empty");
        Ok((best_k, best))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn unit_interval_examples() {
        // n=1 on [0,1]: Pr[X=0] = integral of (1-x) = 1/2.
        let cb = CompoundBinomial::from_fractions(1, (0, 1), (1, 1)).unwrap();
        assert_eq!(cb.pmf(0).unwrap(), rational(1, 2));
        assert_eq!(cb.pmf(1).unwrap(), rational(1, 2));

        // n=2 on [0,1]: the Beta integral makes every mass 1/3, attaining the
        // bound with equality.
        let cb = CompoundBinomial::from_fractions(2, (0, 1), (1, 1)).unwrap();
        for k in 0..=2 {
            assert_eq!(cb.pmf(k).unwrap(), rational(1, 3));
        }
        assert_eq!(cb.anticoncentration_bound(), rational(1, 3));
    }

    #[test]
    fn point_mass_at_zero_trials() {
        let cb = CompoundBinomial::from_fractions(0, (0, 1), (1, 1)).unwrap();
        assert_eq!(cb.pmf(0).unwrap(), rational(1, 1));
    }

    #[test]
    fn narrow_interval_bound_strict() {
        // n=10 on [1/8, 1/4]: bound 8/11, exact max strictly below it.
        let cb = CompoundBinomial::from_fractions(10, (1, 8), (1, 4)).unwrap();
        assert_eq!(cb.anticoncentration_bound(), rational(8, 11));
        let (_, max) = cb.max_pmf().unwrap();
        assert!(max < rational(8, 11));
    }

    #[test]
    fn pmf_sums_to_one_exactly() {
        for (n, s, t) in [
            (1, (0, 1), (1, 1)),
            (7, (1, 3), (2, 3)),
            (40, (1, 10), (9, 10)),
            (113, (3, 64), (5, 32)),
            (200, (1, 2), (63, 64)),
        ] {
            let cb = CompoundBinomial::from_fractions(n, s, t).unwrap();
            let total: BigRational = (0..=n).map(|k| cb.pmf(k).unwrap()).sum();
            assert_eq!(total, BigRational::one(), "n={n}");
        }
    }

    #[test]
    fn pmf_all_agrees_with_single_evaluations() {
        for (n, s, t) in [
            (6, (0, 1), (1, 2)),
            (25, (1, 7), (6, 7)),
            (12, (0, 1), (1, 1)),
        ] {
            let cb = CompoundBinomial::from_fractions(n, s, t).unwrap();
            for (k, mass) in cb.pmf_all().iter().enumerate() {
                assert_eq!(mass, &cb.pmf(k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bound_holds_everywhere() {
        for (n, s, t) in [
            (5, (0, 1), (1, 2)),
            (31, (1, 7), (6, 7)),
            (50, (2, 9), (1, 3)),
        ] {
            let cb = CompoundBinomial::from_fractions(n, s, t).unwrap();
            let bound = cb.anticoncentration_bound();
            for k in 0..=n {
                assert!(cb.pmf(k).unwrap() <= bound, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn invalid_intervals_rejected() {
        assert!(CompoundBinomial::from_fractions(3, (1, 2), (1, 2)).is_err());
        assert!(CompoundBinomial::from_fractions(3, (3, 4), (1, 2)).is_err());
        assert!(CompoundBinomial::from_fractions(3, (0, 1), (5, 4)).is_err());
        assert!(CompoundBinomial::from_fractions(3, (-1, 4), (1, 2)).is_err());
    }

    #[test]
    fn out_of_range_k() {
        let cb = CompoundBinomial::from_fractions(4, (0, 1), (1, 1)).unwrap();
        assert!(cb.pmf(5).is_err());
    }
}
