//! Binomial interval estimates for the Monte Carlo suites.

/// Wilson score interval at confidence `z` (1.96 for 95%).
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// A Monte Carlo proportion with its 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, trials, 1.96);
        Estimate {
            successes,
            trials,
            estimate: if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            },
            ci_low,
            ci_high,
        }
    }

    /// Half-width of the interval, the `CI` term in acceptance margins.
    pub fn half_width(&self) -> f64 {
        (self.ci_high - self.ci_low) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_basic_shape() {
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(hi - lo < 0.25);
        let (lo, hi) = wilson_interval(0, 100, 1.96);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.06);
        let (lo, hi) = wilson_interval(100, 100, 1.96);
        assert!(lo > 0.94);
        assert!(hi > 0.9999);
    }

    #[test]
    fn estimate_wraps_counts() {
        let e = Estimate::from_counts(750, 1000);
        assert_eq!(e.estimate, 0.75);
        assert!(e.ci_low < 0.75 && e.ci_high > 0.75);
        assert!(e.half_width() < 0.03);
    }
}
