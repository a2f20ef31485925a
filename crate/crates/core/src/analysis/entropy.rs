//! Binary entropy and the quadratic upper bound used by the information
//! counting arguments.

use crate::error::{Error, Result};

/// `H(p) = -p log2 p - (1-p) log2 (1-p)`, with the endpoint convention
/// `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&p),
        "entropy argument out of [0,1]: {p}"
    );
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// The bound `H(1/2 + x) <= 1 - (2 (ln 2)^2 / 3) x^2` for `0 < x < 1/2`.
pub fn entropy_gap_bound(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "entropy gap bound needs 0 < x < 1/2, got {x}"
        )));
    }
    let ln2 = std::f64::consts::LN_2;
    Ok(1.0 - (2.0 * ln2 * ln2 / 3.0) * x * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.75) - 0.811278).abs() < 1e-6);
    }

    #[test]
    fn bound_example_and_limit() {
        let b = entropy_gap_bound(0.25).unwrap();
        assert!((b - 0.97998).abs() < 1e-4);
        assert!(binary_entropy(0.75) <= b);
        // x -> 0: the bound tends to 1 = H(1/2).
        assert!((entropy_gap_bound(1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert!(entropy_gap_bound(0.0).is_err());
        assert!(entropy_gap_bound(0.5).is_err());
    }

    #[test]
    fn bound_dominates_on_grid() {
        let grid = 10_000;
        for k in 1..grid {
            let x = 0.5 * k as f64 / grid as f64;
            assert!(
                binary_entropy(0.5 + x) <= entropy_gap_bound(x).unwrap(),
                "violated at x = {x}"
            );
        }
    }
}
