//! Geometric subcubes of query space and per-subcube good-point statistics,
//! the counting objects of the packing arguments.

use crate::analysis::goodsets::GoodnessTable;
use crate::error::{Error, Result};

/// The derived constants of the counting arguments, all pinned to their
/// source formulas.
#[derive(Debug, Clone, Copy)]
pub struct AnalysisConstants {
    pub q: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub m: usize,
    /// Gap stretch factor: `4 ln(q/eps)` in general, `4 ln(1/eps)` for the
    /// dedicated 2-query process.
    pub c: f64,
    /// Point-mass constant of the 2-query process: `64 / delta^2`.
    pub c_prime: f64,
    /// Good-fraction constant: `eps / (256 c^2 / delta)^q`.
    pub gamma: f64,
    /// Adversarial point-mass constant: `(256 / delta)^q`.
    pub eta: f64,
    /// Number of gap scales: `ceil(log_c(2m))`.
    pub t: usize,
    /// Number of dyadic scales: `ceil(log2(2m))`.
    pub l0: usize,
}

impl AnalysisConstants {
    pub fn new(q: usize, epsilon: f64, delta: f64, m: usize) -> Result<Self> {
        if q < 1 || m < 1 {
            return Err(Error::InvalidParameter("need q >= 1 and m >= 1".into()));
        }
        if !(epsilon > 0.0 && epsilon <= 0.5) || !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(
                "need epsilon in (0, 1/2] and delta in (0, 1]".into(),
            ));
        }
        let c = if q == 2 {
            4.0 * (1.0 / epsilon).ln()
        } else {
            4.0 * (q as f64 / epsilon).ln()
        };
        if c <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "gap factor c = {c} must exceed 1; epsilon too large"
            )));
        }
        let c_prime = 64.0 / (delta * delta);
        let gamma = epsilon / (256.0 * c * c / delta).powi(q as i32);
        let eta = (256.0 / delta).powi(q as i32);
        let t = ((2.0 * m as f64).ln() / c.ln()).ceil() as usize;
        let l0 = (usize::BITS - (2 * m - 1).leading_zeros()) as usize;
        Ok(Self {
            q,
            epsilon,
            delta,
            m,
            c,
            c_prime,
            gamma,
            eta,
            t: t.max(1),
            l0,
        })
    }

    /// Integer gap range `[lo, hi)` of scale `j >= 1`: the integers `d` with
    /// `c^{j-1} <= d < c^j`, realized through the rounded break table so that
    /// bucketing and counting agree exactly.
    pub fn gap_range(&self, j: usize) -> (u64, u64) {
        (self.gap_break(j - 1), self.gap_break(j))
    }

    fn gap_break(&self, j: usize) -> u64 {
        // ceil(c^j), via repeated multiplication; j is small (<= t).
        let mut v = 1.0f64;
        for _ in 0..j {
            v *= self.c;
        }
        v.ceil() as u64
    }

    /// Scale index of a gap: the `j` with `gap_range(j)` containing `d`.
    pub fn gap_scale(&self, d: u64) -> usize {
        let mut j = 1;
        while self.gap_break(j) <= d {
            j += 1;
        }
        j
    }
}

/// One subcube `P_J = [2m] x prod_l [c^{j_l - 1}, c^{j_l})` with its good
/// counts per message index.
#[derive(Debug, Clone)]
pub struct SubcubeRecord {
    pub scales: Vec<usize>,
    pub gap_ranges: Vec<(u64, u64)>,
    /// `|P_J|`: first index count times integer gap counts.
    pub size: u64,
    /// `|P_J ∩ Good_i|` per message index.
    pub good_counts: Vec<u64>,
}

impl SubcubeRecord {
    pub fn fraction(&self, i: usize) -> f64 {
        if self.size == 0 {
            0.0
        } else {
            self.good_counts[i] as f64 / self.size as f64
        }
    }
}

/// All subcube statistics of a table: per-subcube fractions, the best
/// subcube per index, and for q >= 3 the dyadic groupings `I_tau` with their
/// maxima `beta_{tau,i}`.
#[derive(Debug, Clone)]
pub struct SubcubeStats {
    pub constants: AnalysisConstants,
    pub subcubes: Vec<SubcubeRecord>,
    /// Per index: position into `subcubes` of the best fraction, when any
    /// tuple is good at all.
    pub best_per_index: Vec<Option<usize>>,
    /// For q >= 3: `beta_{tau,i}` indexed `[tau-1][i]`.
    pub beta: Vec<Vec<f64>>,
}

pub fn subcube_stats(table: &GoodnessTable, constants: &AnalysisConstants) -> SubcubeStats {
    let q = table.q();
    let n = table.n();
    let universe = table.universe() as u64;
    let gaps = q - 1;

    // Enumerate scale vectors J in [1, t]^{q-1}.
    let mut subcubes: Vec<SubcubeRecord> = Vec::new();
    let mut index_of: std::collections::HashMap<Vec<usize>, usize> =
        std::collections::HashMap::new();
    let mut scales = vec![1usize; gaps];
    loop {
        let gap_ranges: Vec<(u64, u64)> = scales.iter().map(|&j| constants.gap_range(j)).collect();
        let size = gap_ranges
            .iter()
            .fold(universe, |acc, &(lo, hi)| acc * hi.saturating_sub(lo));
        index_of.insert(scales.clone(), subcubes.len());
        subcubes.push(SubcubeRecord {
            scales: scales.clone(),
            gap_ranges,
            size,
            good_counts: vec![0; n],
        });
        // Advance odometer.
        let mut pos = 0;
        loop {
            if pos == gaps {
                break;
            }
            scales[pos] += 1;
            if scales[pos] <= constants.t {
                break;
            }
            scales[pos] = 1;
            pos += 1;
        }
        if pos == gaps {
            break;
        }
        if gaps == 0 {
            break;
        }
    }

    // Count good tuples per subcube.
    for i in 0..n {
        for tuple in table.good_tuples(i) {
            let scales: Vec<usize> = tuple
                .gaps()
                .iter()
                .map(|&d| constants.gap_scale(d as u64))
                .collect();
            if scales.iter().any(|&j| j > constants.t) {
                continue;
            }
            if let Some(&idx) = index_of.get(&scales) {
                subcubes[idx].good_counts[i] += 1;
            }
        }
    }

    let best_per_index = (0..n)
        .map(|i| {
            subcubes
                .iter()
                .enumerate()
                .filter(|(_, sc)| sc.good_counts[i] > 0 && sc.size > 0)
                .max_by(|(_, a), (_, b)| {
                    a.fraction(i)
                        .partial_cmp(&b.fraction(i))
                        .expect("fractions are finite")
                })
                .map(|(idx, _)| idx)
        })
        .collect();

    // I_tau groupings exist only when there is a second gap to bucket.
    let beta = if q >= 3 {
        (1..=constants.l0)
            .map(|tau| {
                let lo = (1u64 << (tau - 1)) as f64;
                let hi = constants.c * constants.c * (1u64 << tau) as f64;
                let members: Vec<&SubcubeRecord> = subcubes
                    .iter()
                    .filter(|sc| {
                        let cj2 = {
                            let mut v = 1.0f64;
                            for _ in 0..sc.scales[1] {
                                v *= constants.c;
                            }
                            v
                        };
                        cj2 >= lo && cj2 <= hi
                    })
                    .collect();
                (0..n)
                    .map(|i| {
                        members
                            .iter()
                            .map(|sc| sc.fraction(i))
                            .fold(0.0f64, f64::max)
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    SubcubeStats {
        constants: *constants,
        subcubes,
        best_per_index,
        beta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::entropy::binary_entropy;
    use crate::analysis::goodsets::good_sets_bruteforce;
    use crate::codes::hadamard_encode;

    #[test]
    fn constants_formulas() {
        let c = AnalysisConstants::new(2, 0.1, 0.2, 1 << 14).unwrap();
        assert!((c.c - 4.0 * 10f64.ln()).abs() < 1e-12);
        assert!((c.c_prime - 1600.0).abs() < 1e-9);
        assert!((c.eta - (256.0 / 0.2) * (256.0 / 0.2)).abs() < 1e-6);
        assert_eq!(c.l0, 15);
        let c3 = AnalysisConstants::new(3, 0.1, 0.2, 1 << 14).unwrap();
        assert!((c3.c - 4.0 * 30f64.ln()).abs() < 1e-12);
        let g = 0.1 / (256.0 * c3.c * c3.c / 0.2).powi(3);
        assert!((c3.gamma - g).abs() < g * 1e-12);
    }

    #[test]
    fn gap_scales_partition() {
        let c = AnalysisConstants::new(2, 0.25, 0.1, 64).unwrap();
        // Every integer gap in [1, 2m] falls in exactly the bucket whose
        // range contains it.
        for d in 1..=128u64 {
            let j = c.gap_scale(d);
            let (lo, hi) = c.gap_range(j);
            assert!(lo <= d && d < hi, "d={d} j={j} range=({lo},{hi})");
        }
    }

    #[test]
    fn fractions_on_hadamard() {
        let table = good_sets_bruteforce(hadamard_encode, 3, 2, 0.5).unwrap();
        let constants = AnalysisConstants::new(2, 0.5, 0.1, table.m()).unwrap();
        let stats = subcube_stats(&table, &constants);
        // Total good counts across subcubes equal the table's counts.
        for i in 0..3 {
            let total: u64 = stats.subcubes.iter().map(|sc| sc.good_counts[i]).sum();
            assert_eq!(total, table.good_count(i) as u64);
            assert!(stats.best_per_index[i].is_some());
            let best = &stats.subcubes[stats.best_per_index[i].unwrap()];
            assert!(best.fraction(i) > 0.0);
        }
        // Fractions are rational with denominator |P_J|, so bounded by 1.
        for sc in &stats.subcubes {
            for i in 0..3 {
                assert!(sc.fraction(i) <= 1.0);
                assert!(sc.good_counts[i] <= sc.size);
            }
        }
        // Counting inequality: sum_i |P_J ∩ Good_i| <= |P_J| q / (1 - H(1/2 + eps/4)).
        let cap = 2.0 / (1.0 - binary_entropy(0.5 + 0.5 / 4.0));
        for sc in &stats.subcubes {
            let total: u64 = (0..3).map(|i| sc.good_counts[i]).sum();
            assert!(total as f64 <= sc.size as f64 * cap);
        }
    }

    #[test]
    fn degenerate_tables() {
        // No good tuples: fractions all zero, no best subcube.
        let table =
            good_sets_bruteforce(|x| crate::bits::BitWord::zeros(x.len()), 2, 2, 0.1).unwrap();
        let constants = AnalysisConstants::new(2, 0.1, 0.1, table.m()).unwrap();
        let stats = subcube_stats(&table, &constants);
        for i in 0..2 {
            assert!(stats.best_per_index[i].is_none());
            for sc in &stats.subcubes {
                assert_eq!(sc.fraction(i), 0.0);
            }
        }
    }
}
