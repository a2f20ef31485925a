//! Query profiles: the per-index distribution of a non-adaptive decoder's
//! queries, and the dyadic gap marginals the adversarial channel is tuned to.

use super::SpacedHadamardCode;
use crate::error::{Error, Result};
use crate::query::QueryTuple;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A finitely supported distribution over query tuples.
#[derive(Debug, Clone)]
pub struct QueryDistribution {
    support: Vec<QueryTuple>,
    cumulative: Vec<f64>,
}

impl QueryDistribution {
    pub fn uniform(support: Vec<QueryTuple>) -> Result<Self> {
        let n = support.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty query support".into()));
        }
        let weights = vec![1.0 / n as f64; n];
        Self::weighted(support, &weights)
    }

    pub fn weighted(support: Vec<QueryTuple>, weights: &[f64]) -> Result<Self> {
        if support.is_empty() || support.len() != weights.len() {
            return Err(Error::InvalidParameter(
                "support and weights must be non-empty and equal length".into(),
            ));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidParameter("negative weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        let mut acc = 0.0;
        let cumulative = weights
            .iter()
            .map(|w| {
                acc += w / total;
                acc
            })
            .collect();
        Ok(Self {
            support,
            cumulative,
        })
    }

    pub fn support(&self) -> &[QueryTuple] {
        &self.support
    }

    pub fn weight(&self, idx: usize) -> f64 {
        let prev = if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1]
        };
        self.cumulative[idx] - prev
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> &QueryTuple {
        let u = rng.random::<f64>();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        &self.support[idx.min(self.support.len() - 1)]
    }
}

/// Per message index: the decoder's query distribution, with derived dyadic
/// marginals over a designated gap.
#[derive(Debug, Clone)]
pub struct DecoderQueryProfile {
    q: usize,
    per_index: Vec<QueryDistribution>,
}

impl DecoderQueryProfile {
    pub fn new(per_index: Vec<QueryDistribution>) -> Result<Self> {
        let Some(first) = per_index.first() else {
            return Err(Error::InvalidParameter("profile needs >= 1 index".into()));
        };
        let q = first.support()[0].arity();
        for dist in &per_index {
            if dist.support().iter().any(|t| t.arity() != q) {
                return Err(Error::InvalidParameter(
                    "all query tuples must share one arity".into(),
                ));
            }
        }
        Ok(Self { q, per_index })
    }

    /// The profile of the spaced Hadamard decoder: for index `i`, uniform
    /// over the pairs `(a + 1, gap 2^{t i})`.
    pub fn for_spaced_hadamard(code: &SpacedHadamardCode) -> Self {
        let per_index = (0..code.n())
            .map(|i| {
                let gap = 1usize << (code.t() * i);
                let tuples = (0..code.m() - gap)
                    .map(|a| QueryTuple::new(a + 1, vec![gap]).expect("valid pair"))
                    .collect();
                QueryDistribution::uniform(tuples).expect("non-empty support")
            })
            .collect();
        Self::new(per_index).expect("consistent arity")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.per_index.len()
    }

    pub fn distribution(&self, i: usize) -> &QueryDistribution {
        &self.per_index[i]
    }

    /// Which gap the dyadic marginals describe: the second gap for q >= 3
    /// (the one the adversarial process targets), otherwise the only gap.
    fn marginal_gap_index(&self) -> usize {
        if self.q >= 3 {
            1
        } else {
            0
        }
    }

    /// JSON record: per index, a list of `{"positions": [...], "weight": w}`.
    pub fn to_json(&self) -> String {
        let per_index: Vec<Vec<serde_json::Value>> = self
            .per_index
            .iter()
            .map(|dist| {
                dist.support()
                    .iter()
                    .enumerate()
                    .map(|(idx, tuple)| {
                        serde_json::json!({
                            "positions": tuple.positions(),
                            "weight": dist.weight(idx),
                        })
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "per_index": per_index }))
            .expect("profile serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("profile: {e}")))?;
        let per_index = value
            .get("per_index")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("profile: missing per_index array".into()))?;
        let dists = per_index
            .iter()
            .map(|entries| {
                let entries = entries
                    .as_array()
                    .ok_or_else(|| Error::Parse("profile: per_index entries".into()))?;
                let mut support = Vec::with_capacity(entries.len());
                let mut weights = Vec::with_capacity(entries.len());
                for e in entries {
                    let positions: Vec<usize> = e
                        .get("positions")
                        .and_then(|v| v.as_array())
                        .ok_or_else(|| Error::Parse("profile: positions".into()))?
                        .iter()
                        .map(|p| {
                            p.as_u64()
                                .map(|p| p as usize)
                                .ok_or_else(|| Error::Parse("profile: position".into()))
                        })
                        .collect::<Result<_>>()?;
                    let weight = e
                        .get("weight")
                        .and_then(serde_json::Value::as_f64)
                        .ok_or_else(|| Error::Parse("profile: weight".into()))?;
                    support.push(QueryTuple::from_positions(&positions)?);
                    weights.push(weight);
                }
                QueryDistribution::weighted(support, &weights)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dists)
    }

    /// `p_{tau,i}` for `tau = 1..=buckets`: the probability that the
    /// designated gap `d` satisfies `2^{tau-1} <= d < 2^tau`.
    pub fn tau_marginals(&self, i: usize, buckets: usize) -> Vec<f64> {
        let gap_idx = self.marginal_gap_index();
        let mut out = vec![0.0; buckets];
        let dist = &self.per_index[i];
        for (idx, tuple) in dist.support().iter().enumerate() {
            let d = tuple.gaps()[gap_idx];
            let tau = usize::BITS as usize - d.leading_zeros() as usize; // 2^{tau-1} <= d < 2^tau
            let slot = tau.min(buckets);
            out[slot - 1] += dist.weight(idx);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;

    #[test]
    fn marginals_sum_to_one() {
        let code = SpacedHadamardCode::new(2, 3).unwrap();
        let profile = DecoderQueryProfile::for_spaced_hadamard(&code);
        assert_eq!(profile.q(), 2);
        for i in 0..2 {
            let marg = profile.tau_marginals(i, 8);
            let total: f64 = marg.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
        // Index i queries gap 2^{t i} exactly, so its bucket is tau = t*i + 1.
        let marg = profile.tau_marginals(1, 8);
        assert!((marg[3] - 1.0).abs() < 1e-12, "{marg:?}");
    }

    #[test]
    fn sampling_respects_weights() {
        let tuples = vec![
            QueryTuple::new(1, vec![1]).unwrap(),
            QueryTuple::new(2, vec![4]).unwrap(),
        ];
        let dist = QueryDistribution::weighted(tuples, &[0.25, 0.75]).unwrap();
        let mut rng = seed_rng(1);
        let mut second = 0u32;
        for _ in 0..10_000 {
            if dist.sample(&mut rng).first() == 2 {
                second += 1;
            }
        }
        assert!((f64::from(second) / 10_000.0 - 0.75).abs() < 0.02);
    }

    #[test]
    fn unnormalized_weights_rejected() {
        let tuples = vec![QueryTuple::new(1, vec![1]).unwrap()];
        assert!(QueryDistribution::weighted(tuples, &[0.5]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let code = SpacedHadamardCode::new(2, 2).unwrap();
        let profile = DecoderQueryProfile::for_spaced_hadamard(&code);
        let parsed = DecoderQueryProfile::from_json(&profile.to_json()).unwrap();
        assert_eq!(parsed.q(), profile.q());
        assert_eq!(parsed.n(), profile.n());
        for i in 0..profile.n() {
            assert_eq!(
                parsed.distribution(i).support(),
                profile.distribution(i).support()
            );
        }
    }
}
