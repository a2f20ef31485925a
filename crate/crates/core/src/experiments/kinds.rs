//! The experiment implementations behind the harness.

use super::{Assertion, CatalogEntry, CsvRow, ExperimentConfig, RunReport};
use crate::analysis::{
    binary_entropy, entropy_gap_bound, first_far_bit, good_sets_bruteforce, hadamard_attack,
    hitting_probability, hq_bound_check, induced_distribution, near_pair_count, CompoundBinomial,
    PairPartition, Streams,
};
use crate::bits::{BitWord, PadPolicy};
use crate::channels::{
    corrupt_type1, make_adversarial_spec, make_oblivious_spec, DeletionChannel, IidDeletionChannel,
    LayeredChannel, TwoQueryChannel, Type1Channel,
};
use crate::codes::{hadamard_encode, DecoderQueryProfile, SpacedHadamardCode};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vec};
use crate::quadratic::{parse_polynomial, zero_count_bruteforce, zero_probability, QuadraticPoly};
use crate::query::QueryTuple;
use crate::rng::seed_rng;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;
use std::collections::BTreeSet;

pub(super) fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            kind: "anticoncentration",
            description: "exact compound-binomial pmf vs the 1/((t-s)(n+1)) bound, zero tolerance",
            criterion: Some(1),
            default_params: json!({"max_n": 50, "intervals": 20}),
        },
        CatalogEntry {
            kind: "entropy-bound",
            description: "binary entropy vs its quadratic upper bound on a dense grid",
            criterion: None,
            default_params: json!({"grid": 10000}),
        },
        CatalogEntry {
            kind: "spaced-hadamard-type1",
            description: "exhaustive decoder success of the spaced Hadamard code under every prefix deletion",
            criterion: Some(2),
            default_params: json!({"cases": [[1,2],[2,2],[1,3],[2,3]], "delta_num": 1, "delta_den": 10}),
        },
        CatalogEntry {
            kind: "good-address-density",
            description: "exact counting of good decoder addresses, at least a 1 - 2^-t fraction",
            criterion: Some(3),
            default_params: json!({"max_tn": 20}),
        },
        CatalogEntry {
            kind: "quadratic-zero-counts",
            description: "closed-form quadratic zero counts vs brute force, exact equality",
            criterion: Some(4),
            default_params: json!({"ns": [4, 8, 12], "per_n": 1000}),
        },
        CatalogEntry {
            kind: "channel-budgets",
            description: "deletion budgets of the two-query and oblivious layered channels",
            criterion: Some(5),
            default_params: json!({"m": 100000, "delta": 0.1, "samples": 1000}),
        },
        CatalogEntry {
            kind: "induced-distribution",
            description: "point-mass and tail behavior of the induced pair distribution",
            criterion: Some(6),
            default_params: json!({"m": 16384, "delta": 0.2, "k": 4096, "ds": [64, 256], "trials": 1000000, "epsilon": 0.1}),
        },
        CatalogEntry {
            kind: "correspondence-monotonicity",
            description: "first index and gaps never shrink under any sampled channel",
            criterion: Some(7),
            default_params: json!({"m": 512, "delta": 0.2, "trials": 20000}),
        },
        CatalogEntry {
            kind: "hq-bound",
            description: "information bound on how many indices one tuple can be good for",
            criterion: Some(8),
            default_params: json!({"hadamard_ns": [2, 3, 4], "spaced": [[2,2],[1,3],[1,4]], "qs": [1, 2], "epsilons": [0.1, 0.5]}),
        },
        CatalogEntry {
            kind: "hitting-probability",
            description: "decoder hits its good set with probability at least 3eps/2 under the two-query channel",
            criterion: Some(9),
            default_params: json!({"n": 2, "t": 4, "delta": 0.05, "epsilon": 0.1, "trials": 100000}),
        },
        CatalogEntry {
            kind: "hadamard-attack",
            description: "i.i.d. deletions misalign the fixed-partition Hadamard decoder",
            criterion: Some(10),
            default_params: json!({"ns": [12, 16], "alpha": 0.1, "trials": 100000, "near_pair_max_n": 20}),
        },
        CatalogEntry {
            kind: "lcc-to-ldc",
            description: "systematicization: message recovery on information coordinates, distance preserved",
            criterion: Some(11),
            default_params: json!({"generators": 100, "n": 6, "m": 12}),
        },
        CatalogEntry {
            kind: "determinism",
            description: "identical CSV output across re-runs and worker counts",
            criterion: Some(12),
            default_params: json!({"threads_to_compare": [1, 4]}),
        },
    ]
}

fn params<T: DeserializeOwned>(config: &ExperimentConfig) -> Result<T> {
    serde_json::from_value(config.params.clone())
        .map_err(|e| Error::InvalidParameter(format!("params for {:?}: {e}", config.kind)))
}

pub(super) fn dispatch(config: &ExperimentConfig, parallel: bool) -> Result<RunReport> {
    match config.kind.as_str() {
        "anticoncentration" => anticoncentration(config),
        "entropy-bound" => entropy_bound(config),
        "spaced-hadamard-type1" => spaced_hadamard_type1(config),
        "good-address-density" => good_address_density(config),
        "quadratic-zero-counts" => quadratic_zero_counts(config),
        "channel-budgets" => channel_budgets(config),
        "induced-distribution" => induced_dist(config, parallel),
        "correspondence-monotonicity" => correspondence_monotonicity(config),
        "hq-bound" => hq_bound(config),
        "hitting-probability" => hitting(config, parallel),
        "hadamard-attack" => attack(config, parallel),
        "lcc-to-ldc" => lcc_to_ldc(config),
        "determinism" => determinism(config),
        other => Err(Error::InvalidParameter(format!("unhandled kind {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: compound anti-concentration, exact.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnticoncentrationParams {
    max_n: usize,
    intervals: usize,
}

fn anticoncentration(config: &ExperimentConfig) -> Result<RunReport> {
    let p: AnticoncentrationParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut rng = seed_rng(config.seed);

    // The unit interval first (the bound is attained there), then random
    // rational intervals.
    let mut intervals: Vec<(BigRational, BigRational)> =
        vec![(BigRational::from(BigInt::from(0)), BigRational::one())];
    while intervals.len() < p.intervals + 1 {
        let den_s = rng.random_range(2..=32u32);
        let den_t = rng.random_range(2..=32u32);
        let s = BigRational::new(
            BigInt::from(rng.random_range(0..den_s)),
            BigInt::from(den_s),
        );
        let t = BigRational::new(
            BigInt::from(rng.random_range(1..=den_t)),
            BigInt::from(den_t),
        );
        if s < t {
            intervals.push((s, t));
        }
    }

    let mut violations = 0u64;
    let mut sum_failures = 0u64;
    let mut unit_equality_failures = 0u64;
    let mut non_unit_ties = 0u64;
    let mut checked = 0u64;
    for (s, t) in &intervals {
        let is_unit = *s == BigRational::from(BigInt::from(0)) && *t == BigRational::one();
        for n in 1..=p.max_n {
            let cb = CompoundBinomial::new(n, s.clone(), t.clone())?;
            let bound = cb.anticoncentration_bound();
            let all = cb.pmf_all();
            let total: BigRational = all.iter().cloned().sum();
            if total != BigRational::one() {
                sum_failures += 1;
            }
            let max = all.iter().max().expect("non-empty pmf");
            if max > &bound {
                violations += 1;
            }
            if is_unit && all.iter().any(|mass| mass != &bound) {
                unit_equality_failures += 1;
            }
            // Off the unit interval the inequality is strict.
            if !is_unit && max == &bound {
                non_unit_ties += 1;
            }
            checked += 1;
        }
    }
    report.assertions.push(Assertion::eq_int(
        "pmf-max-above-bound-count",
        violations,
        0,
    ));
    report
        .assertions
        .push(Assertion::eq_int("pmf-sum-not-one-count", sum_failures, 0));
    report.assertions.push(Assertion::eq_int(
        "unit-interval-equality-failures",
        unit_equality_failures,
        0,
    ));
    report.assertions.push(Assertion::eq_int(
        "non-unit-interval-bound-ties",
        non_unit_ties,
        0,
    ));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("max_n={} intervals={}", p.max_n, p.intervals),
        estimate: violations as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: checked,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Entropy bound grid check (CLI `verify entropy`).

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntropyParams {
    grid: usize,
}

fn entropy_bound(config: &ExperimentConfig) -> Result<RunReport> {
    let p: EntropyParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut violations = 0u64;
    for k in 1..p.grid {
        let x = 0.5 * k as f64 / p.grid as f64;
        if binary_entropy(0.5 + x) > entropy_gap_bound(x)? {
            violations += 1;
        }
    }
    report
        .assertions
        .push(Assertion::eq_int("entropy-bound-violations", violations, 0));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("grid={}", p.grid),
        estimate: violations as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: p.grid as u64 - 1,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 2: spaced Hadamard vs Type-1 errors, exhaustive.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Type1Params {
    cases: Vec<(usize, usize)>,
    delta_num: u64,
    delta_den: u64,
}

fn spaced_hadamard_type1(config: &ExperimentConfig) -> Result<RunReport> {
    let p: Type1Params = params(config)?;
    if p.delta_den == 0 || p.delta_num > p.delta_den {
        return Err(Error::InvalidParameter(
            "delta must be a fraction in [0,1]".into(),
        ));
    }
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut rng = seed_rng(config.seed); // suffix policy is fixed bits; rng unused by corrupt

    for &(n, t) in &p.cases {
        let code = SpacedHadamardCode::new(n, t)?;
        let m = code.m();
        let e_max = (m as u64 * p.delta_num / p.delta_den) as usize;
        // threshold = 1 - delta - 2^{1-t}; success_count/range >= threshold
        // compared exactly: count * den * 2^{t-1} >= range * (den 2^{t-1} - num 2^{t-1} - den).
        let pow = 1u128 << (t - 1);
        let thr_num =
            (p.delta_den as u128) * pow - (p.delta_num as u128) * pow - p.delta_den as u128;
        let mut min_fraction = 1.0f64;
        let mut worst = String::new();
        let mut fails = 0u64;
        let mut cells = 0u64;
        for mask in 0..1u64 << n {
            let x = BitWord::from_mask(mask, n);
            let y = code.encode(&x);
            for i in 0..n {
                let gap = 1usize << (t * i);
                let range = m - gap;
                for e in 0..=e_max {
                    for fill in [false, true] {
                        let sample = corrupt_type1(&y, e, PadPolicy::Fixed(fill), &mut rng)?;
                        let mut count = 0u64;
                        for a in 0..range {
                            let out =
                                sample.corrupted.bit(a + 1) ^ sample.corrupted.bit(a + gap + 1);
                            if out == x.bit(i + 1) {
                                count += 1;
                            }
                        }
                        cells += 1;
                        let ok = (count as u128) * (p.delta_den as u128) * pow
                            >= (range as u128) * thr_num;
                        if !ok {
                            fails += 1;
                        }
                        let fraction = count as f64 / range as f64;
                        if fraction < min_fraction {
                            min_fraction = fraction;
                            worst = format!("x={mask:0n$b} i={i} e={e} fill={}", u8::from(fill));
                        }
                    }
                }
            }
        }
        let threshold = 1.0 - p.delta_num as f64 / p.delta_den as f64 - 2.0 / (1u64 << t) as f64;
        report.assertions.push(Assertion::eq_int(
            format!("type1-below-threshold-cells-n{n}-t{t}"),
            fails,
            0,
        ));
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!(
                "n={n} t={t} delta={}/{} threshold={threshold:.6} worst={worst}",
                p.delta_num, p.delta_den
            ),
            estimate: min_fraction,
            ci_low: min_fraction,
            ci_high: min_fraction,
            trials: cells,
            seed: config.seed,
        });
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 3: good-address density, exact counting.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GoodAddressParams {
    max_tn: usize,
}

fn good_address_density(config: &ExperimentConfig) -> Result<RunReport> {
    let p: GoodAddressParams = params(config)?;
    if p.max_tn > 26 {
        return Err(Error::SizeLimit(
            "good-address-density supports tn <= 26".into(),
        ));
    }
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut fails = 0u64;
    let mut combos = 0u64;
    let mut min_ratio = 1.0f64;
    for t in 1..=p.max_tn {
        for n in 1..=p.max_tn / t {
            let total = 1u64 << (t * n);
            for i in 0..n {
                let top = total - (1u64 << (t * i));
                let block_mask = ((1u64 << t) - 1) << (t * i);
                let mut good = 0u64;
                for a in 0..top {
                    if a & block_mask != block_mask {
                        good += 1;
                    }
                }
                combos += 1;
                // good/top >= 1 - 2^-t, exactly.
                if good * (1u64 << t) < top * ((1u64 << t) - 1) {
                    fails += 1;
                }
                let ratio = good as f64 / top as f64 / (1.0 - 1.0 / (1u64 << t) as f64);
                min_ratio = min_ratio.min(ratio);
            }
        }
    }
    report
        .assertions
        .push(Assertion::eq_int("good-density-violations", fails, 0));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("max_tn={} min_ratio_vs_bound={min_ratio}", p.max_tn),
        estimate: fails as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: combos,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 4: quadratic zero counts, exact equality.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadraticParams {
    ns: Vec<usize>,
    per_n: usize,
}

fn quadratic_zero_counts(config: &ExperimentConfig) -> Result<RunReport> {
    let p: QuadraticParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut mismatches = 0u64;
    let mut total = 0u64;
    for &n in &p.ns {
        let mut rng = seed_rng(config.seed ^ n as u64);
        for _ in 0..p.per_n {
            let poly = QuadraticPoly::random(n, &mut rng);
            let closed = zero_probability(&poly) * BigRational::from(BigInt::from(1u64 << n));
            let brute = BigRational::from(BigInt::from(zero_count_bruteforce(&poly)?));
            total += 1;
            if closed != brute {
                mismatches += 1;
            }
        }
    }
    report
        .assertions
        .push(Assertion::eq_int("zero-count-mismatches", mismatches, 0));

    // The flagged counterexample has exactly 4 zeros.
    let counterexample = parse_polynomial("x1*x2 + x1*x3 + x2", Some(3))?;
    let zeros = zero_count_bruteforce(&counterexample)?;
    report
        .assertions
        .push(Assertion::eq_int("counterexample-zeros", zeros, 4));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("ns={:?} per_n={}", p.ns, p.per_n),
        estimate: mismatches as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: total,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 5: channel deletion budgets.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetParams {
    m: usize,
    delta: f64,
    samples: u64,
}

fn channel_budgets(config: &ExperimentConfig) -> Result<RunReport> {
    let p: BudgetParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let two_query = TwoQueryChannel::new(p.m, p.delta)?;
    let oblivious = LayeredChannel::new(make_oblivious_spec(p.m, p.delta)?);
    let channels: [(&str, &dyn DeletionChannel); 2] =
        [("two-query", &two_query), ("oblivious", &oblivious)];
    for (name, channel) in channels {
        let streams = Streams::new(config.seed, &format!("budget-{name}"));
        let mut prefix_violations = 0u64;
        let mut total_violations = 0u64;
        let mut prefix_sum = 0u64;
        for trial in 0..p.samples {
            let d = channel.sample(&mut streams.rng(trial));
            let prefix = d.prefix_count(p.m);
            prefix_sum += prefix as u64;
            if prefix as f64 > p.delta * p.m as f64 {
                prefix_violations += 1;
            }
            if d.len() > p.m {
                total_violations += 1;
            }
        }
        report.assertions.push(Assertion::eq_int(
            format!("{name}-prefix-budget-violations"),
            prefix_violations,
            0,
        ));
        report.assertions.push(Assertion::eq_int(
            format!("{name}-total-budget-violations"),
            total_violations,
            0,
        ));
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!("channel={name} m={} delta={}", p.m, p.delta),
            estimate: prefix_sum as f64 / (p.samples as f64 * p.m as f64),
            ci_low: 0.0,
            ci_high: 0.0,
            trials: p.samples,
            seed: config.seed,
        });
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 6: induced-distribution scaling.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InducedParams {
    m: usize,
    delta: f64,
    k: usize,
    ds: Vec<usize>,
    trials: u64,
    epsilon: f64,
}

fn induced_dist(config: &ExperimentConfig, parallel: bool) -> Result<RunReport> {
    let p: InducedParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let channel = TwoQueryChannel::new(p.m, p.delta)?;
    let c_prime = 64.0 / (p.delta * p.delta);
    let tail_factor = 4.0 * (1.0 / p.epsilon).ln();
    let mut masses: Vec<(usize, f64)> = Vec::new();
    for &d in &p.ds {
        let query = QueryTuple::new(p.k, vec![d])?;
        let streams = Streams::new(config.seed, &format!("induced-d{d}"));
        let hist = induced_distribution(&query, &channel, p.trials, &streams, parallel);
        let (mass, _) = hist.max_point_mass();
        let bound = 2.0 * c_prime / (p.m as f64 * d as f64);
        report
            .assertions
            .push(Assertion::le(format!("max-point-mass-d{d}"), mass, bound));
        let tail = hist.tail_fraction(&query, 0, tail_factor);
        let tail_ci = crate::analysis::wilson_interval(
            (tail * p.trials as f64).round() as u64,
            p.trials,
            1.96,
        );
        report.assertions.push(
            Assertion::le(
                format!("tail-beyond-{tail_factor:.3}d-d{d}"),
                tail,
                p.epsilon,
            )
            .with_ci(tail_ci),
        );
        report.assertions.push(Assertion::eq_int(
            format!("monotonicity-violations-d{d}"),
            hist.monotonicity_violations,
            0,
        ));
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!("m={} delta={} k={} d={d} max_mass", p.m, p.delta, p.k),
            estimate: mass,
            ci_low: mass,
            ci_high: mass,
            trials: p.trials,
            seed: config.seed,
        });
        masses.push((d, mass));
    }
    // Mass halves per doubling of d, within 30%.
    masses.sort_by_key(|&(d, _)| d);
    for w in masses.windows(2) {
        let (d1, m1) = w[0];
        let (d2, m2) = w[1];
        let doublings = (d2 as f64 / d1 as f64).log2();
        let factor = (m1 / m2).powf(1.0 / doublings);
        report.assertions.push(Assertion::is_true(
            format!("halving-per-doubling-d{d1}-to-d{d2} (factor {factor:.3})"),
            (factor - 2.0).abs() <= 0.6,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 7: correspondence monotonicity across all channels.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonotonicityParams {
    m: usize,
    delta: f64,
    trials: u64,
}

fn correspondence_monotonicity(config: &ExperimentConfig) -> Result<RunReport> {
    let p: MonotonicityParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let two_query = TwoQueryChannel::new(p.m, p.delta)?;
    let oblivious = LayeredChannel::new(make_oblivious_spec(p.m, p.delta)?);
    let spaced = SpacedHadamardCode::new(2, 2)?;
    let profile = DecoderQueryProfile::for_spaced_hadamard(&spaced);
    let adversarial = LayeredChannel::new(make_adversarial_spec(spaced.m(), p.delta, &profile, 1)?);
    let iid = IidDeletionChannel::new(2 * p.m, 0.2)?;
    let type1 = Type1Channel::new(p.m, p.m / 10)?;
    let channels: [(&str, &dyn DeletionChannel); 5] = [
        ("two-query", &two_query),
        ("oblivious", &oblivious),
        ("adversarial", &adversarial),
        ("iid", &iid),
        ("type1", &type1),
    ];
    let mut violations = 0u64;
    let mut checked = 0u64;
    for (name, channel) in channels {
        let streams = Streams::new(config.seed, &format!("mono-{name}"));
        let half = channel.truncation_len();
        for trial in 0..p.trials / 5 {
            let mut rng = streams.rng(trial);
            let d = channel.sample(&mut rng);
            // A random query inside [half], arity 1..=3.
            let q = rng.random_range(1..=3usize);
            let positions: BTreeSet<usize> =
                std::iter::repeat_with(|| rng.random_range(1..=half.max(q)))
                    .filter(|&v| v <= half)
                    .take(q * 4)
                    .collect();
            let positions: Vec<usize> = positions.into_iter().take(q).collect();
            if positions.is_empty() {
                continue;
            }
            let Ok(query) = QueryTuple::from_positions(&positions) else {
                continue;
            };
            if query.last() > channel.universe() - d.len() {
                continue; // beyond the survivor range; correspondence undefined
            }
            let mapped = query.corresponds(&d)?;
            checked += 1;
            if mapped.first() < query.first()
                || mapped
                    .gaps()
                    .iter()
                    .zip(query.gaps())
                    .any(|(dm, dq)| dm < dq)
            {
                violations += 1;
            }
        }
    }
    report
        .assertions
        .push(Assertion::eq_int("monotonicity-violations", violations, 0));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("m={} delta={} channels=5", p.m, p.delta),
        estimate: violations as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: checked,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 8: the H_Q information bound on brute-force tables.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HqParams {
    hadamard_ns: Vec<usize>,
    spaced: Vec<(usize, usize)>,
    qs: Vec<usize>,
    epsilons: Vec<f64>,
}

fn hq_bound(config: &ExperimentConfig) -> Result<RunReport> {
    let p: HqParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut fails = 0u64;
    let mut combos = 0u64;
    let mut max_ratio = 0.0f64;
    for &q in &p.qs {
        for &eps in &p.epsilons {
            for &n in &p.hadamard_ns {
                let table = good_sets_bruteforce(hadamard_encode, n, q, eps)?;
                let rep = hq_bound_check(&table);
                combos += 1;
                if !rep.ok {
                    fails += 1;
                }
                max_ratio = max_ratio.max(f64::from(rep.max_hq) / rep.bound);
            }
            for &(n, t) in &p.spaced {
                let code = SpacedHadamardCode::new(n, t)?;
                let table = good_sets_bruteforce(move |x| code.encode(x), n, q, eps)?;
                let rep = hq_bound_check(&table);
                combos += 1;
                if !rep.ok {
                    fails += 1;
                }
                max_ratio = max_ratio.max(f64::from(rep.max_hq) / rep.bound);
            }
        }
    }
    report
        .assertions
        .push(Assertion::eq_int("hq-bound-violations", fails, 0));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!(
            "hadamard_ns={:?} spaced={:?} qs={:?} epsilons={:?} max_hq_over_bound={max_ratio:.4}",
            p.hadamard_ns, p.spaced, p.qs, p.epsilons
        ),
        estimate: fails as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: combos,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 9: hitting probability lower bound direction.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HittingParams {
    n: usize,
    t: usize,
    delta: f64,
    epsilon: f64,
    trials: u64,
}

fn hitting(config: &ExperimentConfig, parallel: bool) -> Result<RunReport> {
    let p: HittingParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let code = SpacedHadamardCode::new(p.n, p.t)?;
    let table = good_sets_bruteforce(move |x| code.encode(x), p.n, 2, p.epsilon)?;
    let profile = DecoderQueryProfile::for_spaced_hadamard(&code);
    let channel = TwoQueryChannel::new(code.m(), p.delta)?;
    let target = 1.5 * p.epsilon;
    for i in 0..p.n {
        let streams = Streams::new(config.seed, &format!("hitting-i{i}"));
        let rep = hitting_probability(
            &profile, &channel, &table, i, p.delta, p.trials, &streams, parallel,
        );
        let est = rep.estimate();
        report.assertions.push(
            Assertion::ge(
                format!("hitting-probability-i{i}"),
                est.estimate,
                target - est.half_width(),
            )
            .with_ci((est.ci_low, est.ci_high)),
        );
        report.assertions.push(Assertion::eq_int(
            format!("hitting-monotonicity-violations-i{i}"),
            rep.monotonicity_violations,
            0,
        ));
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!(
                "n={} t={} delta={} epsilon={} i={i}",
                p.n, p.t, p.delta, p.epsilon
            ),
            estimate: est.estimate,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            trials: p.trials,
            seed: config.seed,
        });
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 10: the Hadamard attack.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AttackParams {
    ns: Vec<usize>,
    alpha: f64,
    trials: u64,
    near_pair_max_n: usize,
}

fn attack(config: &ExperimentConfig, parallel: bool) -> Result<RunReport> {
    let p: AttackParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);

    // (a) exact near-pair counts.
    let mut count_fails = 0u64;
    for n in 1..=p.near_pair_max_n {
        let c = near_pair_count(n);
        if c.count > c.per_position_bound || c.count as f64 > c.loose_bound {
            count_fails += 1;
        }
    }
    report.assertions.push(Assertion::eq_int(
        "near-pair-bound-violations",
        count_fails,
        0,
    ));

    // (b) Monte Carlo attack at the first far bit of each n.
    let mut masses: Vec<(usize, f64)> = Vec::new();
    for &n in &p.ns {
        let partition = PairPartition::StandardBit {
            n,
            bit: first_far_bit(n),
        };
        let streams = Streams::new(config.seed, &format!("attack-n{n}"));
        let rep = hadamard_attack(&partition, p.alpha, p.trials, &streams, parallel)?;
        report.assertions.push(
            Assertion::le(
                format!("decoder-success-n{n}-bit{}", rep.bit),
                rep.success.estimate,
                0.6,
            )
            .with_ci((rep.success.ci_low, rep.success.ci_high)),
        );
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!("n={n} alpha={} bit={} good_pair_mass", p.alpha, rep.bit),
            estimate: rep.good_pair_mass.estimate,
            ci_low: rep.good_pair_mass.ci_low,
            ci_high: rep.good_pair_mass.ci_high,
            trials: p.trials,
            seed: config.seed,
        });
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!("n={n} alpha={} bit={} success", p.alpha, rep.bit),
            estimate: rep.success.estimate,
            ci_low: rep.success.ci_low,
            ci_high: rep.success.ci_high,
            trials: p.trials,
            seed: config.seed,
        });
        masses.push((n, rep.good_pair_mass.estimate));
    }
    // Scaling: good-pair mass consistent with n^{-1/3} within 40%.
    masses.sort_by_key(|&(n, _)| n);
    for w in masses.windows(2) {
        let (n1, m1) = w[0];
        let (n2, m2) = w[1];
        let observed = m2 / m1;
        let expected = (n1 as f64 / n2 as f64).powf(1.0 / 3.0);
        report.assertions.push(Assertion::is_true(
            format!("mass-scaling-n{n1}-to-n{n2} (observed {observed:.3}, expected {expected:.3})"),
            (observed / expected - 1.0).abs() <= 0.4,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 11: LCC -> LDC systematicization.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LccParams {
    generators: usize,
    n: usize,
    m: usize,
}

fn lcc_to_ldc(config: &ExperimentConfig) -> Result<RunReport> {
    let p: LccParams = params(config)?;
    if p.n > 10 || p.m > 20 || p.n > p.m {
        return Err(Error::SizeLimit("need n <= 10, m <= 20, n <= m".into()));
    }
    let mut report = RunReport::new(&config.kind, config.seed);
    let mut rng = seed_rng(config.seed);
    let mut recovery_failures = 0u64;
    let mut distance_changes = 0u64;
    let mut produced = 0usize;
    while produced < p.generators {
        let rows: Vec<F2Vec> = (0..p.n)
            .map(|_| F2Vec::from_bools(&(0..p.m).map(|_| rng.random()).collect::<Vec<bool>>()))
            .collect();
        let g = F2Matrix::from_rows(rows);
        let Ok((gp, info)) = crate::codes::systematicize(&g) else {
            continue; // rank-deficient draw; resample
        };
        produced += 1;
        let mut words_before = BTreeSet::new();
        let mut words_after = BTreeSet::new();
        for mask in 0..1u64 << p.n {
            let x = BitWord::from_mask(mask, p.n);
            let before = g.left_mul(&x);
            let after = gp.left_mul(&x);
            for (bit, &col) in info.iter().enumerate() {
                if after.bit(col) != x.bit(bit + 1) {
                    recovery_failures += 1;
                }
            }
            words_before.insert(before.to_string());
            words_after.insert(after.to_string());
        }
        // Same row space means the same codeword set, hence the same
        // distance distribution.
        if words_before != words_after {
            distance_changes += 1;
        } else {
            let min_weight = words_before
                .iter()
                .filter(|w| w.contains('1'))
                .map(|w| w.chars().filter(|&c| c == '1').count())
                .min();
            let min_weight_after = words_after
                .iter()
                .filter(|w| w.contains('1'))
                .map(|w| w.chars().filter(|&c| c == '1').count())
                .min();
            if min_weight != min_weight_after {
                distance_changes += 1;
            }
        }
    }
    report.assertions.push(Assertion::eq_int(
        "information-coordinate-recovery-failures",
        recovery_failures,
        0,
    ));
    report
        .assertions
        .push(Assertion::eq_int("distance-changes", distance_changes, 0));
    report.rows.push(CsvRow {
        experiment: config.kind.clone(),
        parameters: format!("generators={} n={} m={}", p.generators, p.n, p.m),
        estimate: recovery_failures as f64,
        ci_low: 0.0,
        ci_high: 0.0,
        trials: p.generators as u64,
        seed: config.seed,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// Criterion 12: determinism across re-runs and worker counts.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeterminismParams {
    threads_to_compare: Vec<usize>,
}

fn determinism(config: &ExperimentConfig) -> Result<RunReport> {
    let p: DeterminismParams = params(config)?;
    let mut report = RunReport::new(&config.kind, config.seed);
    let sub_configs = [
        ExperimentConfig {
            schema_version: super::SCHEMA_VERSION,
            kind: "induced-distribution".into(),
            seed: config.seed ^ 0x51,
            threads: 1,
            params: json!({"m": 1024, "delta": 0.2, "k": 128, "ds": [16], "trials": 20000, "epsilon": 0.1}),
            out: None,
        },
        ExperimentConfig {
            schema_version: super::SCHEMA_VERSION,
            kind: "channel-budgets".into(),
            seed: config.seed ^ 0x52,
            threads: 1,
            params: json!({"m": 2000, "delta": 0.1, "samples": 50}),
            out: None,
        },
    ];
    for sub in sub_configs {
        let mut outputs: Vec<String> = Vec::new();
        // Re-run twice at each worker count.
        for &threads in &p.threads_to_compare {
            for _ in 0..2 {
                let run_config = ExperimentConfig {
                    threads,
                    ..sub.clone()
                };
                outputs.push(super::run(&run_config)?.csv_string());
            }
        }
        let identical = outputs.windows(2).all(|w| w[0] == w[1]);
        report.assertions.push(Assertion::is_true(
            format!("identical-csv-{}", sub.kind),
            identical,
        ));
        report.rows.push(CsvRow {
            experiment: config.kind.clone(),
            parameters: format!(
                "sub={} threads={:?} reruns=2",
                sub.kind, p.threads_to_compare
            ),
            estimate: f64::from(u8::from(identical)),
            ci_low: 0.0,
            ci_high: 1.0,
            trials: outputs.len() as u64,
            seed: config.seed,
        });
    }
    Ok(report)
}
