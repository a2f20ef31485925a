//! Cross-module workflows: codes driven through channels into the
//! estimators.

use insdel_lab::analysis::{
    decode_success, good_sets_bruteforce, subcube_stats, AnalysisConstants, Streams,
};
use insdel_lab::bits::PadPolicy;
use insdel_lab::channels::{ProcessCorruptor, TwoQueryChannel, Type1Channel};
use insdel_lab::codes::SpacedHadamardCode;

#[test]
fn type1_worst_case_success_meets_theorem_bound() {
    // Spaced Hadamard n=2, t=4 under the worst admissible prefix deletion
    // e = floor(delta m) at delta = 0.1: success at least
    // 1 - delta - 2^{-t+1} = 0.775.
    let code = SpacedHadamardCode::new(2, 4).unwrap();
    let m = code.m();
    let e = (0.1 * m as f64).floor() as usize;
    let channel = ProcessCorruptor {
        channel: Type1Channel::new(m, e).unwrap(),
        pad: PadPolicy::Uniform,
    };
    let streams = Streams::new(2024, "type1-success");
    for i in 0..2 {
        let est = decode_success(&code, &channel, i, 20_000, &streams, false).unwrap();
        assert!(
            est.ci_low >= 0.775,
            "i={i}: estimate {} ci_low {} below the theorem bound",
            est.estimate,
            est.ci_low
        );
    }
}

#[test]
fn two_query_channel_degrades_but_not_kills_decoding() {
    // Mild deletions leave the two-query decoder clearly above 1/2 + eps.
    let code = SpacedHadamardCode::new(2, 4).unwrap();
    let channel = ProcessCorruptor {
        channel: TwoQueryChannel::new(code.m(), 0.05).unwrap(),
        pad: PadPolicy::Uniform,
    };
    let streams = Streams::new(7, "two-query-success");
    for i in 0..2 {
        let est = decode_success(&code, &channel, i, 20_000, &streams, false).unwrap();
        assert!(est.estimate > 0.6, "i={i}: {}", est.estimate);
        assert!(est.estimate < 1.0, "i={i}: some corruption must bite");
    }
}

#[test]
fn hadamard_good_pairs_concentrate_in_their_gap_scale() {
    // The standard decoder for bit i XORs pairs at gap exactly 2^i, so the
    // densest subcube for i is the one whose gap range contains 2^i.
    let table = good_sets_bruteforce(insdel_lab::codes::hadamard_encode, 3, 2, 0.5).unwrap();
    let constants = AnalysisConstants::new(2, 0.5, 0.1, table.m()).unwrap();
    let stats = subcube_stats(&table, &constants);
    for i in 0..3 {
        let best = stats.best_per_index[i].expect("good pairs exist");
        let (lo, hi) = stats.subcubes[best].gap_ranges[0];
        let decoding_gap = 1u64 << i;
        assert!(
            lo <= decoding_gap && decoding_gap < hi,
            "i={i}: best subcube [{lo},{hi}) misses gap {decoding_gap}"
        );
    }
}
