//! Exhaustive computation of the good query sets: the q-tuples of augmented
//! codeword positions from which some Boolean function predicts a message bit
//! with advantage at least eps/4.

use crate::analysis::entropy::binary_entropy;
use crate::bits::BitWord;
use crate::error::{Error, Result};
use crate::query::QueryTuple;
use std::collections::{HashMap, HashSet};

/// Packed key for a q-tuple of positions in `[2m]`, 21 bits per position.
fn encode_positions(positions: &[usize]) -> u64 {
    debug_assert!(positions.len() <= 3);
    positions
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &p)| acc | ((p as u64) << (21 * i)))
}

fn decode_positions(key: u64, q: usize) -> Vec<usize> {
    (0..q)
        .map(|i| ((key >> (21 * i)) & ((1 << 21) - 1)) as usize)
        .collect()
}

/// For each message index, the exhaustively computed good set together with
/// the best attainable advantage of every tuple that has any.
#[derive(Debug, Clone)]
pub struct GoodnessTable {
    n: usize,
    m: usize,
    q: usize,
    epsilon: f64,
    good: Vec<HashSet<u64>>,
    advantages: Vec<HashMap<u64, f64>>,
}

impl GoodnessTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Universe of positions the tuples live in: `2m`.
    pub fn universe(&self) -> usize {
        2 * self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn is_good(&self, i: usize, query: &QueryTuple) -> bool {
        self.good[i].contains(&encode_positions(&query.positions()))
    }

    /// Best advantage of a tuple for index `i` (0 when no function beats a
    /// coin toss).
    pub fn advantage(&self, i: usize, query: &QueryTuple) -> f64 {
        self.advantages[i]
            .get(&encode_positions(&query.positions()))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn good_count(&self, i: usize) -> usize {
        self.good[i].len()
    }

    pub fn good_tuples(&self, i: usize) -> impl Iterator<Item = QueryTuple> + '_ {
        self.good[i].iter().map(move |&key| {
            QueryTuple::from_positions(&decode_positions(key, self.q)).expect("stored tuples valid")
        })
    }

    /// `H_Q` sizes: how many indices each tuple is good for.
    pub fn hq_counts(&self) -> HashMap<u64, u32> {
        let mut counts: HashMap<u64, u32> = HashMap::new();
        for set in &self.good {
            for &key in set {
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// Iterate all q-subsets of `[1, universe]` in lexicographic order.
fn for_each_combination(universe: usize, q: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (1..=q).collect();
    loop {
        f(&idx);
        // Advance.
        let mut pos = q;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < universe - (q - 1 - pos) {
                idx[pos] += 1;
                for j in pos + 1..q {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Compute the good sets of an encoder by full enumeration of messages and
/// tuples. The optimal predictor per tuple is the Bayes rule: for every
/// observed query pattern take the majority value of the target bit, which
/// attains the definition's existential over Boolean functions exactly.
///
/// Positions past `m` lie in the appended half. Whether those bits are
/// uniform or fixed, they are independent of the message, so they contribute
/// no advantage; the tally below therefore reads only the code positions of
/// each tuple.
///
/// Feasibility guard: `n <= 10`, `q <= 3`, and the total enumeration work
/// `2^n * C(2m, q)` must stay below 2^31.
pub fn good_sets_bruteforce(
    encode: impl Fn(&BitWord) -> BitWord,
    n: usize,
    q: usize,
    epsilon: f64,
) -> Result<GoodnessTable> {
    if !(1..=10).contains(&n) {
        return Err(Error::SizeLimit(format!("need 1 <= n <= 10, got {n}")));
    }
    if !(1..=3).contains(&q) {
        return Err(Error::SizeLimit(format!("need 1 <= q <= 3, got {q}")));
    }
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be in (0, 1/2], got {epsilon}"
        )));
    }
    let codewords: Vec<BitWord> = (0..1u64 << n)
        .map(|mask| encode(&BitWord::from_mask(mask, n)))
        .collect();
    let m = codewords[0].len();
    if codewords.iter().any(|c| c.len() != m) {
        return Err(Error::InvalidParameter(
            "encoder output length varies with the message".into(),
        ));
    }
    let universe = 2 * m;
    if universe >= 1 << 21 {
        return Err(Error::SizeLimit(format!(
            "universe 2m = {universe} too large"
        )));
    }
    let mut tuples: u128 = 1;
    for j in 0..q {
        tuples = tuples * (universe - j) as u128 / (j + 1) as u128;
    }
    let work = tuples * (1u128 << n);
    if work > 1 << 31 {
        return Err(Error::SizeLimit(format!(
            "2^n * C(2m, q) = {work} exceeds the enumeration budget"
        )));
    }

    let messages = 1usize << n;
    let mut good: Vec<HashSet<u64>> = vec![HashSet::new(); n];
    let mut advantages: Vec<HashMap<u64, f64>> = vec![HashMap::new(); n];

    for_each_combination(universe, q, |positions| {
        // Only code positions constrain the message.
        let code_positions: Vec<usize> = positions.iter().copied().filter(|&p| p <= m).collect();
        // Tally per pattern: total count and per-index ones count.
        let patterns = 1usize << code_positions.len();
        let mut total = vec![0u32; patterns];
        let mut ones = vec![0u32; patterns * n];
        for (x, codeword) in codewords.iter().enumerate() {
            let mut pattern = 0usize;
            for (b, &p) in code_positions.iter().enumerate() {
                if codeword.bit(p) {
                    pattern |= 1 << b;
                }
            }
            total[pattern] += 1;
            for i in 0..n {
                if x >> i & 1 == 1 {
                    ones[pattern * n + i] += 1;
                }
            }
        }
        let key = encode_positions(positions);
        for i in 0..n {
            let mut majority_sum = 0u32;
            for (pattern, &cnt) in total.iter().enumerate() {
                let one = ones[pattern * n + i];
                majority_sum += one.max(cnt - one);
            }
            // advantage = majority_sum / 2^n - 1/2, exact in f64 for n <= 10.
            let adv = majority_sum as f64 / messages as f64 - 0.5;
            if adv > 0.0 {
                advantages[i].insert(key, adv);
            }
            if adv >= epsilon / 4.0 {
                good[i].insert(key);
            }
        }
    });

    Ok(GoodnessTable {
        n,
        m,
        q,
        epsilon,
        good,
        advantages,
    })
}

/// Report of the information-theoretic check `|H_Q| <= q / (1 - H(1/2 + eps/4))`.
#[derive(Debug, Clone)]
pub struct HqReport {
    pub bound: f64,
    pub max_hq: u32,
    pub worst_query: Option<QueryTuple>,
    pub ok: bool,
}

/// Assert the mutual-information bound on every tuple of the table.
pub fn hq_bound_check(table: &GoodnessTable) -> HqReport {
    let bound = table.q() as f64 / (1.0 - binary_entropy(0.5 + table.epsilon() / 4.0));
    let mut max_hq = 0u32;
    let mut worst = None;
    for (key, count) in table.hq_counts() {
        if count > max_hq {
            max_hq = count;
            worst = Some(key);
        }
    }
    HqReport {
        bound,
        max_hq,
        worst_query: worst.map(|key| {
            QueryTuple::from_positions(&decode_positions(key, table.q()))
                .expect("stored tuples valid")
        }),
        ok: f64::from(max_hq) <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hadamard_encode, SpacedHadamardCode};

    fn pair(a: usize, b: usize) -> QueryTuple {
        QueryTuple::from_positions(&[a, b]).unwrap()
    }

    #[test]
    fn hadamard_pairs() {
        // Addresses are positions - 1. For n=2 the pair of addresses
        // {00, 10} = positions {1, 3} XORs to x1 exactly; {00, 01} =
        // positions {1, 2} gives x0, not x1.
        let table = good_sets_bruteforce(hadamard_encode, 2, 2, 0.5).unwrap();
        assert!((table.advantage(1, &pair(1, 3)) - 0.5).abs() < 1e-12);
        assert!(table.is_good(1, &pair(1, 3)));
        assert_eq!(table.advantage(1, &pair(1, 2)), 0.0);
        assert!(!table.is_good(1, &pair(1, 2)));
    }

    #[test]
    fn pad_only_tuples_are_useless() {
        let table = good_sets_bruteforce(hadamard_encode, 2, 2, 0.1).unwrap();
        let m = table.m();
        for i in 0..2 {
            assert_eq!(table.advantage(i, &pair(m + 1, m + 2)), 0.0);
            assert!(!table.is_good(i, &pair(m + 1, m + 2)));
        }
    }

    #[test]
    fn systematic_bit_has_half_advantage() {
        // A code whose bit sigma equals x_i exactly: the identity code.
        let table = good_sets_bruteforce(|x| x.clone(), 3, 1, 0.3).unwrap();
        for i in 0..3 {
            let q = QueryTuple::from_positions(&[i + 1]).unwrap();
            assert!((table.advantage(i, &q) - 0.5).abs() < 1e-12);
            assert!(table.is_good(i, &q));
        }
    }

    #[test]
    fn advantage_invariant_under_position_order() {
        // The tuple is a set; the table is keyed by sorted positions, so both
        // orders of naming a pair resolve to the same entry.
        let table = good_sets_bruteforce(hadamard_encode, 3, 2, 0.2).unwrap();
        let q1 = QueryTuple::from_positions(&[2, 7]).unwrap();
        assert_eq!(table.advantage(1, &q1), table.advantage(1, &pair(2, 7)));
    }

    #[test]
    fn hq_bound_on_small_tables() {
        for (n, q, eps) in [(2, 2, 0.5), (3, 1, 0.1), (3, 2, 0.1)] {
            let table = good_sets_bruteforce(hadamard_encode, n, q, eps).unwrap();
            let report = hq_bound_check(&table);
            assert!(report.ok, "n={n} q={q} eps={eps}: {report:?}");
        }
        let code = SpacedHadamardCode::new(2, 2).unwrap();
        let table = good_sets_bruteforce(move |x| code.encode(x), 2, 2, 0.5).unwrap();
        let report = hq_bound_check(&table);
        assert!(report.ok);
        // Hadamard n=2: the pair {positions 2, 3} = addresses {01, 10} has
        // H_Q = {0, 1}: each single bit predicts one message bit exactly.
        let t2 = good_sets_bruteforce(hadamard_encode, 2, 2, 0.5).unwrap();
        assert!(t2.is_good(0, &pair(2, 3)));
        assert!(t2.is_good(1, &pair(2, 3)));
        let bound = 2.0 / (1.0 - binary_entropy(0.5 + 0.125));
        assert!(2.0 <= bound);
    }

    #[test]
    fn size_limits_enforced() {
        assert!(good_sets_bruteforce(hadamard_encode, 11, 2, 0.1).is_err());
        assert!(good_sets_bruteforce(|x| x.clone(), 2, 4, 0.1).is_err());
    }

    #[test]
    fn empty_table_vacuous() {
        // An encoder ignoring its input yields no good tuples at all.
        let table = good_sets_bruteforce(|x| BitWord::zeros(x.len() + 1), 2, 1, 0.1).unwrap();
        for i in 0..2 {
            assert_eq!(table.good_count(i), 0);
        }
        assert!(hq_bound_check(&table).ok);
    }
}
