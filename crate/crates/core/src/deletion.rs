//! Deletion sets and the position maps they induce.

use crate::bits::BitWord;
use crate::error::{Error, Result};
use std::fmt;

/// A set `D` of deleted positions inside a universe `[universe]`, stored as a
/// strictly increasing sequence of 1-based indices. Kept sparse so universes
/// up to `2^25` stay memory-feasible at the deletion densities we sample.
#[derive(Clone, PartialEq, Eq)]
pub struct DeletionSet {
    positions: Vec<u32>,
    universe: usize,
}

impl DeletionSet {
    /// Build from a strictly increasing sequence of 1-based indices.
    pub fn new(positions: Vec<u32>, universe: usize) -> Result<Self> {
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParameter(format!(
                    "deletion positions not strictly increasing at {}..{}",
                    w[0], w[1]
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (positions.first(), positions.last()) {
            if first < 1 || last as usize > universe {
                return Err(Error::OutOfDomain {
                    index: last as usize,
                    domain: universe,
                });
            }
        }
        Ok(Self {
            positions,
            universe,
        })
    }

    pub fn empty(universe: usize) -> Self {
        Self {
            positions: Vec::new(),
            universe,
        }
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut positions: Vec<u32>, universe: usize) -> Result<Self> {
        positions.sort_unstable();
        positions.dedup();
        Self::new(positions, universe)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.positions.binary_search(&(pos as u32)).is_ok()
    }

    /// Number of deleted positions `<= pos`.
    pub fn count_up_to(&self, pos: usize) -> usize {
        self.positions.partition_point(|&p| p as usize <= pos)
    }

    /// `|D ∩ [m]|` for a prefix bound `m`.
    pub fn prefix_count(&self, m: usize) -> usize {
        self.count_up_to(m)
    }

    /// Number of surviving positions, `universe - |D|`.
    pub fn survivors(&self) -> usize {
        self.universe - self.positions.len()
    }

    /// Serialize as comma-separated 1-based indices.
    pub fn to_csv_record(&self) -> String {
        self.positions
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_csv_record(s: &str, universe: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty(universe));
        }
        let positions = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("deletion index {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(positions, universe)
    }

    /// View as the induced position map.
    pub fn position_map(&self) -> PositionMap<'_> {
        PositionMap { deletions: self }
    }
}

impl fmt::Debug for DeletionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DeletionSet({{{}}} over [{}])",
            self.to_csv_record(),
            self.universe
        )
    }
}

/// The strictly increasing map `phi_D(j) = min{ j' : |D-complement ∩ [j']| >= j }`,
/// sending post-deletion position `j` to its pre-deletion index.
#[derive(Clone, Copy)]
pub struct PositionMap<'a> {
    deletions: &'a DeletionSet,
}

impl PositionMap<'_> {
    /// Domain size `universe - |D|`.
    pub fn domain(&self) -> usize {
        self.deletions.survivors()
    }

    /// `phi_D(j)` for a 1-based `j` in the domain.
    pub fn apply(&self, j: usize) -> Result<usize> {
        let domain = self.domain();
        if j < 1 || j > domain {
            return Err(Error::OutOfDomain { index: j, domain });
        }
        // phi_D(j) = j + (number of deleted positions <= phi_D(j)); iterate the
        // fixed point, which grows monotonically and terminates since D is finite.
        let d = self.deletions.positions();
        let mut skipped = 0usize;
        loop {
            let candidate = j + skipped;
            let now = d.partition_point(|&p| (p as usize) <= candidate);
            if now == skipped {
                return Ok(candidate);
            }
            skipped = now;
        }
    }
}

/// Convenience wrapper for a single evaluation of `phi_D`.
pub fn position_map(deletions: &DeletionSet, j: usize) -> Result<usize> {
    deletions.position_map().apply(j)
}

/// Delete from `word` all positions in `D`, keeping the survivors in order.
pub fn apply_deletions(word: &BitWord, deletions: &DeletionSet) -> Result<BitWord> {
    if word.len() != deletions.universe() {
        return Err(Error::UniverseMismatch {
            word_len: word.len(),
            universe: deletions.universe(),
        });
    }
    let mut out = Vec::with_capacity(deletions.survivors());
    let mut iter = deletions.positions().iter().peekable();
    for (idx0, &bit) in word.as_bytes().iter().enumerate() {
        let pos = idx0 + 1;
        if iter.peek().is_some_and(|&&p| p as usize == pos) {
            iter.next();
        } else {
            out.push(bit == 1);
        }
    }
    Ok(BitWord::from_bits(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_deletions_examples() {
        let w: BitWord = "1011".parse().unwrap();
        let d = DeletionSet::empty(4);
        assert_eq!(apply_deletions(&w, &d).unwrap(), w);

        let w: BitWord = "0110".parse().unwrap();
        let d = DeletionSet::new(vec![2], 4).unwrap();
        assert_eq!(apply_deletions(&w, &d).unwrap().to_string(), "010");

        let w: BitWord = "1111".parse().unwrap();
        let d = DeletionSet::new(vec![1, 2, 3, 4], 4).unwrap();
        assert!(apply_deletions(&w, &d).unwrap().is_empty());
    }

    #[test]
    fn universe_mismatch_rejected() {
        let w: BitWord = "101".parse().unwrap();
        let d = DeletionSet::empty(4);
        assert_eq!(
            apply_deletions(&w, &d),
            Err(Error::UniverseMismatch {
                word_len: 3,
                universe: 4
            })
        );
    }

    #[test]
    fn position_map_examples() {
        let d = DeletionSet::empty(4);
        for j in 1..=4 {
            assert_eq!(position_map(&d, j).unwrap(), j);
        }

        let d = DeletionSet::new(vec![2], 4).unwrap();
        assert_eq!(position_map(&d, 1).unwrap(), 1);
        assert_eq!(position_map(&d, 2).unwrap(), 3);
        assert_eq!(position_map(&d, 3).unwrap(), 4);
        assert!(position_map(&d, 4).is_err());

        let d = DeletionSet::new(vec![1], 4).unwrap();
        assert_eq!(position_map(&d, 1).unwrap(), 2);
    }

    #[test]
    fn position_map_agrees_with_apply_deletions() {
        // Oracle: naive character-by-character deletion.
        for universe in 1..=10usize {
            for mask in 0u32..(1 << universe) {
                let dels: Vec<u32> = (1..=universe as u32)
                    .filter(|&p| mask >> (p - 1) & 1 == 1)
                    .collect();
                let d = DeletionSet::new(dels, universe).unwrap();
                let word = BitWord::from_bits((0..universe).map(|i| i % 3 == 0));
                let reduced = apply_deletions(&word, &d).unwrap();
                for j in 1..=reduced.len() {
                    assert_eq!(reduced.bit(j), word.bit(position_map(&d, j).unwrap()));
                }
            }
        }
    }

    #[test]
    fn csv_record_roundtrip() {
        let d = DeletionSet::new(vec![1, 5, 9], 10).unwrap();
        let s = d.to_csv_record();
        assert_eq!(s, "1,5,9");
        assert_eq!(DeletionSet::from_csv_record(&s, 10).unwrap(), d);
        assert_eq!(DeletionSet::from_csv_record("", 10).unwrap().len(), 0);
    }
}
