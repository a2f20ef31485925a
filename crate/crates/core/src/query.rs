//! Query tuples in gap form and their correspondence under deletions.

use crate::deletion::DeletionSet;
use crate::error::{Error, Result};
use std::fmt;

/// A q-subset of positions `{k_0 < k_1 < ... < k_{q-1}}` stored in gap form
/// `(k, d_1, ..., d_{q-1})` with `k = k_0` and `d_j = k_j - k_{j-1}`. The two
/// representations are in bijection; `first`/`gaps` here and `positions()`
/// round-trip exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QueryTuple {
    first: usize,
    gaps: Vec<usize>,
}

impl QueryTuple {
    pub fn new(first: usize, gaps: Vec<usize>) -> Result<Self> {
        if first < 1 {
            return Err(Error::InvalidParameter("first index must be >= 1".into()));
        }
        if gaps.iter().any(|&d| d < 1) {
            return Err(Error::InvalidParameter("gaps must be >= 1".into()));
        }
        Ok(Self { first, gaps })
    }

    /// Build from a strictly increasing position set.
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let Some((&first, rest)) = positions.split_first() else {
            return Err(Error::InvalidParameter("empty query tuple".into()));
        };
        let mut gaps = Vec::with_capacity(rest.len());
        let mut prev = first;
        for &p in rest {
            if p <= prev {
                return Err(Error::InvalidParameter(
                    "positions not strictly increasing".into(),
                ));
            }
            gaps.push(p - prev);
            prev = p;
        }
        Self::new(first, gaps)
    }

    pub fn arity(&self) -> usize {
        self.gaps.len() + 1
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Largest position `k + sum(gaps)`.
    pub fn last(&self) -> usize {
        self.first + self.gaps.iter().sum::<usize>()
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arity());
        let mut p = self.first;
        out.push(p);
        for &d in &self.gaps {
            p += d;
            out.push(p);
        }
        out
    }

    /// The tuple `Q^D` of original positions corresponding to this query after
    /// the deletions in `D`: every position is pushed through `phi_D`. The
    /// first index and every gap can only grow.
    pub fn corresponds(&self, deletions: &DeletionSet) -> Result<QueryTuple> {
        let map = deletions.position_map();
        let mapped = self
            .positions()
            .iter()
            .map(|&p| map.apply(p))
            .collect::<Result<Vec<_>>>()?;
        let out = QueryTuple::from_positions(&mapped)?;
        debug_assert!(out.first() >= self.first());
        debug_assert!(out.gaps().iter().zip(&self.gaps).all(|(d2, d1)| d2 >= d1));
        Ok(out)
    }
}

/// Free-function form of [`QueryTuple::corresponds`].
pub fn corresponds(query: &QueryTuple, deletions: &DeletionSet) -> Result<QueryTuple> {
    query.corresponds(deletions)
}

impl fmt::Debug for QueryTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(k={}", self.first)?;
        for d in &self.gaps {
            write!(f, ",d={}", d)?;
        }
        write!(f, ")")
    }
}
