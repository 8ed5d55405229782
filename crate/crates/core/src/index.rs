//! Totally odd index pairs `(m1, m2)` with `m1 + m2 = k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered pair of odd integers, both at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", try_from = "[u32; 2]")]
pub struct IndexPair {
    pub m1: u32,
    pub m2: u32,
}

impl IndexPair {
    pub fn new(m1: u32, m2: u32) -> Result<Self> {
        for m in [m1, m2] {
            if m < 3 || m % 2 == 0 {
                return Err(Error::InvalidOddArgument(m as i64));
            }
        }
        Ok(IndexPair { m1, m2 })
    }

    pub fn weight(&self) -> u32 {
        self.m1 + self.m2
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

impl From<IndexPair> for [u32; 2] {
    fn from(p: IndexPair) -> Self {
        [p.m1, p.m2]
    }
}

impl TryFrom<[u32; 2]> for IndexPair {
    type Error = Error;

    fn try_from(v: [u32; 2]) -> Result<Self> {
        IndexPair::new(v[0], v[1])
    }
}

pub fn check_weight(k: u32) -> Result<()> {
    if k % 2 == 1 {
        return Err(Error::OddWeight(k));
    }
    Ok(())
}

/// `oo(k) = ((k-3,3), (k-5,5), ..., (3,k-3))`; empty below weight 6.
pub fn totally_odd_index(k: u32) -> Result<Vec<IndexPair>> {
    check_weight(k)?;
    if k < 6 {
        return Ok(Vec::new());
    }
    Ok((3..=k - 3)
        .step_by(2)
        .map(|m2| IndexPair { m1: k - m2, m2 })
        .collect())
}

/// `oo'(k)`, the reversed order used for columns.
pub fn totally_odd_index_reversed(k: u32) -> Result<Vec<IndexPair>> {
    let mut v = totally_odd_index(k)?;
    v.reverse();
    Ok(v)
}

/// `|oo(k)|`, i.e. `(k-6)/2 + 1` for `k >= 6`.
pub fn index_len(k: u32) -> usize {
    if k < 6 {
        0
    } else {
        ((k - 6) / 2 + 1) as usize
    }
}

pub(crate) fn position(k: u32, pair: IndexPair) -> Result<usize> {
    if pair.weight() != k || k < 6 {
        return Err(Error::IndexOutOfSet { pair, weight: k });
    }
    Ok(((k - 3 - pair.m1) / 2) as usize)
}
