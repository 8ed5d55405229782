//! The matrices `C^N_{k,2}`, `D^N_{k,2}` and `D·C` built from their closed
//! entry formulas.
//!
//! Orientation: rows run over `oo(k)`, columns over the reversed `oo'(k)`,
//! and vectors act on the left (`v·C`). The Kronecker term compares the row
//! and column pairs componentwise, so it lands on the anti-diagonal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{self, check_weight, totally_odd_index, totally_odd_index_reversed, IndexPair};
use crate::linalg::rational::{self, Rational};
use crate::linalg::RatMatrix;

/// The level `N` of the roots of unity `mu_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Level {
    One,
    Two,
    Three,
}

impl Level {
    pub const TWISTED: [Level; 2] = [Level::Two, Level::Three];

    pub fn n(self) -> u32 {
        match self {
            Level::One => 1,
            Level::Two => 2,
            Level::Three => 3,
        }
    }

    /// Errors on level 1, for operations defined only at `N = 2, 3`.
    pub fn require_twisted(self) -> Result<Self> {
        match self {
            Level::One => Err(Error::UnsupportedLevel(1, "2, 3")),
            l => Ok(l),
        }
    }
}

impl TryFrom<u32> for Level {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Level::One),
            2 => Ok(Level::Two),
            3 => Ok(Level::Three),
            _ => Err(Error::UnsupportedLevel(n, "1, 2, 3")),
        }
    }
}

impl From<Level> for u32 {
    fn from(l: Level) -> u32 {
        l.n()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// `binom(r, s)`, zero whenever `s < 0` or `s > r`.
pub fn binom(r: i64, s: i64) -> BigInt {
    if r < 0 || s < 0 || s > r {
        return BigInt::zero();
    }
    let s = s.min(r - s);
    let mut acc = BigInt::one();
    for i in 0..s {
        acc = acc * BigInt::from(r - i) / BigInt::from(i + 1);
    }
    acc
}

fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Coefficient of `zeta^l(p; 1)` in the depth-one decomposition of
/// `zeta^l(p; eps_N)`, for odd `p >= 3`.
pub fn depth1_coeff(level: Level, p: u32) -> Result<Rational> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidOddArgument(p as i64));
    }
    let e = 1 - p as i64;
    Ok(match level {
        Level::One => Rational::one(),
        Level::Two => rational::pow(2, e) - Rational::one(),
        Level::Three => (rational::pow(3, e) - Rational::one()) / rational::int(2),
    })
}

/// The shared binomial part
/// `(-1)^{n1} binom(m1-1, m1-n1) + (-1)^{m1-n2} binom(m1-1, m1-n2)`.
pub fn binomial_term(m: IndexPair, n: IndexPair) -> BigInt {
    let (m1, n1, n2) = (m.m1 as i64, n.m1 as i64, n.m2 as i64);
    sign(n1) * binom(m1 - 1, m1 - n1) + sign(m1 - n2) * binom(m1 - 1, m1 - n2)
}

pub fn kronecker(m: IndexPair, n: IndexPair) -> bool {
    m == n
}

fn check_pair(k: u32, p: IndexPair) -> Result<()> {
    index::position(k, p).map(|_| ())
}

/// Source of the depth-one coefficients. Everything is built through this
/// so that the golden checks can be run against a perturbed source.
pub type CoeffFn<'a> = &'a dyn Fn(Level, u32) -> Result<Rational>;

fn entry_with(coeff: CoeffFn<'_>, level: Level, k: u32, m: IndexPair, n: IndexPair) -> Result<Rational> {
    check_weight(k)?;
    check_pair(k, m)?;
    check_pair(k, n)?;
    let c1 = coeff(level, m.m1)?;
    let mut inner = Rational::from_integer(binomial_term(m, n));
    if kronecker(m, n) {
        inner += coeff(level, m.m2)?;
    }
    Ok(c1 * inner)
}

/// Entry of `C^N_{k,2}` at row pair `m`, column pair `n`.
pub fn entry(level: Level, k: u32, m: IndexPair, n: IndexPair) -> Result<Rational> {
    entry_with(&depth1_coeff, level, k, m, n)
}

pub fn build_c_with(coeff: CoeffFn<'_>, level: Level, k: u32) -> Result<RatMatrix> {
    let rows = totally_odd_index(k)?;
    let cols = totally_odd_index_reversed(k)?;
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for &m in &rows {
        for &n in &cols {
            entries.push(entry_with(coeff, level, k, m, n)?);
        }
    }
    RatMatrix::new(rows.len(), cols.len(), entries)?.with_labels(rows, cols)
}

/// `C^N_{k,2}`; level 1 gives the integer matrix `delta + e`.
pub fn build_c(level: Level, k: u32) -> Result<RatMatrix> {
    build_c_with(&depth1_coeff, level, k)
}

pub fn build_d_with(coeff: CoeffFn<'_>, level: Level, k: u32) -> Result<RatMatrix> {
    level.require_twisted()?;
    let idx = totally_odd_index(k)?;
    let diag = idx
        .iter()
        .map(|p| coeff(level, p.m1).map(|c| c.recip()))
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::diagonal(diag).with_labels(idx.clone(), idx)
}

/// Diagonal `D^N_{k,2}` with entry `1 / c_{1,eps_N,m1}` at `(m1, m2)`.
pub fn build_d(level: Level, k: u32) -> Result<RatMatrix> {
    build_d_with(&depth1_coeff, level, k)
}

/// `D·C` from its own closed formula, without forming either factor.
pub fn build_dc_direct(level: Level, k: u32) -> Result<RatMatrix> {
    level.require_twisted()?;
    let rows = totally_odd_index(k)?;
    let cols = totally_odd_index_reversed(k)?;
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for &m in &rows {
        for &n in &cols {
            let mut v = Rational::from_integer(binomial_term(m, n));
            if kronecker(m, n) {
                v += depth1_coeff(level, m.m2)?;
            }
            entries.push(v);
        }
    }
    RatMatrix::new(rows.len(), cols.len(), entries)?.with_labels(rows, cols)
}

/// `D^N_{k,2} · C^N_{k,2}`; the product is checked against the closed formula.
pub fn build_dc(level: Level, k: u32) -> Result<RatMatrix> {
    let product = build_d(level, k)?.mul(&build_c(level, k)?)?;
    let direct = build_dc_direct(level, k)?;
    assert_eq!(product, direct, "D·C product disagrees with its closed formula");
    Ok(product)
}

/// Checks `C^2 = -A - B + C' - C^1 + (2 + 2^{2-k}) J`, where
/// `A = 2^{1-m1} delta`, `B = 2^{1-m2} delta`, `C' = 2^{1-m1} e` and `J` is
/// the exchange matrix.
pub fn decomposition_check(k: u32) -> Result<bool> {
    check_weight(k)?;
    let rows = totally_odd_index(k)?;
    let cols = totally_odd_index_reversed(k)?;
    let s = rows.len();
    let two_pow = |m: u32| rational::pow(2, 1 - m as i64);
    let delta = |m: IndexPair, n: IndexPair| if kronecker(m, n) { Rational::one() } else { Rational::zero() };
    let a = RatMatrix::from_fn(s, s, |i, j| two_pow(rows[i].m1) * delta(rows[i], cols[j]));
    let b = RatMatrix::from_fn(s, s, |i, j| two_pow(rows[i].m2) * delta(rows[i], cols[j]));
    let c = RatMatrix::from_fn(s, s, |i, j| {
        two_pow(rows[i].m1) * Rational::from_integer(binomial_term(rows[i], cols[j]))
    });
    let j = RatMatrix::from_fn(s, s, |i, jj| if i + jj + 1 == s { Rational::one() } else { Rational::zero() });
    let j_coeff = rational::int(2) + rational::pow(2, 2 - k as i64);
    let c1 = build_c(Level::One, k)?;
    let c2 = build_c(Level::Two, k)?;
    let rhs = c
        .sub(&a)?
        .sub(&b)?
        .sub(&c1)?
        .add(&j.scale(&j_coeff))?;
    Ok(c2.entries() == rhs.entries())
}

/// `C`, `D` and `D·C` for one level and weight. `D` and `D·C` are absent at
/// level 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBundle")]
pub struct MatrixBundle {
    pub level: Level,
    pub weight: u32,
    pub c: RatMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<RatMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dc: Option<RatMatrix>,
    pub index: Vec<IndexPair>,
}

impl MatrixBundle {
    pub fn build(level: Level, k: u32) -> Result<Self> {
        let c = build_c(level, k)?;
        let (d, dc) = match level {
            Level::One => (None, None),
            _ => (Some(build_d(level, k)?), Some(build_dc(level, k)?)),
        };
        Ok(MatrixBundle {
            level,
            weight: k,
            c,
            d,
            dc,
            index: totally_odd_index(k)?,
        })
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }
}

#[derive(Deserialize)]
struct RawBundle {
    level: Level,
    weight: u32,
    c: RatMatrix,
    d: Option<RatMatrix>,
    dc: Option<RatMatrix>,
    index: Vec<IndexPair>,
}

impl TryFrom<RawBundle> for MatrixBundle {
    type Error = Error;

    fn try_from(raw: RawBundle) -> Result<Self> {
        let expected = totally_odd_index(raw.weight)?;
        if raw.index != expected {
            return Err(Error::DimensionMismatch(format!(
                "index list does not match weight {}",
                raw.weight
            )));
        }
        let mut reversed = expected.clone();
        reversed.reverse();
        let relabel = |m: RatMatrix, cols: &[IndexPair]| m.with_labels(expected.clone(), cols.to_vec());
        Ok(MatrixBundle {
            level: raw.level,
            weight: raw.weight,
            c: relabel(raw.c, &reversed)?,
            d: raw.d.map(|m| relabel(m, &expected)).transpose()?,
            dc: raw.dc.map(|m| relabel(m, &reversed)).transpose()?,
            index: expected,
        })
    }
}
