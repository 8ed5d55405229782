//! Symbolic recomputation of the `C^N` entries from the depth-two coaction.
//!
//! Roots of unity are formal labels `e(a/N)`. Only the depth-two pattern
//! `zeta^m(n1, n2; eps_N, eps_N^{-1})` is expanded, which is the only one that
//! enters `C^N`. For that pattern `eps_N * eps_N^{-1} = 1`, so the weight-drop
//! terms of the general derivation formula (guarded by
//! `eps_{i-1} eps_i != 1`) never contribute and are not generated.
//! Sign conventions follow the corrected depth-two expansion
//!
//! ```text
//! D_p zeta^m(n1,n2; e, e^-1) =
//!       [p = n1]                        zeta^l(p; e)    (x) zeta^m(n2; e^-1)
//!     + (-1)^n1     binom(p-1, p-n1)    zeta^l(p; e^-1) (x) zeta^m(n1+n2-p; 1)
//!     + (-1)^(p-n2) binom(p-1, p-n2)    zeta^l(p; e^-1) (x) zeta^m(n1+n2-p; 1)
//! ```
//!
//! with `binom(r, s) = 0` outside `0 <= s <= r` and `zeta^m(n; 1) = 0` for
//! `n <= 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{self, check_weight, IndexPair};
use crate::linalg::rational::{self, Rational};
use crate::matrices::Level;

/// The root of unity `exp(2 pi i * exponent / modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLabel {
    exponent: u32,
    modulus: u32,
}

impl RootLabel {
    pub fn new(exponent: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "root label modulus must be positive");
        RootLabel {
            exponent: exponent.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn trivial(modulus: u32) -> Self {
        Self::new(0, modulus)
    }

    /// `eps_N = exp(2 pi i / N)`.
    pub fn primitive(modulus: u32) -> Self {
        Self::new(1, modulus)
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn inverse(&self) -> Self {
        Self::new(-(self.exponent as i64), self.modulus)
    }

    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "labels of different levels");
        Self::new(self.exponent as i64 + other.exponent as i64, self.modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "1")
        } else {
            write!(f, "e({}/{})", self.exponent, self.modulus)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZetaKind {
    /// `zeta^m`, a motivic value.
    Motivic,
    /// `zeta^l`, its image among the indecomposables.
    Lie,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaSymbol {
    kind: ZetaKind,
    args: Vec<(i64, RootLabel)>,
}

impl ZetaSymbol {
    pub fn motivic(args: Vec<(i64, RootLabel)>) -> Self {
        Self::with_kind(ZetaKind::Motivic, args)
    }

    pub fn lie(n: i64, label: RootLabel) -> Self {
        Self::with_kind(ZetaKind::Lie, vec![(n, label)])
    }

    fn with_kind(kind: ZetaKind, args: Vec<(i64, RootLabel)>) -> Self {
        assert!(
            matches!(args.len(), 1 | 2),
            "only depths one and two are represented"
        );
        ZetaSymbol { kind, args }
    }

    pub fn kind(&self) -> ZetaKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.args.len()
    }

    pub fn args(&self) -> &[(i64, RootLabel)] {
        &self.args
    }

    /// `zeta(n; 1)` with `n <= 0`, which stands for zero.
    pub fn vanishes(&self) -> bool {
        matches!(self.args.as_slice(), [(n, l)] if *n <= 0 && l.is_trivial())
    }
}

impl fmt::Display for ZetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ZetaKind::Motivic => "m",
            ZetaKind::Lie => "l",
        };
        let ns: Vec<String> = self.args.iter().map(|(n, _)| n.to_string()).collect();
        let ls: Vec<String> = self.args.iter().map(|(_, l)| l.to_string()).collect();
        write!(f, "zeta^{tag}({}; {})", ns.join(","), ls.join(","))
    }
}

/// Formal rational combination of zeta symbols. Zero coefficients and
/// vanishing symbols are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZetaCombination {
    terms: BTreeMap<ZetaSymbol, Rational>,
}

impl ZetaCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(s: ZetaSymbol) -> Self {
        let mut c = Self::new();
        c.add_term(s, Rational::one());
        c
    }

    pub fn add_term(&mut self, s: ZetaSymbol, coeff: Rational) {
        if coeff.is_zero() || s.vanishes() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Rational) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &ZetaSymbol) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ZetaSymbol, &Rational)> {
        self.terms.iter()
    }
}

/// One tensor `coeff * left (x) right` of a depth-two coaction component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionTerm {
    pub left: ZetaSymbol,
    pub right: ZetaSymbol,
    pub coeff: Rational,
}

fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn binom(r: i64, s: i64) -> BigInt {
    if r < 0 || s < 0 || s > r {
        return BigInt::zero();
    }
    (0..s).fold(BigInt::one(), |acc, i| acc * (r - i) / (i + 1))
}

/// `D_p` on a depth-one symbol: `[p = n] zeta^l(p; eps)`.
pub fn d_p_depth1(s: &ZetaSymbol, p: i64) -> Result<ZetaCombination> {
    let [(n, eps)] = s.args() else {
        return Err(Error::UnsupportedSymbol(format!("{s} is not of depth one")));
    };
    let mut out = ZetaCombination::new();
    if s.vanishes() {
        return Ok(out);
    }
    if *n == p {
        out.add_term(ZetaSymbol::lie(p, *eps), Rational::one());
    }
    Ok(out)
}

/// `D_p` on `zeta^m(n1, n2; eps_N, eps_N^{-1})`, as merged tensor terms.
pub fn d_p_depth2(s: &ZetaSymbol, p: i64) -> Result<Vec<CoactionTerm>> {
    let [(n1, e1), (n2, e2)] = s.args() else {
        return Err(Error::UnsupportedSymbol(format!("{s} is not of depth two")));
    };
    let (n1, n2) = (*n1, *n2);
    let level = e1.modulus();
    if *e1 != RootLabel::primitive(level) || *e2 != e1.inverse() {
        return Err(Error::UnsupportedSymbol(format!(
            "{s}: only the label pattern (eps_N, eps_N^-1) is expanded"
        )));
    }
    let e12 = e1.product(e2);
    let mut merged: BTreeMap<(ZetaSymbol, ZetaSymbol), Rational> = BTreeMap::new();
    let mut push = |left: ZetaSymbol, right: ZetaSymbol, c: Rational| {
        if c.is_zero() || right.vanishes() {
            return;
        }
        *merged.entry((left, right)).or_insert_with(Rational::zero) += c;
    };
    if p == n1 {
        push(
            ZetaSymbol::lie(p, *e1),
            ZetaSymbol::motivic(vec![(n2, *e2)]),
            Rational::one(),
        );
    }
    let drop = ZetaSymbol::motivic(vec![(n1 + n2 - p, e12)]);
    push(
        ZetaSymbol::lie(p, e1.inverse()),
        drop.clone(),
        Rational::from_integer(sign(n1) * binom(p - 1, p - n1)),
    );
    push(
        ZetaSymbol::lie(p, *e2),
        drop,
        Rational::from_integer(sign(p - n2) * binom(p - 1, p - n2)),
    );
    Ok(merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((left, right), coeff)| CoactionTerm { left, right, coeff })
        .collect())
}

/// Coefficient of the basis element `zeta^l(p; 1)` in `zeta^l(p; eps)`, read
/// off the depth-one relations at levels 2 and 3 (odd `p >= 3` only).
pub fn depth1_decompose(s: &ZetaSymbol, level: Level) -> Result<Rational> {
    let [(p, eps)] = s.args() else {
        return Err(Error::UnsupportedSymbol(format!("{s} is not of depth one")));
    };
    let p = *p;
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidOddArgument(p));
    }
    if eps.is_trivial() {
        return Ok(Rational::one());
    }
    let n = level.n();
    if eps.modulus() != n {
        return Err(Error::UnsupportedSymbol(format!("{s} at level {n}")));
    }
    match (level, eps.exponent()) {
        // (2^{-(p-1)} - 1) zeta(p; 1) = zeta(p; -1)
        (Level::Two, 1) => Ok(rational::pow(2, -(p - 1)) - Rational::one()),
        // zeta(p; 1) (1 - 3^{p-1}) = 2 * 3^{p-1} zeta(p; eps3)
        (Level::Three, 1) => {
            let t = rational::pow(3, p - 1);
            Ok((Rational::one() - &t) / (rational::int(2) * t))
        }
        // zeta(p; eps3) = (-1)^{p-1} zeta(p; eps3^{-1})
        (Level::Three, 2) => {
            let forward = depth1_decompose(&ZetaSymbol::lie(p, RootLabel::primitive(3)), level)?;
            Ok(forward * rational::int(sign(p - 1)))
        }
        _ => Err(Error::UnsupportedSymbol(format!("{s} at level {n}"))),
    }
}

/// One first-stage term of an oracle evaluation, with the projection of its
/// left factor onto the depth-one basis.
#[derive(Debug, Clone, Serialize)]
pub struct TraceTerm {
    pub left: String,
    pub right: String,
    #[serde(with = "rational::as_str")]
    pub coeff: Rational,
    #[serde(with = "rational::as_str")]
    pub left_projection: Rational,
    /// Result of the second derivation on the right factor (already projected).
    #[serde(with = "rational::as_str")]
    pub right_derivation: Rational,
    #[serde(with = "rational::as_str")]
    pub contribution: Rational,
}

/// Term-by-term record of `d_{m2} d_{m1} zeta^m(n1, n2; eps_N, eps_N^{-1})`.
#[derive(Debug, Clone, Serialize)]
pub struct OracleTrace {
    pub level: Level,
    pub weight: u32,
    pub m: IndexPair,
    pub n: IndexPair,
    pub symbol: String,
    pub terms: Vec<TraceTerm>,
    #[serde(with = "rational::as_str")]
    pub value: Rational,
}

fn second_derivation(right: &ZetaSymbol, p: i64, level: Level) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (lie, c) in d_p_depth1(right, p)?.iter() {
        acc += c * depth1_decompose(lie, level)?;
    }
    Ok(acc)
}

fn expand_symbol(s: &ZetaSymbol, m: IndexPair, level: Level) -> Result<Vec<TraceTerm>> {
    d_p_depth2(s, m.m1 as i64)?
        .into_iter()
        .map(|t| {
            let left_projection = depth1_decompose(&t.left, level)?;
            let right_derivation = second_derivation(&t.right, m.m2 as i64, level)?;
            let contribution = &t.coeff * &left_projection * &right_derivation;
            Ok(TraceTerm {
                left: t.left.to_string(),
                right: t.right.to_string(),
                coeff: t.coeff,
                left_projection,
                right_derivation,
                contribution,
            })
        })
        .collect()
}

/// `d_{m2} d_{m1}` applied to a combination of depth-two symbols.
pub fn derive_pair(comb: &ZetaCombination, m: IndexPair, level: Level) -> Result<Rational> {
    let mut total = Rational::zero();
    for (s, c) in comb.iter() {
        let part: Rational = expand_symbol(s, m, level)?
            .into_iter()
            .map(|t| t.contribution)
            .sum();
        total += c * part;
    }
    Ok(total)
}

/// `zeta^m(n1, n2; eps_N, eps_N^{-1})`.
pub fn defining_symbol(level: Level, n: IndexPair) -> ZetaSymbol {
    let eps = RootLabel::primitive(level.n());
    ZetaSymbol::motivic(vec![(n.m1 as i64, eps), (n.m2 as i64, eps.inverse())])
}

pub fn oracle_trace(level: Level, k: u32, m: IndexPair, n: IndexPair) -> Result<OracleTrace> {
    check_weight(k)?;
    index::position(k, m)?;
    index::position(k, n)?;
    let symbol = defining_symbol(level, n);
    let terms = expand_symbol(&symbol, m, level)?;
    let value = terms.iter().map(|t| t.contribution.clone()).sum();
    Ok(OracleTrace {
        level,
        weight: k,
        m,
        n,
        symbol: symbol.to_string(),
        terms,
        value,
    })
}

/// The `C^N` entry at `(m, n)` recomputed through the coaction.
pub fn oracle_entry(level: Level, k: u32, m: IndexPair, n: IndexPair) -> Result<Rational> {
    Ok(oracle_trace(level, k, m, n)?.value)
}
