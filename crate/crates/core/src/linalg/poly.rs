//! Dense univariate polynomials over Q, Sturm root counting and power-series
//! division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Coefficients lowest degree first. The zero polynomial has no coefficients;
/// otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatPoly {
    #[serde(with = "rational::seq_as_str")]
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `1 - t^n`, the usual factor of a generating-series denominator.
    pub fn one_minus_power(n: usize) -> Self {
        Self::one() - Self::monomial(Rational::one(), n)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Rescales by a positive rational so that the coefficients become
    /// coprime integers. Signs (and therefore Sturm sign patterns) are kept.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &content))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero(),
            (false, true) => self.monic(),
            (true, false) => other.monic(),
            (false, false) => {
                let prs = primitive_prs(to_int_poly(self), to_int_poly(other));
                from_int_poly(prs.last().expect("nonempty")).monic()
            }
        }
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Canonical Sturm chain of the square-free part, each element scaled
    /// by a positive rational to coprime integer coefficients.
    pub fn sturm_chain(&self) -> Vec<Self> {
        int_sturm_chain(self).iter().map(from_int_poly).collect()
    }

    /// `p(t) * p(-t)` rewritten in `u = t^2`. Its roots are the squares of the
    /// roots of `p`, which turns bounds like `|r| <= sqrt(B)` into rational ones.
    pub fn squared_roots(&self) -> Self {
        let reflected = Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                .collect(),
        );
        let prod = self * &reflected;
        Self::new(prod.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Bound `B` such that every real root lies in `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lc) = self.leading() else {
            return Rational::one();
        };
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max_ratio + Rational::one()
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

/// Integer coefficients, lowest degree first, no trailing zeros.
type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Divides out the (positive) content.
fn int_primitive(p: IntPoly) -> IntPoly {
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &content).collect()
}

/// Positive rational multiple of `p` with coprime integer coefficients.
fn to_int_poly(p: &RatPoly) -> IntPoly {
    let den = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    int_primitive(p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect())
}

fn from_int_poly(p: &IntPoly) -> RatPoly {
    RatPoly::new(p.iter().cloned().map(Rational::from_integer).collect())
}

fn int_derivative(p: &IntPoly) -> IntPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// `|lc(b)|^(deg a - deg b + 1) * a mod b`; the multiplier is positive so the
/// result is a positive multiple of the true remainder.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return a.clone();
    }
    let lc = &b[db];
    let steps = a.len() - db;
    let mut r = a.clone();
    for top in (db..r.len()).rev() {
        let lead = r[top].clone();
        for c in r[..top].iter_mut() {
            *c *= lc;
        }
        if !lead.is_zero() {
            let shift = top - db;
            for (j, bj) in b[..db].iter().enumerate() {
                r[shift + j] -= &lead * bj;
            }
        }
        r[top] = BigInt::zero();
    }
    if lc.is_negative() && steps % 2 == 1 {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    trim(r)
}

/// `a, b, -prem(a, b), ...` with every element made primitive; ends at the
/// last nonzero element, which is the gcd up to a scalar.
fn primitive_prs(a: IntPoly, b: IntPoly) -> Vec<IntPoly> {
    let mut out = vec![a];
    if b.is_empty() {
        return out;
    }
    out.push(b);
    loop {
        let n = out.len();
        let r = pseudo_rem(&out[n - 2], &out[n - 1]);
        if r.is_empty() {
            return out;
        }
        out.push(int_primitive(r.into_iter().map(|c| -c).collect()));
    }
}

fn int_sturm_chain(p: &RatPoly) -> Vec<IntPoly> {
    let p0 = to_int_poly(p);
    let chain = primitive_prs(p0.clone(), int_primitive(int_derivative(&p0)));
    let g = chain.last().expect("nonempty");
    if g.len() <= 1 {
        return chain;
    }
    let sf = to_int_poly(&p.div_rem(&from_int_poly(g)).0);
    let d = int_primitive(int_derivative(&sf));
    primitive_prs(sf, d)
}

/// Sign of `p(x)`, via Horner's rule on `den^deg * p(num / den)`.
fn sign_at(p: &IntPoly, x: &Rational) -> i32 {
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn sign_changes(chain: &[IntPoly], x: &Rational) -> usize {
    let signs: Vec<i32> = chain.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &RatPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if a >= b {
        return Err(Error::EmptyInterval {
            lower: a.to_string(),
            upper: b.to_string(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = int_sturm_chain(p);
    Ok(sign_changes(&chain, a) - sign_changes(&chain, b))
}

/// Number of distinct real roots of `p`.
pub fn real_root_count(p: &RatPoly) -> Result<usize> {
    let b = p.cauchy_bound();
    sturm_count(p, &-b.clone(), &b)
}

/// First `n + 1` Taylor coefficients of `numerator / denominator` at 0.
pub fn series_coeffs(numerator: &RatPoly, denominator: &RatPoly, n: usize) -> Result<Vec<Rational>> {
    let d0 = denominator.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let d0_inv = d0.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = numerator.coeff(i);
        for (j, d) in denominator.coeffs.iter().enumerate().skip(1).take(i) {
            acc -= d * &out[i - j];
        }
        out.push(acc * &d0_inv);
    }
    Ok(out)
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;

            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub struct PolyDisplay<'a> {
    poly: &'a RatPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("t").fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    #[test]
    fn normalization_drops_trailing_zeros() {
        let p = RatPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RatPoly::from_ints(&[0, 0]).is_zero());
        assert_eq!(RatPoly::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t+2) / (t-1)
        let a = RatPoly::from_ints(&[-2, 1, 1]);
        let b = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, RatPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        let c = RatPoly::from_ints(&[1, 0, -1]);
        assert_eq!(a.gcd(&c), b);
    }

    #[test]
    fn square_free_part_removes_multiplicity() {
        // (t-1)^3 (t+1)
        let p = RatPoly::from_ints(&[-1, 1]);
        let p3 = &(&p * &p) * &p;
        let f = &p3 * &RatPoly::from_ints(&[1, 1]);
        assert_eq!(f.square_free_part().monic(), RatPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn sturm_examples() {
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-1), &int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-2), &int(2)).unwrap(), 2);
        let q = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &int(-10), &int(10)).unwrap(), 0);
        assert!(matches!(
            sturm_count(&p, &int(2), &int(2)),
            Err(Error::EmptyInterval { .. })
        ));
        assert_eq!(
            sturm_count(&RatPoly::zero(), &int(0), &int(1)),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(sturm_count(&RatPoly::one(), &int(0), &int(1)).unwrap(), 0);
    }

    #[test]
    fn sturm_counts_repeated_roots_once() {
        // (t - 1/2)^2 (t - 3)
        let a = RatPoly::new(vec![frac(-1, 2), int(1)]);
        let f = &(&a * &a) * &RatPoly::from_ints(&[-3, 1]);
        assert_eq!(sturm_count(&f, &int(0), &int(1)).unwrap(), 1);
        assert_eq!(real_root_count(&f).unwrap(), 2);
    }

    #[test]
    fn squared_roots_maps_roots_to_squares() {
        // roots 2, -3 -> squares 4, 9
        let p = RatPoly::from_ints(&[-6, 1, 1]);
        let q = p.squared_roots();
        assert!(q.eval(&int(4)).is_zero());
        assert!(q.eval(&int(9)).is_zero());
        assert_eq!(q.degree(), Some(2));
    }

    #[test]
    fn series_examples() {
        let one = RatPoly::one();
        let s = series_coeffs(&one, &RatPoly::one_minus_power(1), 3).unwrap();
        assert_eq!(s, vec![int(1); 4]);

        let num = RatPoly::monomial(int(1), 8);
        let den = RatPoly::one_minus_power(6) * RatPoly::one_minus_power(8);
        assert_eq!(series_coeffs(&num, &den, 8).unwrap()[8], int(1));

        let num = RatPoly::monomial(int(1), 2) + RatPoly::monomial(int(1), 20);
        let den = RatPoly::one_minus_power(8) * RatPoly::one_minus_power(12);
        assert_eq!(series_coeffs(&num, &den, 10).unwrap()[10], int(1));

        assert_eq!(
            series_coeffs(&one, &RatPoly::from_ints(&[0, 1]), 3),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn display() {
        let p = RatPoly::from_ints(&[-20468736, -1080, 1]);
        assert_eq!(p.to_string(), "t^2 - 1080*t - 20468736");
        assert_eq!(RatPoly::new(vec![frac(15, 16), int(1)]).to_string(), "t + 15/16");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::linalg::rational::{frac, int};
    use proptest::prelude::*;

    fn product_of_roots(roots: &[i64]) -> RatPoly {
        roots
            .iter()
            .fold(RatPoly::one(), |acc, &r| &acc * &RatPoly::from_ints(&[-r, 1]))
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| RatPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn counts_distinct_integer_roots(roots in prop::collection::vec(-20i64..=20, 1..7)) {
            let p = product_of_roots(&roots);
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(real_root_count(&p).unwrap(), distinct.len());
            let lo = int(-5);
            let hi = int(5);
            let inside = distinct.iter().filter(|&&r| r > -5 && r <= 5).count();
            prop_assert_eq!(sturm_count(&p, &lo, &hi).unwrap(), inside);
        }

        #[test]
        fn sturm_counts_add_over_partitions(p in poly(7), a in -30i64..0, gap1 in 1i64..30, gap2 in 1i64..30) {
            prop_assume!(!p.is_zero());
            let (a, b, c) = (frac(a, 3), frac(a + gap1, 3), frac(a + gap1 + gap2, 3));
            let whole = sturm_count(&p, &a, &c).unwrap();
            let parts = sturm_count(&p, &a, &b).unwrap() + sturm_count(&p, &b, &c).unwrap();
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn series_times_denominator_is_numerator(num in poly(5), den_tail in prop::collection::vec(-4i64..=4, 0..5), n in 0usize..15) {
            let mut d = vec![1];
            d.extend(den_tail);
            let den = RatPoly::from_ints(&d);
            let s = RatPoly::new(series_coeffs(&num, &den, n).unwrap());
            let back = &s * &den;
            for i in 0..=n {
                prop_assert_eq!(back.coeff(i), num.coeff(i));
            }
        }

        #[test]
        fn gcd_divides_both(a in poly(5), b in poly(5)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.div_rem(&g).1.is_zero());
            prop_assert!(b.div_rem(&g).1.is_zero());
        }

        #[test]
        fn squared_roots_are_squares(roots in prop::collection::vec(-9i64..=9, 1..5)) {
            let p = product_of_roots(&roots);
            let q = p.squared_roots();
            for r in &roots {
                prop_assert!(q.eval(&int(r * r)).is_zero());
            }
            prop_assert_eq!(q.degree(), p.degree());
        }
    }
}
