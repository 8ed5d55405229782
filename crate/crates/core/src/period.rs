//! Homogeneous two-variable polynomials and the period-polynomial operators
//! acting on them: substitutions, the restricted even projection, Hecke
//! `T_N` through Manin representatives, `U_N`, the Atkin-Lehner sign and the
//! W-space solvers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::{check_weight, index_len, totally_odd_index, IndexPair};
use crate::linalg::rational::{self, Rational};
use crate::linalg::RatMatrix;
use crate::matrices::Level;

/// Sign of an Atkin-Lehner eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// 2x2 rational matrix `[[a, b], [c, d]]`, acting by
/// `p(x, y) -> p(a x + b y, c x + d y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2(pub [[Rational; 2]; 2]);

impl Mat2 {
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([
            [rational::int(a), rational::int(b)],
            [rational::int(c), rational::int(d)],
        ])
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        let cell = |i: usize, j: usize| &l[i][0] * &r[0][j] + &l[i][1] * &r[1][j];
        Mat2([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

/// Zagier's representatives for `T_2`.
pub fn manin_2() -> Vec<Mat2> {
    vec![
        Mat2::from_ints(2, 0, 0, 1),
        Mat2::from_ints(1, 0, 0, 2),
        Mat2::from_ints(2, 0, 1, 1),
        Mat2::from_ints(1, 1, 0, 2),
    ]
}

/// Zagier's representatives for `T_3`.
pub fn manin_3() -> Vec<Mat2> {
    vec![
        Mat2::from_ints(3, 0, 0, 1),
        Mat2::from_ints(1, 0, 0, 3),
        Mat2::from_ints(3, 0, 1, 1),
        Mat2::from_ints(3, 0, -1, 1),
        Mat2::from_ints(1, 1, 0, 3),
        Mat2::from_ints(1, -1, 0, 3),
    ]
}

/// Homogeneous polynomial in `x, y`. `coeffs[a]` is the coefficient of
/// `x^a y^(degree - a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    degree: u32,
    coeffs: Vec<Rational>,
}

impl HomogPoly {
    pub fn zero(degree: u32) -> Self {
        HomogPoly {
            degree,
            coeffs: vec![Rational::zero(); degree as usize + 1],
        }
    }

    /// Builds from `(x exponent, y exponent, coefficient)` triples; repeated
    /// monomials are summed.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (a, b, c) in terms {
            if a + b != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: a + b,
                });
            }
            p.coeffs[a as usize] += c;
        }
        Ok(p)
    }

    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        Self::from_terms(a + b, [(a, b, c)]).expect("degree matches by construction")
    }

    /// `x^{k-2} - y^{k-2}`.
    pub fn boundary(k: u32) -> Self {
        let d = k - 2;
        Self::from_terms(d, [(d, 0, Rational::one()), (0, d, -Rational::one())])
            .expect("degree matches by construction")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        if a + b != self.degree {
            return Rational::zero();
        }
        self.coeffs[a as usize].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero monomials as `(x exponent, y exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        let d = self.degree;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(a, c)| (a as u32, d - a as u32, c))
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(HomogPoly {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HomogPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Polynomial map `(x, y) -> (a x + b y, c x + d y)`.
    pub fn substitute(&self, g: &Mat2) -> Self {
        let d = self.degree as usize;
        let [[a, b], [c, dd]] = &g.0;
        let mut first = LinearFormPowers::new(a, b, d);
        let mut second = LinearFormPowers::new(c, dd, d);
        let mut out = vec![Rational::zero(); d + 1];
        for (xa, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let f = first.power(xa);
            let s = second.power(d - xa);
            for (i, fi) in f.iter().enumerate() {
                if fi.is_zero() {
                    continue;
                }
                let cf = coeff * fi;
                for (j, sj) in s.iter().enumerate() {
                    if !sj.is_zero() {
                        out[i + j] += &cf * sj;
                    }
                }
            }
        }
        HomogPoly {
            degree: self.degree,
            coeffs: out,
        }
    }

    /// JSON form `{"a,b": "num/den"}` over the nonzero monomials.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.terms()
            .map(|(a, b, c)| (format!("{a},{b}"), c.to_string()))
            .collect()
    }

    /// Inverse of [`HomogPoly::to_json_map`]; the degree is needed for the
    /// zero polynomial and is checked against every key.
    pub fn from_json_map(degree: u32, map: &BTreeMap<String, String>) -> Result<Self> {
        let terms = map
            .iter()
            .map(|(key, val)| {
                let bad = || Error::Parse {
                    what: "monomial key",
                    input: key.clone(),
                };
                let (a, b) = key.split_once(',').ok_or_else(bad)?;
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let b: u32 = b.trim().parse().map_err(|_| bad())?;
                Ok((a, b, rational::parse(val)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(degree, terms)
    }
}

/// Powers `(alpha x + beta y)^n`, each as coefficients by x-exponent,
/// expanded on demand.
struct LinearFormPowers {
    alpha_pows: Vec<Rational>,
    beta_pows: Vec<Rational>,
    cache: Vec<Option<Vec<Rational>>>,
}

impl LinearFormPowers {
    fn new(alpha: &Rational, beta: &Rational, max: usize) -> Self {
        LinearFormPowers {
            alpha_pows: powers(alpha, max),
            beta_pows: powers(beta, max),
            cache: vec![None; max + 1],
        }
    }

    fn power(&mut self, n: usize) -> &[Rational] {
        let (ap, bp) = (&self.alpha_pows, &self.beta_pows);
        self.cache[n].get_or_insert_with(|| {
            let mut row = BigInt::one();
            (0..=n)
                .map(|i| {
                    if i > 0 {
                        row = &row * BigInt::from(n - i + 1) / BigInt::from(i);
                    }
                    if ap[i].is_zero() || bp[n - i].is_zero() {
                        return Rational::zero();
                    }
                    Rational::from_integer(row.clone()) * &ap[i] * &bp[n - i]
                })
                .collect()
        })
    }
}

fn powers(x: &Rational, max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Rational::one());
    for i in 1..=max {
        out.push(&out[i - 1] * x);
    }
    out
}

impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (a, b, c) in terms {
            map.serialize_entry(&format!("{a},{b}"), &c.to_string())?;
        }
        map.end()
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, neg) => write!(f, " {} ", if neg { '-' } else { '+' })?,
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                parts.push(mag.to_string());
            }
            for (var, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Coefficients of a restricted even polynomial, indexed by `oo(k)`: the
/// entry at `(m1, m2)` is the coefficient of `x^{m2-1} y^{m1-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedVector {
    pub weight: u32,
    pub index: Vec<IndexPair>,
    #[serde(with = "rational::seq_as_str")]
    pub entries: Vec<Rational>,
}

impl RestrictedVector {
    pub fn new(weight: u32, entries: Vec<Rational>) -> Result<Self> {
        let index = totally_odd_index(weight)?;
        if index.len() != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for weight {weight}, expected {}",
                entries.len(),
                index.len()
            )));
        }
        Ok(RestrictedVector {
            weight,
            index,
            entries,
        })
    }

    pub fn from_ints(weight: u32, entries: &[i64]) -> Result<Self> {
        Self::new(weight, entries.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

pub fn from_vector(v: &RestrictedVector) -> HomogPoly {
    let degree = v.weight.saturating_sub(2);
    let terms = v
        .index
        .iter()
        .zip(&v.entries)
        .map(|(p, c)| (p.m2 - 1, p.m1 - 1, c.clone()));
    HomogPoly::from_terms(degree, terms).expect("index pairs sum to the weight")
}

/// Reads the coefficients at `x^{m2-1} y^{m1-1}`, `(m1, m2)` in `oo(k)`,
/// ignoring every other monomial.
pub fn to_vector(p: &HomogPoly, k: u32) -> Result<RestrictedVector> {
    check_degree(p, k)?;
    let entries = totally_odd_index(k)?
        .iter()
        .map(|m| p.coeff(m.m2 - 1, m.m1 - 1))
        .collect();
    RestrictedVector::new(k, entries)
}

fn check_degree(p: &HomogPoly, k: u32) -> Result<()> {
    check_weight(k)?;
    if k < 2 || p.degree() != k - 2 {
        return Err(Error::DegreeMismatch {
            expected: k.saturating_sub(2),
            found: p.degree(),
        });
    }
    Ok(())
}

pub fn substitute(p: &HomogPoly, g: &Mat2) -> HomogPoly {
    p.substitute(g)
}

/// Keeps only monomials with both exponents even and positive.
pub fn project_even_restricted(p: &HomogPoly, k: u32) -> Result<HomogPoly> {
    check_degree(p, k)?;
    let terms = p
        .terms()
        .filter(|&(a, b, _)| a % 2 == 0 && b % 2 == 0 && a > 0 && b > 0)
        .map(|(a, b, c)| (a, b, c.clone()));
    HomogPoly::from_terms(p.degree(), terms)
}

fn signed_sum(p: &HomogPoly, parts: &[(i64, Mat2)]) -> HomogPoly {
    parts.iter().fold(HomogPoly::zero(p.degree()), |acc, (s, g)| {
        acc.add(&p.substitute(g).scale(&rational::int(*s)))
            .expect("substitution preserves degree")
    })
}

/// `sum over Man_N of p|gamma`.
pub fn hecke_tn(p: &HomogPoly, level: Level) -> Result<HomogPoly> {
    let reps = match level.require_twisted()? {
        Level::Two => manin_2(),
        _ => manin_3(),
    };
    let parts: Vec<(i64, Mat2)> = reps.into_iter().map(|g| (1, g)).collect();
    Ok(signed_sum(p, &parts))
}

/// The `U_N` action: three terms at level 2, five at level 3.
pub fn u_n(p: &HomogPoly, level: Level) -> Result<HomogPoly> {
    let parts = match level.require_twisted()? {
        Level::Two => vec![
            (1, Mat2::from_ints(1, 0, 0, 2)),
            (1, Mat2::from_ints(1, 1, 0, 2)),
            (-1, Mat2::from_ints(1, 1, -2, 0)),
        ],
        _ => vec![
            (1, Mat2::from_ints(1, 0, 0, 3)),
            (1, Mat2::from_ints(1, 1, 0, 3)),
            (-1, Mat2::from_ints(1, 1, -3, 0)),
            (1, Mat2::from_ints(1, -1, 0, 3)),
            (-1, Mat2::from_ints(-1, 1, -3, 0)),
        ],
    };
    Ok(signed_sum(p, &parts))
}

/// `N^{(k-2)/2}`.
pub fn half_weight_power(level: Level, k: u32) -> Rational {
    rational::pow(level.n() as i64, (k as i64 - 2) / 2)
}

/// `-p(y, N x)`.
pub fn atkin_lehner_image(p: &HomogPoly, level: Level) -> HomogPoly {
    p.substitute(&Mat2::from_ints(0, 1, level.n() as i64, 0))
        .scale(&-Rational::one())
}

/// `s` when `-p(y, N x) = s N^{(k-2)/2} p(x, y)`; `None` otherwise, and for
/// the zero polynomial.
pub fn atkin_lehner_sign(p: &HomogPoly, level: Level, k: u32) -> Result<Option<Sign>> {
    level.require_twisted()?;
    check_degree(p, k)?;
    if p.is_zero() {
        return Ok(None);
    }
    let image = atkin_lehner_image(p, level);
    let scale = half_weight_power(level, k);
    for sign in Sign::BOTH {
        if image == p.scale(&(&scale * rational::int(sign.value()))) {
            return Ok(Some(sign));
        }
    }
    Ok(None)
}

/// Left side minus right side of the first W-space relation, e.g. at level 2
/// `-p(y,x) - p(y,x+y) + p(x,x+y) + p(x,y)`, before projection.
pub fn w_relation_defect(p: &HomogPoly, level: Level) -> Result<HomogPoly> {
    let mut parts = vec![
        (-1, Mat2::from_ints(0, 1, 1, 0)),
        (-1, Mat2::from_ints(0, 1, 1, 1)),
        (1, Mat2::from_ints(1, 0, 1, 1)),
        (1, Mat2::identity()),
    ];
    if level.require_twisted()? == Level::Three {
        parts.push((-1, Mat2::from_ints(0, 1, 1, -1)));
        parts.push((1, Mat2::from_ints(1, 0, 1, -1)));
    }
    Ok(signed_sum(p, &parts))
}

/// `-p(y, N x) - sign N^{(k-2)/2} p(x, y)`.
pub fn w_sign_defect(p: &HomogPoly, level: Level, k: u32, sign: Sign) -> HomogPoly {
    let target = p.scale(&(half_weight_power(level, k) * rational::int(sign.value())));
    atkin_lehner_image(p, level)
        .sub(&target)
        .expect("same degree")
}

/// Whether `v` satisfies both W-space relations after projection.
pub fn in_w_space(v: &RestrictedVector, level: Level, sign: Sign) -> Result<bool> {
    let k = v.weight;
    let p = from_vector(v);
    let first = project_even_restricted(&w_relation_defect(&p, level)?, k)?;
    let second = project_even_restricted(&w_sign_defect(&p, level, k, sign), k)?;
    Ok(first.is_zero() && second.is_zero())
}

/// Basis (RREF rows) of the restricted even `p` satisfying both W-space
/// relations modulo the projection.
pub fn w_space_basis(level: Level, k: u32, sign: Sign) -> Result<Vec<RestrictedVector>> {
    level.require_twisted()?;
    check_weight(k)?;
    let s = index_len(k);
    if s == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::with_capacity(s);
    for j in 0..s {
        let mut unit = vec![Rational::zero(); s];
        unit[j] = Rational::one();
        let p = from_vector(&RestrictedVector::new(k, unit)?);
        let first = project_even_restricted(&w_relation_defect(&p, level)?, k)?;
        let second = project_even_restricted(&w_sign_defect(&p, level, k, sign), k)?;
        let mut row = to_vector(&first, k)?.entries;
        row.extend(to_vector(&second, k)?.entries);
        rows.push(row);
    }
    let constraints = RatMatrix::from_rows(rows, 2 * s)?;
    let kernel = constraints.left_kernel();
    kernel
        .to_rows()
        .into_iter()
        .map(|r| RestrictedVector::new(k, r))
        .collect()
}
