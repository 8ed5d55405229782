//! Spectral checks tying the matrices to modular forms: the level-one kernel,
//! Hecke characteristic polynomials recovered from `C^N`, the Deligne bound,
//! eigenvalue clustering, and newform dimension counts.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::check_weight;
use crate::linalg::poly::{real_root_count, series_coeffs, sturm_count};
use crate::linalg::rational::{self, Rational};
use crate::linalg::{RatMatrix, RatPoly};
use crate::matrices::{build_c, build_dc, Level};
use crate::period::{w_space_basis, Sign};

/// Basis (RREF rows) of the left kernel of `C^1_{k,2}`.
pub fn bs_kernel(k: u32) -> Result<RatMatrix> {
    Ok(build_c(Level::One, k)?.left_kernel())
}

/// Dimension of weight-`k` cusp forms for the full modular group.
pub fn dim_cusp_sl2(k: u32) -> Result<usize> {
    check_weight(k)?;
    if k < 4 {
        return Ok(0);
    }
    let q = (k / 12) as usize;
    Ok(if k % 12 == 2 { q - 1 } else { q })
}

/// Matrix of `v -> v C^N` on the kernel, in the kernel's RREF basis, or
/// `None` when the kernel is not stable.
pub fn restrict_to_kernel(k: u32, level: Level) -> Result<Option<RatMatrix>> {
    level.require_twisted()?;
    let basis = bs_kernel(k)?;
    let c = build_c(level, k)?;
    let pivots = basis.rref().pivot_columns;
    let image = basis.mul(&c)?;
    let mut rows = Vec::with_capacity(basis.rows());
    for i in 0..image.rows() {
        match basis.rref_coordinates(&pivots, image.row(i)) {
            Some(coords) => rows.push(coords),
            None => return Ok(None),
        }
    }
    Ok(Some(RatMatrix::from_rows(rows, basis.rows())?))
}

/// Whether the kernel of `C^1` is carried into itself by `C^N`.
pub fn check_invariance(k: u32, level: Level) -> Result<bool> {
    Ok(restrict_to_kernel(k, level)?.is_some())
}

/// `s_N`: `2^{k-2}` at level 2, `4 * 3^{k-2}` at level 3.
pub fn hecke_scale(level: Level, k: u32) -> Result<Rational> {
    let e = k as i64 - 2;
    Ok(match level.require_twisted()? {
        Level::Two => rational::pow(2, e),
        _ => rational::int(4) * rational::pow(3, e),
    })
}

/// `1 + N^{k-1}`.
pub fn hecke_shift(level: Level, k: u32) -> Rational {
    Rational::one() + rational::pow(level.n() as i64, k as i64 - 1)
}

/// Hecke eigenvalue `lambda` to the matching `C^N` eigenvalue.
pub fn hecke_to_matrix_eigenvalue(level: Level, k: u32, lambda: &Rational) -> Result<Rational> {
    Ok((lambda - hecke_shift(level, k)) / hecke_scale(level, k)?)
}

/// `charpoly(s_N R + (1 + N^{k-1}) I)` with `R` the restriction of `C^N`.
pub fn hecke_charpoly(k: u32, level: Level) -> Result<RatPoly> {
    let r = restrict_to_kernel(k, level)?.ok_or(Error::InvarianceFailure {
        weight: k,
        level: level.n(),
    })?;
    let n = r.rows();
    let hecke = r
        .scale(&hecke_scale(level, k)?)
        .add(&RatMatrix::identity(n).scale(&hecke_shift(level, k)))?;
    hecke.charpoly()
}

/// Integral, totally real, and every root within `2 N^{(k-1)/2}` in
/// absolute value.
pub fn deligne_check(k: u32, level: Level) -> Result<bool> {
    let p = hecke_charpoly(k, level)?;
    deligne_holds(&p, level, k)
}

fn deligne_holds(p: &RatPoly, level: Level, k: u32) -> Result<bool> {
    if !p.has_integer_coeffs() {
        return Ok(false);
    }
    if p.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    let sf = p.square_free_part();
    if real_root_count(&sf)? != sf.degree().unwrap_or(0) {
        return Ok(false);
    }
    // roots t with t^2 > 4 N^{k-1}, counted as roots u = t^2 of p(t)p(-t)
    let bound_sq = rational::int(4) * rational::pow(level.n() as i64, k as i64 - 1);
    let squared = p.squared_roots();
    let top = squared.cauchy_bound();
    if top <= bound_sq {
        return Ok(true);
    }
    Ok(sturm_count(&squared, &bound_sq, &top)? == 0)
}

/// `C^N` eigenvalue matching the unique Hecke root when the kernel is a line.
pub fn kernel_eigenvalue(k: u32, level: Level) -> Result<Option<Rational>> {
    let p = hecke_charpoly(k, level)?;
    if p.degree() != Some(1) {
        return Ok(None);
    }
    let lambda = -p.coeff(0) / p.coeff(1);
    hecke_to_matrix_eigenvalue(level, k, &lambda).map(Some)
}

/// When the kernel is a line spanned by `v`, whether `v C^N = mu v` for the
/// eigenvalue recovered from the Hecke root. `None` for other dimensions.
pub fn kernel_eigen_consistent(k: u32, level: Level) -> Result<Option<bool>> {
    let Some(mu) = kernel_eigenvalue(k, level)? else {
        return Ok(None);
    };
    let basis = bs_kernel(k)?;
    let v = basis.row(0);
    let image = build_c(level, k)?.left_apply(v)?;
    let expected: Vec<Rational> = v.iter().map(|x| x * &mu).collect();
    Ok(Some(image == expected))
}

/// `D C` eigenvalue attached to newforms of the given Atkin-Lehner sign.
pub fn newform_eigenvalue(level: Level, k: u32, sign: Sign) -> Result<Rational> {
    check_weight(k)?;
    let n = level.require_twisted()?.n() as i64;
    let twist = rational::int(sign.value()) * rational::pow(n, -((k as i64 - 2) / 2));
    let base = -(Rational::one() + twist);
    Ok(match level {
        Level::Two => base,
        _ => base / rational::int(2),
    })
}

/// A count per Atkin-Lehner sign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignDims {
    #[serde(rename = "+")]
    pub plus: usize,
    #[serde(rename = "-")]
    pub minus: usize,
}

impl SignDims {
    pub fn from_fn(mut f: impl FnMut(Sign) -> Result<usize>) -> Result<Self> {
        Ok(SignDims {
            plus: f(Sign::Plus)?,
            minus: f(Sign::Minus)?,
        })
    }

    pub fn get(&self, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }
}

impl fmt::Display for SignDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{+:{}, -:{}}}", self.plus, self.minus)
    }
}

/// Eigenspace dimensions of `D C` at the two newform eigenvalues.
pub fn newform_dims(level: Level, k: u32) -> Result<SignDims> {
    let dc = build_dc(level, k)?;
    SignDims::from_fn(|sign| Ok(dc.eigenspace_left(&newform_eigenvalue(level, k, sign)?)?.rows()))
}

/// Numerator and denominator of the conjectured generating series.
pub fn conjecture_series(level: Level, sign: Sign) -> Result<(RatPoly, RatPoly)> {
    let mono = |n: usize| RatPoly::monomial(Rational::one(), n);
    let den = |a: usize, b: usize| &RatPoly::one_minus_power(a) * &RatPoly::one_minus_power(b);
    Ok(match (level.require_twisted()?, sign) {
        (Level::Two, Sign::Plus) => (mono(8), den(6, 8)),
        (Level::Two, Sign::Minus) => (&mono(2) + &mono(20), den(8, 12)),
        (_, Sign::Plus) => (mono(8), den(2, 12)),
        (_, Sign::Minus) => (
            &(&(&mono(6) + &mono(14)) + &mono(16)) - &mono(18),
            den(4, 12),
        ),
    })
}

/// Coefficient of `x^k` in the conjectured series.
pub fn conjecture_series_dim(level: Level, sign: Sign, k: u32) -> Result<usize> {
    let (num, den) = conjecture_series(level, sign)?;
    let c = series_coeffs(&num, &den, k as usize)?.pop().expect("n + 1 coefficients");
    if !rational::is_integer(&c) || c.is_negative() {
        return Err(Error::Parse {
            what: "series coefficient as a count",
            input: c.to_string(),
        });
    }
    Ok(c.to_integer().try_into().expect("small count"))
}

pub fn conjecture_dims(level: Level, k: u32) -> Result<SignDims> {
    SignDims::from_fn(|sign| conjecture_series_dim(level, sign, k))
}

pub fn wspace_dims(level: Level, k: u32) -> Result<SignDims> {
    SignDims::from_fn(|sign| Ok(w_space_basis(level, k, sign)?.len()))
}

/// Half-open window around the limiting eigenvalue of `C^N`.
pub fn cluster_window(level: Level) -> Result<(Rational, Rational)> {
    Ok(match level.require_twisted()? {
        Level::Two => (rational::frac(-5, 2), rational::frac(-3, 2)),
        _ => (rational::frac(-7, 8), rational::frac(-5, 8)),
    })
}

/// Distinct eigenvalues of `C^N` inside [`cluster_window`].
pub fn cluster_count(k: u32, level: Level) -> Result<usize> {
    let (lo, hi) = cluster_window(level)?;
    let p = build_c(level, k)?.charpoly()?;
    sturm_count(&p, &lo, &hi)
}

/// Everything the sweep records for one `(k, N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub weight: u32,
    pub level: Level,
    pub bs_dim: usize,
    pub bs_kernel: RatMatrix,
    pub dim_cusp: usize,
    pub invariance_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hecke_charpoly: Option<RatPoly>,
    pub integral_ok: bool,
    pub deligne_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen_consistent: Option<bool>,
    pub cluster_count: usize,
    pub newform_dims: SignDims,
    pub conjecture_dims: SignDims,
    pub wspace_dims: SignDims,
}

impl SpectralReport {
    pub fn build(k: u32, level: Level) -> Result<Self> {
        level.require_twisted()?;
        let bs_kernel = bs_kernel(k)?;
        let hecke_charpoly = match hecke_charpoly(k, level) {
            Ok(p) => Some(p),
            Err(Error::InvarianceFailure { .. }) => None,
            Err(e) => return Err(e),
        };
        let (integral_ok, deligne_ok, eigen_consistent) = match &hecke_charpoly {
            Some(p) => (
                p.has_integer_coeffs(),
                deligne_holds(p, level, k)?,
                kernel_eigen_consistent(k, level)?,
            ),
            None => (false, false, None),
        };
        Ok(SpectralReport {
            weight: k,
            level,
            bs_dim: bs_kernel.rows(),
            bs_kernel,
            dim_cusp: dim_cusp_sl2(k)?,
            invariance_ok: hecke_charpoly.is_some(),
            hecke_charpoly,
            integral_ok,
            deligne_ok,
            eigen_consistent,
            cluster_count: cluster_count(k, level)?,
            newform_dims: newform_dims(level, k)?,
            conjecture_dims: conjecture_dims(level, k)?,
            wspace_dims: wspace_dims(level, k)?,
        })
    }

    /// Names of the kernel, Hecke and clustering properties that fail.
    pub fn spectral_violations(&self) -> Vec<&'static str> {
        let checks = [
            ("bs_dim", self.bs_dim == self.dim_cusp),
            ("invariance", self.invariance_ok),
            ("integrality", self.integral_ok),
            ("deligne", self.deligne_ok),
            ("eigen_consistency", self.eigen_consistent != Some(false)),
            ("cluster_count", self.cluster_count == self.dim_cusp),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }

    /// Names of the newform dimension comparisons that fail.
    pub fn conjecture_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for sign in Sign::BOTH {
            let (e, s, w) = (
                self.newform_dims.get(sign),
                self.conjecture_dims.get(sign),
                self.wspace_dims.get(sign),
            );
            if e != s {
                out.push(match sign {
                    Sign::Plus => "newform_vs_series(+)",
                    Sign::Minus => "newform_vs_series(-)",
                });
            }
            if e != w {
                out.push(match sign {
                    Sign::Plus => "newform_vs_wspace(+)",
                    Sign::Minus => "newform_vs_wspace(-)",
                });
            }
        }
        out
    }
}

/// Newform dimension counts only, for sweeps that skip the kernel work.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub weight: u32,
    pub level: Level,
    pub newform_dims: SignDims,
    pub conjecture_dims: SignDims,
    pub wspace_dims: SignDims,
}

impl ConjectureRow {
    pub fn build(k: u32, level: Level) -> Result<Self> {
        Ok(ConjectureRow {
            weight: k,
            level,
            newform_dims: newform_dims(level, k)?,
            conjecture_dims: conjecture_dims(level, k)?,
            wspace_dims: wspace_dims(level, k)?,
        })
    }

    /// `(sign, eigenspace, series, wspace)` for each sign where they disagree.
    pub fn mismatches(&self) -> Vec<(Sign, usize, usize, usize)> {
        Sign::BOTH
            .into_iter()
            .map(|s| {
                (
                    s,
                    self.newform_dims.get(s),
                    self.conjecture_dims.get(s),
                    self.wspace_dims.get(s),
                )
            })
            .filter(|&(_, e, c, w)| e != c || e != w)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    #[test]
    fn kernel_dimensions() {
        let k12 = bs_kernel(12).unwrap();
        assert_eq!(k12.rows(), 1);
        let v = k12.row(0);
        let scale = v[0].clone();
        let expected = [1, -3, 3, -1].map(|x| int(x) * &scale);
        assert_eq!(v, expected.as_slice());
        assert_eq!(bs_kernel(10).unwrap().rows(), 0);
        assert_eq!(bs_kernel(24).unwrap().rows(), 2);
    }

    #[test]
    fn cusp_dimension_formula() {
        let cases = [(2, 0), (4, 0), (10, 0), (12, 1), (14, 0), (24, 2), (26, 1), (38, 2)];
        for (k, d) in cases {
            assert_eq!(dim_cusp_sl2(k).unwrap(), d, "k={k}");
        }
        assert!(dim_cusp_sl2(7).is_err());
    }

    #[test]
    fn invariance_examples() {
        assert!(check_invariance(12, Level::Two).unwrap());
        assert!(check_invariance(24, Level::Three).unwrap());
        assert!(check_invariance(10, Level::Two).unwrap());
        assert!(check_invariance(12, Level::One).is_err());
    }

    #[test]
    fn hecke_polynomials() {
        assert_eq!(hecke_charpoly(12, Level::Two).unwrap(), RatPoly::from_ints(&[24, 1]));
        assert_eq!(hecke_charpoly(12, Level::Three).unwrap(), RatPoly::from_ints(&[-252, 1]));
        assert_eq!(hecke_charpoly(10, Level::Two).unwrap(), RatPoly::one());
        assert_eq!(hecke_charpoly(10, Level::Three).unwrap(), RatPoly::one());

        let p24 = hecke_charpoly(24, Level::Two).unwrap();
        assert_eq!(p24, RatPoly::from_ints(&[-20468736, -1080, 1]));
        let disc = p24.coeff(1) * p24.coeff(1) - int(4) * p24.coeff(0);
        assert!(disc.is_positive());
    }

    #[test]
    fn deligne_examples() {
        assert!(deligne_check(12, Level::Two).unwrap());
        assert!(deligne_check(24, Level::Two).unwrap());
        assert!(deligne_check(10, Level::Three).unwrap());
        // |t| = 100 exceeds 2 * 2^{5.5} ~ 90.5; |t| = 90 does not
        assert!(!deligne_holds(&RatPoly::from_ints(&[-100, 1]), Level::Two, 12).unwrap());
        assert!(deligne_holds(&RatPoly::from_ints(&[-90, 1]), Level::Two, 12).unwrap());
        assert!(!deligne_holds(&RatPoly::from_ints(&[1, 0, 1]), Level::Two, 12).unwrap());
        assert!(!deligne_holds(&RatPoly::new(vec![frac(1, 2), int(1)]), Level::Two, 12).unwrap());
    }

    #[test]
    fn kernel_eigenvalues() {
        assert_eq!(kernel_eigenvalue(12, Level::Two).unwrap(), Some(frac(-2073, 1024)));
        assert_eq!(kernel_eigenvalue(12, Level::Three).unwrap(), Some(frac(-44224, 59049)));
        assert_eq!(kernel_eigenvalue(24, Level::Two).unwrap(), None);
        assert_eq!(kernel_eigen_consistent(16, Level::Three).unwrap(), Some(true));
    }

    #[test]
    fn newform_eigenvalues() {
        assert_eq!(newform_eigenvalue(Level::Two, 10, Sign::Minus).unwrap(), frac(-15, 16));
        assert_eq!(newform_eigenvalue(Level::Three, 10, Sign::Minus).unwrap(), frac(-40, 81));
        assert_eq!(newform_eigenvalue(Level::Three, 10, Sign::Plus).unwrap(), frac(-41, 81));
    }

    #[test]
    fn newform_dimension_examples() {
        assert_eq!(newform_dims(Level::Two, 10).unwrap(), SignDims { plus: 0, minus: 1 });
        assert_eq!(newform_dims(Level::Three, 10).unwrap(), SignDims { plus: 1, minus: 1 });
        assert_eq!(newform_dims(Level::Two, 6).unwrap(), SignDims { plus: 0, minus: 1 });
    }

    #[test]
    fn series_examples() {
        assert_eq!(conjecture_series_dim(Level::Two, Sign::Plus, 8).unwrap(), 1);
        assert_eq!(conjecture_series_dim(Level::Two, Sign::Minus, 10).unwrap(), 1);
        assert_eq!(conjecture_series_dim(Level::Three, Sign::Minus, 6).unwrap(), 1);
        assert_eq!(conjecture_series_dim(Level::Two, Sign::Minus, 6).unwrap(), 0);
    }

    #[test]
    fn cluster_examples() {
        assert_eq!(cluster_count(12, Level::Two).unwrap(), 1);
        assert_eq!(cluster_count(12, Level::Three).unwrap(), 1);
        assert_eq!(cluster_count(10, Level::Two).unwrap(), 0);
    }

    #[test]
    fn report_at_weight_12() {
        let r = SpectralReport::build(12, Level::Two).unwrap();
        assert_eq!(r.bs_dim, 1);
        assert!(r.spectral_violations().is_empty());
        assert!(r.conjecture_violations().is_empty());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["hecke_charpoly"], serde_json::json!(["24", "1"]));
        assert_eq!(json["newform_dims"], serde_json::json!({"+": 0, "-": 0}));
    }

    #[test]
    fn weight_6_minus_disagreement() {
        let row = ConjectureRow::build(6, Level::Two).unwrap();
        assert_eq!(row.mismatches(), vec![(Sign::Minus, 1, 0, 1)]);
    }
}
