//! Dense exact-rational matrices.
//!
//! Row reduction is fraction-free: each row is scaled to integers, reduced to
//! echelon form by Bareiss elimination (every intermediate entry is a minor
//! of the scaled input, so all divisions are exact), and only the final
//! normalization pass goes back to rationals. The characteristic polynomial
//! uses Berkowitz' division-free recurrence on the integer-scaled matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::poly::RatPoly;
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::index::IndexPair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Option<Vec<IndexPair>>,
    col_labels: Option<Vec<IndexPair>>,
}

/// Output of [`RatMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![Rational::one(); n])
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Builds from row vectors. An empty list gives a 0x`cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational::int(x)).collect())
                .collect(),
            cols,
        )
        .expect("ragged integer rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        }
    }

    /// Attaches index labels; lengths must match the dimensions.
    pub fn with_labels(mut self, rows: Vec<IndexPair>, cols: Vec<IndexPair>) -> Result<Self> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "labels {}x{} on a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.rows,
                self.cols
            )));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_labels(&self) -> Option<&[IndexPair]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[IndexPair]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = rhs.col_labels.clone();
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (o, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *o = f(o, b);
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= c;
        }
        out
    }

    /// Row vector times matrix, `v * self`.
    pub fn left_apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                *o += a * b;
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Unique reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let (echelon, pivots) = bareiss_echelon(self);
        let rank = pivots.len();
        let mut rows: Vec<Vec<Rational>> = echelon
            .into_iter()
            .take(rank)
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let inv = rows[r][pc].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            let (above, rest) = rows.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(pivot_row).skip(pc) {
                    *x -= &f * p;
                }
            }
        }
        rows.resize(self.rows, vec![Rational::zero(); self.cols]);
        let reduced = RatMatrix::from_rows(rows, self.cols).expect("shape preserved");
        Rref {
            reduced,
            pivot_columns: pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).1.len()
    }

    /// Basis of `{v : self * v = 0}` as rows, in reduced row-echelon form.
    pub fn null_space(&self) -> RatMatrix {
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        let basis: Vec<Vec<Rational>> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (r, &p) in pivot_columns.iter().enumerate() {
                    v[p] = -reduced.get(r, f).clone();
                }
                v
            })
            .collect();
        let basis = RatMatrix::from_rows(basis, n).expect("uniform rows");
        basis.rref_rows()
    }

    /// Basis of `{v : v * self = 0}` as rows, in reduced row-echelon form.
    pub fn left_kernel(&self) -> RatMatrix {
        self.transpose().null_space()
    }

    /// Basis of `{v : v * self = mu * v}`, possibly with no rows.
    pub fn eigenspace_left(&self, mu: &Rational) -> Result<RatMatrix> {
        self.require_square()?;
        let shifted = self.sub(&Self::identity(self.rows).scale(mu))?;
        Ok(shifted.left_kernel())
    }

    /// Nonzero rows of the RREF, i.e. the canonical basis of the row space.
    pub fn rref_rows(&self) -> RatMatrix {
        let Rref { reduced, rank, .. } = self.rref();
        RatMatrix::from_rows(reduced.to_rows().into_iter().take(rank).collect(), self.cols)
            .expect("uniform rows")
    }

    /// Coordinates of `v` in the basis given by the rows of `self`, which
    /// must be in reduced row-echelon form with the given pivot columns.
    /// `None` if `v` is outside the row space.
    pub fn rref_coordinates(&self, pivot_columns: &[usize], v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = pivot_columns.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.left_apply(&coords).ok()?;
        (rebuilt == v).then_some(coords)
    }

    /// Monic `det(t I - self)`.
    pub fn charpoly(&self) -> Result<RatPoly> {
        self.require_square()?;
        let n = self.rows;
        let den = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let scaled: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.numer() * (&den / e.denom()))
                    .collect()
            })
            .collect();
        // det(tI - M) = den^{-n} det((den t) I - A)
        // so the coefficient of t^i is a_i * den^(i-n)
        let highest_first = berkowitz(&scaled);
        let den_inv = Rational::from_integer(den).recip();
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut factor = Rational::one();
        for (i, a) in highest_first.into_iter().enumerate() {
            coeffs[n - i] = Rational::from_integer(a) * &factor;
            factor *= &den_inv;
        }
        Ok(RatPoly::new(coeffs))
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Integer echelon form of the row-scaled matrix and its pivot columns.
fn bareiss_echelon(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let den = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            row.iter().map(|e| e.numer() * (&den / e.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[col];
        for row in below.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..m.cols {
                let v = pv * &row[j] - &f * &pivot_row[j];
                row[j] = exact_div(&v, &prev);
            }
            row[col] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Coefficients of `det(t I - a)`, highest degree first, without division.
fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut v = vec![BigInt::one()];
    for r in 0..n {
        // leading (r+1)x(r+1) block: A_sub = a[..r][..r], C = a[..r][r], R = a[r][..r]
        let mut q = Vec::with_capacity(r + 2);
        q.push(BigInt::one());
        q.push(-&a[r][r]);
        let mut w: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for step in 0..r {
            let rw: BigInt = (0..r).map(|j| &a[r][j] * &w[j]).sum();
            q.push(-rw);
            if step + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).map(|j| &a[i][j] * &w[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j {
                    *out += &q[i - j] * vj;
                }
            }
        }
        v = next;
    }
    v
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let cols = raw.first().map_or(0, Vec::len);
        let rows = raw
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| rational::parse(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        RatMatrix::from_rows(rows, cols).map_err(de::Error::custom)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    #[test]
    fn rref_identity_and_dependent_rows() {
        let id = RatMatrix::identity(2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let m = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.reduced, RatMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn rref_with_fractions_and_skipped_columns() {
        let m = RatMatrix::from_rows(
            vec![
                vec![int(0), frac(1, 2), int(1), int(3)],
                vec![int(0), int(1), int(2), int(7)],
                vec![int(0), frac(3, 2), int(3), int(10)],
            ],
            4,
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.pivot_columns, vec![1, 3]);
        assert_eq!(
            r.reduced,
            RatMatrix::from_int_rows(&[&[0, 1, 2, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]])
        );
    }

    #[test]
    fn kernels_of_trivial_matrices() {
        assert_eq!(RatMatrix::zeros(3, 3).left_kernel(), RatMatrix::identity(3));
        assert_eq!(RatMatrix::identity(2).left_kernel().rows(), 0);
        assert_eq!(RatMatrix::zeros(0, 0).left_kernel().rows(), 0);
    }

    #[test]
    fn charpoly_small_cases() {
        let m = RatMatrix::from_int_rows(&[&[5]]);
        assert_eq!(m.charpoly().unwrap(), RatPoly::from_ints(&[-5, 1]));
        assert_eq!(
            RatMatrix::identity(2).charpoly().unwrap(),
            RatPoly::from_ints(&[1, -2, 1])
        );
        let d = RatMatrix::diagonal(vec![frac(-15, 16)]);
        assert_eq!(
            d.charpoly().unwrap(),
            RatPoly::new(vec![frac(15, 16), int(1)])
        );
        assert_eq!(RatMatrix::zeros(0, 0).charpoly().unwrap(), RatPoly::one());
        assert_eq!(
            RatMatrix::zeros(2, 3).charpoly(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn charpoly_three_by_three() {
        // [[2,1,0],[1,3,1],[0,1,4]]: t^3 - 9t^2 + 24t - 18
        let m = RatMatrix::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.charpoly().unwrap(), RatPoly::from_ints(&[-18, 24, -9, 1]));
    }

    #[test]
    fn eigenspace_identity() {
        let id = RatMatrix::identity(3);
        assert_eq!(id.eigenspace_left(&int(1)).unwrap(), id);
        assert_eq!(id.eigenspace_left(&int(2)).unwrap().rows(), 0);
        assert!(RatMatrix::zeros(1, 2).eigenspace_left(&int(0)).is_err());
    }

    #[test]
    fn rref_coordinates_membership() {
        let basis = RatMatrix::from_int_rows(&[&[1, 0, 2], &[0, 1, -1]]);
        let v = vec![int(3), int(2), int(4)];
        assert_eq!(basis.rref_coordinates(&[0, 1], &v), Some(vec![int(3), int(2)]));
        let w = vec![int(3), int(2), int(5)];
        assert_eq!(basis.rref_coordinates(&[0, 1], &w), None);
    }

    #[test]
    fn json_shape() {
        let m = RatMatrix::from_rows(vec![vec![frac(6885, 256), int(0)]], 2).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["6885/256","0"]]"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RatMatrix>(r#"[["1"],["1","2"]]"#).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::linalg::rational::frac;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
    }

    fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            // sparse-ish entries so that rank deficiency actually shows up
            prop::collection::vec(prop_oneof![2 => Just(Rational::zero()), 3 => small_rational()], r * c)
                .prop_map(move |e| RatMatrix::new(r, c, e).unwrap())
        })
    }

    fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(small_rational(), n * n).prop_map(move |e| RatMatrix::new(n, n, e).unwrap())
        })
    }

    /// Textbook Gauss-Jordan over the rationals.
    fn naive_rref(m: &RatMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut a = m.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols() {
            let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][col].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    let pivot_row = a[r].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        (a, pivots)
    }

    fn eval_matrix_poly(p: &RatPoly, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(m).unwrap().add(&RatMatrix::identity(n).scale(c)).unwrap();
        }
        acc
    }

    proptest! {
        #[test]
        fn rref_matches_gauss_jordan(m in matrix(6, 6)) {
            let (expected, pivots) = naive_rref(&m);
            let got = m.rref();
            prop_assert_eq!(got.reduced.to_rows(), expected);
            prop_assert_eq!(got.rank, pivots.len());
            prop_assert_eq!(got.pivot_columns, pivots);
        }

        #[test]
        fn left_kernel_annihilates(m in matrix(7, 5)) {
            let k = m.left_kernel();
            for i in 0..k.rows() {
                prop_assert!(m.left_apply(k.row(i)).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(m.rank() + k.rows(), m.rows());
            prop_assert_eq!(k.rank(), k.rows());
        }

        #[test]
        fn null_space_annihilates(m in matrix(5, 7)) {
            let ns = m.null_space();
            prop_assert_eq!(m.rank() + ns.rows(), m.cols());
            for i in 0..ns.rows() {
                let col = RatMatrix::from_rows(ns.row(i).iter().map(|x| vec![x.clone()]).collect(), 1).unwrap();
                prop_assert!(m.mul(&col).unwrap().is_zero());
            }
        }

        #[test]
        fn cayley_hamilton(m in square(6)) {
            let p = m.charpoly().unwrap();
            prop_assert_eq!(p.degree(), Some(m.rows()));
            prop_assert!(p.is_monic());
            prop_assert!(eval_matrix_poly(&p, &m).is_zero());
        }

        #[test]
        fn charpoly_trace_and_determinant(m in square(5)) {
            let n = m.rows();
            let p = m.charpoly().unwrap();
            let trace: Rational = (0..n).map(|i| m.get(i, i).clone()).sum();
            prop_assert_eq!(-p.coeff(n - 1), trace);
            // det(M) = (-1)^n p(0), and det is zero exactly when rank drops
            prop_assert_eq!(p.coeff(0).is_zero(), m.rank() < n);
        }

        #[test]
        fn coordinates_recover_combinations(m in matrix(5, 6), coeffs in prop::collection::vec(small_rational(), 5)) {
            let basis = m.rref_rows();
            let pivots = basis.rref().pivot_columns;
            let c = &coeffs[..basis.rows()];
            let v = basis.left_apply(c).unwrap();
            prop_assert_eq!(basis.rref_coordinates(&pivots, &v), Some(c.to_vec()));
        }
    }
}
