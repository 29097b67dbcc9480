//! Exact rational scalars, dense vectors and matrices, and Gaussian elimination.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of the ground field ℚ, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"`; the result is reduced.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

/// Dense vector of fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The standard basis vector e_i (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`, skipping zero entries of `other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Nonzero entries as (index, value) pairs.
    pub fn support(&self) -> Vec<(usize, Scalar)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }

    /// Direct sum (self, other).
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut out = self.0.clone();
        out.extend(other.0.iter().cloned());
        Vector(out)
    }

    /// Renders as a combination of labelled basis vectors, e.g. `3·h - 1/2·e`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let label = labels.get(i).cloned().unwrap_or_else(|| format!("e{}", i + 1));
            let mag = x.abs();
            let term = if mag.is_one() { label } else { format!("{}·{}", mag, label) };
            if out.is_empty() {
                if x.is_negative() {
                    out.push('-');
                }
                out.push_str(&term);
            } else {
                out.push_str(if x.is_negative() { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Builds from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Parse(format!("matrix row {} has length {}, expected {c}", i + 1, row.len())));
            }
            data.extend(row);
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).expect("ragged integer matrix")
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), rows, "column length mismatch");
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i].clone();
            }
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let mut out = Vector::zeros(self.rows);
        for (j, x) in v.entries().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] += a * x;
                }
            }
        }
        out
    }

    /// Block diagonal sum diag(self, other).
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Reduced row echelon form in place; returns pivot columns in row order.
fn rref(m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let x = &m.data[r * cols + j];
            if !x.is_zero() {
                m.data[r * cols + j] = x * &inv;
            }
        }
        let pivot_row: Vec<(usize, Scalar)> = (c..cols).filter(|&j| !m.get(r, j).is_zero()).map(|j| (j, m.get(r, j).clone())).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in &pivot_row {
                let cell = &mut m.data[i * cols + j];
                *cell -= &f * x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn mat_rank(m: &Mat) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the null space; has `cols − rank` elements.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = Vector::zeros(m.cols);
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -work.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of `m·x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &Mat, b: &Vector) -> Result<Option<Vector>> {
    if b.dim() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.dim() });
    }
    let mut aug = Mat::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = Vector::zeros(m.cols);
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&Mat::identity(2)), 2);
        assert_eq!(mat_rank(&Mat::zeros(3, 3)), 0);
        assert_eq!(mat_rank(&Mat::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
        assert_eq!(kernel_basis(&Mat::from_int_rows(&[&[1, -1]])), vec![Vector::from_ints(&[1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = Vector::new(vec![frac(1, 2), int(-3)]);
        assert_eq!(solve_linear(&Mat::identity(2), &b).unwrap(), Some(b.clone()));
        let m = Mat::from_int_rows(&[&[1, 1]]);
        let x = solve_linear(&m, &Vector::from_ints(&[2])).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(2));
        assert_eq!(solve_linear(&Mat::zeros(1, 1), &Vector::from_ints(&[1])).unwrap(), None);
        assert!(solve_linear(&Mat::identity(2), &Vector::from_ints(&[1])).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
        assert_eq!(format_scalar(&parse_scalar("-6/3").unwrap()), "-2");
        assert_eq!(format_scalar(&frac(3, -6)), "-1/2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
    }

    #[test]
    fn render_uses_labels() {
        let labels: Vec<String> = ["e", "h", "f"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Vector::from_ints(&[0, 3, 0]).render(&labels), "3·h");
        assert_eq!(Vector::from_ints(&[-1, 1, 0]).render(&labels), "-e + h");
        assert_eq!(Vector::zeros(3).render(&labels), "0");
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c)
                .prop_map(move |xs| Mat::from_rows(xs.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat()) {
            let ker = kernel_basis(&m);
            prop_assert_eq!(mat_rank(&m) + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn solve_matches_augmented_rank(m in small_mat(), seed in proptest::collection::vec(-3i64..=3, 4)) {
            let b = Vector::new((0..m.rows()).map(|i| int(seed[i % seed.len()])).collect());
            let aug = Mat::from_columns(m.rows(), &(0..m.cols()).map(|j| m.column(j)).chain([b.clone()]).collect::<Vec<_>>());
            let sol = solve_linear(&m, &b).unwrap();
            prop_assert_eq!(sol.is_none(), mat_rank(&aug) > mat_rank(&m));
            if let Some(x) = sol {
                prop_assert_eq!(m.mul_vec(&x), b);
            }
        }

        #[test]
        fn exact_arithmetic(a in -100i64..100, b in 1i64..50, c in -100i64..100, d in 1i64..50) {
            let x = frac(a, b);
            let y = frac(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn product_associative(a in small_mat()) {
            let n = a.cols();
            let b = Mat::identity(n);
            prop_assert_eq!(&(&a * &b), &a);
            let at = a.transpose();
            prop_assert_eq!(&(&(&a * &at) * &a), &(&a * &(&at * &a)));
        }
    }
}
