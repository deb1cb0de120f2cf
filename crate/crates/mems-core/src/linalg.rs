//! Exact dense linear algebra over the rationals.
//!
//! Elimination is fraction-free: rows are scaled to integers, combined by
//! cross-multiplication and divided by their content after every update.
//! Rationals only reappear when pivot rows are normalized at the end. The
//! elimination first runs on checked `i128` and restarts on `BigInt` if any
//! intermediate value overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MemsError, Result};

pub type Rational = BigRational;

/// Dense row-major rational matrix with optional row/column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(MemsError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries, row_labels: None, col_labels: None })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from explicit rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MemsError::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row);
        }
        Self::new(r, cols, entries)
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if row_labels.as_ref().is_some_and(|l| l.len() != self.rows)
            || col_labels.as_ref().is_some_and(|l| l.len() != self.cols)
        {
            return Err(MemsError::DimensionMismatch("label count differs from dimension".into()));
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
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

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Side-by-side concatenation (labels dropped).
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(MemsError::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Self::new(self.rows, cols, entries)
    }

    /// Stacks rows (labels dropped).
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(MemsError::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(MemsError::DimensionMismatch("product shapes".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Selects the given columns in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Integer arithmetic needed by the elimination kernel.
trait ExactInt: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude_rank(&self) -> u128;
    /// `a * ma - b * mb`, or `None` on overflow.
    fn mul_sub(a: &Self, ma: &Self, b: &Self, mb: &Self) -> Option<Self>;
    fn mul(a: &Self, m: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn is_one(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_rank(&self) -> u128 {
        self.unsigned_abs()
    }
    fn mul_sub(a: &Self, ma: &Self, b: &Self, mb: &Self) -> Option<Self> {
        a.checked_mul(*ma)?.checked_sub(b.checked_mul(*mb)?)
    }
    fn mul(a: &Self, m: &Self) -> Option<Self> {
        a.checked_mul(*m)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_rank(&self) -> u128 {
        self.abs().to_u128().unwrap_or(u128::MAX)
    }
    fn mul_sub(a: &Self, ma: &Self, b: &Self, mb: &Self) -> Option<Self> {
        Some(a * ma - b * mb)
    }
    fn mul(a: &Self, m: &Self) -> Option<Self> {
        Some(a * m)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Divides a row by the gcd of its entries.
fn make_primitive<T: ExactInt>(row: &mut [T]) {
    let mut g = T::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Fraction-free elimination. With `full` set the result is in reduced form
/// (pivot columns cleared above and below), otherwise only below. Returns
/// `None` if the integer type overflows.
fn eliminate<T: ExactInt>(a: &mut [Vec<T>], cols: usize, full: bool) -> Option<Vec<usize>> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].magnitude_rank())
        else {
            continue;
        };
        a.swap(r, p);
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = x.neg();
            }
        }
        make_primitive(&mut a[r]);
        let (before, rest) = a.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        let pv = pivot_row[c].clone();
        let above = if full { &mut before[..] } else { &mut before[..0] };
        for row in above.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let m_row = pv.div_exact(&g);
            let m_piv = row[c].div_exact(&g);
            for j in 0..cols {
                row[j] = if pivot_row[j].is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    T::mul(&row[j], &m_row)?
                } else {
                    T::mul_sub(&row[j], &m_row, &pivot_row[j], &m_piv)?
                };
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    Some(pivots)
}

/// Scales each row by the lcm of its denominators to obtain integers.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn to_i128_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect()
}

/// Runs elimination on `i128` if possible, else on `BigInt`.
fn eliminate_exact(m: &RationalMatrix, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let big = integer_rows(m);
    if let Some(mut small) = to_i128_rows(&big) {
        if let Some(p) = eliminate(&mut small, m.cols, full) {
            let rows = small.iter().map(|r| r.iter().map(ExactInt::to_big).collect()).collect();
            return (rows, p);
        }
    }
    let mut big = big;
    let p = eliminate(&mut big, m.cols, full).expect("BigInt arithmetic cannot overflow");
    (big, p)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let (rows, pivots) = eliminate_exact(m, true);
    let mut out = RationalMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.iter().enumerate() {
        let lead = pivots.get(i).map(|&c| row[c].clone());
        for (j, x) in row.iter().enumerate() {
            let v = match &lead {
                Some(l) => Rational::new(x.clone(), l.clone()),
                None => Rational::zero(),
            };
            out.set(i, j, v);
        }
    }
    (out, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    eliminate_exact(m, false).1.len()
}

/// Rescales a rational row to coprime integers with a positive first nonzero entry.
pub fn integer_normalize(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut ints);
    if ints.iter().find(|x| !Zero::is_zero(*x)).is_some_and(Signed::is_negative) {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    ints
}

/// Canonical basis of a row space: nonzero rows of the RREF, each scaled to
/// coprime integers (first nonzero positive).
pub fn canonical_row_basis(m: &RationalMatrix) -> RationalMatrix {
    let (r, pivots) = rref(m);
    let rows: Vec<Vec<Rational>> = (0..pivots.len())
        .map(|i| integer_normalize(r.row(i)).into_iter().map(Rational::from_integer).collect())
        .collect();
    RationalMatrix::from_rows(m.cols, rows).expect("rows have matching width")
}

/// Right nullspace `{x : Mx = 0}`, one basis vector per row, in canonical form.
pub fn nullspace(m: &RationalMatrix) -> RationalMatrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let rows: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); m.cols];
            x[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(i, f).clone();
            }
            x
        })
        .collect();
    let basis = RationalMatrix::from_rows(m.cols, rows).expect("rows have matching width");
    canonical_row_basis(&basis)
}

/// Left nullspace `{y : yᵀM = 0}`, one basis vector per row, canonical form.
pub fn left_nullspace(m: &RationalMatrix) -> RationalMatrix {
    nullspace(&m.transpose())
}

/// Whether `v` lies in the column span of `m`.
pub fn in_span(v: &[Rational], m: &RationalMatrix) -> Result<bool> {
    if v.len() != m.rows {
        return Err(MemsError::DimensionMismatch(format!(
            "vector of length {} against {} rows",
            v.len(),
            m.rows
        )));
    }
    let col = RationalMatrix::new(v.len(), 1, v.to_vec())?;
    Ok(rank(&m.hstack(&col)?) == rank(m))
}

/// Canonical basis (as rows) of the column span of `m`.
pub fn column_span_basis(m: &RationalMatrix) -> RationalMatrix {
    canonical_row_basis(&m.transpose())
}

/// Whether two matrices with equal row counts have the same column span.
pub fn same_span(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    if a.rows != b.rows {
        return Err(MemsError::DimensionMismatch(format!(
            "column spans live in dimensions {} and {}",
            a.rows, b.rows
        )));
    }
    Ok(column_span_basis(a) == column_span_basis(b))
}

/// Basis (as columns) of the intersection of two column spans, computed as
/// the common solution space of both spans' annihilators.
pub fn span_intersection(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if a.rows != b.rows {
        return Err(MemsError::DimensionMismatch("span intersection dimensions".into()));
    }
    let ann = left_nullspace(a).vstack(&left_nullspace(b))?;
    Ok(nullspace(&ann).transpose())
}

/// `yᵀM`, used to check annihilation exactly.
pub fn row_times(y: &[Rational], m: &RationalMatrix) -> Vec<Rational> {
    (0..m.cols)
        .map(|j| {
            y.iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| a * m.get(i, j))
                .fold(Rational::zero(), |s, x| s + x)
        })
        .collect()
}
