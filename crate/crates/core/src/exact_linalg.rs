//! Exact rational matrices, rank by fraction-free elimination, and the
//! handful of structured quantities (Vandermonde products, binomials) the
//! dimension counts are built from.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRat::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigRat>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match {rows}x{cols}"
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`;
    /// `cols` is needed separately so that 0-row matrices keep their width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRat>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        Self::from_vec(n, cols, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().copied().map(rat).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigRat]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix obtained by stacking `other` below `self`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self::from_vec(self.rows + other.rows, self.cols, entries)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRat;

    fn index(&self, (i, j): (usize, usize)) -> &BigRat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRat {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales a rational row by the lcm of its denominators, giving an integer
/// row spanning the same line.
fn clear_denominators(row: &[BigRat]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Exact rank over the rationals.
///
/// Rows are first scaled to integers, then reduced with Bareiss'
/// fraction-free scheme: after the step with pivot `p`, every entry below
/// the pivot row is replaced by `(p * a - b * c) / previous_pivot`, and the
/// division is exact. Pivots are the first nonzero entry of the current
/// column, scanning rows top-down.
pub fn rank(m: &RatMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = m.row_iter().map(clear_denominators).collect();

    let mut pivot_row = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, found);

        let (head, tail) = a.split_at_mut(pivot_row + 1);
        let pivot_line = &head[pivot_row];
        let pivot = &pivot_line[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col..cols {
                let num = pivot * &row[j] - &factor * &pivot_line[j];
                let (q, r) = num.div_rem(&prev_pivot);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            // Columns left of `col` are already zero in every row below.
        }
        prev_pivot = pivot.clone();
        pivot_row += 1;
    }
    pivot_row
}

/// Square Vandermonde matrix with rows `(1, x, ..., x^{v-1})`.
pub fn vandermonde_matrix(xs: &[BigRat]) -> RatMatrix {
    let v = xs.len();
    let mut m = RatMatrix::zeros(v, v);
    for (i, x) in xs.iter().enumerate() {
        let mut power = BigRat::one();
        for j in 0..v {
            m[(i, j)] = power.clone();
            power *= x;
        }
    }
    m
}

/// `prod_{i<j} (x_j - x_i)`, the determinant of [`vandermonde_matrix`].
pub fn vandermonde_det(xs: &[BigRat]) -> BigRat {
    let mut det = BigRat::one();
    for (i, xi) in xs.iter().enumerate() {
        for xj in &xs[i + 1..] {
            det *= xj - xi;
        }
    }
    det
}

/// Exact binomial coefficient; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step.
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a machine word, for counts used as matrix sizes.
pub fn binomial_usize(a: u64, b: u64) -> usize {
    usize::try_from(binomial(a, b)).expect("binomial coefficient exceeds usize")
}

/// Naive rational Gaussian elimination, kept independent of [`rank`] so tests
/// can cross-check the production path against it.
#[cfg(test)]
pub(crate) fn naive_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigRat>> = m.row_iter().map(|r| r.to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..m.rows()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}
