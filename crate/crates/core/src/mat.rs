//! Dense matrices over arbitrary-precision rationals, plus the row-space
//! tooling (reduced bases, exact solving) the minimization and analysis code
//! is built on. Small and allocation-happy by design: every pivot is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix over `BigRational`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-literal constructor, mostly for fixtures and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// True when every entry has denominator 1.
    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
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
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Flatten row-major into a vector (used to test matrix-power dependence).
    pub fn vectorize(&self) -> Vec<BigRational> {
        self.data.clone()
    }
}

/// Row vector times matrix.
pub fn row_mul(row: &[BigRational], m: &Mat) -> Vec<BigRational> {
    assert_eq!(row.len(), m.rows(), "shape mismatch in row_mul");
    let mut out = vec![BigRational::zero(); m.cols()];
    for (i, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (x, b) in out.iter_mut().zip(m.row(i)) {
            if !b.is_zero() {
                *x += a * b;
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn col_mul(m: &Mat, col: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(m.cols(), col.len(), "shape mismatch in col_mul");
    (0..m.rows()).map(|i| dot(m.row(i), col)).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    assert_eq!(a.len(), b.len(), "shape mismatch in dot");
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// A basis of a subspace of `Q^dim`, kept in reduced row echelon form: each
/// basis row has a pivot entry 1, and every other basis row is 0 in that
/// column. In this form, coordinates of a vector in the basis can be read off
/// pivot columns directly.
#[derive(Clone, Debug)]
pub struct RowBasis {
    dim: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(dim: usize) -> Self {
        RowBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
    }

    /// Insert `v` into the span. Returns true when `v` enlarged the basis.
    pub fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            *x /= &inv;
        }
        // Clear the new pivot column in the existing rows to stay in RREF.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let coords: Vec<BigRational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (x, r) in residual.iter_mut().zip(row) {
                    *x -= c * r;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }
}

/// Rank of a matrix, by row reduction.
pub fn rank(m: &Mat) -> usize {
    let mut basis = RowBasis::new(m.cols());
    for i in 0..m.rows() {
        basis.insert(m.row(i).to_vec());
    }
    basis.len()
}

/// Solve `sum_i x_i * columns[i] = target` exactly. Returns `None` when the
/// system is inconsistent. Free variables, if any, are set to zero.
pub fn solve_combination(columns: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let dim = target.len();
    assert!(columns.iter().all(|c| c.len() == dim), "column dimension mismatch");
    // Augmented rows: [ column entries | identity ] so the elimination tracks
    // which combination of the original columns produced each reduced row.
    let mut basis: Vec<(Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (idx, col) in columns.iter().enumerate() {
        let mut vec = col.clone();
        let mut comb = vec![BigRational::zero(); n];
        comb[idx] = BigRational::one();
        for ((row, rcomb), &p) in basis.iter().zip(&pivots).map(|(pair, p)| ((&pair.0, &pair.1), p)) {
            if !vec[p].is_zero() {
                let c = vec[p].clone();
                for (x, r) in vec.iter_mut().zip(row) {
                    *x -= &c * r;
                }
                for (x, r) in comb.iter_mut().zip(rcomb) {
                    *x -= &c * r;
                }
            }
        }
        if let Some(p) = vec.iter().position(|x| !x.is_zero()) {
            let inv = vec[p].clone();
            for x in vec.iter_mut() {
                *x /= &inv;
            }
            for x in comb.iter_mut() {
                *x /= &inv;
            }
            basis.push((vec, comb));
            pivots.push(p);
        }
    }
    let mut residual = target.to_vec();
    let mut solution = vec![BigRational::zero(); n];
    for ((row, comb), &p) in basis.iter().map(|pair| (&pair.0, &pair.1)).zip(&pivots) {
        if !residual[p].is_zero() {
            let c = residual[p].clone();
            for (x, r) in residual.iter_mut().zip(row) {
                *x -= &c * r;
            }
            for (x, r) in solution.iter_mut().zip(comb) {
                *x += &c * r;
            }
        }
    }
    residual.iter().all(Zero::is_zero).then_some(solution)
}
