use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::Ring;
use crate::Error;

/// Dense matrix over a ring, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Pivot selection for fraction-free elimination. The determinant does not
/// depend on it; the choice only matters for speed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    First,
    Last,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc.add_assign_r(&self.get(i, k).times(rhs.get(k, j)));
            }
            acc
        }))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ExactMatrix<S> {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn require_square(&self) -> Result<(), Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<R, Error> {
        self.det_bareiss(Pivot::First)
    }

    pub fn det_bareiss(&self, pivot: Pivot) -> Result<R, Error> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m: Vec<Vec<R>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negative = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            let candidates = (k..n).filter(|&r| !m[r][k].is_zero());
            let p = match pivot {
                Pivot::First => candidates.min(),
                Pivot::Last => candidates.max(),
            };
            let Some(p) = p else { return Ok(R::zero()) };
            if p != k {
                m.swap(p, k);
                negative = !negative;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                    m[i][j] = num
                        .try_div_exact(&prev)
                        .ok_or_else(|| Error::NotExact("Bareiss step over a non-domain".into()))?;
                }
                m[i][k] = R::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negative { d.negate() } else { d })
    }

    /// Laplace expansion along the first row. Exponential; meant as an oracle
    /// for small matrices.
    pub fn det_cofactor(&self) -> Result<R, Error> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return R::one();
        }
        let mut acc = R::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = a.times(&self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
        }
        acc
    }
}

/// Basis of the right kernel of an integer matrix, by fraction-free row
/// reduction. Each basis vector has rational entries with a 1 in its free
/// coordinate.
pub fn integer_kernel(m: &ExactMatrix<BigInt>) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let v = &a[i][j] * &a[r][c] - &f * &a[r][j];
                a[i][j] = if i > r { v.try_div_exact(&prev).expect("fraction-free step") } else { v };
            }
        }
        // rows above the pivot grew; reduce them by their content to keep sizes down
        for row in a.iter_mut().take(r) {
            let g = row.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = x.try_div_exact(&g).unwrap();
                }
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = BigRational::new(-a[k][f].clone(), a[k][pc].clone());
            }
            v
        })
        .collect()
}
