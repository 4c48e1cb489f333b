use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Vars;
use super::ratfunc::RatFunc;
use super::rational::{fmt_q, qi};
use super::ring::{Field, Ring};
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type QMatrix = Matrix<BigRational>;
pub type RFMatrix = Matrix<RatFunc>;
pub type SeriesMatrix = Matrix<TruncSeries>;

impl<R: Ring> Matrix<R> {
    /// Builds from rows; panics on ragged input or an empty grid.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(c > 0, "matrix needs at least one column");
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// `n×n` identity built from a sample element's zero and one.
    pub fn identity_like(n: usize, sample: &R) -> Self {
        let z = sample.zero_like();
        let o = sample.one_like();
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zeros_like(rows: usize, cols: usize, sample: &R) -> Self {
        let z = sample.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring, F: FnMut(&R) -> Result<S>>(&self, f: F) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.radd(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.rsub(b)).collect(),
        })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let zero = self.data[0].zero_like();
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero_elem() || b.is_zero_elem() {
                    continue;
                }
                acc = acc.radd(&a.rmul(b));
            }
            acc
        }))
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let zero = self.data[0].zero_like();
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = zero.clone();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero_elem() && !x.is_zero_elem() {
                        acc = acc.radd(&a.rmul(x));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.rmul(c))
    }

    /// Square-matrix power by repeated squaring.
    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut result = Self::identity_like(self.rows, &self.data[0]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Kronecker product: entry `((i1,i2),(j1,j2))` is `a[i1][j1]·b[i2][j2]`,
    /// with the first factor's index varying slowest.
    pub fn kronecker(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            let (i1, i2) = (i / o.rows, i % o.rows);
            let (j1, j2) = (j / o.cols, j % o.cols);
            self.get(i1, j1).rmul(o.get(i2, j2))
        })
    }

    /// `d`-fold Kronecker power, `d >= 1`.
    pub fn kronecker_power(&self, d: u32) -> Self {
        assert!(d >= 1, "Kronecker power needs d >= 1");
        let mut r = self.clone();
        for _ in 1..d {
            r = r.kronecker(self);
        }
        r
    }

    /// Block-diagonal matrix from a nonempty list of blocks.
    pub fn block_diag(blocks: &[Self]) -> Self {
        assert!(!blocks.is_empty(), "block_diag of no blocks");
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros_like(rows, cols, &blocks[0].data[0]);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero_elem)
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<R: Field> Matrix<R> {
    /// Determinant by Gaussian elimination over a field.
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.data[0].one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero_elem()) else {
                return Ok(self.data[0].zero_like());
            };
            if p != c {
                a.swap(p, c);
                det = det.rneg();
            }
            let piv = a[c][c].clone();
            det = det.rmul(&piv);
            let inv = piv.rinv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero_elem() {
                    continue;
                }
                let f = a[r][c].rmul(&inv);
                for k in c..n {
                    let t = f.rmul(&a[c][k]);
                    a[r][k] = a[r][k].rsub(&t);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = Self::identity_like(n, &self.data[0]).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero_elem()).ok_or(Error::Singular)?;
            a.swap(p, c);
            b.swap(p, c);
            let inv = a[c][c].rinv().ok_or(Error::Singular)?;
            for k in 0..n {
                a[c][k] = a[c][k].rmul(&inv);
                b[c][k] = b[c][k].rmul(&inv);
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero_elem() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = f.rmul(&a[c][k]);
                    a[r][k] = a[r][k].rsub(&t);
                    let t = f.rmul(&b[c][k]);
                    b[r][k] = b[r][k].rsub(&t);
                }
            }
        }
        Ok(Self::from_rows(b))
    }
}

impl QMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_like(n, &BigRational::zero())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_like(rows, cols, &BigRational::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    /// Lift to constant rational functions.
    pub fn to_rf(&self, vars: &Vars) -> RFMatrix {
        self.map(|c| RatFunc::constant(vars.clone(), c.clone()))
    }

    /// Lift to constant series.
    pub fn to_series(&self, vars: &Vars, order: u32) -> SeriesMatrix {
        self.map(|c| TruncSeries::constant(vars.clone(), order, c.clone()))
    }
}

impl RFMatrix {
    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<QMatrix> {
        self.try_map(|f| f.eval(point))
    }

    /// `A(Tz)` where `t` holds the rows of `T`.
    pub fn substitute(&self, t: &[Vec<u32>]) -> RFMatrix {
        self.map(|f| f.substitute(t))
    }

    pub fn to_series(&self, order: u32) -> Result<SeriesMatrix> {
        self.try_map(|f| f.to_series(order))
    }

    pub fn vars(&self) -> &Vars {
        self.get(0, 0).vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries().iter().all(RatFunc::is_polynomial)
    }

    /// Constant matrix when every entry is constant.
    pub fn as_constant(&self) -> Option<QMatrix> {
        if self.entries().iter().all(RatFunc::is_constant) {
            let zero: Vec<BigRational> = vec![BigRational::zero(); self.vars().len()];
            self.eval(&zero).ok()
        } else {
            None
        }
    }
}

impl SeriesMatrix {
    pub fn substitute(&self, t: &[Vec<u32>]) -> Result<SeriesMatrix> {
        self.try_map(|s| s.substitute(t))
    }

    pub fn constant_part(&self) -> QMatrix {
        self.map(TruncSeries::constant_term)
    }

    pub fn truncate(&self, order: u32) -> SeriesMatrix {
        self.map(|s| s.truncate(order))
    }

    /// First entry and monomial where `self` and `o` differ modulo degree `n`.
    pub fn first_difference(
        &self,
        o: &SeriesMatrix,
        n: u32,
    ) -> Option<(usize, usize, super::Monomial, BigRational, BigRational)> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if let Some((m, a, b)) = self.get(i, j).first_difference(o.get(i, j), n) {
                    return Some((i, j, m, a, b));
                }
            }
        }
        None
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(fmt_q).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Display for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                format!("[{}]", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;
    use crate::exact::vars;

    fn fred() -> RFMatrix {
        let v = vars(&["z"]);
        let e = |s: &str| RatFunc::parse(s, v.clone()).unwrap();
        RFMatrix::from_rows(vec![vec![e("1"), e("0")], vec![e("z"), e("1")]])
    }

    #[test]
    fn unitriangular_det_inverse_eval() {
        let a = fred();
        assert_eq!(a.det().unwrap(), RatFunc::one(a.vars().clone()));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.get(1, 0).to_string(), "-z");
        assert!(a.mul(&inv).unwrap().as_constant().unwrap().is_identity());
        let e = a.eval(&[q(1, 2)]).unwrap();
        assert_eq!(e, QMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 1)]]));
    }

    #[test]
    fn kronecker_of_diagonals() {
        let a = QMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let k = a.kronecker(&a);
        for (i, d) in [4, 6, 6, 9].into_iter().enumerate() {
            assert_eq!(k.get(i, i), &qi(d));
        }
        assert_eq!(k.det().unwrap(), qi(1296));
    }

    #[test]
    fn singular_inverse_fails() {
        let a = QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.det().unwrap(), qi(0));
    }

    #[test]
    fn pole_on_evaluation() {
        let v = vars(&["z"]);
        let m = RFMatrix::from_rows(vec![vec![RatFunc::parse("1/(1 - 2*z)", v).unwrap()]]);
        assert_eq!(m.eval(&[q(1, 2)]), Err(Error::Pole));
    }
}
