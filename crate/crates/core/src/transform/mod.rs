//! Transformation matrices: monomial and point action, normal form,
//! spectral radius and membership in the admissible class.

mod class_m;
mod normal_form;
mod spectral;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{from_int, pow_big};
use crate::exact::upoly::UPoly;
use crate::exact::{linalg, QMatrix};

pub use class_m::{class_m_check, has_root_of_unity_eigenvalue, ClassMReport};
pub use normal_form::{normal_form, NormalForm};
pub use spectral::{spectral_log_ratio, spectral_radius, LogRatio, PerronRoot, SpectralData};

/// Square matrix with non-negative integer entries acting on points by
/// `(Tα)_i = Π_j α_j^{t_ij}` and on monomials by `z^μ ↦ z^{Tᵗμ}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Transform {
    rows: Vec<Vec<BigUint>>,
}

impl Transform {
    pub fn new(rows: Vec<Vec<BigUint>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty transform".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {} of a {n}x{n} transform has {} entries",
                i + 1,
                r.len()
            )));
        }
        Ok(Transform { rows })
    }

    /// From small entries; panics on ragged input.
    pub fn from_u64(rows: &[Vec<u64>]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect())
            .expect("square matrix")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_u64(&(0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect::<Vec<_>>())
    }

    /// `z ↦ z^d` in one variable.
    pub fn scalar(d: u64) -> Self {
        Self::from_u64(&[vec![d]])
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.rows[i][j]
    }

    pub fn int_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(|x| BigInt::from(x.clone())).collect()).collect()
    }

    /// Entries as `u32`, as needed for exponent arithmetic on monomials.
    pub fn small_rows(&self) -> Result<Vec<Vec<u32>>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.to_u32().ok_or_else(|| {
                            Error::Invalid(format!("transform entry {x} too large for monomial exponents"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_rows(
            self.rows.iter().map(|r| r.iter().map(|x| from_int(BigInt::from(x.clone()))).collect()).collect(),
        )
    }

    pub fn mul(&self, o: &Transform) -> Result<Transform> {
        if self.n() != o.n() {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.n(), self.n(), o.n(), o.n())));
        }
        let n = self.n();
        Ok(Transform {
            rows: (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &self.rows[i][k] * &o.rows[k][j]).sum()).collect())
                .collect(),
        })
    }

    pub fn pow(&self, k: u64) -> Transform {
        let mut r = Transform::identity(self.n());
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b).expect("same size");
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b).expect("same size");
            }
        }
        r
    }

    pub fn transpose(&self) -> Transform {
        let n = self.n();
        Transform { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    /// Block-diagonal transform.
    pub fn block_diag(blocks: &[Transform]) -> Transform {
        let n: usize = blocks.iter().map(Transform::n).sum();
        let mut rows = vec![vec![BigUint::zero(); n]; n];
        let mut o = 0;
        for b in blocks {
            for i in 0..b.n() {
                for j in 0..b.n() {
                    rows[o + i][o + j] = b.rows[i][j].clone();
                }
            }
            o += b.n();
        }
        Transform { rows }
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Transform {
        Transform { rows: idx.iter().map(|&i| idx.iter().map(|&j| self.rows[i][j].clone()).collect()).collect() }
    }

    pub fn det(&self) -> BigInt {
        self.to_qmatrix().det().expect("square").to_integer()
    }

    pub fn charpoly(&self) -> UPoly {
        linalg::charpoly(&self.to_qmatrix())
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn has_zero_row(&self) -> bool {
        self.rows.iter().any(|r| r.iter().all(Zero::is_zero))
    }

    /// Exact action on a point with nonzero coordinates.
    pub fn act(&self, alpha: &[BigRational]) -> Result<Vec<BigRational>> {
        if alpha.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for a {}x{} transform",
                alpha.len(),
                self.n(),
                self.n()
            )));
        }
        if let Some(i) = alpha.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().zip(alpha).fold(BigRational::from_integer(1.into()), |acc, (e, a)| acc * pow_big(a, e)))
            .collect())
    }

    /// Rows as decimal strings, for reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transform{self}")
    }
}
