//! Mahler systems `f(z) = A(z) f(Tz)`: iteration, block and Kronecker
//! constructions, series solutions, gauge transforms and regularity checks.

mod gauge;
mod regular;
mod solve;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::check_distinct;
use crate::exact::{vars, Matrix, QMatrix, RFMatrix, RatFunc, Vars};
use crate::transform::Transform;

pub use gauge::{gauge_construct, gauge_verify, GaugeCheck, GaugeFailure, GaugeTransform};
pub use regular::{regular_point_check, RegularityReport, RegularityVerdict};
pub use solve::{functional_equation_residual, growth_iterate, series_solve, MAX_GROWTH_ITERATE};

/// Which way a system file writes the functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `f(z) = A(z) f(Tz)`, the stored form.
    #[default]
    Forward,
    /// `f(Tz) = A(z) f(z)`; converted on input by inverting `A`.
    Backward,
}

/// A linear Mahler system `f(z) = A(z) f(Tz)` over ℚ(z).
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerSystem {
    t: Transform,
    a: RFMatrix,
    converted: bool,
}

impl MahlerSystem {
    /// Builds a system in the stored orientation.
    ///
    /// `A` must be square with nonzero determinant and use as many variables
    /// as `T` has rows; `T` must be nonsingular so that `A(Tz)` is defined.
    pub fn new(t: Transform, a: RFMatrix) -> Result<Self> {
        if !a.is_square() || a.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!("system matrix is {}x{}", a.nrows(), a.ncols())));
        }
        if a.vars().len() != t.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables for a {}x{} transform",
                a.vars().len(),
                t.n(),
                t.n()
            )));
        }
        check_distinct(a.vars())?;
        if t.det().is_zero() {
            return Err(Error::Hypothesis("the transform is singular".into()));
        }
        if a.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(MahlerSystem { t, a, converted: false })
    }

    /// Builds a system from either orientation.
    pub fn with_orientation(t: Transform, a: RFMatrix, orientation: Orientation) -> Result<Self> {
        match orientation {
            Orientation::Forward => MahlerSystem::new(t, a),
            Orientation::Backward => {
                let inv = a.inverse()?;
                let mut s = MahlerSystem::new(t, inv)?;
                s.converted = true;
                Ok(s)
            }
        }
    }

    /// Parses the entries of `A` as rational-function literals.
    pub fn parse<S: AsRef<str>>(
        names: &[S],
        t: Transform,
        entries: &[Vec<S>],
        orientation: Orientation,
    ) -> Result<Self> {
        let v = vars(names);
        let rows = entries
            .iter()
            .map(|r| r.iter().map(|e| RatFunc::parse(e.as_ref(), v.clone())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {m}x{m} system matrix", r.len())));
        }
        if m == 0 {
            return Err(Error::DimensionMismatch("empty system matrix".into()));
        }
        MahlerSystem::with_orientation(t, Matrix::from_rows(rows), orientation)
    }

    pub fn t(&self) -> &Transform {
        &self.t
    }

    pub fn a(&self) -> &RFMatrix {
        &self.a
    }

    pub fn vars(&self) -> &Vars {
        self.a.vars()
    }

    /// System size `m`.
    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.t.n()
    }

    /// Whether `A` was inverted from the backward orientation on input.
    pub fn converted_from_backward(&self) -> bool {
        self.converted
    }

    /// `A(0)`; `Pole` if some entry is undefined at the origin.
    pub fn a_at_zero(&self) -> Result<QMatrix> {
        self.a.eval(&vec![Zero::zero(); self.n()])
    }

    /// Whether `A(0)` is defined and invertible, the sufficient condition for
    /// an analytic gauge transform.
    pub fn a0_invertible(&self) -> bool {
        self.a_at_zero().map(|m| !m.det().expect("square").is_zero()).unwrap_or(false)
    }

    /// `A_k(z) = A(z) A(Tz) ⋯ A(T^{k-1}z)`.
    pub fn iterate_matrix(&self, k: u64) -> Result<RFMatrix> {
        iterate_matrix(self, k)
    }
}

/// `A_k(z) = A(z) A(Tz) ⋯ A(T^{k-1}z)`; `k = 0` gives the identity.
pub fn iterate_matrix(sys: &MahlerSystem, k: u64) -> Result<RFMatrix> {
    let mut acc = Matrix::identity_like(sys.m(), sys.a.get(0, 0));
    let mut power = Transform::identity(sys.n());
    for _ in 0..k {
        let step = sys.a.substitute(&power.small_rows()?);
        acc = acc.mul(&step)?;
        power = power.mul(&sys.t)?;
    }
    Ok(acc)
}

/// Block-diagonal system `f(z) = A_k(z) f(T_k z)` collecting systems over
/// disjoint variable sets, with `A_k = diag(A_{i,k_i})` and
/// `T_k = diag(T_i^{k_i})`.
pub fn block_combine(systems: &[MahlerSystem], k: &[u64]) -> Result<MahlerSystem> {
    if systems.len() != k.len() || systems.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} systems with {} iteration counts", systems.len(), k.len())));
    }
    let names: Vec<String> = systems.iter().flat_map(|s| s.vars().iter().cloned()).collect();
    check_distinct(&names)?;
    let all = vars(&names);
    let mut offset = 0;
    let mut blocks = Vec::new();
    let mut transforms = Vec::new();
    for (s, &ki) in systems.iter().zip(k) {
        let positions: Vec<usize> = (offset..offset + s.n()).collect();
        offset += s.n();
        let ak = iterate_matrix(s, ki)?;
        blocks.push(ak.try_map(|f| f.map_polys(|p| p.embed(all.clone(), &positions)))?);
        transforms.push(s.t.pow(ki));
    }
    MahlerSystem::new(Transform::block_diag(&transforms), Matrix::block_diag(&blocks))
}

/// Kronecker product with the first factor's index varying slowest.
pub fn kronecker_product(a: &RFMatrix, b: &RFMatrix) -> RFMatrix {
    a.kronecker(b)
}

/// System `g(z) = A(z)^{⊗d} g(Tz)` satisfied by the ordered degree-`d`
/// products of solution components.
pub fn kronecker_power(sys: &MahlerSystem, d: u32) -> Result<MahlerSystem> {
    if d == 0 {
        return Err(Error::Invalid("Kronecker power of degree 0".into()));
    }
    MahlerSystem::new(sys.t.clone(), sys.a.kronecker_power(d))
}
