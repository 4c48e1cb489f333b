use num_bigint::BigInt;

use super::lattice::{multiplicative_relation_lattice, ExponentLattice};
use super::RationalPoint;
use crate::error::{Error, Result};
use crate::exact::intlat::{self, IVec};
use crate::exact::upoly::{lcm_all, totient_at_most};
use crate::transform::Transform;

/// Outcome of the orbit-independence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent { certified_by: IndependenceCertificate },
    /// `(T^{a+kb} α)^μ = 1` for every `k >= 0`.
    Dependent { mu: IVec, a: u64, b: u64 },
    Unknown { b_max: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependenceCertificate {
    /// The coordinates are multiplicatively independent.
    TrivialLattice,
    /// The invariant part of the lattice for the period `b` that dominates
    /// all periods is zero.
    PeriodBound { b: u64 },
}

/// Period `b*` such that any dependence along some progression also occurs
/// along the progression of step `b*` (lcm of all `k` with `φ(k) <= n(n−1)`:
/// orders of root-of-unity ratios of eigenvalues are bounded that way).
pub fn independence_period_bound(n: usize) -> BigInt {
    let n = n as u64;
    let m = n * n.saturating_sub(1);
    if m == 0 {
        return BigInt::from(1);
    }
    lcm_all(&totient_at_most(m))
}

/// Largest sublattice `Λ ⊆ L` with `M Λ ⊆ Λ` for `M = (Tᵗ)^b`, by the
/// decreasing chain `Λ ← Λ ∩ M⁻¹Λ`.
pub fn stable_lattice(t: &Transform, lattice: &ExponentLattice, b: u64) -> Vec<IVec> {
    let n = t.n();
    let m = t.transpose().pow(b).int_rows();
    let mut cur = lattice.basis.clone();
    loop {
        if cur.is_empty() {
            return cur;
        }
        let pre = intlat::preimage(&m, &cur, n);
        let next = intlat::intersect(&cur, &pre, n);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Whether `α` is independent along the orbit of `T`.
///
/// Periods `b = 1..=b_max` are tried first; a nonzero invariant sublattice
/// gives a dependence witness with `a = 0`. When the dominating period `b*`
/// is at most `max_period`, its invariant sublattice settles the question.
/// `a_max` is accepted for interface symmetry: because `T` is nonsingular a
/// witness with `a = 0` exists whenever one exists for some `a`.
pub fn is_t_independent(
    t: &Transform,
    alpha: &RationalPoint,
    b_max: u64,
    a_max: u64,
) -> Result<Independence> {
    let _ = a_max;
    if t.n() != alpha.n() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a {}x{} transform",
            alpha.n(),
            t.n(),
            t.n()
        )));
    }
    if t.det() == BigInt::from(0) {
        return Err(Error::Singular);
    }
    let lattice = multiplicative_relation_lattice(alpha);
    if lattice.is_trivial() {
        return Ok(Independence::Independent { certified_by: IndependenceCertificate::TrivialLattice });
    }
    for b in 1..=b_max {
        let s = stable_lattice(t, &lattice, b);
        if let Some(mu) = s.into_iter().next() {
            return Ok(Independence::Dependent { mu, a: 0, b });
        }
    }
    let bstar = independence_period_bound(t.n());
    if bstar <= BigInt::from(MAX_PERIOD) {
        let bstar: u64 = bstar.try_into().expect("small");
        if bstar <= b_max || stable_lattice(t, &lattice, bstar).is_empty() {
            return Ok(Independence::Independent {
                certified_by: IndependenceCertificate::PeriodBound { b: bstar },
            });
        }
        // dependent: report the smallest period among the divisors of b*
        for b in (b_max + 1..=bstar).filter(|d| bstar.is_multiple_of(*d)) {
            let s = stable_lattice(t, &lattice, b);
            if let Some(mu) = s.into_iter().next() {
                return Ok(Independence::Dependent { mu, a: 0, b });
            }
        }
        unreachable!("Λ at b* is nonzero");
    }
    Ok(Independence::Unknown { b_max })
}

/// Largest dominating period for which the invariant sublattice is computed.
pub const MAX_PERIOD: u64 = 2520;
