use num_bigint::BigInt;
use num_rational::BigRational;

use super::lattice::multiplicative_relation_lattice;
use super::RationalPoint;
use crate::error::{Error, Result};
use crate::exact::rational::q;
use crate::numeric::{ln_rational, Interval};
use crate::transform::{class_m_check, spectral_radius, Transform};

/// Whether the orbit `T^k α` tends to the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroTendency {
    /// `T^{k₀}α` lies in the punctured open unit polydisk.
    Yes { k0: u64 },
    /// Every coordinate of `α` has absolute value at least 1, so every
    /// coordinate along the orbit does too.
    No,
    Unknown { k_max: u64 },
}

/// Enclosures of `ln |α_i|`.
pub fn log_abs_vector(alpha: &RationalPoint, prec: u32) -> Vec<Interval> {
    alpha
        .coords()
        .iter()
        .map(|c| {
            let a = if c < &BigRational::from_integer(0.into()) { -c } else { c.clone() };
            ln_rational(&a, prec).expect("nonzero coordinate")
        })
        .collect()
}

fn int_mat_vec(m: &[Vec<BigInt>], v: &[Interval], prec: u32) -> Vec<Interval> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, _)| a.sign() != num_bigint::Sign::NoSign)
                .fold(Interval::zero(prec), |acc, (a, x)| acc.add(&Interval::from_int(a, prec).mul(x)))
        })
        .collect()
}

fn require_class_m(t: &Transform) -> Result<()> {
    if !class_m_check(t).verdict {
        return Err(Error::Hypothesis("the transform is not in the admissible class".into()));
    }
    Ok(())
}

/// Looks for `k₀ <= k_max` with `T^{k₀}α` in the open unit polydisk.
///
/// Signs of `ln |(T^kα)_i| = (T^k ln|α|)_i` are decided with intervals; a
/// value that is exactly zero is recognized through the exponent lattice of
/// `|α|`, and other uncertain signs are settled at higher precision.
pub fn tends_to_zero(t: &Transform, alpha: &RationalPoint, k_max: u64) -> Result<ZeroTendency> {
    if t.n() != alpha.n() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a {}x{} transform",
            alpha.n(),
            t.n(),
            t.n()
        )));
    }
    require_class_m(t)?;
    if alpha.in_unit_polydisk() {
        return Ok(ZeroTendency::Yes { k0: 0 });
    }
    if alpha.coords().iter().all(|c| c.numer().magnitude() >= c.denom().magnitude()) {
        return Ok(ZeroTendency::No);
    }
    let abs_point = RationalPoint::new(
        alpha.coords().iter().map(|c| if c.numer().sign() == num_bigint::Sign::Minus { -c } else { c.clone() }).collect(),
    )?;
    let abs_lattice = multiplicative_relation_lattice(&abs_point);
    let mut power = t.clone();
    for k in 1..=k_max {
        let rows = power.int_rows();
        let mut all_below = true;
        for row in &rows {
            match coordinate_sign(row, alpha, &abs_lattice)? {
                s if s < 0 => {}
                _ => {
                    all_below = false;
                    break;
                }
            }
        }
        if all_below {
            return Ok(ZeroTendency::Yes { k0: k });
        }
        power = power.mul(t)?;
    }
    Ok(ZeroTendency::Unknown { k_max })
}

/// Sign of `Σ_j row_j ln|α_j|`.
fn coordinate_sign(
    row: &[BigInt],
    alpha: &RationalPoint,
    abs_lattice: &super::ExponentLattice,
) -> Result<i32> {
    if abs_lattice.contains(row) {
        return Ok(0);
    }
    let mut prec = 128;
    loop {
        let logs = log_abs_vector(alpha, prec);
        let v = int_mat_vec(&[row.to_vec()], &logs, prec).remove(0);
        if v.is_negative() {
            return Ok(-1);
        }
        if v.is_positive() {
            return Ok(1);
        }
        prec *= 2;
        if prec > 1 << 16 {
            return Err(Error::Precision("could not decide the sign of a log-coordinate".into()));
        }
    }
}

/// One row of the decay profile.
#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub k: u64,
    /// `−ln ‖T^kα‖` with the max norm.
    pub neg_log_norm: Interval,
    /// `−ln ‖T^kα‖ / ρ(T)^k`.
    pub ratio: Interval,
}

/// `−ln ‖T^kα‖` and its ratio to `ρ(T)^k` for `k = 0..=k_max`.
pub fn condition_b_profile(t: &Transform, alpha: &RationalPoint, k_max: u64, prec: u32) -> Result<Vec<ProfileRow>> {
    match tends_to_zero(t, alpha, k_max.max(64))? {
        ZeroTendency::Yes { .. } => {}
        _ => return Err(Error::Hypothesis("the orbit is not known to tend to zero".into())),
    }
    let logs = log_abs_vector(alpha, prec);
    let s = spectral_radius(t, &q(1, 1 << 30))?;
    let rho = s.rho_interval(prec);
    let mut v = logs;
    let m = t.int_rows();
    let mut rho_k = Interval::one(prec);
    let mut out = Vec::new();
    for k in 0..=k_max {
        let max = v.iter().skip(1).fold(v[0].clone(), |a, b| a.max(b));
        let neg = max.neg();
        let ratio = neg.div(&rho_k).expect("ρ > 0");
        out.push(ProfileRow { k, neg_log_norm: neg, ratio });
        v = int_mat_vec(&m, &v, prec);
        rho_k = rho_k.mul(&rho);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[&str]) -> RationalPoint {
        RationalPoint::parse(c).unwrap()
    }

    #[test]
    fn decay_examples() {
        assert_eq!(tends_to_zero(&Transform::scalar(2), &pt(&["1/2"]), 10).unwrap(), ZeroTendency::Yes { k0: 0 });
        let u = Transform::from_u64(&[vec![1, 1], vec![0, 1]]);
        assert!(matches!(tends_to_zero(&u, &pt(&["1/2", "1/2"]), 10), Err(Error::Hypothesis(_))));
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(tends_to_zero(&fib, &pt(&["2/3", "1/2"]), 10).unwrap(), ZeroTendency::Yes { k0: 0 });
        assert_eq!(tends_to_zero(&fib, &pt(&["2", "3"]), 10).unwrap(), ZeroTendency::No);
        // ℓ = (L, −2L): Tℓ = (−L, L), T²ℓ = (0, −L), T³ℓ = (−L, 0), T⁴ℓ = (−L, −L)
        assert_eq!(tends_to_zero(&fib, &pt(&["3", "1/9"]), 10).unwrap(), ZeroTendency::Yes { k0: 4 });
        assert_eq!(tends_to_zero(&fib, &pt(&["3", "1/9"]), 3).unwrap(), ZeroTendency::Unknown { k_max: 3 });
        assert_eq!(tends_to_zero(&fib, &pt(&["4", "1/27"]), 10).unwrap(), ZeroTendency::Yes { k0: 2 });
    }

    #[test]
    fn profile_of_doubling() {
        let rows = condition_b_profile(&Transform::scalar(2), &pt(&["1/2"]), 10, 96).unwrap();
        let ln2 = crate::numeric::ln2(96);
        for r in &rows {
            assert!(r.ratio.overlaps(&ln2));
        }
        assert!(rows[0].neg_log_norm.overlaps(&ln2));
    }
}
