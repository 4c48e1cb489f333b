use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multiseq::theta;
use crate::numeric::{exp, Interval};
use crate::points::{log_abs_vector, tends_to_zero, RationalPoint, ZeroTendency};
use crate::transform::Transform;

/// One row of [`orbit_decay_report`].
#[derive(Clone, Debug)]
pub struct DecayRow {
    pub k: Vec<u64>,
    /// `log ‖T_k α‖` in the max norm over all blocks.
    pub log_norm: Interval,
    /// `|k| = Σ k_i`.
    pub k_abs: u64,
    /// `−log ‖T_k α‖ / ρ^{|k|}` with `ρ = e^{1/|Θ|}`.
    pub ratio: Interval,
}

/// Decay of `T_k α = (T_1^{k_1}α_1, …, T_r^{k_r}α_r)` along the given
/// iteration vectors, normalized by `ρ^{|k|}` where `ρ = e^{1/|Θ|}`.
pub fn orbit_decay_report(
    transforms: &[Transform],
    points: &[RationalPoint],
    k_vectors: &[Vec<u64>],
    prec: u32,
) -> Result<Vec<DecayRow>> {
    if transforms.len() != points.len() || transforms.is_empty() {
        return Err(Error::DimensionMismatch(format!("{} transforms and {} points", transforms.len(), points.len())));
    }
    for (i, (t, p)) in transforms.iter().zip(points).enumerate() {
        if !matches!(tends_to_zero(t, p, 64)?, ZeroTendency::Yes { .. }) {
            return Err(Error::Hypothesis(format!("the orbit of point {i} is not known to tend to zero")));
        }
    }
    let th = theta(transforms, prec)?;
    let inv_norm = th.norm1().recip().expect("positive");
    let logs: Vec<Vec<Interval>> = points.iter().map(|p| log_abs_vector(p, prec)).collect();
    let mut rows = Vec::with_capacity(k_vectors.len());
    for k in k_vectors {
        if k.len() != transforms.len() {
            return Err(Error::DimensionMismatch("iteration vector length differs from the number of transforms".into()));
        }
        let mut max: Option<Interval> = None;
        for ((t, l), &ki) in transforms.iter().zip(&logs).zip(k) {
            for row in t.pow(ki).int_rows() {
                let v = row
                    .iter()
                    .zip(l)
                    .fold(Interval::zero(prec), |a, (e, x)| a.add(&Interval::from_int(e, prec).mul(x)));
                max = Some(match max {
                    Some(m) => m.max(&v),
                    None => v,
                });
            }
        }
        let log_norm = max.expect("nonempty");
        let k_abs: u64 = k.iter().sum();
        let rho_k = exp(&Interval::from_int(&BigInt::from(k_abs), prec).mul(&inv_norm));
        let ratio = log_norm.neg().div(&rho_k).expect("positive");
        rows.push(DecayRow { k: k.clone(), log_norm, k_abs, ratio });
    }
    Ok(rows)
}
