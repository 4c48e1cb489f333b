//! Several transformations at once: the Θ-vector of reciprocal log spectral
//! radii, iteration-vector sequences `k_l = lΘ + O(1)`, finite-window
//! combinatorics, exponential polynomials and a vanishing probe.

mod exppoly;
mod probe;
mod window;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::coprime::{coprime_base, exponents_over};
use crate::exact::intlat::IVec;
use crate::numeric::{ln, BigFloat, Interval, Round};
use crate::transform::{class_m_check, spectral_radius, Transform};

pub use exppoly::{exp_poly_eval, ExpCoeff, ExpPoly, ExpTerm, ExpValue, Gamma};
pub use probe::{vanishing_probe, ProbeReport};
pub use window::{brown_split, piecewise_syndetic_window, progression_search, BrownOutcome, FiniteWindow};

/// Certified enclosures of `1/log ρ(T_i)`.
#[derive(Clone, Debug)]
pub struct ThetaVector {
    pub components: Vec<Interval>,
    /// Whether `ρ(T_i)` is a rational integer.
    pub exact_flags: Vec<bool>,
    /// `ρ(T_i)` when it is an integer.
    pub integer_radii: Vec<Option<BigUint>>,
    pub rho: Vec<Interval>,
    pub prec: u32,
    transforms: Vec<Transform>,
}

impl ThetaVector {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `|Θ| = Σ Θ_i`.
    pub fn norm1(&self) -> Interval {
        crate::numeric::sum(&self.components, self.prec)
    }

    /// The same vector recomputed at another precision.
    pub fn refined(&self, prec: u32) -> Result<ThetaVector> {
        theta(&self.transforms, prec)
    }

    pub fn transforms(&self) -> &[Transform] {
        &self.transforms
    }
}

/// `Θ = (1/log ρ(T_1), …, 1/log ρ(T_r))` at `prec` bits.
pub fn theta(transforms: &[Transform], prec: u32) -> Result<ThetaVector> {
    let mut components = Vec::new();
    let mut exact_flags = Vec::new();
    let mut integer_radii = Vec::new();
    let mut rhos = Vec::new();
    let width = BigRational::new(BigInt::one(), BigInt::one() << (prec as usize + 8));
    for (i, t) in transforms.iter().enumerate() {
        if !class_m_check(t).verdict {
            return Err(Error::Hypothesis(format!("transform {i} is not in the admissible class")));
        }
        let s = spectral_radius(t, &width)?;
        let rho = s.rho_interval(prec);
        let exact = s.exact().filter(|r| r.is_integer()).map(|r| r.to_integer().magnitude().clone());
        let log = ln(&rho).filter(Interval::is_positive).ok_or_else(|| {
            Error::Hypothesis(format!("spectral radius of transform {i} is not greater than 1"))
        })?;
        components.push(log.recip().expect("positive"));
        exact_flags.push(exact.is_some());
        integer_radii.push(exact);
        rhos.push(rho);
    }
    Ok(ThetaVector { components, exact_flags, integer_radii, rho: rhos, prec, transforms: transforms.to_vec() })
}

/// Integer vectors `μ` with `⟨μ, Θ⟩ = 0` coming from multiplicatively
/// dependent integer radii (`ρ_i^q = ρ_j^p`), one per dependent pair with
/// the first index of each dependence class. `None` unless every radius is
/// an integer. Relations between independent classes are not searched for.
pub fn exact_theta_relations(theta: &ThetaVector) -> Option<Vec<IVec>> {
    let radii: Vec<BigUint> = theta.integer_radii.iter().cloned().collect::<Option<_>>()?;
    let base = coprime_base(&radii);
    let exps: Vec<Vec<u64>> = radii.iter().map(|r| exponents_over(&base, r).expect("in base")).collect();
    let r = radii.len();
    let mut out = Vec::new();
    let mut reference: Vec<Option<usize>> = vec![None; r];
    for i in 0..r {
        for j in 0..i {
            if reference[j].is_none() {
                if let Some((p, q)) = proportional(&exps[i], &exps[j]) {
                    // log ρ_i / log ρ_j = p/q, so 1/log ρ_i = (q/p)/log ρ_j
                    reference[i] = Some(j);
                    let mut mu = vec![BigInt::zero(); r];
                    mu[i] = BigInt::from(p);
                    mu[j] = -BigInt::from(q);
                    out.push(mu);
                    break;
                }
            }
        }
    }
    Some(out)
}

// `a = (p/q) b` with p, q > 0 coprime.
fn proportional(a: &[u64], b: &[u64]) -> Option<(u64, u64)> {
    let k = b.iter().position(|&x| x != 0)?;
    let g = a[k].gcd(&b[k]);
    let (p, q) = (a[k] / g, b[k] / g);
    (p > 0 && a.iter().zip(b).all(|(&x, &y)| x as u128 * q as u128 == y as u128 * p as u128)).then_some((p, q))
}

/// A sequence `(l, k_l)` with a verified bound on `‖k_l − lΘ‖∞`.
#[derive(Clone, Debug)]
pub struct IterationSequence {
    pub entries: Vec<(u64, Vec<u64>)>,
    pub distance_bound: BigFloat,
    /// Shift subtracted after restricting to a sub-progression (relations
    /// case); zero for the plain floor construction.
    pub shift: Vec<u64>,
    /// Most frequent value of `⟨μ_i, k_l⟩` kept for each relation.
    pub kept_values: Vec<BigInt>,
}

fn floor_vector(theta: &ThetaVector, l: u64) -> Result<Vec<u64>> {
    let mut th = theta.clone();
    loop {
        let lf = Interval::from_int(&BigInt::from(l), th.prec);
        let floors: Option<Vec<BigInt>> = th.components.iter().map(|c| c.mul(&lf).floor_if_determined()).collect();
        if let Some(f) = floors {
            return f
                .into_iter()
                .map(|x| x.to_u64().ok_or_else(|| Error::Invalid("iteration vector entry out of range".into())))
                .collect();
        }
        // l·Θ_i is an integer or too close to one: rational Θ_i only occurs
        // for 1/log ρ, which is irrational, so more precision settles it
        if th.prec >= 1 << 14 {
            return Err(Error::Precision(format!("floor of l·Θ undetermined at l = {l}")));
        }
        th = th.refined(th.prec * 2)?;
    }
}

fn distance(theta: &ThetaVector, l: u64, k: &[u64]) -> BigFloat {
    let lf = Interval::from_int(&BigInt::from(l), theta.prec);
    k.iter()
        .zip(&theta.components)
        .map(|(ki, c)| Interval::from_int(&BigInt::from(*ki), theta.prec).sub(&c.mul(&lf)).mag())
        .fold(BigFloat::zero(64), |a, b| a.max(&b))
}

/// `k_l = ⌊lΘ⌋` for `l` in `l_min..=l_max`; with relations `μ_i`, the
/// sequence is restricted to the `l` where every `⟨μ_i, k_l⟩` takes its most
/// frequent value (ties to the smallest value) and shifted by the first kept
/// vector, which makes every output exactly orthogonal to every `μ_i`.
pub fn iteration_vectors(theta: &ThetaVector, l_min: u64, l_max: u64, relations: &[IVec]) -> Result<IterationSequence> {
    if l_min > l_max {
        return Err(Error::Invalid("empty range of l".into()));
    }
    for mu in relations {
        if mu.len() != theta.len() {
            return Err(Error::DimensionMismatch(format!("relation of length {} for {} transforms", mu.len(), theta.len())));
        }
        let dot = mu
            .iter()
            .zip(&theta.components)
            .fold(Interval::zero(theta.prec), |a, (m, c)| a.add(&Interval::from_int(m, theta.prec).mul(c)));
        if !dot.contains_zero() {
            return Err(Error::Hypothesis("relation is not orthogonal to Θ".into()));
        }
    }
    let mut entries = Vec::with_capacity((l_max - l_min + 1) as usize);
    for l in l_min..=l_max {
        entries.push((l, floor_vector(theta, l)?));
    }
    let mut kept_values = Vec::new();
    let mut shift = vec![0u64; theta.len()];
    if !relations.is_empty() {
        for mu in relations {
            let dot = |k: &[u64]| -> BigInt { mu.iter().zip(k).map(|(m, &x)| m * BigInt::from(x)).sum() };
            let mut freq: BTreeMap<BigInt, usize> = BTreeMap::new();
            for (_, k) in &entries {
                *freq.entry(dot(k)).or_default() += 1;
            }
            let best = freq.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(v, _)| v.clone());
            let best = best.ok_or_else(|| Error::Invalid("empty selection".into()))?;
            entries.retain(|(_, k)| dot(k) == best);
            kept_values.push(best);
        }
        shift = entries[0].1.clone();
        for (_, k) in entries.iter_mut() {
            for (x, s) in k.iter_mut().zip(&shift) {
                *x -= s;
            }
        }
    }
    let bound = entries.iter().map(|(l, k)| distance(theta, *l, k)).fold(BigFloat::zero(64), |a, b| a.max(&b));
    Ok(IterationSequence { entries, distance_bound: bound.with_prec(64, Round::Up), shift, kept_values })
}

/// Checks every entry against the recorded bound using the Θ enclosures.
pub fn verify_distance(theta: &ThetaVector, seq: &IterationSequence) -> bool {
    seq.entries.iter().all(|(l, k)| distance(theta, *l, k).cmp_value(&seq.distance_bound) != std::cmp::Ordering::Greater)
}
