use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::window::{piecewise_syndetic_window, FiniteWindow};
use super::IterationSequence;
use crate::error::{Error, Result};
use crate::exact::rational::pow_big;
use crate::exact::MultiPoly;
use crate::numeric::Interval;
use crate::points::{admissible_pair, AdmissibilityBounds, RationalPoint, Verdict};
use crate::transform::Transform;

/// Orbit exponents up to this size are evaluated exactly.
const EXACT_EXPONENT_LIMIT: u64 = 4096;

/// Outcome of evaluating `g` along an iteration sequence.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// `(l, enclosure of g(T_{k_l}α), decided exactly)`.
    pub values: Vec<(u64, Interval, bool)>,
    /// `l` where `g` vanishes exactly or its enclosure contains zero.
    pub zero_set: Vec<u64>,
    pub window_gap: u64,
    pub window_count: usize,
    /// A run of the zero set passing the window test, if any.
    pub syndetic_run: Option<Vec<u64>>,
}

fn orbit_exponents(t: &Transform, k: u64) -> Vec<Vec<BigUint>> {
    t.pow(k).rows().to_vec()
}

/// Evaluates `g(T_{k_l} α)` for every entry of `seq` and tests the zero set
/// with the window surrogate `(gap, count)`. An empirical probe: zeros found
/// through enclosures only mean the enclosure contains zero.
pub fn vanishing_probe(
    g: &MultiPoly,
    transforms: &[Transform],
    points: &[RationalPoint],
    seq: &IterationSequence,
    prec: u32,
    gap: u64,
    count: usize,
) -> Result<ProbeReport> {
    if g.is_zero() {
        return Err(Error::Invalid("the probed function is zero".into()));
    }
    if transforms.len() != points.len() {
        return Err(Error::DimensionMismatch(format!("{} transforms and {} points", transforms.len(), points.len())));
    }
    let total: usize = transforms.iter().map(Transform::n).sum();
    if g.nvars() != total {
        return Err(Error::DimensionMismatch(format!("function in {} variables for {total} coordinates", g.nvars())));
    }
    for (i, (t, p)) in transforms.iter().zip(points).enumerate() {
        if admissible_pair(t, p, AdmissibilityBounds::default())?.verdict == Verdict::NotAdmissible {
            return Err(Error::Hypothesis(format!("pair {i} is not admissible")));
        }
    }
    let mut values = Vec::new();
    let mut zero_set = Vec::new();
    for (l, k) in &seq.entries {
        if k.len() != transforms.len() {
            return Err(Error::DimensionMismatch("iteration vector length differs from the number of transforms".into()));
        }
        let exps: Vec<Vec<Vec<BigUint>>> = transforms.iter().zip(k).map(|(t, &ki)| orbit_exponents(t, ki)).collect();
        let small = exps.iter().flatten().flatten().all(|e| e <= &BigUint::from(EXACT_EXPONENT_LIMIT));
        let (value, exact) = if small {
            let coords = exact_coords(points, &exps);
            let v = g.eval(&coords);
            (Interval::from_rational(&v, prec), true)
        } else {
            (interval_eval(g, &interval_coords(points, &exps, prec)?, prec), false)
        };
        if value.contains_zero() {
            zero_set.push(*l);
        }
        values.push((*l, value, exact));
    }
    let width = seq.entries.iter().map(|(l, _)| l + 1).max().unwrap_or(0);
    let window = FiniteWindow::new(zero_set.clone(), width)?;
    let syndetic_run = piecewise_syndetic_window(&window, gap, count);
    Ok(ProbeReport { values, zero_set, window_gap: gap, window_count: count, syndetic_run })
}

fn exact_coords(points: &[RationalPoint], exps: &[Vec<Vec<BigUint>>]) -> Vec<BigRational> {
    let mut out = Vec::new();
    for (p, m) in points.iter().zip(exps) {
        for row in m {
            out.push(p.coords().iter().zip(row).map(|(a, e)| pow_big(a, e)).product());
        }
    }
    out
}

fn interval_coords(points: &[RationalPoint], exps: &[Vec<Vec<BigUint>>], prec: u32) -> Result<Vec<Interval>> {
    let mut out = Vec::new();
    for (p, m) in points.iter().zip(exps) {
        for row in m {
            let mut acc = Interval::one(prec);
            for (a, e) in p.coords().iter().zip(row) {
                if e.is_zero() {
                    continue;
                }
                let bits = a.numer().bits().max(a.denom().bits()) + 1;
                let scale = e.to_u64().and_then(|e| e.checked_mul(bits));
                if scale.is_none_or(|s| s >= 1 << 60) {
                    return Err(Error::Precision("orbit coordinates exceed the floating exponent range".into()));
                }
                let mut x = Interval::from_rational(&a.abs(), prec).powi(e);
                if a.is_negative() && e.bit(0) {
                    x = x.neg();
                }
                acc = acc.mul(&x);
            }
            out.push(acc);
        }
    }
    Ok(out)
}

fn interval_eval(g: &MultiPoly, z: &[Interval], prec: u32) -> Interval {
    let mut acc = Interval::zero(prec);
    for (m, c) in g.terms() {
        let mut t = Interval::from_rational(c, prec);
        for (x, &e) in z.iter().zip(&m.0) {
            if e > 0 {
                t = t.mul(&x.powi_u64(e as u64));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::{iteration_vectors, theta};
    use super::*;
    use crate::exact::vars;

    #[test]
    fn independent_orbits_never_meet() {
        let ts = vec![Transform::scalar(2), Transform::scalar(3)];
        let th = theta(&ts, 96).unwrap();
        let seq = iteration_vectors(&th, 0, 40, &[]).unwrap();
        let g = MultiPoly::parse("z1 - z2", vars(&["z1", "z2"])).unwrap();
        let pts = vec![RationalPoint::parse(&["1/2"]).unwrap(), RationalPoint::parse(&["1/3"]).unwrap()];
        let r = vanishing_probe(&g, &ts, &pts, &seq, 128, 2, 2).unwrap();
        assert!(r.zero_set.is_empty());
        assert!(r.syndetic_run.is_none());
        let one = MultiPoly::parse("1", vars(&["z1", "z2"])).unwrap();
        assert!(vanishing_probe(&one, &ts, &pts, &seq, 128, 2, 2).unwrap().zero_set.is_empty());
    }

    #[test]
    fn manufactured_zero() {
        let ts = vec![Transform::scalar(2)];
        let th = theta(&ts, 96).unwrap();
        let seq = iteration_vectors(&th, 0, 20, &[]).unwrap();
        // l = 3 gives k = 4 and the orbit point 2^-16
        let g = MultiPoly::parse("z - 1/65536", vars(&["z"])).unwrap();
        let pts = vec![RationalPoint::parse(&["1/2"]).unwrap()];
        let r = vanishing_probe(&g, &ts, &pts, &seq, 128, 5, 2).unwrap();
        assert_eq!(r.zero_set, vec![3]);
        assert!(r.syndetic_run.is_none());
    }
}
