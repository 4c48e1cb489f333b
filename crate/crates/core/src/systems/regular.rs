use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MahlerSystem;
use crate::error::{Error, Result};
use crate::exact::rational::pow_big;
use crate::exact::MultiPoly;
use crate::points::{act_point, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityVerdict {
    /// No failure up to `k_checked`, and from `k_checked` on the orbit stays
    /// in a polydisk where the denominators of `A` and `det A` cannot vanish.
    RegularCertified,
    /// No failure up to `k_checked`, without a certificate for the tail.
    RegularUpToK,
    /// `A` is undefined or singular at `T^kα`.
    NotRegular { k: u64 },
}

impl RegularityVerdict {
    pub fn as_str(&self) -> String {
        match self {
            RegularityVerdict::RegularCertified => "regular-certified".into(),
            RegularityVerdict::RegularUpToK => "regular-up-to-k".into(),
            RegularityVerdict::NotRegular { k } => format!("not-regular({k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub k_checked: u64,
    pub a0_invertible: bool,
    /// Indices `k` where `A` is undefined or singular at `T^kα`.
    pub failures: Vec<u64>,
    pub verdict: RegularityVerdict,
}

/// Whether `|p(z)| > 0` on the closed polydisk of radius `r`, from
/// `|p(0)| > Σ_{μ≠0} |c_μ| r^{|μ|}`.
fn nonvanishing_on_polydisk(p: &MultiPoly, r: &BigRational) -> bool {
    let c0 = p.constant_term().abs();
    if c0.is_zero() {
        return false;
    }
    let tail: BigRational = p
        .terms()
        .iter()
        .filter(|(m, _)| !m.is_one())
        .map(|(m, c)| c.abs() * pow_big(r, &m.degree().into()))
        .sum();
    c0 > tail
}

/// Checks that `A` is defined and invertible at `T^kα` for `k ≤ k_max`.
///
/// Once the orbit enters a polydisk of radius `r < 1` on which every
/// denominator of `A` and the numerator of `det A` are certified nonzero, the
/// check stops: such polydisks are mapped into themselves by `T`.
pub fn regular_point_check(sys: &MahlerSystem, alpha: &RationalPoint, k_max: u64) -> Result<RegularityReport> {
    if alpha.n() != sys.n() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a system in {} variables",
            alpha.n(),
            sys.n()
        )));
    }
    let a0_invertible = sys.a0_invertible();
    let mut guards: Vec<MultiPoly> = sys.a().entries().iter().map(|f| f.den().clone()).collect();
    guards.push(sys.a().det()?.num().clone());
    let one = BigRational::one();
    let mut failures = Vec::new();
    let mut point = alpha.clone();
    let mut k = 0;
    loop {
        let ok = match sys.a().eval(point.coords()) {
            Ok(m) => !m.det()?.is_zero(),
            Err(Error::Pole) => false,
            Err(e) => return Err(e),
        };
        if !ok {
            failures.push(k);
        }
        let r = point.max_abs();
        let certified = a0_invertible && r < one && guards.iter().all(|g| nonvanishing_on_polydisk(g, &r));
        if certified || k == k_max {
            let verdict = match failures.first() {
                Some(&k) => RegularityVerdict::NotRegular { k },
                None if certified => RegularityVerdict::RegularCertified,
                None => RegularityVerdict::RegularUpToK,
            };
            return Ok(RegularityReport { k_checked: k, a0_invertible, failures, verdict });
        }
        point = act_point(sys.t(), &point)?;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::fredholm;
    use super::super::Orientation;
    use super::*;
    use crate::transform::Transform;

    fn pt(c: &[&str]) -> RationalPoint {
        RationalPoint::parse(c).unwrap()
    }

    fn one_var(a: &str) -> MahlerSystem {
        MahlerSystem::parse(&["z"], Transform::scalar(2), &[vec![a]], Orientation::Forward).unwrap()
    }

    #[test]
    fn catalog_points() {
        let r = regular_point_check(&fredholm(), &pt(&["1/2"]), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::RegularCertified);
        assert_eq!(r.k_checked, 0);
        let r = regular_point_check(&one_var("1/(1 - 2*z)"), &pt(&["1/2"]), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 0 });
        assert_eq!(r.failures, vec![0]);
        let r = regular_point_check(&one_var("1 - z"), &pt(&["1/2"]), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::RegularCertified);
    }

    #[test]
    fn late_failures_and_uncertified_tails() {
        // det vanishes at z = 1/4 = T(1/2)
        let r = regular_point_check(&one_var("1 - 4*z"), &pt(&["1/2"]), 10).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: 1 });
        // A(0) is not invertible: no certificate
        let r = regular_point_check(&one_var("z"), &pt(&["1/2"]), 3).unwrap();
        assert!(!r.a0_invertible);
        assert_eq!(r.verdict, RegularityVerdict::RegularUpToK);
        assert_eq!(r.k_checked, 3);
        // outside the unit disk the tail is never certified
        let r = regular_point_check(&fredholm(), &pt(&["2"]), 2).unwrap();
        assert_eq!(r.verdict, RegularityVerdict::RegularUpToK);
    }
}
