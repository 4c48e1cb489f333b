use super::decay::{tends_to_zero, ZeroTendency};
use super::independence::{is_t_independent, Independence};
use super::RationalPoint;
use crate::error::{Error, Result};
use crate::transform::{class_m_check, ClassMReport, Transform};

/// Search limits for [`admissible_pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibilityBounds {
    pub k_max: u64,
    pub b_max: u64,
    pub a_max: u64,
}

impl Default for AdmissibilityBounds {
    fn default() -> Self {
        AdmissibilityBounds { k_max: 64, b_max: 12, a_max: 12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    NotAdmissible,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Admissible => "admissible",
            Verdict::NotAdmissible => "not-admissible",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub class_m: ClassMReport,
    /// `None` when the transform fails the class check.
    pub tends_to_zero: Option<ZeroTendency>,
    pub t_independent: Option<Independence>,
    pub verdict: Verdict,
}

/// Decides whether `(T, α)` is an admissible pair: `T` in the admissible
/// class, `T^kα → 0` and `α` independent along the orbit.
pub fn admissible_pair(t: &Transform, alpha: &RationalPoint, bounds: AdmissibilityBounds) -> Result<AdmissibilityReport> {
    if t.n() != alpha.n() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a {}x{} transform",
            alpha.n(),
            t.n(),
            t.n()
        )));
    }
    let class_m = class_m_check(t);
    if !class_m.verdict {
        return Ok(AdmissibilityReport {
            class_m,
            tends_to_zero: None,
            t_independent: None,
            verdict: Verdict::NotAdmissible,
        });
    }
    let tz = tends_to_zero(t, alpha, bounds.k_max)?;
    let ind = is_t_independent(t, alpha, bounds.b_max, bounds.a_max)?;
    let verdict = match (&tz, &ind) {
        (ZeroTendency::No, _) | (_, Independence::Dependent { .. }) => Verdict::NotAdmissible,
        (ZeroTendency::Yes { .. }, Independence::Independent { .. }) => Verdict::Admissible,
        _ => Verdict::Unknown,
    };
    Ok(AdmissibilityReport { class_m, tends_to_zero: Some(tz), t_independent: Some(ind), verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[&str]) -> RationalPoint {
        RationalPoint::parse(c).unwrap()
    }

    #[test]
    fn verdicts() {
        let b = AdmissibilityBounds::default();
        let fib = Transform::from_u64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(admissible_pair(&fib, &pt(&["1/2", "1/3"]), b).unwrap().verdict, Verdict::Admissible);
        assert_eq!(admissible_pair(&fib, &pt(&["2", "3"]), b).unwrap().verdict, Verdict::NotAdmissible);
        let diag = Transform::from_u64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(admissible_pair(&diag, &pt(&["1/2", "1/4"]), b).unwrap().verdict, Verdict::NotAdmissible);
        assert_eq!(admissible_pair(&diag, &pt(&["1/2", "1/3"]), b).unwrap().verdict, Verdict::Admissible);
        let u = Transform::from_u64(&[vec![1, 1], vec![0, 1]]);
        let r = admissible_pair(&u, &pt(&["1/2", "1/3"]), b).unwrap();
        assert_eq!(r.verdict, Verdict::NotAdmissible);
        assert!(r.tends_to_zero.is_none());
        assert!(admissible_pair(&fib, &pt(&["1/2"]), b).is_err());
    }
}
