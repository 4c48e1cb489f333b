use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::normal_form::{normal_form, NormalForm};
use super::spectral::{two_mut, PerronRoot};
use super::Transform;
use crate::exact::rational::q;
use crate::exact::upoly::{totient_at_most, UPoly};

/// Evidence for membership of `T` in the admissible class.
#[derive(Clone, Debug)]
pub struct ClassMReport {
    pub det: BigInt,
    pub nonsingular: bool,
    /// Smallest `k` with `Φ_k | charpoly(T)`, if any.
    pub root_of_unity_witness: Option<u64>,
    /// Per diagonal block: enclosure of its Perron root.
    pub block_radii: Vec<(BigRational, BigRational)>,
    /// Per top block: whether its radius equals `ρ(T)`.
    pub top_equal: Vec<bool>,
    /// Per lower block: whether its radius is strictly below `ρ(T)`.
    pub lower_strict: Vec<bool>,
    pub perron_condition: bool,
    pub normal_form: NormalForm,
    pub verdict: bool,
}

impl ClassMReport {
    pub fn root_of_unity_eigenvalue(&self) -> bool {
        self.root_of_unity_witness.is_some()
    }
}

/// Smallest `k` such that a primitive `k`-th root of unity is an eigenvalue
/// of `T`; only `k` with `φ(k) <= n` can occur.
pub fn has_root_of_unity_eigenvalue(t: &Transform) -> Option<u64> {
    let p = t.charpoly();
    totient_at_most(t.n() as u64).into_iter().find(|&k| UPoly::cyclotomic(k).divides(&p))
}

/// Decides membership: nonsingular, no root-of-unity eigenvalue, and the
/// normal form has every top block at radius `ρ(T)` and every lower block
/// strictly below it.
pub fn class_m_check(t: &Transform) -> ClassMReport {
    let det = t.det();
    let nonsingular = !det.is_zero();
    let root_of_unity_witness = has_root_of_unity_eigenvalue(t);
    let nf = normal_form(t);
    let mut roots: Vec<PerronRoot> = nf.diagonal_blocks.iter().map(PerronRoot::of_block).collect();
    let mut best = 0;
    for i in 1..roots.len() {
        let (a, b) = two_mut(&mut roots, best, i);
        if a.compare(b) == Ordering::Less {
            best = i;
        }
    }
    // ρ(block) <= ρ(T) always holds, so "strictly below" is "not equal"
    let equal: Vec<bool> = (0..roots.len()).map(|i| i == best || roots[i].equals(&roots[best])).collect();
    let top_equal = equal[..nf.kappa].to_vec();
    let lower_strict: Vec<bool> = equal[nf.kappa..].iter().map(|e| !e).collect();
    let perron_condition = top_equal.iter().all(|&b| b) && lower_strict.iter().all(|&b| b);
    let w = q(1, 1 << 20);
    let block_radii = roots
        .iter_mut()
        .map(|r| {
            r.refine(&w);
            let (a, b) = r.bounds();
            (a.clone(), b.clone())
        })
        .collect();
    let verdict = nonsingular && root_of_unity_witness.is_none() && perron_condition;
    ClassMReport {
        det,
        nonsingular,
        root_of_unity_witness,
        block_radii,
        top_equal,
        lower_strict,
        perron_condition,
        normal_form: nf,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_classification() {
        assert!(class_m_check(&Transform::scalar(2)).verdict);
        let d = class_m_check(&Transform::from_u64(&[vec![2, 0], vec![0, 3]]));
        assert!(!d.verdict && d.nonsingular && !d.perron_condition);
        assert_eq!(d.top_equal, vec![false, true]);
        assert!(class_m_check(&Transform::from_u64(&[vec![1, 1], vec![1, 0]])).verdict);
        let u = class_m_check(&Transform::from_u64(&[vec![1, 1], vec![0, 1]]));
        assert!(!u.verdict);
        assert_eq!(u.root_of_unity_witness, Some(1));
        assert!(class_m_check(&Transform::from_u64(&[vec![2, 0], vec![0, 2]])).verdict);
    }

    #[test]
    fn lower_block_must_be_strictly_smaller() {
        assert!(class_m_check(&Transform::from_u64(&[vec![3, 0], vec![1, 2]])).verdict);
        let r = class_m_check(&Transform::from_u64(&[vec![2, 0], vec![1, 3]]));
        assert!(!r.perron_condition);
        assert_eq!(r.lower_strict, vec![false]);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(has_root_of_unity_eigenvalue(&Transform::from_u64(&[vec![0, 1], vec![1, 0]])), Some(1));
        assert_eq!(has_root_of_unity_eigenvalue(&Transform::from_u64(&[vec![1, 1], vec![1, 0]])), None);
        assert!(!class_m_check(&Transform::from_u64(&[vec![0, 1], vec![1, 0]])).verdict);
    }
}
