//! Coprime bases: multiplicative structure of integers without factoring.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Pairwise coprime integers `> 1` such that every input is a product of
/// their powers (gcd-free basis by repeated splitting). Sorted increasingly.
pub fn coprime_base(nums: &[BigUint]) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = nums.iter().filter(|x| **x > BigUint::one()).cloned().collect();
    base.sort();
    base.dedup();
    loop {
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let a = &base[i] / &g;
        let b = &base[j] / &g;
        base.remove(j);
        base.remove(i);
        for x in [a, b, g] {
            if x > BigUint::one() {
                base.push(x);
            }
        }
        base.sort();
        base.dedup();
    }
    base
}

/// Exponents of `n` over a coprime base, or `None` if `n` is not a product
/// of base elements.
pub fn exponents_over(base: &[BigUint], n: &BigUint) -> Option<Vec<u64>> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut e = vec![0u64; base.len()];
    for (k, b) in base.iter().enumerate() {
        while (&n % b).is_zero() {
            n /= b;
            e[k] += 1;
        }
    }
    n.is_one().then_some(e)
}
