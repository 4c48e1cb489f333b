//! Multivariate polynomial gcd over ℚ by recursive primitive remainder
//! sequences in ℤ[z].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MultiPoly;

/// Primitive integer representative: integer coefficients with gcd 1 and a
/// positive leading coefficient. Zero maps to zero.
pub fn primitive_integer(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let (p, _) = p.clear_denominators();
    let c = p.integer_content();
    let mut r = p.scale(&BigRational::new(BigInt::one(), c));
    if r.leading_sign() < 0 {
        r = r.neg();
    }
    r
}

/// Gcd over ℚ, normalized by [`primitive_integer`]. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return primitive_integer(b);
    }
    if b.is_zero() {
        return primitive_integer(a);
    }
    let a = primitive_integer(a);
    let b = primitive_integer(b);
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars().clone());
    }
    if a.div_exact(&b).is_some() {
        return b;
    }
    if b.div_exact(&a).is_some() {
        return a;
    }
    primitive_integer(&gcd_int(&a, &b))
}

fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// Gcd of two nonzero integer polynomials, up to sign.
fn gcd_int(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let vars = a.vars().clone();
    let v = match main_variable(a, b) {
        None => return MultiPoly::one(vars),
        Some(v) => v,
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_int_or_const(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        return c;
    }
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            let g = primitive_in(&r1, v);
            return c.mul(&g);
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        r0 = r1;
        r1 = primitive_in(&r, v);
    }
}

fn gcd_int_or_const(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars().clone());
    }
    primitive_integer(&gcd_int(&primitive_integer(a), &primitive_integer(b)))
}

/// Content of `p` viewed as a polynomial in `v` with coefficients in the
/// other variables (a primitive integer polynomial free of `v`).
fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = p.to_univariate(v);
    let mut g = MultiPoly::zero(p.vars().clone());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { primitive_integer(c) } else { gcd_int_or_const(&g, c) };
        if g.is_constant() {
            return MultiPoly::one(p.vars().clone());
        }
    }
    g
}

fn primitive_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let p = primitive_integer(p);
    let c = content_in(&p, v);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let vars = a.vars().clone();
    let bc = b.to_univariate(v);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.to_univariate(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, c) in bc.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&c.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
    }
    let out = MultiPoly::from_univariate(&r, v, vars);
    // keep coefficient growth down between steps
    if out.is_zero() {
        out
    } else {
        let c = out.integer_content();
        out.scale(&BigRational::new(BigInt::one(), c))
    }
}

/// Lcm over ℚ, normalized like [`gcd`].
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars().clone());
    }
    let g = gcd(a, b);
    primitive_integer(&a.mul(b).div_exact(&g).expect("gcd divides"))
}

/// Integer scalar with `p = s * primitive_integer(p)`.
pub fn scalar_factor(p: &MultiPoly) -> BigRational {
    match (p.leading(), primitive_integer(p).leading()) {
        (Some((_, a)), Some((_, b))) => a / b,
        _ => BigRational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vars;

    fn p(s: &str, v: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars(v)).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        let g = gcd(&p("z^2 - 1", &["z"]), &p("z^2 + 2*z + 1", &["z"]));
        assert_eq!(g, p("z + 1", &["z"]));
    }

    #[test]
    fn bivariate_gcd() {
        let v = ["x", "y"];
        let common = p("x*y + 2*y^2 - 3", &v);
        let a = common.mul(&p("x - y", &v));
        let b = common.mul(&p("x^2 + y + 1", &v)).scale(&crate::exact::rational::q(3, 2));
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn coprime_is_one() {
        let v = ["x", "y"];
        assert_eq!(gcd(&p("x + y", &v), &p("x - y", &v)), p("1", &v));
        assert_eq!(gcd(&p("2*x", &v), &p("4", &v)), p("1", &v));
    }
}
