use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for a single operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// To nearest, ties to even.
    Nearest,
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Nearest => Round::Nearest,
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Binary floating-point number `mant · 2^exp` with an explicit working
/// precision in bits.
///
/// The mantissa is kept odd (or zero) so equal values compare equal
/// structurally; results of operations carry at most `prec` significant bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `n / 2^k` rounded by `mode`.
fn shift_round(n: &BigInt, k: u64, mode: Round) -> BigInt {
    if k == 0 {
        return n.clone();
    }
    let d = pow2(k);
    let (q, r) = n.div_mod_floor(&d);
    if r.is_zero() {
        return q;
    }
    match mode {
        Round::Down => q,
        Round::Up => q + 1,
        Round::Nearest => {
            let twice = &r << 1u32;
            match twice.cmp(&d) {
                Ordering::Less => q,
                Ordering::Greater => q + 1,
                Ordering::Equal => {
                    if q.is_even() {
                        q
                    } else {
                        q + 1
                    }
                }
            }
        }
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(&BigInt::one(), prec, Round::Nearest)
    }

    /// Rounds `mant · 2^exp` to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32, mode: Round) -> Self {
        assert!(prec >= 2, "precision must be at least 2 bits");
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.bits();
        let (mut mant, mut exp) = if bits > prec as u64 {
            let k = bits - prec as u64;
            (shift_round(&mant, k, mode), exp + k as i64)
        } else {
            (mant, exp)
        };
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        BigFloat { mant, exp, prec }
    }

    pub fn from_int(n: &BigInt, prec: u32, mode: Round) -> Self {
        Self::from_parts(n.clone(), 0, prec, mode)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), prec, Round::Nearest)
    }

    /// Correctly rounded conversion of a rational.
    pub fn from_rational(x: &BigRational, prec: u32, mode: Round) -> Self {
        if x.is_zero() {
            return Self::zero(prec);
        }
        let (n, d) = (x.numer(), x.denom());
        // choose k so that |n·2^k / d| has at least prec + 2 bits
        let k = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let scaled = if k >= 0 { n << (k as u64) } else { n >> ((-k) as u64) };
        let exact_shift = k < 0 && {
            let back: BigInt = &scaled << ((-k) as u64);
            &back != n
        };
        let (q, r) = scaled.div_mod_floor(d);
        let sticky = !r.is_zero() || exact_shift;
        // floor quotient plus a sticky bit keeps all modes correct
        let mant = if sticky { (q << 1u32) + 1 } else { q << 1u32 };
        Self::from_parts(mant, -k - 1, prec, mode)
    }

    /// Nearest `f64` (for display and heuristics only).
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32, mode: Round) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec, mode)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Position of the top bit: `2^(msb-1) <= |x| < 2^msb`. Zero gives `i64::MIN`.
    pub fn msb(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// `self · 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn add(&self, o: &BigFloat, prec: u32, mode: Round) -> Self {
        if o.is_zero() {
            return self.with_prec(prec, mode);
        }
        if self.is_zero() {
            return o.with_prec(prec, mode);
        }
        let (big, small) = if self.msb() >= o.msb() { (self, o) } else { (o, self) };
        // A summand far below the rounding position only matters through its
        // sign; replace it by a tiny value of the same sign.
        let sticky_exp = big.exp.min(big.msb() - prec as i64) - 2;
        let small = if small.msb() < sticky_exp {
            BigFloat {
                mant: BigInt::from(small.signum()),
                exp: sticky_exp - 1,
                prec: small.prec,
            }
        } else {
            small.clone()
        };
        let e = big.exp.min(small.exp);
        let a = &big.mant << (big.exp - e) as u64;
        let b = &small.mant << (small.exp - e) as u64;
        Self::from_parts(a + b, e, prec, mode)
    }

    pub fn sub(&self, o: &BigFloat, prec: u32, mode: Round) -> Self {
        self.add(&o.neg(), prec, mode)
    }

    pub fn mul(&self, o: &BigFloat, prec: u32, mode: Round) -> Self {
        Self::from_parts(&self.mant * &o.mant, self.exp + o.exp, prec, mode)
    }

    /// Division; panics on a zero divisor.
    pub fn div(&self, o: &BigFloat, prec: u32, mode: Round) -> Self {
        assert!(!o.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let k = prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64;
        let k = k.max(0);
        let n = &self.mant.abs() << k as u64;
        let d = o.mant.abs();
        let (q, r) = n.div_rem(&d);
        let mut m = (q << 1u32) + BigInt::from(!r.is_zero() as i32);
        if self.signum() * o.signum() < 0 {
            m = -m;
        }
        Self::from_parts(m, self.exp - o.exp - k - 1, prec, mode)
    }

    /// Integer power with the given rounding (exponent `>= 0`); rounding is
    /// applied at each step and is therefore only directionally valid for
    /// non-negative bases. Use [`Interval::powi`](super::Interval::powi) for
    /// certified powers.
    pub fn powi_approx(&self, e: u64, prec: u32) -> Self {
        let mut r = Self::one(prec);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, prec, Round::Nearest);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, prec, Round::Nearest);
            }
        }
        r
    }

    pub fn cmp_value(&self, o: &BigFloat) -> Ordering {
        let s = self.signum().cmp(&o.signum());
        if s != Ordering::Equal || self.is_zero() {
            return s;
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn min(&self, o: &BigFloat) -> BigFloat {
        if self.cmp_value(o) == Ordering::Greater { o.clone() } else { self.clone() }
    }

    pub fn max(&self, o: &BigFloat) -> BigFloat {
        if self.cmp_value(o) == Ordering::Less { o.clone() } else { self.clone() }
    }

    /// Floor as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shift_round(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shift_round(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }

    /// Decimal rendering with `digits` significant digits, rounded by `mode`.
    pub fn to_decimal(&self, digits: usize, mode: Round) -> String {
        decimal(&self.to_rational(), digits, mode)
    }
}

/// Renders a rational with `digits` significant digits.
///
/// Fixed notation is used for decimal exponents in `[-6, 20]`, scientific
/// notation (`1.25e-30`) otherwise.
pub fn decimal(x: &BigRational, digits: usize, mode: Round) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // e = floor(log10 |x|)
    let mut e: i64 = ((ax.numer().bits() as f64 - ax.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let pow10 = |k: i64| -> BigRational {
        let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
        if k >= 0 { BigRational::from_integer(p) } else { BigRational::new(BigInt::one(), p) }
    };
    while pow10(e) > ax {
        e -= 1;
    }
    while pow10(e + 1) <= ax {
        e += 1;
    }
    let scaled = &ax * pow10(digits as i64 - 1 - e);
    // magnitude rounding follows the sign
    let m = match (mode, neg) {
        (Round::Nearest, _) => {
            let fl = scaled.floor();
            if &scaled - &fl >= BigRational::new(BigInt::one(), BigInt::from(2)) {
                fl.to_integer() + 1
            } else {
                fl.to_integer()
            }
        }
        (Round::Up, false) | (Round::Down, true) => scaled.ceil().to_integer(),
        _ => scaled.floor().to_integer(),
    };
    let mut s = m.to_string();
    if s.len() > digits {
        e += 1;
        s.truncate(digits);
    }
    let body = if (-6..=20).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if s.len() <= int_len {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else if s.len() == 1 {
        format!("{}e{}", s, e)
    } else {
        format!("{}.{}e{}", &s[..1], &s[1..], e)
    };
    if neg { format!("-{body}") } else { body }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}·2^{} @{})", self.mant, self.exp, self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize;
        f.write_str(&self.to_decimal(digits, Round::Nearest))
    }
}
