//! Binary ball arithmetic: a dyadic midpoint rounded to a fixed number of
//! bits, plus an upward-rounded radius enclosing every discarded error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Ring;

const MAG_BITS: u32 = 32;

/// Upper bound `man·2^exp` on a nonnegative real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn normalized(mut man: u128, mut exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits > MAG_BITS {
            let k = bits - MAG_BITS;
            let lost = man & ((1u128 << k) - 1) != 0;
            man = (man >> k) + lost as u128;
            exp += k as i64;
        }
        Mag { man: man as u64, exp }
    }

    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::normalized(v as u128, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    fn from_biguint_up(n: &BigUint, exp: i64) -> Mag {
        let bits = n.bits();
        if bits <= 64 {
            return Mag::normalized(n.to_u64().expect("fits") as u128, exp);
        }
        let k = bits - 64;
        let lost = n.trailing_zeros().is_some_and(|t| t < k);
        let top = (n >> k).to_u64().expect("fits") as u128 + lost as u128;
        Mag::normalized(top, exp + k as i64)
    }

    /// Upper bound on `|q|`.
    pub fn from_rational_up(q: &BigRational) -> Mag {
        if q.is_zero() {
            return Mag::ZERO;
        }
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        let shift = 64 - (num.bits() as i64 - den.bits() as i64);
        let scaled = if shift >= 0 {
            num << shift as u64
        } else {
            num >> (-shift) as u64
        };
        let (quot, rem) = scaled.div_rem(den);
        // Right shifts of `num` lose bits; the +1 covers them and the remainder.
        let up = if rem.is_zero() && shift >= 0 { quot } else { quot + 1u32 };
        Mag::from_biguint_up(&up, -shift)
    }

    pub fn add_up(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let shift = hi.exp - lo.exp;
        if shift > 64 {
            return Mag::normalized(hi.man as u128 + 1, hi.exp);
        }
        Mag::normalized(((hi.man as u128) << shift) + lo.man as u128, lo.exp)
    }

    pub fn mul_up(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalized(self.man as u128 * o.man as u128, self.exp + o.exp)
    }

    pub fn div_u64(self, k: u64) -> Mag {
        assert!(k > 0, "division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let k = k as u128;
        Mag::normalized(num.div_ceil(k), self.exp - 64)
    }

    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.man as f64 * 2f64.powi(self.exp.clamp(-1100, 1100) as i32)
    }

    pub fn to_rational(self) -> BigRational {
        let m = BigRational::from_integer(BigInt::from(self.man));
        let two = BigRational::from_integer(BigInt::from(2));
        m * two.pow(self.exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn top(&self) -> i64 {
        self.exp + (64 - self.man.leading_zeros()) as i64
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Mag) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Mag) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            o => return o,
        }
        let e = self.exp.min(other.exp);
        let a = (self.man as u128) << (self.exp - e);
        let b = (other.man as u128) << (other.exp - e);
        a.cmp(&b)
    }
}

/// Ball `[mid − rad, mid + rad]` with `mid = man·2^exp`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigFloat {
    man: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

impl BigFloat {
    fn rounded(man: BigInt, exp: i64, rad: Mag, prec: u32) -> BigFloat {
        if man.is_zero() {
            return BigFloat { man, exp: 0, rad, prec };
        }
        let bits = man.bits();
        if bits <= prec as u64 {
            return BigFloat { man, exp, rad, prec };
        }
        let k = bits - prec as u64;
        let (sign, mag) = (man.sign(), man.magnitude());
        let lost = mag.trailing_zeros().is_some_and(|t| t < k);
        let man = BigInt::from_biguint(sign, mag >> k);
        let rad = if lost { rad.add_up(Mag::pow2(exp + k as i64)) } else { rad };
        BigFloat {
            man,
            exp: exp + k as i64,
            rad,
            prec,
        }
    }

    pub fn zero(prec: u32) -> BigFloat {
        BigFloat {
            man: BigInt::zero(),
            exp: 0,
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> BigFloat {
        BigFloat::rounded(BigInt::from(v), 0, Mag::ZERO, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> BigFloat {
        let den = q.denom();
        let t = den.trailing_zeros().unwrap_or(0);
        if den.magnitude() == &(BigUint::one() << t) {
            return BigFloat::rounded(q.numer().clone(), -(t as i64), Mag::ZERO, prec);
        }
        let s = prec as i64 + 2 + den.bits() as i64 - q.numer().bits() as i64;
        let (num, den) = if s >= 0 {
            (q.numer() << s as u64, den.clone())
        } else {
            (q.numer().clone(), den << (-s) as u64)
        };
        let man = num.div_floor(&den);
        BigFloat::rounded(man, -s, Mag::pow2(-s), prec)
    }

    /// Enclosure of `√q` for a rational `q ≥ 0`.
    pub fn sqrt_rational(q: &BigRational, prec: u32) -> BigFloat {
        assert!(!q.is_negative(), "square root of a negative number");
        if q.is_zero() {
            return BigFloat::zero(prec);
        }
        let a = q.numer().magnitude();
        let b = q.denom().magnitude();
        let k = (prec as i64 + 2 + (b.bits() as i64 - a.bits() as i64) / 2).max(0);
        let s = ((a << (2 * k) as u64) / b).sqrt();
        BigFloat::rounded(BigInt::from(s), -k, Mag::pow2(-k), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn with_added_radius(mut self, r: Mag) -> BigFloat {
        self.rad = self.rad.add_up(r);
        self
    }

    /// Exact midpoint.
    pub fn mid(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    fn mid_mag(&self) -> Mag {
        Mag::from_biguint_up(self.man.magnitude(), self.exp)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_mag().add_up(self.rad)
    }

    pub fn div_u64(&self, k: u64) -> BigFloat {
        let guard = (self.prec as i64 + 64 - self.man.bits() as i64).max(0);
        let man = (&self.man << guard as u64).div_floor(&BigInt::from(k));
        let exp = self.exp - guard;
        let rad = self.rad.div_u64(k).add_up(Mag::pow2(exp));
        BigFloat::rounded(man, exp, rad, self.prec)
    }

    pub fn scale_rational(&self, q: &BigRational) -> BigFloat {
        self.clone() * BigFloat::from_rational(q, self.prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let (m, e) = if bits > 60 {
            (&self.man >> (bits - 60), self.exp + (bits - 60) as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        m.to_f64().expect("60-bit mantissa") * 2f64.powi(e.clamp(-1100, 1100) as i32)
    }

    /// Midpoint in scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        let q = self.mid();
        if q.is_zero() {
            return "0".into();
        }
        let sign = if q.is_negative() { "-" } else { "" };
        let a = q.abs();
        let ten = BigRational::from_integer(BigInt::from(10));
        let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
        let mut k = est.floor() as i64;
        while ten.pow(k as i32) > a {
            k -= 1;
        }
        while ten.pow(k as i32 + 1) <= a {
            k += 1;
        }
        let digits = digits.max(1);
        let scaled = &a * ten.pow(digits as i32 - 1 - k as i32);
        let mut r = scaled.round().to_integer();
        if r == BigInt::from(10).pow(digits as u32) {
            r /= 10;
            k += 1;
        }
        let s = r.to_string();
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }

    /// `exp`, `sin`, `cos`, `sinh` or `cosh` of the ball.
    pub fn exp_family(&self, f: ExpFamily) -> BigFloat {
        let prec = self.prec;
        let eps = Mag::pow2(-(prec as i64) - 4);
        let xm = self.abs_upper();
        let two = Mag::from_u64(2);
        let mut term = BigFloat::from_i64(1, prec);
        let mut sum = BigFloat::zero(prec);
        let mut m = 0u64;
        loop {
            if let Some(negative) = f.sign(m) {
                sum = if negative { sum - term.clone() } else { sum + term.clone() };
            }
            let next = term.abs_upper().mul_up(xm).div_u64(m + 1);
            if Mag::from_u64(m + 2) >= two.mul_up(xm) && two.mul_up(next) <= eps {
                return sum.with_added_radius(two.mul_up(next));
            }
            term = (term * self.clone()).div_u64(m + 1);
            m += 1;
        }
    }

    pub fn exp(&self) -> BigFloat {
        self.exp_family(ExpFamily::Exp)
    }

    pub fn sin(&self) -> BigFloat {
        self.exp_family(ExpFamily::Sin)
    }

    pub fn cos(&self) -> BigFloat {
        self.exp_family(ExpFamily::Cos)
    }

    pub fn sinh(&self) -> BigFloat {
        self.exp_family(ExpFamily::Sinh)
    }

    pub fn cosh(&self) -> BigFloat {
        self.exp_family(ExpFamily::Cosh)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpFamily {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl ExpFamily {
    /// `None` if `x^m/m!` is absent from the series, else whether it is
    /// subtracted.
    fn sign(self, m: u64) -> Option<bool> {
        let odd = m % 2 == 1;
        match self {
            ExpFamily::Exp => Some(false),
            ExpFamily::Sin => odd.then_some((m / 2) % 2 == 1),
            ExpFamily::Cos => (!odd).then_some((m / 2) % 2 == 1),
            ExpFamily::Sinh => odd.then_some(false),
            ExpFamily::Cosh => (!odd).then_some(false),
        }
    }
}

impl Add for BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: BigFloat) -> BigFloat {
        let prec = self.prec.max(rhs.prec);
        let rad = self.rad.add_up(rhs.rad);
        if self.man.is_zero() {
            return BigFloat::rounded(rhs.man, rhs.exp, rad, prec);
        }
        if rhs.man.is_zero() {
            return BigFloat::rounded(self.man, self.exp, rad, prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = self.man << (self.exp - e) as u64;
        let b = rhs.man << (rhs.exp - e) as u64;
        BigFloat::rounded(a + b, e, rad, prec)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(mut self) -> BigFloat {
        self.man = -self.man;
        self
    }
}

impl Sub for BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: BigFloat) -> BigFloat {
        self + (-rhs)
    }
}

impl Mul for BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: BigFloat) -> BigFloat {
        let prec = self.prec.max(rhs.prec);
        let rad = self
            .mid_mag()
            .mul_up(rhs.rad)
            .add_up(rhs.mid_mag().mul_up(self.rad))
            .add_up(self.rad.mul_up(rhs.rad));
        BigFloat::rounded(self.man * rhs.man, self.exp + rhs.exp, rad, prec)
    }
}

impl Ring for BigFloat {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.prec
    }

    fn zero(prec: &u32) -> BigFloat {
        BigFloat::zero(*prec)
    }

    fn one(prec: &u32) -> BigFloat {
        BigFloat::from_i64(1, *prec)
    }

    fn is_zero(&self) -> bool {
        self.man.is_zero() && self.rad.is_zero()
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{} ± {:.3e}", self.to_sci(digits.max(1)), self.rad.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Whether the ball covers the whole bracket `[lo, hi]`.
    fn contains(x: &BigFloat, lo: &BigRational, hi: &BigRational) -> bool {
        let r = x.radius().to_rational();
        let m = x.mid();
        &(&m - &r) <= lo && hi <= &(&m + &r)
    }

    #[test]
    fn mag_rounds_up() {
        let a = Mag::from_rational_up(&q(1, 3));
        assert!(a.to_f64() >= 1.0 / 3.0);
        assert!(a.to_f64() < 1.0 / 3.0 + 1e-9);
        assert!(Mag::from_u64(3) > Mag::from_u64(2));
        assert!(Mag::pow2(-100).add_up(Mag::from_u64(1)) > Mag::from_u64(1));
        assert!(Mag::from_u64(7).div_u64(3).to_f64() >= 7.0 / 3.0);
    }

    #[test]
    fn rational_embedding_and_arithmetic() {
        let third = BigFloat::from_rational(&q(1, 3), 128);
        let one = third.clone() + third.clone() + third.clone();
        let d = (one - BigFloat::from_i64(1, 128)).abs_upper();
        assert!(d.to_f64() < 1e-37);
        let x = BigFloat::from_rational(&q(-5, 8), 64);
        assert_eq!(x.mid(), q(-5, 8));
        assert!(x.radius().is_zero());
    }

    #[test]
    fn sqrt_two_encloses() {
        let s = BigFloat::sqrt_rational(&q(2, 1), 128);
        let sq = s.clone() * s;
        assert!((sq - BigFloat::from_i64(2, 128)).abs_upper().to_f64() < 1e-36);
    }

    #[test]
    fn e_and_trig_values() {
        // Σ_{k≤45} 1/k! < e < that + 1/45!, a bracket far narrower than 2^-128.
        let mut lo = BigRational::zero();
        let mut fact = BigInt::one();
        for k in 0..=45u32 {
            if k > 0 {
                fact *= k;
            }
            lo += BigRational::new(BigInt::one(), fact.clone());
        }
        let hi = &lo + BigRational::new(BigInt::one(), fact);
        let e = BigFloat::from_i64(1, 128).exp();
        assert!(contains(&e, &lo, &hi));
        let c = BigFloat::from_i64(1, 128).cos().to_f64();
        let s = BigFloat::from_i64(1, 128).sin().to_f64();
        assert!((c - 0.5403023058681398).abs() < 1e-15);
        assert!((s - 0.8414709848078965).abs() < 1e-15);
        let one = BigFloat::from_i64(1, 128);
        let ch = one.cosh();
        let sh = one.sinh();
        let id = ch.clone() * ch - sh.clone() * sh;
        assert!((id - BigFloat::from_i64(1, 128)).abs_upper().to_f64() < 1e-35);
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(BigFloat::from_i64(1234, 64).to_sci(3), "1.23e3");
        assert_eq!(BigFloat::from_rational(&q(-1, 8), 64).to_sci(2), "-1.3e-1");
        assert_eq!(BigFloat::from_i64(0, 64).to_sci(5), "0");
        assert_eq!(BigFloat::from_rational(&q(999, 1000), 64).to_sci(2), "1.0e0");
    }
}
