//! Exact scalars: the ground fields ℚ and 𝔽_p, and elements of degree at
//! most two over them.

mod absval;
mod quad;

pub use absval::{padic_valuation, AbsValue};
pub use quad::{
    involution, is_k_regular_degree, k_decompose, k_norm, k_projection_of_factor, re_im,
    QuadElement, QuadField, SquareRoot,
};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Commutative ring with a runtime context (field tag, extension, precision).
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
}

/// A ring in which every nonzero element is invertible.
pub trait FieldOps: Ring {
    fn inv(&self) -> Option<Self>;
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Validated prime field. `p = 2` is rejected.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharTwo);
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidField(format!("modulus {p} too large")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Parses the tags `Q` and `Fp:<p>`.
    pub fn parse(tag: &str) -> Result<Field> {
        let tag = tag.trim();
        if tag == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = tag.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {tag:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("unknown field tag {tag:?}")))
    }

    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Scalar::Fp {
                value: bigint_mod(v, p),
                p,
            },
        }
    }

    /// Smallest positive quadratic non-residue (𝔽_p), or -1 (ℚ).
    pub fn canonical_nonsquare(&self) -> Scalar {
        match *self {
            Field::Rational => self.from_i64(-1),
            Field::Prime(p) => {
                let d = (2..p).find(|&d| legendre(d, p) == p - 1).expect("odd prime");
                self.from_i64(d as i64)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// An element of ℚ or 𝔽_p in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    /// Rational value; panics over 𝔽_p.
    pub fn to_rational(&self) -> BigRational {
        self.as_rational().cloned().expect("rational scalar expected")
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `self / k` for a small integer `k`. `None` when `k` vanishes in the field.
    pub fn div_int(&self, k: i64) -> Option<Scalar> {
        self.field().from_i64(k).inv().map(|inv| self.clone() * inv)
    }

    /// Whether the element is a square in the ground field.
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Exact square root in the ground field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().to_biguint()?;
                let d = r.denom().to_biguint()?;
                let sn = n.sqrt();
                let sd = d.sqrt();
                if &sn * &sn == n && &sd * &sd == d {
                    Some(Scalar::Q(BigRational::new(sn.into(), sd.into())))
                } else {
                    None
                }
            }
            Scalar::Fp { value, p } => {
                sqrt_mod_p(*value, *p).map(|value| Scalar::Fp { value, p: *p })
            }
        }
    }

    /// Ordering by value over ℚ and by residue over 𝔽_p.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { value: a, .. }, Scalar::Fp { value: b, .. }) => a.cmp(b),
            _ => panic!("comparing scalars over different fields"),
        }
    }

    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let r = parse_rational(s)?;
        match field {
            Field::Rational => Ok(Scalar::Q(r)),
            Field::Prime(p) => {
                let num = field.from_bigint(r.numer());
                let den = field.from_bigint(r.denom());
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes mod {p}")))?;
                Ok(num * inv)
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_p(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed prime fields");
    a
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) => {
                let p = same_p(p, q);
                Scalar::Fp {
                    value: (a + b) % p,
                    p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p,
            },
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) => {
                let p = same_p(p, q);
                Scalar::Fp {
                    value: mul_mod(a, b, p),
                    p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Ring for Scalar {
    type Ctx = Field;

    fn ctx(&self) -> Field {
        self.field()
    }

    fn zero(ctx: &Field) -> Scalar {
        ctx.zero()
    }

    fn one(ctx: &Field) -> Scalar {
        ctx.one()
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }
}

impl FieldOps for Scalar {
    fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Q(r) => Some(Scalar::Q(r.recip())),
            Scalar::Fp { value, p } => Some(Scalar::Fp {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            }),
        }
    }
}

/// Parses `n`, `n/d`, or a decimal such as `-1.25e-3`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn legendre(a: u64, p: u64) -> u64 {
    pow_mod(a, (p - 1) / 2, p)
}

pub(crate) fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced residue fits")
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks square root modulo an odd prime.
fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Splits a nonzero integer as `s² · t` with `t` squarefree (sign kept in `t`).
pub(crate) fn squarefree_split(v: &BigInt) -> (BigUint, BigInt) {
    assert!(!v.is_zero());
    let sign = if v.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest = v.magnitude().clone();
    let mut square = BigUint::one();
    let mut core = BigUint::one();
    let mut f = BigUint::from(2u32);
    while &f * &f <= rest {
        let mut count = 0u32;
        while (&rest % &f).is_zero() {
            rest /= &f;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &f;
        }
        if count % 2 == 1 {
            core *= &f;
        }
        f += 1u32;
    }
    core *= rest;
    (square, BigInt::from(sign) * BigInt::from(core))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_tags_round_trip() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("Fp:7").unwrap(), Field::Prime(7));
        assert_eq!(Field::Prime(7).tag(), "Fp:7");
        assert_eq!(Field::parse("Fp:2"), Err(Error::CharTwo));
        assert!(Field::parse("Fp:9").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("6/4").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from_integer((-7).into()));
        assert_eq!(
            parse_rational("1.25e-1").unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(Scalar::parse(Field::Prime(7), "1/2").unwrap(), Field::Prime(7).from_i64(4));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(Scalar::rational(4, -6).to_string(), "-2/3");
        assert_eq!(Scalar::rational(4, 2).to_string(), "2");
        assert_eq!(Field::Prime(5).from_i64(-1).to_string(), "4");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let three = f.from_i64(3);
        assert_eq!(three.inv().unwrap() * three.clone(), f.one());
        assert_eq!(three.pow(6), f.one());
        assert!(f.zero().inv().is_none());
        assert_eq!(f.canonical_nonsquare(), f.from_i64(3));
        assert_eq!(Field::Prime(5).canonical_nonsquare(), Field::Prime(5).from_i64(2));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::rational(9, 4).sqrt(), Some(Scalar::rational(3, 2)));
        assert_eq!(Scalar::rational(2, 1).sqrt(), None);
        assert_eq!(Scalar::rational(-1, 1).sqrt(), None);
        for p in [3u64, 5, 7, 13, 17, 97] {
            let f = Field::Prime(p);
            for a in 0..p {
                let x = f.from_i64(a as i64);
                if let Some(r) = x.sqrt() {
                    assert_eq!(r.clone() * r, x);
                } else {
                    assert!((0..p).all(|b| mul_mod(b, b, p) != a));
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn squarefree_splitting() {
        let (s, t) = squarefree_split(&BigInt::from(-72));
        assert_eq!((s, t), (BigUint::from(6u32), BigInt::from(-2)));
        let (s, t) = squarefree_split(&BigInt::from(15));
        assert_eq!((s, t), (BigUint::from(1u32), BigInt::from(15)));
    }
}
