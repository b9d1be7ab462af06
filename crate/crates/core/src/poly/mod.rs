//! Dense univariate polynomials over the ground field.

mod finite;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::scalar::{Field, FieldOps, QuadElement, Ring, Scalar};

/// Factorization degree cap.
pub const MAX_FACTOR_DEGREE: usize = 24;

/// Default seed for the randomized equal-degree splitter.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Coefficient vector, constant term first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Polynomial { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Polynomial {
        Polynomial::new(field, vec![])
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    /// The indeterminate `X`.
    pub fn x(field: Field) -> Polynomial {
        Polynomial::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(c.field(), vec![c])
    }

    /// `c·X^k`
    pub fn monomial(c: Scalar, k: usize) -> Polynomial {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Polynomial::new(field, coeffs)
    }

    /// `X - c`
    pub fn linear(c: Scalar) -> Polynomial {
        let field = c.field();
        Polynomial::new(field, vec![-c, field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Polynomial {
        Polynomial::new(
            self.field,
            self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        )
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * self.field.from_i64(i as i64))
            .collect();
        Polynomial::new(self.field, coeffs)
    }

    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let inv_lead = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Polynomial::zero(self.field), Polynomial::zero(self.field)));
        };
        if sd < dd {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone() * inv_lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Polynomial::new(self.field, quot),
            Polynomial::new(self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Polynomial {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Horner evaluation in any ring that the ground field embeds into.
    pub fn eval_with<T: Ring>(&self, x: &T, embed: impl Fn(&Scalar) -> T) -> T {
        let mut acc = T::zero(&x.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.eval_with(x, |c| c.clone())
    }

    pub fn eval_quad(&self, x: &QuadElement) -> QuadElement {
        let ext = x.extension();
        self.eval_with(x, |c| ext.embed(c.clone()))
    }

    /// `self(inner(X))`
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `self(X + c)`
    pub fn shift(&self, c: &Scalar) -> Polynomial {
        let inner = Polynomial::new(self.field, vec![c.clone(), self.field.one()]);
        self.compose(&inner)
    }

    pub fn pow(&self, mut e: usize) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn mul_mod(&self, other: &Polynomial, modulus: &Polynomial) -> Polynomial {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, e: &BigUint, modulus: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::one(self.field).rem(modulus).expect("nonzero modulus");
        let base = self.rem(modulus).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `self(inner) mod modulus`
    pub fn compose_mod(&self, inner: &Polynomial, modulus: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &acc.mul_mod(inner, modulus) + &Polynomial::constant(c.clone());
        }
        acc.rem(modulus).expect("nonzero modulus")
    }

    /// Multiplicative inverse modulo `modulus`.
    pub fn inverse_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        let (g, s, _) = ext_gcd(&self.rem(modulus)?, modulus)?;
        if !g.is_one() {
            return Err(Error::NoModularInverse);
        }
        s.rem(modulus)
    }

    pub fn is_squarefree(&self) -> bool {
        match gcd(self, &self.derivative()) {
            Ok(g) => g.is_one(),
            Err(_) => false,
        }
    }

    /// Monic squarefree components `(g_i, i)` with `self = lc · ∏ g_i^i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Polynomial, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        squarefree_rec(&self.monic(), 1, &mut out);
        Ok(out)
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        let parts = self.squarefree_decomposition()?;
        Ok(parts
            .iter()
            .fold(Polynomial::one(self.field), |acc, (g, _)| lcm(&acc, g)))
    }

    pub fn factor(&self) -> Result<Factorization> {
        self.factor_with_seed(DEFAULT_SEED)
    }

    /// Complete factorization into monic irreducibles; the seed drives the
    /// randomized splitting over 𝔽_p.
    pub fn factor_with_seed(&self, seed: u64) -> Result<Factorization> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg > MAX_FACTOR_DEGREE {
            return Err(Error::DegreeTooLarge(deg));
        }
        let mut factors: Vec<(Polynomial, usize)> = Vec::new();
        let mut rng_seed = seed;
        for (part, mult) in self.squarefree_decomposition()? {
            if part.is_one() {
                continue;
            }
            let irreducibles = match self.field {
                Field::Rational => rational::factor_squarefree(&part)?,
                Field::Prime(_) => {
                    rng_seed = rng_seed.wrapping_add(1);
                    finite::factor_squarefree(&part, rng_seed)
                }
            };
            for g in irreducibles {
                match factors.iter_mut().find(|(h, _)| *h == g) {
                    Some(entry) => entry.1 += mult,
                    None => factors.push((g, mult)),
                }
            }
        }
        factors.sort_by(|a, b| canonical_order(&a.0, &b.0));
        Ok(Factorization {
            unit: self.leading(),
            factors,
        })
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_constant() {
            return Ok(false);
        }
        let f = self.factor()?;
        Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
    }

    /// `f(X − a_{d−1}/d)`: the Tschirnhaus shift killing the subleading term.
    pub fn reduced_form(&self) -> Result<Polynomial> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let f = self.monic();
        let shift = f
            .coeff(deg - 1)
            .div_int(deg as i64)
            .ok_or(Error::NotKRegular {
                degree: deg,
                characteristic: self.field.characteristic(),
            })?;
        Ok(f.shift(&-shift))
    }

    /// Maximum degree of an irreducible factor.
    pub fn splitting_bound(&self) -> Result<usize> {
        if self.is_constant() {
            return Err(if self.is_zero() {
                Error::ZeroPolynomial
            } else {
                Error::ConstantPolynomial
            });
        }
        let f = self.factor()?;
        Ok(f.max_degree())
    }

    /// `(α, n)` for an irreducible `X² − 2αX + (α² + n)`.
    pub fn quad_factor_data(&self) -> Result<(Scalar, Scalar)> {
        if self.degree() != Some(2) {
            return Err(Error::NotQuadratic);
        }
        if self.field == Field::Prime(2) {
            return Err(Error::CharTwo);
        }
        let f = self.monic();
        let alpha = -f.coeff(1).div_int(2).expect("char ≠ 2");
        let n = f.coeff(0) - alpha.clone() * alpha.clone();
        if (-n.clone()).is_square() {
            return Err(Error::Reducible);
        }
        Ok((alpha, n))
    }
}

fn squarefree_rec(f: &Polynomial, mult: usize, out: &mut Vec<(Polynomial, usize)>) {
    if f.is_constant() {
        return;
    }
    let field = f.field;
    let df = f.derivative();
    if df.is_zero() {
        // f = g(X^p) = g^{(1/p)}(X)^p over 𝔽_p.
        let p = field.characteristic() as usize;
        let root = pth_root(f, p);
        squarefree_rec(&root, mult * p, out);
        return;
    }
    let mut c = gcd(f, &df).expect("f nonzero");
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(&w, &c).expect("w nonzero");
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, mult * i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        let p = field.characteristic() as usize;
        let root = pth_root(&c, p);
        squarefree_rec(&root, mult * p, out);
    }
}

/// `Σ c_k X^{kp} ↦ Σ c_k X^k` (Frobenius is the identity on 𝔽_p).
fn pth_root(f: &Polynomial, p: usize) -> Polynomial {
    assert!(p > 0, "p-th root in characteristic 0");
    let coeffs = f.coeffs.iter().step_by(p).cloned().collect();
    Polynomial::new(f.field, coeffs)
}

/// Sort key: degree, then coefficients from the constant term up.
pub fn canonical_order(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match x.canonical_cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// Monic gcd.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// `(g, s, t)` with `s·f + t·g_in = g` and `g` monic.
pub fn ext_gcd(f: &Polynomial, g: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let field = f.field;
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Polynomial::one(field), Polynomial::zero(field));
    let (mut t0, mut t1) = (Polynomial::zero(field), Polynomial::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading().inv().expect("nonzero");
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Monic least common multiple.
pub fn lcm(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(f.field);
    }
    let d = gcd(f, g).expect("nonzero");
    (&f.exact_div(&d) * g).monic()
}

/// `unit · ∏ factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(self.unit.clone()),
            |acc, (f, m)| &acc * &f.pow(*m),
        )
    }

    pub fn max_degree(&self) -> usize {
        self.factors
            .iter()
            .filter_map(|(f, _)| f.degree())
            .max()
            .unwrap_or(0)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::new(self.field, coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::new(self.field, coeffs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(self.field, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag == "1" && i > 0 { String::new() } else { mag };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}X")?,
                _ => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}
