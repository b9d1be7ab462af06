use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{squarefree_split, Field, FieldOps, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// The extension K(√d) for a canonical non-square `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    pub base: Field,
    pub d: Scalar,
}

impl QuadField {
    /// Extension obtained by adjoining the square root of an arbitrary
    /// non-square; the radicand is brought to canonical form.
    pub fn adjoining(radicand: &Scalar) -> Result<QuadField> {
        let (_, d) = canonical_radicand(radicand)?;
        Ok(QuadField {
            base: radicand.field(),
            d,
        })
    }

    pub fn sqrt_d(&self) -> QuadElement {
        QuadElement {
            a: self.base.zero(),
            b: self.base.one(),
            d: self.d.clone(),
        }
    }

    pub fn embed(&self, a: Scalar) -> QuadElement {
        QuadElement {
            a,
            b: self.base.zero(),
            d: self.d.clone(),
        }
    }
}

/// `a + b√d` over the ground field; `d` is a canonical non-square
/// (a squarefree integer ≠ 0, 1 over ℚ; the least non-residue over 𝔽_p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

/// Exact square root of a ground-field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareRoot {
    Ground(Scalar),
    Quad(QuadElement),
}

/// Writes a non-square `r` as `c² · d` with `d` canonical; returns `(c, d)`.
fn canonical_radicand(r: &Scalar) -> Result<(Scalar, Scalar)> {
    if r.is_zero() || r.is_square() {
        return Err(Error::SquareRadicand(r.to_string()));
    }
    match r {
        Scalar::Q(q) => {
            // √(u/v) = √(uv)/v, and uv = s²·t.
            let uv: BigInt = q.numer() * q.denom();
            let (s, t) = squarefree_split(&uv);
            let c = BigRational::new(BigInt::from(s), q.denom().clone());
            Ok((Scalar::Q(c), Scalar::Q(BigRational::from_integer(t))))
        }
        Scalar::Fp { .. } => {
            let field = r.field();
            let d = field.canonical_nonsquare();
            let ratio = r.clone() * d.inv().expect("nonzero");
            let c = ratio.sqrt().expect("quotient of two non-residues is a residue");
            Ok((c, d))
        }
    }
}

impl QuadElement {
    /// Builds `a + b√r`, rewriting the radicand `r` canonically.
    pub fn new(a: Scalar, b: Scalar, r: Scalar) -> Result<QuadElement> {
        let (c, d) = canonical_radicand(&r)?;
        Ok(QuadElement { a, b: b * c, d })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn extension(&self) -> QuadField {
        QuadField {
            base: self.field(),
            d: self.d.clone(),
        }
    }

    /// Whether the element lies in the ground field.
    pub fn is_ground(&self) -> bool {
        self.b.is_zero()
    }

    /// The element as a ground-field scalar, when `b = 0`.
    pub fn to_ground(&self) -> Option<Scalar> {
        self.is_ground().then(|| self.a.clone())
    }

    /// `a = 0` and `b ≠ 0`.
    pub fn is_vertical(&self) -> bool {
        self.a.is_zero() && !self.b.is_zero()
    }

    /// Exact square root of `r`, canonical with `b > 0` over ℚ.
    pub fn sqrt_of(r: &Scalar) -> SquareRoot {
        if let Some(s) = r.sqrt() {
            return SquareRoot::Ground(s);
        }
        let (c, d) = canonical_radicand(r).expect("non-square");
        let c = match &c {
            Scalar::Q(q) if q.is_negative() => -c,
            _ => c,
        };
        SquareRoot::Quad(QuadElement {
            a: r.field().zero(),
            b: c,
            d,
        })
    }

    pub fn checked_add(&self, other: &QuadElement) -> Result<QuadElement> {
        self.check_same(other)?;
        Ok(self.clone() + other.clone())
    }

    pub fn checked_mul(&self, other: &QuadElement) -> Result<QuadElement> {
        self.check_same(other)?;
        Ok(self.clone() * other.clone())
    }

    fn check_same(&self, other: &QuadElement) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MixedExtension);
        }
        Ok(())
    }

    pub fn scale(&self, k: &Scalar) -> QuadElement {
        QuadElement {
            a: self.a.clone() * k.clone(),
            b: self.b.clone() * k.clone(),
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}

fn assert_same(x: &QuadElement, y: &QuadElement) {
    assert_eq!(x.d, y.d, "mixed quadratic extensions");
}

impl Add for QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: QuadElement) -> QuadElement {
        assert_same(&self, &rhs);
        QuadElement {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d: self.d,
        }
    }
}

impl Sub for QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: QuadElement) -> QuadElement {
        self + (-rhs)
    }
}

impl Neg for QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: QuadElement) -> QuadElement {
        assert_same(&self, &rhs);
        let a = self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * self.d.clone();
        let b = self.a * rhs.b + rhs.a * self.b;
        QuadElement { a, b, d: self.d }
    }
}

impl Ring for QuadElement {
    type Ctx = QuadField;

    fn ctx(&self) -> QuadField {
        self.extension()
    }

    fn zero(ctx: &QuadField) -> QuadElement {
        ctx.embed(ctx.base.zero())
    }

    fn one(ctx: &QuadField) -> QuadElement {
        ctx.embed(ctx.base.one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl FieldOps for QuadElement {
    fn inv(&self) -> Option<QuadElement> {
        let norm = k_norm(self).inv()?;
        Some(involution(self).scale(&norm))
    }
}

/// Horizontal and vertical components: `x = a + (b√d)`.
pub fn k_decompose(x: &QuadElement) -> (Scalar, QuadElement) {
    let vertical = QuadElement {
        a: x.field().zero(),
        b: x.b.clone(),
        d: x.d.clone(),
    };
    (x.a.clone(), vertical)
}

/// `a + b√d ↦ a − b√d`.
pub fn involution(x: &QuadElement) -> QuadElement {
    QuadElement {
        a: x.a.clone(),
        b: -x.b.clone(),
        d: x.d.clone(),
    }
}

/// `a² − b²d`.
pub fn k_norm(x: &QuadElement) -> Scalar {
    x.a.clone() * x.a.clone() - x.b.clone() * x.b.clone() * x.d.clone()
}

/// Common horizontal component `−a_{d−1}/d` of the roots of an irreducible
/// polynomial of degree `d`.
pub fn k_projection_of_factor(f: &Polynomial) -> Result<Scalar> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let field = f.field();
    if !is_k_regular_degree(deg as u64, field.characteristic()) {
        return Err(Error::NotKRegular {
            degree: deg,
            characteristic: field.characteristic(),
        });
    }
    let lead = f.leading().inv().expect("nonzero leading coefficient");
    let sub = f.coeff(deg - 1) * lead;
    Ok(-sub.div_int(deg as i64).expect("degree invertible"))
}

pub fn is_k_regular_degree(d: u64, characteristic: u64) -> bool {
    characteristic == 0 || !d.is_multiple_of(characteristic)
}

/// Real part and squared imaginary part of an element of ℚ(√d), `d < 0`.
pub fn re_im(x: &QuadElement) -> Result<(BigRational, BigRational)> {
    let d = x.d.as_rational().ok_or(Error::NotOrdered)?;
    if !d.is_negative() {
        return Err(Error::NotImaginary { d: x.d.to_string() });
    }
    let b = x.b.to_rational();
    Ok((x.a.to_rational(), &b * &b * d.abs()))
}

impl QuadElement {
    /// Rational part of the norm identity `x · x̄`; convenience for tests.
    pub fn times_conjugate(&self) -> QuadElement {
        self.clone() * involution(self)
    }
}
