//! Power series evaluated at matrices through their fine Frobenius
//! covariants, over ℚ with an archimedean or a p-adic absolute value.

mod bigfloat;
mod padic;

pub use bigfloat::{BigFloat, ExpFamily, Mag};
pub use padic::{padic_partial_sum, PadicMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{fine_frobenius, normalize, ExtMatrix, FineFrobenius};
use crate::matrix::{GroundMatrix, Matrix};
use crate::poly::Polynomial;
use crate::scalar::{padic_valuation, AbsValue, Field, SquareRoot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Custom,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Exp => "exp",
            SeriesKind::Sin => "sin",
            SeriesKind::Cos => "cos",
            SeriesKind::Sinh => "sinh",
            SeriesKind::Cosh => "cosh",
            SeriesKind::Custom => "custom",
        }
    }
}

/// Radius of convergence. `PadicRoot(p)` is `p^{-1/(p-1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Radius {
    Infinite,
    Value(BigRational),
    PadicRoot(u64),
}

impl Radius {
    pub fn to_f64(&self) -> f64 {
        match self {
            Radius::Infinite => f64::INFINITY,
            Radius::Value(r) => num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN),
            Radius::PadicRoot(p) => (*p as f64).powf(-1.0 / (*p as f64 - 1.0)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Radius::Infinite => "inf".into(),
            Radius::Value(r) => r.to_string(),
            Radius::PadicRoot(p) => format!("{p}^(-1/{})", p - 1),
        }
    }
}

/// `Σ a_m X^m` with rational coefficients. Custom series are finite.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub coeffs: Vec<BigRational>,
    pub declared_radius: Option<Radius>,
}

impl SeriesSpec {
    pub fn named(kind: SeriesKind) -> SeriesSpec {
        assert!(kind != SeriesKind::Custom, "custom series need coefficients");
        SeriesSpec {
            kind,
            coeffs: Vec::new(),
            declared_radius: None,
        }
    }

    pub fn exp() -> SeriesSpec {
        SeriesSpec::named(SeriesKind::Exp)
    }

    pub fn sin() -> SeriesSpec {
        SeriesSpec::named(SeriesKind::Sin)
    }

    pub fn cos() -> SeriesSpec {
        SeriesSpec::named(SeriesKind::Cos)
    }

    pub fn custom(coeffs: Vec<BigRational>, declared_radius: Option<Radius>) -> SeriesSpec {
        SeriesSpec {
            kind: SeriesKind::Custom,
            coeffs,
            declared_radius,
        }
    }

    pub fn parse_name(name: &str) -> Result<SeriesSpec> {
        let kind = match name {
            "exp" => SeriesKind::Exp,
            "sin" => SeriesKind::Sin,
            "cos" => SeriesKind::Cos,
            "sinh" => SeriesKind::Sinh,
            "cosh" => SeriesKind::Cosh,
            other => return Err(Error::Parse(format!("unknown series {other:?}"))),
        };
        Ok(SeriesSpec::named(kind))
    }

    pub fn coefficient(&self, m: usize) -> BigRational {
        let inv_fact = || {
            let f: BigInt = (1..=m as u64).map(BigInt::from).product();
            BigRational::new(BigInt::one(), f)
        };
        let odd = m % 2 == 1;
        let alternating = (m / 2) % 2 == 1;
        let signed = |x: BigRational| if alternating { -x } else { x };
        match self.kind {
            SeriesKind::Exp => inv_fact(),
            SeriesKind::Sin if odd => signed(inv_fact()),
            SeriesKind::Cos if !odd => signed(inv_fact()),
            SeriesKind::Sinh if odd => inv_fact(),
            SeriesKind::Cosh if !odd => inv_fact(),
            SeriesKind::Custom => self.coeffs.get(m).cloned().unwrap_or_default(),
            _ => BigRational::zero(),
        }
    }

    /// Number of coefficients of a finite series.
    fn length(&self) -> Option<usize> {
        (self.kind == SeriesKind::Custom).then_some(self.coeffs.len())
    }
}

pub fn radius_of_convergence(spec: &SeriesSpec, av: AbsValue) -> Result<Radius> {
    if spec.kind == SeriesKind::Custom {
        return spec.declared_radius.clone().ok_or(Error::UnknownRadius);
    }
    Ok(match av {
        AbsValue::Archimedean => Radius::Infinite,
        AbsValue::Trivial => Radius::Value(BigRational::one()),
        AbsValue::Padic(p) => Radius::PadicRoot(p),
    })
}

/// An absolute value: a real ball, or `p^{-v}` with `v = None` for zero.
#[derive(Clone, Debug, PartialEq)]
pub enum AbsNum {
    Real(BigFloat),
    Padic { p: u64, valuation: Option<BigRational> },
}

impl AbsNum {
    pub fn to_f64(&self) -> f64 {
        match self {
            AbsNum::Real(x) => x.to_f64(),
            AbsNum::Padic { valuation: None, .. } => 0.0,
            AbsNum::Padic { p, valuation: Some(v) } => {
                (*p as f64).powf(-num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN))
            }
        }
    }
}

/// `(|λ|, |α|, |β|)` for the eigenvalues `λ = α + β` of one factor.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenAbs {
    pub factor: Polynomial,
    pub lambda: AbsNum,
    pub alpha: AbsNum,
    pub beta: AbsNum,
}

/// `(α, n)` per irreducible factor of a squarefree minimal polynomial of
/// splitting bound at most two; `n = 0` for linear factors.
fn factor_data(m: &GroundMatrix) -> Result<Vec<(Polynomial, BigRational, BigRational)>> {
    require_rational(m)?;
    let mp = m.minimal_polynomial();
    if !mp.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    let fac = mp.factor()?;
    if fac.max_degree() > 2 {
        return Err(Error::SplittingBoundExceeded(fac.max_degree()));
    }
    fac.factors
        .into_iter()
        .map(|(f, _)| {
            if f.degree() == Some(1) {
                let g = (-f.coeff(0)).to_rational();
                Ok((f, g, BigRational::zero()))
            } else {
                let (a, n) = f.quad_factor_data()?;
                Ok((f, a.to_rational(), n.to_rational()))
            }
        })
        .collect()
}

fn require_rational(m: &GroundMatrix) -> Result<()> {
    if m.field() != Field::Rational {
        return Err(Error::InvalidField(format!(
            "series are evaluated over Q, not {}",
            m.field()
        )));
    }
    Ok(())
}

fn half(v: i64) -> BigRational {
    BigRational::new(BigInt::from(v), BigInt::from(2))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn eigen_abs_data(m: &GroundMatrix, av: AbsValue, prec: u32) -> Result<Vec<EigenAbs>> {
    if av == AbsValue::Trivial {
        return Err(Error::TrivialKindUnsupported);
    }
    let data = factor_data(m)?;
    let mut out = Vec::with_capacity(data.len());
    for (f, alpha, n) in data {
        let entry = match av {
            AbsValue::Archimedean => {
                let a = BigFloat::from_rational(&alpha.abs(), prec);
                let b = BigFloat::sqrt_rational(&n.abs(), prec);
                let lambda = if n.is_negative() {
                    // Real roots α ± √−n.
                    a.clone() + b.clone()
                } else {
                    BigFloat::sqrt_rational(&(&alpha * &alpha + &n), prec)
                };
                EigenAbs {
                    factor: f,
                    lambda: AbsNum::Real(lambda),
                    alpha: AbsNum::Real(a),
                    beta: AbsNum::Real(b),
                }
            }
            AbsValue::Padic(p) => {
                let v = |x: &BigRational| padic_valuation(x, p).map(int);
                let vn = padic_valuation(&n, p).map(half);
                let norm = &alpha * &alpha + &n;
                EigenAbs {
                    factor: f,
                    lambda: AbsNum::Padic {
                        p,
                        valuation: if n.is_zero() {
                            v(&alpha)
                        } else {
                            padic_valuation(&norm, p).map(half)
                        },
                    },
                    alpha: AbsNum::Padic { p, valuation: v(&alpha) },
                    beta: AbsNum::Padic { p, valuation: vn },
                }
            }
            AbsValue::Trivial => unreachable!(),
        };
        out.push(entry);
    }
    Ok(out)
}

/// Exact test of `p^{-w} < R`; `w = None` stands for the value zero.
fn padic_below(w: &Option<BigRational>, p: u64, radius: &Radius) -> bool {
    let Some(w) = w else {
        return true;
    };
    match radius {
        Radius::Infinite => true,
        Radius::PadicRoot(q) => {
            let thr = BigRational::new(BigInt::one(), BigInt::from(q - 1));
            if *q == p {
                w > &thr
            } else {
                (p as f64).powf(-num_traits::ToPrimitive::to_f64(w).unwrap_or(0.0)) < radius.to_f64()
            }
        }
        Radius::Value(r) => {
            // p^{-a/b} < r  ⇔  1 < r^b · p^a.
            if !r.is_positive() {
                return false;
            }
            let b = w.denom().clone();
            let b: u32 = num_traits::ToPrimitive::to_u32(&b).expect("small denominator");
            let a = w.numer().clone();
            let pa = BigRational::from_integer(BigInt::from(p)).pow(
                num_traits::ToPrimitive::to_i32(&a).expect("valuation fits i32"),
            );
            r.pow(b as i32) * pa > BigRational::one()
        }
    }
}

/// Exact test of `|α| + √|n| < R`.
fn archimedean_below(alpha: &BigRational, n: &BigRational, radius: &Radius) -> bool {
    match radius {
        Radius::Infinite => true,
        Radius::Value(r) => {
            let s = r - alpha.abs();
            s.is_positive() && n.abs() < &s * &s
        }
        Radius::PadicRoot(_) => {
            let bound = BigFloat::from_rational(&alpha.abs(), 64)
                + BigFloat::sqrt_rational(&n.abs(), 64);
            bound.abs_upper().to_f64() < radius.to_f64()
        }
    }
}

pub(super) fn vmin(alpha: &BigRational, n: &BigRational, p: u64) -> Option<BigRational> {
    let va = padic_valuation(alpha, p).map(int);
    let vn = padic_valuation(n, p).map(half);
    match (va, vn) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

pub fn in_omega_hat(m: &GroundMatrix, spec: &SeriesSpec, av: AbsValue) -> Result<bool> {
    let radius = radius_of_convergence(spec, av)?;
    if av == AbsValue::Trivial {
        require_rational(m)?;
        let beyond_one = match &radius {
            Radius::Infinite => true,
            Radius::Value(r) => r > &BigRational::one(),
            Radius::PadicRoot(_) => false,
        };
        return Ok(beyond_one || m.is_nilpotent());
    }
    let data = factor_data(m)?;
    Ok(data.iter().all(|(_, alpha, n)| match av {
        AbsValue::Archimedean => archimedean_below(alpha, n, &radius),
        AbsValue::Padic(p) => padic_below(&vmin(alpha, n, p), p, &radius),
        AbsValue::Trivial => unreachable!(),
    }))
}

/// Exact partial sums `Σ_{m≤M} a_m E_m` and `Σ_{m≤M} a_m O_m`, where
/// `λ^m = E_m + O_m·β` with `β² = −n`.
pub(crate) fn even_odd_partial(
    alpha: &BigRational,
    n: &BigRational,
    spec: &SeriesSpec,
    cutoff: usize,
) -> (BigRational, BigRational) {
    let minus_n = -n;
    let mut e = BigRational::one();
    let mut o = BigRational::zero();
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    for m in 0..=cutoff {
        let a = spec.coefficient(m);
        if !a.is_zero() {
            even += &a * &e;
            odd += &a * &o;
        }
        let next_e = alpha * &e + &minus_n * &o;
        o = &e + alpha * &o;
        e = next_e;
    }
    (even, odd)
}

/// Upper bounds for the even and odd tails beyond `cutoff` of a series with
/// `|a_m| ≤ 1/m!`, at `r = |α| + √|n|`. `None` if `cutoff` is too small
/// for the geometric majorant.
fn archimedean_tails(r: Mag, cutoff: usize) -> Option<(Mag, Mag)> {
    let big_m = cutoff as u64;
    let two = Mag::from_u64(2);
    if two.mul_up(r) > Mag::from_u64(big_m + 1) {
        return None;
    }
    // t = r^M / M!
    let mut t = Mag::from_u64(1);
    for k in 1..=big_m {
        t = t.mul_up(r).div_u64(k);
    }
    let odd = two.mul_up(t);
    let even = two.mul_up(t.mul_up(r).div_u64(big_m + 1));
    Some((even, odd))
}

/// `ℛf` and `ℐf` at `(α, n)` as balls including tail bounds. With
/// `terms = None` the cutoff grows until both tails are below `2^{-prec}`.
pub fn series_even_odd(
    alpha: &BigRational,
    n: &BigRational,
    spec: &SeriesSpec,
    prec: u32,
    terms: Option<usize>,
) -> Result<(BigFloat, BigFloat)> {
    let radius = radius_of_convergence(spec, AbsValue::Archimedean)?;
    if !archimedean_below(alpha, n, &radius) {
        return Err(Error::NotConvergent);
    }
    let r = (BigFloat::from_rational(&alpha.abs(), 64) + BigFloat::sqrt_rational(&n.abs(), 64))
        .abs_upper();
    let (cutoff, tails) = match spec.length() {
        Some(len) => (len.saturating_sub(1), (Mag::ZERO, Mag::ZERO)),
        None => {
            let eps = Mag::pow2(-(prec as i64) - 2);
            let mut cutoff = terms.unwrap_or(8);
            loop {
                match archimedean_tails(r, cutoff) {
                    Some((te, to)) if terms.is_some() || (te <= eps && to <= eps) => {
                        break (cutoff, (te, to));
                    }
                    None if terms.is_some() => {
                        break (cutoff, (Mag::pow2(i64::from(i32::MAX)), Mag::pow2(i64::from(i32::MAX))));
                    }
                    _ => cutoff += 8,
                }
            }
        }
    };
    let (even, odd) = even_odd_partial(alpha, n, spec, cutoff);
    Ok((
        BigFloat::from_rational(&even, prec).with_added_radius(tails.0),
        BigFloat::from_rational(&odd, prec).with_added_radius(tails.1),
    ))
}

/// Result of evaluating a series at a matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesMatrix {
    Archimedean(Matrix<BigFloat>),
    Padic(PadicMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesOptions {
    /// Working precision in bits for the archimedean backend.
    pub prec: u32,
    /// Fixed cutoff; `None` selects one from the precision or target.
    pub terms: Option<usize>,
    /// Required valuation bound for the p-adic backend.
    pub padic_target: i64,
}

impl Default for SeriesOptions {
    fn default() -> SeriesOptions {
        SeriesOptions {
            prec: 128,
            terms: None,
            padic_target: 10,
        }
    }
}

pub fn embed_float(m: &GroundMatrix, prec: u32) -> Matrix<BigFloat> {
    m.map(&prec, |x| BigFloat::from_rational(&x.to_rational(), prec))
}

/// Fine decomposition of a rational matrix; `None` for the zero matrix.
pub(super) fn covariants(m: &GroundMatrix) -> Result<Option<FineFrobenius>> {
    require_rational(m)?;
    if m.is_zero() {
        return Ok(None);
    }
    fine_frobenius(m).map(Some)
}

/// Horizontal and vertical parts `(Σ f(γ)A + f(0)A0 + Σ ℛf·P, Σ ℐf·B)`.
fn archimedean_parts(
    m: &GroundMatrix,
    spec: &SeriesSpec,
    opts: SeriesOptions,
) -> Result<(Matrix<BigFloat>, Matrix<BigFloat>)> {
    let prec = opts.prec;
    let a0 = BigFloat::from_rational(&spec.coefficient(0), prec);
    let Some(dec) = covariants(m)? else {
        return Ok((Matrix::identity(&prec, m.n()).scalar_mul(&a0), Matrix::zeros(&prec, m.n())));
    };
    let mut h = embed_float(&dec.a0, prec).scalar_mul(&a0);
    let mut v = Matrix::zeros(&prec, m.n());
    for l in &dec.linear_part {
        let (value, _) = series_even_odd(&l.gamma.to_rational(), &BigRational::zero(), spec, prec, opts.terms)?;
        h = &h + &embed_float(&l.a, prec).scalar_mul(&value);
    }
    for q in &dec.quad_part {
        let (even, odd) = series_even_odd(&q.alpha.to_rational(), &q.n.to_rational(), spec, prec, opts.terms)?;
        h = &h + &embed_float(&q.p, prec).scalar_mul(&even);
        v = &v + &embed_float(&q.b, prec).scalar_mul(&odd);
    }
    Ok((h, v))
}

pub fn apply_series(
    m: &GroundMatrix,
    spec: &SeriesSpec,
    av: AbsValue,
    opts: SeriesOptions,
) -> Result<SeriesMatrix> {
    let (h, v) = image_parts(m, spec, av, opts)?;
    Ok(match (h, v) {
        (SeriesMatrix::Archimedean(h), SeriesMatrix::Archimedean(v)) => SeriesMatrix::Archimedean(&h + &v),
        (SeriesMatrix::Padic(h), SeriesMatrix::Padic(v)) => SeriesMatrix::Padic(h.sum(&v)),
        _ => unreachable!("both parts come from the same backend"),
    })
}

fn image_parts(
    m: &GroundMatrix,
    spec: &SeriesSpec,
    av: AbsValue,
    opts: SeriesOptions,
) -> Result<(SeriesMatrix, SeriesMatrix)> {
    require_rational(m)?;
    if av == AbsValue::Trivial {
        return Err(Error::TrivialKindUnsupported);
    }
    if !in_omega_hat(m, spec, av)? {
        return Err(Error::NotInOmegaHat);
    }
    match av {
        AbsValue::Archimedean => {
            let (h, v) = archimedean_parts(m, spec, opts)?;
            Ok((SeriesMatrix::Archimedean(h), SeriesMatrix::Archimedean(v)))
        }
        AbsValue::Padic(p) => {
            let (h, v) = padic::padic_parts(m, spec, p, opts)?;
            Ok((SeriesMatrix::Padic(h), SeriesMatrix::Padic(v)))
        }
        AbsValue::Trivial => unreachable!(),
    }
}

/// Complete Jordan–Chevalley decomposition `f(M) = Hf + Vf` of the image.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageJC {
    pub hf: SeriesMatrix,
    pub vf: SeriesMatrix,
}

pub fn complete_jc_of_image(
    m: &GroundMatrix,
    spec: &SeriesSpec,
    av: AbsValue,
    opts: SeriesOptions,
) -> Result<ImageJC> {
    let (hf, vf) = image_parts(m, spec, av, opts)?;
    Ok(ImageJC { hf, vf })
}

fn root_ball(r: &SquareRoot, prec: u32) -> BigFloat {
    match r {
        SquareRoot::Ground(s) => BigFloat::from_rational(&s.to_rational(), prec),
        SquareRoot::Quad(q) => {
            BigFloat::sqrt_rational(&q.d.to_rational(), prec).scale_rational(&q.b.to_rational())
        }
    }
}

fn ext_to_float(m: &ExtMatrix, prec: u32) -> Matrix<BigFloat> {
    match m {
        ExtMatrix::Ground(g) => embed_float(g, prec),
        ExtMatrix::Quad(q) => {
            let sd = BigFloat::sqrt_rational(&q.ctx().d.to_rational(), prec);
            q.map(&prec, |x| {
                BigFloat::from_rational(&x.a.to_rational(), prec) + sd.scale_rational(&x.b.to_rational())
            })
        }
    }
}

/// `exp` or `cos` through the normalized covariants:
/// `f(M) = Σf(γ)𝐀 + f(0)A0 − ΣRe f(λ)·𝐁² + ΣIm f(λ)·𝐁`.
pub fn apply_named_closed_form(m: &GroundMatrix, kind: SeriesKind, prec: u32) -> Result<Matrix<BigFloat>> {
    if !matches!(kind, SeriesKind::Exp | SeriesKind::Cos) {
        return Err(Error::UnsupportedSeries(kind.name().into()));
    }
    let one = BigFloat::from_i64(1, prec);
    let Some(dec) = covariants(m)? else {
        return Ok(Matrix::identity(&prec, m.n()));
    };
    let norm = normalize(&dec)?;
    let f = |x: &BigFloat| match kind {
        SeriesKind::Exp => x.exp(),
        _ => x.cos(),
    };
    let mut out = embed_float(&norm.a0, prec).scalar_mul(&one);
    for l in &norm.linear_part {
        let g = BigFloat::from_rational(&l.gamma.to_rational(), prec);
        out = &out + &embed_float(&l.a, prec).scalar_mul(&f(&g));
    }
    for q in &norm.quad_part {
        let re = BigFloat::from_rational(&q.re.to_rational(), prec);
        let im = root_ball(&q.im, prec);
        let (re_f, im_f) = match kind {
            SeriesKind::Exp => {
                let e = re.exp();
                (e.clone() * im.cos(), e * im.sin())
            }
            _ => (re.cos() * im.cosh(), -(re.sin() * im.sinh())),
        };
        let b = ext_to_float(&q.b, prec);
        let b2 = ext_to_float(&q.b.square(), prec);
        out = &(&out - &b2.scalar_mul(&re_f)) + &b.scalar_mul(&im_f);
    }
    Ok(out)
}

/// `Σ_{m≤terms} a_m M^m` by integer accumulation: with `M = Z/D` and `L`
/// the common denominator of the coefficients, the sum is
/// `Σ (L·a_m)·Z^m·D^{terms−m} / (L·D^{terms})`.
pub fn taylor_oracle(m: &GroundMatrix, spec: &SeriesSpec, terms: usize, prec: u32) -> Result<Matrix<BigFloat>> {
    require_rational(m)?;
    let n = m.n();
    let d = m
        .entries()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.to_rational().denom()));
    let z: Vec<BigInt> = m
        .entries()
        .map(|x| {
            let q = x.to_rational();
            q.numer() * (&d / q.denom())
        })
        .collect();
    let coeffs: Vec<BigRational> = (0..=terms).map(|k| spec.coefficient(k)).collect();
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut d_pows = vec![BigInt::one(); terms + 1];
    for k in 1..=terms {
        d_pows[k] = &d_pows[k - 1] * &d;
    }
    let identity: Vec<BigInt> = (0..n * n)
        .map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() })
        .collect();
    let mut power = identity;
    let mut acc = vec![BigInt::zero(); n * n];
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let weight = c.numer() * (&l / c.denom()) * &d_pows[terms - k];
            for (a, p) in acc.iter_mut().zip(&power) {
                *a += &weight * p;
            }
        }
        if k < terms {
            power = int_matmul(&power, &z, n);
        }
    }
    let den = &l * &d_pows[terms];
    Ok(Matrix::from_fn(&prec, n, |i, j| {
        BigFloat::from_rational(&BigRational::new(acc[i * n + j].clone(), den.clone()), prec)
    }))
}

fn int_matmul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * &b[k * n + j];
            }
        }
    }
    out
}

/// Upper bound on `max |a_ij − b_ij|` over both balls.
pub fn max_deviation(a: &Matrix<BigFloat>, b: &Matrix<BigFloat>) -> f64 {
    a.entries()
        .zip(b.entries())
        .map(|(x, y)| (x.clone() - y.clone()).abs_upper())
        .max()
        .unwrap_or(Mag::ZERO)
        .to_f64()
}

/// Upper bound on `max |a_ij|`.
pub fn max_abs(a: &Matrix<BigFloat>) -> f64 {
    a.entries().map(|x| x.abs_upper()).max().unwrap_or(Mag::ZERO).to_f64()
}
