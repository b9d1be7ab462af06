//! p-adic evaluation: exact rational partial sums with a certified lower
//! bound on the valuation of the discarded tail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{covariants, even_odd_partial, vmin, SeriesKind, SeriesOptions, SeriesSpec};
use crate::error::{Error, Result};
use crate::frobenius::FineFrobenius;
use crate::matrix::{GroundMatrix, Matrix};
use crate::scalar::{padic_valuation, Field, Scalar};

const MAX_CUTOFF: usize = 100_000;

/// Rational approximation with `|f(M)_ij − value_ij|_p ≤ p^{-e}` for every
/// entry; `valuation_bound = None` means the value is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicMatrix {
    pub p: u64,
    pub value: GroundMatrix,
    pub valuation_bound: Option<i64>,
    pub cutoff: usize,
}

impl PadicMatrix {
    pub fn sum(&self, other: &PadicMatrix) -> PadicMatrix {
        PadicMatrix {
            p: self.p,
            value: &self.value + &other.value,
            valuation_bound: min_opt(self.valuation_bound, other.valuation_bound),
            cutoff: self.cutoff.max(other.cutoff),
        }
    }
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// Least entry valuation; `None` for the zero matrix.
fn matrix_valuation(m: &GroundMatrix, p: u64) -> Option<BigRational> {
    m.entries()
        .filter_map(|x| padic_valuation(&x.to_rational(), p))
        .min()
        .map(|v| BigRational::from_integer(BigInt::from(v)))
}

/// Lower bounds on the valuations of the even and odd tails beyond
/// `cutoff`, from `v(a_m) ≥ −(m−1)/(p−1)`, `v(E_m) ≥ m·w` and
/// `v(O_m) ≥ (m−1)·w` with `w = min(v(α), v(n)/2) > 1/(p−1)`.
fn tail_valuations(
    spec: &SeriesSpec,
    alpha: &BigRational,
    n: &BigRational,
    p: u64,
    cutoff: usize,
) -> (Option<BigRational>, Option<BigRational>) {
    if spec.kind == SeriesKind::Custom {
        return (None, None);
    }
    let Some(w) = vmin(alpha, n, p) else {
        return (None, None);
    };
    let c = BigRational::new(BigInt::from(1), BigInt::from(p - 1));
    let big_m = BigRational::from_integer(BigInt::from(cutoff));
    let one = BigRational::from_integer(BigInt::from(1));
    let even = (&big_m + &one) * &w - &big_m * &c;
    let odd = &big_m * (&w - &c);
    (Some(even), Some(odd))
}

fn add_opt(a: &Option<BigRational>, b: &Option<BigRational>) -> Option<BigRational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

/// Certified bounds for the horizontal and vertical parts at `cutoff`.
fn part_bounds(dec: &FineFrobenius, spec: &SeriesSpec, p: u64, cutoff: usize) -> (Option<BigRational>, Option<BigRational>) {
    let mut h: Option<BigRational> = None;
    let mut v: Option<BigRational> = None;
    for l in &dec.linear_part {
        let (te, _) = tail_valuations(spec, &l.gamma.to_rational(), &BigRational::zero(), p, cutoff);
        h = min_opt(h, add_opt(&te, &matrix_valuation(&l.a, p)));
    }
    for q in &dec.quad_part {
        let (te, to) = tail_valuations(spec, &q.alpha.to_rational(), &q.n.to_rational(), p, cutoff);
        h = min_opt(h, add_opt(&te, &matrix_valuation(&q.p, p)));
        v = min_opt(v, add_opt(&to, &matrix_valuation(&q.b, p)));
    }
    (h, v)
}

fn floor_bound(b: &Option<BigRational>) -> Option<i64> {
    b.as_ref()
        .map(|x| x.numer().div_floor(x.denom()).to_i64().expect("valuation bound fits i64"))
}

fn parts_at(m: &GroundMatrix, spec: &SeriesSpec, p: u64, cutoff: usize) -> Result<(PadicMatrix, PadicMatrix)> {
    let q = Field::Rational;
    let n = m.n();
    let a0 = Scalar::Q(spec.coefficient(0));
    let Some(dec) = covariants(m)? else {
        let h = PadicMatrix {
            p,
            value: Matrix::identity(&q, n).scale(&a0),
            valuation_bound: None,
            cutoff,
        };
        let v = PadicMatrix {
            value: Matrix::zeros(&q, n),
            ..h.clone()
        };
        return Ok((h, v));
    };
    let (bh, bv) = part_bounds(&dec, spec, p, cutoff);
    let mut h = dec.a0.scale(&a0);
    let mut v = Matrix::zeros(&q, n);
    for l in &dec.linear_part {
        let (e, _) = even_odd_partial(&l.gamma.to_rational(), &BigRational::zero(), spec, cutoff);
        h = &h + &l.a.scale(&Scalar::Q(e));
    }
    for c in &dec.quad_part {
        let (e, o) = even_odd_partial(&c.alpha.to_rational(), &c.n.to_rational(), spec, cutoff);
        h = &h + &c.p.scale(&Scalar::Q(e));
        v = &v + &c.b.scale(&Scalar::Q(o));
    }
    Ok((
        PadicMatrix { p, value: h, valuation_bound: floor_bound(&bh), cutoff },
        PadicMatrix { p, value: v, valuation_bound: floor_bound(&bv), cutoff },
    ))
}

/// Partial sum through `X^cutoff` with its certified valuation bound. The
/// caller is responsible for Ω̂ membership.
pub fn padic_partial_sum(m: &GroundMatrix, spec: &SeriesSpec, p: u64, cutoff: usize) -> Result<PadicMatrix> {
    let (h, v) = parts_at(m, spec, p, cutoff)?;
    Ok(h.sum(&v))
}

/// Horizontal and vertical parts, with the cutoff fixed by `opts.terms` or
/// grown until the bound reaches `opts.padic_target`.
pub(super) fn padic_parts(
    m: &GroundMatrix,
    spec: &SeriesSpec,
    p: u64,
    opts: SeriesOptions,
) -> Result<(PadicMatrix, PadicMatrix)> {
    let cutoff = match (opts.terms, spec.kind) {
        (Some(t), _) => t,
        (None, SeriesKind::Custom) => spec.coeffs.len().saturating_sub(1),
        (None, _) => match covariants(m)? {
            None => 0,
            Some(dec) => {
                let target = BigRational::from_integer(BigInt::from(opts.padic_target));
                let mut cutoff = 1;
                loop {
                    let (bh, bv) = part_bounds(&dec, spec, p, cutoff);
                    let ok = |b: &Option<BigRational>| b.as_ref().is_none_or(|x| x >= &target);
                    if ok(&bh) && ok(&bv) {
                        break cutoff;
                    }
                    cutoff += 1;
                    if cutoff > MAX_CUTOFF {
                        return Err(Error::NotConvergent);
                    }
                }
            }
        },
    };
    parts_at(m, spec, p, cutoff)
}
