//! Fine Frobenius decomposition of a nonzero semisimple matrix whose minimal
//! polynomial splits into factors of degree at most two, and its normalized
//! form over ℚ.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jordan_chevalley::crt_idempotents;
use crate::matrix::{eval_poly_at_matrix, GroundMatrix, Matrix};
use crate::report::Report;
use crate::scalar::{Field, FieldOps, QuadElement, QuadField, Ring, Scalar, SquareRoot};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearCovariant {
    pub gamma: Scalar,
    pub a: GroundMatrix,
}

/// Covariant attached to an irreducible factor `(X − α)² + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadCovariant {
    pub alpha: Scalar,
    pub n: Scalar,
    pub b: GroundMatrix,
    /// Projector onto the primary component; `B² = −n·P`.
    pub p: GroundMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FineFrobenius {
    pub dim: usize,
    pub field: Field,
    pub linear_part: Vec<LinearCovariant>,
    pub quad_part: Vec<QuadCovariant>,
    pub a0: GroundMatrix,
}

pub fn fine_frobenius(m: &GroundMatrix) -> Result<FineFrobenius> {
    let field = m.field();
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let minpoly = m.minimal_polynomial();
    if !minpoly.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    let fac = minpoly.factor()?;
    let bound = fac.max_degree();
    if bound > 2 {
        return Err(Error::SplittingBoundExceeded(bound));
    }
    let factors: Vec<_> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
    let idempotents = crt_idempotents(&minpoly, &factors)?;
    let n = m.n();
    let id = Matrix::identity(&field, n);
    let mut linear_part = Vec::new();
    let mut quad_part = Vec::new();
    let mut zero_projector = None;
    for (f, e) in factors.iter().zip(&idempotents) {
        let p = eval_poly_at_matrix(e, m)?;
        if f.degree() == Some(1) {
            let gamma = -f.coeff(0);
            if gamma.is_zero() {
                zero_projector = Some(p);
            } else {
                linear_part.push(LinearCovariant { gamma, a: p });
            }
        } else {
            let (alpha, nj) = f.quad_factor_data()?;
            let b = &(m - &id.scale(&alpha)) * &p;
            quad_part.push(QuadCovariant { alpha, n: nj, b, p });
        }
    }
    let complement = complement_a0(n, field, &linear_part, &quad_part)?;
    let a0 = match zero_projector {
        Some(p) if p != complement => {
            return Err(Error::CrossCheckFailed(
                "zero-eigenvalue projector disagrees with the complement".into(),
            ))
        }
        Some(p) => p,
        None => complement,
    };
    Ok(FineFrobenius {
        dim: n,
        field,
        linear_part,
        quad_part,
        a0,
    })
}

/// `I − ΣA_i − Σ(−1/n_j)·B_j²`.
fn complement_a0(
    n: usize,
    field: Field,
    linear: &[LinearCovariant],
    quad: &[QuadCovariant],
) -> Result<GroundMatrix> {
    let mut acc = Matrix::identity(&field, n);
    for l in linear {
        acc = &acc - &l.a;
    }
    for q in quad {
        let k = (-q.n.clone())
            .inv()
            .ok_or_else(|| Error::InvalidDecomposition("n_j = 0".into()))?;
        acc = &acc - &(&q.b * &q.b).scale(&k);
    }
    Ok(acc)
}

/// `M = Σγ_iA_i + Σ(α_j/(−n_j))·B_j² + ΣB_j`, after validating `dec`.
pub fn reconstruct(dec: &FineFrobenius) -> Result<GroundMatrix> {
    let report = verify_fine(dec);
    if !report.all_passed() {
        return Err(Error::InvalidDecomposition(report.failures().join(", ")));
    }
    let mut m = Matrix::zeros(&dec.field, dec.dim);
    for l in &dec.linear_part {
        m = &m + &l.a.scale(&l.gamma);
    }
    for q in &dec.quad_part {
        let k = q.alpha.clone() * (-q.n.clone()).inv().expect("checked nonzero");
        m = &(&m + &(&q.b * &q.b).scale(&k)) + &q.b;
    }
    Ok(m)
}

pub fn verify_fine(dec: &FineFrobenius) -> Report {
    let mut r = Report::new();
    let n = dec.dim;
    let field = dec.field;
    let all: Vec<&GroundMatrix> = dec
        .linear_part
        .iter()
        .map(|l| &l.a)
        .chain(dec.quad_part.iter().flat_map(|q| [&q.b, &q.p]))
        .chain(std::iter::once(&dec.a0))
        .collect();
    let dims = all.iter().all(|x| x.n() == n && x.field() == field);
    r.push("dimensions", dims);
    if !dims {
        return r;
    }
    let zero = Matrix::zeros(&field, n);

    let gammas: Vec<&Scalar> = dec.linear_part.iter().map(|l| &l.gamma).collect();
    r.push("gamma_nonzero", gammas.iter().all(|g| !g.is_zero()));
    r.push("gamma_distinct", pairwise(&gammas, |a, b| a != b));
    let pairs: Vec<(&Scalar, &Scalar)> = dec.quad_part.iter().map(|q| (&q.alpha, &q.n)).collect();
    r.push("quad_data_distinct", pairwise(&pairs, |a, b| a != b));
    r.push(
        "minus_n_nonsquare",
        dec.quad_part
            .iter()
            .all(|q| !q.n.is_zero() && !(-q.n.clone()).is_square()),
    );
    r.push(
        "nonzero",
        dec.linear_part.iter().all(|l| !l.a.is_zero()) && dec.quad_part.iter().all(|q| !q.b.is_zero()),
    );

    let a_ok = dec.linear_part.iter().enumerate().all(|(i, li)| {
        dec.linear_part.iter().enumerate().all(|(h, lh)| {
            let prod = &li.a * &lh.a;
            if i == h {
                prod == li.a
            } else {
                prod == zero
            }
        })
    });
    r.push("a_orthogonal_idempotents", a_ok);
    r.push(
        "a_b_annihilate",
        dec.linear_part.iter().all(|l| {
            dec.quad_part
                .iter()
                .all(|q| (&l.a * &q.b).is_zero() && (&q.b * &l.a).is_zero())
        }),
    );
    let bs: Vec<&GroundMatrix> = dec.quad_part.iter().map(|q| &q.b).collect();
    r.push("b_orthogonal", pairwise(&bs, |x, y| (*x * *y).is_zero() && (*y * *x).is_zero()));
    r.push(
        "b_cubed",
        dec.quad_part
            .iter()
            .all(|q| q.b.pow(3) == q.b.scale(&-q.n.clone())),
    );
    r.push(
        "b_squared_projector",
        dec.quad_part
            .iter()
            .all(|q| &q.b * &q.b == q.p.scale(&-q.n.clone())),
    );
    match complement_a0(n, field, &dec.linear_part, &dec.quad_part) {
        Ok(c) => r.push("a0_complement", c == dec.a0),
        Err(_) => r.push_detail("a0_complement", false, "n_j = 0"),
    }
    r.push("a0_idempotent", dec.a0.is_idempotent());
    r.push(
        "a0_orthogonal",
        dec.linear_part
            .iter()
            .map(|l| &l.a)
            .chain(bs.iter().copied())
            .all(|x| (&dec.a0 * x).is_zero() && (x * &dec.a0).is_zero()),
    );
    r
}

/// `verify_fine` plus the reconstruction identity against `m`.
pub fn verify_fine_for(m: &GroundMatrix, dec: &FineFrobenius) -> Report {
    let mut r = verify_fine(dec);
    let ok = r.all_passed() && reconstruct(dec).map(|x| &x == m).unwrap_or(false);
    r.push("reconstruction", ok);
    r
}

fn pairwise<T>(xs: &[T], ok: impl Fn(&T, &T) -> bool) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| ok(a, b)))
}

/// Matrix over the ground field or over one quadratic extension of it.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtMatrix {
    Ground(GroundMatrix),
    Quad(Matrix<QuadElement>),
}

impl ExtMatrix {
    /// The matrix as a ground matrix, if every entry lies in the ground field.
    pub fn to_ground(&self) -> Option<GroundMatrix> {
        match self {
            ExtMatrix::Ground(m) => Some(m.clone()),
            ExtMatrix::Quad(m) => {
                if !m.entries().all(|x| x.is_ground()) {
                    return None;
                }
                Some(m.map(&m.ctx().base, |x| x.a.clone()))
            }
        }
    }

    pub fn square(&self) -> ExtMatrix {
        match self {
            ExtMatrix::Ground(m) => ExtMatrix::Ground(m * m),
            ExtMatrix::Quad(m) => ExtMatrix::Quad(m * m),
        }
    }

    pub fn cube(&self) -> ExtMatrix {
        match self {
            ExtMatrix::Ground(m) => ExtMatrix::Ground(m.pow(3)),
            ExtMatrix::Quad(m) => ExtMatrix::Quad(m.pow(3)),
        }
    }

    pub fn neg(&self) -> ExtMatrix {
        match self {
            ExtMatrix::Ground(m) => ExtMatrix::Ground(-m),
            ExtMatrix::Quad(m) => ExtMatrix::Quad(-m),
        }
    }

    /// `k·self` for `k` a ground element or an element of the same extension.
    pub fn times(&self, k: &SquareRoot) -> Result<ExtMatrix> {
        match (self, k) {
            (ExtMatrix::Ground(m), SquareRoot::Ground(s)) => Ok(ExtMatrix::Ground(m.scale(s))),
            (ExtMatrix::Ground(m), SquareRoot::Quad(q)) => {
                Ok(ExtMatrix::Quad(m.embed_quad(&q.extension()).scalar_mul(q)))
            }
            (ExtMatrix::Quad(m), SquareRoot::Ground(s)) => {
                Ok(ExtMatrix::Quad(m.scalar_mul(&m.ctx().embed(s.clone()))))
            }
            (ExtMatrix::Quad(m), SquareRoot::Quad(q)) => {
                if m.ctx().d != q.d {
                    return Err(Error::MixedExtension);
                }
                Ok(ExtMatrix::Quad(m.scalar_mul(q)))
            }
        }
    }

    pub fn extension(&self) -> Option<QuadField> {
        match self {
            ExtMatrix::Ground(_) => None,
            ExtMatrix::Quad(m) => Some(m.ctx().clone()),
        }
    }
}

/// Quadratic covariant with `𝐁 = B/im`, `im = √n`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedQuad {
    pub re: Scalar,
    pub n: Scalar,
    pub im: SquareRoot,
    pub b: ExtMatrix,
    pub p: GroundMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedFineFrobenius {
    pub dim: usize,
    pub field: Field,
    pub linear_part: Vec<LinearCovariant>,
    pub quad_part: Vec<NormalizedQuad>,
    pub a0: GroundMatrix,
}

fn inverse_root(im: &SquareRoot, n: &Scalar) -> SquareRoot {
    match im {
        SquareRoot::Ground(s) => SquareRoot::Ground(s.inv().expect("n > 0")),
        // 1/(c√d) = c√d / n.
        SquareRoot::Quad(q) => SquareRoot::Quad(q.scale(&n.inv().expect("n > 0"))),
    }
}

pub fn normalize(dec: &FineFrobenius) -> Result<NormalizedFineFrobenius> {
    if dec.field != Field::Rational {
        return Err(Error::NotOrdered);
    }
    let mut quad_part = Vec::with_capacity(dec.quad_part.len());
    for q in &dec.quad_part {
        let positive = q.n.as_rational().map(|r| r > &BigRational::zero());
        if positive != Some(true) {
            return Err(Error::NegativeNormComponent(q.n.to_string()));
        }
        let im = QuadElement::sqrt_of(&q.n);
        let b = ExtMatrix::Ground(q.b.clone()).times(&inverse_root(&im, &q.n))?;
        quad_part.push(NormalizedQuad {
            re: q.alpha.clone(),
            n: q.n.clone(),
            im,
            b,
            p: q.p.clone(),
        });
    }
    Ok(NormalizedFineFrobenius {
        dim: dec.dim,
        field: dec.field,
        linear_part: dec.linear_part.clone(),
        quad_part,
        a0: dec.a0.clone(),
    })
}

/// Checks `𝐁³ = −𝐁`, `A0 = I − ΣA + Σ𝐁²`, and
/// `M = Σγ𝐀 − ΣRe·𝐁² + Σim·𝐁` against `m`.
pub fn verify_normalized(m: &GroundMatrix, dec: &NormalizedFineFrobenius) -> Report {
    let mut r = Report::new();
    let field = dec.field;
    let n = dec.dim;
    r.push("dimensions", m.n() == n && m.field() == field);
    if m.n() != n || m.field() != field {
        return r;
    }
    r.push(
        "n_positive",
        dec.quad_part
            .iter()
            .all(|q| q.n.as_rational().is_some_and(|x| x > &BigRational::zero())),
    );
    r.push("b_cubed", dec.quad_part.iter().all(|q| q.b.cube() == q.b.neg()));

    let squares: Option<Vec<GroundMatrix>> =
        dec.quad_part.iter().map(|q| q.b.square().to_ground()).collect();
    let scaled: Option<Vec<GroundMatrix>> = dec
        .quad_part
        .iter()
        .map(|q| q.b.times(&q.im).ok().and_then(|x| x.to_ground()))
        .collect();
    let (Some(squares), Some(scaled)) = (squares, scaled) else {
        r.push_detail("ground_rational", false, "normalized products left the ground field");
        return r;
    };
    r.push(
        "b_squared_projector",
        dec.quad_part.iter().zip(&squares).all(|(q, s)| s == &(-&q.p)),
    );
    let mut a0 = Matrix::identity(&field, n);
    let mut total = Matrix::zeros(&field, n);
    for l in &dec.linear_part {
        a0 = &a0 - &l.a;
        total = &total + &l.a.scale(&l.gamma);
    }
    for ((q, sq), sc) in dec.quad_part.iter().zip(&squares).zip(&scaled) {
        a0 = &a0 + sq;
        total = &(&total - &sq.scale(&q.re)) + sc;
    }
    r.push("a0_normalized", a0 == dec.a0);
    r.push("star_identity", &total == m);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> GroundMatrix {
        Matrix::from_i64_rows(Q, rows).unwrap()
    }

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    /// Expands `Σγ_iA_i + Σα_jP_j + ΣB_j` using `P_j` directly, independent
    /// of the B² form used by `reconstruct`.
    fn expansion_oracle(dec: &FineFrobenius) -> GroundMatrix {
        let mut acc = Matrix::zeros(&dec.field, dec.dim);
        for l in &dec.linear_part {
            acc = &acc + &l.a.scale(&l.gamma);
        }
        for c in &dec.quad_part {
            acc = &(&acc + &c.p.scale(&c.alpha)) + &c.b;
        }
        acc
    }

    #[test]
    fn rotation() {
        let r = m(&[&[0, -1], &[1, 0]]);
        let dec = fine_frobenius(&r).unwrap();
        assert!(dec.linear_part.is_empty());
        assert_eq!(dec.quad_part.len(), 1);
        let c = &dec.quad_part[0];
        assert_eq!((c.alpha.clone(), c.n.clone()), (q(0), q(1)));
        assert_eq!((c.b.clone(), c.p.clone()), (r.clone(), Matrix::identity(&Q, 2)));
        assert!(dec.a0.is_zero());
        assert_eq!(reconstruct(&dec).unwrap(), r);
        let norm = normalize(&dec).unwrap();
        assert_eq!(norm.quad_part[0].b, ExtMatrix::Ground(r.clone()));
        assert!(verify_normalized(&r, &norm).all_passed());
    }

    #[test]
    fn rotation_with_kernel() {
        let a = m(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let dec = fine_frobenius(&a).unwrap();
        assert_eq!(dec.a0, m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
        let c = &dec.quad_part[0];
        assert_eq!(c.b, a);
        assert_eq!(c.p, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        assert_eq!(expansion_oracle(&dec), a);
        assert!(verify_fine_for(&a, &dec).all_passed());
    }

    #[test]
    fn shifted_rotation() {
        let a = m(&[&[2, 5], &[-1, 0]]);
        let dec = fine_frobenius(&a).unwrap();
        let c = &dec.quad_part[0];
        assert_eq!((c.alpha.clone(), c.n.clone()), (q(1), q(4)));
        assert_eq!(c.b, m(&[&[1, 5], &[-1, -1]]));
        assert_eq!(&c.b * &c.b, Matrix::identity(&Q, 2).scale(&q(-4)));
        assert_eq!(expansion_oracle(&dec), a);

        let norm = normalize(&dec).unwrap();
        let bn = &norm.quad_part[0].b;
        assert_eq!(norm.quad_part[0].im, SquareRoot::Ground(q(2)));
        assert_eq!(
            bn,
            &ExtMatrix::Ground(m(&[&[1, 5], &[-1, -1]]).scale(&Scalar::rational(1, 2)))
        );
        assert_eq!(bn.cube(), bn.neg());
        assert!(verify_normalized(&a, &norm).all_passed());
    }

    #[test]
    fn irrational_imaginary_part() {
        // X² + 2: im = √2, so 𝐁 has entries in ℚ(√2).
        let a = Matrix::companion(&Polynomial::from_i64s(Q, &[2, 0, 1]));
        let dec = fine_frobenius(&a).unwrap();
        let norm = normalize(&dec).unwrap();
        let c = &norm.quad_part[0];
        assert!(matches!(&c.im, SquareRoot::Quad(x) if x.d == q(2)));
        assert_eq!(c.b.extension().map(|e| e.d), Some(q(2)));
        assert_eq!(c.b.cube(), c.b.neg());
        assert!(verify_normalized(&a, &norm).all_passed());
    }

    #[test]
    fn error_cases() {
        assert_eq!(fine_frobenius(&Matrix::zeros(&Q, 2)), Err(Error::ZeroMatrix));
        assert_eq!(fine_frobenius(&m(&[&[1, 1], &[0, 1]])), Err(Error::NotSemisimple));
        let c = Matrix::companion(&Polynomial::from_i64s(Q, &[-2, 0, 0, 1]));
        assert_eq!(fine_frobenius(&c), Err(Error::SplittingBoundExceeded(3)));
        let golden = fine_frobenius(&m(&[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(golden.quad_part[0].n, Scalar::rational(-5, 4));
        assert!(matches!(normalize(&golden), Err(Error::NegativeNormComponent(_))));
        let f7 = Field::Prime(7);
        let dec = fine_frobenius(&Matrix::from_i64_rows(f7, &[&[0, -1], &[1, 0]]).unwrap()).unwrap();
        assert_eq!(normalize(&dec), Err(Error::NotOrdered));
    }

    #[test]
    fn hand_built_rejections() {
        let dup = FineFrobenius {
            dim: 2,
            field: Q,
            linear_part: vec![
                LinearCovariant { gamma: q(1), a: m(&[&[1, 0], &[0, 0]]) },
                LinearCovariant { gamma: q(1), a: m(&[&[0, 0], &[0, 1]]) },
            ],
            quad_part: vec![],
            a0: Matrix::zeros(&Q, 2),
        };
        assert!(matches!(reconstruct(&dup), Err(Error::InvalidDecomposition(_))));
        assert_eq!(verify_fine(&dup).passed("gamma_distinct"), Some(false));

        let r = m(&[&[0, -1], &[1, 0]]);
        let mut dec = fine_frobenius(&r).unwrap();
        dec.quad_part[0].b = r.scale(&q(2));
        assert_eq!(verify_fine(&dec).passed("b_cubed"), Some(false));
        assert!(reconstruct(&dec).is_err());

        let mut dec = fine_frobenius(&r).unwrap();
        dec.quad_part[0].n = q(-4);
        assert_eq!(verify_fine(&dec).passed("minus_n_nonsquare"), Some(false));
    }

    #[test]
    fn finite_field_decomposition() {
        // Over 𝔽_7, X² + 1 is irreducible and X² − 2 = (X − 3)(X + 3).
        let f7 = Field::Prime(7);
        let a = GroundMatrix::block_diagonal(
            f7,
            &[
                Matrix::from_i64_rows(f7, &[&[0, -1], &[1, 0]]).unwrap(),
                Matrix::from_i64_rows(f7, &[&[0, 2], &[1, 0]]).unwrap(),
            ],
        );
        let dec = fine_frobenius(&a).unwrap();
        assert_eq!((dec.linear_part.len(), dec.quad_part.len()), (2, 1));
        assert!(verify_fine_for(&a, &dec).all_passed());
        assert_eq!(dec.quad_part[0].p.rank() % 2, 0);
    }
}
