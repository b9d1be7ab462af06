//! Additive Jordan–Chevalley decomposition `M = S + N` and its refinement
//! `M = H + V + N`, where `H` is diagonalizable over the ground field and
//! `V` is semisimple with eigenvalues of zero horizontal component.
//!
//! The semisimple part is computed twice: by a global Newton iteration in
//! `K[X]/(m)` and by per-factor linear Hensel lifting glued together with
//! the CRT idempotents. The two results must agree exactly.

use crate::error::{Error, Result};
use crate::matrix::{eval_poly_at_matrix, GroundMatrix, Matrix};
use crate::poly::Polynomial;
use crate::report::Report;
use crate::scalar::{k_projection_of_factor, Ring, Scalar};

/// `M = S + N` together with the polynomial `s` such that `S = s(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveJC {
    pub semisimple: GroundMatrix,
    pub nilpotent: GroundMatrix,
    pub semisimple_poly: Polynomial,
    pub iterations: usize,
}

/// One primary component of the minimal polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorData {
    pub factor: Polynomial,
    pub multiplicity: usize,
    /// `e_i(M)` for the CRT idempotent `e_i ≡ 1 mod m_i^{μ_i}`.
    pub projector: GroundMatrix,
    pub idempotent_poly: Polynomial,
    /// Horizontal component shared by the roots of the factor.
    pub alpha: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompleteJC {
    pub h: GroundMatrix,
    pub v: GroundMatrix,
    pub n: GroundMatrix,
    pub factors: Vec<FactorData>,
    pub minimal_polynomial: Polynomial,
    pub semisimple_poly: Polynomial,
    pub horizontal_poly: Polynomial,
}

impl CompleteJC {
    pub fn semisimple(&self) -> GroundMatrix {
        &self.h + &self.v
    }
}

/// Newton iteration `x ← x − q(x)/q'(x)` in `K[X]/(m)` with `q` the
/// squarefree part of the minimal polynomial `m`, started at `x = X` and
/// stopped once `q(x) ≡ 0`.
pub fn jc_decompose_newton(m: &GroundMatrix) -> Result<AdditiveJC> {
    m.require_k_regular()?;
    let field = m.field();
    let minpoly = m.minimal_polynomial();
    let q = minpoly.squarefree_part()?;
    let dq = q.derivative();
    let mut x = Polynomial::x(field).rem(&minpoly)?;
    let mut iterations = 0;
    loop {
        let qx = q.compose_mod(&x, &minpoly);
        if qx.is_zero() {
            break;
        }
        if iterations > 64 {
            return Err(Error::CrossCheckFailed("Newton iteration did not terminate".into()));
        }
        let inv = dq.compose_mod(&x, &minpoly).inverse_mod(&minpoly)?;
        x = (&x - &qx.mul_mod(&inv, &minpoly)).rem(&minpoly)?;
        iterations += 1;
    }
    let semisimple = eval_poly_at_matrix(&x, m)?;
    let nilpotent = m - &semisimple;
    Ok(AdditiveJC {
        semisimple,
        nilpotent,
        semisimple_poly: x,
        iterations,
    })
}

/// CRT idempotents `e_i mod m` for the primary components of `m`.
pub(crate) fn crt_idempotents(minpoly: &Polynomial, moduli: &[Polynomial]) -> Result<Vec<Polynomial>> {
    moduli
        .iter()
        .map(|qi| {
            let cofactor = minpoly.exact_div(qi);
            let u = cofactor.inverse_mod(qi)?;
            Ok(cofactor.mul_mod(&u, minpoly))
        })
        .collect()
}

/// Root of `f` modulo `f^μ` congruent to `X` modulo `f`, by linear Hensel
/// steps with the fixed inverse of `f'` modulo `f`.
fn hensel_root(f: &Polynomial, mult: usize) -> Result<Polynomial> {
    let field = f.field();
    let modulus = f.pow(mult);
    let w = f.derivative().inverse_mod(f)?;
    let mut sigma = Polynomial::x(field).rem(&modulus)?;
    for _ in 0..=mult {
        let r = f.compose_mod(&sigma, &modulus);
        if r.is_zero() {
            return Ok(sigma);
        }
        sigma = (&sigma - &r.mul_mod(&w, &modulus)).rem(&modulus)?;
    }
    Err(Error::CrossCheckFailed("Hensel lifting did not terminate".into()))
}

/// Semisimple part assembled as `Σ σ_i(M)·P_i` from the primary projectors.
pub fn semisimple_via_projectors(m: &GroundMatrix) -> Result<(GroundMatrix, Vec<FactorData>)> {
    m.require_k_regular()?;
    let field = m.field();
    let n = m.n();
    let minpoly = m.minimal_polynomial();
    let fac = minpoly
        .factor()
        .map_err(|e| Error::FactorizationFailed(e.to_string()))?;
    let moduli: Vec<Polynomial> = fac.factors.iter().map(|(f, mu)| f.pow(*mu)).collect();
    let idempotents = crt_idempotents(&minpoly, &moduli)?;
    let mut s = Matrix::zeros(&field, n);
    let mut data = Vec::with_capacity(fac.factors.len());
    for ((f, mu), e) in fac.factors.iter().zip(idempotents) {
        let projector = eval_poly_at_matrix(&e, m)?;
        let sigma = hensel_root(f, *mu)?;
        s = &s + &(&eval_poly_at_matrix(&sigma, m)? * &projector);
        data.push(FactorData {
            factor: f.clone(),
            multiplicity: *mu,
            projector,
            idempotent_poly: e,
            alpha: k_projection_of_factor(f)?,
        });
    }
    Ok((s, data))
}

/// `M = H + V + N` with `H = Σ α_i P_i`, `V = S − H`, `N = M − S`.
pub fn complete_jc(m: &GroundMatrix) -> Result<CompleteJC> {
    let (newton, projected) = std::thread::scope(|scope| {
        let handle = scope.spawn(|| semisimple_via_projectors(m));
        let newton = jc_decompose_newton(m);
        (newton, handle.join().expect("projector construction panicked"))
    });
    let newton = newton?;
    let (s_proj, factors) = projected?;
    if s_proj != newton.semisimple {
        return Err(Error::CrossCheckFailed(
            "Newton and projector semisimple parts differ".into(),
        ));
    }
    let field = m.field();
    let minpoly = m.minimal_polynomial();
    let mut h = Matrix::zeros(&field, m.n());
    let mut horizontal_poly = Polynomial::zero(field);
    for fd in &factors {
        h = &h + &fd.projector.scale(&fd.alpha);
        horizontal_poly = &horizontal_poly + &fd.idempotent_poly.scale(&fd.alpha);
    }
    let horizontal_poly = horizontal_poly.rem(&minpoly)?;
    let v = &newton.semisimple - &h;
    Ok(CompleteJC {
        h,
        v,
        n: newton.nilpotent,
        factors,
        minimal_polynomial: minpoly,
        semisimple_poly: newton.semisimple_poly,
        horizontal_poly,
    })
}

fn splits_into_distinct_linear(m: &GroundMatrix) -> bool {
    match m.minimal_polynomial().factor() {
        Ok(fac) => fac
            .factors
            .iter()
            .all(|(f, mu)| *mu == 1 && f.degree() == Some(1)),
        Err(_) => false,
    }
}

fn is_vertical_semisimple(m: &GroundMatrix) -> bool {
    let mp = m.minimal_polynomial();
    if !mp.is_squarefree() {
        return false;
    }
    match mp.factor() {
        Ok(fac) => fac.factors.iter().all(|(f, _)| {
            let d = f.degree().unwrap_or(0);
            d > 0 && f.coeff(d - 1).is_zero()
        }),
        Err(_) => false,
    }
}

/// Clause-by-clause check of a triple `(H, V, N)` against `M`.
pub fn verify_complete_jc(m: &GroundMatrix, h: &GroundMatrix, v: &GroundMatrix, n: &GroundMatrix) -> Report {
    let mut report = Report::new();
    let dims_ok = [h, v, n].iter().all(|x| x.n() == m.n() && x.field() == m.field());
    report.push("dimensions", dims_ok);
    if !dims_ok {
        return report;
    }
    report.push("sum", &(&(h + v) + n) == m);
    report.push("commute_hv", h.commutes_with(v));
    report.push("commute_hn", h.commutes_with(n));
    report.push("commute_vn", v.commutes_with(n));
    report.push("h_diagonalizable", splits_into_distinct_linear(h));
    report.push("v_vertical_semisimple", is_vertical_semisimple(v));
    report.push("n_nilpotent", n.is_nilpotent());
    report
}

/// Checks `S + N = M`, `SN = NS`, `N` nilpotent, `S` semisimple.
pub fn verify_additive_jc(m: &GroundMatrix, s: &GroundMatrix, n: &GroundMatrix) -> Report {
    let mut report = Report::new();
    let dims_ok = s.n() == m.n() && n.n() == m.n() && s.field() == m.field() && n.field() == m.field();
    report.push("dimensions", dims_ok);
    if !dims_ok {
        return report;
    }
    report.push("sum", &(s + n) == m);
    report.push("commute_sn", s.commutes_with(n));
    report.push("n_nilpotent", n.is_nilpotent());
    report.push("s_semisimple", s.minimal_polynomial().is_squarefree());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> GroundMatrix {
        Matrix::from_i64_rows(Q, rows).unwrap()
    }

    #[test]
    fn newton_examples() {
        let jc = jc_decompose_newton(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(jc.semisimple, Matrix::identity(&Q, 2));
        assert_eq!(jc.nilpotent, m(&[&[0, 1], &[0, 0]]));

        let r = m(&[&[0, -1], &[1, 0]]);
        let jc = jc_decompose_newton(&r).unwrap();
        assert_eq!((jc.semisimple.clone(), jc.iterations), (r, 0));
        assert!(jc.nilpotent.is_zero());

        let b = m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let jc = jc_decompose_newton(&b).unwrap();
        assert_eq!(jc.semisimple, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(jc.nilpotent, m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(eval_poly_at_matrix(&jc.semisimple_poly, &b).unwrap(), jc.semisimple);
    }

    #[test]
    fn complete_examples() {
        let a = m(&[&[2, 5], &[-1, 0]]);
        let dec = complete_jc(&a).unwrap();
        assert_eq!(dec.h, Matrix::identity(&Q, 2));
        assert_eq!(dec.v, m(&[&[1, 5], &[-1, -1]]));
        assert!(dec.n.is_zero());
        assert_eq!(dec.v.pow(2), Matrix::identity(&Q, 2).scale(&Q.from_i64(-4)));

        let d = m(&[&[1, 0], &[0, 2]]);
        let dec = complete_jc(&d).unwrap();
        assert_eq!((dec.h.clone(), dec.v.is_zero(), dec.n.is_zero()), (d, true, true));

        let j = m(&[&[1, 1], &[0, 1]]);
        let dec = complete_jc(&j).unwrap();
        assert_eq!(dec.h, Matrix::identity(&Q, 2));
        assert!(dec.v.is_zero());
        assert_eq!(dec.n, m(&[&[0, 1], &[0, 0]]));
        assert!(verify_complete_jc(&j, &dec.h, &dec.v, &dec.n).all_passed());
    }

    #[test]
    fn verification_rejects_perturbations() {
        let a = m(&[&[2, 5], &[-1, 0]]);
        let dec = complete_jc(&a).unwrap();
        assert!(verify_complete_jc(&a, &dec.h, &dec.v, &dec.n).all_passed());
        let id = Matrix::identity(&Q, 2);
        // H + I, V − I: V − I has minimal polynomial X² + 2X + 5, not reduced.
        let r = verify_complete_jc(&a, &(&dec.h + &id), &(&dec.v - &id), &dec.n);
        assert_eq!(r.passed("v_vertical_semisimple"), Some(false));
        assert_eq!(r.passed("sum"), Some(true));
        // Swapping H and V: V has irrational eigenvalues ±2i.
        let r = verify_complete_jc(&a, &dec.v, &dec.h, &dec.n);
        assert_eq!(r.passed("h_diagonalizable"), Some(false));
    }

    #[test]
    fn projectors_form_a_frobenius_system() {
        let a = Matrix::block_diagonal(
            Q,
            &[m(&[&[2, 5], &[-1, 0]]), m(&[&[3, 1], &[0, 3]]), m(&[&[0]])],
        );
        let dec = complete_jc(&a).unwrap();
        let mut total = Matrix::zeros(&Q, a.n());
        for (i, fi) in dec.factors.iter().enumerate() {
            for (j, fj) in dec.factors.iter().enumerate() {
                let prod = &fi.projector * &fj.projector;
                if i == j {
                    assert_eq!(prod, fi.projector);
                } else {
                    assert!(prod.is_zero());
                }
            }
            total = &total + &fi.projector;
        }
        assert_eq!(total, Matrix::identity(&Q, a.n()));
        assert_eq!(eval_poly_at_matrix(&dec.horizontal_poly, &a).unwrap(), dec.h);
    }

    #[test]
    fn positive_characteristic_rejection() {
        let f3 = Field::Prime(3);
        // X³ − X − 1 is irreducible over 𝔽_3 and has degree divisible by 3.
        let c = Matrix::companion(&Polynomial::from_i64s(f3, &[-1, -1, 0, 1]));
        assert!(matches!(complete_jc(&c), Err(Error::NotKRegular { degree: 3, characteristic: 3 })));
        let j = Matrix::from_i64_rows(f3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        let dec = complete_jc(&j).unwrap();
        assert!(verify_complete_jc(&j, &dec.h, &dec.v, &dec.n).all_passed());
    }
}
