mod common;

use std::collections::BTreeSet;

use common::Block;

use jcfrob::frobenius::{fine_frobenius, reconstruct};
use jcfrob::jordan_chevalley::{complete_jc, jc_decompose_newton};
use jcfrob::matrix::GroundMatrix;
use jcfrob::poly::gcd;
use jcfrob::scalar::FieldOps;
use jcfrob::series::{complete_jc_of_image, SeriesMatrix, SeriesOptions, SeriesSpec};
use jcfrob::{eval_poly_at_matrix, AbsValue, Field, Matrix, Polynomial, Scalar};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::prime(1_000_000_007).unwrap()),
    ]
}

fn scalar_in(field: Field) -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(move |(n, d)| match field {
        Field::Rational => Scalar::rational(n, d),
        _ => field.from_i64(n),
    })
}

fn poly_in(field: Field, max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(move |c| Polynomial::from_i64s(field, &c))
}

fn matrix_in(field: Field, max_n: usize) -> impl Strategy<Value = GroundMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-3i64..=3, n * n)
            .prop_map(move |v| Matrix::from_fn(&field, n, |i, j| field.from_i64(v[i * n + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_field_axioms(
        (a, b, c) in field_strategy().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
    ) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((a * inv).is_one());
        }
    }

    #[test]
    fn division_identity(f in poly_in(Field::Rational, 6), g in poly_in(Field::Rational, 3)) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divmod(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn gcd_divides_both(f in poly_in(Field::prime(5).unwrap(), 6), g in poly_in(Field::prime(5).unwrap(), 6)) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = gcd(&f, &g).unwrap();
        prop_assert!(d.divides(&f) && d.divides(&g));
        prop_assert!(d.is_monic());
    }

    #[test]
    fn factorization_expands_back(
        field in field_strategy(),
        parts in prop::collection::vec(prop::collection::vec(-4i64..=4, 2..=3), 1..=4),
        seed in any::<u64>(),
    ) {
        let f = parts
            .iter()
            .map(|c| Polynomial::from_i64s(field, c))
            .fold(Polynomial::one(field), |acc, g| &acc * &g);
        prop_assume!(!f.is_constant());
        let fac = f.factor_with_seed(seed).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic() && g.is_irreducible().unwrap());
        }
        // Canonical order makes the output independent of the seed.
        prop_assert_eq!(fac, f.factor_with_seed(seed.wrapping_add(1)).unwrap());
    }

    #[test]
    fn minimal_polynomial_is_similarity_invariant(m in matrix_in(Field::Rational, 4), seed in any::<u64>()) {
        let mp = m.minimal_polynomial();
        prop_assert!(eval_poly_at_matrix(&mp, &m).unwrap().is_zero());
        let mut r = common::rng(seed);
        let (p, p_inv) = common::invertible(&mut r, m.n(), 2);
        prop_assert_eq!((&(&p * &m) * &p_inv).minimal_polynomial(), mp);
    }

    #[test]
    fn semisimple_part_is_polynomial_in_m(m in matrix_in(Field::prime(7).unwrap(), 4)) {
        let jc = jc_decompose_newton(&m).unwrap();
        prop_assert_eq!(eval_poly_at_matrix(&jc.semisimple_poly, &m).unwrap(), jc.semisimple.clone());
        prop_assert!(jc.nilpotent.is_nilpotent());
        prop_assert!(jc.semisimple.minimal_polynomial().is_squarefree());
    }

    #[test]
    fn complete_jc_parts_are_polynomials(m in matrix_in(Field::Rational, 4)) {
        let d = complete_jc(&m).unwrap();
        prop_assert_eq!(eval_poly_at_matrix(&d.horizontal_poly, &m).unwrap(), d.h.clone());
        prop_assert_eq!(&(&d.h + &d.v) + &d.n, m);
        let total = d.factors.iter().fold(Matrix::zeros(&Field::Rational, d.h.n()), |acc, f| &acc + &f.projector);
        prop_assert_eq!(total, Matrix::identity(&Field::Rational, d.h.n()));
    }

    #[test]
    fn fine_round_trip(seed in any::<u64>()) {
        let s = common::semisimple_sb2(&mut common::rng(seed));
        let dec = fine_frobenius(&s.matrix).unwrap();
        prop_assert_eq!(reconstruct(&dec).unwrap(), s.matrix);
        let distinct: BTreeSet<_> = s
            .blocks
            .iter()
            .filter_map(|b| match b {
                Block::Quadratic { t, d } => Some((*t, *d)),
                Block::Linear(_) => None,
            })
            .collect();
        prop_assert_eq!(dec.quad_part.len(), distinct.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn image_vertical_part_is_traceless(seed in any::<u64>()) {
        let s = common::bounded_semisimple(&mut common::rng(seed));
        for spec in [SeriesSpec::exp(), SeriesSpec::sin(), SeriesSpec::cos()] {
            let parts = complete_jc_of_image(&s.matrix, &spec, AbsValue::Archimedean, SeriesOptions::default()).unwrap();
            let SeriesMatrix::Archimedean(vf) = parts.vf else { unreachable!() };
            prop_assert!(vf.trace().abs_upper().to_f64() <= 1e-12);
        }
    }
}
