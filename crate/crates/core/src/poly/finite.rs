//! Factorization over 𝔽_p: distinct-degree, then Cantor–Zassenhaus
//! equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gcd, Polynomial};
use crate::scalar::Field;

/// Monic irreducible factors of a monic squarefree polynomial.
pub(super) fn factor_squarefree(f: &Polynomial, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        equal_degree(&g, d, &mut rng, &mut out);
    }
    out
}

/// Pairs `(g, d)` where `g` is the product of all irreducible factors of
/// degree `d`.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = Polynomial::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&p, &rest);
        let g = gcd(&rest, &(&h - &x)).expect("nonzero");
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn random_poly(field: Field, below_degree: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = field.characteristic();
    let coeffs = (0..below_degree)
        .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
        .collect();
    Polynomial::new(field, coeffs)
}

fn equal_degree(g: &Polynomial, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let n = g.degree().expect("nonzero");
    if n == d {
        out.push(g.monic());
        return;
    }
    let field = g.field();
    let p = BigUint::from(field.characteristic());
    let exponent = (p.pow(d as u32) - 1u32) / 2u32;
    let one = Polynomial::one(field);
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = &a.pow_mod(&exponent, g) - &one;
        let c = gcd(g, &b).expect("g nonzero");
        let cd = c.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let rest = g.exact_div(&c);
            equal_degree(&c, d, rng, out);
            equal_degree(&rest, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_degree_groups() {
        let f7 = Field::Prime(7);
        // (X-1)(X-2)(X²+1)(X²+X+3); the quadratics are irreducible mod 7.
        let f = [
            Polynomial::from_i64s(f7, &[-1, 1]),
            Polynomial::from_i64s(f7, &[-2, 1]),
            Polynomial::from_i64s(f7, &[1, 0, 1]),
            Polynomial::from_i64s(f7, &[3, 1, 1]),
        ]
        .iter()
        .fold(Polynomial::one(f7), |acc, g| &acc * g);
        let groups = distinct_degree(&f);
        let degs: Vec<_> = groups.iter().map(|(g, d)| (g.degree().unwrap(), *d)).collect();
        assert_eq!(degs, vec![(2, 1), (4, 2)]);
        let factors = factor_squarefree(&f, 1);
        assert_eq!(factors.len(), 4);
        let prod = factors.iter().fold(Polynomial::one(f7), |acc, g| &acc * g);
        assert_eq!(prod, f);
    }

    #[test]
    fn seed_does_not_change_factor_set() {
        let f11 = Field::Prime(11);
        let f = Polynomial::from_i64s(f11, &[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let mut a = factor_squarefree(&f, 3);
        let mut b = factor_squarefree(&f, 99);
        a.sort_by(super::super::canonical_order);
        b.sort_by(super::super::canonical_order);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
    }
}
