//! Factorization over ℚ at desk scale.
//!
//! A squarefree input is cleared to a primitive integer polynomial. Factor
//! degrees are first restricted by the degree patterns of its reductions
//! modulo a few primes; linear factors then come from the rational-root
//! theorem and higher-degree ones from Kronecker's evaluation–interpolation
//! search, smallest degree first, so every factor found is irreducible.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{finite, gcd, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, Field, Scalar};

/// Upper bound on interpolation candidates tried for one factor degree.
const MAX_KRONECKER_COMBINATIONS: u128 = 20_000_000;
/// Number of good primes consulted by the degree sieve.
const SIEVE_PRIMES: usize = 16;

type IntPoly = Vec<BigInt>;

pub(super) fn factor_squarefree(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let prim = to_primitive(f);
    let mut out = Vec::new();
    factor_primitive(prim, &mut out)?;
    Ok(out.iter().map(to_monic_rational).collect())
}

fn factor_primitive(g: IntPoly, out: &mut Vec<IntPoly>) -> Result<()> {
    let n = g.len() - 1;
    if n <= 1 {
        out.push(g);
        return Ok(());
    }
    if g[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        return factor_primitive(g[1..].to_vec(), out);
    }
    let allowed = degree_sieve(&g);
    for k in 1..=n / 2 {
        if allowed & (1u64 << k) == 0 {
            continue;
        }
        let found = if k == 1 {
            rational_root_factor(&g)?
        } else {
            kronecker(&g, k)?
        };
        if let Some(h) = found {
            let rest = int_div_exact(&g, &h).expect("verified divisor");
            out.push(normalize_sign(h));
            return factor_primitive(normalize_sign(rest), out);
        }
    }
    out.push(g);
    Ok(())
}

fn to_primitive(f: &Polynomial) -> IntPoly {
    let coeffs: Vec<BigRational> = f.coeffs().iter().map(|c| c.to_rational()).collect();
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: IntPoly = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    normalize_sign(primitive_part(ints))
}

fn primitive_part(f: IntPoly) -> IntPoly {
    let content = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return f;
    }
    f.into_iter().map(|c| c / &content).collect()
}

fn normalize_sign(f: IntPoly) -> IntPoly {
    if f.last().is_some_and(|c| c.is_negative()) {
        f.into_iter().map(|c| -c).collect()
    } else {
        f
    }
}

fn to_monic_rational(f: &IntPoly) -> Polynomial {
    let lead = f.last().expect("nonzero").clone();
    let coeffs = f
        .iter()
        .map(|c| Scalar::Q(BigRational::new(c.clone(), lead.clone())))
        .collect();
    Polynomial::new(Field::Rational, coeffs)
}

fn int_eval(f: &IntPoly, x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact quotient in ℤ[X], if `h` divides `g`.
fn int_div_exact(g: &IntPoly, h: &IntPoly) -> Option<IntPoly> {
    let dh = h.len() - 1;
    if g.len() < h.len() {
        return None;
    }
    let lead = h.last().expect("nonzero");
    let mut rem = g.clone();
    let mut quot = vec![BigInt::zero(); g.len() - dh];
    for k in (0..quot.len()).rev() {
        let (q, r) = rem[k + dh].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        for (j, c) in h.iter().enumerate() {
            rem[k + j] -= &q * c;
        }
        quot[k] = q;
    }
    rem.iter().all(|c| c.is_zero()).then_some(quot)
}

/// Bitmask of degrees a rational factor may have, from factorization
/// patterns modulo several primes.
fn degree_sieve(g: &IntPoly) -> u64 {
    let n = g.len() - 1;
    let full: u64 = (1u64 << (n + 1)) - 1;
    let mut allowed = full;
    let lead = g.last().expect("nonzero");
    let mut good = 0;
    let mut p = 3u64;
    while good < SIEVE_PRIMES && p < 2000 {
        if is_prime(p) && !(lead % BigInt::from(p)).is_zero() {
            let field = Field::Prime(p);
            let reduced = Polynomial::new(field, g.iter().map(|c| field.from_bigint(c)).collect());
            let squarefree = gcd(&reduced, &reduced.derivative())
                .map(|d| d.is_one())
                .unwrap_or(false);
            if squarefree {
                good += 1;
                let mut sums: u64 = 1;
                for h in finite::factor_squarefree(&reduced.monic(), p) {
                    let d = h.degree().unwrap_or(0);
                    sums |= sums << d;
                }
                allowed &= sums & full;
                if allowed & !(1 | (1u64 << n)) == 0 {
                    break;
                }
            }
        }
        p += 2;
    }
    allowed & !(1 | (1u64 << n))
}

fn rational_root_factor(g: &IntPoly) -> Result<Option<IntPoly>> {
    let a0 = g[0].magnitude().clone();
    let lead = g.last().expect("nonzero").magnitude().clone();
    let nums = divisors(&a0)?;
    let dens = divisors(&lead)?;
    for v in &dens {
        for u in &nums {
            if !u.gcd(v).is_one() {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let u = BigInt::from_biguint(sign, u.clone());
                let v = BigInt::from(v.clone());
                // Σ c_i u^i v^(n-i)
                let n = g.len() - 1;
                let mut acc = BigInt::zero();
                let mut up = BigInt::one();
                for (i, c) in g.iter().enumerate() {
                    acc += c * &up * num_traits::pow(v.clone(), n - i);
                    up *= &u;
                }
                if acc.is_zero() {
                    return Ok(Some(vec![-u, v]));
                }
            }
        }
    }
    Ok(None)
}

fn kronecker(g: &IntPoly, k: usize) -> Result<Option<IntPoly>> {
    // Candidate evaluation points, cheapest (fewest divisors) first.
    let mut points: Vec<(BigInt, BigInt, Vec<BigUint>)> = Vec::new();
    let mut step = 0i64;
    while points.len() < 3 * (k + 1) + 4 && step < 200 {
        let x = if step % 2 == 0 { step / 2 } else { -(step + 1) / 2 };
        step += 1;
        let x = BigInt::from(x);
        let y = int_eval(g, &x);
        if y.is_zero() {
            continue;
        }
        if let Ok(divs) = divisors(y.magnitude()) {
            points.push((x, y, divs));
        }
    }
    if points.len() < k + 1 {
        return Err(Error::FactorizationFailed(
            "not enough evaluation points".to_string(),
        ));
    }
    points.sort_by_key(|(_, _, d)| d.len());
    let (chosen, filters) = points.split_at(k + 1);

    let mut combos: u128 = 1;
    for (i, (_, _, d)) in chosen.iter().enumerate() {
        combos = combos.saturating_mul(d.len() as u128 * if i == 0 { 1 } else { 2 });
    }
    if combos > MAX_KRONECKER_COMBINATIONS {
        return Err(Error::FactorizationFailed(format!(
            "degree-{k} factor search needs {combos} candidates"
        )));
    }

    // Lagrange basis with a common denominator: D·h = Σ y_i (D/D_i) N_i.
    let xs: Vec<BigInt> = chosen.iter().map(|(x, _, _)| x.clone()).collect();
    let mut numerators: Vec<IntPoly> = Vec::new();
    let mut denominators: Vec<BigInt> = Vec::new();
    for i in 0..=k {
        let mut num: IntPoly = vec![BigInt::one()];
        let mut den = BigInt::one();
        for j in 0..=k {
            if i == j {
                continue;
            }
            num = int_mul(&num, &[-xs[j].clone(), BigInt::one()]);
            den *= &xs[i] - &xs[j];
        }
        numerators.push(num);
        denominators.push(den);
    }
    let common = denominators
        .iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let weights: Vec<IntPoly> = numerators
        .iter()
        .zip(&denominators)
        .map(|(num, den)| {
            let s = &common / den;
            num.iter().map(|c| c * &s).collect()
        })
        .collect();

    let options: Vec<Vec<BigInt>> = chosen
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            let mut v: Vec<BigInt> = Vec::new();
            for d in divs {
                v.push(BigInt::from(d.clone()));
                if i > 0 {
                    v.push(-BigInt::from(d.clone()));
                }
            }
            v
        })
        .collect();

    let g_lead = g.last().expect("nonzero");
    let mut idx = vec![0usize; k + 1];
    loop {
        let mut scaled = vec![BigInt::zero(); k + 1];
        for (i, w) in weights.iter().enumerate() {
            let y = &options[i][idx[i]];
            for (c, wc) in scaled.iter_mut().zip(w) {
                *c += y * wc;
            }
        }
        if let Some(h) = candidate(&scaled, &common, g, g_lead, filters) {
            return Ok(Some(h));
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos > k {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn candidate(
    scaled: &[BigInt],
    common: &BigInt,
    g: &IntPoly,
    g_lead: &BigInt,
    filters: &[(BigInt, BigInt, Vec<BigUint>)],
) -> Option<IntPoly> {
    if scaled.last().is_none_or(|c| c.is_zero()) {
        return None;
    }
    let mut h = Vec::with_capacity(scaled.len());
    for c in scaled {
        let (q, r) = c.div_rem(common);
        if !r.is_zero() {
            return None;
        }
        h.push(q);
    }
    let h_lead = h.last().expect("nonzero");
    if h[0].is_zero() || !(g_lead % h_lead).is_zero() || !(&g[0] % &h[0]).is_zero() {
        return None;
    }
    for (x, y, _) in filters.iter().take(6) {
        let hv = int_eval(&h, x);
        if hv.is_zero() || !(y % hv).is_zero() {
            return None;
        }
    }
    int_div_exact(g, &h).map(|_| h)
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Positive divisors of a nonzero integer.
fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::FactorizationFailed("divisors of zero".to_string()));
    }
    let mut divs = vec![BigUint::one()];
    for (q, e) in factor_integer(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &q;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut q = 2u64;
    while q < 10_000 && rest > BigUint::one() {
        let bq = BigUint::from(q);
        let mut e = 0;
        while (&rest % &bq).is_zero() {
            rest /= &bq;
            e += 1;
        }
        if e > 0 {
            out.push((bq, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let Some(r) = rest.to_u64() else {
        return Err(Error::FactorizationFailed(format!(
            "integer {n} too large to factor"
        )));
    };
    let mut primes = Vec::new();
    split_u64(r, &mut primes);
    primes.sort_unstable();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == BigUint::from(q) => *e += 1,
            _ => out.push((BigUint::from(q), 1)),
        }
    }
    Ok(out)
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn pollard_rho(n: u64) -> u64 {
    use crate::scalar::mul_mod;
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}
