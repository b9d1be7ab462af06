//! Seeded matrix corpora shared by the integration tests.

#![allow(dead_code)]

use jcfrob::matrix::GroundMatrix;
use jcfrob::{Field, Matrix, Polynomial, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(v: i64) -> Scalar {
    Scalar::rational(v, 1)
}

fn in_range(m: &GroundMatrix, bound: i64) -> bool {
    let b = num_rational::BigRational::from_integer(bound.into());
    m.entries().all(|x| {
        let r = x.to_rational();
        r <= b && -r <= b
    })
}

/// Integer matrices over ℚ with entries in [-5, 5]. Three shapes are mixed
/// so that repeated eigenvalues and nontrivial nilpotent parts are common:
/// dense, sparse, and triangular with a small diagonal alphabet conjugated
/// by an elementary matrix.
pub fn rational_matrix(rng: &mut ChaCha8Rng) -> GroundMatrix {
    let n = rng.gen_range(2..=6);
    match rng.gen_range(0..3) {
        0 => Matrix::from_fn(&Field::Rational, n, |_, _| q(rng.gen_range(-5..=5))),
        1 => Matrix::from_fn(&Field::Rational, n, |_, _| {
            if rng.gen_bool(0.7) {
                q(0)
            } else {
                q(rng.gen_range(-5..=5))
            }
        }),
        _ => {
            let diag = [-1, 0, 1, 2];
            let t = Matrix::from_fn(&Field::Rational, n, |i, j| {
                if i == j {
                    q(diag[rng.gen_range(0..diag.len())])
                } else if i < j && rng.gen_bool(0.5) {
                    q(rng.gen_range(-2..=2))
                } else {
                    q(0)
                }
            });
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                return t;
            }
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut e = Matrix::identity(&Field::Rational, n);
            e.set(i, j, q(c));
            let mut e_inv = Matrix::identity(&Field::Rational, n);
            e_inv.set(i, j, q(-c));
            let conj = &(&e * &t) * &e_inv;
            if in_range(&conj, 5) {
                conj
            } else {
                t
            }
        }
    }
}

pub fn rational_corpus(seed: u64, count: usize) -> Vec<GroundMatrix> {
    let mut r = rng(seed);
    (0..count).map(|_| rational_matrix(&mut r)).collect()
}

/// Random invertible rational matrix with integer entries in [-b, b].
pub fn invertible(rng: &mut ChaCha8Rng, n: usize, b: i64) -> (GroundMatrix, GroundMatrix) {
    loop {
        let p = Matrix::from_fn(&Field::Rational, n, |_, _| q(rng.gen_range(-b..=b)));
        if let Some(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

fn is_rational_square(v: i64) -> bool {
    v >= 0 && {
        let r = (v as f64).sqrt().round() as i64;
        r * r == v
    }
}

/// Diagonal blocks of a semisimple matrix with splitting bound ≤ 2.
#[derive(Clone, Debug)]
pub enum Block {
    /// 1×1 block with this eigenvalue.
    Linear(i64),
    /// Companion block of `X² − tX + d`, irreducible over ℚ; as a pair
    /// `(num, den)` each of `t` and `d` is rational.
    Quadratic { t: (i64, i64), d: (i64, i64) },
}

impl Block {
    pub fn matrix(&self) -> GroundMatrix {
        match self {
            Block::Linear(g) => Matrix::from_rows(&Field::Rational, vec![vec![q(*g)]]).unwrap(),
            Block::Quadratic { t, d } => {
                let f = Polynomial::new(
                    Field::Rational,
                    vec![Scalar::rational(d.0, d.1), -Scalar::rational(t.0, t.1), q(1)],
                );
                Matrix::companion(&f)
            }
        }
    }

    /// `α` and `n` of the factor `(X − α)² + n`.
    pub fn alpha_n(&self) -> Option<(f64, f64)> {
        match self {
            Block::Linear(_) => None,
            Block::Quadratic { t, d } => {
                let a = t.0 as f64 / t.1 as f64 / 2.0;
                Some((a, d.0 as f64 / d.1 as f64 - a * a))
            }
        }
    }
}

/// A quadratic block `X² − tX + d` with integer `t`, `d` in the given
/// ranges and non-square discriminant.
fn quadratic_block(rng: &mut ChaCha8Rng, t_range: i64, d_range: i64) -> Block {
    loop {
        let t = rng.gen_range(-t_range..=t_range);
        let d = rng.gen_range(-d_range..=d_range);
        if !is_rational_square(t * t - 4 * d) {
            return Block::Quadratic { t: (t, 1), d: (d, 1) };
        }
    }
}

#[derive(Clone, Debug)]
pub struct SemisimpleSample {
    pub blocks: Vec<Block>,
    pub matrix: GroundMatrix,
}

fn assemble(rng: &mut ChaCha8Rng, blocks: Vec<Block>, conj_bound: i64) -> SemisimpleSample {
    let mats: Vec<_> = blocks.iter().map(Block::matrix).collect();
    let d = Matrix::block_diagonal(Field::Rational, &mats);
    let (p, p_inv) = invertible(rng, d.n(), conj_bound);
    SemisimpleSample {
        blocks,
        matrix: &(&p * &d) * &p_inv,
    }
}

/// Random block-diagonal of 1×1 and irreducible 2×2 companion blocks,
/// conjugated by a random invertible rational matrix. Never the zero matrix.
pub fn semisimple_sb2(rng: &mut ChaCha8Rng) -> SemisimpleSample {
    loop {
        let target = rng.gen_range(1..=6);
        let mut blocks = Vec::new();
        let mut size = 0;
        while size < target {
            if target - size >= 2 && rng.gen_bool(0.5) {
                blocks.push(quadratic_block(rng, 4, 6));
                size += 2;
            } else {
                blocks.push(Block::Linear(rng.gen_range(-3..=3)));
                size += 1;
            }
        }
        if blocks.iter().any(|b| !matches!(b, Block::Linear(0))) {
            return assemble(rng, blocks, 2);
        }
    }
}

pub fn semisimple_corpus(seed: u64, count: usize) -> Vec<SemisimpleSample> {
    let mut r = rng(seed);
    (0..count).map(|_| semisimple_sb2(&mut r)).collect()
}

/// Semisimple samples whose eigenvalue data satisfy `|α| + |β| ≤ 2`, with
/// `β² = n`, conjugated by small matrices so that a fixed-length Taylor sum
/// converges well.
pub fn bounded_semisimple(rng: &mut ChaCha8Rng) -> SemisimpleSample {
    loop {
        let target = rng.gen_range(1..=4);
        let mut blocks = Vec::new();
        let mut size = 0;
        while size < target {
            if target - size >= 2 && rng.gen_bool(0.5) {
                // α = k/4 and n from a list whose −4n is never a rational
                // square, so X² − 2αX + α² + n is irreducible.
                let k = rng.gen_range(-2..=2i64);
                let n_choices: [(i64, i64); 7] = [(-1, 2), (1, 2), (1, 1), (-3, 4), (3, 4), (5, 4), (-5, 4)];
                let (nn, nd) = n_choices[rng.gen_range(0..n_choices.len())];
                let alpha = k as f64 / 4.0;
                if alpha.abs() + (nn.abs() as f64 / nd as f64).sqrt() > 2.0 {
                    continue;
                }
                let d_num = k * k * nd + 16 * nn;
                let d_den = 16 * nd;
                blocks.push(Block::Quadratic { t: (k, 2), d: (d_num, d_den) });
                size += 2;
            } else {
                blocks.push(Block::Linear(rng.gen_range(-2..=2)));
                size += 1;
            }
        }
        if blocks.iter().any(|b| !matches!(b, Block::Linear(0))) {
            return assemble(rng, blocks, 1);
        }
    }
}

/// Random matrices over 𝔽_p with n ≤ 4, retried until K-regular.
pub fn k_regular_fp(rng: &mut ChaCha8Rng, p: u64) -> GroundMatrix {
    let field = Field::prime(p).unwrap();
    loop {
        let n = rng.gen_range(1..=4);
        let m = if rng.gen_bool(0.5) {
            Matrix::from_fn(&field, n, |_, _| field.from_i64(rng.gen_range(0..p as i64)))
        } else {
            // Triangular with a two-letter diagonal: repeated eigenvalues.
            let a = rng.gen_range(0..p as i64);
            let b = rng.gen_range(0..p as i64);
            Matrix::from_fn(&field, n, |i, j| {
                if i == j {
                    field.from_i64(if rng.gen_bool(0.5) { a } else { b })
                } else if i < j {
                    field.from_i64(rng.gen_range(0..p as i64))
                } else {
                    field.zero()
                }
            })
        };
        if m.is_k_regular().unwrap() {
            return m;
        }
    }
}

/// Companion matrix of the Artin–Schreier polynomial `X^p − X − 1`, which
/// is irreducible of degree p over 𝔽_p.
pub fn artin_schreier_companion(p: u64) -> GroundMatrix {
    let field = Field::prime(p).unwrap();
    let mut coeffs = vec![field.zero(); p as usize + 1];
    coeffs[0] = field.from_i64(-1);
    coeffs[1] = field.from_i64(-1);
    coeffs[p as usize] = field.one();
    Matrix::companion(&Polynomial::new(field, coeffs))
}

/// Unit axis `(a, b, c)/d` from the quadruple parametrization
/// `a² + b² + c² = d²`, never zero.
pub fn pythagorean_axis(rng: &mut ChaCha8Rng) -> [Scalar; 3] {
    loop {
        let m: i64 = rng.gen_range(-4..=4);
        let n: i64 = rng.gen_range(-4..=4);
        let p: i64 = rng.gen_range(-4..=4);
        let s: i64 = rng.gen_range(-4..=4);
        let d = m * m + n * n + p * p + s * s;
        if d == 0 {
            continue;
        }
        let a = m * m + n * n - p * p - s * s;
        let b = 2 * (m * s + n * p);
        let c = 2 * (n * s - m * p);
        debug_assert_eq!(a * a + b * b + c * c, d * d);
        return [Scalar::rational(a, d), Scalar::rational(b, d), Scalar::rational(c, d)];
    }
}

/// Skew-symmetric cross-product matrix of an axis.
pub fn skew(axis: &[Scalar; 3]) -> GroundMatrix {
    let z = q(0);
    let [a, b, c] = axis.clone();
    Matrix::from_rows(
        &Field::Rational,
        vec![
            vec![z.clone(), -c.clone(), b.clone()],
            vec![c, z.clone(), -a.clone()],
            vec![-b, a, z],
        ],
    )
    .unwrap()
}
