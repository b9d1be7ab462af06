//! Dense square matrices with exact entries.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{lcm, Polynomial};
use crate::scalar::{Field, FieldOps, QuadElement, QuadField, Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Ring> {
    n: usize,
    ctx: T::Ctx,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(ctx: &T::Ctx, n: usize) -> Self {
        Matrix {
            n,
            ctx: ctx.clone(),
            data: vec![T::zero(ctx); n * n],
        }
    }

    pub fn identity(ctx: &T::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n);
        for i in 0..n {
            m.data[i * n + i] = T::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: &T::Ctx, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        if rows.iter().flatten().any(|x| x.ctx() != *ctx) {
            return Err(Error::DimensionMismatch(
                "entries over different scalar domains".into(),
            ));
        }
        Ok(Matrix {
            n,
            ctx: ctx.clone(),
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(ctx: &T::Ctx, n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix {
            n,
            ctx: ctx.clone(),
            data,
        }
    }

    pub fn diagonal(ctx: &T::Ctx, diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ctx, n);
        for (i, x) in diag.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Ring>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            ctx: ctx.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scalar_mul(&self, k: &T) -> Self {
        Matrix {
            n: self.n,
            ctx: self.ctx.clone(),
            data: self.data.iter().map(|x| k.clone() * x.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(&self.ctx), |acc, i| acc + self.get(i, i).clone())
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero(&self.ctx);
                for k in 0..n {
                    let a = &self.data[i * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * other.data[k * n + j].clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            n,
            ctx: self.ctx.clone(),
            data,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Matrix {
            n: self.n,
            ctx: self.ctx.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other) == (other * self)
    }

    /// `Mⁿ = 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u64).is_zero()
    }

    /// `M² = M`.
    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }
}

impl<T: FieldOps> Matrix<T> {
    /// Gauss–Jordan inverse; pivots are the first nonzero entry scanning
    /// rows top-down within the current column.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(&self.ctx, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.add_row_multiple(r, col, &factor);
                inv.add_row_multiple(r, col, &factor);
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let p = a.get(rank, col).inv().expect("nonzero pivot");
            a.scale_row(rank, &p);
            for r in rank + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.add_row_multiple(r, rank, &factor);
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.n {
                self.data.swap(i * self.n + c, j * self.n + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, k: &T) {
        for c in 0..self.n {
            let v = self.data[i * self.n + c].clone();
            self.data[i * self.n + c] = v * k.clone();
        }
    }

    /// row_i -= k · row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, k: &T) {
        for c in 0..self.n {
            let v = self.data[i * self.n + c].clone() - k.clone() * self.data[j * self.n + c].clone();
            self.data[i * self.n + c] = v;
        }
    }
}

macro_rules! ref_ops {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<T: Ring> $tr<&Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            /// Panics on dimension mismatch; use the `checked_` variant otherwise.
            fn $m(self, rhs: &Matrix<T>) -> Matrix<T> {
                self.$checked(rhs).expect("dimension mismatch")
            }
        }
        impl<T: Ring> $tr for Matrix<T> {
            type Output = Matrix<T>;
            fn $m(self, rhs: Matrix<T>) -> Matrix<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
ref_ops!(Add, add, checked_add);
ref_ops!(Sub, sub, checked_sub);
ref_ops!(Mul, mul, checked_mul);

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            n: self.n,
            ctx: self.ctx.clone(),
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }
}

/// Matrix over the ground field.
pub type GroundMatrix = Matrix<Scalar>;

impl Matrix<Scalar> {
    pub fn field(&self) -> Field {
        self.ctx
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(&field, rows)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.scalar_mul(k)
    }

    pub fn embed_quad(&self, ext: &QuadField) -> Matrix<QuadElement> {
        self.map(ext, |x| ext.embed(x.clone()))
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(f: &Polynomial) -> Self {
        let field = f.field();
        let f = f.monic();
        let n = f.degree().unwrap_or(0);
        Matrix::from_fn(&field, n, |i, j| {
            if j == n - 1 {
                -f.coeff(i)
            } else if i == j + 1 {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Block-diagonal matrix.
    pub fn block_diagonal(field: Field, blocks: &[Matrix<Scalar>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Matrix::zeros(&field, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.ctx.zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }

    /// Least-degree monic annihilating polynomial, from per-basis-vector
    /// Krylov relations.
    pub fn minimal_polynomial(&self) -> Polynomial {
        let field = self.ctx;
        let n = self.n;
        let mut acc = Polynomial::one(field);
        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            let local = krylov_relation(self, e);
            acc = lcm(&acc, &local);
        }
        acc
    }

    pub fn is_k_regular(&self) -> Result<bool> {
        let p = self.ctx.characteristic();
        if p == 0 {
            return Ok(true);
        }
        let fac = self.minimal_polynomial().factor()?;
        Ok(fac
            .factors
            .iter()
            .all(|(f, _)| !(f.degree().unwrap_or(0) as u64).is_multiple_of(p)))
    }

    /// `NotKRegular` describing the first offending factor, if any.
    pub fn require_k_regular(&self) -> Result<()> {
        let p = self.ctx.characteristic();
        if p == 0 {
            return Ok(());
        }
        let fac = self.minimal_polynomial().factor()?;
        for (f, _) in &fac.factors {
            let d = f.degree().unwrap_or(0);
            if (d as u64).is_multiple_of(p) {
                return Err(Error::NotKRegular {
                    degree: d,
                    characteristic: p,
                });
            }
        }
        Ok(())
    }

    /// Squarefree minimal polynomial, for K-regular matrices.
    pub fn is_semisimple(&self) -> Result<bool> {
        self.require_k_regular()?;
        Ok(self.minimal_polynomial().is_squarefree())
    }

    pub fn splitting_bound(&self) -> Result<usize> {
        if self.n == 0 {
            return Ok(0);
        }
        self.minimal_polynomial().splitting_bound()
    }
}

/// Monic relation among `v, Mv, M²v, …` at the first linear dependence.
fn krylov_relation(m: &Matrix<Scalar>, v: Vec<Scalar>) -> Polynomial {
    let field = m.ctx;
    let n = m.n;
    // Echelon rows: (reduced vector, pivot column, combination of Krylov
    // vectors as a polynomial).
    let mut basis: Vec<(Vec<Scalar>, usize, Polynomial)> = Vec::new();
    let mut current = v;
    let mut power = Polynomial::one(field);
    loop {
        let mut w = current.clone();
        let mut comb = power.clone();
        for (row, pivot, pc) in &basis {
            if w[*pivot].is_zero() {
                continue;
            }
            let k = w[*pivot].clone();
            for c in 0..n {
                w[c] = w[c].clone() - k.clone() * row[c].clone();
            }
            comb = &comb - &pc.scale(&k);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return comb.monic(),
            Some(pivot) => {
                let inv = w[pivot].inv().expect("nonzero");
                let w: Vec<Scalar> = w.into_iter().map(|x| x * inv.clone()).collect();
                basis.push((w, pivot, comb.scale(&inv)));
            }
        }
        current = m.mul_vec(&current);
        power = &power * &Polynomial::x(field);
    }
}

/// Horner evaluation `f(M)`.
pub fn eval_poly_at_matrix(f: &Polynomial, m: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    if f.field() != m.field() {
        return Err(Error::DimensionMismatch(
            "polynomial and matrix over different fields".into(),
        ));
    }
    let n = m.n();
    let field = m.field();
    let mut acc = Matrix::zeros(&field, n);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * m) + &Matrix::identity(&field, n).scale(c);
    }
    Ok(acc)
}
