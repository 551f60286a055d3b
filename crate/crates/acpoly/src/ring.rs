//! The coefficient arithmetic the root-based algorithms are generic over.
//!
//! The univariate pipeline (Newton conversions, symmetric functions of roots,
//! filtering, squarefree decomposition, gcd) only needs ring operations,
//! multiplication by field scalars, inversion of units and a zero test. The
//! field itself is the main instance. [`Dual`] numbers extract first-order
//! coefficients of products, and the multivariate module supplies an instance
//! whose elements are polynomials known through their values at sample points.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::gpoly;
use alloc::vec::Vec;
use core::fmt::Debug;

/// A commutative algebra over a prime field.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    /// The prime field the ring is an algebra over.
    fn ctx(&self) -> FieldCtx;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem {
        self.constant(1)
    }
    /// Embeds a field element (already reduced mod p).
    fn constant(&self, c: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplies by a field scalar.
    fn scale(&self, a: &Self::Elem, c: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit; `DivisionByZero` otherwise.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// `sum_i xs[i] * ws[i]` for field scalars `ws`.
    fn lin_comb(&self, xs: &[Self::Elem], ws: &[u64]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, &w) in xs.iter().zip(ws) {
            if w != 0 {
                acc = self.add(&acc, &self.scale(x, w));
            }
        }
        acc
    }

    /// `sum_i xs[i] * ys[i]`.
    fn dot(&self, xs: &[Self::Elem], ys: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, y) in xs.iter().zip(ys) {
            acc = self.add(&acc, &self.mul(x, y));
        }
        acc
    }

    /// Product of two coefficient vectors (untrimmed, length `a + b - 1`).
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero_cheap(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        out
    }

    /// A zero test that may answer `false` for zero elements; used only to
    /// skip work. Defaults to the exact test.
    fn is_zero_cheap(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The lowest `count` coefficients of the polynomial of degree `< N`
    /// taking `values[i]` at the node `i`.
    fn interpolate_low(&self, values: &[Self::Elem], count: usize) -> Result<Vec<Self::Elem>>
    where
        Self: Sized,
    {
        gpoly::interpolate_low_generic(self, values, count)
    }
}

impl Ring for FieldCtx {
    type Elem = u64;

    #[inline]
    fn ctx(&self) -> FieldCtx {
        *self
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn constant(&self, c: u64) -> u64 {
        c
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        FieldCtx::add(self, *a, *b)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        FieldCtx::sub(self, *a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        FieldCtx::neg(self, *a)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        FieldCtx::mul(self, *a, *b)
    }
    #[inline]
    fn scale(&self, a: &u64, c: u64) -> u64 {
        FieldCtx::mul(self, *a, c)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        FieldCtx::inv(self, *a)
    }
    fn lin_comb(&self, xs: &[u64], ws: &[u64]) -> u64 {
        self.dot(xs, ws)
    }
    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        mul_u64(*self, a, b)
    }
    fn dot(&self, xs: &[u64], ys: &[u64]) -> u64 {
        FieldCtx::dot(self, xs, ys)
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        FieldCtx::pow(self, *a, e)
    }
    fn interpolate_low(&self, values: &[u64], count: usize) -> Result<Vec<u64>> {
        Ok(gpoly::interpolate_low_columns(*self, &[values], count)?.pop().unwrap_or_default())
    }
}

/// Schoolbook product with delayed reduction.
fn mul_u64(f: FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if f.p() < 1 << 32 {
        let mut acc = alloc::vec![0u128; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        acc.into_iter().map(|v| f.reduce_u128(v)).collect()
    } else {
        let mut out = alloc::vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }
}

/// Dual numbers `a + b·eps` with `eps^2 = 0` over a prime field.
///
/// Products of dual numbers carry first-order terms, so the coefficient of
/// `y` in `prod (u_i + y v_i)` is the `eps` part of `prod (u_i + eps v_i)`.
#[derive(Clone, Copy, Debug)]
pub struct Dual(pub FieldCtx);

impl Ring for Dual {
    type Elem = (u64, u64);

    fn ctx(&self) -> FieldCtx {
        self.0
    }
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn constant(&self, c: u64) -> (u64, u64) {
        (c, 0)
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.0.add(a.0, b.0), self.0.add(a.1, b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.0.sub(a.0, b.0), self.0.sub(a.1, b.1))
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.0.neg(a.0), self.0.neg(a.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = self.0;
        (f.mul(a.0, b.0), f.add(f.mul(a.0, b.1), f.mul(a.1, b.0)))
    }
    fn scale(&self, a: &(u64, u64), c: u64) -> (u64, u64) {
        (self.0.mul(a.0, c), self.0.mul(a.1, c))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn inv(&self, a: &(u64, u64)) -> Result<(u64, u64)> {
        let f = self.0;
        let i = f.inv(a.0).map_err(|_| Error::DivisionByZero)?;
        Ok((i, f.neg(f.mul(a.1, f.mul(i, i)))))
    }
    fn lin_comb(&self, xs: &[(u64, u64)], ws: &[u64]) -> (u64, u64) {
        let f = self.0;
        let (mut s0, mut s1) = (0u64, 0u64);
        for (x, &w) in xs.iter().zip(ws) {
            s0 = f.add(s0, f.mul(x.0, w));
            s1 = f.add(s1, f.mul(x.1, w));
        }
        (s0, s1)
    }
    fn interpolate_low(&self, values: &[(u64, u64)], count: usize) -> Result<Vec<(u64, u64)>> {
        let lo: Vec<u64> = values.iter().map(|v| v.0).collect();
        let hi: Vec<u64> = values.iter().map(|v| v.1).collect();
        let cols = gpoly::interpolate_low_columns(self.0, &[&lo, &hi], count)?;
        Ok(cols[0].iter().copied().zip(cols[1].iter().copied()).collect())
    }
}
