//! Arithmetic in a prime field `F_p` with `3 <= p < 2^63`.
//!
//! [`FieldCtx`] carries the modulus and is `Copy`; raw elements are plain
//! `u64` values in `[0, p)` handled through the context, which is what the
//! polynomial code uses. [`FieldElem`] bundles a value with its context for
//! the checked scalar API.

use crate::error::{Error, Result};
use core::fmt;

/// The prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    /// `floor(2^64 / p)` when `p < 2^32`, used for Barrett reduction; 0 otherwise.
    barrett: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// The default modulus used by the command-line front end.
pub const DEFAULT_PRIME: u64 = 1_000_003;

impl FieldCtx {
    /// Creates the field `F_p`, verifying that `p` is an odd prime below `2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= 1 << 63 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let barrett = if p < 1 << 32 { u64::MAX / p } else { 0 };
        Ok(FieldCtx { p, barrett })
    }

    /// The modulus.
    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Wraps a raw value (reduced mod p) as a [`FieldElem`].
    pub fn elem(&self, v: u64) -> FieldElem {
        FieldElem { value: v % self.p, ctx: *self }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.barrett != 0 {
            self.reduce_small(a * b)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    /// Reduces `x < p^2` when `p < 2^32`.
    #[inline]
    fn reduce_small(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    /// Reduces an arbitrary 128-bit accumulator.
    #[inline]
    pub fn reduce_u128(&self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    /// Reduces an arbitrary `u64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, x: i64) -> u64 {
        let r = (x as i128).rem_euclid(self.p as i128);
        r as u64
    }

    /// Maps a natural number into the field.
    #[inline]
    pub fn from_u64(&self, x: u64) -> u64 {
        if x < self.p {
            x
        } else {
            x % self.p
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on integers.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverts every entry of `xs` with a single field inversion.
    pub fn batch_inv(&self, xs: &[u64]) -> Result<alloc::vec::Vec<u64>> {
        let mut prefix = alloc::vec::Vec::with_capacity(xs.len());
        let mut acc = 1u64;
        for &x in xs {
            if x == 0 {
                return Err(Error::DivisionByZero);
            }
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv = self.inv(acc)?;
        let mut out = alloc::vec![0u64; xs.len()];
        for i in (0..xs.len()).rev() {
            out[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, xs[i]);
        }
        Ok(out)
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }

    /// Inner product `sum a_i b_i` with a single final reduction when the
    /// products fit comfortably in a 128-bit accumulator.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        let n = a.len().min(b.len());
        if self.barrett != 0 {
            // Each product is below 2^64, so 2^64 of them fit in a u128.
            let mut acc: u128 = 0;
            for i in 0..n {
                acc += (a[i] * b[i]) as u128;
            }
            self.reduce_u128(acc)
        } else {
            let mut acc = 0u64;
            for i in 0..n {
                acc = self.add(acc, self.mul(a[i], b[i]));
            }
            acc
        }
    }

    /// Checks `p > bound`.
    pub fn char_guard(&self, bound: u64) -> Result<()> {
        if self.p > bound {
            Ok(())
        } else {
            Err(Error::CharacteristicTooSmall { p: self.p, bound })
        }
    }

    /// Checks the characteristic bound of a named operation.
    pub fn guard(&self, req: Requirement) -> Result<()> {
        self.char_guard(req.bound())
    }
}

/// The characteristic each family of operations needs, in one place.
///
/// Every variant yields the bound `b` such that the operation requires `p > b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    /// Newton conversions, exact division, symmetric functions of roots,
    /// resultants, filtering and squarefree decomposition at degree `d`.
    Degree(usize),
    /// gcd of two polynomials of degree at most `d`.
    Gcd2(usize),
    /// gcd of `m` polynomials of degree at most `d`.
    GcdMany { m: usize, d: usize },
    /// lcm of `m` polynomials of degree at most `d`.
    LcmMany { m: usize, d: usize },
    /// Functions of multiplicities of two polynomials of degree at most `d`.
    Diamond2(usize),
    /// Functions of multiplicities of `m` polynomials of degree at most `d`.
    DiamondMany { m: usize, d: usize },
}

impl Requirement {
    pub fn bound(&self) -> u64 {
        let b = match *self {
            Requirement::Degree(d) => d as u128,
            Requirement::Gcd2(d) => 2 * d as u128,
            Requirement::GcdMany { m, d } => m as u128 * d as u128,
            Requirement::LcmMany { m, d } => (m as u128) * (m as u128) * d as u128,
            Requirement::Diamond2(d) => 2 * d as u128,
            Requirement::DiamondMany { m, d } => 2 * m as u128 * d as u128,
        };
        b.min(u64::MAX as u128) as u64
    }
}

/// A field element together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub value: u64,
    pub ctx: FieldCtx,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.ctx.p)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.signed(self.value))
    }
}

/// The four field operations of [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on field elements.
pub fn arith(a: FieldElem, b: FieldElem, kind: ArithKind) -> Result<FieldElem> {
    if a.ctx != b.ctx {
        return Err(Error::ModulusMismatch);
    }
    let f = a.ctx;
    let value = match kind {
        ArithKind::Add => f.add(a.value, b.value),
        ArithKind::Sub => f.sub(a.value, b.value),
        ArithKind::Mul => f.mul(a.value, b.value),
        ArithKind::Div => {
            if b.value == 0 {
                return Err(Error::DivisionByZero);
            }
            f.mul(a.value, f.pow(b.value, f.p - 2))
        }
    };
    Ok(FieldElem { value, ctx: f })
}

/// Multiplicative inverse of a field element.
pub fn inv(a: FieldElem) -> Result<FieldElem> {
    Ok(FieldElem { value: a.ctx.inv(a.value)?, ctx: a.ctx })
}

/// Succeeds iff `p > required_bound`.
pub fn char_guard(ctx: FieldCtx, required_bound: u64) -> Result<()> {
    ctx.char_guard(required_bound)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
