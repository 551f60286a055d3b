//! Dense univariate polynomials over `F_p` and their text format.
//!
//! Coefficients are stored ascending and trimmed, so the zero polynomial is
//! the empty vector and its degree is [`Degree::NegInfinity`].

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::gpoly;
use crate::ring::Ring;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Degree of a polynomial, with an explicit value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// A dense polynomial over a prime field in canonical trimmed form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.ctx.p())
    }
}

impl DensePoly {
    /// Builds a polynomial from ascending raw coefficients (reduced mod p).
    pub fn new(ctx: FieldCtx, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| ctx.reduce(c)).collect();
        gpoly::trim(&ctx, &mut coeffs);
        DensePoly { ctx, coeffs }
    }

    /// Builds a polynomial from signed integer coefficients.
    pub fn from_i64(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    /// Wraps coefficients already reduced mod p and trimmed.
    pub(crate) fn from_raw(ctx: FieldCtx, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.last() != Some(&0));
        DensePoly { ctx, coeffs }
    }

    /// Wraps reduced but possibly untrimmed coefficients.
    pub(crate) fn from_untrimmed(ctx: FieldCtx, mut coeffs: Vec<u64>) -> Self {
        gpoly::trim(&ctx, &mut coeffs);
        DensePoly { ctx, coeffs }
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        DensePoly { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        DensePoly { ctx, coeffs: vec![1] }
    }

    pub fn constant(ctx: FieldCtx, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(ctx: FieldCtx) -> Self {
        DensePoly { ctx, coeffs: vec![0, 1] }
    }

    /// `c x^k`.
    pub fn monomial(ctx: FieldCtx, c: u64, k: usize) -> Self {
        let mut v = vec![0u64; k + 1];
        v[k] = c;
        Self::new(ctx, v)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(ctx: FieldCtx, roots: &[u64]) -> Self {
        let mut acc = vec![1u64];
        for &r in roots {
            let lin = [ctx.neg(ctx.reduce(r)), 1];
            acc = ctx.poly_mul(&acc, &lin);
        }
        Self::from_raw(ctx, acc)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero mapped to 0, for size bounds.
    pub fn deg_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn same_field(&self, other: &DensePoly) {
        assert_eq!(self.ctx, other.ctx, "polynomials over different fields");
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        self.same_field(other);
        Self::from_raw(self.ctx, gpoly::add(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        self.same_field(other);
        Self::from_raw(self.ctx, gpoly::sub(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn neg(&self) -> DensePoly {
        Self::from_raw(self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        self.same_field(other);
        if self.coeffs.len().min(other.coeffs.len()) > MUL_INTERPOLATION_THRESHOLD {
            return mul_by_interpolation(self, other);
        }
        Self::from_untrimmed(self.ctx, self.ctx.poly_mul(&self.coeffs, &other.coeffs))
    }

    /// Multiplication by a field scalar.
    pub fn scale(&self, c: u64) -> DensePoly {
        Self::from_raw(self.ctx, gpoly::scale(&self.ctx, &self.coeffs, self.ctx.reduce(c)))
    }

    pub fn pow(&self, e: u64) -> DensePoly {
        Self::from_raw(self.ctx, gpoly::pow(&self.ctx, &self.coeffs, e))
    }

    /// The `r`-fold formal derivative.
    pub fn derivative(&self, r: usize) -> DensePoly {
        Self::from_raw(self.ctx, gpoly::derivative(&self.ctx, &self.coeffs, r))
    }

    pub fn eval(&self, x: u64) -> u64 {
        gpoly::eval_scalar(&self.ctx, &self.coeffs, self.ctx.reduce(x))
    }

    /// Remainder modulo a monic polynomial of positive degree.
    pub fn rem_monic(&self, f: &DensePoly) -> DensePoly {
        self.same_field(f);
        assert!(f.is_monic() && f.deg().unwrap() > 0);
        Self::from_raw(self.ctx, gpoly::rem_monic(&self.ctx, &self.coeffs, &f.coeffs))
    }

    /// Reversal at the degree: `sum a_{n-i} x^i`.
    pub fn reverse(&self) -> Result<DensePoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::from_untrimmed(self.ctx, v))
    }

    /// `(f / lc(f), lc(f))`.
    pub fn make_monic(&self) -> Result<(DensePoly, u64)> {
        let (v, lc) = gpoly::make_monic(&self.ctx, &self.coeffs)?;
        Ok((Self::from_raw(self.ctx, v), lc))
    }

    /// Parses the text format (see [`parse_poly`]).
    pub fn parse(ctx: FieldCtx, s: &str) -> Result<DensePoly> {
        parse_poly(ctx, s)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// Above this size both factors are multiplied by evaluation and interpolation.
pub const MUL_INTERPOLATION_THRESHOLD: usize = 512;

/// Multiplies by evaluating both factors at `0..=deg` and interpolating.
pub fn mul_by_interpolation(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let ctx = a.ctx;
    if a.is_zero() || b.is_zero() {
        return DensePoly::zero(ctx);
    }
    let n = a.coeffs.len() + b.coeffs.len() - 1;
    let vals: Vec<u64> = (0..n as u64).map(|x| ctx.mul(a.eval(x), b.eval(x))).collect();
    DensePoly::from_untrimmed(ctx, gpoly::interpolate(&ctx, &vals).expect("field larger than degree"))
}

fn check_fields(a: &DensePoly, b: &DensePoly) -> Result<()> {
    if a.ctx != b.ctx {
        Err(Error::ModulusMismatch)
    } else {
        Ok(())
    }
}

pub fn poly_add(f: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    check_fields(f, g)?;
    Ok(f.add(g))
}

pub fn poly_mul(f: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    check_fields(f, g)?;
    Ok(f.mul(g))
}

pub fn poly_derivative(f: &DensePoly, r: usize) -> DensePoly {
    f.derivative(r)
}

pub fn poly_eval(f: &DensePoly, point: FieldElem) -> Result<FieldElem> {
    if point.ctx != f.ctx {
        return Err(Error::ModulusMismatch);
    }
    Ok(FieldElem { value: f.eval(point.value), ctx: f.ctx })
}

pub fn reverse(f: &DensePoly) -> Result<DensePoly> {
    f.reverse()
}

pub fn make_monic(f: &DensePoly) -> Result<(DensePoly, FieldElem)> {
    let (m, lc) = f.make_monic()?;
    Ok((m, FieldElem { value: lc, ctx: f.ctx }))
}

/// The polynomial of degree `< len(evals)` through the given pairs.
pub fn interpolate_coeffs(evals: &[(FieldElem, FieldElem)]) -> Result<DensePoly> {
    let ctx = evals.first().ok_or(Error::FieldTooSmall)?.0.ctx;
    if evals.iter().any(|(x, y)| x.ctx != ctx || y.ctx != ctx) {
        return Err(Error::ModulusMismatch);
    }
    let xs: Vec<u64> = evals.iter().map(|e| e.0.value).collect();
    let mut sorted = xs.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNode);
    }
    // M(x) = prod (x - x_i), then Lagrange basis M / (x - x_i) by synthetic division.
    let m = DensePoly::from_roots(ctx, &xs).coeffs;
    let n = xs.len();
    let mut out = vec![0u64; n];
    for (i, &xi) in xs.iter().enumerate() {
        let mut q = vec![0u64; n];
        let mut carry = 0u64;
        for j in (0..n).rev() {
            carry = ctx.add(m[j + 1], ctx.mul(carry, xi));
            q[j] = carry;
        }
        let denom = gpoly::eval_scalar(&ctx, &q, xi);
        let w = ctx.mul(evals[i].1.value, ctx.inv(denom)?);
        for j in 0..n {
            out[j] = ctx.add(out[j], ctx.mul(w, q[j]));
        }
    }
    Ok(DensePoly::from_untrimmed(ctx, out))
}

/// The first nonzero entry, scanning from the highest coefficient; 0 if none.
pub fn leading_coeff_select(coeffs_high_to_low: &[FieldElem]) -> Option<FieldElem> {
    let first = coeffs_high_to_low.first()?;
    Some(
        coeffs_high_to_low
            .iter()
            .copied()
            .find(|c| c.value != 0)
            .unwrap_or(FieldElem { value: 0, ctx: first.ctx }),
    )
}

/// `e_d(values)` by expanding `prod (1 + y v_i)` at the nodes `0..=n` and
/// interpolating the coefficient of `y^d`.
pub fn esym_values<R: Ring>(r: &R, values: &[R::Elem], d: usize) -> Result<R::Elem> {
    let n = values.len();
    if d > n {
        return Ok(r.zero());
    }
    if d == 0 {
        return Ok(r.one());
    }
    let evals: Vec<R::Elem> = (0..=n as u64)
        .map(|y| {
            values
                .iter()
                .fold(r.one(), |acc, v| r.mul(&acc, &r.add(&r.one(), &r.scale(v, y))))
        })
        .collect();
    let w = gpoly::coeff_weights(r.ctx(), n + 1, d)?;
    Ok(r.lin_comb(&evals, &w))
}

/// Formats in expression syntax with descending powers, e.g. `x^2-3*x+2`.
pub fn format_poly(f: &DensePoly) -> String {
    use core::fmt::Write;
    if f.is_zero() {
        return String::from("0");
    }
    let ctx = f.ctx;
    let mut s = String::new();
    for (i, &c) in f.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let v = ctx.signed(c);
        let (neg, mag) = if v < 0 { (true, (-v) as u128) } else { (false, v as u128) };
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        match (i, mag) {
            (0, m) => write!(s, "{m}").unwrap(),
            (_, 1) => {}
            (_, m) => write!(s, "{m}*").unwrap(),
        }
        match i {
            0 => {}
            1 => s.push('x'),
            k => write!(s, "x^{k}").unwrap(),
        }
    }
    s
}

/// Parses either an ascending comma list (`2,3,1`) or an expression in `x`
/// (`x^2+3*x+2`). Integer literals are reduced mod p.
pub fn parse_poly(ctx: FieldCtx, s: &str) -> Result<DensePoly> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse(String::from("empty polynomial")));
    }
    if t.contains(',') && !t.contains('x') {
        let coeffs = t
            .split(',')
            .map(|tok| parse_signed_int(ctx, tok))
            .collect::<Result<Vec<u64>>>()?;
        return Ok(DensePoly::new(ctx, coeffs));
    }
    parse_expr(ctx, &t)
}

fn parse_unsigned_int(ctx: FieldCtx, tok: &str) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(alloc::format!("bad integer literal '{tok}'")));
    }
    let mut acc = 0u64;
    for b in tok.bytes() {
        acc = ctx.add(ctx.mul(acc, 10 % ctx.p()), ctx.reduce((b - b'0') as u64));
    }
    Ok(acc)
}

fn parse_signed_int(ctx: FieldCtx, tok: &str) -> Result<u64> {
    match tok.strip_prefix('-') {
        Some(rest) => Ok(ctx.neg(parse_unsigned_int(ctx, rest)?)),
        None => parse_unsigned_int(ctx, tok.strip_prefix('+').unwrap_or(tok)),
    }
}

fn parse_expr(ctx: FieldCtx, t: &str) -> Result<DensePoly> {
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut coeffs: Vec<u64> = Vec::new();
    let err = |msg: &str| Error::Parse(alloc::format!("{msg} in '{t}'"));
    while i < bytes.len() {
        let mut neg = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            neg = bytes[i] == b'-';
            i += 1;
        } else if i != 0 {
            return Err(err("expected '+' or '-'"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let has_num = i > start;
        let mut c = if has_num { parse_unsigned_int(ctx, &t[start..i])? } else { 1 };
        let mut power = 0usize;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_num {
                return Err(err("'*' without a coefficient"));
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != b'x' {
                return Err(err("expected 'x' after '*'"));
            }
        }
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = t[ps..i].parse().map_err(|_| err("bad exponent"))?;
            }
        } else if !has_num {
            return Err(err("empty term"));
        }
        if neg {
            c = ctx.neg(c);
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = ctx.add(coeffs[power], c);
    }
    Ok(DensePoly::from_untrimmed(ctx, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn p(s: &str) -> DensePoly {
        parse_poly(f(), s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("x+1").mul(&p("x+2")), p("x^2+3*x+2"));
        assert_eq!(p("x^2+3*x+2").derivative(1), p("2*x+3"));
        assert!(p("x^2-1").add(&p("1-x^2")).is_zero());
        assert_eq!(p("x^2-1").add(&p("1-x^2")).degree(), Degree::NegInfinity);
    }

    #[test]
    fn eval_examples() {
        let g = p("x^2+3*x+2");
        assert_eq!(g.eval(1), 6);
        assert_eq!(g.eval(f().neg(1)), 0);
        assert_eq!(DensePoly::zero(f()).eval(17), 0);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p("x^2+3*x+2").reverse().unwrap(), p("2*x^2+3*x+1"));
        assert_eq!(p("x").reverse().unwrap(), p("1"));
        let g = p("x^2+3*x+2");
        assert_eq!(g.reverse().unwrap().reverse().unwrap(), g);
        assert_eq!(DensePoly::zero(f()).reverse(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn interpolation_examples() {
        let ctx = f();
        let pairs = |v: &[(u64, u64)]| -> Vec<(FieldElem, FieldElem)> {
            v.iter().map(|&(a, b)| (ctx.elem(a), ctx.elem(b))).collect()
        };
        assert_eq!(interpolate_coeffs(&pairs(&[(0, 2), (1, 6), (2, 12)])).unwrap(), p("x^2+3*x+2"));
        assert_eq!(interpolate_coeffs(&pairs(&[(5, 7)])).unwrap(), p("7"));
        assert!(interpolate_coeffs(&pairs(&[(0, 0), (1, 0), (2, 0)])).unwrap().is_zero());
        assert_eq!(interpolate_coeffs(&pairs(&[(1, 0), (1, 3)])), Err(Error::DuplicateNode));
    }

    #[test]
    fn leading_coefficient_examples() {
        let ctx = FieldCtx::new(101).unwrap();
        let v = |xs: &[u64]| xs.iter().map(|&x| ctx.elem(x)).collect::<Vec<_>>();
        assert_eq!(leading_coeff_select(&v(&[0, 5, 3])).unwrap().value, 5);
        assert_eq!(leading_coeff_select(&v(&[0, 0, 0])).unwrap().value, 0);
        assert_eq!(leading_coeff_select(&v(&[7])).unwrap().value, 7);
    }

    #[test]
    fn make_monic_examples() {
        assert_eq!(p("2*x^2+6*x+4").make_monic().unwrap(), (p("x^2+3*x+2"), 2));
        assert_eq!(p("x^2+1").make_monic().unwrap(), (p("x^2+1"), 1));
        assert_eq!(p("5").make_monic().unwrap(), (p("1"), 5));
    }

    #[test]
    fn esym_examples() {
        let ctx = f();
        assert_eq!(esym_values(&ctx, &[1, 2, 3], 2).unwrap(), 11);
        assert_eq!(esym_values(&ctx, &[4, 9], 0).unwrap(), 1);
        assert_eq!(esym_values(&ctx, &[1, 2, 3], 4).unwrap(), 0);
    }

    #[test]
    fn text_format() {
        let ctx = f();
        assert_eq!(p("2,3,1"), p("x^2+3*x+2"));
        assert_eq!(format_poly(&p("x^2-3*x+2")), "x^2-3*x+2");
        assert_eq!(format_poly(&p("-x")), "-x");
        assert_eq!(format_poly(&DensePoly::zero(ctx)), "0");
        assert_eq!(p("-1,0,1"), p("x^2-1"));
        assert_eq!(p("3x^2 + 2 x"), p("0,2,3"));
        assert_eq!(p("1000004"), p("1"));
        assert!(parse_poly(ctx, "x^").is_err());
        assert!(parse_poly(ctx, "x+*2").is_err());
        assert!(parse_poly(ctx, "").is_err());
        assert!(parse_poly(ctx, "1,,2").is_err());
    }

    #[test]
    fn large_products_agree() {
        let ctx = f();
        let a = DensePoly::new(ctx, (0..600u64).map(|i| i * i + 7).collect());
        let b = DensePoly::new(ctx, (0..700u64).map(|i| 3 * i + 1).collect());
        let school = DensePoly::from_untrimmed(ctx, ctx.poly_mul(a.coeffs(), b.coeffs()));
        assert_eq!(a.mul(&b), school);
        assert_eq!(mul_by_interpolation(&a, &b), school);
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = DensePoly> {
        proptest::collection::vec(0u64..1_000_003, 0..max_len).prop_map(|v| DensePoly::new(f(), v))
    }

    fn brute_esym(ctx: FieldCtx, v: &[u64], d: usize) -> u64 {
        let n = v.len();
        let mut total = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == d {
                let prod = (0..n).filter(|i| mask >> i & 1 == 1).fold(1, |a, i| ctx.mul(a, v[i]));
                total = ctx.add(total, prod);
            }
        }
        total
    }

    proptest! {
        #[test]
        fn interpolation_round_trip(g in arb_poly(65)) {
            let ctx = f();
            let n = g.coeffs().len().max(1);
            let pts: Vec<_> = (0..n as u64).map(|x| (ctx.elem(x * 7919 + 3), ctx.elem(g.eval(x * 7919 + 3)))).collect();
            prop_assert_eq!(interpolate_coeffs(&pts).unwrap(), g);
        }

        #[test]
        fn degree_additivity(a in arb_poly(20), b in arb_poly(20)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).deg().unwrap(), a.deg().unwrap() + b.deg().unwrap());
        }

        #[test]
        fn esym_matches_subsets(v in proptest::collection::vec(0u64..1_000_003, 0..=12)) {
            let ctx = f();
            for d in 0..=v.len() + 1 {
                prop_assert_eq!(esym_values(&ctx, &v, d).unwrap(), brute_esym(ctx, &v, d));
            }
        }

        #[test]
        fn reversal_multiplicative(a in arb_poly(15), b in arb_poly(15)) {
            prop_assume!(a.coeff(0) != 0 && b.coeff(0) != 0);
            prop_assert_eq!(a.mul(&b).reverse().unwrap(), a.reverse().unwrap().mul(&b.reverse().unwrap()));
        }

        #[test]
        fn text_round_trip(a in arb_poly(12)) {
            let s = format_poly(&a);
            prop_assert_eq!(parse_poly(f(), &s).unwrap(), a);
        }
    }
}
