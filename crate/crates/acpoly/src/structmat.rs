//! Resultants, discriminants, remainders, and inverses of Sylvester, Bézout
//! and triangular Toeplitz matrices.
//!
//! The scalar quantities are products over roots: `res(f, g) = prod g(alpha_i)`
//! for monic `f`, and `disc(f) = (-1)^C(n,2) prod f'(alpha_i)`.
//!
//! Remainders and Sylvester adjugate columns are Lagrange interpolants over
//! the roots of one input, scaled by `prod f'(alpha_i)` to clear the
//! denominators. A sum `sum_i w_i prod_{j != i} v_j` of that shape is the
//! first-order part of `prod_i (v_i + eps w_i)` with `eps^2 = 0`, and with
//! `v_i = V(alpha_i)` it equals `sum_i w(alpha_i) R(alpha_i)` for the single
//! residue `R = sum_k (-1)^(k+1) e_{n-k}(v) V^(k-1) mod f`. Evaluating at `n`
//! points `x0` and interpolating gives the polynomial.
//!
//! When both scaling products vanish (repeated roots on both sides), the
//! direct path falls back to classical elimination.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::newton;
use crate::ring::Dual;
use crate::symroots::{interpolate_grid, Roots};
use crate::upoly::DensePoly;
use alloc::vec;
use alloc::vec::Vec;

pub use crate::matrix::Matrix;

fn same_ctx(a: &DensePoly, b: &DensePoly) -> Result<()> {
    if a.ctx() != b.ctx() {
        return Err(Error::ModulusMismatch);
    }
    Ok(())
}

fn monic_input(f: &DensePoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

fn sign(ctx: FieldCtx, odd: bool, v: u64) -> u64 {
    if odd {
        ctx.neg(v)
    } else {
        v
    }
}

/// The `(n + m) x (n + m)` Sylvester matrix: column `j < m` holds the
/// coefficients of `x^(m-1-j) f`, column `m + j` those of `x^(n-1-j) g`, and
/// row `i` corresponds to `x^(n+m-1-i)`.
pub fn sylvester_matrix(f: &DensePoly, g: &DensePoly) -> Result<Matrix> {
    same_ctx(f, g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    let mut s = Matrix::zeros(f.ctx(), n + m, n + m);
    for j in 0..m {
        for t in 0..=n {
            s.set(j + t, j, f.coeff(n - t));
        }
    }
    for j in 0..n {
        for t in 0..=m {
            s.set(j + t, m + j, g.coeff(m - t));
        }
    }
    Ok(s)
}

/// `res(f, g) = prod_i g(alpha_i)` for monic `f`.
pub fn resultant(f: &DensePoly, g: &DensePoly) -> Result<u64> {
    same_ctx(f, g)?;
    monic_input(f)?;
    let ctx = f.ctx();
    let n = f.deg_or_zero();
    ctx.guard(Requirement::Degree(n))?;
    Roots::new(&ctx, f.coeffs())?.value_esym(g.coeffs(), n)
}

/// The resultant of `a` and `b` read with formal degrees `na >= deg a` and
/// `mb >= deg b`, as the determinant of the Sylvester matrix of that shape.
pub(crate) fn resultant_formal(ctx: FieldCtx, a: &[u64], na: usize, b: &[u64], mb: usize) -> Result<u64> {
    let a = gpoly::trimmed(&ctx, a.to_vec());
    let b = gpoly::trimmed(&ctx, b.to_vec());
    let b_top = b.get(mb).copied().unwrap_or(0);
    if a.is_empty() {
        return Ok(if mb == 0 { ctx.pow(b.first().copied().unwrap_or(0), na as u64) } else { 0 });
    }
    let da = a.len() - 1;
    // Leading zeros of `a` contribute (-1)^((na - da) mb) b_mb^(na - da).
    let drop = ctx.pow(b_top, (na - da) as u64);
    let drop = sign(ctx, ((na - da) * mb) % 2 == 1, drop);
    if drop == 0 {
        return Ok(0);
    }
    let (monic, lc) = gpoly::make_monic(&ctx, &a)?;
    let prod = Roots::new(&ctx, &monic)?.value_esym(&b, da)?;
    Ok(ctx.mul(drop, ctx.mul(ctx.pow(lc, mb as u64), prod)))
}

/// `disc(f) = (-1)^C(n,2) res(f, f')`.
pub fn discriminant(f: &DensePoly) -> Result<u64> {
    monic_input(f)?;
    let ctx = f.ctx();
    let n = f.deg_or_zero();
    ctx.guard(Requirement::Degree(n))?;
    let prod = Roots::new(&ctx, f.coeffs())?.value_esym(f.derivative(1).coeffs(), n)?;
    Ok(sign(ctx, (n * n.saturating_sub(1) / 2) % 2 == 1, prod))
}

/// `prod_i p'(gamma_i)` over the roots of the monic `p`.
fn derivative_product(roots: &Roots<'_, FieldCtx>) -> Result<u64> {
    let p = roots.poly();
    let dp = gpoly::derivative(roots.ring(), p, 1);
    roots.value_esym(&dp, roots.degree())
}

/// `f mod g` for monic `g`.
pub fn remainder(f: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    same_ctx(f, g)?;
    monic_input(g)?;
    let ctx = f.ctx();
    let m = g.deg_or_zero();
    ctx.guard(Requirement::Degree(m.max(f.deg_or_zero())))?;
    if m == 0 {
        return Ok(DensePoly::zero(ctx));
    }
    if f.deg().is_none_or(|d| d < m) {
        return Ok(f.clone());
    }
    let roots = Roots::new(&ctx, g.coeffs())?;
    let scale = derivative_product(&roots)?;
    if scale == 0 {
        return Ok(DensePoly::new(ctx, gpoly::rem_monic(&ctx, f.coeffs(), g.coeffs())));
    }
    // eps part of prod ((x0 - beta) g'(beta) + eps f(beta)) at x0 = 0..m-1.
    let dual = Dual(ctx);
    let lifted: Vec<(u64, u64)> = g.coeffs().iter().map(|&c| (c, 0)).collect();
    let droots = Roots::new(&dual, &lifted)?;
    let dg = g.derivative(1);
    let values: Vec<u64> = (0..m as u64)
        .map(|x0| {
            let v = DensePoly::new(ctx, vec![x0, ctx.neg(1)]).mul(&dg);
            let len = v.coeffs().len().max(f.coeffs().len());
            let h: Vec<(u64, u64)> = (0..len).map(|i| (v.coeff(i), f.coeff(i))).collect();
            Ok(droots.value_esym(&h, m)?.1)
        })
        .collect::<Result<_>>()?;
    let rho = gpoly::interpolate(&ctx, &values)?;
    Ok(DensePoly::new(ctx, rho).scale(ctx.inv(scale)?))
}

/// `num / den` for monic `den` dividing `num`.
fn exact_quotient(num: &DensePoly, den: &DensePoly) -> Result<DensePoly> {
    if num.is_zero() {
        return Ok(DensePoly::zero(num.ctx()));
    }
    let (monic, lc) = num.make_monic()?;
    Ok(newton::exact_div(&monic, den)?.scale(lc))
}

/// `(q, r)` with `f = q g + r` and `deg r < deg g`, for monic `g`.
pub fn div_rem(f: &DensePoly, g: &DensePoly) -> Result<(DensePoly, DensePoly)> {
    let r = remainder(f, g)?;
    let q = exact_quotient(&f.sub(&r), g)?;
    Ok((q, r))
}

/// Over the roots `gamma_i` of the monic `p` (degree `d`), the polynomials
/// `S_k(x) = sum_i gamma_i^k prod_{j != i} u(gamma_j) (x - gamma_j)` for
/// `k < count`, together with `D = prod p'(gamma_i)`. `None` when `D = 0`.
fn lagrange_columns(ctx: FieldCtx, p: &[u64], u: &[u64], count: usize) -> Result<Option<(u64, Vec<DensePoly>)>> {
    let roots = Roots::new(&ctx, p)?;
    let d = roots.degree();
    if d == 0 {
        return Ok(Some((1, vec![DensePoly::zero(ctx); count])));
    }
    let scale = derivative_product(&roots)?;
    if scale == 0 {
        return Ok(None);
    }
    let mut table = vec![Vec::with_capacity(d); count];
    for x0 in 0..d as u64 {
        let v = gpoly::mul(&ctx, &[x0, ctx.neg(1)], u);
        let powers = roots.residue_powers(&v, d);
        let mut ps = vec![ctx.from_u64(d as u64)];
        ps.extend(powers.iter().skip(1).map(|q| roots.trace(q)));
        let e = newton::esyms_from_power_sums(&ctx, &ps, d)?;
        let mut rres = vec![0u64; d];
        for k in 1..=d {
            let w = sign(ctx, k % 2 == 0, e[d - k]);
            for (acc, &c) in rres.iter_mut().zip(&powers[k - 1]) {
                *acc = ctx.add(*acc, ctx.mul(w, c));
            }
        }
        for column in table.iter_mut() {
            column.push(roots.trace(&rres));
            roots.shift(&mut rres);
        }
    }
    let polys = table
        .iter()
        .map(|vals| Ok(DensePoly::new(ctx, gpoly::interpolate(&ctx, vals)?)))
        .collect::<Result<_>>()?;
    Ok(Some((scale, polys)))
}

/// For `k < count`, the pairs `(a_k, b_k)` with `a_k f + b_k g = res x^k`,
/// `deg a_k < deg g`, `deg b_k < deg f`; `None` when both scaling products
/// vanish.
fn cofactor_pairs(f: &DensePoly, g: &DensePoly, res: u64, count: usize) -> Result<Option<Vec<(DensePoly, DensePoly)>>> {
    let ctx = f.ctx();
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    let a_side = lagrange_columns(ctx, g.coeffs(), f.mul(&g.derivative(1)).coeffs(), count)?;
    let b_side = lagrange_columns(ctx, f.coeffs(), g.mul(&f.derivative(1)).coeffs(), count)?;
    let target = |k: usize| DensePoly::monomial(ctx, res, k);
    let mut out = Vec::with_capacity(count);
    match (a_side, b_side) {
        (Some((da, sa)), Some((db, sb))) => {
            let (ia, ib) = (ctx.inv(da)?, ctx.inv(db)?);
            let sa_sign = sign(ctx, (n * m) % 2 == 1, ia);
            for (a, b) in sa.iter().zip(&sb) {
                out.push((a.scale(sa_sign), b.scale(ib)));
            }
        }
        (Some((da, sa)), None) => {
            let ia = sign(ctx, (n * m) % 2 == 1, ctx.inv(da)?);
            for (k, a) in sa.iter().enumerate() {
                let a = a.scale(ia);
                let b = exact_quotient(&target(k).sub(&a.mul(f)), g)?;
                out.push((a, b));
            }
        }
        (None, Some((db, sb))) => {
            let ib = ctx.inv(db)?;
            for (k, b) in sb.iter().enumerate() {
                let b = b.scale(ib);
                let a = exact_quotient(&target(k).sub(&b.mul(g)), f)?;
                out.push((a, b));
            }
        }
        (None, None) => return Ok(None),
    }
    Ok(Some(out))
}

/// The adjugate of `Syl(f, g)` for monic `f` and `g`: column `l` holds the
/// coefficients of `a, b` with `a f + b g = res(f, g) x^(n+m-1-l)`.
pub fn sylvester_adjugate(f: &DensePoly, g: &DensePoly) -> Result<Matrix> {
    same_ctx(f, g)?;
    monic_input(f)?;
    monic_input(g)?;
    let ctx = f.ctx();
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    ctx.guard(Requirement::Degree(n.max(m)))?;
    let res = resultant(f, g)?;
    let size = n + m;
    let Some(pairs) = cofactor_pairs(f, g, res, size)? else {
        return sylvester_matrix(f, g)?.adjugate();
    };
    let mut adj = Matrix::zeros(ctx, size, size);
    for (k, (a, b)) in pairs.iter().enumerate() {
        let col = size - 1 - k;
        for i in 0..m {
            adj.set(i, col, a.coeff(m - 1 - i));
        }
        for i in 0..n {
            adj.set(m + i, col, b.coeff(n - 1 - i));
        }
    }
    Ok(adj)
}

/// `Syl(f, g)^(-1)`; `SingularMatrix` when `res(f, g) = 0`.
pub fn sylvester_inverse(f: &DensePoly, g: &DensePoly) -> Result<Matrix> {
    let res = resultant(f, g)?;
    if res == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(sylvester_adjugate(f, g)?.scale(f.ctx().inv(res)?))
}

/// The unique `(a, b)` with `a f + b g = 1`, `deg a < deg g`, `deg b < deg f`.
pub fn bezout_coeffs_coprime(f: &DensePoly, g: &DensePoly) -> Result<(DensePoly, DensePoly)> {
    same_ctx(f, g)?;
    monic_input(f)?;
    let ctx = f.ctx();
    if g.is_zero() {
        return if f.deg_or_zero() == 0 { Ok((DensePoly::one(ctx), DensePoly::zero(ctx))) } else { Err(Error::NotCoprime) };
    }
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    ctx.guard(Requirement::Degree(n + m))?;
    if m == 0 {
        return Ok((DensePoly::zero(ctx), DensePoly::constant(ctx, ctx.inv(g.lead())?)));
    }
    if n == 0 {
        return Ok((DensePoly::one(ctx), DensePoly::zero(ctx)));
    }
    let (gm, lc) = g.make_monic()?;
    let res = resultant(f, &gm)?;
    if res == 0 {
        return Err(Error::NotCoprime);
    }
    let (a, b) = match cofactor_pairs(f, &gm, res, 1)? {
        Some(mut pairs) => pairs.remove(0),
        None => {
            let adj = sylvester_adjugate(f, &gm)?;
            let last = n + m - 1;
            (adj.column_poly_desc(last, 0..m), adj.column_poly_desc(last, m..n + m))
        }
    };
    let ir = ctx.inv(res)?;
    Ok((a.scale(ir), b.scale(ctx.mul(ir, ctx.inv(lc)?))))
}

/// `Bez_n(f, g)`: entry `(i, j)` is the coefficient of `x^i y^j` in
/// `(f(x) g(y) - f(y) g(x)) / (x - y)`. For monic `f` of degree `n` its
/// determinant is `(-1)^C(n,2) res(f, g)`.
pub fn bezout_matrix(f: &DensePoly, g: &DensePoly, n: usize) -> Result<Matrix> {
    same_ctx(f, g)?;
    let ctx = f.ctx();
    if n == 0 {
        return Err(Error::InvalidArgument("Bezout matrix order must be positive".into()));
    }
    if f.deg_or_zero() > n || g.deg_or_zero() > n {
        return Err(Error::DegreeTooHigh);
    }
    ctx.guard(Requirement::Degree(n))?;
    // Rows of `by_y[y0]` are the x-coefficients of the quotient at y = y0.
    let by_y: Vec<Vec<u64>> = (0..n as u64)
        .map(|y0| {
            let num = g.scale(f.eval(y0)).sub(&f.scale(g.eval(y0))).neg();
            synthetic_div(ctx, num.coeffs(), y0, n)
        })
        .collect();
    let mut b = Matrix::zeros(ctx, n, n);
    for i in 0..n {
        let column: Vec<u64> = by_y.iter().map(|row| row[i]).collect();
        for (j, c) in gpoly::interpolate_low(&ctx, &column, n)?.into_iter().enumerate() {
            b.set(i, j, c);
        }
    }
    Ok(b)
}

/// The quotient of `p` by `x - c` (exact), padded to `len` coefficients.
fn synthetic_div(ctx: FieldCtx, p: &[u64], c: u64, len: usize) -> Vec<u64> {
    let mut q = vec![0u64; len.max(p.len().saturating_sub(1))];
    let mut carry = 0u64;
    for k in (1..p.len()).rev() {
        carry = ctx.add(p[k], ctx.mul(c, carry));
        q[k - 1] = carry;
    }
    q.truncate(len);
    q
}

/// `Bez_n(f, g)^(-1)` for monic `f` of degree `n` and `deg g <= n`: the
/// Hankel matrix of `h_1, ..., h_(2n-1)` where `sum h_i x^i` expands
/// `x^n p(1/x) / (x^n f(1/x))` and `p g = 1 mod f`.
pub fn bezout_inverse(f: &DensePoly, g: &DensePoly) -> Result<Matrix> {
    same_ctx(f, g)?;
    monic_input(f)?;
    let ctx = f.ctx();
    let n = f.deg_or_zero();
    if n == 0 {
        return Err(Error::InvalidArgument("Bezout matrix order must be positive".into()));
    }
    if g.deg_or_zero() > n {
        return Err(Error::DegreeTooHigh);
    }
    let p = match bezout_coeffs_coprime(f, g) {
        Ok((_, b)) => b,
        Err(Error::NotCoprime) => return Err(Error::SingularMatrix),
        Err(e) => return Err(e),
    };
    let len = 2 * n;
    let num: Vec<u64> = (0..len).map(|i| if i <= n { p.coeff(n - i) } else { 0 }).collect();
    let h = series_div(ctx, &num, &f.reverse()?.into_coeffs(), len);
    let mut inv = Matrix::zeros(ctx, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, h[i + j + 1]);
        }
    }
    Ok(inv)
}

/// The first `len` coefficients of `num / den` for `den(0) = 1`, through the
/// truncated geometric series of `1 / den`.
fn series_div(ctx: FieldCtx, num: &[u64], den: &[u64], len: usize) -> Vec<u64> {
    let mut tail = den.to_vec();
    tail[0] = 0;
    tail.truncate(len);
    let mut inv = vec![1u64];
    for _ in 1..len {
        let mut next = gpoly::mul(&ctx, &tail, &inv);
        next.truncate(len);
        next = next.iter().map(|&c| ctx.neg(c)).collect();
        if next.is_empty() {
            next.push(0);
        }
        next[0] = ctx.add(next[0], 1);
        inv = next;
    }
    let mut out = gpoly::mul(&ctx, num, &inv);
    out.resize(len, 0);
    out
}

/// Inverse of an upper-triangular Toeplitz matrix, read off the Sylvester
/// inverse of `x^n + sum a_i x^i` and `x^n`.
pub fn toeplitz_inverse(a: &Matrix) -> Result<Matrix> {
    let ctx = a.ctx;
    let n = a.rows;
    if !a.is_square() || n == 0 {
        return Err(Error::InvalidArgument("square matrix required".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if j >= i { a.get(0, j - i) } else { 0 };
            if a.get(i, j) != expect {
                return Err(Error::InvalidArgument("matrix is not upper-triangular Toeplitz".into()));
            }
        }
    }
    if a.get(0, 0) == 0 {
        return Err(Error::SingularMatrix);
    }
    ctx.guard(Requirement::Degree(2 * n))?;
    let mut fc: Vec<u64> = a.row(0).to_vec();
    fc.push(1);
    let f = DensePoly::new(ctx, fc);
    let g = DensePoly::monomial(ctx, 1, n);
    Ok(sylvester_inverse(&f, &g)?.block(0, n, n, n))
}

/// Composition of root sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeMode {
    /// Roots `alpha_i + beta_j`.
    Sum,
    /// Roots `alpha_i beta_j`.
    Product,
}

/// `prod_{i,j} (x - (alpha_i + beta_j))` or `prod_{i,j} (x - alpha_i beta_j)`,
/// from `res_y(f(y), g(x - y))` or `res_y(f(y), y^m g(x / y))` on a grid of
/// `x` values.
pub fn composed(f: &DensePoly, g: &DensePoly, mode: ComposeMode) -> Result<DensePoly> {
    same_ctx(f, g)?;
    monic_input(f)?;
    monic_input(g)?;
    let ctx = f.ctx();
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    let total = n * m;
    ctx.guard(Requirement::Degree(total))?;
    if total == 0 {
        return Ok(DensePoly::one(ctx));
    }
    let roots = Roots::new(&ctx, f.coeffs())?;
    let values: Vec<u64> = (0..=total as u64)
        .map(|x0| {
            let in_y: Vec<u64> = match mode {
                ComposeMode::Sum => {
                    let shift = [x0, ctx.neg(1)];
                    g.coeffs().iter().rev().fold(Vec::new(), |acc, &c| gpoly::add(&ctx, &gpoly::mul(&ctx, &acc, &shift), &[c]))
                }
                ComposeMode::Product => {
                    let mut pw = 1;
                    let mut v = vec![0u64; m + 1];
                    for k in 0..=m {
                        v[m - k] = ctx.mul(g.coeff(k), pw);
                        pw = ctx.mul(pw, x0);
                    }
                    v
                }
            };
            roots.value_esym(&in_y, n)
        })
        .collect::<Result<_>>()?;
    Ok(DensePoly::new(ctx, gpoly::interpolate(&ctx, &values)?))
}

/// A polynomial in `x` and `y`; `coeffs[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    pub ctx: FieldCtx,
    pub coeffs: Vec<Vec<u64>>,
}

impl BivariatePoly {
    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let f = self.ctx;
        self.coeffs.iter().rev().fold(0, |acc, row| {
            let inner = row.iter().rev().fold(0, |a, &c| f.add(f.mul(a, y), c));
            f.add(f.mul(acc, x), inner)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|&c| c == 0))
    }

    /// The nonzero terms `(i, j, c)` in increasing lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

/// The implicit equation `res_t(x h(t) - f(t), y h(t) - g(t))` of the curve
/// `(f / h, g / h)`, scaled so that its lexicographically last term has
/// coefficient 1.
pub fn implicitize(f: &DensePoly, g: &DensePoly, h: &DensePoly) -> Result<BivariatePoly> {
    same_ctx(f, g)?;
    same_ctx(f, h)?;
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    let na = f.deg_or_zero().max(h.deg_or_zero());
    let mb = g.deg_or_zero().max(h.deg_or_zero());
    ctx.guard(Requirement::Degree(na.max(mb)))?;
    let mut grid = vec![vec![0u64; na + 1]; mb + 1];
    for (x0, row) in grid.iter_mut().enumerate() {
        let a = h.scale(x0 as u64).sub(f);
        for (y0, cell) in row.iter_mut().enumerate() {
            let b = h.scale(y0 as u64).sub(g);
            *cell = resultant_formal(ctx, a.coeffs(), na, b.coeffs(), mb)?;
        }
    }
    let coeffs = interpolate_grid(ctx, &grid)?;
    let mut r = BivariatePoly { ctx, coeffs };
    // A constant carries no curve: either the resultant vanishes identically
    // or every input is constant and the parameterization is a single point.
    let lead = match r.terms().last() {
        Some(&(i, j, c)) if i + j > 0 => c,
        _ => return Err(Error::DegenerateParameterization),
    };
    let inv = ctx.inv(lead)?;
    for row in r.coeffs.iter_mut() {
        for c in row.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, MultiplicityProfile, ProfileEntry};
    use proptest::prelude::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn poly(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(ctx(), c)
    }

    fn roots(rs: &[u64]) -> DensePoly {
        DensePoly::from_roots(ctx(), rs)
    }

    #[test]
    fn sylvester_layout() {
        let c = ctx();
        let s = sylvester_matrix(&poly(&[-1, 1]), &poly(&[-2, 1])).unwrap();
        assert_eq!(s, Matrix::from_rows_i64(c, &[&[1, 1], &[-1, -2]]));
        let s = sylvester_matrix(&poly(&[2, 3, 1]), &poly(&[5, 1])).unwrap();
        assert_eq!((s.rows, s.cols), (3, 3));
        let f = poly(&[2, 3, 1]);
        assert_eq!(oracle::bareiss_det(&sylvester_matrix(&f, &f).unwrap()), 0);
    }

    #[test]
    fn resultant_examples() {
        let c = ctx();
        assert_eq!(resultant(&poly(&[-1, 0, 1]), &poly(&[-2, 1])).unwrap(), 3);
        assert_eq!(resultant(&poly(&[-1, 1]), &poly(&[-1, 0, 1])).unwrap(), 0);
        assert_eq!(resultant(&poly(&[2, 3, 1]), &poly(&[1])).unwrap(), 1);
        assert_eq!(discriminant(&poly(&[2, 3, 1])).unwrap(), 1);
        assert_eq!(discriminant(&poly(&[1, -2, 1])).unwrap(), 0);
        assert_eq!(discriminant(&poly(&[2, -3, 1])).unwrap(), 1);
        // b^2 - 4ac for x^2 + 5x + 1
        assert_eq!(discriminant(&poly(&[1, 5, 1])).unwrap(), c.from_i64(21));
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(remainder(&poly(&[0, 0, 0, 1]), &poly(&[-1, 0, 1])).unwrap(), poly(&[0, 1]));
        let f = poly(&[2, 3, 1]);
        assert!(remainder(&f, &f).unwrap().is_zero());
        assert!(remainder(&f, &poly(&[1, 1])).unwrap().is_zero());
        assert_eq!(div_rem(&poly(&[0, 0, 0, 1]), &poly(&[-1, 0, 1])).unwrap(), (poly(&[0, 1]), poly(&[0, 1])));
        assert_eq!(div_rem(&poly(&[1, 0, 1]), &poly(&[0, 1])).unwrap(), (poly(&[0, 1]), poly(&[1])));
        assert_eq!(div_rem(&f, &f).unwrap(), (poly(&[1]), poly(&[])));
        // Divisor with a repeated root takes the fallback.
        let g = roots(&[3, 3, 5]);
        let f = poly(&[7, 0, 1, 4, 0, 9]);
        assert_eq!(div_rem(&f, &g).unwrap(), oracle::long_division(&f, &g));
    }

    #[test]
    fn adjugate_examples() {
        let c = ctx();
        let (f, g) = (poly(&[-1, 1]), poly(&[-2, 1]));
        let adj = sylvester_adjugate(&f, &g).unwrap();
        assert_eq!(adj, Matrix::from_rows_i64(c, &[&[-2, -1], &[1, 1]]));
        assert!(adj.mul(&sylvester_matrix(&f, &g).unwrap()).is_scalar(c.neg(1)));
        let inv = sylvester_inverse(&poly(&[0, 1]), &poly(&[-1, 1])).unwrap();
        assert_eq!(inv.column(1), vec![1, c.neg(1)]);
        assert_eq!(sylvester_inverse(&f, &f), Err(Error::SingularMatrix));
    }

    #[test]
    fn bezout_examples() {
        let c = ctx();
        assert_eq!(bezout_coeffs_coprime(&poly(&[0, 1]), &poly(&[-1, 1])).unwrap(), (poly(&[1]), poly(&[-1])));
        assert_eq!(bezout_coeffs_coprime(&poly(&[-1, 1]), &poly(&[1])).unwrap(), (poly(&[]), poly(&[1])));
        let small = FieldCtx::new(101).unwrap();
        let f = DensePoly::from_i64(small, &[1, 0, 1]);
        let g = DensePoly::from_i64(small, &[0, 1]);
        assert_eq!(bezout_coeffs_coprime(&f, &g).unwrap(), (DensePoly::from_i64(small, &[1]), DensePoly::from_i64(small, &[0, -1])));
        assert_eq!(bezout_coeffs_coprime(&poly(&[-1, 1]), &poly(&[-1, 0, 1])), Err(Error::NotCoprime));
        // Non-monic g.
        let g = poly(&[3, 2]);
        let (a, b) = bezout_coeffs_coprime(&poly(&[1, 0, 1]), &g).unwrap();
        assert!(a.mul(&poly(&[1, 0, 1])).add(&b.mul(&g)).is_one());
        let bez = bezout_matrix(&poly(&[-1, 1]), &poly(&[-2, 1]), 1).unwrap();
        assert_eq!(bez, Matrix::from_rows_i64(c, &[&[-1]]));
        assert_eq!(bezout_inverse(&poly(&[-1, 1]), &poly(&[-2, 1])).unwrap(), Matrix::from_rows_i64(c, &[&[-1]]));
        let f = poly(&[2, 3, 1]);
        assert!(bezout_matrix(&f, &f, 2).unwrap().is_scalar(0));
        assert_eq!(bezout_inverse(&f, &f), Err(Error::SingularMatrix));
        assert_eq!(bezout_matrix(&f, &f, 1), Err(Error::DegreeTooHigh));
    }

    #[test]
    fn toeplitz_examples() {
        let c = ctx();
        let a = Matrix::from_rows_i64(c, &[&[1, 2], &[0, 1]]);
        assert_eq!(toeplitz_inverse(&a).unwrap(), Matrix::from_rows_i64(c, &[&[1, -2], &[0, 1]]));
        assert_eq!(toeplitz_inverse(&Matrix::identity(c, 4)).unwrap(), Matrix::identity(c, 4));
        let z = Matrix::from_rows_i64(c, &[&[0, 1], &[0, 0]]);
        assert_eq!(toeplitz_inverse(&z), Err(Error::SingularMatrix));
    }

    #[test]
    fn composed_examples() {
        assert_eq!(composed(&poly(&[-1, 1]), &poly(&[-2, 1]), ComposeMode::Sum).unwrap(), poly(&[-3, 1]));
        assert_eq!(composed(&poly(&[-2, 1]), &poly(&[-3, 1]), ComposeMode::Product).unwrap(), poly(&[-6, 1]));
        assert_eq!(composed(&poly(&[-1, 0, 1]), &poly(&[-2, 1]), ComposeMode::Product).unwrap(), poly(&[-4, 0, 1]));
    }

    #[test]
    fn implicit_curves() {
        let c = ctx();
        let circle = implicitize(&poly(&[1, 0, -1]), &poly(&[0, 2]), &poly(&[1, 0, 1])).unwrap();
        let expect = BivariatePoly { ctx: c, coeffs: vec![vec![c.neg(1), 0, 1], vec![0, 0, 0], vec![1, 0, 0]] };
        assert_eq!(circle, expect);
        for tau in 0..20u64 {
            let hv = 1 + tau * tau;
            let x = c.div(c.sub(1, c.mul(tau, tau)), hv).unwrap();
            let y = c.div(2 * tau, hv).unwrap();
            assert_eq!(circle.eval(x, y), 0);
        }
        let line = implicitize(&poly(&[0, 1]), &poly(&[0, 1]), &poly(&[1])).unwrap();
        assert_eq!(line.terms(), vec![(0, 1, c.neg(1)), (1, 0, 1)]);
        let point = implicitize(&poly(&[1]), &poly(&[1]), &poly(&[1]));
        assert_eq!(point, Err(Error::DegenerateParameterization));
    }

    fn monic_strategy(max_deg: usize) -> impl Strategy<Value = DensePoly> {
        prop::collection::vec(0u64..1_000_003, 0..=max_deg).prop_map(|mut c| {
            c.push(1);
            DensePoly::new(ctx(), c)
        })
    }

    /// Monic polynomials with small integer roots, so repeated roots and
    /// shared roots are common.
    fn rooted_strategy(max_deg: usize) -> impl Strategy<Value = DensePoly> {
        prop::collection::vec(0u64..6, 0..=max_deg).prop_map(|r| roots(&r))
    }

    fn either(max_deg: usize) -> impl Strategy<Value = DensePoly> {
        prop_oneof![monic_strategy(max_deg), rooted_strategy(max_deg)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn resultant_matches_determinant(f in either(8), g in either(8)) {
            let res = resultant(&f, &g).unwrap();
            if f.deg_or_zero() + g.deg_or_zero() > 0 {
                prop_assert_eq!(res, oracle::bareiss_det(&sylvester_matrix(&f, &g).unwrap()));
            }
            prop_assert_eq!(res != 0, oracle::euclid_gcd(&f, &g).is_one());
            let swapped = resultant(&g, &f).unwrap();
            let c = ctx();
            prop_assert_eq!(res, sign(c, (f.deg_or_zero() * g.deg_or_zero()) % 2 == 1, swapped));
        }

        #[test]
        fn remainder_matches_long_division(f in prop::collection::vec(0u64..1_000_003, 0..14), g in either(6)) {
            let f = DensePoly::new(ctx(), f);
            let (q, r) = div_rem(&f, &g).unwrap();
            prop_assert_eq!((q, r), oracle::long_division(&f, &g));
        }

        #[test]
        fn adjugate_identity(f in either(6), g in either(6)) {
            prop_assume!(f.deg_or_zero() + g.deg_or_zero() > 0);
            let res = resultant(&f, &g).unwrap();
            let syl = sylvester_matrix(&f, &g).unwrap();
            let adj = sylvester_adjugate(&f, &g).unwrap();
            prop_assert!(adj.mul(&syl).is_scalar(res));
            prop_assert_eq!(adj, syl.adjugate().unwrap());
        }

        #[test]
        fn bezout_coefficients(f in either(7), g in either(7)) {
            match bezout_coeffs_coprime(&f, &g) {
                Ok((a, b)) => {
                    prop_assert!(a.mul(&f).add(&b.mul(&g)).is_one());
                    if f.deg_or_zero() + g.deg_or_zero() > 0 {
                        prop_assert!(a.deg().is_none_or(|d| d < g.deg_or_zero()));
                        prop_assert!(b.deg().is_none_or(|d| d < f.deg_or_zero()));
                        prop_assert_eq!((a, b), oracle::extended_euclid_bezout(&f, &g));
                    }
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::NotCoprime);
                    prop_assert!(!oracle::euclid_gcd(&f, &g).is_one());
                }
            }
        }

        #[test]
        fn bezout_inverse_identity(f in monic_strategy(7), g in prop::collection::vec(0u64..1_000_003, 0..8)) {
            let n = f.deg_or_zero();
            prop_assume!(n >= 1);
            let g = DensePoly::new(ctx(), g.into_iter().take(n + 1).collect());
            let bez = bezout_matrix(&f, &g, n).unwrap();
            let c = ctx();
            let res = sign(c, (n * (n - 1) / 2) % 2 == 1, resultant(&f, &g).unwrap());
            prop_assert_eq!(oracle::bareiss_det(&bez), res);
            match bezout_inverse(&f, &g) {
                Ok(inv) => prop_assert!(bez.mul(&inv).is_scalar(1)),
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert_eq!(oracle::bareiss_det(&bez), 0);
                }
            }
        }

        #[test]
        fn toeplitz_identity(row in prop::collection::vec(0u64..1_000_003, 1..10), diag in 1u64..1_000_003) {
            let c = ctx();
            let n = row.len();
            let mut a = Matrix::zeros(c, n, n);
            for i in 0..n {
                for j in i..n {
                    a.set(i, j, if j == i { diag } else { row[j - i] });
                }
            }
            prop_assert!(a.mul(&toeplitz_inverse(&a).unwrap()).is_scalar(1));
        }

        #[test]
        fn composed_matches_root_sets(ra in prop::collection::vec(0u64..100, 1..6), rb in prop::collection::vec(0u64..100, 1..6)) {
            let c = ctx();
            let sums: Vec<u64> = ra.iter().flat_map(|&a| rb.iter().map(move |&b| c.add(a, b))).collect();
            let prods: Vec<u64> = ra.iter().flat_map(|&a| rb.iter().map(move |&b| c.mul(a, b))).collect();
            prop_assert_eq!(composed(&roots(&ra), &roots(&rb), ComposeMode::Sum).unwrap(), roots(&sums));
            prop_assert_eq!(composed(&roots(&ra), &roots(&rb), ComposeMode::Product).unwrap(), roots(&prods));
        }

        #[test]
        fn implicit_equation_vanishes_on_curve(
            f in prop::collection::vec(0u64..1_000_003, 1..4),
            g in prop::collection::vec(0u64..1_000_003, 1..4),
            h in prop::collection::vec(1u64..1_000_003, 1..3),
        ) {
            let c = ctx();
            let (f, g, h) = (DensePoly::new(c, f), DensePoly::new(c, g), DensePoly::new(c, h));
            match implicitize(&f, &g, &h) {
                Ok(r) => {
                    for tau in 0..20u64 {
                        let hv = h.eval(tau);
                        if hv == 0 { continue; }
                        let x = c.div(f.eval(tau), hv).unwrap();
                        let y = c.div(g.eval(tau), hv).unwrap();
                        prop_assert_eq!(r.eval(x, y), 0);
                    }
                }
                Err(e) => prop_assert_eq!(e, Error::DegenerateParameterization),
            }
        }
    }

    #[test]
    fn profile_divisors_with_repeated_roots() {
        let c = ctx();
        let prof = MultiplicityProfile {
            entries: vec![
                ProfileEntry { root: 4, mults: vec![1, 3] },
                ProfileEntry { root: 9, mults: vec![2, 2] },
                ProfileEntry { root: 11, mults: vec![0, 1] },
            ],
        };
        let fs = oracle::instance_from_profile(c, &prof).unwrap();
        let big = fs[0].mul(&fs[1]).add(&poly(&[5, 1]));
        assert_eq!(div_rem(&big, &fs[1]).unwrap(), oracle::long_division(&big, &fs[1]));
        let adj = sylvester_adjugate(&fs[0], &fs[1]).unwrap();
        assert!(adj.mul(&sylvester_matrix(&fs[0], &fs[1]).unwrap()).is_scalar(0));
    }
}
