//! Symmetric functions of `g(alpha_1), ..., g(alpha_n)` where the `alpha_i`
//! are the roots of a monic `f`, computed from coefficients only.
//!
//! Everything reduces to traces: for a residue `q = g mod f`,
//! `sum_i q(alpha_i) = sum_t q_t p_t` with `p_t` the power sums of the roots.
//! Power sums of the values `g(alpha_i)` are traces of `g^k mod f`, and
//! elementary symmetric functions follow through the Newton conversion.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::newton;
use crate::ring::{Dual, Ring};
use crate::upoly::DensePoly;
use alloc::vec;
use alloc::vec::Vec;

/// A monic polynomial together with the power sums `p_0..p_{n-1}` of its
/// roots, which is all that traces of residues modulo it require.
pub struct Roots<'a, R: Ring> {
    r: &'a R,
    f: Vec<R::Elem>,
    ps: Vec<R::Elem>,
}

impl<'a, R: Ring> Roots<'a, R> {
    pub fn new(r: &'a R, f: &[R::Elem]) -> Result<Self> {
        if !gpoly::is_monic(r, f) {
            return Err(Error::NotMonic);
        }
        let n = f.len() - 1;
        let ps = if n == 0 { Vec::new() } else { newton::power_sums(r, f, n - 1)? };
        Ok(Roots { r, f: f.to_vec(), ps })
    }

    pub fn ring(&self) -> &'a R {
        self.r
    }

    pub fn poly(&self) -> &[R::Elem] {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// Power sums `p_0, ..., p_{n-1}` of the roots.
    pub fn power_sums(&self) -> &[R::Elem] {
        &self.ps
    }

    /// `g mod f`, padded to exactly `n` coefficients.
    pub fn reduce(&self, g: &[R::Elem]) -> Vec<R::Elem> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let mut q = gpoly::rem_monic(self.r, g, &self.f);
        q.resize(n, self.r.zero());
        q
    }

    /// `sum_i q(alpha_i)` for a reduced residue `q`.
    pub fn trace(&self, q: &[R::Elem]) -> R::Elem {
        self.r.dot(q, &self.ps)
    }

    /// Replaces the padded residue `q` by `x q mod f`.
    pub fn shift(&self, q: &mut Vec<R::Elem>) {
        let n = self.degree();
        if n == 0 {
            return;
        }
        let c = q.pop().unwrap();
        q.insert(0, self.r.zero());
        if !self.r.is_zero_cheap(&c) {
            for (qi, fi) in q.iter_mut().zip(&self.f) {
                *qi = self.r.sub(qi, &self.r.mul(&c, fi));
            }
        }
    }

    /// The padded residues `g^k mod f` for `k = 0..=kmax`.
    pub fn residue_powers(&self, g: &[R::Elem], kmax: usize) -> Vec<Vec<R::Elem>> {
        let n = self.degree();
        let base = self.reduce(g);
        let mut out = Vec::with_capacity(kmax + 1);
        out.push(self.reduce(&[self.r.one()]));
        for k in 1..=kmax {
            let next = if k == 1 {
                base.clone()
            } else {
                let mut q = gpoly::mulmod(self.r, &out[k - 1], &base, &self.f);
                q.resize(n, self.r.zero());
                q
            };
            out.push(next);
        }
        out
    }

    /// Power sums `sum_i g(alpha_i)^k` for `k = 0..=kmax`.
    pub fn value_power_sums(&self, g: &[R::Elem], kmax: usize) -> Vec<R::Elem> {
        let n = self.r.constant(self.r.ctx().from_u64(self.degree() as u64));
        let mut out = vec![n];
        if self.degree() == 0 {
            out.resize(kmax + 1, self.r.zero());
            return out;
        }
        out.extend(self.residue_powers(g, kmax).iter().skip(1).map(|q| self.trace(q)));
        out
    }

    /// `e_0..e_n` of the values `g(alpha_i)`.
    pub fn value_esyms(&self, g: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let n = self.degree();
        let ps = self.value_power_sums(g, n);
        newton::esyms_from_power_sums(self.r, &ps, n)
    }

    /// `e_d` of the values `g(alpha_i)`.
    pub fn value_esym(&self, g: &[R::Elem], d: usize) -> Result<R::Elem> {
        if d > self.degree() {
            return Ok(self.r.zero());
        }
        let ps = self.value_power_sums(g, d);
        newton::esym_from_power_sums(self.r, &ps, d)
    }

    /// The product over roots of the nonzero values `g(alpha_i)`, 1 if none.
    pub fn nonzero_product(&self, g: &[R::Elem]) -> Result<R::Elem> {
        let e = self.value_esyms(g)?;
        Ok(first_nonzero(self.r, e.iter().rev()).unwrap_or_else(|| self.r.one()))
    }
}

/// The first element that is nonzero in the ring.
pub fn first_nonzero<'b, R: Ring + 'b>(
    r: &R,
    mut items: impl Iterator<Item = &'b R::Elem>,
) -> Option<R::Elem> {
    items.find(|v| !r.is_zero(v)).cloned()
}

/// A polynomial in `x` whose coefficients are polynomials in up to two
/// parameters `y` and `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoly {
    ctx: FieldCtx,
    deg_x: usize,
    deg_y: usize,
    deg_z: usize,
    /// Coefficient of `x^i y^j z^k` at `(i * (deg_y + 1) + j) * (deg_z + 1) + k`.
    coeffs: Vec<u64>,
}

impl ParamPoly {
    /// The zero polynomial with the given degree bounds.
    pub fn zero(ctx: FieldCtx, deg_x: usize, deg_y: usize, deg_z: usize) -> Self {
        let len = (deg_x + 1) * (deg_y + 1) * (deg_z + 1);
        ParamPoly { ctx, deg_x, deg_y, deg_z, coeffs: vec![0; len] }
    }

    pub fn from_fn(
        ctx: FieldCtx,
        deg_x: usize,
        deg_y: usize,
        deg_z: usize,
        f: impl Fn(usize, usize, usize) -> u64,
    ) -> Self {
        let mut out = Self::zero(ctx, deg_x, deg_y, deg_z);
        for i in 0..=deg_x {
            for j in 0..=deg_y {
                for k in 0..=deg_z {
                    out.set(i, j, k, ctx.reduce(f(i, j, k)));
                }
            }
        }
        out
    }

    /// A polynomial without parameters.
    pub fn from_poly(g: &DensePoly) -> Self {
        let c = g.coeffs();
        let dx = c.len().saturating_sub(1);
        Self::from_fn(g.ctx(), dx, 0, 0, |i, _, _| c.get(i).copied().unwrap_or(0))
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn degree_bounds(&self) -> (usize, usize, usize) {
        (self.deg_x, self.deg_y, self.deg_z)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * (self.deg_y + 1) + j) * (self.deg_z + 1) + k
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        if i > self.deg_x || j > self.deg_y || k > self.deg_z {
            return 0;
        }
        self.coeffs[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u64) {
        let idx = self.index(i, j, k);
        self.coeffs[idx] = v;
    }

    /// The polynomial in `x` obtained by fixing `y = y0`, `z = z0`.
    pub fn specialize(&self, y0: u64, z0: u64) -> DensePoly {
        let f = self.ctx;
        let coeffs = (0..=self.deg_x)
            .map(|i| {
                let mut acc = 0;
                for j in (0..=self.deg_y).rev() {
                    let mut inner = 0;
                    for k in (0..=self.deg_z).rev() {
                        inner = f.add(f.mul(inner, z0), self.coeff(i, j, k));
                    }
                    acc = f.add(f.mul(acc, y0), inner);
                }
                acc
            })
            .collect();
        DensePoly::new(f, coeffs)
    }
}

/// A polynomial in the parameters `y, z`; a plain field element when both
/// degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamValue {
    ctx: FieldCtx,
    /// `coeffs[j][k]` is the coefficient of `y^j z^k`.
    coeffs: Vec<Vec<u64>>,
}

impl ParamValue {
    pub fn scalar(ctx: FieldCtx, v: u64) -> Self {
        ParamValue { ctx, coeffs: vec![vec![ctx.reduce(v)]] }
    }

    pub fn from_coeffs(ctx: FieldCtx, coeffs: Vec<Vec<u64>>) -> Self {
        ParamValue { ctx, coeffs }
    }

    pub fn coeffs(&self) -> &[Vec<u64>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize, k: usize) -> u64 {
        self.coeffs.get(j).and_then(|row| row.get(k)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|&c| c == 0))
    }

    /// The value when no parameter occurs.
    pub fn as_scalar(&self) -> Option<u64> {
        let others = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, &c)| (j, k, c)))
            .any(|(j, k, c)| (j, k) != (0, 0) && c != 0);
        (!others).then(|| self.coeff(0, 0))
    }

    /// The polynomial in `y` at `z = z0`.
    pub fn at_z(&self, z0: u64) -> DensePoly {
        let f = self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, z0), c)))
            .collect();
        DensePoly::new(f, coeffs)
    }

    pub fn eval(&self, y0: u64, z0: u64) -> u64 {
        self.at_z(z0).eval(y0)
    }
}

/// Values `vals[a][b]` at `(y, z) = (a, b)` to the coefficient table.
pub(crate) fn interpolate_grid(ctx: FieldCtx, vals: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let ny = vals.len();
    let nz = vals[0].len();
    let in_z: Vec<Vec<u64>> =
        vals.iter().map(|row| gpoly::interpolate_low(&ctx, row, nz)).collect::<Result<_>>()?;
    let mut out = vec![vec![0; nz]; ny];
    for k in 0..nz {
        let column: Vec<u64> = in_z.iter().map(|row| row[k]).collect();
        for (j, c) in gpoly::interpolate_low(&ctx, &column, ny)?.into_iter().enumerate() {
            out[j][k] = c;
        }
    }
    Ok(out)
}

/// Evaluates `per_point` on the grid `0..=dy x 0..=dz` and interpolates each
/// of the returned values.
fn over_grid(
    ctx: FieldCtx,
    dy: usize,
    dz: usize,
    count: usize,
    per_point: impl Fn(u64, u64) -> Result<Vec<u64>>,
) -> Result<Vec<ParamValue>> {
    if (dy.max(dz) as u64) >= ctx.p() {
        return Err(Error::FieldTooSmall);
    }
    let mut grids = vec![vec![vec![0u64; dz + 1]; dy + 1]; count];
    for y0 in 0..=dy {
        for z0 in 0..=dz {
            let vals = per_point(y0 as u64, z0 as u64)?;
            for (grid, v) in grids.iter_mut().zip(vals) {
                grid[y0][z0] = v;
            }
        }
    }
    grids
        .iter()
        .map(|g| Ok(ParamValue::from_coeffs(ctx, interpolate_grid(ctx, g)?)))
        .collect()
}

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

/// `sum_i g(alpha_i)` over the roots of the monic `f`, with multiplicity.
pub fn sum_over_roots(f: &DensePoly, g: &DensePoly) -> Result<u64> {
    same_ctx(f, g)?;
    monic_input(f)?;
    let ctx = f.ctx();
    ctx.guard(Requirement::Degree(f.deg_or_zero().max(g.deg_or_zero())))?;
    let roots = Roots::new(&ctx, f.coeffs())?;
    Ok(roots.value_power_sums(g.coeffs(), 1)[1])
}

/// `e_d(g(alpha_1, y, z), ..., g(alpha_n, y, z))` as a polynomial in the
/// parameters.
pub fn esym_over_roots(f: &DensePoly, g: &ParamPoly, d: usize) -> Result<ParamValue> {
    monic_input(f)?;
    let ctx = f.ctx();
    if g.ctx() != ctx {
        return Err(Error::ModulusMismatch);
    }
    let n = f.deg_or_zero();
    ctx.guard(Requirement::Degree(n))?;
    if d > n {
        return Ok(ParamValue::scalar(ctx, 0));
    }
    let roots = Roots::new(&ctx, f.coeffs())?;
    let (_, gy, gz) = g.degree_bounds();
    let mut out = over_grid(ctx, d * gy, d * gz, 1, |y0, z0| {
        Ok(vec![roots.value_esym(g.specialize(y0, z0).coeffs(), d)?])
    })?;
    Ok(out.pop().unwrap())
}

/// `e_d` of the values `g(alpha_i)` for a polynomial without parameters.
pub fn esym_over_roots_plain(f: &DensePoly, g: &DensePoly, d: usize) -> Result<u64> {
    let v = esym_over_roots(f, &ParamPoly::from_poly(g), d)?;
    Ok(v.coeff(0, 0))
}

/// `prod_{i : g(alpha_i) != 0} g(alpha_i)`, equal to 1 when every value
/// vanishes. With parameters the selection is made among polynomials.
pub fn nonzero_product_over_roots(f: &DensePoly, g: &ParamPoly) -> Result<ParamValue> {
    monic_input(f)?;
    let ctx = f.ctx();
    if g.ctx() != ctx {
        return Err(Error::ModulusMismatch);
    }
    let n = f.deg_or_zero();
    ctx.guard(Requirement::Degree(n))?;
    let roots = Roots::new(&ctx, f.coeffs())?;
    let (_, gy, gz) = g.degree_bounds();
    let esyms = over_grid(ctx, n * gy, n * gz, n + 1, |y0, z0| {
        roots.value_esyms(g.specialize(y0, z0).coeffs())
    })?;
    Ok(esyms
        .into_iter()
        .rev()
        .find(|e| !e.is_zero())
        .unwrap_or_else(|| ParamValue::scalar(ctx, 1)))
}

/// The parameter-free form of [`nonzero_product_over_roots`].
pub fn nonzero_product_over_roots_plain(f: &DensePoly, g: &DensePoly) -> Result<u64> {
    Ok(nonzero_product_over_roots(f, &ParamPoly::from_poly(g))?.coeff(0, 0))
}

/// `(prod_i h(alpha_i), sum_i g(alpha_i) prod_{j != i} h(alpha_j))`, the two
/// lowest coefficients in `y` of `prod_i (h(alpha_i) + y g(alpha_i))`.
fn dual_product(roots: &Roots<'_, Dual>, g: &[u64], h: &[u64]) -> Result<(u64, u64)> {
    let len = g.len().max(h.len());
    let gh: Vec<(u64, u64)> = (0..len)
        .map(|i| (h.get(i).copied().unwrap_or(0), g.get(i).copied().unwrap_or(0)))
        .collect();
    roots.value_esym(&gh, roots.degree())
}

fn lift(f: &[u64]) -> Vec<(u64, u64)> {
    f.iter().map(|&c| (c, 0)).collect()
}

/// `sum_i g(alpha_i) / h(alpha_i)`; `SharedRoot` when some `h(alpha_i) = 0`.
pub fn rational_sum_over_roots(f: &DensePoly, g: &DensePoly, h: &DensePoly) -> Result<u64> {
    same_ctx(f, g)?;
    same_ctx(f, h)?;
    monic_input(f)?;
    let ctx = f.ctx();
    ctx.guard(Requirement::Degree(f.deg_or_zero().max(g.deg_or_zero()).max(h.deg_or_zero())))?;
    let dual = Dual(ctx);
    let roots = Roots::new(&dual, &lift(f.coeffs()))?;
    let (den, num) = dual_product(&roots, g.coeffs(), h.coeffs())?;
    if den == 0 {
        return Err(Error::SharedRoot);
    }
    ctx.div(num, den)
}

/// `e_d` of the values `g(alpha_i) / h(alpha_i)`.
pub fn rational_esym_over_roots(
    f: &DensePoly,
    g: &DensePoly,
    h: &DensePoly,
    d: usize,
) -> Result<u64> {
    same_ctx(f, g)?;
    same_ctx(f, h)?;
    monic_input(f)?;
    let ctx = f.ctx();
    let n = f.deg_or_zero();
    ctx.guard(Requirement::Degree(n.max(g.deg_or_zero()).max(h.deg_or_zero())))?;
    let dual = Dual(ctx);
    let roots = Roots::new(&dual, &lift(f.coeffs()))?;
    let plain = Roots::new(&ctx, f.coeffs())?;
    let hp = plain.residue_powers(h.coeffs(), d.max(1));
    if dual_product(&roots, &[], &hp[1])?.0 == 0 {
        return Err(Error::SharedRoot);
    }
    if d == 0 {
        return Ok(1);
    }
    if d > n {
        return Ok(0);
    }
    let gp = plain.residue_powers(g.coeffs(), d);
    let mut ps = vec![ctx.from_u64(n as u64)];
    for k in 1..=d {
        let (den, num) = dual_product(&roots, &gp[k], &hp[k])?;
        ps.push(ctx.div(num, den)?);
    }
    newton::esym_from_power_sums(&ctx, &ps, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn poly(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(ctx(), c)
    }

    #[test]
    fn sums_over_roots() {
        let f = poly(&[2, -3, 1]);
        assert_eq!(sum_over_roots(&f, &poly(&[0, 0, 1])).unwrap(), 5);
        assert_eq!(sum_over_roots(&f, &poly(&[7])).unwrap(), 14);
        assert_eq!(sum_over_roots(&poly(&[0, 0, 1]), &poly(&[0, 1])).unwrap(), 0);
    }

    #[test]
    fn esyms_over_roots() {
        let f = poly(&[2, -3, 1]);
        let g = ParamPoly::from_poly(&poly(&[0, 0, 1]));
        assert_eq!(esym_over_roots(&f, &g, 2).unwrap().as_scalar(), Some(4));
        assert_eq!(esym_over_roots(&f, &g, 1).unwrap().as_scalar(), Some(5));
        assert_eq!(esym_over_roots(&f, &g, 0).unwrap().as_scalar(), Some(1));
    }

    #[test]
    fn parameterized_esym() {
        // g = y - x over roots 1, 2: e_2 = (y - 1)(y - 2).
        let f = poly(&[2, -3, 1]);
        let c = ctx();
        let g = ParamPoly::from_fn(c, 1, 1, 0, |i, j, _| match (i, j) {
            (0, 1) => 1,
            (1, 0) => c.neg(1),
            _ => 0,
        });
        let e = esym_over_roots(&f, &g, 2).unwrap();
        assert_eq!(e.at_z(0), poly(&[2, -3, 1]));
        // g = x + y z: e_2 = (1 + y z)(2 + y z).
        let g = ParamPoly::from_fn(c, 1, 1, 1, |i, j, k| u64::from((i, j, k) == (1, 0, 0) || (i, j, k) == (0, 1, 1)));
        let e = esym_over_roots(&f, &g, 2).unwrap();
        for (y, z) in [(0, 0), (3, 5), (10, 1)] {
            let t = c.mul(y, z);
            assert_eq!(e.eval(y, z), c.mul(c.add(1, t), c.add(2, t)));
        }
    }

    #[test]
    fn rational_sums() {
        let c = ctx();
        let f = poly(&[2, -3, 1]);
        let (one, h) = (poly(&[1]), poly(&[1, 1]));
        assert_eq!(rational_sum_over_roots(&f, &one, &h).unwrap(), c.div(5, 6).unwrap());
        assert_eq!(rational_sum_over_roots(&f, &h, &h).unwrap(), 2);
        assert_eq!(rational_sum_over_roots(&f, &DensePoly::zero(c), &h).unwrap(), 0);
        assert_eq!(rational_esym_over_roots(&f, &one, &h, 2).unwrap(), c.div(1, 6).unwrap());
        assert_eq!(rational_esym_over_roots(&f, &one, &h, 0).unwrap(), 1);
        assert_eq!(
            rational_esym_over_roots(&f, &one, &h, 1).unwrap(),
            rational_sum_over_roots(&f, &one, &h).unwrap()
        );
        let shared = poly(&[-1, 1]);
        assert_eq!(rational_sum_over_roots(&f, &one, &shared), Err(Error::SharedRoot));
        assert_eq!(rational_esym_over_roots(&f, &one, &shared, 2), Err(Error::SharedRoot));
    }

    #[test]
    fn nonzero_products() {
        let x = poly(&[0, 1]);
        assert_eq!(nonzero_product_over_roots_plain(&poly(&[0, 2, -3, 1]), &x).unwrap(), 2);
        assert_eq!(nonzero_product_over_roots_plain(&poly(&[0, 0, 1]), &x).unwrap(), 1);
        let f = poly(&[2, -3, 1]);
        let g = poly(&[5, 1]);
        assert_eq!(
            nonzero_product_over_roots_plain(&f, &g).unwrap(),
            esym_over_roots_plain(&f, &g, 2).unwrap()
        );
    }

    #[test]
    fn parameterized_nonzero_product() {
        // g = (y - x) x over roots 0, 1, 2: the nonzero product is (y - 1)(2y - 4).
        let c = ctx();
        let f = poly(&[0, 2, -3, 1]);
        let g = ParamPoly::from_fn(c, 2, 1, 0, |i, j, _| match (i, j) {
            (1, 1) => 1,
            (2, 0) => c.neg(1),
            _ => 0,
        });
        let v = nonzero_product_over_roots(&f, &g).unwrap();
        assert_eq!(v.at_z(0), poly(&[4, -6, 2]));
    }

    fn roots_strategy() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, Vec<u64>)> {
        (
            prop::collection::vec(0u64..50, 0..=16),
            prop::collection::vec(0u64..1_000_003, 0..6),
            prop::collection::vec(1u64..1_000_003, 1..4),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_direct_evaluation((roots, g, h) in roots_strategy()) {
            let c = ctx();
            let f = DensePoly::from_roots(c, &roots);
            let g = DensePoly::new(c, g);
            let h = DensePoly::new(c, h);
            let vals: Vec<u64> = roots.iter().map(|&a| g.eval(a)).collect();
            let sum = vals.iter().fold(0, |a, &v| c.add(a, v));
            prop_assert_eq!(sum_over_roots(&f, &g).unwrap(), sum);
            for d in 0..=roots.len() {
                prop_assert_eq!(esym_over_roots_plain(&f, &g, d).unwrap(), oracle::esym_brute(c, &vals, d));
            }
            let nz: Vec<u64> = vals.iter().copied().filter(|&v| v != 0).collect();
            let prod = nz.iter().fold(1, |a, &v| c.mul(a, v));
            prop_assert_eq!(nonzero_product_over_roots_plain(&f, &g).unwrap(), prod);
            let hv: Vec<u64> = roots.iter().map(|&a| h.eval(a)).collect();
            if hv.iter().all(|&v| v != 0) {
                let ratios: Vec<u64> = vals.iter().zip(&hv).map(|(&a, &b)| c.div(a, b).unwrap()).collect();
                let rs = ratios.iter().fold(0, |a, &v| c.add(a, v));
                prop_assert_eq!(rational_sum_over_roots(&f, &g, &h).unwrap(), rs);
                let d = roots.len().min(3);
                prop_assert_eq!(rational_esym_over_roots(&f, &g, &h, d).unwrap(), oracle::esym_brute(c, &ratios, d));
                let one = DensePoly::one(c);
                prop_assert_eq!(
                    rational_esym_over_roots(&f, &g, &one, d).unwrap(),
                    esym_over_roots_plain(&f, &g, d).unwrap()
                );
            } else {
                prop_assert_eq!(rational_sum_over_roots(&f, &g, &h), Err(Error::SharedRoot));
            }
        }
    }
}
