//! Conversions between coefficients and power sums of roots, and the two
//! direct applications: exact division and perfect roots.
//!
//! Coefficients to power sums: the generating function of the power sums is
//! `rev(f')(t) / rev(f)(t)`. With `rev(f) = 1 + h(t)` the quotient is
//! truncated to `rev(f')(t) * sum_{j<=d} (-h(t))^j`, with `h` and `rev(f')`
//! first cut below `t^(d+1)`. That product is evaluated at the nodes
//! `0, 1, ...` and interpolated for its low coefficients.
//!
//! Power sums to coefficients: `sum e_k t^k = exp(g(t))` with
//! `g(t) = sum_k (-1)^(k+1) p_k t^k / k`, truncated to `sum_{j<=n} g^j / j!`
//! and handled the same way. Neither direction iterates the triangular
//! Newton recurrence.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::ring::Ring;
use crate::upoly::DensePoly;
use alloc::vec;
use alloc::vec::Vec;

/// Power sums `p_0, ..., p_d` of the roots of a degree-`n` polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSeries {
    pub ctx: FieldCtx,
    pub n: usize,
    pub sums: Vec<u64>,
}

impl NewtonSeries {
    /// Truncation order `d`.
    pub fn order(&self) -> usize {
        self.sums.len() - 1
    }

    /// Entrywise sum, the series of the product of the two polynomials.
    pub fn add(&self, other: &NewtonSeries) -> NewtonSeries {
        let d = self.order().min(other.order());
        NewtonSeries {
            ctx: self.ctx,
            n: self.n + other.n,
            sums: (0..=d).map(|k| self.ctx.add(self.sums[k], other.sums[k])).collect(),
        }
    }
}

/// Power sums `p_0..p_d` of the roots of the monic polynomial `f`.
pub fn power_sums<R: Ring>(r: &R, f: &[R::Elem], d: usize) -> Result<Vec<R::Elem>> {
    if !gpoly::is_monic(r, f) {
        return Err(Error::NotMonic);
    }
    let n = f.len() - 1;
    let fc = r.ctx();
    fc.guard(Requirement::Degree(n.max(d)))?;
    let mut out = vec![r.zero(); d + 1];
    out[0] = r.constant(fc.from_u64(n as u64));
    if n == 0 || d == 0 {
        return Ok(out);
    }
    // rev(f') has coefficients (n - i) f_{n-i}; rev(f) = 1 + h. Only terms
    // below t^(d+1) matter, so both are truncated there.
    let top = n.min(d);
    let g: Vec<R::Elem> = (0..n.min(d + 1)).map(|i| r.scale(&f[n - i], fc.from_u64((n - i) as u64))).collect();
    let mut h: Vec<R::Elem> = (0..=top).map(|i| f[n - i].clone()).collect();
    h[0] = r.zero();
    let nodes = (g.len() - 1) + top * d + 1;
    let u: Vec<R::Elem> = gpoly::eval_at_nodes(r, &h, nodes).iter().map(|v| r.neg(v)).collect();
    let s = geometric_sums(r, &u, d);
    let gv = gpoly::eval_at_nodes(r, &g, nodes);
    let vals: Vec<R::Elem> = gv.iter().zip(&s).map(|(a, b)| r.mul(a, b)).collect();
    let low = gpoly::interpolate_low(r, &vals, d + 1)?;
    out[1..].clone_from_slice(&low[1..]);
    Ok(out)
}

/// `sum_{j<=d} u^j` for each `u`, as `(u^(d+1) - 1) / (u - 1)` with one
/// shared inversion; Horner's rule when some `u - 1` is not a unit.
fn geometric_sums<R: Ring>(r: &R, us: &[R::Elem], d: usize) -> Vec<R::Elem> {
    let one = r.one();
    let count = r.constant(r.ctx().from_u64(d as u64 + 1));
    let dens: Vec<Option<R::Elem>> = us
        .iter()
        .map(|u| {
            let den = r.sub(u, &one);
            (!r.is_zero(&den)).then_some(den)
        })
        .collect();
    // prefix[i] = product of the nonzero denominators before i.
    let mut prefix = Vec::with_capacity(us.len() + 1);
    prefix.push(one.clone());
    for den in &dens {
        let last = prefix.last().unwrap();
        let next = match den {
            Some(v) => r.mul(last, v),
            None => last.clone(),
        };
        prefix.push(next);
    }
    let Ok(mut inv) = r.inv(prefix.last().unwrap()) else {
        return us
            .iter()
            .map(|u| {
                let mut s = one.clone();
                for _ in 0..d {
                    s = r.add(&one, &r.mul(u, &s));
                }
                s
            })
            .collect();
    };
    let mut out = vec![r.zero(); us.len()];
    for i in (0..us.len()).rev() {
        match &dens[i] {
            Some(den) => {
                let den_inv = r.mul(&inv, &prefix[i]);
                inv = r.mul(&inv, den);
                let num = r.sub(&r.pow(&us[i], d as u64 + 1), &one);
                out[i] = r.mul(&num, &den_inv);
            }
            None => out[i] = count.clone(),
        }
    }
    out
}

/// Elementary symmetric functions `e_0..e_n` of `n` values from their power
/// sums `p_1..p_n` (entry 0 of `ps` is ignored).
pub fn esyms_from_power_sums<R: Ring>(r: &R, ps: &[R::Elem], n: usize) -> Result<Vec<R::Elem>> {
    if n == 0 {
        return Ok(vec![r.one()]);
    }
    if ps.len() < n + 1 {
        return Err(Error::InconsistentSeries);
    }
    let vals = exp_values(r, ps, n)?;
    gpoly::interpolate_low(r, &vals, n + 1)
}

/// The single value `e_k` from power sums `p_1..p_k`.
pub fn esym_from_power_sums<R: Ring>(r: &R, ps: &[R::Elem], k: usize) -> Result<R::Elem> {
    if k == 0 {
        return Ok(r.one());
    }
    let vals = exp_values(r, ps, k)?;
    let w = gpoly::coeff_weights(r.ctx(), vals.len(), k)?;
    Ok(r.lin_comb(&vals, &w))
}

/// Values of `sum_{j<=k} g^j / j!` at the nodes `0..=k^2`.
fn exp_values<R: Ring>(r: &R, ps: &[R::Elem], k: usize) -> Result<Vec<R::Elem>> {
    let fc = r.ctx();
    fc.guard(Requirement::Degree(k))?;
    let inv = gpoly::small_inverses(fc, k)?;
    // g_j = (-1)^(j+1) p_j / j
    let mut g = vec![r.zero(); k + 1];
    for j in 1..=k {
        let c = if j % 2 == 1 { inv[j] } else { fc.neg(inv[j]) };
        g[j] = r.scale(&ps[j], c);
    }
    // sum_{j<=k} y^j / j! by Horner in y, then y = g(t).
    let mut inv_fact = vec![1u64; k + 1];
    for j in 1..=k {
        inv_fact[j] = fc.mul(inv_fact[j - 1], inv[j]);
    }
    let nodes = k * k + 1;
    let gt = gpoly::eval_at_nodes(r, &g, nodes);
    let mut acc = vec![r.constant(inv_fact[k]); nodes];
    for j in (0..k).rev() {
        let c = r.constant(inv_fact[j]);
        for (a, y) in acc.iter_mut().zip(&gt) {
            *a = r.add(&r.mul(a, y), &c);
        }
    }
    Ok(acc)
}

/// The monic polynomial with roots having elementary symmetric functions `e`.
pub fn coeffs_from_esyms<R: Ring>(r: &R, e: &[R::Elem]) -> Vec<R::Elem> {
    let n = e.len() - 1;
    (0..=n)
        .map(|i| {
            let v = &e[n - i];
            if (n - i) % 2 == 1 {
                r.neg(v)
            } else {
                v.clone()
            }
        })
        .collect()
}

/// The monic degree-`n` polynomial with power sums `ps`.
pub fn from_power_sums_generic<R: Ring>(r: &R, ps: &[R::Elem], n: usize) -> Result<Vec<R::Elem>> {
    let fc = r.ctx();
    if ps.is_empty() || !r.equal(&ps[0], &r.constant(fc.from_u64(n as u64))) || ps.len() < n + 1 {
        return Err(Error::InconsistentSeries);
    }
    let e = esyms_from_power_sums(r, ps, n)?;
    let f = coeffs_from_esyms(r, &e);
    if ps.len() > n + 1 {
        // Sums beyond p_n are determined by p_1..p_n; check they match.
        let check = power_sums(r, &f, ps.len() - 1)?;
        if check.iter().zip(ps).any(|(a, b)| !r.equal(a, b)) {
            return Err(Error::InconsistentSeries);
        }
    }
    Ok(f)
}

/// `f / g` for monic `g | f`, through power-sum subtraction.
pub fn exact_div_generic<R: Ring>(r: &R, f: &[R::Elem], g: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if !gpoly::is_monic(r, f) || !gpoly::is_monic(r, g) {
        return Err(Error::NotMonic);
    }
    let q = (f.len() - 1).saturating_sub(g.len() - 1);
    let pf = power_sums(r, f, q)?;
    exact_div_with_sums(r, f, &pf, g)
}

/// [`exact_div_generic`] with the power sums `pf` of `f` known up to at least
/// the degree of the quotient.
pub fn exact_div_with_sums<R: Ring>(r: &R, f: &[R::Elem], pf: &[R::Elem], g: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if !gpoly::is_monic(r, f) || !gpoly::is_monic(r, g) {
        return Err(Error::NotMonic);
    }
    let (n, m) = (f.len() - 1, g.len() - 1);
    if m > n {
        return Err(Error::NotDivisible);
    }
    let q = n - m;
    let h = if m == 0 {
        f.to_vec()
    } else if q == 0 {
        vec![r.one()]
    } else {
        if pf.len() <= q {
            return Err(Error::InconsistentSeries);
        }
        let pg = power_sums(r, g, q)?;
        let ps: Vec<R::Elem> = pf[..=q].iter().zip(&pg).map(|(a, b)| r.sub(a, b)).collect();
        from_power_sums_generic(r, &ps, q)?
    };
    let back = gpoly::mul(r, g, &h);
    if back.len() != f.len() || back.iter().zip(f).any(|(a, b)| !r.equal(a, b)) {
        return Err(Error::NotDivisible);
    }
    Ok(h)
}

/// The monic `g` with `g^k = f`, through scaled power sums.
pub fn perfect_root_generic<R: Ring>(r: &R, f: &[R::Elem], k: usize) -> Result<Vec<R::Elem>> {
    if !gpoly::is_monic(r, f) {
        return Err(Error::NotMonic);
    }
    if k == 0 {
        return Err(Error::DegreeNotDivisible);
    }
    let n = f.len() - 1;
    if n % k != 0 {
        return Err(Error::DegreeNotDivisible);
    }
    if k == 1 {
        return Ok(f.to_vec());
    }
    let q = n / k;
    let fc = r.ctx();
    fc.guard(Requirement::Degree(n))?;
    let ps = power_sums(r, f, q)?;
    let ik = fc.inv(fc.from_u64(k as u64))?;
    let ps: Vec<R::Elem> = ps.iter().map(|p| r.scale(p, ik)).collect();
    let g = from_power_sums_generic(r, &ps, q)?;
    let back = gpoly::pow(r, &g, k as u64);
    if back.len() != f.len() || back.iter().zip(f).any(|(a, b)| !r.equal(a, b)) {
        return Err(Error::NotAPerfectPower);
    }
    Ok(g)
}

/// Newton series of a monic polynomial up to order `d`.
pub fn to_power_sums(f: &DensePoly, d: usize) -> Result<NewtonSeries> {
    let ctx = f.ctx();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(NewtonSeries { ctx, n: f.deg_or_zero(), sums: power_sums(&ctx, f.coeffs(), d)? })
}

/// The monic polynomial of degree `ps.n` with the given Newton series.
pub fn from_power_sums(ps: &NewtonSeries) -> Result<DensePoly> {
    let ctx = ps.ctx;
    ctx.guard(Requirement::Degree(ps.n))?;
    let v = from_power_sums_generic(&ctx, &ps.sums, ps.n)?;
    Ok(DensePoly::new(ctx, v))
}

/// `f / g` for monic `g` dividing monic `f`; `NotDivisible` otherwise.
pub fn exact_div(f: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    if f.ctx() != g.ctx() {
        return Err(Error::ModulusMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    ctx.guard(Requirement::Degree(f.deg_or_zero()))?;
    Ok(DensePoly::new(ctx, exact_div_generic(&ctx, f.coeffs(), g.coeffs())?))
}

/// The monic `g` with `g^r = f`.
pub fn perfect_root(f: &DensePoly, r: usize) -> Result<DensePoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    Ok(DensePoly::new(ctx, perfect_root_generic(&ctx, f.coeffs(), r)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn p(s: &str) -> DensePoly {
        DensePoly::parse(f(), s).unwrap()
    }

    fn series(n: usize, v: &[i64]) -> NewtonSeries {
        let ctx = f();
        NewtonSeries { ctx, n, sums: v.iter().map(|&x| ctx.from_i64(x)).collect() }
    }

    #[test]
    fn to_power_sums_examples() {
        assert_eq!(to_power_sums(&p("x^2-3*x+2"), 3).unwrap(), series(2, &[2, 3, 5, 9]));
        assert_eq!(to_power_sums(&p("x-5"), 2).unwrap(), series(1, &[1, 5, 25]));
        assert_eq!(to_power_sums(&p("x^2"), 2).unwrap(), series(2, &[2, 0, 0]));
        assert_eq!(to_power_sums(&p("2*x"), 2), Err(Error::NotMonic));
    }

    #[test]
    fn from_power_sums_examples() {
        assert_eq!(from_power_sums(&series(2, &[2, 3, 5])).unwrap(), p("x^2-3*x+2"));
        assert_eq!(from_power_sums(&series(1, &[1, 5])).unwrap(), p("x-5"));
        assert_eq!(from_power_sums(&series(3, &[3, 0, 0, 0])).unwrap(), p("x^3"));
        assert_eq!(from_power_sums(&series(2, &[3, 3, 5])), Err(Error::InconsistentSeries));
        assert_eq!(from_power_sums(&series(1, &[1, 5, 26])), Err(Error::InconsistentSeries));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(exact_div(&p("x^2+3*x+2"), &p("x+1")).unwrap(), p("x+2"));
        let g = p("x^3+7*x+1");
        assert_eq!(exact_div(&g, &g).unwrap(), p("1"));
        assert_eq!(exact_div(&p("x^3-4*x^2+5*x-2"), &p("x^2-2*x+1")).unwrap(), p("x-2"));
        assert_eq!(exact_div(&p("x^2+1"), &p("x+1")), Err(Error::NotDivisible));
        assert_eq!(exact_div(&p("x+1"), &p("x^2+1")), Err(Error::NotDivisible));
    }

    #[test]
    fn perfect_root_examples() {
        assert_eq!(perfect_root(&p("x^2-2*x+1"), 2).unwrap(), p("x-1"));
        assert_eq!(perfect_root(&p("x^4+2*x^2+1"), 2).unwrap(), p("x^2+1"));
        let g = p("x^3+x+5");
        assert_eq!(perfect_root(&g, 1).unwrap(), g);
        assert_eq!(perfect_root(&p("x^3+1"), 2), Err(Error::DegreeNotDivisible));
        assert_eq!(perfect_root(&p("x^2+1"), 2), Err(Error::NotAPerfectPower));
    }

    #[test]
    fn single_esym_matches_full() {
        let ctx = f();
        let roots = [3u64, 9, 27, 5, 5];
        let g = DensePoly::from_roots(ctx, &roots);
        let ps = to_power_sums(&g, 5).unwrap().sums;
        let all = esyms_from_power_sums(&ctx, &ps, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(esym_from_power_sums(&ctx, &ps, k).unwrap(), all[k]);
        }
    }

    fn monic(max_deg: usize) -> impl Strategy<Value = DensePoly> {
        (1..=max_deg).prop_flat_map(|d| {
            proptest::collection::vec(0u64..1_000_003, d).prop_map(|mut v| {
                v.push(1);
                DensePoly::new(f(), v)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip(g in monic(64)) {
            let n = g.deg().unwrap();
            let ps = to_power_sums(&g, n).unwrap();
            prop_assert_eq!(from_power_sums(&ps).unwrap(), g);
        }

        #[test]
        fn matches_recurrence_oracle(g in monic(40), d in 0usize..50) {
            let ps = to_power_sums(&g, d).unwrap();
            prop_assert_eq!(ps.sums, oracle::newton_power_sums(&g, d));
        }

        #[test]
        fn additivity(a in monic(20), b in monic(20), d in 0usize..30) {
            let lhs = to_power_sums(&a.mul(&b), d).unwrap();
            let rhs = to_power_sums(&a, d).unwrap().add(&to_power_sums(&b, d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_div_of_product(a in monic(24), b in monic(24)) {
            prop_assert_eq!(exact_div(&a.mul(&b), &b).unwrap(), a);
        }

        #[test]
        fn perfect_root_of_power(g in monic(16), r in 1usize..=4) {
            prop_assert_eq!(perfect_root(&g.pow(r as u64), r).unwrap(), g);
        }
    }
}
