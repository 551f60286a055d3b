//! Splitting a polynomial by properties of its roots: common zeros of other
//! polynomials, multiplicity thresholds, and squarefree decomposition.
//!
//! The basic step splits a monic `f` by whether a residue `G` vanishes at each
//! root. With `u_i = G(alpha_i)` and `k*` the number of nonzero `u_i`, the
//! elementary symmetric functions `e_m(u)` vanish exactly for `m > k*`, and
//! `e_{k*}(u) = c` is the product of the nonzero values. Taking the same
//! nonzero product of `u_i (1 + eps alpha_i^j)` with `eps^2 = 0` gives
//! `c (1 + eps P_j)` where `P_j` is the `j`-th power sum of the surviving
//! roots, and its `eps` part is
//! `sum_{k=1..k*} (-1)^(k+1) e_{k*-k}(u) tr(x^j G^k mod f)`.
//! Those power sums determine the surviving factor, and exact division gives
//! the other one. Whichever of the two factors has lower degree is the one
//! recovered from power sums.
//!
//! Several conditions `g_1, ..., g_m` are merged into `sum_j z0^j g_j` for a
//! sampled `z0`. A root where the combination vanishes without every `g_j`
//! vanishing makes `z0` a root of a nonzero polynomial of degree `< m`, so
//! the result is checked and the next `z0` tried; after `n (m - 1) + 1`
//! distinct samples a good one is guaranteed.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::newton;
use crate::ring::Ring;
use crate::symroots::Roots;
use crate::upoly::DensePoly;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE_SEED: u64 = 0x6669_6c74_6572;

/// Splits `f` into `(f_in, f_out)` by whether `G` vanishes at each root.
pub fn split_by_values<R: Ring>(roots: &Roots<'_, R>, g: &[R::Elem]) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
    let r = roots.ring();
    let f = roots.poly();
    let n = roots.degree();
    let one = vec![r.one()];
    if n == 0 {
        return Ok((one.clone(), one));
    }
    let powers = roots.residue_powers(g, n);
    let mut t0 = vec![r.constant(r.ctx().from_u64(n as u64))];
    t0.extend(powers.iter().skip(1).map(|q| roots.trace(q)));
    let e = newton::esyms_from_power_sums(r, &t0, n)?;
    let kstar = (0..=n).rev().find(|&m| !r.is_zero(&e[m])).unwrap_or(0);
    if kstar == 0 {
        return Ok((f.to_vec(), one));
    }
    if kstar == n {
        return Ok((one, f.to_vec()));
    }
    let cinv = r.inv(&e[kstar])?;
    let out_small = kstar <= n - kstar;
    let count = kstar.min(n - kstar);
    // sums[j] accumulates c P_j over k.
    let mut sums = vec![r.zero(); count + 1];
    for k in 1..=kstar {
        let mut w = e[kstar - k].clone();
        if k % 2 == 0 {
            w = r.neg(&w);
        }
        let mut q = powers[k].clone();
        for s in sums.iter_mut().skip(1) {
            roots.shift(&mut q);
            *s = r.add(s, &r.mul(&w, &roots.trace(&q)));
        }
    }
    let fc = r.ctx();
    if out_small {
        let mut ps = vec![r.constant(fc.from_u64(kstar as u64))];
        ps.extend(sums.iter().skip(1).map(|s| r.mul(s, &cinv)));
        let f_out = newton::from_power_sums_generic(r, &ps, kstar)?;
        let f_in = newton::exact_div_with_sums(r, f, roots.power_sums(), &f_out)?;
        Ok((f_in, f_out))
    } else {
        let full = roots.power_sums();
        let mut ps = vec![r.constant(fc.from_u64((n - kstar) as u64))];
        ps.extend((1..=count).map(|j| r.sub(&full[j], &r.mul(&sums[j], &cinv))));
        let f_in = newton::from_power_sums_generic(r, &ps, n - kstar)?;
        let f_out = newton::exact_div_with_sums(r, f, roots.power_sums(), &f_in)?;
        Ok((f_in, f_out))
    }
}

/// Whether every root of the monic `h` is a root of `g`.
fn roots_contained<R: Ring>(r: &R, h: &[R::Elem], g: &[R::Elem]) -> bool {
    let d = h.len() - 1;
    if d == 0 {
        return true;
    }
    gpoly::powmod(r, g, d as u64, h).is_empty()
}

/// `(f_in, f_out)` where `f_in` collects the factors of `f` at common roots
/// of all `gs` (with their multiplicities in `f`) and `f_out = f / f_in`.
pub fn filter_generic<R: Ring>(
    r: &R,
    f: &[R::Elem],
    gs: &[Vec<R::Elem>],
) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
    let roots = Roots::new(r, f)?;
    let n = roots.degree();
    let one = vec![r.one()];
    if n == 0 {
        return Ok((one.clone(), one));
    }
    let reduced: Vec<Vec<R::Elem>> = gs
        .iter()
        .map(|g| gpoly::trimmed(r, roots.reduce(g)))
        .filter(|g| !g.is_empty())
        .collect();
    if reduced.is_empty() {
        return Ok((f.to_vec(), one));
    }
    if reduced.len() == 1 {
        return split_by_values(&roots, &reduced[0]);
    }
    let fc = r.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let attempts = n * (reduced.len() - 1) + 1;
    let mut used: Vec<u64> = Vec::new();
    for _ in 0..attempts {
        let z0 = loop {
            let z = rng.gen_range(1..fc.p());
            if !used.contains(&z) {
                break z;
            }
        };
        used.push(z0);
        let mut combined: Vec<R::Elem> = Vec::new();
        for g in reduced.iter().rev() {
            combined = gpoly::add(r, &gpoly::scale(r, &combined, z0), g);
        }
        let (f_in, f_out) = split_by_values(&roots, &combined)?;
        if reduced.iter().all(|g| roots_contained(r, &f_in, g)) {
            return Ok((f_in, f_out));
        }
    }
    Err(Error::FieldTooSmall)
}

/// `(f_ge, f_lt)`: `f_ge` collects the factors of `f` whose root has
/// multiplicity at least `rs[j]` in every `gs[j]`.
pub fn threshold_generic<R: Ring>(
    r: &R,
    f: &[R::Elem],
    gs: &[Vec<R::Elem>],
    rs: &[usize],
) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
    let mut conditions = Vec::new();
    for (g, &t) in gs.iter().zip(rs) {
        let g = gpoly::trimmed(r, g.clone());
        if g.is_empty() || t == 0 {
            continue;
        }
        if t > g.len() - 1 {
            return Ok((vec![r.one()], f.to_vec()));
        }
        let mut d = g;
        for _ in 0..t {
            let next = gpoly::derivative(r, &d, 1);
            conditions.push(d);
            d = next;
        }
    }
    filter_generic(r, f, &conditions)
}

/// Squarefree parts `f_1, ..., f_m` with `f = prod f_i^i`.
pub fn squarefree_generic<R: Ring>(r: &R, f: &[R::Elem]) -> Result<Vec<Vec<R::Elem>>> {
    let mut parts = Vec::new();
    // `rest` holds the factors of `f` whose root has multiplicity >= mult.
    // The lower derivatives already vanish at those roots, so the
    // multiplicity exceeds `mult` exactly where `f^(mult)` vanishes.
    let mut rest = f.to_vec();
    let mut deriv = f.to_vec();
    let mut mult = 1;
    while rest.len() > 1 {
        deriv = gpoly::derivative(r, &deriv, 1);
        let (above, exact) = filter_generic(r, &rest, &[deriv.clone()])?;
        parts.push(newton::perfect_root_generic(r, &exact, mult)?);
        rest = above;
        mult += 1;
    }
    Ok(parts)
}

/// Product of the squarefree parts.
pub fn squarefree_part_generic<R: Ring>(r: &R, f: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let parts = squarefree_generic(r, f)?;
    Ok(parts.iter().fold(vec![r.one()], |acc, p| gpoly::mul(r, &acc, p)))
}

/// Monic polynomials `f_1, ..., f_m` with `f = prod f_i^i`, squarefree and
/// pairwise coprime, `f_m != 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub parts: Vec<DensePoly>,
}

impl SquarefreeDecomposition {
    /// `prod f_i^i`.
    pub fn reconstruct(&self, ctx: FieldCtx) -> DensePoly {
        self.parts
            .iter()
            .enumerate()
            .fold(DensePoly::one(ctx), |acc, (i, p)| acc.mul(&p.pow(i as u64 + 1)))
    }

    /// `prod f_i`.
    pub fn radical(&self, ctx: FieldCtx) -> DensePoly {
        self.parts.iter().fold(DensePoly::one(ctx), |acc, p| acc.mul(p))
    }
}

fn check_monic(f: &DensePoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

fn check_same(f: &DensePoly, gs: &[DensePoly]) -> Result<()> {
    if gs.iter().any(|g| g.ctx() != f.ctx()) {
        return Err(Error::ModulusMismatch);
    }
    Ok(())
}

fn wrap(ctx: FieldCtx, pair: (Vec<u64>, Vec<u64>)) -> (DensePoly, DensePoly) {
    (DensePoly::new(ctx, pair.0), DensePoly::new(ctx, pair.1))
}

/// Splits `f` into the part at common roots of all `gs` and the rest.
pub fn filter_common_roots(f: &DensePoly, gs: &[DensePoly]) -> Result<(DensePoly, DensePoly)> {
    check_monic(f)?;
    check_same(f, gs)?;
    let ctx = f.ctx();
    let top = gs.iter().map(|g| g.deg_or_zero()).fold(f.deg_or_zero(), usize::max);
    ctx.guard(Requirement::Degree(top))?;
    let gs: Vec<Vec<u64>> = gs.iter().map(|g| g.coeffs().to_vec()).collect();
    Ok(wrap(ctx, filter_generic(&ctx, f.coeffs(), &gs)?))
}

/// Splits `f` by whether each root has multiplicity at least `rs[j]` in
/// every `gs[j]`.
pub fn threshold_multiplicity(
    f: &DensePoly,
    gs: &[DensePoly],
    rs: &[usize],
) -> Result<(DensePoly, DensePoly)> {
    check_monic(f)?;
    check_same(f, gs)?;
    if gs.len() != rs.len() {
        return Err(Error::InvalidArgument("one threshold per polynomial".into()));
    }
    let ctx = f.ctx();
    let top = gs.iter().map(|g| g.deg_or_zero()).fold(f.deg_or_zero(), usize::max);
    ctx.guard(Requirement::Degree(top))?;
    let gv: Vec<Vec<u64>> = gs.iter().map(|g| g.coeffs().to_vec()).collect();
    Ok(wrap(ctx, threshold_generic(&ctx, f.coeffs(), &gv, rs)?))
}

pub fn squarefree_decomposition(f: &DensePoly) -> Result<SquarefreeDecomposition> {
    check_monic(f)?;
    let ctx = f.ctx();
    ctx.guard(Requirement::Degree(f.deg_or_zero()))?;
    let parts = squarefree_generic(&ctx, f.coeffs())?;
    Ok(SquarefreeDecomposition { parts: parts.into_iter().map(|p| DensePoly::new(ctx, p)).collect() })
}

pub fn squarefree_part(f: &DensePoly) -> Result<DensePoly> {
    Ok(squarefree_decomposition(f)?.radical(f.ctx()))
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

    fn roots(rs: &[(u64, usize)]) -> DensePoly {
        let flat: Vec<u64> = rs.iter().flat_map(|&(a, m)| core::iter::repeat(a).take(m)).collect();
        DensePoly::from_roots(ctx(), &flat)
    }

    #[test]
    fn filter_examples() {
        let f = poly(&[2, -3, 1]);
        assert_eq!(filter_common_roots(&f, &[poly(&[-1, 1])]).unwrap(), (poly(&[-1, 1]), poly(&[-2, 1])));
        let f = roots(&[(0, 1), (1, 1), (2, 1)]);
        let gs = [roots(&[(0, 1), (1, 1)]), roots(&[(0, 1), (2, 1)])];
        assert_eq!(filter_common_roots(&f, &gs).unwrap(), (poly(&[0, 1]), poly(&[2, -3, 1])));
        assert_eq!(filter_common_roots(&f, &[poly(&[1])]).unwrap(), (poly(&[1]), f.clone()));
    }

    #[test]
    fn threshold_examples() {
        let f = roots(&[(1, 2), (2, 1)]);
        assert_eq!(
            threshold_multiplicity(&f, &[f.clone()], &[2]).unwrap(),
            (roots(&[(1, 2)]), roots(&[(2, 1)]))
        );
        assert_eq!(threshold_multiplicity(&f, &[poly(&[-1, 1])], &[2]).unwrap(), (poly(&[1]), f.clone()));
        let g = poly(&[-1, 1]);
        assert_eq!(
            threshold_multiplicity(&f, &[g.clone()], &[1]).unwrap(),
            filter_common_roots(&f, &[g]).unwrap()
        );
    }

    #[test]
    fn squarefree_examples() {
        let d = squarefree_decomposition(&roots(&[(1, 1), (2, 2)])).unwrap();
        assert_eq!(d.parts, vec![poly(&[-1, 1]), poly(&[-2, 1])]);
        let d = squarefree_decomposition(&roots(&[(1, 3)])).unwrap();
        assert_eq!(d.parts, vec![poly(&[1]), poly(&[1]), poly(&[-1, 1])]);
        let f = roots(&[(3, 1), (4, 1), (9, 1)]);
        assert_eq!(squarefree_decomposition(&f).unwrap().parts, vec![f.clone()]);
        assert_eq!(squarefree_part(&roots(&[(1, 2), (2, 1)])).unwrap(), poly(&[2, -3, 1]));
        assert_eq!(squarefree_part(&f).unwrap(), f);
        assert_eq!(squarefree_part(&poly(&[0, 0, 0, 0, 1])).unwrap(), poly(&[0, 1]));
        assert!(squarefree_decomposition(&poly(&[1])).unwrap().parts.is_empty());
    }

    #[test]
    fn repeated_condition_needs_resampling() {
        // Conditions x - 1 and x - 2 share no root; the merged condition
        // x - 1 + z0 (x - 2) vanishes at some root for unlucky z0 only.
        let f = roots(&[(1, 1), (2, 1), (3, 1)]);
        let gs = [poly(&[-1, 1]), poly(&[-2, 1])];
        assert_eq!(filter_common_roots(&f, &gs).unwrap(), (poly(&[1]), f.clone()));
    }

    fn profile_strategy(m: usize) -> impl Strategy<Value = MultiplicityProfile> {
        prop::collection::btree_map(0u64..40, prop::collection::vec(0usize..5, m), 1..8).prop_map(|map| {
            MultiplicityProfile {
                entries: map.into_iter().map(|(root, mults)| ProfileEntry { root, mults }).collect(),
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn filter_matches_root_sets(prof in profile_strategy(3)) {
            let c = ctx();
            let fs = oracle::instance_from_profile(c, &prof).unwrap();
            let (f_in, f_out) = filter_common_roots(&fs[0], &fs[1..]).unwrap();
            prop_assert_eq!(f_in.mul(&f_out), fs[0].clone());
            let expect: Vec<(u64, usize)> = prof.entries.iter()
                .filter(|e| e.mults[0] > 0 && e.mults[1] > 0 && e.mults[2] > 0)
                .map(|e| (e.root, e.mults[0])).collect();
            prop_assert_eq!(f_in, roots(&expect));
        }

        #[test]
        fn threshold_matches_multiplicities(prof in profile_strategy(3), r1 in 1usize..4, r2 in 1usize..4) {
            let c = ctx();
            let fs = oracle::instance_from_profile(c, &prof).unwrap();
            let (ge, lt) = threshold_multiplicity(&fs[0], &fs[1..], &[r1, r2]).unwrap();
            prop_assert_eq!(ge.mul(&lt), fs[0].clone());
            let expect: Vec<(u64, usize)> = prof.entries.iter()
                .filter(|e| e.mults[0] > 0 && e.mults[1] >= r1 && e.mults[2] >= r2)
                .map(|e| (e.root, e.mults[0])).collect();
            prop_assert_eq!(ge, roots(&expect));
        }

        #[test]
        fn squarefree_matches_yun(prof in profile_strategy(1)) {
            let c = ctx();
            let f = oracle::instance_from_profile(c, &prof).unwrap().remove(0);
            let d = squarefree_decomposition(&f).unwrap();
            prop_assert_eq!(d.reconstruct(c), f.clone());
            prop_assert_eq!(d.parts.clone(), oracle::yun_squarefree(&f).unwrap());
            for (i, p) in d.parts.iter().enumerate() {
                prop_assert!(oracle::euclid_gcd(p, &p.derivative(1)).is_one() || p.is_one());
                for q in &d.parts[i + 1..] {
                    prop_assert!(oracle::euclid_gcd(p, q).is_one());
                }
            }
            if let Some(last) = d.parts.last() {
                prop_assert!(!last.is_one());
            }
        }

        #[test]
        fn derivative_characterizes_multiplicity(prof in profile_strategy(1), r in 1usize..5) {
            let c = ctx();
            let f = oracle::instance_from_profile(c, &prof).unwrap().remove(0);
            for e in &prof.entries {
                let vanish = (0..r).all(|j| f.derivative(j).eval(e.root) == 0);
                prop_assert_eq!(vanish, e.mults[0] >= r);
            }
        }
    }
}
