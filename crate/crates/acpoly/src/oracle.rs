//! Classical sequential reference algorithms and instance generation.
//!
//! Nothing here is used by the fast paths; these routines are the ground
//! truth the rest of the crate is tested against. They are written for
//! clarity, not speed: Euclid's algorithm, schoolbook long division, Yun's
//! squarefree decomposition, Bareiss elimination and the triangular Newton
//! recurrence.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::Matrix;
use crate::upoly::DensePoly;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Quotient and remainder of schoolbook long division by a nonzero `g`.
pub fn long_division(f: &DensePoly, g: &DensePoly) -> (DensePoly, DensePoly) {
    let ctx = f.ctx();
    assert!(!g.is_zero(), "division by the zero polynomial");
    let m = g.deg().unwrap();
    let lc_inv = ctx.inv(g.lead()).unwrap();
    let mut rem: Vec<u64> = f.coeffs().to_vec();
    if rem.len() <= m {
        return (DensePoly::zero(ctx), f.clone());
    }
    let mut quot = vec![0u64; rem.len() - m];
    for i in (m..rem.len()).rev() {
        let c = ctx.mul(rem[i], lc_inv);
        quot[i - m] = c;
        if c == 0 {
            continue;
        }
        for (j, &gj) in g.coeffs().iter().enumerate() {
            rem[i - m + j] = ctx.sub(rem[i - m + j], ctx.mul(c, gj));
        }
    }
    rem.truncate(m);
    (DensePoly::new(ctx, quot), DensePoly::new(ctx, rem))
}

fn monic_or_zero(f: DensePoly) -> DensePoly {
    if f.is_zero() {
        f
    } else {
        f.make_monic().unwrap().0
    }
}

/// Monic gcd by Euclid's algorithm; `euclid_gcd(0, 0) = 0`.
pub fn euclid_gcd(f: &DensePoly, g: &DensePoly) -> DensePoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = long_division(&a, &b);
        a = b;
        b = r;
    }
    monic_or_zero(a)
}

/// gcd of several polynomials by iterated Euclid.
pub fn euclid_gcd_many(fs: &[DensePoly]) -> DensePoly {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = euclid_gcd(&acc, f);
    }
    monic_or_zero(acc)
}

/// lcm of several nonzero polynomials as `a b / gcd(a, b)` iterated.
pub fn euclid_lcm_many(fs: &[DensePoly]) -> DensePoly {
    let mut acc = monic_or_zero(fs[0].clone());
    for f in &fs[1..] {
        let g = euclid_gcd(&acc, f);
        let (q, r) = long_division(&acc.mul(f), &g);
        assert!(r.is_zero());
        acc = monic_or_zero(q);
    }
    acc
}

/// One row `(r_i, s_i, t_i)` of the extended Euclidean scheme, with
/// `s_i f + t_i g = r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidRow {
    pub r: DensePoly,
    pub s: DensePoly,
    pub t: DensePoly,
}

/// The full remainder sequence with cofactors, ending with the zero remainder.
pub fn extended_euclid(f: &DensePoly, g: &DensePoly) -> Vec<EuclidRow> {
    let ctx = f.ctx();
    let mut rows = vec![
        EuclidRow { r: f.clone(), s: DensePoly::one(ctx), t: DensePoly::zero(ctx) },
        EuclidRow { r: g.clone(), s: DensePoly::zero(ctx), t: DensePoly::one(ctx) },
    ];
    while !rows.last().unwrap().r.is_zero() {
        let k = rows.len();
        let (q, r) = long_division(&rows[k - 2].r, &rows[k - 1].r);
        let s = rows[k - 2].s.sub(&q.mul(&rows[k - 1].s));
        let t = rows[k - 2].t.sub(&q.mul(&rows[k - 1].t));
        rows.push(EuclidRow { r, s, t });
    }
    rows
}

/// Bezout coefficients `(a, b)` with `a f + b g = gcd(f, g)` (monic gcd),
/// reduced to the minimal degrees.
pub fn extended_euclid_bezout(f: &DensePoly, g: &DensePoly) -> (DensePoly, DensePoly) {
    let rows = extended_euclid(f, g);
    let last = &rows[rows.len() - 2];
    let inv = f.ctx().inv(last.r.lead()).unwrap();
    (last.s.scale(inv), last.t.scale(inv))
}

/// Yun's squarefree decomposition of a monic polynomial.
pub fn yun_squarefree(f: &DensePoly) -> Result<Vec<DensePoly>> {
    let ctx = f.ctx();
    ctx.char_guard(f.deg_or_zero() as u64)?;
    if f.deg_or_zero() == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative(1);
    let a0 = euclid_gcd(f, &df);
    let mut b = long_division(f, &a0).0;
    let c = long_division(&df, &a0).0;
    let mut d = c.sub(&b.derivative(1));
    let mut parts = Vec::new();
    while b.deg_or_zero() > 0 {
        let a = euclid_gcd(&b, &d);
        let nb = long_division(&b, &a).0;
        let c = long_division(&d, &a).0;
        d = c.sub(&nb.derivative(1));
        b = nb;
        parts.push(monic_or_zero(a));
    }
    while parts.last().is_some_and(|p| p.is_one()) {
        parts.pop();
    }
    Ok(parts)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn bareiss_det(m: &Matrix) -> u64 {
    assert!(m.is_square());
    let f = m.ctx;
    let n = m.rows;
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = 1u64;
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return 0,
            }
        }
        let prev_inv = f.inv(prev).unwrap();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = f.sub(f.mul(a[k][k], a[i][j]), f.mul(a[i][k], a[k][j]));
                a[i][j] = f.mul(num, prev_inv);
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let d = a[n - 1][n - 1];
    if negate {
        f.neg(d)
    } else {
        d
    }
}

/// Determinant by cofactor expansion along the first row (tiny matrices only).
pub fn cofactor_det(m: &Matrix) -> u64 {
    let f = m.ctx;
    let n = m.rows;
    if n == 0 {
        return 1;
    }
    let mut total = 0u64;
    for j in 0..n {
        let mut minor = Matrix::zeros(f, n - 1, n - 1);
        for i in 1..n {
            let mut cc = 0;
            for jj in 0..n {
                if jj != j {
                    minor.set(i - 1, cc, m.get(i, jj));
                    cc += 1;
                }
            }
        }
        let term = f.mul(m.get(0, j), cofactor_det(&minor));
        total = if j % 2 == 0 { f.add(total, term) } else { f.sub(total, term) };
    }
    total
}

/// Power sums `p_0..p_d` of the roots of monic `f` by Newton's recurrence.
pub fn newton_power_sums(f: &DensePoly, d: usize) -> Vec<u64> {
    let ctx = f.ctx();
    let n = f.deg().unwrap();
    // a_j is the coefficient of x^{n-j}
    let a = |j: usize| if j <= n { f.coeff(n - j) } else { 0 };
    let mut p = vec![0u64; d + 1];
    p[0] = ctx.from_u64(n as u64);
    for k in 1..=d {
        let mut s = 0u64;
        for j in 1..=k.min(n) {
            if j < k {
                s = ctx.add(s, ctx.mul(a(j), p[k - j]));
            }
        }
        if k <= n {
            s = ctx.add(s, ctx.mul(ctx.from_u64(k as u64), a(k)));
        }
        p[k] = ctx.neg(s);
    }
    p
}

/// `e_d` of the values by summing over all `d`-subsets (tiny inputs only).
pub fn esym_brute(ctx: FieldCtx, values: &[u64], d: usize) -> u64 {
    fn rec(ctx: FieldCtx, v: &[u64], d: usize) -> u64 {
        if d == 0 {
            return 1;
        }
        if v.len() < d {
            return 0;
        }
        let with = ctx.mul(v[0], rec(ctx, &v[1..], d - 1));
        ctx.add(with, rec(ctx, &v[1..], d))
    }
    rec(ctx, values, d)
}

/// One root with its multiplicity in each generated polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub root: u64,
    pub mults: Vec<usize>,
}

/// Roots with prescribed multiplicities in each of `m` polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub entries: Vec<ProfileEntry>,
}

impl MultiplicityProfile {
    /// Number of polynomials described.
    pub fn arity(&self) -> usize {
        self.entries.first().map_or(0, |e| e.mults.len())
    }

    /// Degree of the `j`-th polynomial.
    pub fn degree(&self, j: usize) -> usize {
        self.entries.iter().map(|e| e.mults[j]).sum()
    }

    /// The polynomial `prod (x - root)^{P(mults)}` for an arbitrary
    /// function `P` of the multiplicity tuple.
    pub fn combine(&self, ctx: FieldCtx, p: impl Fn(&[usize]) -> usize) -> DensePoly {
        let mut acc = DensePoly::one(ctx);
        for e in &self.entries {
            for _ in 0..p(&e.mults) {
                acc = mul_linear(&acc, e.root);
            }
        }
        acc
    }
}

fn mul_linear(f: &DensePoly, root: u64) -> DensePoly {
    let ctx = f.ctx();
    let c = f.coeffs();
    let mut out = vec![0u64; c.len() + 1];
    for (i, &v) in c.iter().enumerate() {
        out[i + 1] = ctx.add(out[i + 1], v);
        out[i] = ctx.sub(out[i], ctx.mul(v, root));
    }
    DensePoly::new(ctx, out)
}

/// The monic polynomials `prod (x - root)^{mult_j}`, one per column.
pub fn instance_from_profile(ctx: FieldCtx, prof: &MultiplicityProfile) -> Result<Vec<DensePoly>> {
    let mut seen = BTreeSet::new();
    for e in &prof.entries {
        if e.root >= ctx.p() || !seen.insert(e.root) {
            return Err(Error::FieldTooSmall);
        }
    }
    Ok((0..prof.arity()).map(|j| prof.combine(ctx, |m| m[j])).collect())
}

/// A deterministic random profile for `m` polynomials.
pub fn random_profile(
    ctx: FieldCtx,
    seed: u64,
    m: usize,
    max_roots: usize,
    max_mult: usize,
) -> Result<MultiplicityProfile> {
    random_profile_capped(ctx, seed, m, max_roots, max_mult, usize::MAX)
}

/// As [`random_profile`], with every polynomial's degree at most `max_deg`.
pub fn random_profile_capped(
    ctx: FieldCtx,
    seed: u64,
    m: usize,
    max_roots: usize,
    max_mult: usize,
    max_deg: usize,
) -> Result<MultiplicityProfile> {
    if (max_roots as u64) >= ctx.p() || max_roots == 0 || max_mult == 0 || max_deg == 0 {
        return Err(Error::FieldTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=max_roots);
    let mut roots = BTreeSet::new();
    while roots.len() < k {
        roots.insert(rng.gen_range(0..ctx.p()));
    }
    let mut entries: Vec<ProfileEntry> = roots
        .into_iter()
        .map(|root| ProfileEntry { root, mults: (0..m).map(|_| rng.gen_range(0..=max_mult)).collect() })
        .collect();
    for j in 0..m {
        if entries.iter().all(|e| e.mults[j] == 0) {
            let i = rng.gen_range(0..k);
            entries[i].mults[j] = 1;
        }
        loop {
            let deg: usize = entries.iter().map(|e| e.mults[j]).sum();
            if deg <= max_deg {
                break;
            }
            let positive: Vec<usize> = (0..k).filter(|&i| entries[i].mults[j] > 0).collect();
            let i = positive[rng.gen_range(0..positive.len())];
            if deg > 1 || entries[i].mults[j] > 1 {
                entries[i].mults[j] -= 1;
            }
        }
    }
    Ok(MultiplicityProfile { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn p(s: &str) -> DensePoly {
        DensePoly::parse(f(), s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let a = p("x^3-4*x^2+5*x-2"); // (x-1)^2 (x-2)
        let b = p("x^2-4*x+3"); // (x-1)(x-3)
        assert_eq!(euclid_gcd(&a, &b), p("x-1"));
        assert_eq!(euclid_gcd(&p("2*x+4"), &DensePoly::zero(f())), p("x+2"));
    }

    #[test]
    fn extended_scheme_example() {
        let rows = extended_euclid(&p("x^3"), &p("x^2-1"));
        let rs: Vec<DensePoly> = rows.iter().map(|r| r.r.clone()).collect();
        assert_eq!(rs, vec![p("x^3"), p("x^2-1"), p("x"), p("-1"), DensePoly::zero(f())]);
        for row in &rows {
            assert_eq!(row.s.mul(&p("x^3")).add(&row.t.mul(&p("x^2-1"))), row.r);
        }
    }

    #[test]
    fn long_division_examples() {
        assert_eq!(long_division(&p("x^3"), &p("x^2-1")), (p("x"), p("x")));
        let g = p("x^2+5");
        assert_eq!(long_division(&g, &g), (p("1"), DensePoly::zero(f())));
        let z = DensePoly::zero(f());
        assert_eq!(long_division(&z, &g), (z.clone(), z));
    }

    #[test]
    fn yun_examples() {
        assert_eq!(yun_squarefree(&p("x^3-5*x^2+8*x-4")).unwrap(), vec![p("x-1"), p("x-2")]);
        assert_eq!(yun_squarefree(&p("x^3-3*x^2+3*x-1")).unwrap(), vec![p("1"), p("1"), p("x-1")]);
        let sq = p("x^3+x+1");
        assert_eq!(yun_squarefree(&sq).unwrap(), vec![sq]);
    }

    #[test]
    fn determinant_examples() {
        let ctx = f();
        let m = Matrix::from_rows_i64(ctx, &[&[1, 1], &[-1, -2]]);
        assert_eq!(bareiss_det(&m), ctx.from_i64(-1));
        assert_eq!(bareiss_det(&Matrix::identity(ctx, 4)), 1);
        // Syl(x^2 - 1, x - 2)
        let s = Matrix::from_rows_i64(ctx, &[&[1, 1, 0], &[0, -2, 1], &[-1, 0, -2]]);
        assert_eq!(bareiss_det(&s), 3);
    }

    #[test]
    fn profile_examples() {
        let ctx = f();
        let prof = MultiplicityProfile {
            entries: vec![ProfileEntry { root: 1, mults: vec![2] }, ProfileEntry { root: 2, mults: vec![1] }],
        };
        assert_eq!(instance_from_profile(ctx, &prof).unwrap(), vec![p("x^3-4*x^2+5*x-2")]);
        let single = MultiplicityProfile { entries: vec![ProfileEntry { root: 5, mults: vec![1] }] };
        assert_eq!(instance_from_profile(ctx, &single).unwrap(), vec![p("x-5")]);
        let a = random_profile(ctx, 7, 3, 6, 4).unwrap();
        assert_eq!(a, random_profile(ctx, 7, 3, 6, 4).unwrap());
        let tiny = FieldCtx::new(5).unwrap();
        assert_eq!(random_profile(tiny, 0, 1, 10, 2), Err(Error::FieldTooSmall));
    }

    #[test]
    fn power_sum_recurrence() {
        let roots = [1u64, 2];
        let g = DensePoly::from_roots(f(), &roots);
        assert_eq!(newton_power_sums(&g, 3), vec![2, 3, 5, 9]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(0u64..1_000_003, n * n)
                .prop_map(move |v| Matrix { ctx: f(), rows: n, cols: n, entries: v })
        })
    }

    proptest! {
        #[test]
        fn euclid_rows_satisfy_identity(a in proptest::collection::vec(0u64..1_000_003, 1..10),
                                        b in proptest::collection::vec(0u64..1_000_003, 1..10)) {
            let (a, b) = (DensePoly::new(f(), a), DensePoly::new(f(), b));
            for row in extended_euclid(&a, &b) {
                prop_assert_eq!(row.s.mul(&a).add(&row.t.mul(&b)), row.r);
            }
        }

        #[test]
        fn bareiss_matches_cofactors(m in small_matrix()) {
            prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
        }

        #[test]
        fn bareiss_on_singular(m in small_matrix()) {
            // Duplicate the first row.
            let mut s = m.clone();
            for j in 0..s.cols {
                let v = s.get(0, j);
                if s.rows > 1 { s.set(1, j, v); }
            }
            if s.rows > 1 { prop_assert_eq!(bareiss_det(&s), 0); }
        }

        #[test]
        fn profile_roots_read_back(seed in any::<u64>()) {
            let ctx = f();
            let prof = random_profile_capped(ctx, seed, 2, 6, 4, 12).unwrap();
            let polys = instance_from_profile(ctx, &prof).unwrap();
            for (j, g) in polys.iter().enumerate() {
                prop_assert!(g.deg().unwrap() <= 12);
                prop_assert_eq!(g.deg().unwrap(), prof.degree(j));
                for e in &prof.entries {
                    // multiplicity of the root, read by repeated division by (x - root)
                    let lin = DensePoly::from_roots(ctx, &[e.root]);
                    let mut q = g.clone();
                    let mut mult = 0;
                    loop {
                        let (qq, r) = long_division(&q, &lin);
                        if !r.is_zero() { break; }
                        q = qq;
                        mult += 1;
                    }
                    prop_assert_eq!(mult, e.mults[j]);
                }
            }
        }
    }
}
