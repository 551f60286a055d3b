//! Reference computations behind `--check`: Euclidean remainder sequences,
//! Yun's algorithm, Bareiss determinants and definitions evaluated term by
//! term. None of them share code with the fast paths they are compared to.

use acpoly::circuit::{ArithCircuit, BuildKind};
use acpoly::matrix::Matrix;
use acpoly::mpoly::MPolyCircuit;
use acpoly::oracle::{bareiss_det, esym_brute, euclid_gcd, euclid_gcd_many, long_division, newton_power_sums, yun_squarefree};
use acpoly::structmat::{sylvester_matrix, ComposeMode};
use acpoly::upoly::interpolate_coeffs;
use acpoly::{DensePoly, FieldCtx, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `res(f, g)` as the determinant of the Sylvester matrix, with the
/// conventions `res(c, g) = c^deg g` and `res(f, 0) = 0` for `deg f > 0`.
pub fn resultant(f: &DensePoly, g: &DensePoly) -> u64 {
    if g.is_zero() {
        return if f.deg_or_zero() == 0 { 1 } else { 0 };
    }
    if f.is_zero() {
        return 0;
    }
    if f.deg_or_zero() + g.deg_or_zero() == 0 {
        return 1;
    }
    bareiss_det(&sylvester_matrix(f, g).expect("nonzero inputs"))
}

/// `lc^(2n-2) (-1)^C(n,2) res(f/lc, (f/lc)')`.
pub fn discriminant(f: &DensePoly) -> Result<u64> {
    let ctx = f.ctx();
    let n = f.deg_or_zero();
    if n <= 1 {
        return Ok(1);
    }
    let (m, lc) = f.make_monic()?;
    let r = bareiss_det(&sylvester_matrix(&m, &m.derivative(1))?);
    let r = if (n * (n - 1) / 2) % 2 == 1 { ctx.neg(r) } else { r };
    Ok(ctx.mul(ctx.pow(lc, (2 * n - 2) as u64), r))
}

/// Yun's parts with trailing ones removed.
pub fn squarefree_parts(f: &DensePoly) -> Result<Vec<DensePoly>> {
    yun_squarefree(&f.make_monic()?.0)
}

/// The part of `f` at roots where every `g_j` vanishes to order at least
/// `r_j`, and the rest. The condition on `g_j` is that `g_j` and its first
/// `r_j - 1` derivatives vanish.
pub fn threshold_split(f: &DensePoly, gs: &[DensePoly], rs: &[usize]) -> (DensePoly, DensePoly) {
    let mut s = f.clone();
    for (g, &r) in gs.iter().zip(rs) {
        let derivs: Vec<DensePoly> = (0..r).map(|k| g.derivative(k)).collect();
        if !derivs.is_empty() {
            s = euclid_gcd(&s, &euclid_gcd_many(&derivs));
        }
    }
    let inside = euclid_gcd(f, &s.pow(f.deg_or_zero() as u64));
    let (mf, _) = f.make_monic().expect("nonzero input");
    let outside = long_division(&mf, &inside).0;
    (inside, outside)
}

/// `prod_tuple piece(tuple)^P(tuple)`, where `piece(tuple)` collects the
/// roots whose multiplicity in `fs[i]` is `tuple[i]`, found from Yun's
/// parts of each input and of the product.
pub fn diamond(ctx: FieldCtx, fs: &[DensePoly], p: impl Fn(&[usize]) -> Result<u64>) -> Result<DensePoly> {
    let product = fs.iter().fold(DensePoly::one(ctx), |acc, f| acc.mul(f));
    let radical = |parts: &[DensePoly]| parts.iter().fold(DensePoly::one(ctx), |acc, q| acc.mul(q));
    let s = radical(&yun_squarefree(&product)?);
    let mut pieces: Vec<Vec<DensePoly>> = Vec::with_capacity(fs.len());
    for f in fs {
        let parts = yun_squarefree(f)?;
        let mut row = vec![long_division(&s, &radical(&parts)).0];
        row.extend(parts);
        pieces.push(row);
    }
    let mut acc = DensePoly::one(ctx);
    let mut tuple = vec![0usize; fs.len()];
    loop {
        let chosen: Vec<DensePoly> = tuple.iter().zip(&pieces).map(|(&k, row)| row[k].clone()).collect();
        let piece = euclid_gcd_many(&chosen);
        if piece.deg_or_zero() > 0 {
            acc = acc.mul(&piece.pow(p(&tuple)?));
        }
        let mut i = 0;
        loop {
            if i == tuple.len() {
                return Ok(acc);
            }
            tuple[i] += 1;
            if tuple[i] < pieces[i].len() {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// Entry `(i, j)` is the coefficient of `x^i y^j` in
/// `(f(x) g(y) - f(y) g(x)) / (x - y)`, expanded pair of terms by pair.
pub fn bezout_matrix(f: &DensePoly, g: &DensePoly, n: usize) -> Matrix {
    let ctx = f.ctx();
    let mut m = Matrix::zeros(ctx, n, n);
    for a in 0..=f.deg_or_zero() {
        for b in 0..=g.deg_or_zero() {
            if a == b {
                continue;
            }
            let c = ctx.mul(f.coeff(a), g.coeff(b));
            let c = if a > b { c } else { ctx.neg(c) };
            let (lo, k) = (a.min(b), a.abs_diff(b));
            for t in 0..k {
                let (i, j) = (lo + t, lo + k - 1 - t);
                m.set(i, j, ctx.add(m.get(i, j), c));
            }
        }
    }
    m
}

/// `res_y(f(y), g(x - y))` or `res_y(f(y), y^m g(x / y))` at `nm + 1`
/// values of `x`, each a Bareiss determinant, then interpolated.
pub fn composed(f: &DensePoly, g: &DensePoly, mode: ComposeMode) -> Result<DensePoly> {
    let ctx = f.ctx();
    let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
    let mut points = Vec::with_capacity(n * m + 1);
    for x0 in 0..=(n * m) as u64 {
        let h = match mode {
            ComposeMode::Sum => {
                // g(x0 - y) = sum_k g_k (x0 - y)^k.
                let shift = DensePoly::new(ctx, vec![x0, ctx.neg(1)]);
                (0..=m).fold(DensePoly::zero(ctx), |acc, k| acc.add(&shift.pow(k as u64).scale(g.coeff(k))))
            }
            ComposeMode::Product => {
                DensePoly::new(ctx, (0..=m).map(|k| ctx.mul(g.coeff(m - k), ctx.pow(x0, (m - k) as u64))).collect())
            }
        };
        points.push((ctx.elem(x0), ctx.elem(resultant(f, &h))));
    }
    interpolate_coeffs(&points)
}

/// Runs the generic-input reference for a built circuit at a random point
/// and returns `(circuit outputs, expected outputs)`.
pub fn circuit_instance(ctx: FieldCtx, c: &ArithCircuit, kind: BuildKind, rng: &mut ChaCha8Rng) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut rand_vec = |k: usize| -> Vec<u64> { (0..k).map(|_| rng.gen_range(0..ctx.p())).collect() };
    let monic = |mut v: Vec<u64>| {
        v.push(1);
        DensePoly::new(ctx, v)
    };
    Ok(match kind {
        BuildKind::ESym { n, d } => {
            let x = rand_vec(n);
            (c.eval(&x)?, vec![esym_brute(ctx, &x, d)])
        }
        BuildKind::PowerSums { n, d } => {
            let x = rand_vec(n);
            (c.eval(&x)?, newton_power_sums(&monic(x), d))
        }
        BuildKind::CoeffsFromPowerSums { n } => {
            let roots = rand_vec(n);
            let sums: Vec<u64> = (1..=n as u64).map(|k| roots.iter().fold(0, |acc, &r| ctx.add(acc, ctx.pow(r, k)))).collect();
            (c.eval(&sums)?, DensePoly::from_roots(ctx, &roots).coeffs().to_vec())
        }
        BuildKind::Resultant { n, m } => {
            let x = rand_vec(n + m + 1);
            let f = monic(x[..n].to_vec());
            let g = DensePoly::new(ctx, x[n..].to_vec());
            (c.eval(&x)?, vec![resultant(&f, &g)])
        }
        BuildKind::Gcd { n, m } => {
            // A shared factor of random degree makes the gcd nontrivial.
            let k = (rand_vec(1)[0] % (n.min(m) as u64 + 1)) as usize;
            let h = monic(rand_vec(k));
            let f = h.mul(&monic(rand_vec(n - k)));
            let g = h.mul(&monic(rand_vec(m - k)));
            let mut x = f.coeffs()[..n].to_vec();
            x.extend_from_slice(&g.coeffs()[..m]);
            let out = c.eval(&x)?;
            let got = acpoly::circuit::decode_gcd_outputs(ctx, &out, n, m)?;
            (got.coeffs().to_vec(), euclid_gcd(&f, &g).coeffs().to_vec())
        }
    })
}

/// A random line `a + t b` through the variable space.
pub fn random_line(ctx: FieldCtx, nvars: usize, rng: &mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>) {
    let mut v = || (0..nvars).map(|_| rng.gen_range(0..ctx.p())).collect::<Vec<u64>>();
    (v(), v())
}

/// The univariate restriction `t -> f(a + t b)`, interpolated from
/// `degree + 1` values.
pub fn restrict(f: &MPolyCircuit, line: &(Vec<u64>, Vec<u64>)) -> Result<DensePoly> {
    let ctx = f.ctx();
    let (a, b) = line;
    let mut points = Vec::with_capacity(f.degree_bound + 1);
    for t in 0..=f.degree_bound as u64 {
        let x: Vec<u64> = a.iter().zip(b).map(|(&ai, &bi)| ctx.add(ai, ctx.mul(t, bi))).collect();
        points.push((ctx.elem(t), ctx.elem(f.eval(&x)?)));
    }
    interpolate_coeffs(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn p(s: &str) -> DensePoly {
        DensePoly::parse(f(), s).unwrap()
    }

    #[test]
    fn discriminant_of_quadratic() {
        // b^2 - 4ac for 2x^2 + 3x + 1 is 1; for x^2 + 2x + 1 it is 0.
        assert_eq!(discriminant(&p("2*x^2+3*x+1")).unwrap(), 1);
        assert_eq!(discriminant(&p("x^2+2*x+1")).unwrap(), 0);
    }

    #[test]
    fn composed_sum_of_linear_factors() {
        let got = composed(&p("x-1"), &p("x^2-5*x+6"), ComposeMode::Sum).unwrap();
        assert_eq!(got, p("x^2-7*x+12"));
        let got = composed(&p("x-2"), &p("x^2-5*x+6"), ComposeMode::Product).unwrap();
        assert_eq!(got, p("x^2-10*x+24"));
    }

    #[test]
    fn threshold_reference() {
        // Roots 1, 2, 3 of f; g = (x-1)^2 (x-2).
        let ctx = f();
        let fx = DensePoly::from_roots(ctx, &[1, 2, 3]);
        let g = DensePoly::from_roots(ctx, &[1, 1, 2]);
        let (inside, outside) = threshold_split(&fx, &[g], &[2]);
        assert_eq!(inside, p("x-1"));
        assert_eq!(outside, p("x^2-5*x+6"));
    }

    #[test]
    fn bezout_matrix_of_linear_pair() {
        // (x - y) / (x - y) = 1.
        let m = bezout_matrix(&p("x"), &p("1"), 1);
        assert_eq!(m.get(0, 0), 1);
    }
}
