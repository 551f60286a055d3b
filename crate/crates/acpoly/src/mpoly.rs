//! Multivariate polynomials given by circuits: squarefree decomposition,
//! gcd and lcm.
//!
//! A random shift `x -> x + y alpha` with `f_top(alpha) != 0` makes the
//! input monic in the new variable `y` over the coefficient ring
//! `F[x_1..x_n]`, and the univariate algorithms then run unchanged over that
//! ring. Coefficient-ring elements are represented by their values on a
//! sample set: a random tensor grid, large enough to interpolate the
//! results, plus extra points drawn from the whole field. A zero test is a
//! check at every sample point, so branch decisions are made for the
//! polynomial and not for any one specialization. Inverting an element that
//! vanishes at some sample point triggers a fresh sample.
//!
//! Since the shift is the identity at `y = 0`, every result `Q(x, y)` maps
//! back to `Q(x, 0)`. That polynomial is interpolated on the grid and
//! emitted as a depth-2 circuit without selects or divisions.

use crate::circuit::{find_nonzero_point, homogeneous_components, pit, ArithCircuit, CircuitBuilder, NodeId};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::gcdlib;
use crate::gpoly;
use crate::ring::Ring;
use crate::rootops;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest number of variables accepted.
pub const MAX_VARS: usize = 4;
/// Largest declared degree accepted.
pub const MAX_DEGREE: usize = 16;
/// Sample points beyond the interpolation grid.
const EXTRA_POINTS: usize = 40;
/// Fresh samples tried before giving up.
const SAMPLE_ATTEMPTS: usize = 16;

/// A polynomial in `nvars` variables of total degree at most
/// `degree_bound`, computed by the single output of `circuit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPolyCircuit {
    pub circuit: ArithCircuit,
    pub nvars: usize,
    pub degree_bound: usize,
}

impl MPolyCircuit {
    pub fn new(circuit: ArithCircuit, degree_bound: usize) -> Result<Self> {
        if circuit.outputs().len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "expected one output, found {}",
                circuit.outputs().len()
            )));
        }
        let nvars = circuit.inputs();
        Ok(MPolyCircuit { circuit, nvars, degree_bound })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.circuit.ctx()
    }

    pub fn eval(&self, x: &[u64]) -> Result<u64> {
        Ok(self.circuit.eval(x)?[0])
    }

    /// Checks the declared degree bound on `lines` random lines by
    /// interpolating the restriction at `degree_bound + 2` points.
    pub fn check_degree_bound(&self, lines: usize, seed: u64) -> Result<bool> {
        let ctx = self.ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = self.degree_bound + 2;
        for _ in 0..lines {
            let a: Vec<u64> = (0..self.nvars).map(|_| rng.gen_range(0..ctx.p())).collect();
            let b: Vec<u64> = (0..self.nvars).map(|_| rng.gen_range(0..ctx.p())).collect();
            let vals = (0..nodes as u64)
                .map(|t| {
                    let x: Vec<u64> = a.iter().zip(&b).map(|(&ai, &bi)| ctx.add(ai, ctx.mul(t, bi))).collect();
                    self.eval(&x)
                })
                .collect::<Result<Vec<u64>>>()?;
            if gpoly::interpolate(&ctx, &vals)?.len() > self.degree_bound + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_caps(f: &MPolyCircuit) -> Result<()> {
    if f.nvars > MAX_VARS || f.degree_bound > MAX_DEGREE {
        return Err(Error::CapExceeded(format!(
            "{} variables of degree {} exceed {MAX_VARS} and {MAX_DEGREE}",
            f.nvars, f.degree_bound
        )));
    }
    Ok(())
}

/// The nonzero homogeneous component of highest degree.
pub fn top_homogeneous(f: &MPolyCircuit, seed: u64) -> Result<MPolyCircuit> {
    let parts = homogeneous_components(&f.circuit, f.degree_bound)?;
    for (k, part) in parts.into_iter().enumerate().rev() {
        if !pit(&part, k, seed)?.is_zero() {
            return MPolyCircuit::new(part, k);
        }
    }
    Err(Error::ZeroCircuit)
}

/// `f(x + y alpha) / scale` in the variables `(x_1..x_n, y)`, monic of
/// degree `degree` in `y`, with `scale = f_top(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicTransform {
    pub circuit: MPolyCircuit,
    pub alpha: Vec<u64>,
    pub scale: u64,
    pub degree: usize,
}

fn shifted(f: &MPolyCircuit, alpha: &[u64], scale: u64, degree: usize) -> Result<MonicTransform> {
    let ctx = f.ctx();
    let n = f.nvars;
    let mut b = CircuitBuilder::new(ctx, n + 1);
    let y = b.input(n);
    let inputs: Vec<NodeId> = (0..n)
        .map(|i| {
            let xi = b.input(i);
            b.add(vec![(xi, 1), (y, alpha[i])])
        })
        .collect();
    let map = b.import(&f.circuit, &inputs);
    let out = b.add(vec![(map[f.circuit.outputs()[0]], ctx.inv(scale)?)]);
    let circuit = MPolyCircuit::new(b.finish(vec![out])?, degree)?;
    Ok(MonicTransform { circuit, alpha: alpha.to_vec(), scale, degree })
}

/// Shifts `f` so that it becomes monic in a new last variable.
pub fn monic_transform(f: &MPolyCircuit, seed: u64) -> Result<MonicTransform> {
    check_caps(f)?;
    let top = top_homogeneous(f, seed)?;
    let alpha = find_nonzero_point(&top.circuit, top.degree_bound, seed)?;
    let scale = top.eval(&alpha)?;
    shifted(f, &alpha, scale, top.degree_bound)
}

/// Elements of the coefficient ring as values at the sample points.
struct Cloud {
    ctx: FieldCtx,
    len: usize,
}

impl Ring for Cloud {
    type Elem = Vec<u64>;

    fn ctx(&self) -> FieldCtx {
        self.ctx
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.len]
    }
    fn constant(&self, c: u64) -> Vec<u64> {
        vec![c; self.len]
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.ctx.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.ctx.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| self.ctx.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.ctx.mul(x, y)).collect()
    }
    fn scale(&self, a: &Vec<u64>, c: u64) -> Vec<u64> {
        a.iter().map(|&x| self.ctx.mul(x, c)).collect()
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if a.contains(&0) {
            return Err(Error::DegenerateSample);
        }
        self.ctx.batch_inv(a)
    }
}

/// A tensor grid (first in `points`) followed by extra random points.
struct Sample {
    nodes: Vec<Vec<u64>>,
    points: Vec<Vec<u64>>,
    grid_len: usize,
}

impl Sample {
    fn new(ctx: FieldCtx, nvars: usize, side: usize, rng: &mut ChaCha8Rng) -> Result<Self> {
        if (side as u64) > ctx.p() {
            return Err(Error::FieldTooSmall);
        }
        let nodes: Vec<Vec<u64>> = (0..nvars)
            .map(|_| {
                let mut v: Vec<u64> = Vec::with_capacity(side);
                while v.len() < side {
                    let x = rng.gen_range(0..ctx.p());
                    if !v.contains(&x) {
                        v.push(x);
                    }
                }
                v
            })
            .collect();
        let grid_len = side.pow(nvars as u32);
        let mut points = Vec::with_capacity(grid_len + EXTRA_POINTS);
        for idx in 0..grid_len {
            let mut rest = idx;
            let mut p = vec![0u64; nvars];
            for v in (0..nvars).rev() {
                p[v] = nodes[v][rest % side];
                rest /= side;
            }
            points.push(p);
        }
        for _ in 0..EXTRA_POINTS {
            points.push((0..nvars).map(|_| rng.gen_range(0..ctx.p())).collect());
        }
        Ok(Sample { nodes, points, grid_len })
    }

    /// The `y`-coefficients `c_0..c_d` of a transform as ring elements.
    fn coefficients(&self, t: &MonicTransform) -> Result<Vec<Vec<u64>>> {
        let ctx = t.circuit.ctx();
        let d = t.degree;
        let mut cols: Vec<Vec<u64>> = vec![Vec::with_capacity(self.points.len()); d + 1];
        let mut x = vec![0u64; t.circuit.nvars];
        for p in &self.points {
            x[..p.len()].copy_from_slice(p);
            let vals = (0..=d as u64)
                .map(|y| {
                    x[p.len()] = y;
                    t.circuit.eval(&x)
                })
                .collect::<Result<Vec<u64>>>()?;
            let coeffs = gpoly::interpolate_low(&ctx, &vals, d + 1)?;
            for (k, c) in coeffs.into_iter().enumerate() {
                cols[k].push(c);
            }
        }
        if cols[d].iter().any(|&v| v != 1) {
            return Err(Error::NotMonic);
        }
        Ok(cols)
    }

    /// Interpolates grid values into a polynomial of total degree at most
    /// `deg` and checks it at the extra points.
    fn reconstruct(&self, ctx: FieldCtx, values: &[u64], deg: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
        let side = self.nodes.first().map_or(1, |v| v.len());
        let n = self.nodes.len();
        let mut data = values[..self.grid_len].to_vec();
        // Convert one axis at a time from values to coefficients.
        for (v, nodes) in self.nodes.iter().enumerate() {
            let inv = inverse_vandermonde(ctx, nodes)?;
            let stride = side.pow((n - 1 - v) as u32);
            let block = stride * side;
            let mut out = vec![0u64; data.len()];
            for start in (0..data.len()).step_by(block) {
                for off in 0..stride {
                    let line: Vec<u64> = (0..side).map(|i| data[start + off + i * stride]).collect();
                    for (k, row) in inv.iter().enumerate() {
                        out[start + off + k * stride] = ctx.dot(row, &line);
                    }
                }
            }
            data = out;
        }
        let mut poly = BTreeMap::new();
        for (idx, &c) in data.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut rest = idx;
            let mut e = vec![0usize; n];
            for v in (0..n).rev() {
                e[v] = rest % side;
                rest /= side;
            }
            if e.iter().sum::<usize>() > deg {
                return Err(Error::DegenerateSample);
            }
            poly.insert(e, c);
        }
        for (p, &want) in self.points[self.grid_len..].iter().zip(&values[self.grid_len..]) {
            if eval_dense(ctx, &poly, p) != want {
                return Err(Error::DegenerateSample);
            }
        }
        Ok(poly)
    }
}

/// Rows map values at `nodes` to coefficients `c_0..c_{k-1}`.
fn inverse_vandermonde(ctx: FieldCtx, nodes: &[u64]) -> Result<Vec<Vec<u64>>> {
    let k = nodes.len();
    // m(x) = prod (x - x_j), ascending coefficients.
    let mut m = vec![1u64];
    for &xj in nodes {
        let mut next = vec![0u64; m.len() + 1];
        for (i, &c) in m.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], c);
            next[i] = ctx.sub(next[i], ctx.mul(c, xj));
        }
        m = next;
    }
    let mut rows = vec![vec![0u64; k]; k];
    for (i, &xi) in nodes.iter().enumerate() {
        // q = m / (x - x_i) by synthetic division, from the top.
        let mut q = vec![0u64; k];
        let mut carry = 0u64;
        for d in (0..k).rev() {
            carry = ctx.add(m[d + 1], ctx.mul(carry, xi));
            q[d] = carry;
        }
        let denom = gpoly::eval_scalar(&ctx, &q, xi);
        let s = ctx.inv(denom).map_err(|_| Error::DuplicateNode)?;
        for (d, &c) in q.iter().enumerate() {
            rows[d][i] = ctx.mul(c, s);
        }
    }
    Ok(rows)
}

fn eval_dense(ctx: FieldCtx, poly: &BTreeMap<Vec<usize>, u64>, x: &[u64]) -> u64 {
    poly.iter().fold(0, |acc, (e, &c)| {
        let term = e.iter().zip(x).fold(c, |t, (&k, &xi)| ctx.mul(t, ctx.pow(xi, k as u64)));
        ctx.add(acc, term)
    })
}

/// A depth-2 circuit summing the monomials of `poly`.
fn dense_circuit(ctx: FieldCtx, nvars: usize, poly: &BTreeMap<Vec<usize>, u64>, deg: usize) -> Result<MPolyCircuit> {
    let mut b = CircuitBuilder::new(ctx, nvars);
    let terms = poly
        .iter()
        .map(|(e, &c)| {
            let mut args: Vec<NodeId> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                let x = b.input(v);
                args.extend(core::iter::repeat(x).take(k));
            }
            let m = if args.is_empty() { b.one() } else { b.mul(args) };
            (m, c)
        })
        .collect();
    let out = b.add(terms);
    MPolyCircuit::new(b.finish(vec![out])?, deg)
}

/// Runs `body` on fresh samples until it avoids a degenerate one.
fn with_samples<T>(
    ctx: FieldCtx,
    nvars: usize,
    side: usize,
    seed: u64,
    mut body: impl FnMut(&Sample, &Cloud) -> Result<T>,
) -> Result<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d70_6f6c_79);
    for _ in 0..SAMPLE_ATTEMPTS {
        let sample = Sample::new(ctx, nvars, side, &mut rng)?;
        let cloud = Cloud { ctx, len: sample.points.len() };
        match body(&sample, &cloud) {
            Err(Error::DegenerateSample) => continue,
            other => return other,
        }
    }
    Err(Error::DegenerateSample)
}

/// The constant coefficient in `y` of a ring polynomial, mapped back.
fn back_substitute(
    sample: &Sample,
    ctx: FieldCtx,
    nvars: usize,
    q: &[Vec<u64>],
    deg: usize,
) -> Result<MPolyCircuit> {
    let poly = sample.reconstruct(ctx, &q[0], deg)?;
    dense_circuit(ctx, nvars, &poly, deg)
}

/// Squarefree decomposition `f = scale * prod_j parts[j-1]^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSquarefree {
    pub parts: Vec<MPolyCircuit>,
    pub scale: u64,
}

impl MSquarefree {
    /// `scale * prod parts[j-1](x)^j`.
    pub fn eval_product(&self, x: &[u64]) -> Result<u64> {
        let ctx = self.parts.first().map(|p| p.ctx());
        let Some(ctx) = ctx else { return Ok(self.scale) };
        let mut acc = self.scale;
        for (j, p) in self.parts.iter().enumerate() {
            acc = ctx.mul(acc, ctx.pow(p.eval(x)?, j as u64 + 1));
        }
        Ok(acc)
    }
}

/// Squarefree decomposition of a nonzero polynomial.
///
/// Each part is normalized so that its shifted image is monic in `y`.
pub fn msqfree(f: &MPolyCircuit, seed: u64) -> Result<MSquarefree> {
    let ctx = f.ctx();
    let t = monic_transform(f, seed)?;
    let d = t.degree;
    let parts = with_samples(ctx, f.nvars, d + 1, seed, |sample, cloud| {
        let coeffs = sample.coefficients(&t)?;
        let parts = rootops::squarefree_generic(cloud, &coeffs)?;
        parts
            .iter()
            .enumerate()
            .map(|(j, q)| back_substitute(sample, ctx, f.nvars, q, d / (j + 1)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(MSquarefree { parts, scale: t.scale })
}

/// Shifts every input by one common `alpha` at which all top components
/// are nonzero.
fn common_transforms(fs: &[MPolyCircuit], seed: u64) -> Result<Vec<MonicTransform>> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidArgument("empty list".into()));
    };
    let ctx = first.ctx();
    let nvars = first.nvars;
    for f in fs {
        check_caps(f)?;
        if f.nvars != nvars {
            return Err(Error::InvalidArgument("inputs have different numbers of variables".into()));
        }
        if f.ctx() != ctx {
            return Err(Error::ModulusMismatch);
        }
    }
    let tops = fs.iter().map(|f| top_homogeneous(f, seed)).collect::<Result<Vec<_>>>()?;
    let mut b = CircuitBuilder::new(ctx, nvars);
    let x: Vec<NodeId> = (0..nvars).map(|i| b.input(i)).collect();
    let factors: Vec<NodeId> = tops
        .iter()
        .map(|t| b.import(&t.circuit, &x)[t.circuit.outputs()[0]])
        .collect();
    let prod = b.mul(factors);
    let prod = b.finish(vec![prod])?;
    let total: usize = tops.iter().map(|t| t.degree_bound).sum();
    let alpha = find_nonzero_point(&prod, total, seed)?;
    fs.iter()
        .zip(&tops)
        .map(|(f, top)| shifted(f, &alpha, top.eval(&alpha)?, top.degree_bound))
        .collect()
}

fn combine(
    fs: &[MPolyCircuit],
    seed: u64,
    deg_of: impl Fn(&[usize]) -> usize,
    op: impl Fn(&Cloud, &[Vec<Vec<u64>>]) -> Result<Vec<Vec<u64>>>,
) -> Result<MPolyCircuit> {
    let ts = common_transforms(fs, seed)?;
    let ctx = fs[0].ctx();
    let nvars = fs[0].nvars;
    let degs: Vec<usize> = ts.iter().map(|t| t.degree).collect();
    let deg = deg_of(&degs);
    with_samples(ctx, nvars, deg + 1, seed, |sample, cloud| {
        let inputs = ts.iter().map(|t| sample.coefficients(t)).collect::<Result<Vec<_>>>()?;
        let out = op(cloud, &inputs)?;
        back_substitute(sample, ctx, nvars, &out, deg)
    })
}

/// A gcd of the inputs, normalized so that its shifted image is monic in
/// `y`.
pub fn mgcd(fs: &[MPolyCircuit], seed: u64) -> Result<MPolyCircuit> {
    combine(
        fs,
        seed,
        |d| d.iter().copied().min().unwrap_or(0),
        |cloud, inputs| gcdlib::gcd_generic(cloud, inputs),
    )
}

/// An lcm of the inputs, normalized like [`mgcd`].
pub fn mlcm(fs: &[MPolyCircuit], seed: u64) -> Result<MPolyCircuit> {
    combine(fs, seed, |d| d.iter().sum(), |cloud, inputs| gcdlib::lcm_generic(cloud, inputs))
}
