//! Randomized identity testing, nonzero points and select removal.

use super::{ArithCircuit, Gate, NodeId};
use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of the randomized identity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PitConfig {
    /// Independent evaluations before declaring a circuit zero.
    pub rounds: usize,
    /// Sample coordinates from `{0, ..., size - 1}`; `None` means `2d`.
    pub sample_size: Option<u64>,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig { rounds: 40, sample_size: None }
    }
}

/// Verdict of the identity test. A nonzero verdict carries a point where
/// some output is nonzero, so it is never wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PitOutcome {
    Zero,
    NonZero(Vec<u64>),
}

impl PitOutcome {
    pub fn is_zero(&self) -> bool {
        matches!(self, PitOutcome::Zero)
    }
}

fn sample_size(c: &ArithCircuit, d: usize, cfg: &PitConfig) -> Result<u64> {
    let s = cfg.sample_size.unwrap_or((2 * d as u64).max(2));
    if s == 0 || s > c.ctx().p() {
        return Err(Error::FieldTooSmall);
    }
    Ok(s)
}

/// Looks for a point, extending `prefix` by random coordinates, where some
/// output of `c` is nonzero.
fn search(
    c: &ArithCircuit,
    prefix: &[u64],
    s: u64,
    rounds: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<u64>>> {
    let mut x = prefix.to_vec();
    x.resize(c.inputs(), 0);
    for _ in 0..rounds {
        for v in x.iter_mut().skip(prefix.len()) {
            *v = rng.gen_range(0..s);
        }
        if c.eval(&x)?.iter().any(|&v| v != 0) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Decides whether `c` (all outputs of degree at most `d`) is identically
/// zero with the default configuration.
pub fn pit(c: &ArithCircuit, d: usize, seed: u64) -> Result<PitOutcome> {
    pit_with(c, d, seed, &PitConfig::default())
}

/// Decides whether `c` is identically zero by evaluating it at random
/// points of `S^n`. A nonzero polynomial of degree `d` vanishes at a random
/// point with probability at most `d / |S|`.
pub fn pit_with(c: &ArithCircuit, d: usize, seed: u64, cfg: &PitConfig) -> Result<PitOutcome> {
    let s = sample_size(c, d, cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match search(c, &[], s, cfg.rounds, &mut rng)? {
        Some(x) => PitOutcome::NonZero(x),
        None => PitOutcome::Zero,
    })
}

/// A point where some output of `c` is nonzero, fixed one coordinate at a
/// time: a nonzero polynomial of degree `d` stays nonzero after fixing its
/// next variable to one of `d + 1` values, and the identity test decides
/// which.
pub fn find_nonzero_point(c: &ArithCircuit, d: usize, seed: u64) -> Result<Vec<u64>> {
    let cfg = PitConfig::default();
    let s = sample_size(c, d, &cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if search(c, &[], s, cfg.rounds, &mut rng)?.is_none() {
        return Err(Error::ZeroCircuit);
    }
    if (d as u64) >= c.ctx().p() {
        return Err(Error::FieldTooSmall);
    }
    let mut point: Vec<u64> = Vec::with_capacity(c.inputs());
    for _ in 0..c.inputs() {
        let mut found = false;
        for v in 0..=d as u64 {
            point.push(v);
            if search(c, &point, s, cfg.rounds, &mut rng)?.is_some() {
                found = true;
                break;
            }
            point.pop();
        }
        if !found {
            return Err(Error::NoNonzeroPoint);
        }
    }
    if c.eval(&point)?.iter().all(|&v| v == 0) {
        return Err(Error::NoNonzeroPoint);
    }
    Ok(point)
}

/// Replaces every select by its first argument that is not identically
/// zero (or by zero), in topological order.
///
/// All zero tests share `cfg.rounds` random points drawn from the whole
/// field, so each gate is evaluated once per point. The result has no
/// selects and computes the polynomial continuation of `c`.
pub fn remove_selects(c: &ArithCircuit, seed: u64, cfg: &PitConfig) -> Result<ArithCircuit> {
    let ctx = c.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rounds = cfg.rounds.max(1);
    let mut last_err = Error::NoNonzeroPoint;
    for _ in 0..4 {
        let points: Vec<Vec<u64>> = (0..rounds)
            .map(|_| (0..c.inputs()).map(|_| rng.gen_range(0..ctx.p())).collect())
            .collect();
        match remove_at(c, &points) {
            Ok(out) => return Ok(out),
            Err(e @ Error::DivisionByZeroAtGate(_)) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn remove_at(c: &ArithCircuit, points: &[Vec<u64>]) -> Result<ArithCircuit> {
    let f = c.ctx();
    let k = points.len();
    let mut gates: Vec<Gate> = Vec::with_capacity(c.gates().len());
    let mut vals: Vec<Vec<u64>> = Vec::with_capacity(c.gates().len());
    let mut map: Vec<NodeId> = Vec::with_capacity(c.gates().len());
    let mut zero: Option<NodeId> = None;
    for (i, g) in c.gates().iter().enumerate() {
        let (gate, v) = match g {
            Gate::Select(args) => {
                let pick = args.iter().map(|&a| map[a]).find(|&a| vals[a].iter().any(|&x| x != 0));
                if let Some(a) = pick {
                    map.push(a);
                    continue;
                }
                if let Some(z) = zero {
                    map.push(z);
                    continue;
                }
                (Gate::Const(0), vec![0; k])
            }
            Gate::Input(j) => (Gate::Input(*j), points.iter().map(|p| f.reduce(p[*j])).collect()),
            Gate::Const(x) => (Gate::Const(*x), vec![*x; k]),
            Gate::Add(t) => {
                let t: Vec<(NodeId, u64)> = t.iter().map(|&(a, w)| (map[a], w)).collect();
                let v = (0..k)
                    .map(|r| t.iter().fold(0, |acc, &(a, w)| f.add(acc, f.mul(vals[a][r], w))))
                    .collect();
                (Gate::Add(t), v)
            }
            Gate::Mul(a) => {
                let a: Vec<NodeId> = a.iter().map(|&x| map[x]).collect();
                let v = (0..k).map(|r| a.iter().fold(1, |acc, &x| f.mul(acc, vals[x][r]))).collect();
                (Gate::Mul(a), v)
            }
            Gate::Div(a, b) => {
                let (a, b) = (map[*a], map[*b]);
                let mut v = Vec::with_capacity(k);
                for r in 0..k {
                    if vals[b][r] == 0 {
                        return Err(Error::DivisionByZeroAtGate(i));
                    }
                    v.push(f.mul(vals[a][r], f.inv(vals[b][r])?));
                }
                (Gate::Div(a, b), v)
            }
        };
        let id = gates.len();
        if matches!(gate, Gate::Const(0)) && zero.is_none() {
            zero = Some(id);
        }
        gates.push(gate);
        vals.push(v);
        map.push(id);
    }
    let outputs = c.outputs().iter().map(|&o| map[o]).collect();
    Ok(ArithCircuit::from_parts_unchecked(f, c.inputs(), gates, outputs).prune())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::field::FieldCtx;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    /// prod_{i < k} (x_0 - i) in `n` variables.
    fn falling(n: usize, k: u64) -> ArithCircuit {
        let ctx = f();
        let mut b = CircuitBuilder::new(ctx, n);
        let x = b.input(0);
        let one = b.one();
        let factors = (0..k).map(|i| b.add(vec![(x, 1), (one, ctx.neg(i))])).collect();
        let p = b.mul(factors);
        b.finish(vec![p]).unwrap()
    }

    #[test]
    fn detects_zero_and_nonzero() {
        let ctx = f();
        let mut b = CircuitBuilder::new(ctx, 2);
        let x = b.input(0);
        let y = b.input(1);
        let xy = b.mul(vec![x, y]);
        let yx = b.mul(vec![y, x]);
        let z = b.sub(xy, yx);
        let c = b.finish(vec![z, xy]).unwrap();
        assert!(pit(&c.with_outputs(vec![z]).unwrap(), 2, 3).unwrap().is_zero());
        match pit(&c, 2, 3).unwrap() {
            PitOutcome::NonZero(p) => assert_ne!(c.eval(&p).unwrap()[1], 0),
            PitOutcome::Zero => panic!("xy reported zero"),
        }
    }

    #[test]
    fn nonzero_point_search() {
        let c = falling(3, 5);
        let p = find_nonzero_point(&c, 5, 11).unwrap();
        assert_ne!(c.eval(&p).unwrap()[0], 0);
        assert_eq!(p[0], 5);

        let ctx = f();
        let mut b = CircuitBuilder::new(ctx, 1);
        let x = b.input(0);
        let z = b.sub(x, x);
        let zc = b.finish(vec![z]).unwrap();
        assert_eq!(find_nonzero_point(&zc, 1, 0), Err(Error::ZeroCircuit));
    }

    #[test]
    fn selects_resolve_to_first_nonzero_polynomial() {
        // select(x - x, 0, x * y, x) becomes x * y.
        let ctx = f();
        let mut b = CircuitBuilder::new(ctx, 2);
        let x = b.input(0);
        let y = b.input(1);
        let z = b.sub(x, x);
        let zero = b.zero();
        let xy = b.mul(vec![x, y]);
        let s = b.select(vec![z, zero, xy, x]);
        let all_zero = b.select(vec![z, zero]);
        let c = b.finish(vec![s, all_zero]).unwrap();
        let r = remove_selects(&c, 4, &PitConfig::default()).unwrap();
        assert!(!r.has_selects());
        // At y = 0 the original select falls through to x; the rewritten
        // circuit keeps x * y.
        assert_eq!(r.eval(&[3, 0]).unwrap(), vec![0, 0]);
        assert_eq!(r.eval(&[3, 5]).unwrap(), vec![15, 0]);
    }

    #[test]
    fn sample_set_must_fit_in_field() {
        let small = FieldCtx::new(7).unwrap();
        let mut b = CircuitBuilder::new(small, 1);
        let x = b.input(0);
        let c = b.finish(vec![x]).unwrap();
        assert_eq!(pit(&c, 10, 0), Err(Error::FieldTooSmall));
    }
}
