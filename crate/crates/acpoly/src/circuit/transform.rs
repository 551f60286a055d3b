//! Circuit-to-circuit transformations by evaluation and interpolation.

use super::build::{CircuitBuilder, LinForm};
use super::{ArithCircuit, Gate, NodeId};
use crate::error::{Error, Result};
use crate::gpoly;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Attempts at finding a point where every denominator is nonzero.
const POINT_ATTEMPTS: usize = 64;
/// Random points at which an eliminated circuit is compared to its source.
const CHECK_POINTS: usize = 8;

/// Builds one circuit per coefficient from copies evaluated at `0..=d`.
fn interpolated_family(
    c: &ArithCircuit,
    d: usize,
    copy_inputs: &mut dyn FnMut(&mut CircuitBuilder, &[NodeId], u64) -> Vec<NodeId>,
) -> Result<Vec<ArithCircuit>> {
    let ctx = c.ctx();
    let table = gpoly::low_coeff_table(ctx, d + 1, d + 1)?;
    let mut b = CircuitBuilder::new(ctx, c.inputs());
    let x: Vec<NodeId> = (0..c.inputs()).map(|i| b.input(i)).collect();
    let copies: Vec<Vec<NodeId>> = (0..=d as u64)
        .map(|t| {
            let inputs = copy_inputs(&mut b, &x, t);
            let map = b.import(c, &inputs);
            c.outputs().iter().map(|&o| map[o]).collect()
        })
        .collect();
    let mut outs: Vec<Vec<NodeId>> = Vec::with_capacity(d + 1);
    for row in &table {
        outs.push(
            (0..c.outputs().len())
                .map(|o| b.add(copies.iter().zip(row).map(|(cp, &w)| (cp[o], w)).collect()))
                .collect(),
        );
    }
    let all = b.finish(Vec::new())?;
    outs.into_iter().map(|o| Ok(all.with_outputs(o)?.prune())).collect()
}

/// Circuits for the coefficients of `y^0..y^d` of every output, where `y`
/// is input `y` and the outputs have degree at most `d` in it.
///
/// The result keeps the arity of `c`; input `y` is unused. Each circuit is
/// one layer deeper than `c`.
pub fn coefficient_circuits(c: &ArithCircuit, y: usize, d: usize) -> Result<Vec<ArithCircuit>> {
    if y >= c.inputs() {
        return Err(Error::InvalidArgument(alloc::format!("no input {y}")));
    }
    interpolated_family(c, d, &mut |b, x, t| {
        let mut inputs = x.to_vec();
        inputs[y] = b.constant(t);
        inputs
    })
}

/// Circuits for the homogeneous components of degrees `0..=d` of every
/// output of a circuit of total degree at most `d`.
///
/// Component `k` is the coefficient of `t^k` in `c(t x)`; the scaled inputs
/// and the interpolation add two layers.
pub fn homogeneous_components(c: &ArithCircuit, d: usize) -> Result<Vec<ArithCircuit>> {
    interpolated_family(c, d, &mut |b, x, t| x.iter().map(|&xi| b.add(vec![(xi, t)])).collect())
}

/// A division-free numerator/denominator form of a circuit. A missing
/// denominator means the constant one.
struct Fractions {
    circuit: ArithCircuit,
    /// Per output: numerator node, denominator node, syntactic degrees.
    outputs: Vec<(NodeId, NodeId, usize, usize)>,
}

fn to_fractions(c: &ArithCircuit) -> Result<Fractions> {
    let ctx = c.ctx();
    let mut b = CircuitBuilder::new(ctx, c.inputs());
    // (numerator, denominator, deg numerator, deg denominator)
    let mut nd: Vec<(NodeId, Option<NodeId>, usize, usize)> = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let entry = match g {
            Gate::Input(k) => (b.input(*k), None, 1, 0),
            Gate::Const(v) => (b.constant(*v), None, 0, 0),
            Gate::Add(terms) => {
                if terms.iter().all(|&(a, _)| nd[a].1.is_none()) {
                    let deg = terms.iter().map(|&(a, _)| nd[a].2).max().unwrap_or(0);
                    (b.add(terms.iter().map(|&(a, w)| (nd[a].0, w)).collect()), None, deg, 0)
                } else {
                    // The numerator is the coefficient of s in
                    // prod_j (D_j + s w_j N_j).
                    let k = terms.len();
                    let one = b.one();
                    let dens: Vec<NodeId> = terms.iter().map(|&(a, _)| nd[a].1.unwrap_or(one)).collect();
                    let prods: Vec<NodeId> = (0..=k as u64)
                        .map(|s| {
                            let factors = terms
                                .iter()
                                .zip(&dens)
                                .map(|(&(a, w), &den)| b.add(vec![(den, 1), (nd[a].0, ctx.mul(s, w))]))
                                .collect();
                            b.mul(factors)
                        })
                        .collect();
                    let w1 = gpoly::coeff_weights(ctx, k + 1, 1)?;
                    let num = b.add(prods.into_iter().zip(w1).collect());
                    let den_deg: usize = terms.iter().map(|&(a, _)| nd[a].3).sum();
                    let num_deg = terms.iter().map(|&(a, _)| nd[a].2 + den_deg - nd[a].3).max().unwrap_or(0);
                    let present: Vec<NodeId> = terms.iter().filter_map(|&(a, _)| nd[a].1).collect();
                    (num, Some(b.mul(present)), num_deg, den_deg)
                }
            }
            Gate::Mul(args) => {
                let num = b.mul(args.iter().map(|&a| nd[a].0).collect());
                let present: Vec<NodeId> = args.iter().filter_map(|&a| nd[a].1).collect();
                let den = if present.is_empty() { None } else { Some(b.mul(present)) };
                let num_deg = args.iter().map(|&a| nd[a].2).sum();
                let den_deg = args.iter().map(|&a| nd[a].3).sum();
                (num, den, num_deg, den_deg)
            }
            Gate::Div(a, q) => {
                let (na, da, dna, dda) = nd[*a];
                let (nq, dq, dnq, ddq) = nd[*q];
                let num = match dq {
                    Some(dq) => b.mul(vec![na, dq]),
                    None => na,
                };
                let den = match da {
                    Some(da) => b.mul(vec![da, nq]),
                    None => nq,
                };
                (num, Some(den), dna + ddq, dda + dnq)
            }
            Gate::Select(_) => {
                return Err(Error::InvalidArgument("selects must be removed before eliminating divisions".into()));
            }
        };
        nd.push(entry);
    }
    let one = b.one();
    let outputs: Vec<(NodeId, NodeId, usize, usize)> = c
        .outputs()
        .iter()
        .map(|&o| (nd[o].0, nd[o].1.unwrap_or(one), nd[o].2, nd[o].3))
        .collect();
    let circuit = b.finish(Vec::new())?;
    Ok(Fractions { circuit, outputs })
}

/// A division-free circuit computing the same polynomials as `c`, whose
/// outputs are polynomials of degree at most `d`.
///
/// Each output is written as `N / D` without divisions. At a random point
/// `a` with `D(a) != 0`, `1 / D(a + t y)` is a geometric series in
/// `u = 1 - D(a + t y) / D(a)`, which has no constant term in `t`, so
/// truncating it after `u^d` and keeping the coefficients of `t^0..t^d` of
/// the product with `N(a + t y)` recovers the homogeneous components of the
/// output in `y = x - a`; their sum at `t = 1` is the output.
///
/// Circuits without divisions are returned unchanged. The result is
/// compared with `c` at random points; a mismatch means `c` is not a
/// polynomial of degree at most `d` (`NotAPolynomial`).
pub fn eliminate_divisions(c: &ArithCircuit, d: usize, seed: u64) -> Result<ArithCircuit> {
    if c.has_selects() {
        return Err(Error::InvalidArgument("selects must be removed before eliminating divisions".into()));
    }
    if !c.has_divisions() {
        return Ok(c.clone());
    }
    let ctx = c.ctx();
    let fr = to_fractions(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.inputs();
    let random_point = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..n).map(|_| rng.gen_range(0..ctx.p())).collect() };
    let mut base: Option<(Vec<u64>, Vec<u64>)> = None;
    for _ in 0..POINT_ATTEMPTS {
        let a = random_point(&mut rng);
        let vals = fr.circuit.eval_all(&a)?;
        let dens: Vec<u64> = fr.outputs.iter().map(|o| vals[o.1]).collect();
        if dens.iter().all(|&v| v != 0) {
            base = Some((a, dens));
            break;
        }
    }
    let (a, dens) = base.ok_or(Error::NoNonzeroPoint)?;
    let inv_dens = ctx.batch_inv(&dens)?;
    let top = fr.outputs.iter().map(|o| o.2 + d * o.3).max().unwrap_or(0);
    let table = gpoly::low_coeff_table(ctx, top + 1, d + 1)?;
    let mut b = CircuitBuilder::new(ctx, n);
    let one = b.one();
    let x: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let ones = vec![1u64; d + 1];
    let mut sums: Vec<LinForm> = vec![LinForm::new(); fr.outputs.len()];
    for s in 0..=top {
        let su = s as u64;
        let shifted: Vec<NodeId> = x
            .iter()
            .zip(&a)
            .map(|(&xi, &ai)| b.add(vec![(xi, su), (one, ctx.mul(ctx.sub(1, su), ai))]))
            .collect();
        let map = b.import(&fr.circuit, &shifted);
        // Weight of the value at node s in the sum of coefficients 0..=d.
        let w = table.iter().fold(0u64, |acc, row| ctx.add(acc, row[s]));
        for (o, &(num, den, _, _)) in fr.outputs.iter().enumerate() {
            let u = b.add(vec![(one, 1), (map[den], ctx.neg(inv_dens[o]))]);
            let series = b.series(u, &ones);
            let v = b.mul(vec![map[num], series]);
            sums[o].push((v, ctx.mul(w, inv_dens[o])));
        }
    }
    let outputs = sums.into_iter().map(|t| b.add(t)).collect();
    let out = b.finish(outputs)?.prune();
    let mut checked = 0;
    for _ in 0..POINT_ATTEMPTS {
        if checked == CHECK_POINTS {
            break;
        }
        let p = random_point(&mut rng);
        match c.eval(&p) {
            Ok(want) => {
                if out.eval(&p)? != want {
                    return Err(Error::NotAPolynomial);
                }
                checked += 1;
            }
            Err(Error::DivisionByZeroAtGate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
