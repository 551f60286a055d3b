//! Circuit construction: a gate-emitting builder, reusable sub-circuits and
//! the named constructions.
//!
//! Every sub-circuit emits the same layers regardless of its size
//! parameters, so the depth of a construction depends only on its kind.
//! Truncated power series `sum_j c_j u^j` use a baby-step giant-step layout
//! (`u^b` for `b < B`, then powers of `u^B`), which keeps them at constant
//! depth with `O(d)` wires per evaluation.

use super::{ArithCircuit, Gate, NodeId};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::upoly::DensePoly;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Wire budget of a builder unless configured otherwise.
pub const DEFAULT_WIRE_BUDGET: usize = 20_000_000;

/// Largest size parameter the named constructions accept.
pub const MAX_PARAMETER: usize = 1024;

/// A linear form `sum w_i v_i` over nodes.
pub(crate) type LinForm = Vec<(NodeId, u64)>;

/// Emits gates in topological order, sharing constants and inputs.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    ctx: FieldCtx,
    inputs: usize,
    gates: Vec<Gate>,
    consts: BTreeMap<u64, NodeId>,
    input_nodes: Vec<Option<NodeId>>,
    budget: usize,
    wires: usize,
    overflow: bool,
}

impl CircuitBuilder {
    pub fn new(ctx: FieldCtx, inputs: usize) -> Self {
        Self::with_budget(ctx, inputs, DEFAULT_WIRE_BUDGET)
    }

    /// A builder that refuses to grow past `budget` wires; `finish` then
    /// reports `CapExceeded`.
    pub fn with_budget(ctx: FieldCtx, inputs: usize, budget: usize) -> Self {
        CircuitBuilder {
            ctx,
            inputs,
            gates: Vec::new(),
            consts: BTreeMap::new(),
            input_nodes: vec![None; inputs],
            budget,
            wires: 0,
            overflow: false,
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// Number of gates emitted so far.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn push(&mut self, g: Gate) -> NodeId {
        if self.overflow {
            return 0;
        }
        self.wires += g.fan_in();
        if self.wires > self.budget {
            self.overflow = true;
            self.gates.clear();
            return 0;
        }
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn input(&mut self, i: usize) -> NodeId {
        assert!(i < self.inputs, "input {i} out of range");
        if let Some(v) = self.input_nodes[i] {
            return v;
        }
        let v = self.push(Gate::Input(i));
        self.input_nodes[i] = Some(v);
        v
    }

    pub fn constant(&mut self, c: u64) -> NodeId {
        let c = self.ctx.reduce(c);
        if let Some(&v) = self.consts.get(&c) {
            return v;
        }
        let v = self.push(Gate::Const(c));
        self.consts.insert(c, v);
        v
    }

    pub fn one(&mut self) -> NodeId {
        self.constant(1)
    }

    pub fn zero(&mut self) -> NodeId {
        self.constant(0)
    }

    /// Weighted sum; zero weights are dropped.
    pub fn add(&mut self, terms: LinForm) -> NodeId {
        let terms: LinForm = terms.into_iter().filter(|&(_, w)| w != 0).collect();
        self.push(Gate::Add(terms))
    }

    pub fn sum(&mut self, nodes: &[NodeId]) -> NodeId {
        self.add(nodes.iter().map(|&v| (v, 1)).collect())
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let m1 = self.ctx.neg(1);
        self.add(vec![(a, 1), (b, m1)])
    }

    pub fn mul(&mut self, args: Vec<NodeId>) -> NodeId {
        assert!(!args.is_empty(), "empty product");
        self.push(Gate::Mul(args))
    }

    /// `v^k` as a single product gate; `v^0` is the constant one.
    pub fn pow(&mut self, v: NodeId, k: usize) -> NodeId {
        if k == 0 {
            return self.one();
        }
        self.mul(vec![v; k])
    }

    pub fn div(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Gate::Div(a, b))
    }

    pub fn select(&mut self, args: Vec<NodeId>) -> NodeId {
        assert!(!args.is_empty(), "empty select");
        self.push(Gate::Select(args))
    }

    /// Copies the gates of `c` with its inputs replaced by `inputs`, and
    /// returns the new node of every gate of `c`.
    pub fn import(&mut self, c: &ArithCircuit, inputs: &[NodeId]) -> Vec<NodeId> {
        assert_eq!(inputs.len(), c.inputs(), "import arity");
        let mut map: Vec<NodeId> = Vec::with_capacity(c.gates().len());
        for g in c.gates() {
            let v = match g {
                Gate::Input(k) => inputs[*k],
                Gate::Const(x) => self.constant(*x),
                Gate::Add(t) => self.push(Gate::Add(t.iter().map(|&(a, w)| (map[a], w)).collect())),
                Gate::Mul(a) => self.push(Gate::Mul(a.iter().map(|&x| map[x]).collect())),
                Gate::Div(a, b) => self.push(Gate::Div(map[*a], map[*b])),
                Gate::Select(a) => self.push(Gate::Select(a.iter().map(|&x| map[x]).collect())),
            };
            map.push(v);
        }
        map
    }

    pub fn finish(self, outputs: Vec<NodeId>) -> Result<ArithCircuit> {
        if self.overflow {
            return Err(Error::CapExceeded(format!("circuit exceeds {} wires", self.budget)));
        }
        Ok(ArithCircuit::from_parts_unchecked(self.ctx, self.inputs, self.gates, outputs))
    }

    /// `sum_j coeffs[j] u^j` at constant depth (four layers above `u`).
    pub(crate) fn series(&mut self, u: NodeId, coeffs: &[u64]) -> NodeId {
        let len = coeffs.len().max(2);
        let bs = isqrt_ceil(len).max(2);
        let gs = len.div_ceil(bs);
        let baby: Vec<NodeId> = (0..bs).map(|b| self.pow(u, b)).collect();
        let giant_step = self.pow(u, bs);
        let mut parts = Vec::with_capacity(gs);
        for a in 0..gs {
            let terms: LinForm = (0..bs)
                .filter_map(|b| coeffs.get(a * bs + b).map(|&c| (baby[b], c)))
                .collect();
            let inner = self.add(terms);
            let giant = self.pow(giant_step, a);
            parts.push(self.mul(vec![giant, inner]));
        }
        self.sum(&parts)
    }
}

fn isqrt_ceil(n: usize) -> usize {
    let mut r = 0usize;
    while r * r < n {
        r += 1;
    }
    r
}

/// Power sums `p_0..p_jmax` of the roots of the monic polynomial whose lower
/// coefficients `f_0..f_{n-1}` are the given nodes.
pub(crate) fn power_sums_nodes(b: &mut CircuitBuilder, f: &[NodeId], jmax: usize) -> Result<Vec<NodeId>> {
    let ctx = b.ctx();
    let n = f.len();
    ctx.guard(Requirement::Degree(n.max(jmax)))?;
    let p0 = b.constant(n as u64);
    let mut out = vec![p0];
    if jmax == 0 {
        return Ok(out);
    }
    if n == 0 {
        let z = b.zero();
        out.resize(jmax + 1, z);
        return Ok(out);
    }
    let nodes = n * (jmax + 1);
    let table = gpoly::low_coeff_table(ctx, nodes, jmax + 1)?;
    let alternating: Vec<u64> = (0..=jmax).map(|j| if j % 2 == 0 { 1 } else { ctx.neg(1) }).collect();
    let one = b.one();
    let mut vals = Vec::with_capacity(nodes);
    for t in 0..nodes as u64 {
        let mut h = LinForm::new();
        let mut g: LinForm = vec![(one, n as u64)];
        let mut tp = 1u64;
        for i in 1..=n {
            tp = ctx.mul(tp, t);
            h.push((f[n - i], tp));
            if i < n {
                g.push((f[n - i], ctx.mul(tp, (n - i) as u64)));
            }
        }
        let h = b.add(h);
        let g = b.add(g);
        let s = b.series(h, &alternating);
        vals.push(b.mul(vec![g, s]));
    }
    for row in table.iter().skip(1) {
        out.push(b.add(vals.iter().copied().zip(row.iter().copied()).collect()));
    }
    Ok(out)
}

/// Selected elementary symmetric functions, each multiplied by a scalar,
/// from power sums `ps[1..=k]` of `k` values.
pub(crate) fn esyms_nodes(
    b: &mut CircuitBuilder,
    ps: &[NodeId],
    k: usize,
    wanted: &[(usize, u64)],
) -> Result<Vec<NodeId>> {
    let ctx = b.ctx();
    if k == 0 {
        return Ok(wanted.iter().map(|&(_, s)| b.constant(s)).collect());
    }
    ctx.guard(Requirement::Degree(k))?;
    let inv = gpoly::small_inverses(ctx, k)?;
    let inv_fact = gpoly::inverse_factorials(ctx, k)?;
    let nodes = k * k + 1;
    let table = gpoly::low_coeff_table(ctx, nodes, k + 1)?;
    let mut vals = Vec::with_capacity(nodes);
    for t in 0..nodes as u64 {
        let mut g = LinForm::new();
        let mut tp = 1u64;
        for j in 1..=k {
            tp = ctx.mul(tp, t);
            let c = if j % 2 == 1 { inv[j] } else { ctx.neg(inv[j]) };
            g.push((ps[j], ctx.mul(c, tp)));
        }
        let g = b.add(g);
        vals.push(b.series(g, &inv_fact));
    }
    Ok(wanted
        .iter()
        .map(|&(i, s)| {
            if i == 0 {
                b.constant(s)
            } else if i > k {
                b.zero()
            } else {
                b.add(vals.iter().zip(&table[i]).map(|(&v, &w)| (v, ctx.mul(w, s))).collect())
            }
        })
        .collect())
}

/// Linear combinations of base power sums that turn values `h(t)^l` at the
/// nodes `t < nodes` into traces `sum_i alpha_i^j h(alpha_i)^l`.
pub(crate) struct TraceBasis {
    nodes: usize,
    base: Vec<NodeId>,
    q: Vec<Vec<NodeId>>,
}

impl TraceBasis {
    /// Needs `base_ps[0..jmax + nodes]`.
    pub(crate) fn new(b: &mut CircuitBuilder, base_ps: &[NodeId], jmax: usize, nodes: usize) -> Result<Self> {
        assert!(base_ps.len() >= jmax + nodes, "not enough power sums");
        let table = gpoly::low_coeff_table(b.ctx(), nodes, nodes)?;
        let q = (0..=jmax)
            .map(|j| {
                (0..nodes)
                    .map(|t| b.add((0..nodes).map(|e| (base_ps[j + e], table[e][t])).collect()))
                    .collect()
            })
            .collect();
        Ok(TraceBasis { nodes, base: base_ps[..=jmax].to_vec(), q })
    }

    /// `T[j][l]` for `l <= lmax`, where `h_at(t)` emits `h(t)` and
    /// `deg h * lmax < nodes`. Entry `l = 0` is the base power sum.
    pub(crate) fn traces(
        &self,
        b: &mut CircuitBuilder,
        h_at: &mut dyn FnMut(&mut CircuitBuilder, u64) -> NodeId,
        lmax: usize,
    ) -> Vec<Vec<NodeId>> {
        let powers: Vec<Vec<NodeId>> = (0..self.nodes as u64)
            .map(|t| {
                let h = h_at(b, t);
                (1..=lmax).map(|l| b.pow(h, l)).collect()
            })
            .collect();
        self.q
            .iter()
            .enumerate()
            .map(|(j, qj)| {
                let mut row = vec![self.base[j]];
                for l in 1..=lmax {
                    let prods: Vec<NodeId> = (0..self.nodes).map(|t| b.mul(vec![powers[t][l - 1], qj[t]])).collect();
                    row.push(b.sum(&prods));
                }
                row
            })
            .collect()
    }
}

/// Power sums `P_0..P_jmax` over the base roots on which some condition
/// polynomial does not vanish.
///
/// Conditions are given coefficient-wise as linear forms. For `L`
/// conditions the combination `sum_c z^c h_c` is tried at `(L-1)K + 1`
/// values of `z`, at least one of which separates every base root; the
/// largest nonvanishing elementary symmetric function of the values is
/// located with the guarded selection below.
pub(crate) fn filter_out_sums(
    b: &mut CircuitBuilder,
    basis: &TraceBasis,
    kdeg: usize,
    conds: &[Vec<LinForm>],
    jmax: usize,
) -> Result<Vec<NodeId>> {
    let ctx = b.ctx();
    if conds.is_empty() || kdeg == 0 {
        let z = b.zero();
        return Ok(vec![z; jmax + 1]);
    }
    let zcount = (conds.len() - 1) * kdeg + 1;
    if zcount as u64 > ctx.p() {
        return Err(Error::FieldTooSmall);
    }
    let hdeg = conds.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
    assert!(hdeg * kdeg < basis.nodes, "trace basis too small");
    // guards[k][z] and values[k][z][j] for k = 1..=kdeg
    let mut guards: Vec<Vec<NodeId>> = vec![Vec::new(); kdeg + 1];
    let mut values: Vec<Vec<Vec<NodeId>>> = vec![Vec::new(); kdeg + 1];
    for z in 0..zcount as u64 {
        let mut h_at = |b: &mut CircuitBuilder, t: u64| {
            let mut terms = LinForm::new();
            let mut zc = 1u64;
            for cond in conds {
                let mut te = zc;
                for form in cond {
                    for &(v, w) in form {
                        terms.push((v, ctx.mul(w, te)));
                    }
                    te = ctx.mul(te, t);
                }
                zc = ctx.mul(zc, z);
            }
            b.add(terms)
        };
        let tr = basis.traces(b, &mut h_at, kdeg);
        let ps: Vec<NodeId> = tr[0].clone();
        let wanted: Vec<(usize, u64)> = (0..=kdeg).map(|i| (i, 1)).collect();
        let e = esyms_nodes(b, &ps, kdeg, &wanted)?;
        for k in 1..=kdeg {
            guards[k].push(e[k]);
            let vals = (0..=jmax)
                .map(|j| {
                    let terms: LinForm = (1..=k)
                        .map(|l| {
                            let prod = b.mul(vec![e[k - l], tr[j][l]]);
                            (prod, if l % 2 == 1 { 1 } else { ctx.neg(1) })
                        })
                        .collect();
                    b.add(terms)
                })
                .collect();
            values[k].push(vals);
        }
    }
    let one = b.one();
    let zero = b.zero();
    let mut order: Vec<(NodeId, Option<usize>, usize)> = Vec::new();
    for k in (1..=kdeg).rev() {
        for z in 0..zcount {
            order.push((guards[k][z], Some(k), z));
        }
    }
    order.push((one, None, 0));
    let g = b.select(order.iter().map(|o| o.0).collect());
    let half = ctx.inv(2)?;
    let m_half = ctx.neg(half);
    let mut out = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let mut r2 = Vec::with_capacity(2 * order.len());
        let mut r3 = Vec::with_capacity(2 * order.len());
        for &(guard, k, z) in &order {
            let val = match k {
                Some(k) => values[k][z][j],
                None => zero,
            };
            let shifted = b.add(vec![(val, 1), (guard, 1)]);
            r2.extend([val, guard]);
            r3.extend([shifted, guard]);
        }
        let r2 = b.select(r2);
        let r3 = b.select(r3);
        let first = b.sub(r3, g);
        let second = b.add(vec![(r2, half), (g, m_half)]);
        let scaled = b.select(vec![first, second]);
        out.push(b.div(scaled, g));
    }
    Ok(out)
}

/// Coefficient forms of the `l`-th derivative of the monic polynomial with
/// lower coefficients `nodes` (the leading coefficient is `one`).
fn derivative_forms(ctx: FieldCtx, nodes: &[NodeId], one: NodeId, l: usize) -> Vec<LinForm> {
    let n = nodes.len();
    if l > n {
        return vec![LinForm::new()];
    }
    (0..=n - l)
        .map(|e| {
            // (e + l)! / e!
            let factor = (e + 1..=e + l).fold(1u64, |acc, x| ctx.mul(acc, x as u64));
            let v = if e + l < n { nodes[e + l] } else { one };
            vec![(v, factor)]
        })
        .collect()
}

/// The named circuit constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    /// `e_d(x_1..x_n)` with depth exactly 3.
    ESym { n: usize, d: usize },
    /// Inputs `f_0..f_{n-1}` of a monic `f`; outputs `p_0..p_d`.
    PowerSums { n: usize, d: usize },
    /// Inputs `p_1..p_n`; outputs the coefficients `c_0..c_n` of the monic
    /// polynomial with these power sums.
    CoeffsFromPowerSums { n: usize },
    /// Inputs `f_0..f_{n-1}` of a monic `f` then `g_0..g_m`; output
    /// `res(f, g)`.
    Resultant { n: usize, m: usize },
    /// Inputs `f_0..f_{n-1}` then `g_0..g_{m-1}` of two monic polynomials.
    /// With `K = min(n, m)` the outputs are `K + 1` blocks of `K + 1`
    /// coefficients, where block `k` holds the gcd when its degree is `k`
    /// and zeros otherwise, followed by the `K + 1` gcd coefficients
    /// themselves, obtained by selecting through the blocks.
    Gcd { n: usize, m: usize },
}

impl BuildKind {
    pub fn name(&self) -> &'static str {
        match self {
            BuildKind::ESym { .. } => "esym",
            BuildKind::PowerSums { .. } => "power_sums",
            BuildKind::CoeffsFromPowerSums { .. } => "coeffs_from_power_sums",
            BuildKind::Resultant { .. } => "resultant",
            BuildKind::Gcd { .. } => "gcd",
        }
    }

    /// Number of circuit inputs.
    pub fn inputs(&self) -> usize {
        match *self {
            BuildKind::ESym { n, .. } | BuildKind::PowerSums { n, .. } | BuildKind::CoeffsFromPowerSums { n } => n,
            BuildKind::Resultant { n, m } => n + m + 1,
            BuildKind::Gcd { n, m } => n + m,
        }
    }

    fn params(&self) -> [usize; 2] {
        match *self {
            BuildKind::ESym { n, d } | BuildKind::PowerSums { n, d } => [n, d],
            BuildKind::CoeffsFromPowerSums { n } => [n, 0],
            BuildKind::Resultant { n, m } | BuildKind::Gcd { n, m } => [n, m],
        }
    }
}

/// Emits the named construction.
pub fn build(ctx: FieldCtx, kind: BuildKind) -> Result<ArithCircuit> {
    if kind.params().iter().any(|&x| x > MAX_PARAMETER) {
        return Err(Error::CapExceeded(format!("{} parameters exceed {MAX_PARAMETER}", kind.name())));
    }
    let mut b = CircuitBuilder::new(ctx, kind.inputs());
    let outputs = match kind {
        BuildKind::ESym { n, d } => build_esym(&mut b, n, d)?,
        BuildKind::PowerSums { n, d } => {
            let f: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
            power_sums_nodes(&mut b, &f, d)?
        }
        BuildKind::CoeffsFromPowerSums { n } => {
            let mut ps = vec![0];
            ps.extend((0..n).map(|i| b.input(i)));
            let wanted: Vec<(usize, u64)> = (0..n)
                .map(|i| (n - i, if (n - i) % 2 == 0 { 1 } else { ctx.neg(1) }))
                .collect();
            let mut out = esyms_nodes(&mut b, &ps, n, &wanted)?;
            out.push(b.one());
            out
        }
        BuildKind::Resultant { n, m } => vec![build_resultant(&mut b, n, m)?],
        BuildKind::Gcd { n, m } => build_gcd(&mut b, n, m)?,
    };
    b.finish(outputs)
}

fn build_esym(b: &mut CircuitBuilder, n: usize, d: usize) -> Result<Vec<NodeId>> {
    let ctx = b.ctx();
    if d > n {
        return Err(Error::InvalidArgument(format!("esym degree {d} exceeds {n} variables")));
    }
    ctx.guard(Requirement::Degree(n))?;
    if n == 0 {
        return Ok(vec![b.one()]);
    }
    // prod_i (1 + y x_i) at y = 0..=n, then the coefficient of y^d.
    let one = b.one();
    let x: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let prods: Vec<NodeId> = (0..=n as u64)
        .map(|y| {
            let factors = x.iter().map(|&xi| b.add(vec![(one, 1), (xi, y)])).collect();
            b.mul(factors)
        })
        .collect();
    let w = gpoly::coeff_weights(ctx, n + 1, d)?;
    Ok(vec![b.add(prods.into_iter().zip(w).collect())])
}

fn build_resultant(b: &mut CircuitBuilder, n: usize, m: usize) -> Result<NodeId> {
    let ctx = b.ctx();
    if n == 0 {
        return Ok(b.one());
    }
    let f: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let g: Vec<NodeId> = (0..=m).map(|i| b.input(n + i)).collect();
    // res(f, g) = e_n(g(alpha_1), ..., g(alpha_n)); the power sums of the
    // values are traces of g^l, which need p_0..p_{nm} of f.
    let nodes = n * m + 1;
    let base = power_sums_nodes(b, &f, nodes - 1)?;
    let basis = TraceBasis::new(b, &base, 0, nodes)?;
    let mut h_at = |b: &mut CircuitBuilder, t: u64| {
        let mut tp = 1u64;
        let terms = g
            .iter()
            .map(|&v| {
                let term = (v, tp);
                tp = ctx.mul(tp, t);
                term
            })
            .collect();
        b.add(terms)
    };
    let tr = basis.traces(b, &mut h_at, n);
    Ok(esyms_nodes(b, &tr[0], n, &[(n, 1)])?[0])
}

fn build_gcd(b: &mut CircuitBuilder, n: usize, m: usize) -> Result<Vec<NodeId>> {
    let ctx = b.ctx();
    let f: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let g: Vec<NodeId> = (0..m).map(|i| b.input(n + i)).collect();
    // The roots of the lower-degree input form the base multiset.
    let (base_in, other_in) = if m <= n { (g, f) } else { (f, g) };
    let k = base_in.len();
    let other_deg = other_in.len();
    let one = b.one();
    let zero = b.zero();
    if k == 0 {
        return Ok(vec![one, b.select(vec![one])]);
    }
    ctx.guard(Requirement::Gcd2(n.max(m)))?;
    let hdeg = other_deg.max(k);
    let nodes = k * hdeg + 1;
    let base = power_sums_nodes(b, &base_in, k + nodes - 1)?;
    let basis = TraceBasis::new(b, &base, k, nodes)?;
    let inv = gpoly::small_inverses(ctx, k)?;
    // Counted power sums of the roots with base multiplicity t and other
    // multiplicity at least r: W(t, r) / t - W(t + 1, r) / t, where W(t, r)
    // sums (with base multiplicity) over roots where the base vanishes to
    // order >= t and the other input to order >= r.
    let mut pg_terms: Vec<LinForm> = vec![LinForm::new(); k + 1];
    for t in 1..=k {
        for r in 1..=t {
            let mut conds: Vec<Vec<LinForm>> = (1..t).map(|l| derivative_forms(ctx, &base_in, one, l)).collect();
            conds.extend((0..r).map(|l| derivative_forms(ctx, &other_in, one, l)));
            let out = filter_out_sums(b, &basis, k, &conds, k)?;
            let prev = if r < t { inv[t - 1] } else { 0 };
            let coef = ctx.sub(inv[t], prev);
            for j in 0..=k {
                pg_terms[j].push((base[j], coef));
                pg_terms[j].push((out[j], ctx.neg(coef)));
            }
        }
    }
    let pg: Vec<NodeId> = pg_terms.into_iter().map(|t| b.add(t)).collect();
    let wanted: Vec<(usize, u64)> = (0..=k).map(|i| (i, if i % 2 == 0 { 1 } else { ctx.neg(1) })).collect();
    let se = esyms_nodes(b, &pg, k, &wanted)?;
    // Block for degree d: indicator of pg[0] == d times the candidate.
    let mut blocks: Vec<Vec<NodeId>> = Vec::with_capacity(k + 1);
    for d in 0..=k {
        let mut factors: Vec<NodeId> = Vec::with_capacity(k + 1);
        let mut denom = 1u64;
        for other in (0..=k).filter(|&o| o != d) {
            factors.push(b.add(vec![(pg[0], 1), (one, ctx.neg(other as u64))]));
            denom = ctx.mul(denom, ctx.sub(d as u64, other as u64));
        }
        factors.push(b.constant(ctx.inv(denom)?));
        let indicator = b.mul(factors);
        let block = (0..=k)
            .map(|i| if i <= d { b.mul(vec![indicator, se[d - i]]) } else { zero })
            .collect();
        blocks.push(block);
    }
    let mut outputs: Vec<NodeId> = blocks.iter().flatten().copied().collect();
    for i in 0..=k {
        let chain = (0..=k).rev().map(|d| blocks[d][i]).collect();
        outputs.push(b.select(chain));
    }
    Ok(outputs)
}

/// The gcd encoded by the outputs of a `Gcd { n, m }` circuit.
pub fn decode_gcd_outputs(ctx: FieldCtx, values: &[u64], n: usize, m: usize) -> Result<DensePoly> {
    let k = n.min(m);
    let want = (k + 1) * (k + 2);
    if values.len() != want {
        return Err(Error::InvalidArgument(format!("expected {want} gcd outputs, got {}", values.len())));
    }
    Ok(DensePoly::new(ctx, values[(k + 1) * (k + 1)..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcdlib;
    use crate::newton;
    use crate::structmat;
    use crate::upoly;
    use proptest::prelude::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn lower(p: &DensePoly) -> Vec<u64> {
        p.coeffs()[..p.coeffs().len() - 1].to_vec()
    }

    #[test]
    fn esym_example() {
        let c = build(f(), BuildKind::ESym { n: 3, d: 2 }).unwrap();
        assert_eq!(c.eval(&[1, 2, 3]).unwrap(), vec![11]);
        assert_eq!(c.metrics().depth, 3);
    }

    #[test]
    fn resultant_example() {
        let c = build(f(), BuildKind::Resultant { n: 2, m: 1 }).unwrap();
        // f = x^2 - 1, g = x - 2
        let ctx = f();
        let x = [ctx.neg(1), 0, ctx.neg(2), 1];
        assert_eq!(c.eval(&x).unwrap(), vec![3]);
    }

    #[test]
    fn gcd_example() {
        let ctx = f();
        let c = build(ctx, BuildKind::Gcd { n: 2, m: 2 }).unwrap();
        let a = DensePoly::from_roots(ctx, &[1, 2]);
        let b = DensePoly::from_roots(ctx, &[1, 3]);
        let mut x = lower(&a);
        x.extend(lower(&b));
        let out = c.eval(&x).unwrap();
        let g = decode_gcd_outputs(ctx, &out, 2, 2).unwrap();
        assert_eq!(g, DensePoly::from_roots(ctx, &[1]));
        // The degree-1 block carries the gcd; the others are zero.
        assert_eq!(&out[3..6], &[ctx.neg(1), 1, 0]);
        assert_eq!(&out[0..3], &[0, 0, 0]);
        assert_eq!(&out[6..9], &[0, 0, 0]);
    }

    #[test]
    fn power_sums_and_back() {
        let ctx = f();
        let p = DensePoly::from_roots(ctx, &[2, 2, 5, 11]);
        let c = build(ctx, BuildKind::PowerSums { n: 4, d: 6 }).unwrap();
        let got = c.eval(&lower(&p)).unwrap();
        assert_eq!(got, newton::to_power_sums(&p, 6).unwrap().sums);
        let back = build(ctx, BuildKind::CoeffsFromPowerSums { n: 4 }).unwrap();
        assert_eq!(back.eval(&got[1..5]).unwrap(), p.coeffs().to_vec());
    }

    #[test]
    fn depth_does_not_grow_with_size() {
        let ctx = f();
        let kinds = |n: usize| {
            [
                BuildKind::ESym { n, d: n / 2 },
                BuildKind::PowerSums { n, d: n },
                BuildKind::CoeffsFromPowerSums { n },
                BuildKind::Resultant { n, m: 2 },
                BuildKind::Gcd { n, m: 2 },
            ]
        };
        for (small, large) in kinds(4).iter().zip(kinds(8).iter()) {
            let a = build(ctx, *small).unwrap().metrics();
            let b = build(ctx, *large).unwrap().metrics();
            assert_eq!(a.depth, b.depth, "{}", small.name());
            assert!(b.size <= 32 * a.size, "{}", small.name());
        }
    }

    #[test]
    fn caps_and_guards() {
        let ctx = f();
        assert!(matches!(build(ctx, BuildKind::ESym { n: 5000, d: 2 }), Err(Error::CapExceeded(_))));
        assert!(matches!(build(ctx, BuildKind::ESym { n: 2, d: 3 }), Err(Error::InvalidArgument(_))));
        let small = FieldCtx::new(5).unwrap();
        assert!(matches!(
            build(small, BuildKind::ESym { n: 6, d: 2 }),
            Err(Error::CharacteristicTooSmall { .. })
        ));
        let mut b = CircuitBuilder::with_budget(ctx, 1, 3);
        let x = b.input(0);
        let y = b.mul(vec![x, x, x, x]);
        assert!(matches!(b.finish(vec![y]), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn gcd_circuit_handles_trivial_and_full_overlap() {
        let ctx = f();
        let c = build(ctx, BuildKind::Gcd { n: 3, m: 2 }).unwrap();
        let a = DensePoly::from_roots(ctx, &[4, 4, 9]);
        for roots in [&[4u64, 4][..], &[4, 9], &[7, 8], &[9, 9]] {
            let b = DensePoly::from_roots(ctx, roots);
            let mut x = lower(&a);
            x.extend(lower(&b));
            let got = decode_gcd_outputs(ctx, &c.eval(&x).unwrap(), 3, 2).unwrap();
            assert_eq!(got, gcdlib::gcd(&[a.clone(), b]).unwrap(), "{roots:?}");
        }
    }

    fn roots_strategy(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..6, 1..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn esym_matches_direct(xs in prop::collection::vec(0u64..1_000_003, 1..7), d in 0usize..7) {
            let ctx = f();
            let d = d.min(xs.len());
            let c = build(ctx, BuildKind::ESym { n: xs.len(), d }).unwrap();
            let want = upoly::esym_values(&ctx, &xs, d).unwrap();
            prop_assert_eq!(c.eval(&xs).unwrap(), vec![want]);
        }

        #[test]
        fn resultant_matches_direct(fr in roots_strategy(4), g in prop::collection::vec(0u64..1_000_003, 1..4)) {
            let ctx = f();
            let fp = DensePoly::from_roots(ctx, &fr);
            let gp = DensePoly::new(ctx, g.clone());
            let c = build(ctx, BuildKind::Resultant { n: fr.len(), m: g.len() - 1 }).unwrap();
            let mut x = lower(&fp);
            x.extend(g);
            prop_assert_eq!(c.eval(&x).unwrap(), vec![structmat::resultant(&fp, &gp).unwrap()]);
        }

        #[test]
        fn gcd_matches_direct(fr in roots_strategy(5), gr in roots_strategy(4)) {
            let ctx = f();
            let a = DensePoly::from_roots(ctx, &fr);
            let b = DensePoly::from_roots(ctx, &gr);
            let c = build(ctx, BuildKind::Gcd { n: fr.len(), m: gr.len() }).unwrap();
            let mut x = lower(&a);
            x.extend(lower(&b));
            let got = decode_gcd_outputs(ctx, &c.eval(&x).unwrap(), fr.len(), gr.len()).unwrap();
            prop_assert_eq!(got, gcdlib::gcd(&[a, b]).unwrap());
        }
    }
}
