//! Arithmetic circuits over a prime field.
//!
//! A circuit is a list of gates in topological order: every argument of a
//! gate refers to an earlier gate. Addition gates carry a field weight per
//! argument, so linear combinations cost one layer. `Select` returns its
//! first nonzero argument (or zero), which is how a circuit branches on the
//! degree of an intermediate result.
//!
//! Size is the number of wires (gate arguments); depth counts gate layers,
//! with inputs and constants at depth zero.

mod build;
mod pit;
mod transform;

pub use build::{build, decode_gcd_outputs, BuildKind, CircuitBuilder};
pub use pit::{find_nonzero_point, pit, pit_with, remove_selects, PitConfig, PitOutcome};
pub use transform::{coefficient_circuits, eliminate_divisions, homogeneous_components};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Index of a gate inside a circuit.
pub type NodeId = usize;

/// One gate of an arithmetic circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// The circuit input with the given index.
    Input(usize),
    /// A field constant.
    Const(u64),
    /// `sum_i w_i * v_i` over `(v_i, w_i)`.
    Add(Vec<(NodeId, u64)>),
    /// Product of the arguments (repetition allowed).
    Mul(Vec<NodeId>),
    /// Quotient `num / den`.
    Div(NodeId, NodeId),
    /// The first argument with a nonzero value, or zero.
    Select(Vec<NodeId>),
}

impl Gate {
    /// The nodes this gate reads.
    pub fn args(&self) -> Vec<NodeId> {
        match self {
            Gate::Input(_) | Gate::Const(_) => Vec::new(),
            Gate::Add(terms) => terms.iter().map(|&(v, _)| v).collect(),
            Gate::Mul(args) | Gate::Select(args) => args.clone(),
            Gate::Div(a, b) => vec![*a, *b],
        }
    }

    /// Number of wires feeding the gate.
    pub fn fan_in(&self) -> usize {
        match self {
            Gate::Input(_) | Gate::Const(_) => 0,
            Gate::Add(terms) => terms.len(),
            Gate::Mul(args) | Gate::Select(args) => args.len(),
            Gate::Div(..) => 2,
        }
    }

    /// Lower-case operation name used by the serialized form.
    pub fn op_name(&self) -> &'static str {
        match self {
            Gate::Input(_) => "input",
            Gate::Const(_) => "const",
            Gate::Add(_) => "add",
            Gate::Mul(_) => "mul",
            Gate::Div(..) => "div",
            Gate::Select(_) => "select",
        }
    }
}

/// A validated arithmetic circuit with designated outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithCircuit {
    ctx: FieldCtx,
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<NodeId>,
}

/// Gate counts by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub input: usize,
    pub constant: usize,
    pub add: usize,
    pub mul: usize,
    pub div: usize,
    pub select: usize,
}

/// Size, depth and gate counts of a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub size: usize,
    pub depth: usize,
    pub gates: usize,
    pub counts: GateCounts,
}

impl ArithCircuit {
    /// Checks that every reference points backwards, inputs are in range and
    /// constants are reduced.
    pub fn new(ctx: FieldCtx, inputs: usize, gates: Vec<Gate>, outputs: Vec<NodeId>) -> Result<Self> {
        for (i, g) in gates.iter().enumerate() {
            match g {
                Gate::Input(k) if *k >= inputs => {
                    return Err(Error::MalformedCircuit(format!("gate {i} reads input {k} of {inputs}")));
                }
                Gate::Const(c) if *c >= ctx.p() => {
                    return Err(Error::MalformedCircuit(format!("gate {i} has unreduced constant {c}")));
                }
                Gate::Add(terms) if terms.iter().any(|&(_, w)| w >= ctx.p()) => {
                    return Err(Error::MalformedCircuit(format!("gate {i} has an unreduced weight")));
                }
                Gate::Select(args) if args.is_empty() => {
                    return Err(Error::MalformedCircuit(format!("gate {i} selects from nothing")));
                }
                Gate::Mul(args) if args.is_empty() => {
                    return Err(Error::MalformedCircuit(format!("gate {i} multiplies nothing")));
                }
                _ => {}
            }
            if let Some(a) = g.args().into_iter().find(|&a| a >= i) {
                return Err(Error::MalformedCircuit(format!("gate {i} reads gate {a} which is not earlier")));
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= gates.len()) {
            return Err(Error::MalformedCircuit(format!("output refers to missing gate {o}")));
        }
        Ok(ArithCircuit { ctx, inputs, gates, outputs })
    }

    pub(crate) fn from_parts_unchecked(ctx: FieldCtx, inputs: usize, gates: Vec<Gate>, outputs: Vec<NodeId>) -> Self {
        ArithCircuit { ctx, inputs, gates, outputs }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    /// The same gates with a different output list.
    pub fn with_outputs(&self, outputs: Vec<NodeId>) -> Result<Self> {
        ArithCircuit::new(self.ctx, self.inputs, self.gates.clone(), outputs)
    }

    /// Values of every gate at the given input point.
    pub fn eval_all(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.inputs {
            return Err(Error::InvalidArgument(format!(
                "circuit takes {} inputs, got {}",
                self.inputs,
                x.len()
            )));
        }
        let f = self.ctx;
        let mut val = Vec::with_capacity(self.gates.len());
        for (i, g) in self.gates.iter().enumerate() {
            let v = match g {
                Gate::Input(k) => f.reduce(x[*k]),
                Gate::Const(c) => *c,
                Gate::Add(terms) => terms.iter().fold(0, |acc, &(a, w)| f.add(acc, f.mul(val[a], w))),
                Gate::Mul(args) => args.iter().fold(1, |acc, &a| f.mul(acc, val[a])),
                Gate::Div(a, b) => {
                    if val[*b] == 0 {
                        return Err(Error::DivisionByZeroAtGate(i));
                    }
                    f.mul(val[*a], f.inv(val[*b])?)
                }
                Gate::Select(args) => args.iter().map(|&a| val[a]).find(|&v| v != 0).unwrap_or(0),
            };
            val.push(v);
        }
        Ok(val)
    }

    /// Values of the outputs at the given input point.
    pub fn eval(&self, x: &[u64]) -> Result<Vec<u64>> {
        let val = self.eval_all(x)?;
        Ok(self.outputs.iter().map(|&o| val[o]).collect())
    }

    /// Depth of every gate.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input(_) | Gate::Const(_) => 0,
                _ => 1 + g.args().iter().map(|&a| d[a]).max().unwrap_or(0),
            };
            d.push(v);
        }
        d
    }

    /// Syntactic degree bound of every gate, treating `Div(a, b)` as having
    /// the degree of `a` plus that of `b`.
    pub fn degree_bounds(&self) -> Vec<usize> {
        let mut d: Vec<usize> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(terms) => terms.iter().map(|&(a, _)| d[a]).max().unwrap_or(0),
                Gate::Select(args) => args.iter().map(|&a| d[a]).max().unwrap_or(0),
                Gate::Mul(args) => args.iter().map(|&a| d[a]).fold(0usize, |s, x| s.saturating_add(x)),
                Gate::Div(a, b) => d[*a].saturating_add(d[*b]),
            };
            d.push(v);
        }
        d
    }

    pub fn metrics(&self) -> Metrics {
        let mut counts = GateCounts::default();
        let mut size = 0;
        for g in &self.gates {
            size += g.fan_in();
            match g {
                Gate::Input(_) => counts.input += 1,
                Gate::Const(_) => counts.constant += 1,
                Gate::Add(_) => counts.add += 1,
                Gate::Mul(_) => counts.mul += 1,
                Gate::Div(..) => counts.div += 1,
                Gate::Select(_) => counts.select += 1,
            }
        }
        let d = self.depths();
        let depth = self.outputs.iter().map(|&o| d[o]).max().unwrap_or(0);
        Metrics { size, depth, gates: self.gates.len(), counts }
    }

    /// Drops gates no output depends on. The arity is unchanged.
    pub fn prune(&self) -> ArithCircuit {
        let mut live = vec![false; self.gates.len()];
        for &o in &self.outputs {
            live[o] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if live[i] {
                for a in self.gates[i].args() {
                    live[a] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::with_capacity(live.iter().filter(|&&l| l).count());
        for (i, g) in self.gates.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let ng = match g {
                Gate::Input(k) => Gate::Input(*k),
                Gate::Const(c) => Gate::Const(*c),
                Gate::Add(t) => Gate::Add(t.iter().map(|&(a, w)| (map[a], w)).collect()),
                Gate::Mul(a) => Gate::Mul(a.iter().map(|&x| map[x]).collect()),
                Gate::Div(a, b) => Gate::Div(map[*a], map[*b]),
                Gate::Select(a) => Gate::Select(a.iter().map(|&x| map[x]).collect()),
            };
            map[i] = gates.len();
            gates.push(ng);
        }
        let outputs = self.outputs.iter().map(|&o| map[o]).collect();
        ArithCircuit { ctx: self.ctx, inputs: self.inputs, gates, outputs }
    }

    pub fn has_divisions(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Div(..)))
    }

    pub fn has_selects(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Select(_)))
    }
}

/// Evaluates a circuit; the free-function form of [`ArithCircuit::eval`].
pub fn eval(c: &ArithCircuit, x: &[u64]) -> Result<Vec<u64>> {
    c.eval(x)
}

/// Size, depth and gate counts; the free-function form of
/// [`ArithCircuit::metrics`].
pub fn metrics(c: &ArithCircuit) -> Metrics {
    c.metrics()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    #[test]
    fn eval_and_metrics_of_small_circuit() {
        // (x0 + 2 x1) * x1 / x0
        let gates = vec![
            Gate::Input(0),
            Gate::Input(1),
            Gate::Add(vec![(0, 1), (1, 2)]),
            Gate::Mul(vec![2, 1]),
            Gate::Div(3, 0),
        ];
        let c = ArithCircuit::new(f(), 2, gates, vec![4]).unwrap();
        assert_eq!(c.eval(&[2, 3]).unwrap(), vec![12]);
        assert_eq!(c.eval(&[0, 3]), Err(Error::DivisionByZeroAtGate(4)));
        let m = c.metrics();
        assert_eq!(m.size, 6);
        assert_eq!(m.depth, 3);
        assert_eq!(m.counts.div, 1);
        assert_eq!(c.degree_bounds()[4], 3);
    }

    #[test]
    fn select_of_difference_then_input() {
        // select(x1 - x2, x1)
        let ctx = f();
        let gates = vec![Gate::Input(0), Gate::Input(1), Gate::Add(vec![(0, 1), (1, ctx.neg(1))]), Gate::Select(vec![2, 0])];
        let c = ArithCircuit::new(ctx, 2, gates, vec![3]).unwrap();
        assert_eq!(c.eval(&[3, 3]).unwrap(), vec![3]);
        assert_eq!(c.eval(&[3, 5]).unwrap(), vec![ctx.neg(2)]);
    }

    #[test]
    fn select_semantics_exhaustive() {
        // Every 0/nonzero pattern over up to four arguments.
        let f = f();
        for len in 1..=4usize {
            let mut gates: Vec<Gate> = (0..len).map(Gate::Input).collect();
            gates.push(Gate::Select((0..len).collect()));
            let c = ArithCircuit::new(f, len, gates, vec![len]).unwrap();
            for mask in 0..(1u32 << len) {
                let x: Vec<u64> = (0..len).map(|i| if mask >> i & 1 == 1 { 10 + i as u64 } else { 0 }).collect();
                let want = x.iter().copied().find(|&v| v != 0).unwrap_or(0);
                assert_eq!(c.eval(&x).unwrap(), vec![want], "pattern {mask:b}");
            }
        }
    }

    #[test]
    fn malformed_circuits_are_rejected() {
        let f = f();
        let forward = vec![Gate::Add(vec![(1, 1)]), Gate::Input(0)];
        assert!(matches!(ArithCircuit::new(f, 1, forward, vec![0]), Err(Error::MalformedCircuit(_))));
        let bad_input = vec![Gate::Input(3)];
        assert!(matches!(ArithCircuit::new(f, 1, bad_input, vec![0]), Err(Error::MalformedCircuit(_))));
        let bad_const = vec![Gate::Const(1_000_003)];
        assert!(matches!(ArithCircuit::new(f, 0, bad_const, vec![0]), Err(Error::MalformedCircuit(_))));
        let bad_out = vec![Gate::Const(1)];
        assert!(matches!(ArithCircuit::new(f, 0, bad_out, vec![5]), Err(Error::MalformedCircuit(_))));
        let empty_select = vec![Gate::Select(vec![])];
        assert!(matches!(ArithCircuit::new(f, 0, empty_select, vec![0]), Err(Error::MalformedCircuit(_))));
    }

    #[test]
    fn wrong_arity_is_an_argument_error() {
        let c = ArithCircuit::new(f(), 2, vec![Gate::Input(0)], vec![0]).unwrap();
        assert!(matches!(c.eval(&[1]), Err(Error::InvalidArgument(_))));
    }
}
