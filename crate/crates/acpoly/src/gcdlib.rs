//! GCD, LCM and Bézout coefficients through multiplicity thresholds, and
//! arbitrary functions of root multiplicities.
//!
//! With `s` squarefree and containing every common root, the gcd of
//! `f_1, ..., f_m` is `prod_r s_r`, where `s_r` collects the roots of `s`
//! whose multiplicity is at least `r` in every input. The same pieces, taken
//! per input from the squarefree decomposition, isolate the roots with a
//! prescribed multiplicity tuple, and any function `P` of multiplicities is
//! then a product of powers of those pieces.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Requirement};
use crate::gpoly;
use crate::newton;
use crate::ring::Ring;
use crate::rootops::{filter_generic, squarefree_generic, squarefree_part_generic, threshold_generic};
use crate::structmat::bezout_coeffs_coprime;
use crate::upoly::DensePoly;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// The gcd of monic polynomials over any ring the root machinery supports.
pub fn gcd_generic<R: Ring>(r: &R, fs: &[Vec<R::Elem>]) -> Result<Vec<R::Elem>> {
    let Some(low) = fs.iter().min_by_key(|f| f.len()) else {
        return Err(Error::InvalidArgument("gcd of an empty list".into()));
    };
    if low.len() <= 1 || fs.len() == 1 {
        return Ok(if fs.len() == 1 { low.clone() } else { vec![r.one()] });
    }
    let s = squarefree_part_generic(r, low)?;
    gcd_over_support(r, fs, s)
}

/// The gcd of `fs`, given a squarefree monic `s` vanishing at every common
/// root.
fn gcd_over_support<R: Ring>(r: &R, fs: &[Vec<R::Elem>], mut s: Vec<R::Elem>) -> Result<Vec<R::Elem>> {
    let top = fs.iter().map(|f| f.len()).min().unwrap_or(1);
    let mut acc = vec![r.one()];
    for t in 1..top {
        if s.len() == 1 {
            break;
        }
        let rs = vec![t; fs.len()];
        let (ge, _) = threshold_generic(r, &s, fs, &rs)?;
        if ge.len() == 1 {
            break;
        }
        acc = gpoly::mul(r, &acc, &ge);
        // Roots reaching threshold t + 1 are among those reaching t.
        s = ge;
    }
    Ok(acc)
}

/// `prod fs / gcd(prod_{j != i} f_j)`.
pub fn lcm_generic<R: Ring>(r: &R, fs: &[Vec<R::Elem>]) -> Result<Vec<R::Elem>> {
    let m = fs.len();
    if m <= 1 {
        return fs.first().cloned().ok_or_else(|| Error::InvalidArgument("lcm of an empty list".into()));
    }
    let mut prefix = vec![vec![r.one()]];
    for f in fs {
        let next = gpoly::mul(r, prefix.last().unwrap(), f);
        prefix.push(next);
    }
    let mut suffix = vec![r.one()];
    let mut cofactors = vec![Vec::new(); m];
    for i in (0..m).rev() {
        cofactors[i] = gpoly::mul(r, &prefix[i], &suffix);
        suffix = gpoly::mul(r, &suffix, &fs[i]);
    }
    // A root of every cofactor is a root of at least two inputs, so it is a
    // root of one of the first m - 1. Their combined radical serves as the
    // support, assembled one input at a time to keep the degrees small.
    let mut support = vec![r.one()];
    for f in &fs[..m - 1] {
        let rad = squarefree_part_generic(r, f)?;
        let (_, new) = filter_generic(r, &rad, &[support.clone()])?;
        support = gpoly::mul(r, &support, &new);
    }
    let g = gcd_over_support(r, &cofactors, support)?;
    newton::exact_div_generic(r, &prefix[m], &g)
}

fn check_inputs(fs: &[DensePoly]) -> Result<(FieldCtx, usize)> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidArgument("empty list of polynomials".into()));
    };
    let ctx = first.ctx();
    let mut d = 0;
    for f in fs {
        if f.ctx() != ctx {
            return Err(Error::ModulusMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        d = d.max(f.deg_or_zero());
    }
    Ok((ctx, d))
}

fn raw(fs: &[DensePoly]) -> Vec<Vec<u64>> {
    fs.iter().map(|f| f.coeffs().to_vec()).collect()
}

/// Monic gcd of nonzero monic polynomials.
pub fn gcd(fs: &[DensePoly]) -> Result<DensePoly> {
    let (ctx, d) = check_inputs(fs)?;
    let req = if fs.len() == 2 { Requirement::Gcd2(d) } else { Requirement::GcdMany { m: fs.len(), d } };
    ctx.guard(req)?;
    Ok(DensePoly::new(ctx, gcd_generic(&ctx, &raw(fs))?))
}

/// Monic lcm of nonzero monic polynomials.
pub fn lcm(fs: &[DensePoly]) -> Result<DensePoly> {
    let (ctx, d) = check_inputs(fs)?;
    ctx.guard(Requirement::LcmMany { m: fs.len(), d })?;
    Ok(DensePoly::new(ctx, lcm_generic(&ctx, &raw(fs))?))
}

/// `(a, b)` with `a f + b g = gcd(f, g)`, `deg a < deg g - deg gcd` and
/// `deg b < deg f - deg gcd`; `(0, 1)` when `f = g`.
pub fn bezout_general(f: &DensePoly, g: &DensePoly) -> Result<(DensePoly, DensePoly)> {
    let fs = [f.clone(), g.clone()];
    let (ctx, d) = check_inputs(&fs)?;
    ctx.guard(Requirement::Gcd2(d))?;
    let h = gcd(&fs)?;
    let f1 = newton::exact_div(f, &h)?;
    let g1 = newton::exact_div(g, &h)?;
    bezout_coeffs_coprime(&f1, &g1)
}

/// A function `P: {0..d}^m -> N`, stored by its nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMultiplicityFunction {
    arity: usize,
    degree_cap: usize,
    table: BTreeMap<Vec<usize>, u64>,
    max_output: Option<u64>,
}

impl DenseMultiplicityFunction {
    /// The zero function on `{0..degree_cap}^arity`.
    pub fn new(arity: usize, degree_cap: usize) -> Self {
        DenseMultiplicityFunction { arity, degree_cap, table: BTreeMap::new(), max_output: None }
    }

    /// Tabulates `p` over every tuple in `{0..degree_cap}^arity`.
    pub fn from_fn(arity: usize, degree_cap: usize, mut p: impl FnMut(&[usize]) -> u64) -> Self {
        let mut out = Self::new(arity, degree_cap);
        let mut tuple = vec![0usize; arity];
        loop {
            let v = p(&tuple);
            if v != 0 {
                out.table.insert(tuple.clone(), v);
            }
            let Some(pos) = tuple.iter().position(|&t| t < degree_cap) else {
                break;
            };
            tuple[pos] += 1;
            tuple[..pos].iter_mut().for_each(|t| *t = 0);
        }
        out
    }

    /// Limits every stored value to at most `cap`.
    pub fn with_max_output(mut self, cap: u64) -> Result<Self> {
        if let Some((t, &v)) = self.table.iter().find(|(_, &v)| v > cap) {
            return Err(Error::CapExceeded(format!("P{t:?} = {v} exceeds {cap}")));
        }
        self.max_output = Some(cap);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn max_output(&self) -> Option<u64> {
        self.max_output
    }

    /// Sets `P(tuple) = value`; a zero value removes the entry.
    pub fn set(&mut self, tuple: &[usize], value: u64) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::InvalidArgument(format!("tuple of length {} for arity {}", tuple.len(), self.arity)));
        }
        if tuple.iter().any(|&t| t > self.degree_cap) {
            return Err(Error::InvalidArgument(format!("tuple {tuple:?} exceeds degree cap {}", self.degree_cap)));
        }
        if let Some(cap) = self.max_output {
            if value > cap {
                return Err(Error::CapExceeded(format!("P{tuple:?} = {value} exceeds {cap}")));
            }
        }
        if value == 0 {
            self.table.remove(tuple);
        } else {
            self.table.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    pub fn get(&self, tuple: &[usize]) -> u64 {
        self.table.get(tuple).copied().unwrap_or(0)
    }

    /// The nonzero entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], u64)> {
        self.table.iter().map(|(t, &v)| (t.as_slice(), v))
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.table.len()
    }
}

/// Per input, the pieces `f_{i,j}` for `j = 0, 1, ...`: `f_{i,0}` holds the
/// roots of `s` absent from `f_i`, `f_{i,j}` those of multiplicity exactly `j`.
struct DeltaPieces {
    ctx: FieldCtx,
    pieces: Vec<Vec<Vec<u64>>>,
}

impl DeltaPieces {
    fn new(ctx: FieldCtx, fs: &[DensePoly]) -> Result<Self> {
        let product = fs.iter().fold(DensePoly::one(ctx), |acc, f| acc.mul(f));
        let s = squarefree_part_generic(&ctx, product.coeffs())?;
        let mut pieces = Vec::with_capacity(fs.len());
        for f in fs {
            let parts = if f.deg_or_zero() == 0 { Vec::new() } else { squarefree_generic(&ctx, f.coeffs())? };
            let radical = parts.iter().fold(vec![1u64], |acc, p| gpoly::mul(&ctx, &acc, p));
            let mut row = vec![newton::exact_div_generic(&ctx, &s, &radical)?];
            row.extend(parts);
            pieces.push(row);
        }
        Ok(DeltaPieces { ctx, pieces })
    }

    /// The roots whose multiplicity in `f_i` is `tuple[i]` for every `i`.
    fn delta(&self, tuple: &[usize]) -> Result<Vec<u64>> {
        let mut chosen = Vec::with_capacity(tuple.len());
        for (row, &t) in self.pieces.iter().zip(tuple) {
            match row.get(t) {
                Some(p) if p.len() > 1 => chosen.push(p.clone()),
                _ => return Ok(vec![1]),
            }
        }
        Ok(filter_generic(&self.ctx, &chosen[0], &chosen[1..])?.0)
    }
}

fn diamond_guard(ctx: FieldCtx, m: usize, d: usize) -> Result<()> {
    let req = if m == 2 { Requirement::Diamond2(d) } else { Requirement::DiamondMany { m, d } };
    ctx.guard(req)
}

/// The default bound on the output degree of [`diamond_dense`] and
/// [`diamond_tropical`]: ten times the total input degree.
pub fn default_output_cap(fs: &[DensePoly]) -> usize {
    10 * fs.iter().map(|f| f.deg_or_zero()).sum::<usize>()
}

/// `prod_alpha (x - alpha)^P(mult_alpha(f_1), ..., mult_alpha(f_m))` over the
/// roots of the inputs, with the default output cap.
pub fn diamond_dense(fs: &[DensePoly], p: &DenseMultiplicityFunction) -> Result<DensePoly> {
    diamond_dense_capped(fs, p, default_output_cap(fs))
}

/// [`diamond_dense`] with an explicit bound on the output degree.
pub fn diamond_dense_capped(fs: &[DensePoly], p: &DenseMultiplicityFunction, cap: usize) -> Result<DensePoly> {
    let (ctx, d) = check_inputs(fs)?;
    if p.arity() != fs.len() {
        return Err(Error::InvalidArgument(format!("function of arity {} for {} polynomials", p.arity(), fs.len())));
    }
    diamond_guard(ctx, fs.len(), d)?;
    let pieces = DeltaPieces::new(ctx, fs)?;
    let mut factors = Vec::new();
    let mut total: u128 = 0;
    for (tuple, v) in p.entries() {
        let delta = pieces.delta(tuple)?;
        if delta.len() > 1 {
            total += v as u128 * (delta.len() - 1) as u128;
            if total > cap as u128 {
                return Err(Error::OutputDegreeOverflow);
            }
            factors.push((delta, v));
        }
    }
    ctx.guard(Requirement::Degree(total as usize))?;
    let out = factors
        .iter()
        .fold(vec![1u64], |acc, (delta, v)| gpoly::mul(&ctx, &acc, &gpoly::pow(&ctx, delta, *v)));
    Ok(DensePoly::new(ctx, out))
}

/// Gate kinds of a tropical threshold circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropicalOp {
    /// Sum of the arguments.
    Add,
    /// `c` times the single argument.
    CMul(u64),
    Min,
    Max,
    /// 1 when every argument reaches its threshold, else 0.
    Thr(Vec<u64>),
    /// 0 when every argument reaches its threshold, else 1.
    NThr(Vec<u64>),
}

impl TropicalOp {
    pub fn name(&self) -> &'static str {
        match self {
            TropicalOp::Add => "add",
            TropicalOp::CMul(_) => "cmul",
            TropicalOp::Min => "min",
            TropicalOp::Max => "max",
            TropicalOp::Thr(_) => "thr",
            TropicalOp::NThr(_) => "nthr",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalGate {
    pub op: TropicalOp,
    pub args: Vec<usize>,
}

/// A circuit over `(N, +, c*, min, max, Thr, not Thr)`.
///
/// Node indices `0..inputs` are the inputs; gate `k` is node `inputs + k`
/// and may only read nodes with smaller index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCircuit {
    pub inputs: usize,
    pub gates: Vec<TropicalGate>,
    pub output: usize,
}

impl TropicalCircuit {
    /// Checks arities, thresholds and ordering.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedCircuit(msg));
        for (k, g) in self.gates.iter().enumerate() {
            let node = self.inputs + k;
            if let Some(&a) = g.args.iter().find(|&&a| a >= node) {
                return bad(format!("gate {k} reads node {a}, which does not precede it"));
            }
            match &g.op {
                TropicalOp::CMul(_) if g.args.len() != 1 => return bad(format!("gate {k}: cmul takes one argument")),
                TropicalOp::Min | TropicalOp::Max if g.args.is_empty() => {
                    return bad(format!("gate {k}: {} needs an argument", g.op.name()))
                }
                TropicalOp::Thr(r) | TropicalOp::NThr(r) if r.len() != g.args.len() => {
                    return bad(format!("gate {k}: {} thresholds for {} arguments", r.len(), g.args.len()))
                }
                _ => {}
            }
        }
        if self.output >= self.inputs + self.gates.len() {
            return bad(format!("output node {} does not exist", self.output));
        }
        Ok(())
    }

    /// Gate count plus the sum of the scalar constants.
    pub fn size(&self) -> u64 {
        self.gates
            .iter()
            .map(|g| if let TropicalOp::CMul(c) = g.op { 1 + c } else { 1 })
            .sum()
    }

    /// Longest path from an input to the output, in gates.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.inputs + self.gates.len()];
        for (k, g) in self.gates.iter().enumerate() {
            depth[self.inputs + k] = 1 + g.args.iter().map(|&a| depth[a]).max().unwrap_or(0);
        }
        depth.get(self.output).copied().unwrap_or(0)
    }

    /// Evaluates every node, mapping gates through `apply`.
    fn run<T: Clone>(
        &self,
        inputs: Vec<T>,
        mut apply: impl FnMut(&TropicalOp, Vec<&T>) -> Result<T>,
    ) -> Result<T> {
        self.validate()?;
        if inputs.len() != self.inputs {
            return Err(Error::MalformedCircuit(format!("{} inputs for arity {}", inputs.len(), self.inputs)));
        }
        let mut values = inputs;
        for g in &self.gates {
            let v = apply(&g.op, g.args.iter().map(|&a| &values[a]).collect())?;
            values.push(v);
        }
        Ok(values.swap_remove(self.output))
    }
}

fn overflow() -> Error {
    Error::CapExceeded("tropical value overflows u64".into())
}

fn reaches(args: &[&u64], r: &[u64]) -> bool {
    args.iter().zip(r).all(|(&&a, &t)| a >= t)
}

/// Evaluates `c` over the naturals.
pub fn tropical_eval(c: &TropicalCircuit, inputs: &[u64]) -> Result<u64> {
    c.run(inputs.to_vec(), |op, args| {
        Ok(match op {
            TropicalOp::Add => args.iter().try_fold(0u64, |s, &&a| s.checked_add(a)).ok_or_else(overflow)?,
            TropicalOp::CMul(k) => args[0].checked_mul(*k).ok_or_else(overflow)?,
            TropicalOp::Min => args.iter().map(|&&a| a).min().unwrap_or(0),
            TropicalOp::Max => args.iter().map(|&&a| a).max().unwrap_or(0),
            TropicalOp::Thr(r) => reaches(&args, r) as u64,
            TropicalOp::NThr(r) => !reaches(&args, r) as u64,
        })
    })
}

/// The tabulation of `c` on `{0..degree_cap}^inputs`.
pub fn tabulate(c: &TropicalCircuit, degree_cap: usize) -> Result<DenseMultiplicityFunction> {
    c.validate()?;
    let mut err = None;
    let table = DenseMultiplicityFunction::from_fn(c.inputs, degree_cap, |t| {
        let t: Vec<u64> = t.iter().map(|&v| v as u64).collect();
        tropical_eval(c, &t).unwrap_or_else(|e| {
            err = Some(e);
            0
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(table),
    }
}

/// [`diamond_dense`] for the function computed by `c`, evaluated gate by
/// gate on polynomials, with the default output cap.
pub fn diamond_tropical(fs: &[DensePoly], c: &TropicalCircuit) -> Result<DensePoly> {
    diamond_tropical_capped(fs, c, default_output_cap(fs))
}

/// [`diamond_tropical`] with an explicit bound on every intermediate degree.
pub fn diamond_tropical_capped(fs: &[DensePoly], c: &TropicalCircuit, cap: usize) -> Result<DensePoly> {
    let (ctx, d) = check_inputs(fs)?;
    if c.inputs != fs.len() {
        return Err(Error::InvalidArgument(format!("circuit of arity {} for {} polynomials", c.inputs, fs.len())));
    }
    diamond_guard(ctx, fs.len(), d)?;
    let product = fs.iter().fold(vec![1u64], |acc, f| gpoly::mul(&ctx, &acc, f.coeffs()));
    let s = squarefree_part_generic(&ctx, &product)?;
    let check = |deg: u128| -> Result<()> {
        if deg > cap as u128 {
            return Err(Error::OutputDegreeOverflow);
        }
        ctx.guard(Requirement::Degree(deg as usize))
    };
    let out = c.run(raw(fs), |op, args| {
        let degs = args.iter().map(|a| (a.len() - 1) as u128);
        match op {
            TropicalOp::Add => {
                check(degs.sum())?;
                Ok(args.iter().fold(vec![1u64], |acc, a| gpoly::mul(&ctx, &acc, a)))
            }
            TropicalOp::CMul(k) => {
                check(degs.sum::<u128>() * *k as u128)?;
                Ok(gpoly::pow(&ctx, args[0], *k))
            }
            TropicalOp::Min | TropicalOp::Max => {
                let owned: Vec<Vec<u64>> = args.iter().map(|a| a.to_vec()).collect();
                let top = degs.max().unwrap_or(0);
                let m = owned.len();
                if matches!(op, TropicalOp::Min) {
                    ctx.guard(Requirement::GcdMany { m, d: top as usize })?;
                    gcd_generic(&ctx, &owned)
                } else {
                    check(top * m as u128)?;
                    ctx.guard(Requirement::LcmMany { m, d: top as usize })?;
                    lcm_generic(&ctx, &owned)
                }
            }
            TropicalOp::Thr(r) | TropicalOp::NThr(r) => {
                let owned: Vec<Vec<u64>> = args.iter().map(|a| a.to_vec()).collect();
                ctx.guard(Requirement::Degree(degs.max().unwrap_or(0).max((s.len() - 1) as u128) as usize))?;
                let rs: Vec<usize> = r.iter().map(|&t| usize::try_from(t).unwrap_or(usize::MAX)).collect();
                let (ge, lt) = threshold_generic(&ctx, &s, &owned, &rs)?;
                Ok(if matches!(op, TropicalOp::Thr(_)) { ge } else { lt })
            }
        }
    })?;
    Ok(DensePoly::new(ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, MultiplicityProfile, ProfileEntry};
    use proptest::prelude::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    fn roots(rs: &[u64]) -> DensePoly {
        DensePoly::from_roots(ctx(), rs)
    }

    fn poly(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(ctx(), c)
    }

    fn gate(op: TropicalOp, args: &[usize]) -> TropicalGate {
        TropicalGate { op, args: args.to_vec() }
    }

    fn single(op: TropicalOp, m: usize) -> TropicalCircuit {
        TropicalCircuit { inputs: m, gates: vec![gate(op, &(0..m).collect::<Vec<_>>())], output: m }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&[roots(&[1, 1, 2]), roots(&[1, 3])]).unwrap(), roots(&[1]));
        assert_eq!(gcd(&[roots(&[5]), roots(&[5])]).unwrap(), roots(&[5]));
        assert_eq!(gcd(&[roots(&[5]), roots(&[6])]).unwrap(), poly(&[1]));
        assert_eq!(gcd(&[roots(&[0, 1]), roots(&[0, 2]), roots(&[0, 3])]).unwrap(), poly(&[0, 1]));
        assert_eq!(gcd(&[roots(&[4, 4])]).unwrap(), roots(&[4, 4]));
        assert_eq!(gcd(&[]), Err(Error::InvalidArgument("empty list of polynomials".into())));
        assert_eq!(gcd(&[poly(&[]), poly(&[1])]), Err(Error::ZeroPolynomial));
        let small = FieldCtx::new(11).unwrap();
        let f = DensePoly::from_roots(small, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(gcd(&[f.clone(), f]), Err(Error::CharacteristicTooSmall { p: 11, bound: 12 }));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm(&[poly(&[0, 1]), poly(&[-1, 1])]).unwrap(), poly(&[0, -1, 1]));
        assert_eq!(lcm(&[roots(&[1, 1]), roots(&[1, 2])]).unwrap(), poly(&[-2, 5, -4, 1]));
        assert_eq!(lcm(&[roots(&[3, 3, 7])]).unwrap(), roots(&[3, 3, 7]));
    }

    #[test]
    fn bezout_examples() {
        let (f, g) = (poly(&[0, -1, 1]), poly(&[-1, 0, 1]));
        assert_eq!(bezout_general(&f, &g).unwrap(), (poly(&[-1]), poly(&[1])));
        let (f, g) = (roots(&[1, 2]), roots(&[3]));
        assert_eq!(bezout_general(&f, &g).unwrap(), bezout_coeffs_coprime(&f, &g).unwrap());
        assert_eq!(bezout_general(&f, &f).unwrap(), (poly(&[]), poly(&[1])));
    }

    #[test]
    fn diamond_examples() {
        let fs = [roots(&[1, 1]), roots(&[1, 1, 1])];
        let prod = DenseMultiplicityFunction::from_fn(2, 3, |t| (t[0] * t[1]) as u64);
        assert_eq!(diamond_dense(&fs, &prod).unwrap(), roots(&[1; 6]));
        let mut delta = DenseMultiplicityFunction::new(2, 2);
        delta.set(&[1, 1], 1).unwrap();
        let fs = [roots(&[1, 2, 2]), roots(&[1, 2])];
        assert_eq!(diamond_dense(&fs, &delta).unwrap(), roots(&[1]));
        let huge = DenseMultiplicityFunction::from_fn(2, 2, |t| 100 * t[0] as u64);
        assert_eq!(diamond_dense(&fs, &huge), Err(Error::OutputDegreeOverflow));
        assert!(diamond_dense_capped(&fs, &huge, 1000).is_ok());
        assert!(matches!(delta.set(&[3, 0], 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn tropical_examples() {
        let min = single(TropicalOp::Min, 2);
        assert_eq!(tropical_eval(&min, &[3, 5]).unwrap(), 3);
        let thr = single(TropicalOp::Thr(vec![2, 2]), 2);
        assert_eq!(tropical_eval(&thr, &[3, 1]).unwrap(), 0);
        assert_eq!(tropical_eval(&single(TropicalOp::CMul(2), 1), &[4]).unwrap(), 8);
        let fs = [roots(&[0, 1, 1]), roots(&[0, 0, 1])];
        assert_eq!(diamond_tropical(&fs, &min).unwrap(), poly(&[0, -1, 1]));
        let add = single(TropicalOp::Add, 2);
        assert_eq!(diamond_tropical(&fs, &add).unwrap(), fs[0].mul(&fs[1]));
        let fs = [roots(&[1, 1, 2]), roots(&[1, 1, 1])];
        assert_eq!(diamond_tropical(&fs, &thr).unwrap(), roots(&[1]));
        let nthr = single(TropicalOp::NThr(vec![2, 2]), 2);
        assert_eq!(diamond_tropical(&fs, &nthr).unwrap(), roots(&[2]));
        assert_eq!(min.size(), 1);
        assert_eq!(single(TropicalOp::CMul(5), 1).size(), 6);
    }

    #[test]
    fn malformed_tropical_circuits() {
        let forward = TropicalCircuit { inputs: 1, gates: vec![gate(TropicalOp::Add, &[1])], output: 1 };
        assert!(matches!(tropical_eval(&forward, &[1]), Err(Error::MalformedCircuit(_))));
        let arity = single(TropicalOp::Thr(vec![1]), 2);
        assert!(matches!(tropical_eval(&arity, &[1, 1]), Err(Error::MalformedCircuit(_))));
        let cmul = TropicalCircuit { inputs: 2, gates: vec![gate(TropicalOp::CMul(2), &[0, 1])], output: 2 };
        assert!(matches!(cmul.validate(), Err(Error::MalformedCircuit(_))));
        assert!(matches!(tropical_eval(&single(TropicalOp::Min, 2), &[1]), Err(Error::MalformedCircuit(_))));
    }

    fn profile_strategy(m: usize, max_mult: usize) -> impl Strategy<Value = MultiplicityProfile> {
        prop::collection::btree_map(0u64..1_000_003, prop::collection::vec(0..=max_mult, m), 1..7)
            .prop_map(|map| MultiplicityProfile {
                entries: map
                    .into_iter()
                    .filter(|(_, mults)| mults.iter().any(|&k| k > 0))
                    .map(|(root, mults)| ProfileEntry { root, mults })
                    .collect(),
            })
            .prop_filter("at least one root", |prof| !prof.entries.is_empty())
    }

    fn tropical_strategy(m: usize) -> impl Strategy<Value = TropicalCircuit> {
        prop::collection::vec((0u8..6, prop::collection::vec(any::<prop::sample::Index>(), 1..4), 1u64..4, prop::collection::vec(0u64..4, 3)), 1..=8)
            .prop_map(move |specs| {
                let gates: Vec<TropicalGate> = specs
                    .into_iter()
                    .enumerate()
                    .map(|(k, (op, picks, c, r))| {
                        let mut args: Vec<usize> = picks.iter().map(|i| i.index(m + k)).collect();
                        let op = match op {
                            0 => TropicalOp::Add,
                            1 => {
                                args.truncate(1);
                                TropicalOp::CMul(c)
                            }
                            2 => TropicalOp::Min,
                            3 => TropicalOp::Max,
                            4 => TropicalOp::Thr(r[..args.len()].to_vec()),
                            _ => TropicalOp::NThr(r[..args.len()].to_vec()),
                        };
                        TropicalGate { op, args }
                    })
                    .collect();
                let output = m + gates.len() - 1;
                TropicalCircuit { inputs: m, gates, output }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gcd_and_lcm_match_euclid(prof in (1usize..5).prop_flat_map(|m| profile_strategy(m, 4))) {
            let fs = oracle::instance_from_profile(ctx(), &prof).unwrap();
            let g = gcd(&fs).unwrap();
            prop_assert_eq!(&g, &oracle::euclid_gcd_many(&fs));
            prop_assert_eq!(&g, &prof.combine(ctx(), |t| *t.iter().min().unwrap()));
            let l = lcm(&fs).unwrap();
            prop_assert_eq!(&l, &oracle::euclid_lcm_many(&fs));
            for f in &fs {
                prop_assert!(newton::exact_div(f, &g).is_ok());
                prop_assert!(newton::exact_div(&l, f).is_ok());
            }
            if fs.len() == 2 {
                prop_assert_eq!(l.mul(&g), fs[0].mul(&fs[1]));
            }
        }

        #[test]
        fn bezout_general_matches_extended_euclid(prof in profile_strategy(2, 3)) {
            let fs = oracle::instance_from_profile(ctx(), &prof).unwrap();
            let (a, b) = bezout_general(&fs[0], &fs[1]).unwrap();
            let g = gcd(&fs).unwrap();
            prop_assert_eq!(a.mul(&fs[0]).add(&b.mul(&fs[1])), g.clone());
            let d = g.deg_or_zero();
            if fs[0] != fs[1] {
                prop_assert!(a.deg().is_none_or(|k| k < fs[1].deg_or_zero() - d));
                prop_assert!(b.deg().is_none_or(|k| k < fs[0].deg_or_zero() - d));
            }
        }

        #[test]
        fn diamond_laws(prof in (1usize..4).prop_flat_map(|m| profile_strategy(m, 3))) {
            let c = ctx();
            let fs = oracle::instance_from_profile(c, &prof).unwrap();
            let m = fs.len();
            let cap = fs.iter().map(|f| f.deg_or_zero()).max().unwrap();
            let min = DenseMultiplicityFunction::from_fn(m, cap, |t| *t.iter().min().unwrap() as u64);
            let max = DenseMultiplicityFunction::from_fn(m, cap, |t| *t.iter().max().unwrap() as u64);
            let sum = DenseMultiplicityFunction::from_fn(m, cap, |t| t.iter().sum::<usize>() as u64);
            prop_assert_eq!(diamond_dense(&fs, &min).unwrap(), gcd(&fs).unwrap());
            prop_assert_eq!(diamond_dense(&fs, &max).unwrap(), lcm(&fs).unwrap());
            let product = fs.iter().fold(DensePoly::one(c), |acc, f| acc.mul(f));
            prop_assert_eq!(diamond_dense(&fs, &sum).unwrap(), product);
            let odd = DenseMultiplicityFunction::from_fn(m, cap, |t| (t.iter().sum::<usize>() % 2) as u64);
            prop_assert_eq!(diamond_dense(&fs, &odd).unwrap(), prof.combine(c, |t| t.iter().sum::<usize>() % 2));
        }

        #[test]
        fn tropical_matches_dense(
            (prof, circ) in (1usize..4).prop_flat_map(|m| (profile_strategy(m, 3), tropical_strategy(m)))
        ) {
            let c = ctx();
            let fs = oracle::instance_from_profile(c, &prof).unwrap();
            let cap = fs.iter().map(|f| f.deg_or_zero()).max().unwrap();
            let table = tabulate(&circ, cap).unwrap();
            let big = 1 << 20;
            let dense = diamond_dense_capped(&fs, &table, big);
            let trop = diamond_tropical_capped(&fs, &circ, big);
            match (dense, trop) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(&a, &b);
                    let expect = prof.combine(c, |t| {
                        let t: Vec<u64> = t.iter().map(|&v| v as u64).collect();
                        tropical_eval(&circ, &t).unwrap() as usize
                    });
                    prop_assert_eq!(a, expect);
                }
                (Err(Error::OutputDegreeOverflow), _) | (_, Err(Error::OutputDegreeOverflow)) => {}
                (a, b) => prop_assert!(false, "dense {:?} tropical {:?}", a, b),
            }
        }
    }
}
