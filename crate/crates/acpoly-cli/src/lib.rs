//! Command-line front end for `acpoly`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns
//! the exit code together with everything written to stdout and stderr, so
//! the binary and the tests share one entry point.
//!
//! Exit codes: 0 on success, 1 when the library reports a domain error (its
//! name goes to stderr), 2 on unreadable or malformed input, 3 when `--check`
//! finds that the fast path and the reference computation disagree.

pub mod formats;

mod checks;

use acpoly::circuit::{self, ArithCircuit, BuildKind, PitConfig, PitOutcome};
use acpoly::gcdlib::{self, DenseMultiplicityFunction};
use acpoly::matrix::Matrix;
use acpoly::mpoly::{self, MPolyCircuit};
use acpoly::oracle::{self, MultiplicityProfile};
use acpoly::structmat::{self, ComposeMode};
use acpoly::{newton, rootops, DensePoly, Error, FieldCtx};
use clap::{Args, Parser, Subcommand, ValueEnum};
use formats::{poly_json, read_poly, write_poly, write_scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Read;

/// Arguments such as `-x+1`, `-3,1` or `-[1,2]` are values, not flags: a
/// leading space keeps the parser from reading them as options, and every
/// reader trims it.
fn shield_value<T: Into<OsString>>(arg: T) -> OsString {
    let arg = arg.into();
    match arg.to_str() {
        Some(s) if s.len() > 1 && s.starts_with('-') && s[1..].starts_with(|c: char| c.is_ascii_digit() || "x[(".contains(c)) => {
            format!(" {s}").into()
        }
        _ => arg,
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "acpoly", version, about = "Polynomial algebra over prime fields")]
struct Cli {
    /// Prime modulus.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 1_000_003)]
    prime: u64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Recompute the result by a reference method and exit 3 on disagreement.
    #[arg(long, global = true)]
    check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monic gcd of nonzero polynomials.
    Gcd(PolyList),
    /// Monic lcm of nonzero polynomials.
    Lcm(PolyList),
    /// Resultant res(f, g).
    Resultant(TwoPolys),
    /// Discriminant of f.
    Disc(OnePoly),
    /// f mod g.
    Remainder(TwoPolys),
    /// Quotient and remainder of f by g, one per line.
    Divrem(TwoPolys),
    /// Squarefree parts of f; line j holds the roots of multiplicity j.
    Sqfree(OnePoly),
    /// Product of the distinct linear factors of f.
    Sqpart(OnePoly),
    /// a and b with a f + b g = gcd(f, g), one per line.
    Bezout(TwoPolys),
    /// Sylvester matrix of f and g.
    #[command(subcommand)]
    Sylvester(MatrixOp),
    /// Bezout matrix of f and g.
    #[command(subcommand)]
    Bezmat(BezmatOp),
    /// Inverse of an upper-triangular Toeplitz matrix given as JSON rows.
    ToeplitzInv {
        /// Row-major JSON array, or a file holding one ("-" for stdin).
        matrix: String,
    },
    /// Polynomial whose roots are sums or products of roots of f and g.
    #[command(subcommand)]
    Compose(ComposeOp),
    /// Implicit equation of the curve (f/h, g/h).
    Implicitize {
                f: String,
                g: String,
                h: String,
    },
    /// Splits f into the part at common roots of all g and the rest.
    Filter {
                f: String,
                gs: Vec<String>,
    },
    /// Splits f by whether each root has multiplicity at least r_j in g_j.
    Threshold {
                f: String,
        #[arg(required = true)]
        gs: Vec<String>,
        /// Comma-separated thresholds, one per g.
        #[arg(short = 'r', long = "thresholds", value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// Polynomial with root multiplicities P(mult_1, ..., mult_m).
    #[command(subcommand)]
    Diamond(DiamondOp),
    /// Power sums of roots.
    #[command(subcommand)]
    Newton(NewtonOp),
    /// Arithmetic circuits.
    #[command(subcommand)]
    Circuit(CircuitOp),
    /// Multivariate polynomials given by circuits.
    #[command(subcommand)]
    Mpoly(MpolyOp),
}

#[derive(Args, Debug)]
struct OnePoly {
        f: String,
}

#[derive(Args, Debug)]
struct TwoPolys {
        f: String,
        g: String,
}

#[derive(Args, Debug)]
struct PolyList {
    #[arg(required_unless_present = "profile")]
    polys: Vec<String>,
    /// Take the inputs from a multiplicity profile (JSON, a file, or "-").
    #[arg(long, conflicts_with = "polys")]
    profile: Option<String>,
}

#[derive(Subcommand, Debug)]
enum MatrixOp {
    /// Determinant, equal to res(f, g).
    Det(TwoPolys),
    /// Adjugate matrix.
    Adj(TwoPolys),
    /// Inverse matrix.
    Inv(TwoPolys),
}

#[derive(Subcommand, Debug)]
enum BezmatOp {
    /// The n x n Bezout matrix.
    Build {
        #[command(flatten)]
        polys: TwoPolys,
        /// Order; defaults to max(deg f, deg g).
        #[arg(short = 'n', long)]
        n: Option<usize>,
    },
    /// Inverse of the Bezout matrix of monic f and g with deg g <= deg f.
    Inv(TwoPolys),
}

#[derive(Subcommand, Debug)]
enum ComposeOp {
    /// Roots a + b.
    Sum(TwoPolys),
    /// Roots a b.
    Prod(TwoPolys),
}

#[derive(Subcommand, Debug)]
enum DiamondOp {
    /// P given by a table of its nonzero values.
    Dense {
        #[command(flatten)]
        inputs: PolyList,
        /// `{"arity": m, "entries": [{"mults": [..], "value": v}]}`, a file or "-".
        #[arg(long)]
        table: String,
    },
    /// P given by a tropical circuit.
    Tropical {
        #[command(flatten)]
        inputs: PolyList,
        /// Tropical circuit JSON, a file or "-".
        #[arg(long)]
        circuit: String,
    },
}

#[derive(Subcommand, Debug)]
enum NewtonOp {
    /// Power sums p_0..p_d of the roots of f.
    Tops {
                f: String,
        /// Highest power; defaults to deg f.
        #[arg(short = 'd', long)]
        d: Option<usize>,
    },
    /// The monic polynomial of degree n with power sums p_1, p_2, ...
    Frompos {
        /// Comma-separated p_1, p_2, ...
                sums: String,
        /// Degree; defaults to the number of sums given.
        #[arg(short = 'n', long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Esym,
    PowerSums,
    CoeffsFromPowerSums,
    Resultant,
    Gcd,
}

#[derive(Subcommand, Debug)]
enum CircuitOp {
    /// Emits one of the built-in circuit families as JSON.
    Build {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(short = 'n', long)]
        n: usize,
        /// Symmetric function degree or highest power sum.
        #[arg(short = 'd', long)]
        d: Option<usize>,
        /// Degree of the second polynomial.
        #[arg(short = 'm', long)]
        m: Option<usize>,
    },
    /// Evaluates a circuit at one input point.
    Eval {
        /// Circuit JSON, inline or a file ("-" for stdin).
        #[arg(default_value = "-")]
        file: String,
        /// Comma-separated input values.
        #[arg(long)]
        inputs: String,
    },
    /// Size, depth and gate counts.
    Stats {
        /// Circuit JSON, inline or a file ("-" for stdin).
        #[arg(default_value = "-")]
        file: String,
    },
    /// Rewrites a circuit computing a polynomial without divisions.
    EliminateDiv {
        /// Circuit JSON, inline or a file ("-" for stdin).
        #[arg(default_value = "-")]
        file: String,
        /// Degree bound of the outputs; defaults to the circuit's `degree`.
        #[arg(short = 'd', long)]
        d: Option<usize>,
    },
    /// Replaces each select by its first argument that is not identically zero.
    RemoveSelect {
        /// Circuit JSON, inline or a file ("-" for stdin).
        #[arg(default_value = "-")]
        file: String,
    },
    /// Randomized zero test of all outputs.
    Pit {
        /// Circuit JSON, inline or a file ("-" for stdin).
        #[arg(default_value = "-")]
        file: String,
        /// Degree bound; defaults to the circuit's `degree`, then to the
        /// syntactic degree.
        #[arg(short = 'd', long)]
        d: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct MpolyInputs {
    /// Circuit JSON, inline or in files ("-" for stdin, at most once).
    #[arg(required = true)]
    files: Vec<String>,
    /// Total degree bound for inputs without a `degree` field.
    #[arg(short = 'd', long)]
    degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum MpolyOp {
    /// Gcd of the inputs, up to a scalar.
    Gcd(MpolyInputs),
    /// Lcm of the inputs, up to a scalar.
    Lcm(MpolyInputs),
    /// Squarefree decomposition of one input: a scale line, then one circuit
    /// per multiplicity.
    Sqfree(MpolyInputs),
}

/// Output of a subcommand in both formats, with the outcome of `--check`.
struct Report {
    text: String,
    json: Value,
    mismatch: Option<String>,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, mismatch: None }
    }

    /// Records a disagreement unless `got == want`.
    fn expect<T: PartialEq + std::fmt::Debug>(mut self, what: &str, got: &T, want: &T) -> Self {
        if got != want && self.mismatch.is_none() {
            self.mismatch = Some(format!("{what}: fast path gave {got:?}, reference gave {want:?}"));
        }
        self
    }

    fn fail(mut self, what: String) -> Self {
        self.mismatch.get_or_insert(what);
        self
    }
}

enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Input(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn input_error(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

struct Session<'a> {
    ctx: FieldCtx,
    seed: u64,
    check: bool,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

/// Runs one invocation. `stdin` is read only by subcommands given "-".
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args.into_iter().map(shield_value)) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = match FieldCtx::new(cli.prime) {
        Ok(ctx) => ctx,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("{e}\n") },
    };
    let mut s = Session { ctx, seed: cli.seed, check: cli.check, stdin, stdin_used: false };
    finish(s.dispatch(cli.command), cli.format)
}

fn finish(result: Res<Report>, format: Format) -> Outcome {
    match result {
        Ok(report) => {
            let mut stdout = match format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string(&report.json).expect("values serialize"),
            };
            stdout.push('\n');
            match report.mismatch {
                Some(msg) => Outcome { code: 3, stdout, stderr: format!("CheckMismatch: {msg}\n") },
                None => Outcome { code: 0, stdout, stderr: String::new() },
            }
        }
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("{e}\n") },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("{msg}\n") },
    }
}

fn monic(f: &DensePoly) -> Res<DensePoly> {
    Ok(f.make_monic()?.0)
}

fn lines(polys: &[DensePoly]) -> String {
    polys.iter().map(write_poly).collect::<Vec<_>>().join("\n")
}

fn values_text(ctx: FieldCtx, vs: &[u64]) -> String {
    vs.iter().map(|&v| write_scalar(ctx, v)).collect::<Vec<_>>().join(",")
}

/// Pads or trims squarefree parts to compare decompositions that differ
/// only in trailing ones.
fn trim_ones(mut parts: Vec<DensePoly>) -> Vec<DensePoly> {
    while parts.last().is_some_and(|p| p.is_one()) {
        parts.pop();
    }
    parts
}

impl Session<'_> {
    fn poly(&self, s: &str) -> Res<DensePoly> {
        Ok(read_poly(self.ctx, s)?)
    }

    fn polys(&self, ss: &[String]) -> Res<Vec<DensePoly>> {
        ss.iter().map(|s| self.poly(s)).collect()
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// The contents of `path`, or stdin for "-".
    fn source(&mut self, path: &str) -> Res<String> {
        if path == "-" {
            if self.stdin_used {
                return Err(input_error("stdin can only be read once"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))
        }
    }

    /// Inline JSON when `arg` starts like JSON, otherwise a file or "-".
    fn json_arg(&mut self, arg: &str) -> Res<String> {
        let t = arg.trim_start();
        if t.starts_with('{') || t.starts_with('[') {
            Ok(arg.to_string())
        } else {
            self.source(arg)
        }
    }

    fn circuit(&mut self, arg: &str) -> Res<(ArithCircuit, Option<usize>)> {
        let text = self.json_arg(arg)?;
        Ok(formats::read_circuit(self.ctx, &text)?)
    }

    fn inputs(&mut self, list: &PolyList) -> Res<(Vec<DensePoly>, Option<MultiplicityProfile>)> {
        match &list.profile {
            Some(arg) => {
                let text = self.json_arg(arg)?;
                let prof = formats::read_profile(self.ctx, &text)?;
                Ok((oracle::instance_from_profile(self.ctx, &prof)?, Some(prof)))
            }
            None => Ok((self.polys(&list.polys)?, None)),
        }
    }

    fn dispatch(&mut self, cmd: Command) -> Res<Report> {
        match cmd {
            Command::Gcd(list) => self.gcd_lcm(&list, true),
            Command::Lcm(list) => self.gcd_lcm(&list, false),
            Command::Resultant(a) => {
                let (f, g) = (self.poly(&a.f)?, self.poly(&a.g)?);
                let r = self.resultant(&f, &g)?;
                self.verify(self.scalar(r), "resultant", &r, || Ok(checks::resultant(&f, &g)))
            }
            Command::Disc(a) => {
                let f = self.poly(&a.f)?;
                let (m, lc) = f.make_monic()?;
                let n = f.deg_or_zero();
                let d = structmat::discriminant(&m)?;
                let d = if n == 0 { d } else { self.ctx.mul(self.ctx.pow(lc, (2 * n - 2) as u64), d) };
                let mut report = self.scalar(d);
                if self.check {
                    report = report.expect("discriminant", &d, &checks::discriminant(&f)?);
                }
                Ok(report)
            }
            Command::Remainder(a) => {
                let (f, g) = (self.poly(&a.f)?, self.poly(&a.g)?);
                let r = structmat::remainder(&f, &monic(&g)?)?;
                self.verify(Report::new(write_poly(&r), poly_json(&r)), "remainder", &r, || Ok(oracle::long_division(&f, &g).1))
            }
            Command::Divrem(a) => {
                let (f, g) = (self.poly(&a.f)?, self.poly(&a.g)?);
                let (gm, lc) = g.make_monic()?;
                let (q, r) = structmat::div_rem(&f, &gm)?;
                let q = q.scale(self.ctx.inv(lc)?);
                let report = Report::new(lines(&[q.clone(), r.clone()]), json!({"quotient": poly_json(&q), "remainder": poly_json(&r)}));
                self.verify(report, "division", &(q, r), || Ok(oracle::long_division(&f, &g)))
            }
            Command::Sqfree(a) => {
                let f = monic(&self.poly(&a.f)?)?;
                let parts = trim_ones(rootops::squarefree_decomposition(&f)?.parts);
                let json = json!({"parts": parts.iter().map(poly_json).collect::<Vec<_>>()});
                let mut report = Report::new(lines(&parts), json);
                if self.check {
                    report = report.expect("squarefree parts", &parts, &checks::squarefree_parts(&f)?);
                }
                Ok(report)
            }
            Command::Sqpart(a) => {
                let f = monic(&self.poly(&a.f)?)?;
                let r = rootops::squarefree_part(&f)?;
                let mut report = Report::new(write_poly(&r), poly_json(&r));
                if self.check {
                    let want = checks::squarefree_parts(&f)?.iter().fold(DensePoly::one(self.ctx), |acc, q| acc.mul(q));
                    report = report.expect("squarefree part", &r, &want);
                }
                Ok(report)
            }
            Command::Bezout(a) => self.bezout(&a),
            Command::Sylvester(op) => self.sylvester(op),
            Command::Bezmat(op) => self.bezmat(op),
            Command::ToeplitzInv { matrix } => {
                let text = self.json_arg(&matrix)?;
                let a = formats::read_matrix(self.ctx, &text)?;
                let inv = structmat::toeplitz_inverse(&a)?;
                let mut report = self.matrix(&inv);
                if self.check {
                    report = report.expect("inverse", &inv, &a.inverse()?);
                }
                Ok(report)
            }
            Command::Compose(op) => {
                let (a, mode) = match op {
                    ComposeOp::Sum(a) => (a, ComposeMode::Sum),
                    ComposeOp::Prod(a) => (a, ComposeMode::Product),
                };
                let f = monic(&self.poly(&a.f)?)?;
                let g = monic(&self.poly(&a.g)?)?;
                let h = structmat::composed(&f, &g, mode)?;
                let mut report = Report::new(write_poly(&h), poly_json(&h));
                if self.check {
                    report = report.expect("composed polynomial", &h, &checks::composed(&f, &g, mode)?);
                }
                Ok(report)
            }
            Command::Implicitize { f, g, h } => self.implicitize(&f, &g, &h),
            Command::Filter { f, gs } => {
                let f = monic(&self.poly(&f)?)?;
                let gs = self.polys(&gs)?;
                let (inside, outside) = rootops::filter_common_roots(&f, &gs)?;
                let report = self.split(inside.clone(), outside.clone());
                self.verify(report, "split", &(inside, outside), || Ok(checks::threshold_split(&f, &gs, &vec![1; gs.len()])))
            }
            Command::Threshold { f, gs, r } => {
                let f = monic(&self.poly(&f)?)?;
                let gs = self.polys(&gs)?;
                let (inside, outside) = rootops::threshold_multiplicity(&f, &gs, &r)?;
                let report = self.split(inside.clone(), outside.clone());
                self.verify(report, "split", &(inside, outside), || Ok(checks::threshold_split(&f, &gs, &r)))
            }
            Command::Diamond(op) => self.diamond(op),
            Command::Newton(op) => self.newton(op),
            Command::Circuit(op) => self.circuit_cmd(op),
            Command::Mpoly(op) => self.mpoly(op),
        }
    }

    fn scalar(&self, v: u64) -> Report {
        Report::new(write_scalar(self.ctx, v), json!(v))
    }

    fn matrix(&self, m: &Matrix) -> Report {
        let rows: Vec<Vec<u64>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
        Report::new(formats::write_matrix(m), json!(rows))
    }

    fn split(&self, inside: DensePoly, outside: DensePoly) -> Report {
        let json = json!({"in": poly_json(&inside), "out": poly_json(&outside)});
        Report::new(lines(&[inside, outside]), json)
    }

    /// Compares `got` with the reference value when `--check` is given.
    fn verify<T: PartialEq + std::fmt::Debug>(
        &self,
        report: Report,
        what: &str,
        got: &T,
        want: impl FnOnce() -> Res<T>,
    ) -> Res<Report> {
        if !self.check {
            return Ok(report);
        }
        Ok(report.expect(what, got, &want()?))
    }

    /// `res(f, g)` for any nonzero `f`: `lc(f)^deg g res(f / lc(f), g)`.
    fn resultant(&self, f: &DensePoly, g: &DensePoly) -> Res<u64> {
        let (m, lc) = f.make_monic()?;
        let r = structmat::resultant(&m, g)?;
        Ok(self.ctx.mul(self.ctx.pow(lc, g.deg_or_zero() as u64), r))
    }

    fn gcd_lcm(&mut self, list: &PolyList, is_gcd: bool) -> Res<Report> {
        let (fs, prof) = self.inputs(list)?;
        let fs: Vec<DensePoly> = fs.iter().map(monic).collect::<Res<_>>()?;
        let h = if is_gcd { gcdlib::gcd(&fs)? } else { gcdlib::lcm(&fs)? };
        let mut report = Report::new(write_poly(&h), poly_json(&h));
        if self.check {
            let want = if is_gcd { oracle::euclid_gcd_many(&fs) } else { oracle::euclid_lcm_many(&fs) };
            report = report.expect(if is_gcd { "gcd" } else { "lcm" }, &h, &want);
            if let Some(prof) = prof {
                let pick = |m: &[usize]| if is_gcd { *m.iter().min().unwrap_or(&0) } else { *m.iter().max().unwrap_or(&0) };
                report = report.expect("profile", &h, &prof.combine(self.ctx, pick));
            }
        }
        Ok(report)
    }

    fn bezout(&self, a: &TwoPolys) -> Res<Report> {
        let (f, g) = (self.poly(&a.f)?, self.poly(&a.g)?);
        let (fm, lf) = f.make_monic()?;
        let (gm, lg) = g.make_monic()?;
        let (u, v) = gcdlib::bezout_general(&fm, &gm)?;
        let u = u.scale(self.ctx.inv(lf)?);
        let v = v.scale(self.ctx.inv(lg)?);
        let json = json!({"a": poly_json(&u), "b": poly_json(&v)});
        let mut report = Report::new(lines(&[u.clone(), v.clone()]), json);
        if self.check {
            let h = oracle::euclid_gcd(&f, &g);
            report = report.expect("a f + b g", &u.mul(&f).add(&v.mul(&g)), &h);
            let (dh, df, dg) = (h.deg_or_zero(), f.deg_or_zero(), g.deg_or_zero());
            let small = |p: &DensePoly, bound: usize| p.is_zero() || p.deg_or_zero() < bound;
            if fm != gm && (!small(&u, dg - dh) || !small(&v, df - dh)) {
                report = report.fail(format!("cofactor degrees {} and {} exceed the bounds", u.deg_or_zero(), v.deg_or_zero()));
            }
        }
        Ok(report)
    }

    /// Adjugate and inverse of `Syl(f, g)` from those of the monic pair:
    /// `Syl(f, g) = Syl(f/a, g/b) D` with `D = diag(a, .., a, b, .., b)`.
    fn sylvester(&self, op: MatrixOp) -> Res<Report> {
        let ctx = self.ctx;
        let a = match &op {
            MatrixOp::Det(a) | MatrixOp::Adj(a) | MatrixOp::Inv(a) => a,
        };
        let (f, g) = (self.poly(&a.f)?, self.poly(&a.g)?);
        let s = structmat::sylvester_matrix(&f, &g)?;
        let (n, m) = (f.deg_or_zero(), g.deg_or_zero());
        let (fm, lf) = f.make_monic()?;
        let (gm, lg) = g.make_monic()?;
        let diag: Vec<u64> = (0..n + m).map(|j| if j < m { lf } else { lg }).collect();
        let scale_rows = |mat: Matrix, by: &dyn Fn(usize) -> Res<u64>| -> Res<Matrix> {
            let mut out = mat;
            for i in 0..out.rows {
                let c = by(i)?;
                for j in 0..out.cols {
                    out.set(i, j, ctx.mul(out.get(i, j), c));
                }
            }
            Ok(out)
        };
        match op {
            MatrixOp::Det(_) => {
                let r = self.resultant(&f, &g)?;
                self.verify(self.scalar(r), "determinant", &r, || Ok(oracle::bareiss_det(&s)))
            }
            MatrixOp::Adj(_) => {
                let det_d = ctx.mul(ctx.pow(lf, m as u64), ctx.pow(lg, n as u64));
                let adj = structmat::sylvester_adjugate(&fm, &gm)?;
                let adj = scale_rows(adj, &|i| Ok(ctx.mul(det_d, ctx.inv(diag[i])?)))?;
                let det = oracle::bareiss_det(&s);
                let report = self.matrix(&adj);
                if !self.check {
                    return Ok(report);
                }
                let mut want = Matrix::identity(ctx, n + m);
                want = want.scale(det);
                Ok(report.expect("Syl * adj", &s.mul(&adj), &want))
            }
            MatrixOp::Inv(_) => {
                let inv = structmat::sylvester_inverse(&fm, &gm)?;
                let inv = scale_rows(inv, &|i| Ok(ctx.inv(diag[i])?))?;
                let report = self.matrix(&inv);
                self.verify(report, "Syl * inv", &s.mul(&inv), || Ok(Matrix::identity(ctx, n + m)))
            }
        }
    }

    fn bezmat(&self, op: BezmatOp) -> Res<Report> {
        match op {
            BezmatOp::Build { polys, n } => {
                let (f, g) = (self.poly(&polys.f)?, self.poly(&polys.g)?);
                let n = n.unwrap_or(f.deg_or_zero().max(g.deg_or_zero()));
                let b = structmat::bezout_matrix(&f, &g, n)?;
                self.verify(self.matrix(&b), "Bezout matrix", &b, || Ok(checks::bezout_matrix(&f, &g, n)))
            }
            BezmatOp::Inv(polys) => {
                let (f, g) = (self.poly(&polys.f)?, self.poly(&polys.g)?);
                let (fm, lf) = f.make_monic()?;
                let inv = structmat::bezout_inverse(&fm, &g)?.scale(self.ctx.inv(lf)?);
                let report = self.matrix(&inv);
                if !self.check {
                    return Ok(report);
                }
                let n = f.deg_or_zero();
                let b = checks::bezout_matrix(&f, &g, n);
                Ok(report.expect("Bez * inv", &b.mul(&inv), &Matrix::identity(self.ctx, n)))
            }
        }
    }

    fn implicitize(&self, f: &str, g: &str, h: &str) -> Res<Report> {
        let (f, g, h) = (self.poly(f)?, self.poly(g)?, self.poly(h)?);
        let r = structmat::implicitize(&f, &g, &h)?;
        let text = bivariate_text(self.ctx, &r.terms());
        let mut report = Report::new(text, json!({"coeffs": r.coeffs}));
        if self.check {
            // The curve points (f(t)/h(t), g(t)/h(t)) must all lie on r = 0.
            let mut rng = self.rng();
            let ctx = self.ctx;
            if r.is_zero() {
                report = report.fail("implicit equation is zero".into());
            }
            for _ in 0..16 {
                let t = rng.gen_range(0..ctx.p());
                let ht = h.eval(t);
                if ht == 0 {
                    continue;
                }
                let hi = ctx.inv(ht)?;
                let v = r.eval(ctx.mul(f.eval(t), hi), ctx.mul(g.eval(t), hi));
                report = report.expect("value on the curve", &v, &0);
            }
        }
        Ok(report)
    }

    fn diamond(&mut self, op: DiamondOp) -> Res<Report> {
        let (inputs, source) = match &op {
            DiamondOp::Dense { inputs, table } => (inputs, table),
            DiamondOp::Tropical { inputs, circuit } => (inputs, circuit),
        };
        let text = self.json_arg(source)?;
        let (fs, prof) = self.inputs(inputs)?;
        let fs: Vec<DensePoly> = fs.iter().map(monic).collect::<Res<_>>()?;
        let cap = fs.iter().map(DensePoly::deg_or_zero).max().unwrap_or(0);
        let (h, table): (DensePoly, Box<dyn Fn(&[usize]) -> acpoly::Result<u64>>) = match op {
            DiamondOp::Dense { .. } => {
                let p = formats::read_table(&text, cap)?;
                let h = gcdlib::diamond_dense(&fs, &p)?;
                let p2: DenseMultiplicityFunction = p.clone();
                (h, Box::new(move |t: &[usize]| Ok(p2.get(t))))
            }
            DiamondOp::Tropical { .. } => {
                let c = formats::read_tropical(&text)?;
                let h = gcdlib::diamond_tropical(&fs, &c)?;
                (h, Box::new(move |t: &[usize]| {
                    let x: Vec<u64> = t.iter().map(|&v| v as u64).collect();
                    gcdlib::tropical_eval(&c, &x)
                }))
            }
        };
        let mut report = Report::new(write_poly(&h), poly_json(&h));
        if self.check {
            report = report.expect("diamond product", &h, &checks::diamond(self.ctx, &fs, &table)?);
            if let Some(prof) = prof {
                let want = prof.combine(self.ctx, |m| table(m).map_or(usize::MAX, |v| v as usize));
                report = report.expect("profile", &h, &want);
            }
        }
        Ok(report)
    }

    fn newton(&self, op: NewtonOp) -> Res<Report> {
        let ctx = self.ctx;
        match op {
            NewtonOp::Tops { f, d } => {
                let f = monic(&self.poly(&f)?)?;
                let d = d.unwrap_or(f.deg_or_zero());
                let series = newton::to_power_sums(&f, d)?;
                let report = Report::new(values_text(ctx, &series.sums), json!({"n": series.n, "sums": series.sums}));
                self.verify(report, "power sums", &series.sums, || Ok(oracle::newton_power_sums(&f, d)))
            }
            NewtonOp::Frompos { sums, n } => {
                let given = formats::read_values(ctx, &sums)?;
                let n = n.unwrap_or(given.len());
                let mut all = vec![ctx.reduce(n as u64)];
                all.extend_from_slice(&given);
                let series = newton::NewtonSeries { ctx, n, sums: all.clone() };
                let f = newton::from_power_sums(&series)?;
                let report = Report::new(write_poly(&f), poly_json(&f));
                if !self.check {
                    return Ok(report);
                }
                Ok(report.expect("power sums of the result", &oracle::newton_power_sums(&f, given.len()), &all))
            }
        }
    }

    fn circuit_cmd(&mut self, op: CircuitOp) -> Res<Report> {
        let ctx = self.ctx;
        match op {
            CircuitOp::Build { kind, n, d, m } => {
                let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| input_error(format!("{flag} is required for this circuit")));
                let kind = match kind {
                    Kind::Esym => BuildKind::ESym { n, d: need(d, "-d")? },
                    Kind::PowerSums => BuildKind::PowerSums { n, d: need(d, "-d")? },
                    Kind::CoeffsFromPowerSums => BuildKind::CoeffsFromPowerSums { n },
                    Kind::Resultant => BuildKind::Resultant { n, m: need(m, "-m")? },
                    Kind::Gcd => BuildKind::Gcd { n, m: need(m, "-m")? },
                };
                let c = circuit::build(ctx, kind)?;
                let text = formats::write_circuit(&c, None);
                let json: Value = serde_json::from_str(&text).expect("writer emits JSON");
                let mut report = Report::new(text, json);
                if self.check {
                    let mut rng = self.rng();
                    for _ in 0..8 {
                        let (got, want) = checks::circuit_instance(ctx, &c, kind, &mut rng)?;
                        report = report.expect(kind.name(), &got, &want);
                    }
                }
                Ok(report)
            }
            CircuitOp::Eval { file, inputs } => {
                let (c, _) = self.circuit(&file)?;
                let x = formats::read_values(ctx, &inputs)?;
                let out = c.eval(&x)?;
                Ok(Report::new(values_text(ctx, &out), json!({"outputs": out})))
            }
            CircuitOp::Stats { file } => {
                let (c, _) = self.circuit(&file)?;
                let m = c.metrics();
                let k = &m.counts;
                let fields = [
                    ("size", m.size),
                    ("depth", m.depth),
                    ("gates", m.gates),
                    ("inputs", k.input),
                    ("const", k.constant),
                    ("add", k.add),
                    ("mul", k.mul),
                    ("div", k.div),
                    ("select", k.select),
                ];
                let text = fields.iter().map(|(name, v)| format!("{name} {v}")).collect::<Vec<_>>().join("\n");
                let json: serde_json::Map<String, Value> = fields.iter().map(|(name, v)| (name.to_string(), json!(v))).collect();
                Ok(Report::new(text, Value::Object(json)))
            }
            CircuitOp::EliminateDiv { file, d } => {
                let (c, degree) = self.circuit(&file)?;
                let d = d.or(degree).ok_or_else(|| input_error("a degree bound is required (-d or a `degree` field)"))?;
                let out = circuit::eliminate_divisions(&c, d, self.seed)?;
                let mut report = self.circuit_report(&out, Some(d));
                if self.check {
                    let mut rng = self.rng();
                    let mut compared = 0;
                    for _ in 0..64 {
                        let x: Vec<u64> = (0..c.inputs()).map(|_| rng.gen_range(0..ctx.p())).collect();
                        if let Ok(want) = c.eval(&x) {
                            report = report.expect("value", &out.eval(&x)?, &want);
                            compared += 1;
                        }
                        if compared == 16 {
                            break;
                        }
                    }
                    if out.has_divisions() {
                        report = report.fail("divisions remain".into());
                    }
                }
                Ok(report)
            }
            CircuitOp::RemoveSelect { file } => {
                let (c, degree) = self.circuit(&file)?;
                let out = circuit::remove_selects(&c, self.seed, &PitConfig::default())?;
                let mut report = self.circuit_report(&out, degree);
                if self.check {
                    // At a random point every select argument that is not
                    // identically zero is nonzero, so both circuits agree.
                    let mut rng = self.rng();
                    for _ in 0..16 {
                        let x: Vec<u64> = (0..c.inputs()).map(|_| rng.gen_range(0..ctx.p())).collect();
                        if let (Ok(want), Ok(got)) = (c.eval(&x), out.eval(&x)) {
                            report = report.expect("value", &got, &want);
                        }
                    }
                    if out.has_selects() {
                        report = report.fail("selects remain".into());
                    }
                }
                Ok(report)
            }
            CircuitOp::Pit { file, d } => {
                let (c, degree) = self.circuit(&file)?;
                let d = d.or(degree).unwrap_or_else(|| c.degree_bounds().into_iter().max().unwrap_or(0));
                let outcome = circuit::pit(&c, d, self.seed)?;
                let mut report = match &outcome {
                    PitOutcome::Zero => Report::new("zero", json!({"zero": true})),
                    PitOutcome::NonZero(x) => {
                        Report::new(format!("nonzero {}", values_text(ctx, x)), json!({"zero": false, "witness": x}))
                    }
                };
                if self.check {
                    match &outcome {
                        PitOutcome::NonZero(x) => {
                            let nonzero = c.eval(x)?.iter().any(|&v| v != 0);
                            report = report.expect("witness is nonzero", &nonzero, &true);
                        }
                        PitOutcome::Zero => {
                            let mut rng = self.rng();
                            for _ in 0..64 {
                                let x: Vec<u64> = (0..c.inputs()).map(|_| rng.gen_range(0..ctx.p())).collect();
                                if let Ok(v) = c.eval(&x) {
                                    report = report.expect("value of a zero circuit", &v, &vec![0; v.len()]);
                                }
                            }
                        }
                    }
                }
                Ok(report)
            }
        }
    }

    fn circuit_report(&self, c: &ArithCircuit, degree: Option<usize>) -> Report {
        let text = formats::write_circuit(c, degree);
        let json: Value = serde_json::from_str(&text).expect("writer emits JSON");
        Report::new(text, json)
    }

    fn mpoly(&mut self, op: MpolyOp) -> Res<Report> {
        let ctx = self.ctx;
        let (args, which) = match &op {
            MpolyOp::Gcd(a) => (a, 0),
            MpolyOp::Lcm(a) => (a, 1),
            MpolyOp::Sqfree(a) => (a, 2),
        };
        let mut fs = Vec::with_capacity(args.files.len());
        for file in &args.files {
            let (c, degree) = self.circuit(file)?;
            let d = degree
                .or(args.degree)
                .ok_or_else(|| input_error(format!("{file}: a degree bound is required (-d or a `degree` field)")))?;
            fs.push(MPolyCircuit::new(c, d)?);
        }
        let mut rng = self.rng();
        let nvars = fs.first().map_or(0, |f| f.nvars);
        let line = checks::random_line(ctx, nvars, &mut rng);
        let restricted_monic = |f: &MPolyCircuit| -> Res<DensePoly> {
            let r = checks::restrict(f, &line)?;
            Ok(if r.is_zero() { r } else { monic(&r)? })
        };
        if which == 2 {
            if fs.len() != 1 {
                return Err(input_error("sqfree takes exactly one circuit"));
            }
            let sq = mpoly::msqfree(&fs[0], self.seed)?;
            let parts: Vec<Value> = sq
                .parts
                .iter()
                .map(|p| serde_json::from_str(&formats::write_circuit(&p.circuit, Some(p.degree_bound))).expect("writer emits JSON"))
                .collect();
            let json = json!({"scale": sq.scale, "parts": parts});
            let mut text = format!("scale {}", write_scalar(ctx, sq.scale));
            for p in &sq.parts {
                text.push('\n');
                text.push_str(&formats::write_circuit(&p.circuit, Some(p.degree_bound)));
            }
            let mut report = Report::new(text, json);
            if self.check {
                let got = trim_ones(sq.parts.iter().map(&restricted_monic).collect::<Res<Vec<_>>>()?);
                let want = checks::squarefree_parts(&checks::restrict(&fs[0], &line)?)?;
                report = report.expect("parts on a random line", &got, &want);
            }
            return Ok(report);
        }
        let g = if which == 0 { mpoly::mgcd(&fs, self.seed)? } else { mpoly::mlcm(&fs, self.seed)? };
        let mut report = self.circuit_report(&g.circuit, Some(g.degree_bound));
        if self.check {
            let rs: Vec<DensePoly> = fs.iter().map(&restricted_monic).collect::<Res<_>>()?;
            let want = if which == 0 { oracle::euclid_gcd_many(&rs) } else { oracle::euclid_lcm_many(&rs) };
            report = report.expect("restriction to a random line", &restricted_monic(&g)?, &want);
        }
        Ok(report)
    }
}

/// Expression syntax in `x` and `y` with terms in decreasing lexicographic
/// order of `(i, j)`.
fn bivariate_text(ctx: FieldCtx, terms: &[(usize, usize, u64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut sorted = terms.to_vec();
    sorted.sort_unstable_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
    let mut s = String::new();
    for (i, j, c) in sorted {
        let v = ctx.signed(c);
        let mag = v.unsigned_abs();
        if v < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let mut factors = Vec::new();
        if mag != 1 || (i == 0 && j == 0) {
            factors.push(mag.to_string());
        }
        for (var, e) in [("x", i), ("y", j)] {
            match e {
                0 => {}
                1 => factors.push(var.to_string()),
                e => factors.push(format!("{var}^{e}")),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Outcome {
        let mut argv = vec!["acpoly"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn bivariate_formatting() {
        let ctx = FieldCtx::new(1_000_003).unwrap();
        let terms = [(0, 0, ctx.neg(1)), (0, 2, 1), (2, 0, 1), (1, 1, 3)];
        assert_eq!(bivariate_text(ctx, &terms), "x^2+3*x*y+y^2-1");
        assert_eq!(bivariate_text(ctx, &[]), "0");
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = run_str(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("gcd"));
    }

    #[test]
    fn disagreement_exits_with_three() {
        let report = Report::new("1", json!(1)).expect("value", &1, &2);
        let out = finish(Ok(report), Format::Text);
        assert_eq!(out.code, 3);
        assert_eq!(out.stdout, "1\n");
        assert!(out.stderr.starts_with("CheckMismatch: value"));
        let agree = Report::new("1", json!(1)).expect("value", &1, &1);
        assert_eq!(finish(Ok(agree), Format::Json).code, 0);
    }

    #[test]
    fn bad_prime_is_a_domain_error() {
        let out = run_str(&["-p", "15", "gcd", "x-1"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("InvalidModulus"));
    }
}
