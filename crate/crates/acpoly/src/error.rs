//! The error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

/// Every failure the library can report.
///
/// Variant names double as the error names printed by the command-line
/// front end, so they are stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A division or inversion by the zero element.
    DivisionByZero,
    /// Two operands live in fields with different moduli.
    ModulusMismatch,
    /// The characteristic `p` does not exceed the bound an algorithm needs.
    CharacteristicTooSmall { p: u64, bound: u64 },
    /// The requested modulus is not a prime in `[3, 2^63)`.
    InvalidModulus(u64),
    /// An operation received the zero polynomial where it needs a nonzero one.
    ZeroPolynomial,
    /// Interpolation received the same node twice.
    DuplicateNode,
    /// The field has too few elements for the requested node set or sample.
    FieldTooSmall,
    /// An input that must be monic is not.
    NotMonic,
    /// A power-sum sequence does not come from any monic polynomial.
    InconsistentSeries,
    /// A promised exact division left a remainder.
    NotDivisible,
    /// A perfect root was requested with an index not dividing the degree.
    DegreeNotDivisible,
    /// A promised perfect power is not one.
    NotAPerfectPower,
    /// A rational function of the roots has a vanishing denominator.
    SharedRoot,
    /// A matrix that must be invertible is singular.
    SingularMatrix,
    /// Two polynomials that must be coprime share a root.
    NotCoprime,
    /// A polynomial degree exceeds the declared order.
    DegreeTooHigh,
    /// A parameterized curve has an identically vanishing implicit equation.
    DegenerateParameterization,
    /// A result would exceed the configured degree cap.
    OutputDegreeOverflow,
    /// A circuit is malformed (bad gate reference, arity, or cycle).
    MalformedCircuit(String),
    /// Circuit evaluation divided by zero at the given gate.
    DivisionByZeroAtGate(usize),
    /// A builder parameter exceeds its configured cap.
    CapExceeded(String),
    /// A circuit expected to be a polynomial is not one.
    NotAPolynomial,
    /// No point with a nonzero value was found within the attempt budget.
    NoNonzeroPoint,
    /// The circuit computes the zero polynomial.
    ZeroCircuit,
    /// Randomized evaluation hit a degenerate sample; retry with another seed.
    DegenerateSample,
    /// Arguments have the wrong shape (length mismatch, unstructured matrix).
    InvalidArgument(String),
    /// Text input could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CharacteristicTooSmall { p, bound } => {
                write!(f, "CharacteristicTooSmall: p = {p} must exceed {bound}")
            }
            Error::InvalidModulus(p) => write!(f, "InvalidModulus: {p} is not an odd prime below 2^63"),
            Error::MalformedCircuit(msg) => write!(f, "MalformedCircuit: {msg}"),
            Error::DivisionByZeroAtGate(g) => write!(f, "DivisionByZeroAtGate: gate {g}"),
            Error::CapExceeded(msg) => write!(f, "CapExceeded: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "InvalidArgument: {msg}"),
            Error::Parse(msg) => write!(f, "ParseError: {msg}"),
            other => write!(f, "{}", other.name()),
        }
    }
}

impl Error {
    /// The stable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ModulusMismatch => "ModulusMismatch",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DuplicateNode => "DuplicateNode",
            Error::FieldTooSmall => "FieldTooSmall",
            Error::NotMonic => "NotMonic",
            Error::InconsistentSeries => "InconsistentSeries",
            Error::NotDivisible => "NotDivisible",
            Error::DegreeNotDivisible => "DegreeNotDivisible",
            Error::NotAPerfectPower => "NotAPerfectPower",
            Error::SharedRoot => "SharedRoot",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotCoprime => "NotCoprime",
            Error::DegreeTooHigh => "DegreeTooHigh",
            Error::DegenerateParameterization => "DegenerateParameterization",
            Error::OutputDegreeOverflow => "OutputDegreeOverflow",
            Error::MalformedCircuit(_) => "MalformedCircuit",
            Error::DivisionByZeroAtGate(_) => "DivisionByZeroAtGate",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NotAPolynomial => "NotAPolynomial",
            Error::NoNonzeroPoint => "NoNonzeroPoint",
            Error::ZeroCircuit => "ZeroCircuit",
            Error::DegenerateSample => "DegenerateSample",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "ParseError",
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
