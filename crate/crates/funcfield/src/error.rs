//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rational function was constructed with denominator zero.
    ZeroDenominator,
    /// Valuation of the zero element is undefined.
    ZeroElement,
    /// Two values from different base fields were mixed.
    MixedFields,
    /// A place needed by the computation does not split over the base
    /// field; the offending irreducible factor is carried as text.
    NonSplitPlace(String),
    /// The operation requires a nonconstant rational function.
    ConstantElement,
    /// All generators handed to the field machinery were constants.
    AllConstant,
    /// `base + span(E)` does not equal the stated target space.
    SpanMismatch,
    /// Requested subspace dimension exceeds what the ambient space allows.
    DimensionTooLarge,
    /// Random sampling inside L(D) needs an effective divisor.
    DivisorNotEffective,
    /// A degree-family request could not be realized.
    DegreeRealizationFailed(String),
    /// The modulus given for a prime field is not prime.
    NotPrime(u64),
    /// Every residue of a small prime field fell in the forbidden set.
    SmallFieldExhausted,
    /// Not enough field elements outside the excluded set to sample.
    FieldTooSmall,
    /// A lemma's hypothesis does not hold on this instance.
    HypothesisNotMet(String),
    /// A proved statement failed on a valid instance: arithmetic bug.
    InternalInvariant(String),
    /// Parse error with 1-based position.
    Syntax { line: usize, col: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "denominator is zero"),
            Error::ZeroElement => write!(f, "valuation of the zero element is undefined"),
            Error::MixedFields => write!(f, "values from different base fields were mixed"),
            Error::NonSplitPlace(p) => {
                write!(f, "place does not split over the base field: {p}")
            }
            Error::ConstantElement => write!(f, "operation requires a nonconstant element"),
            Error::AllConstant => write!(f, "all generators are constant"),
            Error::SpanMismatch => write!(f, "base + span(E) does not equal the target space"),
            Error::DimensionTooLarge => write!(f, "requested dimension exceeds the ambient space"),
            Error::DivisorNotEffective => write!(f, "divisor must be effective"),
            Error::DegreeRealizationFailed(why) => {
                write!(f, "could not realize the requested degree set: {why}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::SmallFieldExhausted => {
                write!(f, "every residue of the prime field is excluded")
            }
            Error::FieldTooSmall => write!(f, "field too small to sample outside the bad set"),
            Error::HypothesisNotMet(what) => write!(f, "hypothesis not met: {what}"),
            Error::InternalInvariant(what) => {
                write!(f, "internal invariant violated (arithmetic bug): {what}")
            }
            Error::Syntax { line, col, msg } => {
                write!(f, "syntax error at {line}:{col}: {msg}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
