// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// stable error names printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("not a poset: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAPoset(String, String),
    #[error("not a lattice: `{a}` and `{b}` have no {op}")]
    NotALattice { a: String, b: String, op: &'static str },
    #[error("element from a foreign lattice")]
    ForeignElement,
    #[error("invalid symbolic set: {0}")]
    InvalidSymbolicSet(String),
    #[error("coordinate {coordinate} out of range (width {width})")]
    CoordinateOutOfRange { coordinate: usize, width: usize },
    #[error("size bound exceeded: {what} = {value} > {bound}")]
    SizeBound {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("not a cover: sup is `{sup}`, target is `{target}`")]
    NotACover { sup: String, target: String },
    #[error("cover target `{found}` differs from instance target `{expected}`")]
    TargetMismatch { expected: String, found: String },
    #[error("lattice is not Pawlikowski: {0}")]
    NotPawlikowski(String),
    #[error("lattice does not have enough primes: {0}")]
    NotEnoughPrimes(String),
    #[error("search bound exceeded: {what} = {value} > {bound}")]
    SearchBound {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("empty instance with non-bottom target")]
    EmptyInstance,
    #[error("lattice has no prime elements")]
    NoPrimes,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("strategy failed at history {history}: {reason}")]
    StrategyPartial { history: String, reason: String },
    #[error("strategy answered a non-cover at history {history}: sup is `{sup}`")]
    StrategyNotACover { history: String, sup: String },
    #[error("illegal selection at inning {inning}: {reason}")]
    IllegalSelection { inning: usize, reason: String },
    #[error("corrupt transcript: {0}")]
    CorruptTranscript(String),
    #[error("depth {level} exceeds tree depth {depth}")]
    DepthExceeded { level: usize, depth: usize },
    #[error("selector failed: {0}")]
    SelectorFailed(String),
    #[error("recurrence missed: prime `{prime}` beaten {count} times, {required} required")]
    RecurrenceMissed {
        prime: String,
        count: usize,
        required: usize,
    },
    #[error("history set grew to {size} (cap {cap})")]
    HistoryBlowup { size: usize, cap: usize },
    #[error("decode failure: {0}")]
    DecodeFailure(String),
    #[error("target must be the top element")]
    TargetNotTop,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in structured output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EmptyCarrier => "EmptyCarrier",
            Error::NotAPoset(..) => "NotAPoset",
            Error::NotALattice { .. } => "NotALattice",
            Error::ForeignElement => "ForeignElement",
            Error::InvalidSymbolicSet(_) => "InvalidSymbolicSet",
            Error::CoordinateOutOfRange { .. } => "CoordinateOutOfRange",
            Error::SizeBound { .. } => "SizeBound",
            Error::NotACover { .. } => "NotACover",
            Error::TargetMismatch { .. } => "TargetMismatch",
            Error::NotPawlikowski(_) => "NotPawlikowski",
            Error::NotEnoughPrimes(_) => "NotEnoughPrimes",
            Error::SearchBound { .. } => "SearchBound",
            Error::EmptyInstance => "EmptyInstance",
            Error::NoPrimes => "NoPrimes",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::StrategyPartial { .. } => "StrategyPartial",
            Error::StrategyNotACover { .. } => "NotACover",
            Error::IllegalSelection { .. } => "IllegalSelection",
            Error::CorruptTranscript(_) => "CorruptTranscript",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::SelectorFailed(_) => "SelectorFailed",
            Error::RecurrenceMissed { .. } => "RecurrenceMissed",
            Error::HistoryBlowup { .. } => "HistoryBlowup",
            Error::DecodeFailure(_) => "DecodeFailure",
            Error::TargetNotTop => "TargetNotTop",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
