use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    SpecMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not live in an extension field")]
    NotAnExtensionElement,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by a series indistinguishable from zero")]
    ZeroDivisor,
    #[error("series is indistinguishable from zero at this precision")]
    IndistinguishableFromZero,
    #[error("degenerate substitution: {0}")]
    DegenerateSubstitution(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("curve is singular at the point")]
    SingularAtPoint,
    #[error("reduction is not a unit: {0}")]
    NotAUnitAfterReduction(String),
    #[error("argument lists have different lengths")]
    LengthMismatch,
    #[error("depth {depth} too shallow, need at least {required}")]
    DepthTooShallow { depth: i64, required: i64 },
    #[error("singular branch without parametrization: {0}")]
    SingularBranchUnhandled(String),
    #[error("restriction degenerate: {0}")]
    RestrictionDegenerate(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable identifier used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotAnExtensionElement => "NotAnExtensionElement",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::UnsupportedBase(_) => "UnsupportedBase",
            Error::InvalidField(_) => "InvalidField",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::IndistinguishableFromZero => "IndistinguishableFromZero",
            Error::DegenerateSubstitution(_) => "DegenerateSubstitution",
            Error::NotOnCurve => "NotOnCurve",
            Error::SingularAtPoint => "SingularAtPoint",
            Error::NotAUnitAfterReduction(_) => "NotAUnitAfterReduction",
            Error::LengthMismatch => "LengthMismatch",
            Error::DepthTooShallow { .. } => "DepthTooShallow",
            Error::SingularBranchUnhandled(_) => "SingularBranchUnhandled",
            Error::RestrictionDegenerate(_) => "RestrictionDegenerate",
            Error::Parse { .. } => "Parse",
            Error::Config(_) => "Config",
        }
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
