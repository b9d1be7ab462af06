use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// machine-readable code emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} is divisible by the characteristic {characteristic}")]
    NotKRegular { degree: usize, characteristic: u64 },
    #[error("element is not imaginary (d = {d} is positive)")]
    NotImaginary { d: String },
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("{0} is a square in the ground field")]
    SquareRadicand(String),
    #[error("quadratic elements over different extensions cannot be combined")]
    MixedExtension,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the factorization cap")]
    DegreeTooLarge(usize),
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not of degree 2")]
    NotQuadratic,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no modular inverse exists")]
    NoModularInverse,
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("splitting bound {0} exceeds 2")]
    SplittingBoundExceeded(usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("quadratic factor with n = {0} is not positive")]
    NegativeNormComponent(String),
    #[error("operation requires an ordered ground field")]
    NotOrdered,
    #[error("custom series has no declared radius")]
    UnknownRadius,
    #[error("the trivial absolute value carries no eigenvalue data")]
    TrivialKindUnsupported,
    #[error("series does not converge at the given eigenvalue data")]
    NotConvergent,
    #[error("matrix is outside the convergence domain of the series")]
    NotInOmegaHat,
    #[error("series {0} has no closed form here")]
    UnsupportedSeries(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}

impl Error {
    /// Stable error constant name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotKRegular { .. } => "NotKRegular",
            Error::NotImaginary { .. } => "NotImaginary",
            Error::CharTwo => "CharTwo",
            Error::InvalidField(_) => "InvalidField",
            Error::SquareRadicand(_) => "SquareRadicand",
            Error::MixedExtension => "MixedExtension",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeTooLarge(_) => "DegreeTooLarge",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotQuadratic => "NotQuadratic",
            Error::Reducible => "Reducible",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NoModularInverse => "NoModularInverse",
            Error::FactorizationFailed(_) => "FactorizationFailed",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::NotSemisimple => "NotSemisimple",
            Error::SplittingBoundExceeded(_) => "SplittingBoundExceeded",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::NegativeNormComponent(_) => "NegativeNormComponent",
            Error::NotOrdered => "NotOrdered",
            Error::UnknownRadius => "UnknownRadius",
            Error::TrivialKindUnsupported => "TrivialKindUnsupported",
            Error::NotConvergent => "NotConvergent",
            Error::NotInOmegaHat => "NotInOmegaHat",
            Error::UnsupportedSeries(_) => "UnsupportedSeries",
            Error::SchemaMismatch(_) => "SchemaMismatch",
            Error::Parse(_) => "Parse",
            Error::CrossCheckFailed(_) => "CrossCheckFailed",
        }
    }

    /// True for violations of a mathematical precondition, as opposed to
    /// malformed input.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::SchemaMismatch(_) | Error::InvalidField(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
