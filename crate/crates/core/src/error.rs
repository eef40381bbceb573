use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants carry enough context to be reported verbatim by the command-line
/// front end; `kind()` gives a stable machine-readable tag.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // polynomial input
    #[error("polynomial degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("leading coefficient {0} is not positive")]
    NonPositiveLeading(i64),
    #[error("coefficient gcd is {0}, expected 1")]
    GcdViolation(i64),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("root finding failed: residual {0} exceeds tolerance")]
    RootFindingFailed(String),
    #[error("cofactor has {found} real roots, expected {expected}")]
    ComplexRoot { found: usize, expected: usize },
    #[error("root alpha = {0} is <= -1")]
    NegativeRootBelowMinusOne(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    // exact counting
    #[error("naive counter guard exceeded: n = {n} > {cap}")]
    GuardExceeded { n: u64, cap: u64 },
    #[error("estimated memory {estimate} bytes exceeds cap {cap} bytes")]
    MemoryCapExceeded { estimate: u64, cap: u64 },

    // special functions
    #[error("invalid precision configuration: {0}")]
    InvalidPrecision(String),
    #[error("zeta pole at s = 1")]
    PoleAtOne,
    #[error("gamma pole at non-positive integer {0}")]
    PoleAtNonpositiveInteger(i64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("branch ambiguity: {0}")]
    BranchError(String),
    #[error("order {0} is a positive integer")]
    IntegerS(i64),
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series exponential needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    // Matsumoto-Weng zeta
    #[error("negative root parameter {0}")]
    NegativeAlpha(String),
    #[error("too close to a pole at s = {0}")]
    NearPole(String),
    #[error("insufficient continuation depth: {0}")]
    InsufficientDepth(String),
    #[error("closed form for zeta(0, alpha) disagrees by {0}")]
    ClosedFormMismatch(String),
    #[error("derivative routes disagree by {0}")]
    DerivativeMismatch(String),

    // generating-log evaluation
    #[error("tail bound {0} too large")]
    TailTooLarge(String),
    #[error("a_0/a_d = {0} is not below 1")]
    RatioNotLessThanOne(String),
    #[error("series did not converge: {0}")]
    NonConvergentSeries(String),

    // saddle point
    #[error("no sign change bracketing the saddle for n = {0}")]
    NoBracket(u64),
    #[error("saddle iteration did not converge after {0} iterations")]
    SaddleNonConvergence(usize),

    // arcs
    #[error("quadrature budget exceeded after {0} panels")]
    QuadratureBudgetExceeded(usize),
    #[error("major arcs {0} and {1} overlap")]
    OverlapDetected(String, String),
}

impl Error {
    /// Stable tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::NonPositiveLeading(_) => "NonPositiveLeading",
            Error::GcdViolation(_) => "GcdViolation",
            Error::Parse(_) => "Parse",
            Error::RootFindingFailed(_) => "RootFindingFailed",
            Error::ComplexRoot { .. } => "ComplexRoot",
            Error::NegativeRootBelowMinusOne(_) => "NegativeRootBelowMinusOne",
            Error::OutOfRange(_) => "OutOfRange",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::GuardExceeded { .. } => "GuardExceeded",
            Error::MemoryCapExceeded { .. } => "MemoryCapExceeded",
            Error::InvalidPrecision(_) => "InvalidPrecision",
            Error::PoleAtOne => "PoleAtOne",
            Error::PoleAtNonpositiveInteger(_) => "PoleAtNonpositiveInteger",
            Error::DomainError(_) => "DomainError",
            Error::NonConvergence(_) => "NonConvergence",
            Error::BranchError(_) => "BranchError",
            Error::IntegerS(_) => "IntegerS",
            Error::OrderMismatch(..) => "OrderMismatch",
            Error::NonzeroConstantTerm => "NonzeroConstantTerm",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::NegativeAlpha(_) => "NegativeAlpha",
            Error::NearPole(_) => "NearPole",
            Error::InsufficientDepth(_) => "InsufficientDepth",
            Error::ClosedFormMismatch(_) => "ClosedFormMismatch",
            Error::DerivativeMismatch(_) => "DerivativeMismatch",
            Error::TailTooLarge(_) => "TailTooLarge",
            Error::RatioNotLessThanOne(_) => "RatioNotLessThanOne",
            Error::NonConvergentSeries(_) => "NonConvergentSeries",
            Error::NoBracket(_) => "NoBracket",
            Error::SaddleNonConvergence(_) => "NonConvergence",
            Error::QuadratureBudgetExceeded(_) => "QuadratureBudgetExceeded",
            Error::OverlapDetected(..) => "OverlapDetected",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
