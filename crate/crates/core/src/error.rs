use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("value window too short: need at least {needed} samples, got {got}")]
    WindowTooShort { needed: usize, got: usize },

    #[error("window is not polynomial of degree {degree}: difference of order {} is nonzero at m = {at}", degree + 1)]
    NotPolynomial { degree: usize, at: i64 },

    #[error("Hilbert function has not stabilized inside the window; it disagrees with every polynomial of degree <= {max_degree} at m = {at}")]
    NonStabilized { max_degree: usize, at: i64 },

    #[error("leading coefficient gives a non-integer degree {0}")]
    NonIntegerDegree(String),

    #[error("division by the zero polynomial")]
    ZeroDenominator,

    #[error("quotient dimension {found} at m = {m} differs from P(m) = {expected}; m is below the stabilization bound")]
    StabilizationViolated { m: u32, found: usize, expected: String },

    #[error("weight samples exceed degree {bound}: differences of order {} are {differences:?}", bound + 1)]
    WeightDegreeExceeded { bound: usize, differences: Vec<String> },

    #[error("Plücker subset has {got} monomials but P(m) = {expected}")]
    WrongSubsetSize { expected: usize, got: usize },

    #[error("one-parameter subgroup {lambda:?} is not special linear: sum of weights is {sum}, expected 0 (pass --allow-gl to override)")]
    NotSpecialLinear { lambda: Vec<i64>, sum: i64 },

    #[error("inconsistent Hilbert data / weight polynomial pair: {0}")]
    InconsistentPair(String),

    #[error("Chow form vanishes: the linear forms meet X (complex not exact at level {level})")]
    Incidence { level: usize },

    #[error("linear forms are degenerate: coefficient matrix has rank {rank} < {needed}")]
    DegenerateForms { rank: usize, needed: usize },

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("Hilbert polynomial {0} has no Macaulay decomposition")]
    Decomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code embedded in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Io { .. } => "io",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::WindowTooShort { .. } => "window_too_short",
            Error::NotPolynomial { .. } => "not_polynomial",
            Error::NonStabilized { .. } => "non_stabilized",
            Error::NonIntegerDegree(_) => "non_integer_degree",
            Error::ZeroDenominator => "zero_denominator",
            Error::StabilizationViolated { .. } => "stabilization_violated",
            Error::WeightDegreeExceeded { .. } => "weight_degree_exceeded",
            Error::WrongSubsetSize { .. } => "wrong_subset_size",
            Error::NotSpecialLinear { .. } => "not_special_linear",
            Error::InconsistentPair(_) => "inconsistent_pair",
            Error::Incidence { .. } => "incidence",
            Error::DegenerateForms { .. } => "degenerate_forms",
            Error::Interpolation(_) => "interpolation",
            Error::Decomposition(_) => "decomposition",
            Error::Precondition(_) => "precondition",
            Error::IdentityFailure(_) => "identity_failure",
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit code: 2 for input problems, 4 for failed identity
    /// checks, 3 for every other domain error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Io { .. } | Error::NotSpecialLinear { .. } => 2,
            Error::IdentityFailure(_) => 4,
            _ => 3,
        }
    }
}
