use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Variants split into validation failures (bad inputs or inconsistent data)
/// and numerical failures (a quadrature or contour walk could not meet its
/// tolerance). [`Error::is_numerical`] tells them apart; the CLI maps them to
/// distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n = {0} must be even and at least 2")]
    DimensionOdd(u32),
    #[error("n-bar weight list is empty")]
    EmptyWeights,
    #[error("rho = {rho} does not match the weighted half-sum {half_sum}")]
    RhoMismatch { rho: f64, half_sum: f64 },
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParameter { key: String, reason: String },
    #[error("rho/T + eps_alpha = {0} is not within 1e-9 of an integer or half-integer")]
    NotHalfInteger(f64),

    #[error("polynomial is not monic: leading term {0}")]
    NotMonic(f64),
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("root datum expands to a polynomial with non-vanishing even coefficient {0}")]
    NotOdd(f64),
    #[error("root datum has {got} factors with nonzero a-pairing, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("|t| = {0} is below 1; the trigonometric asymptotics need |t| >= 1")]
    TooCloseToRealAxis(f64),
    #[error("integration path ends on a pole of the integrand at s = {0}")]
    PoleOnPath(f64),
    #[error("quadrature did not reach the requested tolerance (estimate {estimate:e}, requested {requested:e})")]
    ToleranceNotMet { estimate: f64, requested: f64 },
    #[error("sigma_1 = {0} must be negative")]
    NonNegativeSigma1(f64),

    #[error("Re(s) = {re} is outside the convergence half-plane Re(s) > {bound}")]
    OutsideHalfPlane { re: f64, bound: f64 },
    #[error("truncation tail bound {bound:e} exceeds the strict threshold {threshold:e}")]
    TailTooLarge { bound: f64, threshold: f64 },
    #[error("no trace data registered for tau hook `{0}`")]
    UnknownTauHook(String),
    #[error("shift rho - lambda = {shift} lies outside [-rho, rho] with rho = {rho}")]
    ShiftOutOfRange { shift: f64, rho: f64 },
    #[error("I_p table has {got} rows in total, expected 2^(n-1) = {expected}")]
    IpCountMismatch { expected: usize, got: usize },

    #[error("singularity order {0} is not an integer")]
    NonIntegerOrder(f64),
    #[error("evaluation point {0} coincides with a singularity")]
    OnSingularity(String),
    #[error("a singularity lies on or within tolerance of the region boundary at {0}")]
    BoundaryHit(String),
    #[error("region extends beyond the disc covered by the truncated lattice (radius {0})")]
    RegionNotCovered(f64),

    #[error("contour panel limit reached near {0}; a singularity is probably on the contour")]
    PanelLimit(String),
    #[error("accumulated phase {0} is not an integer multiple of 2*pi")]
    NonIntegerWinding(f64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("lengths are not sorted ascending at line {0}")]
    UnsortedLengths(usize),
    #[error("non-positive length at line {0}")]
    NonPositiveLength(usize),
    #[error("word {word} has |trace| = {trace} <= 2; group is not discrete and torsion free as given")]
    EllipticElementFound { word: String, trace: f64 },
    #[error("enumeration exceeded the budget of {0} group elements")]
    Overflow(usize),

    #[error("unknown subcommand `{0}`")]
    UnknownSubcommand(String),
    #[error("configuration key `{0}` is missing")]
    ConfigMissing(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ToleranceNotMet { .. }
                | Error::PanelLimit(_)
                | Error::NonIntegerWinding(_)
                | Error::TailTooLarge { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
