use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while evaluating, counting or verifying.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("log-gamma pole at {0}")]
    Pole(Complex64),

    #[error("invalid precision budget: {0}")]
    InvalidBudget(String),

    #[error("tail bound {tail:e} at cutoff {cutoff} exceeds the tolerance {tol:e}")]
    InvalidCutoff { cutoff: f64, tail: f64, tol: f64 },

    #[error("phase step {step:.4} rad at sample {index} is too large; sample the path more finely")]
    PhaseStepTooLarge { index: usize, step: f64 },

    #[error("zero sample at index {0} on an argument path")]
    ZeroSample(usize),

    #[error("boundary of {rect} could not be certified zero-free")]
    BoundaryUnresolvable { rect: String },

    #[error("winding number {raw:.4} is not close to an integer")]
    SnapFailure { raw: f64 },

    #[error("coefficient sequence must contain a nonzero entry")]
    AllZeroCoefficients,

    #[error("integer overflow while expanding the product to degree {0}")]
    Overflow(usize),

    #[error("denominator |h(s)| = {modulus:e} is within 10x its error {err:e}")]
    DenominatorUncertified { modulus: f64, err: f64 },

    #[error("unstable estimate: dispersion {dispersion:e} exceeds |mean| {mean:e}")]
    UnstableEstimate { dispersion: f64, mean: f64 },

    #[error("no almost-period found up to {0}")]
    NoPeriodFound(f64),

    #[error("another zero lies within {0:e} of the target")]
    CrowdedNeighborhood(f64),

    #[error("no stable strip half-width found up to {0}")]
    Beta0NotFound(f64),

    #[error("h is not certified nonzero on Re s = {sigma0}: min |h| = {min_modulus:e}")]
    SigmaUncertified { sigma0: f64, min_modulus: f64 },

    #[error("invalid rectangle: {0}")]
    InvalidRectangle(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the failure is a numerical one (as opposed to bad input or
    /// I/O): certification, convergence and stability problems.
    pub fn is_numeric(&self) -> bool {
        !matches!(
            self,
            Error::InvalidBudget(_)
                | Error::InvalidRectangle(_)
                | Error::InvalidArgument(_)
                | Error::AllZeroCoefficients
                | Error::Parse(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
