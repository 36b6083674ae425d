use core::fmt;

/// Failures raised by the numerical core.
///
/// Every variant that guards an invariant carries the measured residual so
/// callers can report how far off an input was.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    InvalidDimension {
        dim: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotHermitian {
        residual: f64,
    },
    NotTraceless {
        trace: f64,
    },
    TraceNotOne {
        trace: f64,
    },
    NotPositive {
        min_eigenvalue: f64,
    },
    ConvergenceFailure {
        sweeps: usize,
        off_diagonal: f64,
    },
    ZeroVector,
    NotInLd {
        operator_norm: f64,
    },
    ImaginaryResidual {
        row: usize,
        col: usize,
        imaginary: f64,
    },
    WrongDimension {
        dim: usize,
    },
    DegenerateDirection {
        slot: usize,
    },
    BothDegenerate,
    InvalidConfig(&'static str),
}

impl Error {
    /// Short variant name, used by front ends for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDimension { .. } => "InvalidDimension",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotTraceless { .. } => "NotTraceless",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPositive { .. } => "NotPositive",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::ZeroVector => "ZeroVector",
            Error::NotInLd { .. } => "NotInLd",
            Error::ImaginaryResidual { .. } => "ImaginaryResidual",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::DegenerateDirection { .. } => "DegenerateDirection",
            Error::BothDegenerate => "BothDegenerate",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }

    /// True for errors caused by the numerics rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. }
                | Error::ImaginaryResidual { .. }
                | Error::DegenerateDirection { .. }
                | Error::BothDegenerate
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind())?;
        match self {
            Error::InvalidDimension { dim } => write!(f, "qudit dimension {dim} is below 2"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected dimension {expected}, found {found}")
            }
            Error::NotHermitian { residual } => {
                write!(f, "max |M - M^dagger| = {residual:e} exceeds 1e-10")
            }
            Error::NotTraceless { trace } => write!(f, "|tr M| = {trace:e} exceeds 1e-10"),
            Error::TraceNotOne { trace } => write!(f, "trace is {trace}, expected 1 within 1e-10"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "minimum eigenvalue {min_eigenvalue:e} is below -1e-10")
            }
            Error::ConvergenceFailure { sweeps, off_diagonal } => write!(
                f,
                "Jacobi iteration left off-diagonal norm {off_diagonal:e} after {sweeps} sweeps"
            ),
            Error::ZeroVector => write!(f, "vector is zero"),
            Error::NotInLd { operator_norm } => write!(
                f,
                "observable is not traceless with spectrum in [-1, 1] (operator norm {operator_norm})"
            ),
            Error::ImaginaryResidual { row, col, imaginary } => write!(
                f,
                "correlation entry ({row}, {col}) has imaginary part {imaginary:e}"
            ),
            Error::WrongDimension { dim } => {
                write!(f, "operation is defined for qubits only, got d = {dim}")
            }
            Error::DegenerateDirection { slot } => {
                write!(f, "update direction for slot {slot} is zero")
            }
            Error::BothDegenerate => write!(f, "both T r1 and T r2 vanish"),
            Error::InvalidConfig(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
