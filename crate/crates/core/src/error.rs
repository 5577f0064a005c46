use thiserror::Error;

/// Failures reported by the numerical and exact routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("parameter pole: (c)_p vanishes at p = {index} before the series terminates")]
    ParameterPole { index: usize },

    #[error("series does not converge: {0}")]
    NoConvergence(String),

    #[error("gamma arguments cannot be paired with integer differences")]
    Unmatched,

    #[error("gamma ratio undefined: numerator pole with finite denominator")]
    Undefined,

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("kernel is singular at its boundary base point and no removable-singularity series is available")]
    Singular,

    #[error("quadrature failed after {subdivisions} subdivisions: value {value}, error estimate {error_estimate:e}")]
    QuadratureFailure {
        value: num_complex::Complex64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("adaptive refinement near {location} stalled (error estimate {error_estimate:e})")]
    SingularityUnresolved { location: f64, error_estimate: f64 },

    #[error("radial extrapolation is not converging (last difference {error_estimate:e})")]
    NotConverging { error_estimate: f64 },

    #[error("computed squared norm is negative: {value:e}")]
    NegativeNorm { value: f64 },

    #[error("computed squared norm has imaginary part {imag:e} (real part {real:e})")]
    LargeImaginary { real: f64, imag: f64 },

    #[error("cancellation of {lost_bits:.1} bits exceeds the {available_bits}-bit precision budget")]
    Cancellation { lost_bits: f64, available_bits: u32 },

    #[error("invalid function description: {0}")]
    InvalidFunction(String),

    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
