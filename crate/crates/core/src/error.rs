use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: i32, right: i32 },

    #[error("hbar exponent {0} is below the floor of -2")]
    ExponentFloor(i64),

    #[error("logarithm needs a series with constant term 1, got {0}")]
    NonUnitLeadingTerm(String),

    #[error("exponential needs a series without hbar^0 or negative terms")]
    ExpDomain,

    #[error("negative argument: {0}")]
    Negative(i64),

    #[error("partition weights differ: {0} vs {1}")]
    WeightMismatch(u32, u32),

    #[error("color {color} is outside 0..{colors}")]
    UnknownColor { color: u8, colors: usize },

    #[error("boundary circle mixes colors")]
    MixedColorCircle,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram too large for brute-force contraction: {0}")]
    DiagramTooLarge(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not in SL(2,Z): {0}")]
    NotSl2z(String),

    #[error("the Rademacher function is only defined here for q != 0")]
    ZeroLowerLeft,

    #[error("H = 0: not a rational homology sphere")]
    ZeroOrder,

    #[error("Str^p grading violated: {0}")]
    Grading(String),

    #[error("numerical integration did not converge: {0}")]
    NonConvergent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OrderMismatch { .. } => "order_mismatch",
            Error::ExponentFloor(_) => "exponent_floor",
            Error::NonUnitLeadingTerm(_) => "non_unit_leading_term",
            Error::ExpDomain => "exp_domain",
            Error::Negative(_) => "negative_argument",
            Error::WeightMismatch(..) => "weight_mismatch",
            Error::UnknownColor { .. } => "unknown_color",
            Error::MixedColorCircle => "mixed_color_circle",
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::DiagramTooLarge(_) => "diagram_too_large",
            Error::OutOfRange(_) => "out_of_range",
            Error::NotCoprime(..) => "not_coprime",
            Error::NotSymmetric => "not_symmetric",
            Error::NotSl2z(_) => "not_sl2z",
            Error::ZeroLowerLeft => "zero_lower_left",
            Error::ZeroOrder => "zero_order",
            Error::Grading(_) => "grading",
            Error::NonConvergent(_) => "non_convergent",
            Error::Invalid(_) => "invalid_input",
        }
    }
}
