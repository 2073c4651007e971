use thiserror::Error;

/// Errors raised by the algebra, arc and equation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus (expected a prime 2 <= p < 2^31)")]
    NotPrime(u64),
    #[error("arithmetic mixes modulus {left} with modulus {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("truncation level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("constant term is not a unit")]
    NonUnit,
    #[error("not a p-th power in F_p(t)")]
    NotAPthPower,
    #[error("cannot project from level {from} up to level {to}")]
    ProjectionAboveLevel { from: usize, to: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("arc point does not lie on the arc bundle")]
    ArcNotOnVariety,
    #[error("presentation is not defined over the constants F_p")]
    NotOverConstants,
    #[error("point lies outside the domain of a regular map (denominator vanishes)")]
    OutsideDomain,
    #[error("arc does not lie in the fiber over the identity")]
    NotInIdentityFiber,
    #[error("operation requires the {expected} group, got {actual}")]
    WrongGroup {
        expected: &'static str,
        actual: String,
    },
    #[error("right-hand side coordinate {index} is not a polynomial")]
    NonPolynomialAlpha { index: usize },
    #[error("translate between solutions is not a constant point: {0}")]
    NotConstant(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Short stable identifier, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ModulusMismatch { .. } => "modulus_mismatch",
            Error::ZeroDenominator => "zero_denominator",
            Error::LevelMismatch { .. } => "level_mismatch",
            Error::NonUnit => "non_unit",
            Error::NotAPthPower => "not_a_pth_power",
            Error::ProjectionAboveLevel { .. } => "projection_above_level",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::PointNotOnVariety => "point_not_on_variety",
            Error::ArcNotOnVariety => "arc_not_on_variety",
            Error::NotOverConstants => "not_over_constants",
            Error::OutsideDomain => "outside_domain",
            Error::NotInIdentityFiber => "not_in_identity_fiber",
            Error::WrongGroup { .. } => "wrong_group",
            Error::NonPolynomialAlpha { .. } => "non_polynomial_alpha",
            Error::NotConstant(_) => "not_constant",
            Error::InvalidPresentation(_) => "invalid_presentation",
            Error::Consistency(_) => "consistency",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
