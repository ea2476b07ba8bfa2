use thiserror::Error;

use crate::exactalg::AlgError;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("the point is the singular point of the cubic")]
    HitsSingularPoint,
    #[error("parameter gives a point with y = 0")]
    ZeroY,
    #[error("order by repeated addition ({by_addition:?}) disagrees with the division-polynomial test ({by_phi:?})")]
    AnomalousOrder {
        by_addition: Option<u32>,
        by_phi: Option<u32>,
    },
    #[error("field not supported here: {0}")]
    FieldUnsupported(String),
    #[error("point does not have the requested order {0}")]
    WrongOrder(u32),
    #[error("the curve is singular")]
    SingularCurve,
    #[error("discriminant vanishes identically")]
    DegenerateSurface,
    #[error("fiber census requires a smooth surface")]
    SmoothnessViolated,
    #[error("the point lies over a base point of the anticanonical pencil")]
    IsBasePoint,
    #[error("the point is 2-torsion on its fiber (y = 0)")]
    TwoTorsionPoint,
    #[error("the section is a (-1)-curve: F5 and F6 both vanish")]
    MinusOneCurve,
    #[error("F4 = F5 = F6 = 0 has a positive-dimensional component")]
    PositiveDimensional,
    #[error("F5 and F6 vanish at the sample point")]
    BothVanish,
    #[error("Q has order three: c1 = 0, the curve is not a quadratic cover")]
    OrderThree,
    #[error("the quartic is singular")]
    SingularQuartic,
    #[error("no rational nodal fiber")]
    NoRationalNodalFiber,
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("surface is not smooth")]
    NotSmooth,
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("unsupported fiber type for base change: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("time budget of {0} seconds exhausted")]
    TimeBudget(u64),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }
}
