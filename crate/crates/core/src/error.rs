use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Coordinates are reported 1-based, the same way they appear in family
/// files and reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::MAX_DIM)]
    DimensionOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coord} is out of range for dimension {dim}")]
    CoordinateOutOfRange { coord: usize, dim: usize },

    #[error("point mask {mask:#b} has bits outside dimension {dim}")]
    PointOutOfRange { mask: u32, dim: usize },

    #[error("weight p_{coord} = {value} is outside [0, 1]")]
    WeightOutOfRange { coord: usize, value: String },

    #[error("weight p_{coord} = {value} lies on the boundary; 0 < p_i < 1 is required")]
    BoundaryWeight { coord: usize, value: String },

    #[error("weight p_{coord} = {value} is below 1/2")]
    WeightBelowHalf { coord: usize, value: String },

    #[error("point {0} is not a member of the family")]
    PointNotInFamily(String),

    #[error("family is empty")]
    EmptyFamily,

    #[error("family is not union-closed")]
    NotUnionClosed,

    #[error("family is not simply rooted")]
    NotSimplyRooted,

    #[error("family does not contain the empty set")]
    MissingEmptySet,

    #[error("family has fewer than {0} members")]
    FamilyTooSmall(usize),

    #[error("{0} is not a hitting set of the family")]
    NotHitting(String),

    #[error("{set} is not a minimal hitting set: element {element} has no private member")]
    NotMinimal { set: String, element: usize },

    #[error("level {level} is out of range 0..={dim}")]
    LevelOutOfRange { level: usize, dim: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
