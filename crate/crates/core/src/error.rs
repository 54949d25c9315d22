use thiserror::Error;

use crate::semigroup::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters (a, b) = ({a}, {b}): {reason}")]
    Params {
        a: i64,
        b: i64,
        reason: &'static str,
    },

    #[error("cell ({x}, {y}) is not in the gap diagram", x = .0.x, y = .0.y)]
    OutsideGap(Cell),

    #[error("no gap with value {0}")]
    UnknownValue(i64),

    #[error("cell ({x}, {y}) is not in the subdiagram", x = .0.x, y = .0.y)]
    OutsideSubdiagram(Cell),

    #[error("invalid subdiagram shape: {0}")]
    Shape(String),

    #[error("objects belong to different gap diagrams: ({0}, {1}) vs ({2}, {3})")]
    MismatchedParents(i64, i64, i64, i64),

    #[error("family is not nested: layer {0} is not contained in layer {1}")]
    NotNested(usize, usize),

    #[error("vector is not in the cone: {0}")]
    NotInCone(String),

    #[error("arrow ({src}) -> ({dst}) is not in the boundary arrow set")]
    ArrowNotInSet { src: String, dst: String },

    #[error("enumeration refused: {what} would need about {estimate} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        estimate: String,
        cap: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
