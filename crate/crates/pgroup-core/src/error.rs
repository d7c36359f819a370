use thiserror::Error;

/// Errors shared by all engine modules.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Inversion of the zero field element.
    #[error("division by zero in the cyclotomic field")]
    ZeroInverse,

    /// Matrix inversion of a singular matrix.
    #[error("matrix is singular and cannot be inverted")]
    NotInvertible,

    /// Mismatched matrix dimensions or vector lengths.
    #[error("shape mismatch: {0}")]
    ShapeError(String),

    /// An element-order computation exceeded its cap; the element may have
    /// infinite order.
    #[error("element order exceeds cap {cap}")]
    OrderCapExceeded { cap: u64 },

    /// The element order does not divide the cyclotomic root order, so its
    /// eigenvalues are not all representable in the current field.
    #[error("element order {order} does not divide the cyclotomic root order {root_order}")]
    OrderNotInContext { order: u64, root_order: u64 },

    /// Group closure exceeded the element cap; the group may be infinite.
    #[error("group closure exceeds cap {cap} elements")]
    ClosureCapExceeded { cap: usize },

    /// A p-group-only computation was applied to a group whose order is not
    /// a power of p.
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: usize, p: u64 },

    /// Exhaustive generator search refused a group above its cap.
    #[error("brute-force search refused: group order {order} exceeds cap {cap}")]
    BruteForceCapExceeded { order: usize, cap: usize },

    /// A claimed subset contains elements outside the ambient group.
    #[error("not a subset of the ambient group: {0}")]
    NotASubset(String),

    /// A quotient or extension was requested by a non-normal subgroup.
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    /// An integer matrix with determinant other than +/-1.
    #[error("integer matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    /// Semi-invariance query on the zero polynomial.
    #[error("the zero polynomial has no semi-invariance character")]
    ZeroPolynomial,

    /// Unknown catalog or check identifier.
    #[error("unknown identifier: {0}")]
    UnknownId(String),

    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid input that violates a documented constraint.
    #[error("validation error: {0}")]
    Validation(String),

    /// The fixed-subspace character enumeration exceeded its tuple cap.
    #[error("fixed-subspace enumeration exceeds cap {cap} character tuples")]
    FixedTupleCapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a resource cap rather than bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::ClosureCapExceeded { .. }
                | Error::BruteForceCapExceeded { .. }
                | Error::FixedTupleCapExceeded { .. }
        )
    }
}
