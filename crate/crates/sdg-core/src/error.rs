use thiserror::Error;

/// Errors raised by the exact kernel.
///
/// Domain errors (`DivisionByZero`, `SqrtNonPositive`, ...) signal that a
/// precondition on the mathematical inputs failed; resource errors
/// (`SqrtDepthExceeded`, `GeneratorLimit`) signal that a configurable cap was
/// hit. A resource error is never silently turned into a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root requires a strictly positive operand")]
    SqrtNonPositive,

    #[error("square-root nesting depth {depth} exceeds the cap {cap}")]
    SqrtDepthExceeded { depth: u32, cap: u32 },

    #[error("too many distinct square-root generators in one value")]
    GeneratorLimit,

    #[error("element is not invertible (pure part is zero)")]
    NotInvertible,

    #[error("square root of an element whose pure part is not positive")]
    PurePartNotPositive,

    #[error("unknown batch #{0}")]
    UnknownBatch(u32),

    #[error("operands belong to different algebra contexts")]
    ContextMismatch,

    #[error("points are not apart (difference is not a proper vector)")]
    NotApart,

    #[error("point does not lie on the figure")]
    NotOnFigure,

    #[error("figures do not touch: {0}")]
    NotTouching(&'static str),

    #[error("sphere radius must have positive pure part")]
    InvalidRadius,

    #[error("hyperplane normal must be a proper vector")]
    ImproperNormal,

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),

    #[error("hypothesis of the operation fails: {0}")]
    HypothesisFails(&'static str),

    #[error("foot-uniqueness assumption violated: sample {sample} also has foot {other}")]
    FootNotUnique { sample: usize, other: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
