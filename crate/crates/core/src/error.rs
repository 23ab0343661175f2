use alloc::string::String;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("order relation has a cycle through {0:?}")]
    CycleDetected(String),
    #[error("quiver is not finite dimensional: relation-free path {0:?} reaches the length bound")]
    NotFiniteDimensional(String),
    #[error("object {0:?} is neither a source nor a sink")]
    NotASourceOrSink(String),
    #[error("inner vector {index} is not in the span of the outer subspace")]
    InclusionViolation { index: usize },
    #[error("degree {degree} has dimension {dim}, over the budget of {budget}")]
    DimensionOverflow { degree: usize, dim: usize, budget: usize },
    #[error("category fails validation: {0}")]
    InvalidCategory(String),
    #[error("bimodule fails validation: {0}")]
    InvalidBimodule(String),
    #[error("group action fails validation: {0}")]
    InvalidAction(String),
    #[error("grading fails validation: {0}")]
    InvalidGrading(String),
    #[error("grading is not strongly graded at object {object:?}, degree {element:?}")]
    NotStronglyGraded { object: String, element: String },
    #[error("tensor quotient is inconsistent: {0}")]
    TensorQuotientDegenerate(String),
    #[error("cochain in degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("transported family is not invariant: {0}")]
    NotInvariant(String),
    #[error("characteristic {characteristic} divides the group order {order}")]
    CharDividesOrder { characteristic: u64, order: usize },
    #[error("window of {stages} stages is too short for {trailing} trailing stable stages")]
    WindowTooShort { stages: usize, trailing: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
