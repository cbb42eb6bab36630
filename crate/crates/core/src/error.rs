use thiserror::Error;

use crate::permgroup::Permutation;

/// Crate-wide error type. Variants are grouped by the subsystem that raises
/// them; `Internal` is reserved for dual-route consistency assertions that
/// should never fire on valid inputs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // permutations and groups
    #[error("images {0:?} are not a bijection of 1..=n")]
    InvalidPermutation(Vec<usize>),
    #[error("cannot parse cycle notation {input:?}: {reason}")]
    ParseCycles { input: String, reason: String },
    #[error("subgroup closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group element {element} does not fix point {point}")]
    NotFixing { element: Permutation, point: usize },
    #[error("group element {element} does not map the point set onto itself")]
    NotInvariant { element: Permutation },
    #[error("point {point} out of range 1..={degree}")]
    BadPoint { point: usize, degree: usize },

    // dense linear algebra
    #[error("matrix entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("ragged rows: row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not Hermitian: |H - H*| = {residual:.3e} at entry ({row},{col})")]
    NotHermitian { residual: f64, row: usize, col: usize },
    #[error("matrix is not positive definite: pivot {pivot:.3e} at index {index}")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("degree {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("matrix is not upper triangular: |entry ({row},{col})| = {value:.3e}")]
    NotUpperTriangular { row: usize, col: usize, value: f64 },
    #[error("matrix is singular within tolerance")]
    Singular,

    // representations
    #[error("unknown representation name {0:?}")]
    UnknownName(String),
    #[error("representation {name:?} is incompatible with the group: {reason}")]
    IncompatibleGroup { name: String, reason: String },
    #[error("generator images do not extend to a homomorphism: element {element} differs by {discrepancy:.3e}")]
    InconsistentHomomorphism {
        element: Permutation,
        discrepancy: f64,
    },
    #[error("representation matrix for {element} is not unitary: |MM* - I| = {residual:.3e}")]
    NotUnitary { element: Permutation, residual: f64 },
    #[error("permutation {0} is not a group element")]
    NotInGroup(Permutation),
    #[error("no image supplied for generator {0}")]
    MissingGeneratorImage(Permutation),
    #[error("representation group does not match the supplied group")]
    RepGroupMismatch,

    // generalized matrix functions and tensors
    #[error("vector is not unit: |u| = {norm}")]
    NotUnit { norm: f64 },
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    // dual-route consistency assertions
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of internal dual-route assertions, as opposed to
    /// rejected inputs.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
