use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    // ---- input / validation ----
    #[error("element {element} is outside the ground set 1..={ground}")]
    IndexOutOfRange { element: usize, ground: usize },

    #[error("ground set of size {size} exceeds the cap of {cap} elements (set MATROVAR_MAX_GROUND to raise it, at most 63)")]
    GroundTooLarge { size: usize, cap: usize },

    #[error("element {element} is a loop; only loopless matroids are supported")]
    Loop { element: usize },

    #[error("circuit axiom violated: {smaller:?} is contained in {larger:?}")]
    NestedCircuits {
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },

    #[error("circuit axiom violated: {0}")]
    AxiomViolation(String),

    #[error("declared rank {declared} differs from computed rank {computed}")]
    RankMismatch { declared: usize, computed: usize },

    #[error("not a paving matroid: hyperplanes {first:?} and {second:?} share {shared} points (at most {max} allowed)")]
    NotPavingIntersection {
        first: Vec<usize>,
        second: Vec<usize>,
        shared: usize,
        max: usize,
    },

    #[error("hyperplane {hyperplane:?} has {size} points, needs at least {min}")]
    HyperplaneTooSmall {
        hyperplane: Vec<usize>,
        size: usize,
        min: usize,
    },

    #[error("ground set of size {ground} is too small for a rank-{rank} paving matroid")]
    GroundTooSmall { ground: usize, rank: usize },

    #[error("malformed input: {0}")]
    Schema(String),

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    // ---- linear algebra ----
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no admissible random vector found after {retries} retries (bound {bound}); try a larger bound")]
    GenericityFailure { retries: usize, bound: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    // ---- classification / realization preconditions ----
    #[error("operation requires a rank-3 simple point-line configuration, got {0}")]
    NotPointLine(String),

    #[error("operation requires a paving matroid")]
    NotPaving,

    #[error("matroid is not nilpotent")]
    NotNilpotent,

    #[error("matroid is not weak-nilpotent")]
    NotWeakNilpotent,

    #[error("matroid is not solvable")]
    NotSolvable,

    #[error("matroid is not special: {0}")]
    NotSpecial(String),

    #[error("P_M is not empty: {0:?}")]
    NonEmptyP(Vec<usize>),

    #[error("vectors are not in the circuit variety: circuit {0:?} is independent")]
    NotInCircuitVariety(Vec<usize>),

    #[error("vectors do not realize the matroid: {0}")]
    NotRealization(String),

    #[error("vector collection does not cover element {0}")]
    MissingElement(usize),

    #[error("invalid incidence for substitution: {0}")]
    Incidence(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Input, schema and validation problems (as opposed to mathematical
    /// failures of a precondition or certificate).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::IndexOutOfRange { .. }
                | Error::GroundTooLarge { .. }
                | Error::Loop { .. }
                | Error::NestedCircuits { .. }
                | Error::AxiomViolation(_)
                | Error::RankMismatch { .. }
                | Error::NotPavingIntersection { .. }
                | Error::HyperplaneTooSmall { .. }
                | Error::GroundTooSmall { .. }
                | Error::Schema(_)
                | Error::BadRational(_)
                | Error::Json(_)
                | Error::DimensionMismatch { .. }
                | Error::MissingElement(_)
        )
    }
}
