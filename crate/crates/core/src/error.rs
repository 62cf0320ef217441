use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    /// Mathematically false statement or failed verification (exit 1).
    MathFalse,
    /// Malformed or inconsistent input (exit 2).
    Input,
    /// The engine cannot decide within its configured capabilities (exit 3).
    Capability,
}

#[derive(Debug, Error)]
pub enum Error {
    // ---- input / validation ----
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("path {path:?} is not composable at step {step}")]
    NonComposablePath { path: Vec<String>, step: usize },
    #[error("relation mixes sources or targets: {0}")]
    RelationEndpoints(String),
    #[error("zero coefficient in relation term {0}")]
    ZeroCoefficient(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("unknown module label `{0}`")]
    UnknownLabel(String),
    #[error("ambiguous module label `{0}`")]
    AmbiguousLabel(String),

    // ---- mathematically false / failed checks ----
    #[error("not a torsion class: {witness}")]
    NotTorsionClass { witness: String },
    #[error("not strictly nested at ({lower}, {upper}): {detail}")]
    NotNested {
        lower: String,
        upper: String,
        detail: String,
    },
    #[error("decomposition not compatible: {0}")]
    NotCompatible(String),
    #[error("not a stratifying system: {0}")]
    NotStratifying(String),
    #[error("module is not basic: summand `{0}` repeats")]
    NotBasic(String),
    #[error("module is not tau-rigid: {0}")]
    NotTauRigid(String),
    #[error("module is not filtered by the system: {0}")]
    NotFiltered(String),
    #[error("induction hypothesis fails at index `{index}`: {detail}")]
    InductionHypothesis { index: String, detail: String },
    #[error("check failed: {0}")]
    CheckFailed(String),

    // ---- capability ----
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("non-split endomorphism ring: {0}")]
    NonSplitEndomorphismRing(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn exit_class(&self) -> ExitClass {
        use Error::*;
        match self {
            NotTorsionClass { .. }
            | NotNested { .. }
            | NotCompatible(_)
            | NotStratifying(_)
            | NotBasic(_)
            | NotTauRigid(_)
            | NotFiltered(_)
            | InductionHypothesis { .. }
            | CheckFailed(_) => ExitClass::MathFalse,
            CapExceeded(_) | NonSplitEndomorphismRing(_) => ExitClass::Capability,
            _ => ExitClass::Input,
        }
    }
}
