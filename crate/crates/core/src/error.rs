use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("element mixes module terms (ending in w) with algebra terms")]
    MixedElement,

    #[error("psi must vanish on {0} (forced by the commutator relations)")]
    ForbiddenPsiValue(String),

    #[error("the universal module requires nonsingular psi: psi(L1), psi(L2), psi(I1) all nonzero")]
    SingularPsi,

    #[error("a reduced module requires psi not identically zero")]
    ZeroPsi,

    #[error("descent requires psi(I1) != 0: every reduction step's leading coefficient is a multiple of it")]
    DescentNeedsPsiI1,

    #[error("descent stuck at {vector}: no dot-action operator with index <= {max_index} decreases the measure")]
    DescentStuck { vector: String, max_index: i64 },

    #[error("descent found a Whittaker vector outside the span of the cyclic vector: {0}")]
    WhittakerCounterexample(String),

    #[error("nilpotency cap {cap} exhausted for {generator}")]
    CapExhausted { generator: String, cap: u32 },

    #[error("submodule membership needs at least one generator")]
    EmptyGenerators,

    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),

    #[error("vectors belong to different module specs")]
    SpecMismatch,

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
