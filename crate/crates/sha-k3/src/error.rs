use crate::mat::Rat;

/// Crate-wide error type. Variants mirror the failure modes of the lattice
/// and presentation operations; the CLI maps all of them to exit code 1.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("gram matrix must be symmetric")]
    NonSymmetricGram,

    #[error("the bilinear form is degenerate")]
    DegenerateForm,

    #[error("not a sublattice: {0}")]
    NotASublattice(String),

    #[error("the class is zero")]
    ZeroClass,

    #[error("the sublattice is not primitive in its ambient lattice")]
    NotPrimitive,

    #[error("embedding basis does not reproduce the gram matrix")]
    EmbeddingMismatch,

    #[error("morphism is not well defined on the presentations")]
    NotWellDefined { witness: Vec<Rat> },

    #[error("quotient is not presentable as a lattice pair")]
    NotPresentable,

    #[error("class is imprimitive (content {0}); pass allow_imprimitive to proceed")]
    ImprimitiveClass(crate::mat::Int),

    #[error("no preimage: the degree is not in the image of the pairing map")]
    NoPreimage,

    #[error("vector is not in the carrier of the presentation")]
    NotInCarrier,

    #[error("fibre class must be isotropic")]
    NotIsotropic,

    #[error("p and r must be coprime")]
    NotCoprime,

    #[error("operation requires an embedding into the K3 lattice")]
    MissingEmbedding,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
