use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("arity-0 cochains are not accepted by {0}")]
    ZeroArity(&'static str),
    #[error("cochain does not intertwine the twist maps")]
    NotCompatible,
    #[error("not a multiplicative Hom-Lie algebra: {0}")]
    NotHomLie(String),
    #[error("not a representation: {0}")]
    NotRepresentation(String),
    #[error("not a Hom-Lie algebra action: {0}")]
    NotAction(String),
    #[error("not a morphism of Hom-Lie algebras: {0}")]
    NotMorphism(String),
    #[error("not Hom-associative: {0}")]
    NotHomAssociative(String),
    #[error("not a Lie algebra homomorphism: {0}")]
    NotLieHomomorphism(String),
    #[error("not a Nijenhuis operator")]
    NotNijenhuis,
    #[error("not a relative Rota-Baxter operator of the given weight")]
    NotRelativeRotaBaxter,
    #[error("cochain is not a cocycle of the selected complex")]
    NotCocycle,
    #[error("not a valid deformation: {0}")]
    InvalidDeformation(String),
    #[error("induced structure fails verification: {0}")]
    InducedStructure(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
