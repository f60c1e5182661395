use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeter(String),
    #[error("generator index {0} out of range 1..={1}")]
    GeneratorOutOfRange(usize, usize),
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("subset {0:?} is not of finite type")]
    NotFiniteType(Vec<usize>),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("map is not order-preserving: {0}")]
    NotOrderPreserving(String),
    #[error("assignment is not functorial: {0}")]
    NotFunctorial(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("invalid graded algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("elements belong to different trees")]
    TreeMismatch,
    #[error("word {0:?} is not a node of the tree (depth {1})")]
    NotATreeNode(Vec<usize>, usize),
    #[error("weak order relation does not hold: {0}")]
    NotComparable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
