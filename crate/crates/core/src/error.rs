use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd undefined: both polynomials are zero")]
    GcdUndefined,
    #[error("root count undefined: the form is identically zero")]
    RootCountUndefined,
    #[error("non-uniform matrix: entry degrees {0:?} differ")]
    NonUniformMatrix(Vec<usize>),
    #[error("coefficient vector of length {got} does not describe a form of degree {degree}")]
    BadCoefficients { degree: usize, got: usize },
    #[error("divisor classes belong to different bundle contexts")]
    ContextMismatch,
    #[error("formula inconsistency in {quantity}: closed form {closed}, reconstruction {reconstructed}")]
    FormulaInconsistency {
        quantity: &'static str,
        closed: String,
        reconstructed: String,
    },
    #[error("H not big: d = {0} must be positive")]
    NotBig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index out of range: rho = {0} must satisfy 0 < rho < 1")]
    IndexOutOfRange(String),
    #[error("hypothesis violated: rho = {0} must satisfy 1/3 <= rho < 1")]
    HypothesisViolated(String),
    #[error("unknown table row `{0}`")]
    UnknownRow(String),
    #[error("no applicable hypotheses: at least one flag must be set")]
    NoApplicableHypotheses,
    #[error("surface case out of scope: dim = {0}, need dim >= 3")]
    SurfaceOutOfScope(i64),
    #[error("missing section coefficient l[{i}{j}{k}]")]
    MissingCoefficient { i: usize, j: usize, k: usize },
    #[error("section is everywhere-degenerate (non-generic): determinant vanishes identically")]
    DegenerateSection,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
