use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("extension degree must be positive, got {0}")]
    InvalidDegree(usize),
    #[error("GF({p}^{k}) exceeds the table size limit")]
    FieldTooLarge { p: u64, k: usize },
    #[error("modulus is not an irreducible monic polynomial of the stated degree")]
    InvalidModulus,
    #[error("fields do not embed: {0}")]
    NoEmbedding(String),
    #[error("the zero polynomial has no factorisation")]
    ZeroPolynomial,
    #[error("polynomial has degree zero in the eliminated variable")]
    DegreeZero,
    #[error("all 27 coefficients are zero")]
    ZeroTensor,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("no coordinate change adapts the curve at this point")]
    AdaptationFailure,
    #[error("line is not a point of the dual curve")]
    NotOnDual,
    #[error("polynomial is not a {0}-th power")]
    NotAQthPower(u64),
    #[error("zero locus is not finite")]
    NotFinite,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("Milnor number is infinite")]
    InfiniteMilnor,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("point lies on the auxiliary line")]
    AuxiliaryDegenerate,
    #[error("no nonzero form of degree {0} vanishes on the sampled dual points")]
    NoKernel(usize),
    #[error("kernel at degree {degree} has dimension {dim}")]
    KernelTooBig { degree: usize, dim: usize },
    #[error("no curve passing the genericity checks after {0} attempts")]
    GenericityFailure(usize),
    #[error("no coordinate change in general position after {0} attempts")]
    NoGenericCoordinates(usize),
    #[error("cross-validation failed: {0}")]
    CrossValidationFailure(String),
    #[error("sum of (mu + r - 1) over singular points is odd ({0})")]
    OddSum(u64),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
