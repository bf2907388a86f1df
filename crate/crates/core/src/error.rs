use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed specification: {0}")]
    MalformedSpec(String),
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: usize,
    },
    #[error("quotient product is not well defined: {0}")]
    IllDefinedProduct(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("operation requires an associative ring, `{0}` is not")]
    NotAssociative(String),

    #[error("semigroup operation is not associative at ({0}, {1}, {2})")]
    SemigroupNotAssociative(String, String, String),
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("element {0} has more than one inverse")]
    NonUniqueInverse(String),
    #[error("malformed groupoid: {0}")]
    MalformedGroupoid(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("components do not sum to the ring (missing {0})")]
    SumNotWhole(String),
    #[error("R_{s} R_{t} escapes R_(st): {witness}")]
    ProductEscapes {
        s: String,
        t: String,
        witness: String,
    },
    #[error("system is not graded")]
    NotGraded,
    #[error("element {0} is not a nonzero homogeneous element of the given component")]
    NotHomogeneous(String),

    #[error("domain of {0} is not a two-sided ideal")]
    NotIdeal(String),
    #[error("map for {0} is not a ring isomorphism: {1}")]
    NotIso(String, String),
    #[error("domains do not sum to the ring: {0}")]
    AxiomI(String),
    #[error("domain compatibility fails: {0}")]
    AxiomII(String),
    #[error("composition compatibility fails: {0}")]
    AxiomIII(String),
    #[error("groupoid action axiom fails: {0}")]
    GroupoidAction(String),

    #[error("canonical projection to the base ring does not vanish on the relation ideal: {0}")]
    TNotWellDefined(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unresolved reference `{0}`")]
    UnresolvedRef(String),
    #[error("bad scenario parameters: {0}")]
    BadParams(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, needed: u128, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
