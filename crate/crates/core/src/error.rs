use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column {column} of the boundary matrix is not in the span of the cycles")]
    SubspaceViolation { column: usize },

    #[error("not a complex: d^{degree} composed with the previous differential is nonzero")]
    NotAComplex { degree: i64 },

    #[error("coefficients must form a field: {0}")]
    NotAField(String),

    #[error("double complex is not bounded: {0}")]
    NotBounded(String),

    #[error("composition is not associative on ({f}, {g}, {h}): (h.g).f != h.(g.f)")]
    AssocViolation { f: String, g: String, h: String },

    #[error("identity law fails: {0}")]
    IdentityViolation(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("degree conventions differ: {0}")]
    ConventionMismatch(String),

    #[error("{what} exceeds the bound {bound}")]
    TooLarge { what: String, bound: usize },

    #[error("module axiom fails: {0}")]
    ModuleAxiomFailure(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
