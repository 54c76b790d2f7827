use thiserror::Error;

/// All failure modes surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {degree} outside complex window [{lo}, {hi}]")]
    DegreeOutOfWindow { degree: usize, lo: usize, hi: usize },

    #[error("chain map does not commute with the differential at degree {degree}")]
    NotAChainMap { degree: usize },

    #[error("missing composite: no value declared for {g} o {f}")]
    MissingComposite { g: String, f: String },

    #[error("associativity violation on the triple ({h}, {g}, {f})")]
    AssociativityViolation { h: String, g: String, f: String },

    #[error("identity law violation for morphism {morphism}")]
    IdentityViolation { morphism: String },

    #[error("morphism {morphism} references unknown endpoint {endpoint}")]
    DanglingEndpoint { morphism: String, endpoint: String },

    #[error("{context}: diagram base does not match the expected category")]
    BaseMismatch { context: String },

    #[error("category has retractions; the reduced complex is undefined")]
    HasRetractions,

    #[error("simplex diagram truncated at dimension {max_dim}, but degree {needed} is required")]
    TruncationTooShallow { max_dim: usize, needed: usize },

    #[error("no canonical comparison unit for this pair of diagrams; supply one explicitly")]
    NoCanonicalUnit,

    #[error("path count {count} in degree {degree} exceeds the cap of {cap}")]
    PathCapExceeded { degree: usize, count: usize, cap: usize },

    #[error("left Kan extension value at {anchor} has torsion and is not a free-valued diagram")]
    LanNotFree { anchor: String },

    #[error("mapping is not a functor: {reason}")]
    NotAFunctor { reason: String },

    #[error("matrix shape mismatch: {context}")]
    ShapeMismatch { context: String },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("unresolved name {name}: {context}")]
    Unresolved { name: String, context: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
