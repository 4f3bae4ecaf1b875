use thiserror::Error;

/// Failures raised by the library.
///
/// Every variant except [`Error::InvalidInput`] is a domain condition on
/// well-formed data. The CLI relies on [`Error::name`] being stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Unbounded: the polyhedron has a nonzero recession cone")]
    Unbounded,
    #[error("NotSimple: some vertex lies on more facets than the dimension")]
    NotSimple,
    #[error("NotPointed: the cone contains a line")]
    NotPointed,
    #[error("TorsionQuotient: weight row lattice is not saturated (invariant factors {0:?})")]
    TorsionQuotient(Vec<String>),
    #[error("EmptyPolyhedron: the polyhedron has no points")]
    EmptyPolyhedron,
    #[error("NonSpanning: inequality normals do not span the ambient space")]
    NonSpanning,
    #[error("LinealityPresent: the polyhedron contains a line")]
    LinealityPresent,
    #[error("NotInSemigroup: exponent {index} would be {value}")]
    NotInSemigroup { index: usize, value: String },
    #[error("AllZero: every positive-degree invariant vanishes at the point")]
    AllZero,
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::Unbounded => "Unbounded",
            Error::NotSimple => "NotSimple",
            Error::NotPointed => "NotPointed",
            Error::TorsionQuotient(_) => "TorsionQuotient",
            Error::EmptyPolyhedron => "EmptyPolyhedron",
            Error::NonSpanning => "NonSpanning",
            Error::LinealityPresent => "LinealityPresent",
            Error::NotInSemigroup { .. } => "NotInSemigroup",
            Error::AllZero => "AllZero",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for conditions on well-formed input, false for malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::InvalidInput(_))
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
