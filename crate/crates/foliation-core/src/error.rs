//! Domain errors. Variant names are part of the CLI contract: they are
//! serialized verbatim in JSON error reports.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DegenerateField: the vector field is a multiple of the radial field")]
    DegenerateField,
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
    #[error("InvariantLine: the supplied line is invariant for the foliation")]
    InvariantLine,
    #[error("NonIsolatedSingularity: the chart coefficients share a factor through the point")]
    NonIsolatedSingularity,
    #[error("NotFinite: ideal colength did not stabilize below the degree cap {cap}")]
    NotFinite { cap: usize },
    #[error("InsufficientTruncation: {0}")]
    InsufficientTruncation(String),
    #[error("NotReduced: the singularity is neither hyperbolic nor a saddle-node with computable data")]
    NotReduced,
    #[error("Indistinguishable: the series agree to the full truncation order")]
    Indistinguishable,
    #[error("RegularPoint: the origin is not a singular point")]
    RegularPoint,
    #[error("DepthExceeded: blow-up depth cap {cap} reached with unresolved singularities")]
    DepthExceeded { cap: usize },
    #[error("Unresolved: the reduction tree has unresolved leaves")]
    Unresolved,
    #[error("Collapse: the pullback vanishes identically")]
    Collapse,
    #[error("DegreeTooSmall: requested degree {requested} is below the minimal degree {minimal}")]
    DegreeTooSmall { requested: usize, minimal: usize },
    #[error("Obstructed: no formal solution extends the jet (order {order})")]
    Obstructed { order: usize },
    #[error("Obstruction: the formal equation has no solution at this order")]
    Obstruction,
    #[error("TooFewTerms: the growth fit needs at least {needed} nonzero coefficients, got {got}")]
    TooFewTerms { needed: usize, got: usize },
    #[error("DegeneratePencil: G dH - H dG vanishes identically")]
    DegeneratePencil,
    #[error("ResidueRelationViolated: the residues do not satisfy sum(lambda_i * d_i) = 0")]
    ResidueRelationViolated,
    #[error("InvalidParameters: {0}")]
    InvalidParameters(String),
    #[error("ParseError: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable machine name of the error, used in JSON reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegenerateField => "DegenerateField",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::InvariantLine => "InvariantLine",
            Error::NonIsolatedSingularity => "NonIsolatedSingularity",
            Error::NotFinite { .. } => "NotFinite",
            Error::InsufficientTruncation(_) => "InsufficientTruncation",
            Error::NotReduced => "NotReduced",
            Error::Indistinguishable => "Indistinguishable",
            Error::RegularPoint => "RegularPoint",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::Unresolved => "Unresolved",
            Error::Collapse => "Collapse",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::Obstructed { .. } => "Obstructed",
            Error::Obstruction => "Obstruction",
            Error::TooFewTerms { .. } => "TooFewTerms",
            Error::DegeneratePencil => "DegeneratePencil",
            Error::ResidueRelationViolated => "ResidueRelationViolated",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::ParseError(_) => "ParseError",
        }
    }
}
