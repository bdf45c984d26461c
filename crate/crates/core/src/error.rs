use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::ids::{EdgeId, PathId};
use crate::report::ValidationReport;
use crate::univalence::NotUnivalent;

/// Which enumeration bound a construction ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    MaxTerms,
    MaxEdges,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::MaxTerms => "max-terms",
            Bound::MaxEdges => "max-edges",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edges {0} and {1} lie in different hom-sets")]
    HomMismatch(EdgeId, EdgeId),
    #[error("typoid `{name}` is invalid: {report}")]
    InvalidTypoid {
        name: String,
        report: Box<ValidationReport>,
    },
    #[error("cannot compose `{first}` into `{second}`: `{produces}` is not `{expects}`")]
    Mismatch {
        first: String,
        second: String,
        produces: String,
        expects: String,
    },
    #[error("typoid `{name}` is not univalent: {witness}")]
    NotUnivalent { name: String, witness: NotUnivalent },
    #[error("{bound} limit of {limit} exceeded")]
    Resource { bound: Bound, limit: usize },
    #[error("provenance does not describe typoid `{0}`")]
    Provenance(String),
    #[error("typoid `{0}` is not a truncation")]
    NotTruncation(String),
    #[error("path {path} has no image compatible with the term map")]
    NoPathAction { path: PathId },
    #[error("term map has {got} entries, expected {expected}")]
    TermMapLength { expected: usize, got: usize },
    #[error("term map sends a term outside the target")]
    TermOutOfRange,
    #[error("path action is not a strict functor: {0}")]
    BadPathAction(Box<ValidationReport>),
}
