//! Typoid-forming constructions.

mod completion;
mod equality;
mod exponential;
mod product;
mod truncation;
mod universe;

pub(crate) use completion::complete_layer;
pub use completion::univalent_completion;
pub use equality::equality_typoid;
pub(crate) use equality::equality_unchecked;
pub use exponential::{exponential_typoid, ExpLimits, ExponentialEdge, ExponentialProvenance, ExponentialTerm};
pub use product::{pairing, product_typoid, projections, FactorShape, ProductProvenance};
pub use truncation::{is_truncation, morphism_into_truncation, truncate};
pub use universe::{permutation_groupoid, universe_typoid};

use alloc::string::String;

use crate::error::Error;
use crate::model::Typoid;
use crate::validate::validate_typoid;

pub(crate) fn require_valid(t: &Typoid) -> Result<(), Error> {
    let report = validate_typoid(t);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidTypoid {
            name: String::from(t.name()),
            report: report.into(),
        })
    }
}
