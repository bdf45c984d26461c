use alloc::string::String;

use crate::error::Error;
use crate::ids::{EdgeId, PathId};
use crate::model::{EquivalenceLayer, FiniteGroupoid, Typoid};
use crate::partition::CellPartition;
use crate::tables::ArrowTables;
use crate::validate::validate_groupoid;

/// The typoid whose edges are the paths of `g`: `eqv = refl`, `* = .`,
/// `^-1` the path inverse, every cell a singleton and `idtoeqv` the identity.
pub fn equality_typoid(g: &FiniteGroupoid, name: impl Into<String>) -> Result<Typoid, Error> {
    let name = name.into();
    let report = validate_groupoid(g);
    if !report.is_valid() {
        return Err(Error::InvalidTypoid {
            name,
            report: report.into(),
        });
    }
    Ok(equality_unchecked(g, name))
}

pub(crate) fn equality_unchecked(g: &FiniteGroupoid, name: String) -> Typoid {
    let edge = |p: PathId| EdgeId::new(p.index());
    let path = |e: EdgeId| PathId::new(e.index());
    let tables = ArrowTables::from_fn(
        g.term_count(),
        g.paths().map(|p| g.ends(p)).collect(),
        |x| edge(g.refl(x)),
        |a, b| edge(g.comp(path(a), path(b))),
        |a| edge(g.inv(path(a))),
    );
    let cells = CellPartition::discrete(g.path_count());
    let idtoeqv = g.paths().map(|p| Some(edge(p))).collect();
    Typoid::from_parts(name, g.clone(), EquivalenceLayer::new(tables, cells), idtoeqv)
}
