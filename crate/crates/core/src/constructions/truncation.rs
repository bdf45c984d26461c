use alloc::format;
use alloc::string::String;

use crate::error::Error;
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{EquivalenceLayer, Typoid};
use crate::morphism::TypoidMorphism;
use crate::partition::CellPartition;
use crate::search::find_path_action;
use crate::tables::ArrowTables;

/// Keeps the base groupoid and replaces the edge layer by exactly one edge
/// per ordered pair of terms; edge `(x, y)` has id `x * n + y`.
pub fn truncate(t: &Typoid) -> Typoid {
    let n = t.term_count();
    let edge = |x: TermId, y: TermId| EdgeId::new(x.index() * n + y.index());
    let ends = (0..n * n).map(|i| (TermId::new(i / n), TermId::new(i % n))).collect();
    let end_of = |e: EdgeId| (TermId::new(e.index() / n), TermId::new(e.index() % n));
    let tables = ArrowTables::from_fn(
        n,
        ends,
        |x| edge(x, x),
        |a, b| edge(end_of(a).0, end_of(b).1),
        |a| {
            let (x, y) = end_of(a);
            edge(y, x)
        },
    );
    let base = t.base();
    let idtoeqv = base
        .paths()
        .map(|p| {
            let (x, y) = base.ends(p);
            Some(edge(x, y))
        })
        .collect();
    Typoid::from_parts(
        format!("{}_trunc", t.name()),
        base.clone(),
        EquivalenceLayer::new(tables, CellPartition::discrete(n * n)),
        idtoeqv,
    )
}

/// Every ordered pair of terms carries exactly one edge.
pub fn is_truncation(t: &Typoid) -> bool {
    t.terms().all(|x| t.terms().all(|y| t.layer().hom(x, y).len() == 1))
}

/// The typoid function into a truncation over `term_map` whose edge action
/// is forced. Without an explicit path action the first one over
/// `term_map` is used.
pub fn morphism_into_truncation(
    name: impl Into<String>,
    src: &Typoid,
    dst: &Typoid,
    term_map: &[TermId],
    path_map: Option<&[PathId]>,
) -> Result<TypoidMorphism, Error> {
    if !is_truncation(dst) {
        return Err(Error::NotTruncation(dst.name().into()));
    }
    if term_map.len() != src.term_count() {
        return Err(Error::TermMapLength {
            expected: src.term_count(),
            got: term_map.len(),
        });
    }
    if term_map.iter().any(|y| y.index() >= dst.term_count()) {
        return Err(Error::TermOutOfRange);
    }
    let path_map = match path_map {
        Some(pm) => pm.to_vec(),
        None => find_path_action(src.base(), dst.base(), term_map).map_err(|path| Error::NoPathAction { path })?,
    };
    let f = |x: TermId| term_map[x.index()];
    let edge_map = src
        .layer()
        .edges()
        .map(|e| {
            let (x, y) = src.layer().ends(e);
            dst.layer().hom(f(x), f(y))[0]
        })
        .collect();
    Ok(TypoidMorphism {
        name: name.into(),
        source: src.name().into(),
        target: dst.name().into(),
        term_map: term_map.to_vec(),
        path_map: Some(path_map),
        edge_map,
    })
}
