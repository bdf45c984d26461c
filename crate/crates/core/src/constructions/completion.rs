use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ids::{EdgeId, PathId};
use crate::model::{EquivalenceLayer, FiniteGroupoid, Typoid};
use crate::tables::ArrowTables;

use super::require_valid;

/// Replaces the base groupoid by the cell classes of the edge layer, so that
/// paths and cell classes correspond one to one.
pub fn univalent_completion(t: &Typoid) -> Result<Typoid, Error> {
    require_valid(t)?;
    Ok(complete_layer(format!("{}_completed", t.name()), t.layer().clone()))
}

/// Base groupoid = cells of `layer`, ordered by representative. Composition
/// and inversion are computed on chosen edges, which is well defined on
/// classes when the layer satisfies the typoid laws.
pub(crate) fn complete_layer(name: String, layer: EquivalenceLayer) -> Typoid {
    let mut path_of: Vec<Option<PathId>> = vec![None; layer.edge_count()];
    let mut chosen: Vec<EdgeId> = Vec::new();
    for rep in layer.cells().representatives() {
        path_of[rep.index()] = Some(PathId::new(chosen.len()));
        chosen.push(rep);
    }
    // units must be idtoeqv(refl) on the nose
    for x in 0..layer.term_count() {
        let u = layer.eqv(crate::ids::TermId::new(x));
        let p = path_of[layer.class_of(u).index()].expect("class has a path");
        chosen[p.index()] = u;
    }
    let class_path = |e: EdgeId| path_of[layer.class_of(e).index()].expect("class has a path");
    let tables = ArrowTables::from_fn(
        layer.term_count(),
        chosen.iter().map(|&e| layer.ends(e)).collect(),
        |x| class_path(layer.eqv(x)),
        |p, q| class_path(layer.star(chosen[p.index()], chosen[q.index()])),
        |p| class_path(layer.einv(chosen[p.index()])),
    );
    let idtoeqv = chosen.iter().map(|&e| Some(e)).collect();
    Typoid::from_parts(name, FiniteGroupoid::from_tables(tables), layer, idtoeqv)
}
