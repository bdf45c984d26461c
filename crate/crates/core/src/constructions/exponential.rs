use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::{Bound, Error};
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{EquivalenceLayer, Typoid};
use crate::partition::CellPartition;
use crate::search::{backtrack, for_each_edge_action, path_actions, term_maps};
use crate::tables::ArrowTables;

use super::{complete_layer, require_valid};

/// Enumeration bounds for [`exponential_typoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpLimits {
    pub max_terms: usize,
    pub max_edges: usize,
}

impl Default for ExpLimits {
    fn default() -> Self {
        ExpLimits {
            max_terms: 64,
            max_edges: 256,
        }
    }
}

/// A term of the exponential: a typoid function given by its tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialTerm {
    pub term_map: Vec<TermId>,
    pub path_map: Vec<PathId>,
    pub edge_map: Vec<EdgeId>,
}

/// An edge of the exponential: a natural family of edges between two terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialEdge {
    pub source: TermId,
    pub target: TermId,
    /// `theta[x]` is an edge `f(x) ~ g(x)` of the codomain.
    pub theta: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialProvenance {
    pub domain: alloc::string::String,
    pub codomain: alloc::string::String,
    pub terms: Vec<ExponentialTerm>,
    pub edges: Vec<ExponentialEdge>,
}

/// `B^A`: typoid functions `A -> B` as terms and natural families as edges,
/// with pointwise units, composition, inversion and cells. The base groupoid
/// is the univalent completion of that edge layer.
pub fn exponential_typoid(a: &Typoid, b: &Typoid, limits: ExpLimits) -> Result<(Typoid, ExponentialProvenance), Error> {
    require_valid(a)?;
    require_valid(b)?;
    let terms = canonical_terms(a, b, limits.max_terms)?;
    let edges = natural_families(a, b, &terms, limits.max_edges)?;
    let lb = b.layer();
    let n = terms.len();
    let index: BTreeMap<(TermId, TermId, &[EdgeId]), EdgeId> = edges
        .iter()
        .enumerate()
        .map(|(i, d)| ((d.source, d.target, d.theta.as_slice()), EdgeId::new(i)))
        .collect();
    let lookup = |s: TermId, t: TermId, theta: Vec<EdgeId>| -> EdgeId {
        *index
            .get(&(s, t, theta.as_slice()))
            .expect("pointwise operations on natural families stay natural")
    };
    let tables = ArrowTables::from_fn(
        n,
        edges.iter().map(|d| (d.source, d.target)).collect(),
        |phi| {
            let f = &terms[phi.index()].term_map;
            lookup(phi, phi, a.terms().map(|x| lb.eqv(f[x.index()])).collect())
        },
        |d, e| {
            let (d, e) = (&edges[d.index()], &edges[e.index()]);
            let theta = d.theta.iter().zip(&e.theta).map(|(&u, &v)| lb.star(u, v)).collect();
            lookup(d.source, e.target, theta)
        },
        |d| {
            let d = &edges[d.index()];
            lookup(d.target, d.source, d.theta.iter().map(|&u| lb.einv(u)).collect())
        },
    );
    let keys: Vec<_> = edges
        .iter()
        .map(|d| {
            let classes: Vec<EdgeId> = d.theta.iter().map(|&u| lb.class_of(u)).collect();
            (d.source, d.target, classes)
        })
        .collect();
    let layer = EquivalenceLayer::new(tables, CellPartition::from_keys(&keys));
    let t = complete_layer(format!("{}_pow_{}", b.name(), a.name()), layer);
    Ok((
        t,
        ExponentialProvenance {
            domain: a.name().into(),
            codomain: b.name().into(),
            terms,
            edges,
        },
    ))
}

/// Lexicographic in (term map, path action, edge action).
fn canonical_terms(a: &Typoid, b: &Typoid, max_terms: usize) -> Result<Vec<ExponentialTerm>, Error> {
    let mut terms = Vec::new();
    for f in term_maps(a.term_count(), b.term_count()) {
        let aps = path_actions(a.base(), b.base(), &f);
        if aps.is_empty() {
            continue;
        }
        let mut phis = Vec::new();
        let mut over = false;
        for_each_edge_action(a, b, &f, |phi| {
            phis.push(phi.to_vec());
            if terms.len() + phis.len() * aps.len() > max_terms {
                over = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if over {
            return Err(Error::Resource {
                bound: Bound::MaxTerms,
                limit: max_terms,
            });
        }
        for ap in &aps {
            for phi in &phis {
                terms.push(ExponentialTerm {
                    term_map: f.clone(),
                    path_map: ap.clone(),
                    edge_map: phi.clone(),
                });
            }
        }
    }
    Ok(terms)
}

/// For every ordered pair of terms, the families `theta` with
/// `phi_f(e) * theta(y) ≅ theta(x) * phi_g(e)` for all `e : x ~ y`.
fn natural_families(
    a: &Typoid,
    b: &Typoid,
    terms: &[ExponentialTerm],
    max_edges: usize,
) -> Result<Vec<ExponentialEdge>, Error> {
    let (la, lb) = (a.layer(), b.layer());
    // edges of A keyed by the larger endpoint, so each square is checked
    // once both components are chosen
    let mut triggers: Vec<Vec<EdgeId>> = alloc::vec![Vec::new(); a.term_count()];
    for e in la.edges() {
        let (x, y) = la.ends(e);
        triggers[x.index().max(y.index())].push(e);
    }
    let mut out = Vec::new();
    for (i, f) in terms.iter().enumerate() {
        for (j, g) in terms.iter().enumerate() {
            let cands: Vec<Vec<EdgeId>> = a
                .terms()
                .map(|x| lb.hom(f.term_map[x.index()], g.term_map[x.index()]).to_vec())
                .collect();
            let mut over = false;
            backtrack(
                &cands,
                |k, theta| {
                    triggers[k].iter().all(|&e| {
                        let (x, y) = la.ends(e);
                        let left = lb.star(f.edge_map[e.index()], theta[y.index()]);
                        let right = lb.star(theta[x.index()], g.edge_map[e.index()]);
                        lb.same_cell(left, right)
                    })
                },
                |theta| {
                    if out.len() == max_edges {
                        over = true;
                        return ControlFlow::Break(());
                    }
                    out.push(ExponentialEdge {
                        source: TermId::new(i),
                        target: TermId::new(j),
                        theta: theta.to_vec(),
                    });
                    ControlFlow::Continue(())
                },
            );
            if over {
                return Err(Error::Resource {
                    bound: Bound::MaxEdges,
                    limit: max_edges,
                });
            }
        }
    }
    Ok(out)
}
