//! A systematic family of small typoid candidates for exhaustive testing.
//!
//! A candidate is described by a base groupoid and a quotient groupoid,
//! both disjoint unions of cyclic components on the same terms. Each arrow
//! of the quotient becomes a cell holding one or more edges; a star rule
//! picks which edge of the product cell a composite lands on. Every
//! `idtoeqv` whose class map is a functor is generated. Some star rules
//! break the typoid laws on purpose, so callers are expected to validate
//! and keep the valid candidates.

use alloc::format;
use alloc::vec::Vec;

use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{EquivalenceLayer, FiniteGroupoid, Typoid};
use crate::partition::CellPartition;
use crate::search::path_actions;
use crate::stock::cyclic_groupoid;
use crate::tables::ArrowTables;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyLimits {
    pub max_terms: usize,
    pub max_paths_per_hom: usize,
    pub max_edges_per_hom: usize,
}

/// Which edge of the target cell a composite or inverse lands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarRule {
    First,
    Last,
    /// Copy indices add modulo the cell size.
    Cycle,
    /// Sends the composite of two non-unit loops to the unit cell, which is
    /// wrong unless the loops are mutually inverse.
    Collapse,
}

impl StarRule {
    pub const ALL: [StarRule; 4] = [StarRule::First, StarRule::Last, StarRule::Cycle, StarRule::Collapse];
}

/// Component lists `(terms, order)` on exactly `n` terms with every order at
/// most `max_order`. Components of a connected groupoid on two terms have
/// hom-sets of size `order`.
fn configurations(n: usize, max_order: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => alloc::vec![Vec::new()],
        1 => (1..=max_order).map(|k| alloc::vec![(1, k)]).collect(),
        2 => {
            let mut out = Vec::new();
            for k1 in 1..=max_order {
                for k2 in 1..=max_order {
                    out.push(alloc::vec![(1, k1), (1, k2)]);
                }
            }
            for k in 1..=max_order {
                out.push(alloc::vec![(2, k)]);
            }
            out
        }
        _ => unimplemented!("families are defined for at most two terms"),
    }
}

/// Calls `visit` on every candidate within `limits`, in a fixed order.
pub fn for_each_candidate(limits: FamilyLimits, mut visit: impl FnMut(Typoid)) {
    assert!(limits.max_terms <= 2, "families are defined for at most two terms");
    let mut counter = 0usize;
    for n in 0..=limits.max_terms {
        for base_cfg in configurations(n, limits.max_paths_per_hom) {
            let base = cyclic_groupoid(&base_cfg);
            for quotient_cfg in configurations(n, limits.max_edges_per_hom) {
                let quotient = cyclic_groupoid(&quotient_cfg);
                let functors = path_actions(&base, &quotient, &(0..n).map(TermId::new).collect::<Vec<_>>());
                if functors.is_empty() {
                    continue;
                }
                for unit_copies in 1..=limits.max_edges_per_hom {
                    for other_copies in 1..=limits.max_edges_per_hom {
                        let copies = |c: PathId| if quotient.is_refl(c) { unit_copies } else { other_copies };
                        let fits = quotient.terms().all(|x| {
                            quotient.terms().all(|y| {
                                quotient.hom(x, y).iter().map(|&c| copies(c)).sum::<usize>() <= limits.max_edges_per_hom
                            })
                        });
                        let redundant = other_copies > 1 && quotient.paths().all(|c| quotient.is_refl(c));
                        if !fits || redundant {
                            continue;
                        }
                        for rule in StarRule::ALL {
                            let layer = build_layer(&quotient, &copies, rule);
                            for functor in &functors {
                                for_each_lift(&base, &quotient, &layer, functor, &copies, |idtoeqv| {
                                    counter += 1;
                                    visit(Typoid::from_parts(
                                        format!("fam{counter}"),
                                        base.clone(),
                                        layer.clone(),
                                        idtoeqv,
                                    ));
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Edges `(c, i)` for every quotient arrow `c` and copy `i`, numbered in
/// order of `c` then `i`.
fn build_layer(quotient: &FiniteGroupoid, copies: &impl Fn(PathId) -> usize, rule: StarRule) -> EquivalenceLayer {
    let mut first = Vec::with_capacity(quotient.path_count());
    let mut ends = Vec::new();
    let mut class = Vec::new();
    let mut copy = Vec::new();
    for c in quotient.paths() {
        first.push(ends.len());
        for i in 0..copies(c) {
            ends.push(quotient.ends(c));
            class.push(c);
            copy.push(i);
        }
    }
    let edge = |c: PathId, i: usize| EdgeId::new(first[c.index()] + i);
    let pick = |c: PathId, i: usize, j: usize| {
        let m = copies(c);
        match rule {
            StarRule::First | StarRule::Collapse => 0,
            StarRule::Last => m - 1,
            StarRule::Cycle => (i + j) % m,
        }
    };
    let tables = ArrowTables::from_fn(
        quotient.term_count(),
        ends,
        |x| edge(quotient.refl(x), 0),
        |e, d| {
            let (c, k) = (class[e.index()], class[d.index()]);
            let mut target = quotient.comp(c, k);
            if rule == StarRule::Collapse && !quotient.is_refl(c) && !quotient.is_refl(k) {
                let (x, y) = quotient.ends(target);
                if x == y {
                    target = quotient.refl(x);
                }
            }
            edge(target, pick(target, copy[e.index()], copy[d.index()]))
        },
        |e| {
            let c = quotient.inv(class[e.index()]);
            edge(c, pick(c, copy[e.index()], 0))
        },
    );
    EquivalenceLayer::new(tables, CellPartition::from_keys(&class))
}

/// Every `idtoeqv` lying over `functor`: refl goes to eqv, any other path
/// to any edge of the cell it is mapped to.
fn for_each_lift(
    base: &FiniteGroupoid,
    quotient: &FiniteGroupoid,
    layer: &EquivalenceLayer,
    functor: &[PathId],
    copies: &impl Fn(PathId) -> usize,
    mut visit: impl FnMut(Vec<Option<EdgeId>>),
) {
    let cell_start = |c: PathId| {
        let (x, y) = quotient.ends(c);
        let offset = quotient
            .hom(x, y)
            .iter()
            .take_while(|&&d| d != c)
            .map(|&d| copies(d))
            .sum::<usize>();
        layer.hom(x, y)[offset]
    };
    let cands: Vec<Vec<EdgeId>> = base
        .paths()
        .map(|p| {
            if base.is_refl(p) {
                let (x, _) = base.ends(p);
                return alloc::vec![layer.eqv(x)];
            }
            let c = functor[p.index()];
            let start = cell_start(c).index();
            (start..start + copies(c)).map(EdgeId::new).collect()
        })
        .collect();
    crate::search::backtrack(
        &cands,
        |_, _| true,
        |choice| {
            visit(choice.iter().map(|&e| Some(e)).collect());
            core::ops::ControlFlow::Continue(())
        },
    );
}
