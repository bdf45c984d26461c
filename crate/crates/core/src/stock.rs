//! Small named typoids used as examples and test fixtures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::constructions::{equality_unchecked, product_typoid, truncate, universe_typoid};
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{FiniteGroupoid, Typoid};
use crate::tables::ArrowTables;

/// Disjoint union of connected groupoids: component `(terms, k)` has `k`
/// arrows between every two of its terms, composing like `Z/k`. Arrows are
/// ordered by source, target, then group element.
pub fn cyclic_groupoid(components: &[(usize, usize)]) -> FiniteGroupoid {
    let mut component_of = Vec::new();
    for (c, &(terms, _)) in components.iter().enumerate() {
        component_of.extend(core::iter::repeat_n(c, terms));
    }
    let n = component_of.len();
    let mut ends = Vec::new();
    let mut label = Vec::new();
    let mut index = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let c = component_of[x];
            if c != component_of[y] {
                continue;
            }
            for g in 0..components[c].1 {
                index.insert((x, y, g), PathId::new(ends.len()));
                ends.push((TermId::new(x), TermId::new(y)));
                label.push(g);
            }
        }
    }
    let order = |x: TermId| components[component_of[x.index()]].1;
    let tables = ArrowTables::from_fn(
        n,
        ends.clone(),
        |x| index[&(x.index(), x.index(), 0)],
        |p, q| {
            let ((x, _), (_, z)) = (ends[p.index()], ends[q.index()]);
            let k = order(x);
            index[&(x.index(), z.index(), (label[p.index()] + label[q.index()]) % k)]
        },
        |p| {
            let (x, y) = ends[p.index()];
            let k = order(x);
            index[&(y.index(), x.index(), (k - label[p.index()]) % k)]
        },
    );
    FiniteGroupoid::from_tables(tables)
}

/// One term; only refl and eqv.
pub fn unit() -> Typoid {
    equality_unchecked(&cyclic_groupoid(&[(1, 1)]), "unit".into())
}

/// Two terms and nothing between them.
pub fn bool_disc() -> Typoid {
    equality_unchecked(&cyclic_groupoid(&[(1, 1), (1, 1)]), "bool_disc".into())
}

/// Two terms with exactly one path and one edge per ordered pair.
pub fn prop2() -> Typoid {
    equality_unchecked(&cyclic_groupoid(&[(2, 1)]), "prop2".into())
}

/// One term whose loops form `Z/2`.
pub fn z2() -> FiniteGroupoid {
    cyclic_groupoid(&[(1, 2)])
}

/// The equality typoid of [`z2`].
pub fn eq_z2() -> Typoid {
    equality_unchecked(&z2(), "eq_z2".into())
}

/// One term, base `{refl}`, edges `{eqv, e}` in separate cells with
/// `e * e = eqv`.
pub fn twoedge() -> Typoid {
    one_term_two_edges("twoedge", false)
}

/// Like [`twoedge`] but both edges share a cell.
pub fn fat_unit() -> Typoid {
    one_term_two_edges("fat_unit", true)
}

fn one_term_two_edges(name: &str, joined: bool) -> Typoid {
    let x = TermId::new(0);
    let mut b = Typoid::builder(name, 1).with_units();
    let eqv = EdgeId::new(0);
    let e = b.add_edge(x, x);
    b.set_star(e, e, eqv).set_einv(e, e);
    if joined {
        b.join_cells(eqv, e);
    }
    b.fill_units();
    b.build()
}

pub fn universe_2() -> Typoid {
    universe_typoid(&[2], 16).expect("two permutations")
}

pub fn universe_1_1() -> Typoid {
    universe_typoid(&[1, 1], 16).expect("four bijections")
}

/// The named base typoids, in a fixed order.
pub fn stock_base() -> Vec<Typoid> {
    alloc::vec![
        unit(),
        bool_disc(),
        prop2(),
        twoedge(),
        eq_z2(),
        universe_2(),
        universe_1_1(),
        fat_unit(),
    ]
}

/// The base typoids, their truncations, and the products of every ordered
/// pair of base typoids.
pub fn stock_corpus() -> Vec<Typoid> {
    let base = stock_base();
    let mut out = base.clone();
    out.extend(base.iter().map(truncate));
    for a in &base {
        for b in &base {
            out.push(product_typoid(a, b).expect("stock typoids are valid").0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate_groupoid, validate_typoid};

    #[test]
    fn cyclic_groupoids_are_groupoids() {
        for comps in [&[(1, 1)][..], &[(1, 3)], &[(2, 2)], &[(1, 2), (2, 3)], &[]] {
            let g = cyclic_groupoid(comps);
            assert!(validate_groupoid(&g).is_valid(), "{comps:?}");
        }
        assert_eq!(cyclic_groupoid(&[(2, 3)]).path_count(), 12);
    }

    #[test]
    fn base_typoids_validate() {
        for t in stock_base() {
            assert!(validate_typoid(&t).is_valid(), "{}: {}", t.name(), validate_typoid(&t));
        }
    }
}
