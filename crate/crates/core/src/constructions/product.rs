use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{EquivalenceLayer, FiniteGroupoid, Typoid};
use crate::morphism::TypoidMorphism;
use crate::partition::CellPartition;
use crate::tables::ArrowTables;

use super::require_valid;

/// Sizes of one factor, enough to encode and decode pair ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorShape {
    pub terms: usize,
    pub paths: usize,
    pub edges: usize,
}

impl FactorShape {
    pub fn of(t: &Typoid) -> Self {
        FactorShape {
            terms: t.term_count(),
            paths: t.base().path_count(),
            edges: t.layer().edge_count(),
        }
    }
}

/// How a product typoid was assembled. Pairs are numbered row-major:
/// `(a, b)` has id `a * |B| + b` for terms, paths and edges alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductProvenance {
    pub product: String,
    pub left: String,
    pub right: String,
    pub left_shape: FactorShape,
    pub right_shape: FactorShape,
}

impl ProductProvenance {
    pub fn pair_term(&self, a: TermId, b: TermId) -> TermId {
        TermId::new(a.index() * self.right_shape.terms + b.index())
    }

    pub fn unpair_term(&self, z: TermId) -> (TermId, TermId) {
        let n = self.right_shape.terms;
        (TermId::new(z.index() / n), TermId::new(z.index() % n))
    }

    /// Pairing of paths.
    pub fn pair_path(&self, p: PathId, q: PathId) -> PathId {
        PathId::new(p.index() * self.right_shape.paths + q.index())
    }

    pub fn unpair_path(&self, p: PathId) -> (PathId, PathId) {
        let n = self.right_shape.paths;
        (PathId::new(p.index() / n), PathId::new(p.index() % n))
    }

    /// `T`: the product edge with the given components.
    pub fn pair_edge(&self, e: EdgeId, d: EdgeId) -> EdgeId {
        EdgeId::new(e.index() * self.right_shape.edges + d.index())
    }

    /// `Υ`: the components of a product edge.
    pub fn unpair_edge(&self, e: EdgeId) -> (EdgeId, EdgeId) {
        let n = self.right_shape.edges;
        (EdgeId::new(e.index() / n), EdgeId::new(e.index() % n))
    }

    /// Errors unless `prod` has the shape and names recorded here.
    pub fn check(&self, prod: &Typoid, left: &Typoid, right: &Typoid) -> Result<(), Error> {
        let (l, r) = (self.left_shape, self.right_shape);
        let ok = prod.name() == self.product
            && left.name() == self.left
            && right.name() == self.right
            && FactorShape::of(left) == l
            && FactorShape::of(right) == r
            && FactorShape::of(prod)
                == FactorShape {
                    terms: l.terms * r.terms,
                    paths: l.paths * r.paths,
                    edges: l.edges * r.edges,
                };
        if ok {
            Ok(())
        } else {
            Err(Error::Provenance(prod.name().into()))
        }
    }
}

/// The product typoid: pairs everywhere, every operation componentwise,
/// cells compared componentwise.
pub fn product_typoid(a: &Typoid, b: &Typoid) -> Result<(Typoid, ProductProvenance), Error> {
    require_valid(a)?;
    require_valid(b)?;
    let prov = ProductProvenance {
        product: format!("{}_x_{}", a.name(), b.name()),
        left: a.name().into(),
        right: b.name().into(),
        left_shape: FactorShape::of(a),
        right_shape: FactorShape::of(b),
    };
    let (ga, gb) = (a.base(), b.base());
    let mut path_ends = Vec::with_capacity(ga.path_count() * gb.path_count());
    for p in ga.paths() {
        for q in gb.paths() {
            let ((x, y), (u, v)) = (ga.ends(p), gb.ends(q));
            path_ends.push((prov.pair_term(x, u), prov.pair_term(y, v)));
        }
    }
    let base = ArrowTables::from_fn(
        a.term_count() * b.term_count(),
        path_ends,
        |z| {
            let (x, u) = prov.unpair_term(z);
            prov.pair_path(ga.refl(x), gb.refl(u))
        },
        |p, q| {
            let ((p1, p2), (q1, q2)) = (prov.unpair_path(p), prov.unpair_path(q));
            prov.pair_path(ga.comp(p1, q1), gb.comp(p2, q2))
        },
        |p| {
            let (p1, p2) = prov.unpair_path(p);
            prov.pair_path(ga.inv(p1), gb.inv(p2))
        },
    );
    let (la, lb) = (a.layer(), b.layer());
    let mut edge_ends = Vec::with_capacity(la.edge_count() * lb.edge_count());
    let mut keys = Vec::with_capacity(la.edge_count() * lb.edge_count());
    for e in la.edges() {
        for d in lb.edges() {
            let ((x, y), (u, v)) = (la.ends(e), lb.ends(d));
            edge_ends.push((prov.pair_term(x, u), prov.pair_term(y, v)));
            keys.push((la.class_of(e), lb.class_of(d)));
        }
    }
    let layer = ArrowTables::from_fn(
        a.term_count() * b.term_count(),
        edge_ends,
        |z| {
            let (x, u) = prov.unpair_term(z);
            prov.pair_edge(la.eqv(x), lb.eqv(u))
        },
        |e, d| {
            let ((e1, e2), (d1, d2)) = (prov.unpair_edge(e), prov.unpair_edge(d));
            prov.pair_edge(la.star(e1, d1), lb.star(e2, d2))
        },
        |e| {
            let (e1, e2) = prov.unpair_edge(e);
            prov.pair_edge(la.einv(e1), lb.einv(e2))
        },
    );
    let idtoeqv = base
        .arrows()
        .map(|p| {
            let (p1, p2) = prov.unpair_path(p);
            Some(prov.pair_edge(a.idtoeqv(p1), b.idtoeqv(p2)))
        })
        .collect();
    let t = Typoid::from_parts(
        prov.product.clone(),
        FiniteGroupoid::from_tables(base),
        EquivalenceLayer::new(layer, CellPartition::from_keys(&keys)),
        idtoeqv,
    );
    Ok((t, prov))
}

/// The two projections out of a product.
pub fn projections(
    prod: &Typoid,
    prov: &ProductProvenance,
    left: &Typoid,
    right: &Typoid,
) -> Result<(TypoidMorphism, TypoidMorphism), Error> {
    prov.check(prod, left, right)?;
    let project = |i: usize, target: &str| TypoidMorphism {
        name: format!("pr{}_{}", i + 1, prod.name()),
        source: prod.name().into(),
        target: target.into(),
        term_map: prod
            .terms()
            .map(|z| {
                let (x, y) = prov.unpair_term(z);
                [x, y][i]
            })
            .collect(),
        path_map: Some(
            prod.base()
                .paths()
                .map(|p| {
                    let (p1, p2) = prov.unpair_path(p);
                    [p1, p2][i]
                })
                .collect(),
        ),
        edge_map: prod
            .layer()
            .edges()
            .map(|e| {
                let (e1, e2) = prov.unpair_edge(e);
                [e1, e2][i]
            })
            .collect(),
    };
    Ok((project(0, &prov.left), project(1, &prov.right)))
}

/// `<f, g>`: the morphism into the product whose components are `f` and
/// `g`. Both must share a source and land in the recorded factors.
pub fn pairing(f: &TypoidMorphism, g: &TypoidMorphism, prov: &ProductProvenance) -> Result<TypoidMorphism, Error> {
    if f.source != g.source || f.target != prov.left || g.target != prov.right {
        return Err(Error::Mismatch {
            first: f.name.clone(),
            second: g.name.clone(),
            produces: f.target.clone(),
            expects: prov.left.clone(),
        });
    }
    if f.term_map.len() != g.term_map.len() || f.edge_map.len() != g.edge_map.len() {
        return Err(Error::TermMapLength {
            expected: f.term_map.len(),
            got: g.term_map.len(),
        });
    }
    let path_map = match (&f.path_map, &g.path_map) {
        (Some(fp), Some(gp)) if fp.len() == gp.len() => {
            Some(fp.iter().zip(gp).map(|(&p, &q)| prov.pair_path(p, q)).collect())
        }
        _ => None,
    };
    Ok(TypoidMorphism {
        name: format!("pair_{}_{}", f.name, g.name),
        source: f.source.clone(),
        target: prov.product.clone(),
        term_map: f
            .term_map
            .iter()
            .zip(&g.term_map)
            .map(|(&x, &y)| prov.pair_term(x, y))
            .collect(),
        path_map,
        edge_map: f
            .edge_map
            .iter()
            .zip(&g.edge_map)
            .map(|(&e, &d)| prov.pair_edge(e, d))
            .collect(),
    })
}
