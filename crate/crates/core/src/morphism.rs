//! Typoid functions: a term map, a strict functor on base paths, and an edge
//! map that preserves units and composition up to cells.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::equality_typoid;
use crate::error::Error;
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{FiniteGroupoid, Typoid};
use crate::report::{Law, ValidationReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypoidMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub term_map: Vec<TermId>,
    /// The action on base paths. `None` when the morphism carries no path
    /// action, which is only accepted with the path checks switched off.
    pub path_map: Option<Vec<PathId>>,
    pub edge_map: Vec<EdgeId>,
}

impl TypoidMorphism {
    pub fn term(&self, x: TermId) -> TermId {
        self.term_map[x.index()]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e.index()]
    }

    /// # Panics
    /// If the morphism has no path action.
    pub fn path(&self, p: PathId) -> PathId {
        self.path_map.as_ref().expect("morphism carries a path action")[p.index()]
    }
}

/// Which families of laws [`validate_morphism`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismChecks {
    /// Check the path action as a strict functor. Without it only the
    /// edge-level conditions remain.
    pub path_action: bool,
}

impl Default for MorphismChecks {
    fn default() -> Self {
        MorphismChecks { path_action: true }
    }
}

/// Checks that `path_map` is a strict functor from `src` to `dst` lying over
/// `term_map`. `term_map` must already be in range.
pub fn check_path_action(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    term_map: &[TermId],
    path_map: &[PathId],
) -> ValidationReport {
    let mut report = ValidationReport::new();
    path_action_laws(src, dst, term_map, path_map, &mut report);
    report.normalized()
}

fn path_action_laws(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    term_map: &[TermId],
    path_map: &[PathId],
    report: &mut ValidationReport,
) -> bool {
    if path_map.len() != src.path_count() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!("path map has {} entries for {} paths", path_map.len(), src.path_count()),
        );
        return false;
    }
    let mut ok = true;
    for p in src.paths() {
        report.tick(Law::Bookkeeping);
        let q = path_map[p.index()];
        let (x, y) = src.ends(p);
        if q.index() >= dst.path_count() {
            report.violate(Law::Bookkeeping, [p.into(), q.into()], "path image is out of range");
            ok = false;
        } else if dst.ends(q) != (term_map[x.index()], term_map[y.index()]) {
            report.violate(
                Law::Bookkeeping,
                [p.into(), q.into()],
                "path image has the wrong endpoints",
            );
            ok = false;
        }
    }
    if !ok {
        return false;
    }
    let ap = |p: PathId| path_map[p.index()];
    for x in src.terms() {
        report.tick(Law::ApFunctor);
        if ap(src.refl(x)) != dst.refl(term_map[x.index()]) {
            report.violate(Law::ApFunctor, [Witness::Term(x)], "refl is not sent to refl");
            ok = false;
        }
    }
    for (p, q) in src.tables().composable_pairs() {
        report.tick(Law::ApFunctor);
        if ap(src.comp(p, q)) != dst.comp(ap(p), ap(q)) {
            report.violate(Law::ApFunctor, [p.into(), q.into()], "composition is not preserved");
            ok = false;
        }
    }
    ok
}

/// Checks every law of a typoid function from `src` to `dst`. Both typoids
/// are assumed valid.
pub fn validate_morphism(m: &TypoidMorphism, src: &Typoid, dst: &Typoid, checks: MorphismChecks) -> ValidationReport {
    let mut report = ValidationReport::new();
    if m.source != src.name() || m.target != dst.name() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!(
                "morphism `{}` goes {} -> {}, checked against {} -> {}",
                m.name,
                m.source,
                m.target,
                src.name(),
                dst.name()
            ),
        );
    }
    if !maps_in_range(m, src, dst, &mut report) {
        return report.normalized();
    }
    if checks.path_action {
        match &m.path_map {
            Some(pm) => {
                path_action_laws(src.base(), dst.base(), &m.term_map, pm, &mut report);
            }
            None => report.violate(Law::Bookkeeping, [], "morphism has no path action"),
        }
    }
    let (sl, dl) = (src.layer(), dst.layer());
    let phi = |e: EdgeId| m.edge_map[e.index()];
    for x in src.terms() {
        report.tick(Law::UnitPreservation);
        if !dl.same_cell(phi(sl.eqv(x)), dl.eqv(m.term(x))) {
            report.violate(
                Law::UnitPreservation,
                [x.into(), sl.eqv(x).into()],
                "eqv is not sent into the cell of eqv",
            );
        }
    }
    for (e, d) in sl.tables().composable_pairs() {
        report.tick(Law::CompositionPreservation);
        if !dl.same_cell(phi(sl.star(e, d)), dl.star(phi(e), phi(d))) {
            report.violate(
                Law::CompositionPreservation,
                [e.into(), d.into()],
                "star is not preserved up to cells",
            );
        }
    }
    for class in sl.cells().members() {
        for &e in &class {
            for &d in &class {
                report.tick(Law::CellCongruence);
                if !dl.same_cell(phi(e), phi(d)) {
                    report.violate(
                        Law::CellCongruence,
                        [e.into(), d.into()],
                        "cell-equal edges are separated",
                    );
                }
            }
        }
    }
    report.normalized()
}

fn maps_in_range(m: &TypoidMorphism, src: &Typoid, dst: &Typoid, report: &mut ValidationReport) -> bool {
    let mut ok = true;
    if m.term_map.len() != src.term_count() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!(
                "term map has {} entries for {} terms",
                m.term_map.len(),
                src.term_count()
            ),
        );
        return false;
    }
    for x in src.terms() {
        report.tick(Law::Bookkeeping);
        if m.term(x).index() >= dst.term_count() {
            report.violate(
                Law::Bookkeeping,
                [x.into(), m.term(x).into()],
                "term image is out of range",
            );
            ok = false;
        }
    }
    if m.edge_map.len() != src.layer().edge_count() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!(
                "edge map has {} entries for {} edges",
                m.edge_map.len(),
                src.layer().edge_count()
            ),
        );
        return false;
    }
    if !ok {
        return false;
    }
    for e in src.layer().edges() {
        report.tick(Law::Bookkeeping);
        let d = m.edge(e);
        let (x, y) = src.layer().ends(e);
        if d.index() >= dst.layer().edge_count() {
            report.violate(Law::Bookkeeping, [e.into(), d.into()], "edge image is out of range");
            ok = false;
        } else if dst.layer().ends(d) != (m.term(x), m.term(y)) {
            report.violate(
                Law::Bookkeeping,
                [e.into(), d.into()],
                "edge image has the wrong endpoints",
            );
            ok = false;
        }
    }
    ok
}

/// Whether units are sent to units exactly, not merely into their cell.
pub fn is_strict(m: &TypoidMorphism, src: &Typoid, dst: &Typoid) -> bool {
    src.terms()
        .all(|x| m.edge(src.layer().eqv(x)) == dst.layer().eqv(m.term(x)))
}

/// `phi(e^-1)` lies in the cell of `phi(e)^-1` for every edge.
pub fn check_inverse_law(m: &TypoidMorphism, src: &Typoid, dst: &Typoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (sl, dl) = (src.layer(), dst.layer());
    for e in sl.edges() {
        report.tick(Law::InverseLaw);
        if !dl.same_cell(m.edge(sl.einv(e)), dl.einv(m.edge(e))) {
            report.violate(Law::InverseLaw, [e.into()], "inversion is not preserved up to cells");
        }
    }
    report.normalized()
}

/// `g . f`: first `f`, then `g`.
pub fn compose_morphisms(f: &TypoidMorphism, g: &TypoidMorphism) -> Result<TypoidMorphism, Error> {
    let mismatch = || Error::Mismatch {
        first: f.name.clone(),
        second: g.name.clone(),
        produces: f.target.clone(),
        expects: g.source.clone(),
    };
    if f.target != g.source {
        return Err(mismatch());
    }
    fn after<I: Copy>(inner: &[I], outer: &[I], index: impl Fn(I) -> usize) -> Option<Vec<I>> {
        inner.iter().map(|&i| outer.get(index(i)).copied()).collect()
    }
    let term_map = after(&f.term_map, &g.term_map, TermId::index).ok_or_else(mismatch)?;
    let edge_map = after(&f.edge_map, &g.edge_map, EdgeId::index).ok_or_else(mismatch)?;
    let path_map = match (&f.path_map, &g.path_map) {
        (Some(fp), Some(gp)) => Some(after(fp, gp, PathId::index).ok_or_else(mismatch)?),
        _ => None,
    };
    Ok(TypoidMorphism {
        name: format!("{}_o_{}", g.name, f.name),
        source: f.source.clone(),
        target: g.target.clone(),
        term_map,
        path_map,
        edge_map,
    })
}

/// The identity typoid function of `t`.
pub fn identity(t: &Typoid) -> TypoidMorphism {
    TypoidMorphism {
        name: format!("id_{}", t.name()),
        source: t.name().into(),
        target: t.name().into(),
        term_map: t.terms().collect(),
        path_map: Some(t.base().paths().collect()),
        edge_map: t.layer().edges().collect(),
    }
}

/// The identity on terms, viewed as a typoid function from the equality
/// typoid of `t`'s base into `t`, with `idtoeqv` as its edge action.
/// Returns the equality typoid together with the morphism.
pub fn identity_from_equality(t: &Typoid) -> (Typoid, TypoidMorphism) {
    let eq = equality_typoid(t.base(), format!("{}_eq", t.name())).expect("base of a valid typoid is a valid groupoid");
    let m = TypoidMorphism {
        name: format!("idtoeqv_{}", t.name()),
        source: eq.name().into(),
        target: t.name().into(),
        term_map: t.terms().collect(),
        path_map: Some(t.base().paths().collect()),
        edge_map: t.base().paths().map(|p| t.idtoeqv(p)).collect(),
    };
    (eq, m)
}
