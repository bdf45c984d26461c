//! Exhaustive law checkers for groupoids and typoids.
//!
//! Every checker runs over all applicable tuples, never aborts on malformed
//! tables (those show up as [`Law::Bookkeeping`] violations and the affected
//! law instances are skipped), and returns a normalized report.

use alloc::format;
use alloc::vec::Vec;

use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{FiniteGroupoid, Typoid};
use crate::partition::CellPartition;
use crate::report::{Law, ValidationReport, Witness};
use crate::tables::ArrowTables;

pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    g.tables().check_shape(&mut report);
    groupoid_laws(g.tables(), &mut report);
    report.normalized()
}

pub fn validate_typoid(t: &Typoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    let base = t.base().tables();
    let layer = t.layer().tables();
    base.check_shape(&mut report);
    groupoid_laws(base, &mut report);
    if layer.term_count() != base.term_count() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!(
                "equivalence layer has {} terms, base groupoid has {}",
                layer.term_count(),
                base.term_count()
            ),
        );
    }
    layer.check_shape(&mut report);
    let cells = t.layer().cells();
    if partition_well_formed(layer, cells, &mut report) {
        layer_laws(layer, cells, &mut report);
        idtoeqv_laws(t, &mut report);
    }
    report.normalized()
}

/// The inverse laws that follow from Typ1–Typ4: `eqv^-1 ≅ eqv`,
/// `(e^-1)^-1 ≅ e`, and inversion respects cells.
pub fn derived_laws(t: &Typoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    let layer = t.layer().tables();
    let cells = t.layer().cells();
    if cells.len() != layer.len() {
        report.violate(Law::Partition, [], "cell labels do not cover the edges");
        return report;
    }
    let inv = |e: EdgeId| layer.lookup_inv(e).filter(|&d| layer.contains(d));
    let same = |a: EdgeId, b: EdgeId| cells.class_of(a).index() < cells.len() && cells.same(a, b);
    for x in layer.terms() {
        report.tick(Law::DerivedInverse);
        let Some(u) = layer.lookup_unit(x).filter(|&u| layer.contains(u)) else {
            continue;
        };
        if let Some(v) = inv(u) {
            if !same(v, u) {
                report.violate(
                    Law::DerivedInverse,
                    [x.into(), u.into()],
                    "inverse of eqv is not in the cell of eqv",
                );
            }
        }
    }
    for e in layer.arrows() {
        report.tick(Law::DerivedInverse);
        if let Some(d) = inv(e).and_then(inv) {
            if !same(d, e) {
                report.violate(
                    Law::DerivedInverse,
                    [e.into()],
                    "double inverse is not in the cell of the edge",
                );
            }
        }
    }
    let members = cells.members();
    for class in &members {
        for &e in class {
            for &d in class {
                report.tick(Law::DerivedInverse);
                if let (Some(ie), Some(id)) = (inv(e), inv(d)) {
                    if !same(ie, id) {
                        report.violate(
                            Law::DerivedInverse,
                            [e.into(), d.into()],
                            "inversion separates cell-equal edges",
                        );
                    }
                }
            }
        }
    }
    report.normalized()
}

/// Number of law instances [`validate_typoid`] examines on a structurally
/// well-formed typoid, computed from hom-set sizes alone.
pub fn expected_checks(t: &Typoid) -> Vec<(Law, u64)> {
    let n = t.term_count();
    let base = t.base().tables();
    let layer = t.layer().tables();
    let p = |x: usize, y: usize| base.hom(TermId::new(x), TermId::new(y)).len() as u64;
    let e = |x: usize, y: usize| layer.hom(TermId::new(x), TermId::new(y)).len() as u64;
    let cells = t.layer().cells();
    let members = if cells.len() == layer.len() {
        cells.members()
    } else {
        Vec::new()
    };
    // sum of squared class sizes per hom-set
    let c = |x: usize, y: usize| -> u64 {
        layer
            .hom(TermId::new(x), TermId::new(y))
            .iter()
            .filter(|d| cells.class_of(**d) == **d)
            .map(|d| members.get(d.index()).map_or(0, |m| (m.len() * m.len()) as u64))
            .sum()
    };
    let paths = base.len() as u64;
    let edges = layer.len() as u64;
    let (mut pairs_p, mut pairs_e, mut triples_p, mut triples_e, mut typ4) = (0, 0, 0, 0, 0);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                pairs_p += p(x, y) * p(y, z);
                pairs_e += e(x, y) * e(y, z);
                typ4 += c(x, y) * c(y, z);
                for w in 0..n {
                    triples_p += p(x, y) * p(y, z) * p(z, w);
                    triples_e += e(x, y) * e(y, z) * e(z, w);
                }
            }
        }
    }
    let n = n as u64;
    let counts = [
        (Law::Bookkeeping, (n + pairs_p + paths) + (n + pairs_e + edges) + paths),
        (Law::Groupoid, 4 * paths + triples_p),
        (Law::Partition, edges),
        (Law::Typ1, 2 * edges),
        (Law::Typ2, 2 * edges),
        (Law::Typ3, triples_e),
        (Law::Typ4, typ4),
        (Law::IdtoEqv, n + pairs_p),
    ];
    counts.into_iter().filter(|&(_, k)| k > 0).collect()
}

fn groupoid_laws(t: &ArrowTables<PathId>, report: &mut ValidationReport) {
    let comp = |a: PathId, b: PathId| t.lookup_comp(a, b).filter(|&c| t.contains(c));
    let n = t.term_count();
    for x in t.terms() {
        for y in t.terms() {
            for &p in t.hom(x, y) {
                let rx = t.lookup_unit(x).filter(|&r| t.contains(r));
                let ry = t.lookup_unit(y).filter(|&r| t.contains(r));
                let inv = t.lookup_inv(p).filter(|&q| t.contains(q));
                report.tick_n(Law::Groupoid, 4);
                if let Some(c) = rx.and_then(|r| comp(r, p)) {
                    if c != p {
                        report.violate(Law::Groupoid, [p.into(), c.into()], "refl . p is not p");
                    }
                }
                if let Some(c) = ry.and_then(|r| comp(p, r)) {
                    if c != p {
                        report.violate(Law::Groupoid, [p.into(), c.into()], "p . refl is not p");
                    }
                }
                if let (Some(q), Some(r)) = (inv, rx) {
                    if let Some(c) = comp(p, q) {
                        if c != r {
                            report.violate(Law::Groupoid, [p.into(), c.into()], "p . p^-1 is not refl");
                        }
                    }
                }
                if let (Some(q), Some(r)) = (inv, ry) {
                    if let Some(c) = comp(q, p) {
                        if c != r {
                            report.violate(Law::Groupoid, [p.into(), c.into()], "p^-1 . p is not refl");
                        }
                    }
                }
            }
        }
    }
    for_each_triple(t, n, |p, q, r| {
        report.tick(Law::Groupoid);
        let left = comp(p, q).and_then(|pq| comp(pq, r));
        let right = comp(q, r).and_then(|qr| comp(p, qr));
        if let (Some(a), Some(b)) = (left, right) {
            if a != b {
                report.violate(
                    Law::Groupoid,
                    [p.into(), q.into(), r.into()],
                    "composition is not associative",
                );
            }
        }
    });
}

fn for_each_triple<I: crate::ids::ArrowId>(t: &ArrowTables<I>, n: usize, mut f: impl FnMut(I, I, I)) {
    for x in 0..n {
        for y in 0..n {
            let h1 = t.hom(TermId::new(x), TermId::new(y));
            if h1.is_empty() {
                continue;
            }
            for z in 0..n {
                let h2 = t.hom(TermId::new(y), TermId::new(z));
                if h2.is_empty() {
                    continue;
                }
                for w in 0..n {
                    let h3 = t.hom(TermId::new(z), TermId::new(w));
                    for &a in h1 {
                        for &b in h2 {
                            for &c in h3 {
                                f(a, b, c);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Checks that labels are a normalized partition (smallest member as
/// representative) whose classes stay inside one hom-set.
fn partition_well_formed(layer: &ArrowTables<EdgeId>, cells: &CellPartition, report: &mut ValidationReport) -> bool {
    let mut ok = true;
    if cells.len() != layer.len() {
        report.violate(
            Law::Partition,
            [],
            format!("{} cell labels for {} edges", cells.len(), layer.len()),
        );
        ok = false;
    }
    for e in layer.arrows() {
        report.tick(Law::Partition);
        let Some(&l) = cells.labels().get(e.index()) else {
            continue;
        };
        if !layer.contains(l) {
            report.violate(Law::Partition, [e.into(), l.into()], "cell label is not an edge");
            ok = false;
            continue;
        }
        if l > e || cells.class_of(l) != l {
            report.violate(
                Law::Partition,
                [e.into(), l.into()],
                "cell label is not the class representative",
            );
            ok = false;
        }
        if layer.ends(l) != layer.ends(e) {
            report.violate(Law::Partition, [e.into(), l.into()], "cell class spans two hom-sets");
            ok = false;
        }
    }
    ok
}

fn layer_laws(t: &ArrowTables<EdgeId>, cells: &CellPartition, report: &mut ValidationReport) {
    let star = |a: EdgeId, b: EdgeId| t.lookup_comp(a, b).filter(|&c| t.contains(c));
    let unit = |x: TermId| t.lookup_unit(x).filter(|&u| t.contains(u));
    let n = t.term_count();
    for x in t.terms() {
        for y in t.terms() {
            for &e in t.hom(x, y) {
                report.tick_n(Law::Typ1, 2);
                if let Some(c) = unit(x).and_then(|u| star(u, e)) {
                    if !cells.same(c, e) {
                        report.violate(Law::Typ1, [e.into()], "eqv * e is not in the cell of e");
                    }
                }
                if let Some(c) = unit(y).and_then(|u| star(e, u)) {
                    if !cells.same(c, e) {
                        report.violate(Law::Typ1, [e.into()], "e * eqv is not in the cell of e");
                    }
                }
                report.tick_n(Law::Typ2, 2);
                let Some(d) = t.lookup_inv(e).filter(|&d| t.contains(d)) else {
                    continue;
                };
                if let (Some(c), Some(u)) = (star(e, d), unit(x)) {
                    if !cells.same(c, u) {
                        report.violate(Law::Typ2, [e.into()], "e * e^-1 is not in the cell of eqv");
                    }
                }
                if let (Some(c), Some(u)) = (star(d, e), unit(y)) {
                    if !cells.same(c, u) {
                        report.violate(Law::Typ2, [e.into()], "e^-1 * e is not in the cell of eqv");
                    }
                }
            }
        }
    }
    for_each_triple(t, n, |a, b, c| {
        report.tick(Law::Typ3);
        let left = star(a, b).and_then(|ab| star(ab, c));
        let right = star(b, c).and_then(|bc| star(a, bc));
        if let (Some(l), Some(r)) = (left, right) {
            if !cells.same(l, r) {
                report.violate(
                    Law::Typ3,
                    [a.into(), b.into(), c.into()],
                    "star is not associative up to cells",
                );
            }
        }
    });
    let members = cells.members();
    for (a, b) in t.composable_pairs() {
        let ca = &members[cells.class_of(a).index()];
        let cb = &members[cells.class_of(b).index()];
        report.tick_n(Law::Typ4, (ca.len() * cb.len()) as u64);
        let Some(ab) = star(a, b) else { continue };
        for &a2 in ca {
            for &b2 in cb {
                if let Some(c) = star(a2, b2) {
                    if !cells.same(ab, c) {
                        report.violate(
                            Law::Typ4,
                            [a.into(), b.into(), a2.into(), b2.into()],
                            "star does not respect cells",
                        );
                    }
                }
            }
        }
    }
}

fn idtoeqv_laws(t: &Typoid, report: &mut ValidationReport) {
    let base = t.base().tables();
    let layer = t.layer().tables();
    let cells = t.layer().cells();
    if t.idtoeqv_table().len() != base.len() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!(
                "idtoeqv has {} entries for {} paths",
                t.idtoeqv_table().len(),
                base.len()
            ),
        );
    }
    let mut image: Vec<Option<EdgeId>> = alloc::vec![None; base.len()];
    for p in base.arrows() {
        report.tick(Law::Bookkeeping);
        match t.lookup_idtoeqv(p) {
            None => report.violate(Law::Bookkeeping, [p.into()], "missing idtoeqv entry"),
            Some(e) if !layer.contains(e) => {
                report.violate(Law::Bookkeeping, [p.into(), e.into()], "idtoeqv entry is out of range")
            }
            Some(e) if layer.ends(e) != base.ends(p) => report.violate(
                Law::Bookkeeping,
                [p.into(), e.into()],
                "idtoeqv entry has the wrong endpoints",
            ),
            Some(e) => image[p.index()] = Some(e),
        }
    }
    for x in base.terms() {
        report.tick(Law::IdtoEqv);
        let r = base.lookup_unit(x).filter(|&r| base.contains(r));
        let u = layer.lookup_unit(x);
        if let (Some(e), Some(u)) = (r.and_then(|r| image[r.index()]), u) {
            if e != u {
                report.violate(Law::IdtoEqv, [Witness::Term(x), e.into()], "idtoeqv(refl) is not eqv");
            }
        }
    }
    for (p, q) in base.composable_pairs() {
        report.tick(Law::IdtoEqv);
        let pq = base.lookup_comp(p, q).filter(|&c| base.contains(c));
        let (Some(ep), Some(eq), Some(epq)) = (image[p.index()], image[q.index()], pq.and_then(|c| image[c.index()]))
        else {
            continue;
        };
        if let Some(s) = layer.lookup_comp(ep, eq).filter(|&s| layer.contains(s)) {
            if !cells.same(epq, s) {
                report.violate(
                    Law::IdtoEqv,
                    [p.into(), q.into()],
                    "idtoeqv(p . q) is not in the cell of idtoeqv(p) * idtoeqv(q)",
                );
            }
        }
    }
}
