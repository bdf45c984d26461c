//! Deciding univalence, certificates, and the typoid functions and squares
//! that univalence gives rise to.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::constructions::{equality_typoid, ProductProvenance};
use crate::error::Error;
use crate::ids::{EdgeId, PathId, TermId};
use crate::model::Typoid;
use crate::morphism::{check_path_action, TypoidMorphism};
use crate::report::{Law, ValidationReport, Witness};
use crate::validate::validate_typoid;

/// A `ua` table inverting `idtoeqv` up to cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivalenceCertificate {
    pub typoid: String,
    /// `ua[e]` is a path with the same endpoints as edge `e`.
    pub ua: Vec<PathId>,
    /// `ua(eqv_x) = refl_x` for every term.
    pub strict: bool,
}

impl UnivalenceCertificate {
    pub fn ua(&self, e: EdgeId) -> PathId {
        self.ua[e.index()]
    }
}

/// Why the class map of one hom-set fails to be a bijection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UnivalenceGap {
    /// Two paths land in the same cell class.
    NonInjective {
        first: PathId,
        second: PathId,
        class: EdgeId,
    },
    /// A cell class is not the class of any path.
    Unhit {
        source: TermId,
        target: TermId,
        class: EdgeId,
    },
}

impl UnivalenceGap {
    pub fn witness(&self) -> Vec<Witness> {
        match *self {
            UnivalenceGap::NonInjective { first, second, class } => vec![first.into(), second.into(), class.into()],
            UnivalenceGap::Unhit { source, target, class } => vec![source.into(), target.into(), class.into()],
        }
    }
}

impl fmt::Display for UnivalenceGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnivalenceGap::NonInjective { first, second, class } => {
                write!(f, "paths {first} and {second} both map into the cell of {class}")
            }
            UnivalenceGap::Unhit { source, target, class } => {
                write!(f, "cell of {class} in {source} ~ {target} is the image of no path")
            }
        }
    }
}

/// Every hom-set where the class map is not a bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotUnivalent {
    pub gaps: Vec<UnivalenceGap>,
}

impl fmt::Display for NotUnivalent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, gap) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            gap.fmt(f)?;
        }
        Ok(())
    }
}

/// Decides univalence of a typoid.
///
/// `t` is univalent iff on every hom-set `p -> [idtoeqv(p)]` is a bijection
/// onto the cell classes; `ua` then sends each edge to the preimage of its
/// class.
pub fn check_univalence(t: &Typoid) -> Result<UnivalenceCertificate, Error> {
    let report = validate_typoid(t);
    if !report.is_valid() {
        return Err(Error::InvalidTypoid {
            name: t.name().into(),
            report: report.into(),
        });
    }
    decide(t).map_err(|witness| Error::NotUnivalent {
        name: t.name().into(),
        witness,
    })
}

/// The decision procedure without the validity check.
pub(crate) fn decide(t: &Typoid) -> Result<UnivalenceCertificate, NotUnivalent> {
    let layer = t.layer();
    let base = t.base();
    // preimage[rep] = the path whose class is rep
    let mut preimage: Vec<Option<PathId>> = vec![None; layer.edge_count()];
    let mut gaps = Vec::new();
    for x in t.terms() {
        for y in t.terms() {
            for &p in base.hom(x, y) {
                let class = layer.class_of(t.idtoeqv(p));
                match preimage[class.index()] {
                    Some(first) => gaps.push(UnivalenceGap::NonInjective {
                        first,
                        second: p,
                        class,
                    }),
                    None => preimage[class.index()] = Some(p),
                }
            }
            for class in layer.classes_in(x, y) {
                if preimage[class.index()].is_none() {
                    gaps.push(UnivalenceGap::Unhit {
                        source: x,
                        target: y,
                        class,
                    });
                }
            }
        }
    }
    if !gaps.is_empty() {
        return Err(NotUnivalent { gaps });
    }
    let ua: Vec<PathId> = layer
        .edges()
        .map(|e| preimage[layer.class_of(e).index()].expect("every class has a preimage"))
        .collect();
    let strict = t.terms().all(|x| ua[layer.eqv(x).index()] == base.refl(x));
    debug_assert!(strict, "round trip and idtoeqv strictness force ua(eqv) = refl");
    Ok(UnivalenceCertificate {
        typoid: t.name().into(),
        ua,
        strict,
    })
}

/// Checks both round trips and that `ua` is constant on cells.
pub fn verify_certificate(t: &Typoid, c: &UnivalenceCertificate) -> ValidationReport {
    let mut report = ValidationReport::new();
    let layer = t.layer();
    let base = t.base();
    if c.typoid != t.name() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!("certificate is for `{}`, not `{}`", c.typoid, t.name()),
        );
    }
    if c.ua.len() != layer.edge_count() {
        report.violate(
            Law::Bookkeeping,
            [],
            format!("ua has {} entries for {} edges", c.ua.len(), layer.edge_count()),
        );
        return report.normalized();
    }
    let mut in_range = true;
    for e in layer.edges() {
        report.tick(Law::Bookkeeping);
        let p = c.ua(e);
        if p.index() >= base.path_count() {
            report.violate(Law::Bookkeeping, [e.into(), p.into()], "ua entry is out of range");
            in_range = false;
        } else if base.ends(p) != layer.ends(e) {
            report.violate(
                Law::Bookkeeping,
                [e.into(), p.into()],
                "ua entry has the wrong endpoints",
            );
            in_range = false;
        }
    }
    if !in_range {
        return report.normalized();
    }
    for p in base.paths() {
        report.tick(Law::RoundTrip1);
        let back = c.ua(t.idtoeqv(p));
        if back != p {
            report.violate(Law::RoundTrip1, [p.into(), back.into()], "ua(idtoeqv(p)) is not p");
        }
    }
    for e in layer.edges() {
        report.tick(Law::RoundTrip2);
        if !layer.same_cell(t.idtoeqv(c.ua(e)), e) {
            report.violate(
                Law::RoundTrip2,
                [e.into(), c.ua(e).into()],
                "idtoeqv(ua(e)) is not in the cell of e",
            );
        }
    }
    for x in t.terms() {
        for y in t.terms() {
            let hom = layer.hom(x, y);
            for &e in hom {
                for &d in hom.iter().filter(|&&d| layer.same_cell(e, d)) {
                    report.tick(Law::UaCongruence);
                    if c.ua(e) != c.ua(d) {
                        report.violate(Law::UaCongruence, [e.into(), d.into()], "ua separates cell-equal edges");
                    }
                }
            }
        }
    }
    let strict = t.terms().all(|x| c.ua(layer.eqv(x)) == base.refl(x));
    if strict != c.strict {
        report.violate(Law::Bookkeeping, [], "certificate misreports strictness");
    }
    report.normalized()
}

/// `ua` packaged as a typoid function from `t` to the equality typoid of its
/// base. Returns the equality typoid together with the morphism.
pub fn certificate_morphism(t: &Typoid, c: &UnivalenceCertificate) -> (Typoid, TypoidMorphism) {
    let eq = equality_typoid(t.base(), format!("{}_eq", t.name())).expect("base of a valid typoid is a valid groupoid");
    let m = TypoidMorphism {
        name: format!("ua_{}", t.name()),
        source: t.name().into(),
        target: eq.name().into(),
        term_map: t.terms().collect(),
        path_map: Some(t.base().paths().collect()),
        edge_map: c.ua.iter().map(|p| EdgeId::new(p.index())).collect(),
    };
    (eq, m)
}

/// The typoid function induced by a term map and a path action out of a
/// univalent typoid: `phi = idtoeqv_dst . ap . ua_src`.
pub fn induce_morphism(
    name: impl Into<String>,
    src: &Typoid,
    dst: &Typoid,
    term_map: &[TermId],
    path_map: &[PathId],
) -> Result<TypoidMorphism, Error> {
    let cert = check_univalence(src)?;
    let report = validate_typoid(dst);
    if !report.is_valid() {
        return Err(Error::InvalidTypoid {
            name: dst.name().into(),
            report: report.into(),
        });
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
    let report = check_path_action(src.base(), dst.base(), term_map, path_map);
    if !report.is_valid() {
        return Err(Error::BadPathAction(report.into()));
    }
    Ok(induced(name.into(), src, dst, &cert, term_map, path_map))
}

pub(crate) fn induced(
    name: String,
    src: &Typoid,
    dst: &Typoid,
    cert: &UnivalenceCertificate,
    term_map: &[TermId],
    path_map: &[PathId],
) -> TypoidMorphism {
    TypoidMorphism {
        name,
        source: src.name().into(),
        target: dst.name().into(),
        term_map: term_map.to_vec(),
        path_map: Some(path_map.to_vec()),
        edge_map: src
            .layer()
            .edges()
            .map(|e| dst.idtoeqv(path_map[cert.ua(e).index()]))
            .collect(),
    }
}

/// `ua_dst(phi(idtoeqv_src(p))) = ap(p)` for every base path of the source.
pub fn check_square(m: &TypoidMorphism, src: &Typoid, c_dst: &UnivalenceCertificate) -> ValidationReport {
    let mut report = ValidationReport::new();
    let Some(ap) = &m.path_map else {
        report.violate(Law::Bookkeeping, [], "morphism has no path action");
        return report;
    };
    for p in src.base().paths() {
        report.tick(Law::Square);
        let round = c_dst.ua(m.edge(src.idtoeqv(p)));
        if round != ap[p.index()] {
            report.violate(
                Law::Square,
                [p.into(), round.into()],
                "ua(phi(idtoeqv(p))) is not ap(p)",
            );
        }
    }
    report.normalized()
}

/// `ua_dst(phi(e)) = ap(ua_src(e))` for every source edge; the square for
/// morphisms between two univalent typoids.
pub fn check_edge_square(
    m: &TypoidMorphism,
    src: &Typoid,
    c_src: &UnivalenceCertificate,
    c_dst: &UnivalenceCertificate,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let Some(ap) = &m.path_map else {
        report.violate(Law::Bookkeeping, [], "morphism has no path action");
        return report;
    };
    for e in src.layer().edges() {
        report.tick(Law::Square);
        if c_dst.ua(m.edge(e)) != ap[c_src.ua(e).index()] {
            report.violate(Law::Square, [e.into()], "ua(phi(e)) is not ap(ua(e))");
        }
    }
    report.normalized()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutcome {
    Certified(UnivalenceCertificate),
    /// No point of the other factor was supplied.
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFactors {
    pub left: FactorOutcome,
    pub right: FactorOutcome,
}

/// Certificates for the factors of a univalent product, read off the
/// product's certificate along `e -> (e, eqv_b)` (and symmetrically) for the
/// given points of the other factor.
pub fn check_pointed_factors(
    prod: &Typoid,
    prov: &ProductProvenance,
    left: &Typoid,
    right: &Typoid,
    left_point: Option<TermId>,
    right_point: Option<TermId>,
) -> Result<PointedFactors, Error> {
    prov.check(prod, left, right)?;
    let cert = check_univalence(prod)?;
    for (point, factor) in [(left_point, left), (right_point, right)] {
        if point.is_some_and(|x| x.index() >= factor.term_count()) {
            return Err(Error::TermOutOfRange);
        }
    }
    let left_outcome = match right_point {
        None => FactorOutcome::Inapplicable,
        Some(b) => {
            let eqv_b = right.layer().eqv(b);
            let ua = left
                .layer()
                .edges()
                .map(|e| prov.unpair_path(cert.ua(prov.pair_edge(e, eqv_b))).0)
                .collect();
            FactorOutcome::Certified(factor_certificate(left, ua))
        }
    };
    let right_outcome = match left_point {
        None => FactorOutcome::Inapplicable,
        Some(a) => {
            let eqv_a = left.layer().eqv(a);
            let ua = right
                .layer()
                .edges()
                .map(|e| prov.unpair_path(cert.ua(prov.pair_edge(eqv_a, e))).1)
                .collect();
            FactorOutcome::Certified(factor_certificate(right, ua))
        }
    };
    Ok(PointedFactors {
        left: left_outcome,
        right: right_outcome,
    })
}

/// The certificate of a product built from certificates of its factors:
/// `(e, d)` goes to the path pairing `ua(e)` with `ua(d)`.
pub fn product_certificate(
    prov: &ProductProvenance,
    left: &UnivalenceCertificate,
    right: &UnivalenceCertificate,
) -> Result<UnivalenceCertificate, Error> {
    if left.typoid != prov.left
        || right.typoid != prov.right
        || left.ua.len() != prov.left_shape.edges
        || right.ua.len() != prov.right_shape.edges
    {
        return Err(Error::Provenance(prov.product.clone()));
    }
    let n = prov.right_shape.edges;
    let ua = (0..prov.left_shape.edges * n)
        .map(|i| prov.pair_path(left.ua[i / n], right.ua[i % n]))
        .collect();
    Ok(UnivalenceCertificate {
        typoid: prov.product.clone(),
        ua,
        strict: left.strict && right.strict,
    })
}

fn factor_certificate(t: &Typoid, ua: Vec<PathId>) -> UnivalenceCertificate {
    let strict = t.terms().all(|x| ua[t.layer().eqv(x).index()] == t.base().refl(x));
    UnivalenceCertificate {
        typoid: t.name().into(),
        ua,
        strict,
    }
}
