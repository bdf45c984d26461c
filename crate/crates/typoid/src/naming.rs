//! Names for the arrows of constructed typoids, derived from the names of
//! their inputs where that stays unambiguous.

use std::collections::HashSet;

use typoid_core::constructions::ProductProvenance;
use typoid_core::{EdgeId, PathId, TermId, Typoid};

use crate::dsl::{eqv_name, refl_name, Names};

pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn usable(names: &[String]) -> bool {
    let mut seen = HashSet::new();
    names.iter().all(|n| is_ident(n) && seen.insert(n.as_str()))
}

/// Names `t` from hints. Refl paths and unit edges are always named after
/// their terms; if any hint is not a fresh identifier, that whole kind of
/// arrow falls back to `t<i>`, `p<i>` or `e<i>`.
pub fn names_from_hints(
    t: &Typoid,
    term_hint: impl Fn(TermId) -> String,
    path_hint: impl Fn(PathId) -> String,
    edge_hint: impl Fn(EdgeId) -> String,
) -> Names {
    let mut terms: Vec<String> = t.terms().map(&term_hint).collect();
    if !usable(&terms) {
        terms = t.terms().map(|x| format!("t{}", x.index())).collect();
    }
    let (g, l) = (t.base(), t.layer());
    let refl_of = |p: PathId| t.terms().find(|&x| g.tables().lookup_unit(x) == Some(p));
    let unit_of = |e: EdgeId| t.terms().find(|&x| l.tables().lookup_unit(x) == Some(e));
    let pick = |hint: &dyn Fn(usize) -> String, unit: &dyn Fn(usize) -> Option<String>, count: usize, prefix: &str| {
        let named: Vec<String> = (0..count).map(|i| unit(i).unwrap_or_else(|| hint(i))).collect();
        if usable(&named) {
            named
        } else {
            (0..count)
                .map(|i| unit(i).unwrap_or_else(|| format!("{prefix}{i}")))
                .collect()
        }
    };
    let paths = pick(
        &|i| path_hint(PathId::new(i)),
        &|i| refl_of(PathId::new(i)).map(|x| refl_name(&terms[x.index()])),
        g.path_count(),
        "p",
    );
    let edges = pick(
        &|i| edge_hint(EdgeId::new(i)),
        &|i| unit_of(EdgeId::new(i)).map(|x| eqv_name(&terms[x.index()])),
        l.edge_count(),
        "e",
    );
    Names { terms, paths, edges }
}

pub fn generic_names(t: &Typoid) -> Names {
    names_from_hints(
        t,
        |x| format!("t{}", x.index()),
        |p| format!("p{}", p.index()),
        |e| format!("e{}", e.index()),
    )
}

/// Pairs are named `<left>_<right>` componentwise.
pub fn product_names(prod: &Typoid, prov: &ProductProvenance, left: &Names, right: &Names) -> Names {
    names_from_hints(
        prod,
        |z| {
            let (a, b) = prov.unpair_term(z);
            format!("{}_{}", left.terms[a.index()], right.terms[b.index()])
        },
        |p| {
            let (a, b) = prov.unpair_path(p);
            format!("{}_{}", left.paths[a.index()], right.paths[b.index()])
        },
        |e| {
            let (a, b) = prov.unpair_edge(e);
            format!("{}_{}", left.edges[a.index()], right.edges[b.index()])
        },
    )
}

/// Terms and paths keep their names; the edge `x ~ y` is `<x>_to_<y>`.
pub fn truncation_names(tr: &Typoid, src: &Names) -> Names {
    let n = tr.term_count();
    names_from_hints(
        tr,
        |x| src.terms[x.index()].clone(),
        |p| src.paths[p.index()].clone(),
        |e| format!("{}_to_{}", src.terms[e.index() / n], src.terms[e.index() % n]),
    )
}

/// Terms and edges keep their names; a path is named after the edge that
/// stands for its cell.
pub fn completion_names(done: &Typoid, names: &Names) -> Names {
    names_from_hints(
        done,
        |x| names.terms[x.index()].clone(),
        |p| match done.lookup_idtoeqv(p) {
            Some(e) => format!("c_{}", names.edges[e.index()]),
            None => String::new(),
        },
        |e| names.edges[e.index()].clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use typoid_core::stock;

    #[test]
    fn identifiers() {
        assert!(is_ident("a_1") && is_ident("_x"));
        assert!(!is_ident("1a") && !is_ident("") && !is_ident("a-b"));
    }

    #[test]
    fn clashing_hints_fall_back() {
        let t = stock::fat_unit();
        let names = names_from_hints(&t, |_| "x".into(), |_| "same".into(), |_| "same".into());
        assert_eq!(names.terms, vec!["x"]);
        assert_eq!(names.paths, vec!["refl_x"]);
        assert_eq!(names.edges, vec!["eqv_x", "same"]);
        // two terms and two cross paths all hinted alike
        let u = stock::universe_1_1();
        let names = names_from_hints(&u, |_| "x".into(), |_| "same".into(), |_| "same".into());
        assert_eq!(names.terms, vec!["t0", "t1"]);
        assert_eq!(names.paths, vec!["refl_t0", "p1", "p2", "refl_t1"]);
    }
}
