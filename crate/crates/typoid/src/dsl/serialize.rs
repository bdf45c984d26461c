//! Canonical text form. Entries the parser would materialize on its own are
//! left out; everything else is written in id order.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::document::{refl_name, Document, Index, Item, MorphismDecl, TypoidDecl};

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (i, item) in doc.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match item {
            Item::Typoid(t) => write_typoid(&mut out, t),
            Item::Morphism(m) => {
                let find = |n: &str| doc.typoid(n);
                write_morphism(&mut out, m, find(&m.source), find(&m.target));
            }
        }
    }
    out
}

/// Whether every non-unit edge absorbs the units at its ends on the nose,
/// so that `strictunits;` can stand in for those entries.
fn absorbs_units(t: &TypoidDecl) -> bool {
    !t.edges.is_empty()
        && t.edges.iter().all(|e| {
            let (ua, ub) = (&t.eqv[&e.source], &t.eqv[&e.target]);
            t.star.get(&(ua.clone(), e.name.clone())) == Some(&e.name)
                && t.star.get(&(e.name.clone(), ub.clone())) == Some(&e.name)
        })
}

fn write_typoid(out: &mut String, t: &TypoidDecl) {
    let ix = t.index();
    let strict = absorbs_units(t);
    let _ = writeln!(out, "typoid {} {{", t.name);
    let _ = write!(out, "  terms");
    for x in &t.terms {
        let _ = write!(out, " {x}");
    }
    out.push_str(";\n");
    if strict {
        out.push_str("  strictunits;\n");
    }
    for p in &t.paths {
        let _ = writeln!(out, "  path {} : {} -> {};", p.name, p.source, p.target);
    }
    let refl_of: BTreeMap<&str, String> = t.terms.iter().map(|x| (x.as_str(), refl_name(x))).collect();
    let path_ends = |p: &str| {
        let (x, y) = ix.path_ends[ix.path(p).expect("declared").index()];
        (ix.term_name(x).to_string(), ix.term_name(y).to_string())
    };
    let edge_ends = |e: &str| {
        let (x, y) = ix.edge_ends[ix.edge(e).expect("declared").index()];
        (ix.term_name(x).to_string(), ix.term_name(y).to_string())
    };
    let comp = sorted_pairs(&t.comp, |p| ix.path(p).map(|p| p.index()));
    for ((p, q), r) in comp {
        let (a, _) = path_ends(p);
        let (_, b) = path_ends(q);
        let implicit = (*p == refl_of[a.as_str()] && r == q) || (*q == refl_of[b.as_str()] && r == p);
        if !implicit {
            let _ = writeln!(out, "  comp {p} . {q} = {r};");
        }
    }
    for (p, q) in sorted_singles(&t.pinv, |p| ix.path(p).map(|p| p.index())) {
        if !(p == q && refl_of.values().any(|r| r == p)) {
            let _ = writeln!(out, "  pinv {p} = {q};");
        }
    }
    for e in &t.edges {
        let _ = writeln!(out, "  edge {} : {} ~ {};", e.name, e.source, e.target);
    }
    for x in &t.terms {
        let e = &t.eqv[x];
        if t.edges.iter().any(|d| &d.name == e) {
            let _ = writeln!(out, "  eqv {x} = {e};");
        }
    }
    let is_unit = |e: &str| t.eqv.values().any(|u| u == e);
    for ((e, d), c) in sorted_pairs(&t.star, |e| ix.edge(e).map(|e| e.index())) {
        let (a, _) = edge_ends(e);
        let (_, b) = edge_ends(d);
        let units_only = e == d && d == c && is_unit(e);
        let absorbed = strict && ((*e == t.eqv[&a] && c == d) || (*d == t.eqv[&b] && c == e));
        if !(units_only || absorbed) {
            let _ = writeln!(out, "  star {e} * {d} = {c};");
        }
    }
    for (e, d) in sorted_singles(&t.einv, |e| ix.edge(e).map(|e| e.index())) {
        if !(e == d && is_unit(e)) {
            let _ = writeln!(out, "  einv {e} = {d};");
        }
    }
    let mut classes: Vec<Vec<&String>> = t
        .cells
        .iter()
        .map(|c| {
            let mut v: Vec<&String> = c.iter().collect();
            v.sort_by_key(|e| ix.edge(e).map(|e| e.index()));
            v
        })
        .collect();
    classes.sort_by_key(|c| ix.edge(c[0]).map(|e| e.index()));
    for class in classes {
        for other in &class[1..] {
            let _ = writeln!(out, "  cell {} == {};", class[0], other);
        }
    }
    for (p, e) in sorted_singles(&t.idtoeqv, |p| ix.path(p).map(|p| p.index())) {
        let (a, b) = path_ends(p);
        let implicit = a == b && *p == refl_of[a.as_str()] && *e == t.eqv[&a];
        if !implicit {
            let _ = writeln!(out, "  idtoeqv {p} => {e};");
        }
    }
    out.push_str("}\n");
}

fn write_morphism(out: &mut String, m: &MorphismDecl, src: Option<&TypoidDecl>, dst: Option<&TypoidDecl>) {
    let _ = writeln!(out, "morphism {} : {} -> {} {{", m.name, m.source, m.target);
    let si = src.map(TypoidDecl::index);
    let order = |ix: &Option<Index>, name: &str, kind: u8| -> Option<usize> {
        let ix = ix.as_ref()?;
        match kind {
            0 => ix.term(name).map(|x| x.index()),
            1 => ix.path(name).map(|p| p.index()),
            _ => ix.edge(name).map(|e| e.index()),
        }
    };
    for (x, y) in sorted_singles(&m.terms, |x| order(&si, x, 0)) {
        let _ = writeln!(out, "  term {x} |-> {y};");
    }
    let image = |x: &str| m.terms.get(x);
    if let Some(paths) = &m.paths {
        for (p, q) in sorted_singles(paths, |p| order(&si, p, 1)) {
            let implicit = src.is_some_and(|s| {
                s.terms
                    .iter()
                    .any(|x| refl_name(x) == *p && image(x).map(|y| refl_name(y)).as_ref() == Some(q))
            });
            if !implicit {
                let _ = writeln!(out, "  path {p} |-> {q};");
            }
        }
    }
    for (e, d) in sorted_singles(&m.edges, |e| order(&si, e, 2)) {
        let implicit = match (src, dst) {
            (Some(s), Some(t)) => s
                .terms
                .iter()
                .any(|x| &s.eqv[x] == e && image(x).and_then(|y| t.eqv.get(y)) == Some(d)),
            _ => false,
        };
        if !implicit {
            let _ = writeln!(out, "  edge {e} |-> {d};");
        }
    }
    out.push_str("}\n");
}

fn sorted_singles(table: &BTreeMap<String, String>, id: impl Fn(&str) -> Option<usize>) -> Vec<(&String, &String)> {
    let mut v: Vec<_> = table.iter().collect();
    v.sort_by_key(|(k, _)| (id(k), (*k).clone()));
    v
}

fn sorted_pairs(
    table: &BTreeMap<(String, String), String>,
    id: impl Fn(&str) -> Option<usize>,
) -> Vec<((&String, &String), &String)> {
    let mut v: Vec<_> = table.iter().map(|((a, b), c)| ((a, b), c)).collect();
    v.sort_by_key(|((a, b), _)| (id(a), id(b)));
    v
}
