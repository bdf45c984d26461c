use std::sync::OnceLock;

use proptest::prelude::*;
use typoid_core::families::{for_each_candidate, FamilyLimits};
use typoid_core::search::{for_each_edge_action, path_actions, term_maps};
use typoid_core::{
    check_inverse_law, check_univalence, compose_morphisms, derived_laws, expected_checks, validate_morphism,
    validate_typoid, verify_certificate, EdgeId, MorphismChecks, PathId, TermId, Typoid, TypoidMorphism,
};

fn family() -> &'static [Typoid] {
    static FAMILY: OnceLock<Vec<Typoid>> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let mut out = Vec::new();
        let limits = FamilyLimits {
            max_terms: 2,
            max_paths_per_hom: 2,
            max_edges_per_hom: 3,
        };
        for_each_candidate(limits, |t| out.push(t));
        out
    })
}

fn valid_family() -> &'static [Typoid] {
    static VALID: OnceLock<Vec<Typoid>> = OnceLock::new();
    VALID.get_or_init(|| {
        family()
            .iter()
            .filter(|t| validate_typoid(t).is_valid())
            .cloned()
            .collect()
    })
}

#[derive(Clone, Copy, Debug)]
enum Entry {
    Comp(PathId, PathId, PathId),
    Pinv(PathId, PathId),
    Star(EdgeId, EdgeId, EdgeId),
    Einv(EdgeId, EdgeId),
    Join(EdgeId, EdgeId),
    Idtoeqv(PathId, EdgeId),
}

fn entries(t: &Typoid) -> Vec<Entry> {
    let (g, l) = (t.base(), t.layer());
    let mut out = Vec::new();
    for (p, q) in g.tables().composable_pairs() {
        out.push(Entry::Comp(p, q, g.comp(p, q)));
    }
    for p in g.paths() {
        out.push(Entry::Pinv(p, g.inv(p)));
        out.push(Entry::Idtoeqv(p, t.idtoeqv(p)));
    }
    for (e, d) in l.tables().composable_pairs() {
        out.push(Entry::Star(e, d, l.star(e, d)));
    }
    for e in l.edges() {
        out.push(Entry::Einv(e, l.einv(e)));
        out.push(Entry::Join(l.class_of(e), e));
    }
    out
}

/// Rebuilds `t` by feeding `entries` to a builder in the given order.
fn rebuild(t: &Typoid, entries: &[Entry]) -> Typoid {
    let (g, l) = (t.base(), t.layer());
    let mut b = Typoid::builder(t.name(), t.term_count());
    for p in g.paths() {
        let (x, y) = g.ends(p);
        b.add_path(x, y);
    }
    for e in l.edges() {
        let (x, y) = l.ends(e);
        b.add_edge(x, y);
    }
    for x in t.terms() {
        b.set_refl(x, g.refl(x)).set_eqv(x, l.eqv(x));
    }
    for &entry in entries {
        match entry {
            Entry::Comp(p, q, r) => b.set_comp(p, q, r),
            Entry::Pinv(p, q) => b.set_pinv(p, q),
            Entry::Star(e, d, c) => b.set_star(e, d, c),
            Entry::Einv(e, d) => b.set_einv(e, d),
            Entry::Join(e, d) => b.join_cells(e, d),
            Entry::Idtoeqv(p, e) => b.set_idtoeqv(p, e),
        };
    }
    b.build()
}

/// Redirects one table entry to another arrow of the same hom-set.
fn corrupt(t: &Typoid, entries: &mut [Entry], which: usize, pick: usize) {
    let (g, l) = (t.base(), t.layer());
    if entries.is_empty() {
        return;
    }
    let i = which % entries.len();
    entries[i] = match entries[i] {
        Entry::Comp(p, q, r) => {
            let hom = g.hom(g.ends(r).0, g.ends(r).1);
            Entry::Comp(p, q, hom[pick % hom.len()])
        }
        Entry::Star(e, d, c) => {
            let hom = l.hom(l.ends(c).0, l.ends(c).1);
            Entry::Star(e, d, hom[pick % hom.len()])
        }
        Entry::Idtoeqv(p, e) => {
            let hom = l.hom(l.ends(e).0, l.ends(e).1);
            Entry::Idtoeqv(p, hom[pick % hom.len()])
        }
        Entry::Join(_, d) => {
            let hom = l.hom(l.ends(d).0, l.ends(d).1);
            Entry::Join(hom[pick % hom.len()], d)
        }
        other => other,
    };
}

fn shuffled_entries() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..valid_family().len()).prop_flat_map(|i| {
        let n = entries(&valid_family()[i]).len();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valid_typoids_satisfy_the_derived_laws(i in 0..valid_family().len()) {
        let t = &valid_family()[i];
        prop_assert!(derived_laws(t).is_valid());
        let counted: Vec<_> = validate_typoid(t).check_counts().collect();
        prop_assert_eq!(counted, expected_checks(t));
    }

    #[test]
    fn insertion_order_does_not_matter((i, order) in shuffled_entries()) {
        let t = &valid_family()[i];
        let list = entries(t);
        let permuted: Vec<Entry> = order.iter().map(|&k| list[k]).collect();
        let rebuilt = rebuild(t, &permuted);
        prop_assert_eq!(&rebuilt, t);
        prop_assert_eq!(validate_typoid(&rebuilt), validate_typoid(t));
    }

    #[test]
    fn reports_on_corrupted_tables_do_not_depend_on_order(
        (i, order) in shuffled_entries(),
        which in any::<usize>(),
        pick in any::<usize>(),
    ) {
        let t = &valid_family()[i];
        let mut list = entries(t);
        corrupt(t, &mut list, which, pick);
        let permuted: Vec<Entry> = order.iter().map(|&k| list[k]).collect();
        prop_assert_eq!(validate_typoid(&rebuild(t, &permuted)), validate_typoid(&rebuild(t, &list)));
    }

    #[test]
    fn certificates_verify(i in 0..valid_family().len()) {
        let t = &valid_family()[i];
        if let Ok(cert) = check_univalence(t) {
            prop_assert!(cert.strict);
            prop_assert!(verify_certificate(t, &cert).is_valid());
        }
    }

    #[test]
    fn morphisms_between_family_members_compose(
        a in 0..valid_family().len(),
        b in 0..valid_family().len(),
        c in 0..valid_family().len(),
        choice in any::<(usize, usize)>(),
    ) {
        let (a, b, c) = (&valid_family()[a], &valid_family()[b], &valid_family()[c]);
        let (Some(f), Some(g)) = (some_morphism(a, b, choice.0), some_morphism(b, c, choice.1)) else {
            return Ok(());
        };
        for (m, s, d) in [(&f, a, b), (&g, b, c)] {
            prop_assert!(validate_morphism(m, s, d, MorphismChecks::default()).is_valid());
            prop_assert!(check_inverse_law(m, s, d).is_valid());
        }
        let gf = compose_morphisms(&f, &g).unwrap();
        prop_assert!(validate_morphism(&gf, a, c, MorphismChecks::default()).is_valid());
    }
}

/// The `k`-th typoid function from `a` to `b` in enumeration order, if any
/// exist, capped to keep the search cheap.
fn some_morphism(a: &Typoid, b: &Typoid, k: usize) -> Option<TypoidMorphism> {
    let mut all = Vec::new();
    for f in term_maps(a.term_count(), b.term_count()) {
        let Some(ap) = path_actions(a.base(), b.base(), &f).into_iter().next() else {
            continue;
        };
        for_each_edge_action(a, b, &f, |phi| {
            all.push((f.clone(), ap.clone(), phi.to_vec()));
            if all.len() >= 16 {
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        });
        if all.len() >= 16 {
            break;
        }
    }
    if all.is_empty() {
        return None;
    }
    let (term_map, path_map, edge_map): (Vec<TermId>, Vec<PathId>, Vec<EdgeId>) = all.swap_remove(k % all.len());
    Some(TypoidMorphism {
        name: "m".into(),
        source: a.name().into(),
        target: b.name().into(),
        term_map,
        path_map: Some(path_map),
        edge_map,
    })
}
