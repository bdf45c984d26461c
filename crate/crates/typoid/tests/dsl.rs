use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use typoid::dsl::{parse, serialize, Document, MorphismDecl, TypoidDecl};
use typoid::naming::{generic_names, product_names};
use typoid_core::constructions::product_typoid;
use typoid_core::families::{for_each_candidate, FamilyLimits};
use typoid_core::{check_univalence, stock, validate_typoid, Typoid};

fn corpus() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "typoid"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.clone(), fs::read_to_string(p).unwrap()))
        .collect()
}

fn parse_ok(src: &str) -> Document {
    parse(src).unwrap_or_else(|d| panic!("{d:#?}"))
}

fn single(t: &Typoid) -> Document {
    let mut doc = Document::default();
    doc.push_typoid(TypoidDecl::from_typoid(t, &generic_names(t)));
    doc
}

/// Same verdicts and the same amount of checking work.
fn same_behaviour(a: &Typoid, b: &Typoid) {
    let (ra, rb) = (validate_typoid(a), validate_typoid(b));
    assert_eq!(ra.is_valid(), rb.is_valid(), "{}", a.name());
    assert_eq!(
        ra.check_counts().collect::<Vec<_>>(),
        rb.check_counts().collect::<Vec<_>>()
    );
    if ra.is_valid() {
        assert_eq!(check_univalence(a).is_ok(), check_univalence(b).is_ok(), "{}", a.name());
    }
}

#[test]
fn terms_alone_give_the_unit_typoid() {
    let doc = parse_ok("typoid U { terms x ; }");
    let t = doc.typoid("U").unwrap().to_typoid();
    assert_eq!(t, stock::unit().with_name("U"));
}

#[test]
fn z2_source_matches_the_programmatic_equality_typoid() {
    let src = "typoid eq_z2 {
        terms x ;
        path p : x -> x ;
        comp p . p = refl_x ;
        pinv p = p ;
        edge e : x ~ x ;
        strictunits ;
        star e * e = eqv_x ;
        einv e = e ;
        idtoeqv p => e ;
    }";
    let t = parse_ok(src).typoid("eq_z2").unwrap().to_typoid();
    assert_eq!((t.term_count(), t.base().path_count()), (1, 2));
    assert_eq!(t, stock::eq_z2());
}

#[test]
fn corpus_files_match_the_stock_typoids() {
    let expected = [
        ("unit", stock::unit()),
        ("bool_disc", stock::bool_disc()),
        ("eq_z2", stock::eq_z2()),
        ("twoedge", stock::twoedge()),
        ("fat_unit", stock::fat_unit()),
    ];
    for (name, t) in expected {
        let src = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("corpus/{name}.typoid")))
            .unwrap();
        assert_eq!(parse_ok(&src).typoid(name).unwrap().to_typoid(), t, "{name}");
    }
    // these number their paths differently from the stock builders
    for (name, t) in [
        ("prop2", stock::prop2()),
        ("universe_2", stock::universe_2()),
        ("universe_1_1", stock::universe_1_1()),
    ] {
        let src = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("corpus/{name}.typoid")))
            .unwrap();
        same_behaviour(&parse_ok(&src).typoid(name).unwrap().to_typoid(), &t);
    }
}

#[test]
fn corpus_files_round_trip() {
    for (path, src) in corpus() {
        let doc = parse_ok(&src);
        let text = serialize(&doc);
        let again = parse(&text).unwrap_or_else(|d| panic!("{}: {d:#?}\n{text}", path.display()));
        assert_eq!(again, doc, "{}", path.display());
        assert_eq!(serialize(&again), text, "{}", path.display());
    }
}

#[test]
fn stock_corpus_round_trips() {
    for t in stock::stock_corpus() {
        let doc = single(&t);
        let text = serialize(&doc);
        let again = parse(&text).unwrap_or_else(|d| panic!("{}: {d:#?}\n{text}", t.name()));
        assert_eq!(again, doc, "{}", t.name());
        same_behaviour(&again.typoid(t.name()).unwrap().to_typoid(), &t);
    }
}

#[test]
fn products_round_trip_with_derived_names() {
    let (a, b) = (stock::universe_1_1(), stock::eq_z2());
    let (p, prov) = product_typoid(&a, &b).unwrap();
    let names = product_names(&p, &prov, &generic_names(&a), &generic_names(&b));
    assert!(names.terms.iter().all(|n| n.contains('_')));
    let mut doc = Document::default();
    doc.push_typoid(TypoidDecl::from_typoid(&p, &names));
    let again = parse_ok(&serialize(&doc));
    assert_eq!(again, doc);
    same_behaviour(&again.typoid(p.name()).unwrap().to_typoid(), &p);
}

#[test]
fn canonical_text_is_a_fixed_point() {
    let canonical = "typoid eq_z2 {\n  terms x;\n  strictunits;\n  path p : x -> x;\n  comp p . p = refl_x;\n  pinv p = p;\n  edge e : x ~ x;\n  star e * e = eqv_x;\n  einv e = e;\n  idtoeqv p => e;\n}\n";
    assert_eq!(serialize(&parse_ok(canonical)), canonical);
}

#[test]
fn explicit_unit_entries_survive_when_they_differ_from_the_implicit_ones() {
    // breaks unit absorption on purpose; the text must keep saying so
    let src = "typoid bad { terms x; edge u : x ~ x; star eqv_x * u = eqv_x; star u * eqv_x = u; star u * u = eqv_x; einv u = u; }";
    let doc = parse_ok(src);
    let text = serialize(&doc);
    assert!(text.contains("star eqv_x * u = eqv_x;"), "{text}");
    assert!(!text.contains("strictunits"));
    assert_eq!(parse_ok(&text), doc);
    assert!(!validate_typoid(&doc.typoid("bad").unwrap().to_typoid()).is_valid());
}

#[test]
fn unit_overrides_round_trip() {
    let src = "typoid o { terms x; edge one : x ~ x; eqv x = one; }";
    let doc = parse_ok(src);
    let t = doc.typoid("o").unwrap().to_typoid();
    assert_eq!(t.layer().edge_count(), 1);
    assert!(validate_typoid(&t).is_valid());
    let text = serialize(&doc);
    assert!(text.contains("eqv x = one;"), "{text}");
    assert_eq!(parse_ok(&text), doc);
}

#[test]
fn morphisms_round_trip() {
    let (_, src) = corpus()
        .into_iter()
        .find(|(p, _)| p.ends_with("functions.typoid"))
        .unwrap();
    let doc = parse_ok(&src);
    let smear = doc.morphism("smear").unwrap();
    assert_eq!(smear.edges["eqv_x"], "u");
    assert_eq!(smear.paths.as_ref().unwrap()["refl_x"], "refl_x");
    let collapse = doc.morphism("collapse").unwrap();
    let (s, d) = (doc.typoid("eq_z2").unwrap(), doc.typoid("unit").unwrap());
    let m = collapse.to_morphism(s, d);
    assert_eq!(&MorphismDecl::from_morphism(&m, s, d), collapse);
}

#[test]
fn morphisms_without_path_statements_have_no_path_action() {
    let src = "typoid z { terms x; path p : x -> x; comp p . p = refl_x; pinv p = p; idtoeqv p => eqv_x; }
               typoid u { terms y; }
               morphism m : z -> u { term x |-> y; }";
    let doc = parse_ok(src);
    assert_eq!(doc.morphism("m").unwrap().paths, None);
    assert_eq!(parse_ok(&serialize(&doc)), doc);
}

fn family() -> Vec<Typoid> {
    let mut out = Vec::new();
    let limits = FamilyLimits {
        max_terms: 2,
        max_paths_per_hom: 2,
        max_edges_per_hom: 2,
    };
    for_each_candidate(limits, |t| out.push(t));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_typoids_round_trip(i in 0usize..10_000) {
        let all = family();
        let t = &all[i % all.len()];
        let doc = single(t);
        let text = serialize(&doc);
        let again = parse(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize(&again), text);
        let back = again.typoid(t.name()).unwrap().to_typoid();
        prop_assert_eq!(validate_typoid(&back).is_valid(), validate_typoid(t).is_valid());
    }

    #[test]
    fn comments_and_blank_lines_do_not_change_the_document(
        i in 0usize..10_000,
        noise in proptest::collection::vec(prop_oneof![Just("\n"), Just("  # note\n"), Just("\n\n")], 1..6),
    ) {
        let all = family();
        let t = &all[i % all.len()];
        let text = serialize(&single(t));
        let mut noisy = String::new();
        for (k, line) in text.lines().enumerate() {
            noisy.push_str(noise[k % noise.len()]);
            noisy.push_str(line);
            noisy.push('\n');
        }
        prop_assert_eq!(parse(&noisy).unwrap(), parse(&text).unwrap());
    }
}
