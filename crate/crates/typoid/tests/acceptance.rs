//! The ten acceptance criteria, run in order. Each prints one PASS or FAIL
//! line; the test fails if any criterion does.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use typoid::dsl::{parse, serialize, Document, TypoidDecl};
use typoid::naming::generic_names;
use typoid_core::constructions::{
    exponential_typoid, is_truncation, morphism_into_truncation, product_typoid, truncate, ExpLimits, ProductProvenance,
};
use typoid_core::families::{for_each_candidate, FamilyLimits};
use typoid_core::search::{for_each_edge_action, path_actions, term_maps};
use typoid_core::{
    check_inverse_law, check_pointed_factors, check_square, check_univalence, compose_morphisms, derived_laws,
    identity, induce_morphism, is_strict, product_certificate, stock, validate_morphism, validate_typoid,
    verify_certificate, Error, FactorOutcome, MorphismChecks, Typoid, TypoidMorphism,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn family() -> Vec<Typoid> {
    let limits = FamilyLimits {
        max_terms: 2,
        max_paths_per_hom: 2,
        max_edges_per_hom: 3,
    };
    let mut out = Vec::new();
    for_each_candidate(limits, |t| {
        if validate_typoid(&t).is_valid() {
            out.push(t);
        }
    });
    out
}

/// Univalent members of the base typoids and their truncations.
fn univalent_stock() -> Vec<Typoid> {
    let base = stock::stock_base();
    let mut all = base.clone();
    all.extend(base.iter().map(truncate));
    all.into_iter().filter(|t| check_univalence(t).is_ok()).collect()
}

fn univalent_products() -> Vec<(Typoid, ProductProvenance, Typoid, Typoid)> {
    let stock = univalent_stock();
    let mut out = Vec::new();
    for a in &stock {
        for b in &stock {
            let (p, prov) = product_typoid(a, b).unwrap();
            out.push((p, prov, a.clone(), b.clone()));
        }
    }
    out
}

fn singleton_homs(t: &Typoid) -> bool {
    t.terms().all(|x| t.terms().all(|y| t.base().hom(x, y).len() == 1))
}

fn max_edge_hom(t: &Typoid) -> usize {
    t.terms()
        .flat_map(|x| t.terms().map(move |y| (x, y)))
        .map(|(x, y)| t.layer().hom(x, y).len())
        .max()
        .unwrap_or(0)
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let corpus = stock::stock_corpus();
    for t in &corpus {
        let r = validate_typoid(t);
        ensure(r.is_valid(), || format!("{}: {r}", t.name()))?;
        let d = derived_laws(t);
        ensure(d.is_valid(), || format!("{}: {d}", t.name()))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "{} typoids valid with derived laws in {:.2?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn univalence_oracle() -> Outcome {
    let start = Instant::now();
    let family = family();
    let mut univalent = 0;
    for t in &family {
        let oracle = common::brute_force_certificates(t);
        ensure(oracle.len() <= 1, || {
            format!("{}: {} certificates", t.name(), oracle.len())
        })?;
        match check_univalence(t) {
            Ok(cert) => {
                ensure(oracle == [cert.ua.clone()], || {
                    format!("{}: decided {:?}, oracle {:?}", t.name(), cert.ua, oracle)
                })?;
                univalent += 1;
            }
            Err(Error::NotUnivalent { .. }) => {
                ensure(oracle.is_empty(), || format!("{}: oracle found {:?}", t.name(), oracle))?
            }
            Err(e) => return Err(format!("{}: {e}", t.name())),
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} valid typoids, {univalent} univalent, agree in {:.2?}",
        family.len(),
        start.elapsed()
    ))
}

fn products_univalent() -> Outcome {
    let start = Instant::now();
    let products = univalent_products();
    for (p, prov, a, b) in &products {
        let decided = check_univalence(p).map_err(|e| e.to_string())?;
        let (ca, cb) = (check_univalence(a).unwrap(), check_univalence(b).unwrap());
        let built = product_certificate(prov, &ca, &cb).map_err(|e| e.to_string())?;
        let r = verify_certificate(p, &built);
        ensure(r.is_valid(), || format!("{}: {r}", p.name()))?;
        ensure(built == decided, || {
            format!("{}: built and decided certificates differ", p.name())
        })?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} products certified in {:.2?}",
        products.len(),
        start.elapsed()
    ))
}

fn pointed_factors() -> Outcome {
    let mut n = 0;
    for (p, prov, a, b) in univalent_products() {
        let (Some(x), Some(y)) = (a.terms().next(), b.terms().next()) else {
            continue;
        };
        let out = check_pointed_factors(&p, &prov, &a, &b, Some(x), Some(y)).map_err(|e| e.to_string())?;
        for (outcome, factor) in [(out.left, &a), (out.right, &b)] {
            let FactorOutcome::Certified(c) = outcome else {
                return Err(format!("{}: factor {} not certified", p.name(), factor.name()));
            };
            let r = verify_certificate(factor, &c);
            ensure(r.is_valid(), || format!("{}: {r}", p.name()))?;
        }
        n += 1;
    }
    Ok(format!("{n} products, both factors certified"))
}

/// Every morphism induced from a univalent stock source with at most two
/// terms into a stock target.
fn induced_morphisms() -> Result<Vec<(TypoidMorphism, Typoid, Typoid)>, String> {
    let mut targets = univalent_stock();
    targets.push(stock::twoedge());
    let mut out = Vec::new();
    for src in targets
        .iter()
        .filter(|t| t.term_count() <= 2 && check_univalence(t).is_ok())
    {
        for dst in &targets {
            for f in term_maps(src.term_count(), dst.term_count()) {
                for ap in path_actions(src.base(), dst.base(), &f) {
                    let name = format!("m{}", out.len());
                    let m = induce_morphism(name, src, dst, &f, &ap).map_err(|e| e.to_string())?;
                    out.push((m, src.clone(), dst.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn induced_functions() -> Outcome {
    let all = induced_morphisms()?;
    let mut squares = 0;
    for (m, src, dst) in &all {
        let r = validate_morphism(m, src, dst, MorphismChecks::default());
        ensure(r.is_valid(), || format!("{} -> {}: {r}", src.name(), dst.name()))?;
        ensure(is_strict(m, src, dst), || {
            format!("{} -> {}: not strict", src.name(), dst.name())
        })?;
        let r = check_inverse_law(m, src, dst);
        ensure(r.is_valid(), || format!("{} -> {}: {r}", src.name(), dst.name()))?;
        if let Ok(c) = check_univalence(dst) {
            let r = check_square(m, src, &c);
            ensure(r.is_valid(), || format!("{} -> {}: {r}", src.name(), dst.name()))?;
            squares += 1;
        }
    }
    ensure(squares > 0, || "no square was checked".into())?;
    Ok(format!("{} induced functions, {squares} squares", all.len()))
}

fn exponentials() -> Outcome {
    let start = Instant::now();
    let limits = ExpLimits {
        max_terms: 64,
        max_edges: 256,
    };
    let mut n = 0;
    for b in univalent_stock()
        .iter()
        .filter(|b| b.term_count() <= 2 && max_edge_hom(b) <= 2)
    {
        let (e, _) = exponential_typoid(&stock::bool_disc(), b, limits).map_err(|e| format!("{}: {e}", b.name()))?;
        let r = validate_typoid(&e);
        ensure(r.is_valid(), || format!("{}: {r}", e.name()))?;
        check_univalence(&e).map_err(|err| err.to_string())?;
        n += 1;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{n} exponentials valid and univalent in {:.2?}",
        start.elapsed()
    ))
}

fn truncations() -> Outcome {
    let mut all = stock::stock_corpus();
    all.extend(family());
    let (mut yes, mut no) = (0, 0);
    for t in &all {
        let tr = truncate(t);
        let univalent = check_univalence(&tr).is_ok();
        ensure(univalent == singleton_homs(t), || {
            format!("{}: univalent {univalent}", t.name())
        })?;
        if univalent {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || "one direction untested".into())?;
    Ok(format!(
        "{} truncations: {yes} univalent, {no} not, as predicted",
        all.len()
    ))
}

fn morphism_suite() -> Outcome {
    // composable pairs among the induced functions and identities
    let mut suite = induced_morphisms()?;
    for t in univalent_stock() {
        suite.push((identity(&t), t.clone(), t));
    }
    let mut composed = 0;
    for (f, a, _) in &suite {
        for (g, _, c) in suite.iter().filter(|(g, _, _)| g.source == f.target) {
            let gf = compose_morphisms(f, g).map_err(|e| e.to_string())?;
            let r = validate_morphism(&gf, a, c, MorphismChecks::default());
            ensure(r.is_valid(), || format!("{} then {}: {r}", f.name, g.name))?;
            composed += 1;
        }
    }

    // into truncations, with the forced constant edge action
    let base = stock::stock_base();
    let mut into = 0;
    for src in &base {
        for dst in base.iter().map(truncate) {
            for f in term_maps(src.term_count(), dst.term_count()) {
                for ap in path_actions(src.base(), dst.base(), &f) {
                    let m = morphism_into_truncation("m", src, &dst, &f, Some(&ap)).map_err(|e| e.to_string())?;
                    let r = validate_morphism(&m, src, &dst, MorphismChecks::default());
                    ensure(r.is_valid(), || format!("{} -> {}: {r}", src.name(), dst.name()))?;
                    into += 1;
                }
            }
        }
    }

    // out of truncations over singleton-hom bases: every term map extends
    let mut out_of = 0;
    for src in base.iter().filter(|t| singleton_homs(t)).map(truncate) {
        ensure(is_truncation(&src), || format!("{} is not a truncation", src.name()))?;
        for dst in &base {
            for f in term_maps(src.term_count(), dst.term_count()) {
                for ap in path_actions(src.base(), dst.base(), &f) {
                    let mut found = None;
                    for_each_edge_action(&src, dst, &f, |phi| {
                        found = Some(phi.to_vec());
                        ControlFlow::Break(())
                    });
                    let Some(edge_map) = found else {
                        return Err(format!("{} -> {}: no edge action over {f:?}", src.name(), dst.name()));
                    };
                    let m = TypoidMorphism {
                        name: "m".into(),
                        source: src.name().into(),
                        target: dst.name().into(),
                        term_map: f.clone(),
                        path_map: Some(ap),
                        edge_map,
                    };
                    let r = validate_morphism(&m, &src, dst, MorphismChecks::default());
                    ensure(r.is_valid(), || format!("{} -> {}: {r}", src.name(), dst.name()))?;
                    out_of += 1;
                }
            }
        }
    }
    ensure(composed > 0 && into > 0 && out_of > 0, || "empty suite".into())?;
    Ok(format!(
        "{composed} composites, {into} into truncations, {out_of} out of truncations"
    ))
}

fn pairing_round_trips() -> Outcome {
    let mut checked = 0u64;
    for (p, prov, a, b) in univalent_products() {
        let (la, lb, lp) = (a.layer(), b.layer(), p.layer());
        for e in la.edges() {
            for d in lb.edges() {
                let z = prov.pair_edge(e, d);
                ensure(prov.unpair_edge(z) == (e, d), || {
                    format!("{}: unpair after pair", p.name())
                })?;
                let ends = (
                    prov.pair_term(la.ends(e).0, lb.ends(d).0),
                    prov.pair_term(la.ends(e).1, lb.ends(d).1),
                );
                ensure(lp.ends(z) == ends, || format!("{}: endpoints of paired edge", p.name()))?;
                checked += 1;
            }
        }
        for z in lp.edges() {
            let (e, d) = prov.unpair_edge(z);
            ensure(prov.pair_edge(e, d) == z, || format!("{}: pair after unpair", p.name()))?;
        }
        // congruence: cells of pairs are pairs of cells
        for z in lp.edges() {
            let (x, y) = lp.ends(z);
            for &w in lp.hom(x, y) {
                let ((e, d), (e2, d2)) = (prov.unpair_edge(z), prov.unpair_edge(w));
                let both = a.cells_equal(e, e2).unwrap() && b.cells_equal(d, d2).unwrap();
                ensure(p.cells_equal(z, w).unwrap() == both, || {
                    format!("{}: cells of {z} and {w}", p.name())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairing and cell instances"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn dsl_and_cli() -> Outcome {
    let mut docs = Vec::new();
    for entry in fs::read_dir(corpus_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let src = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        docs.push((
            path.display().to_string(),
            parse(&src).map_err(|d| format!("{}: {d:?}", path.display()))?,
        ));
    }
    for t in stock::stock_corpus() {
        let mut doc = Document::default();
        doc.push_typoid(TypoidDecl::from_typoid(&t, &generic_names(&t)));
        docs.push((t.name().into(), doc));
    }
    for (name, doc) in &docs {
        let again = parse(&serialize(doc)).map_err(|d| format!("{name}: {d:?}"))?;
        ensure(&again == doc, || format!("{name}: round trip changed the document"))?;
    }

    let bin = env!("CARGO_BIN_EXE_typoid");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |args: &[&str]| -> Result<(i32, serde_json::Value), String> {
        let out = Command::new(bin)
            .args(args)
            .env_remove("TYPOID_MAX_CHECKS")
            .output()
            .map_err(|e| e.to_string())?;
        let json = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        Ok((out.status.code().unwrap_or(-1), json))
    };
    let file = |n: &str| corpus_dir().join(n).display().to_string();

    let (code, json) = run(&["validate", &file("unit.typoid")])?;
    ensure(code == 0 && json["result"] == "valid", || {
        format!("validate unit: exit {code}, {json}")
    })?;

    let (code, json) = run(&["univalence", &file("twoedge.typoid"), "--typoid", "twoedge"])?;
    let witnessed = json["violations"].as_array().is_some_and(|v| !v.is_empty());
    ensure(code == 1 && witnessed, || {
        format!("univalence twoedge: exit {code}, {json}")
    })?;

    let out = dir.path().join("p.typoid").display().to_string();
    let (code, _) = run(&["product", &file("ab.typoid"), "A", "B", "-o", &out])?;
    ensure(code == 0, || format!("product: exit {code}"))?;
    let (code, json) = run(&["univalence", &out])?;
    ensure(code == 0 && json["result"] == "univalent", || {
        format!("univalence p: exit {code}, {json}")
    })?;

    Ok(format!(
        "{} documents round trip, 3 CLI scenarios reproduce",
        docs.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("axiom suite", axiom_suite),
        ("univalence agrees with brute force", univalence_oracle),
        ("products are univalent", products_univalent),
        ("pointed factors are univalent", pointed_factors),
        ("induced functions", induced_functions),
        ("exponentials from bool_disc", exponentials),
        ("truncations", truncations),
        ("morphism suite", morphism_suite),
        ("pairing round trips", pairing_round_trips),
        ("dsl and cli", dsl_and_cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        // written to the raw handle so the lines survive output capture
        let line = match outcome {
            Ok(detail) => format!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {:>2} FAIL  {name}: {why}", i + 1)
            }
        };
        writeln!(std::io::stderr(), "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
