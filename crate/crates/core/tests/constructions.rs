use typoid_core::constructions::{
    equality_typoid, exponential_typoid, product_typoid, truncate, univalent_completion, universe_typoid, ExpLimits,
};
use typoid_core::stock::{self, cyclic_groupoid};
use typoid_core::{
    check_univalence, product_certificate, validate_typoid, verify_certificate, Bound, Error, TermId, Typoid,
};

fn t(i: usize) -> TermId {
    TermId::new(i)
}

fn shape(x: &Typoid) -> (usize, usize, usize) {
    (x.term_count(), x.base().path_count(), x.layer().edge_count())
}

fn assert_valid(x: &Typoid) {
    let report = validate_typoid(x);
    assert!(report.is_valid(), "{}: {report}", x.name());
}

#[test]
fn equality_of_trivial_groupoid_is_the_unit() {
    let eq = equality_typoid(&cyclic_groupoid(&[(1, 1)]), "unit").unwrap();
    assert_eq!(eq, stock::unit());
}

#[test]
fn eq_z2_has_two_cells_on_its_loop() {
    let eq = stock::eq_z2();
    assert_eq!(eq.layer().hom(t(0), t(0)).len(), 2);
    assert_eq!(eq.layer().classes_in(t(0), t(0)).len(), 2);
    assert!(check_univalence(&eq).is_ok());
}

#[test]
fn product_of_units_is_a_unit() {
    let (p, _) = product_typoid(&stock::unit(), &stock::unit()).unwrap();
    assert_eq!(shape(&p), (1, 1, 1));
    assert_valid(&p);
}

#[test]
fn product_hom_sizes_multiply() {
    let (a, b) = (stock::eq_z2(), stock::prop2());
    let (p, prov) = product_typoid(&a, &b).unwrap();
    assert_valid(&p);
    assert_eq!(p.term_count(), a.term_count() * b.term_count());
    for x in a.terms() {
        for y in a.terms() {
            for u in b.terms() {
                for v in b.terms() {
                    let hom = p.layer().hom(prov.pair_term(x, u), prov.pair_term(y, v));
                    assert_eq!(hom.len(), a.layer().hom(x, y).len() * b.layer().hom(u, v).len());
                }
            }
        }
    }
}

#[test]
fn products_of_univalent_typoids_are_univalent() {
    let base: Vec<Typoid> = stock::stock_base()
        .into_iter()
        .filter(|x| check_univalence(x).is_ok())
        .collect();
    for a in &base {
        for b in &base {
            let (p, prov) = product_typoid(a, b).unwrap();
            let decided = check_univalence(&p).unwrap();
            let (ca, cb) = (check_univalence(a).unwrap(), check_univalence(b).unwrap());
            let built = product_certificate(&prov, &ca, &cb).unwrap();
            assert!(verify_certificate(&p, &built).is_valid(), "{}", p.name());
            assert_eq!(built, decided);
            assert!(product_certificate(&prov, &cb, &ca).is_err() || a.name() == b.name());
        }
    }
}

#[test]
fn pair_ids_round_trip_and_respect_cells() {
    let (a, b) = (stock::fat_unit(), stock::twoedge());
    let (p, prov) = product_typoid(&a, &b).unwrap();
    for e in p.layer().edges() {
        let (e1, e2) = prov.unpair_edge(e);
        assert_eq!(prov.pair_edge(e1, e2), e);
        for d in p.layer().edges() {
            let (d1, d2) = prov.unpair_edge(d);
            if p.layer().ends(e) != p.layer().ends(d) {
                continue;
            }
            let componentwise = a.cells_equal(e1, d1).unwrap() && b.cells_equal(e2, d2).unwrap();
            assert_eq!(p.cells_equal(e, d).unwrap(), componentwise);
        }
    }
    for q in p.base().paths() {
        let (q1, q2) = prov.unpair_path(q);
        assert_eq!(prov.pair_path(q1, q2), q);
    }
    assert_eq!(
        prov.pair_path(a.base().refl(t(0)), b.base().refl(t(0))),
        p.base().refl(t(0))
    );
}

#[test]
fn truncation_examples() {
    assert_eq!(truncate(&stock::unit()).with_name("unit"), stock::unit());
    assert!(check_univalence(&truncate(&stock::prop2())).is_ok());
    match check_univalence(&truncate(&stock::bool_disc())) {
        Err(Error::NotUnivalent { witness, .. }) => assert_eq!(witness.gaps.len(), 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn truncation_is_univalent_exactly_for_singleton_homs() {
    for x in stock::stock_corpus() {
        let tr = truncate(&x);
        assert_valid(&tr);
        assert_eq!(
            check_univalence(&tr).is_ok(),
            x.base().is_prop_and_set(),
            "{}",
            x.name()
        );
    }
}

#[test]
fn universe_examples() {
    let u11 = universe_typoid(&[1, 1], 100).unwrap();
    assert_eq!(u11.term_count(), 2);
    assert_eq!(u11.layer().hom(t(0), t(1)).len(), 1);
    assert!(check_univalence(&u11).is_ok());

    let u2 = universe_typoid(&[2], 100).unwrap();
    assert_eq!(shape(&u2), (1, 2, 2));
    assert_eq!(u2.layer().classes_in(t(0), t(0)).len(), 2);
    assert!(check_univalence(&u2).is_ok());

    let u01 = universe_typoid(&[0, 1], 100).unwrap();
    assert!(u01.layer().hom(t(0), t(1)).is_empty());
    assert!(u01.base().hom(t(1), t(0)).is_empty());
    assert!(check_univalence(&u01).is_ok());

    let u3 = universe_typoid(&[3, 2, 3], 100).unwrap();
    assert_valid(&u3);
    assert_eq!(u3.layer().hom(t(0), t(2)).len(), 6);
    assert!(matches!(
        universe_typoid(&[5, 5], 100),
        Err(Error::Resource {
            bound: Bound::MaxEdges,
            ..
        })
    ));
}

#[test]
fn completion_examples() {
    let eq = stock::eq_z2();
    let done = univalent_completion(&eq).unwrap();
    assert_eq!(done.with_name(eq.name()), eq);

    let two = univalent_completion(&stock::twoedge()).unwrap();
    assert_eq!(two.base().path_count(), 2);
    assert_valid(&two);
    assert!(check_univalence(&two).is_ok());

    let tb = univalent_completion(&truncate(&stock::bool_disc())).unwrap();
    assert_eq!(tb.base().hom(t(0), t(1)).len(), 1);
    assert!(check_univalence(&tb).is_ok());

    for x in stock::stock_corpus() {
        let c = univalent_completion(&x).unwrap();
        assert_valid(&c);
        assert!(check_univalence(&c).is_ok(), "{}", c.name());
    }
}

#[test]
fn exponential_out_of_the_unit_counts_cells_of_eqv() {
    for b in stock::stock_base() {
        let (exp, prov) = exponential_typoid(&stock::unit(), &b, ExpLimits::default()).unwrap();
        let expected: usize = b
            .terms()
            .map(|y| {
                let u = b.layer().eqv(y);
                b.layer()
                    .edges()
                    .filter(|&e| b.layer().ends(e) == (y, y) && b.layer().same_cell(e, u))
                    .count()
            })
            .sum();
        assert_eq!(exp.term_count(), expected, "{}", b.name());
        assert_eq!(prov.terms.len(), expected);
        assert_valid(&exp);
    }
    let (exp, _) = exponential_typoid(&stock::unit(), &stock::eq_z2(), ExpLimits::default()).unwrap();
    assert_eq!(exp.term_count(), 1);
}

#[test]
fn exponential_into_the_unit_is_a_point() {
    for a in stock::stock_base() {
        let (exp, _) = exponential_typoid(&a, &stock::unit(), ExpLimits::default()).unwrap();
        assert_eq!((exp.term_count(), exp.layer().edge_count()), (1, 1), "{}", a.name());
    }
}

#[test]
fn exponentials_from_bool_disc_are_univalent() {
    for b in stock::stock_base() {
        let (exp, _) = exponential_typoid(&stock::bool_disc(), &b, ExpLimits::default()).unwrap();
        assert_valid(&exp);
        assert!(check_univalence(&exp).is_ok(), "{}", exp.name());
    }
}

#[test]
fn exponential_enumeration_is_deterministic() {
    let run = || exponential_typoid(&stock::eq_z2(), &stock::fat_unit(), ExpLimits::default()).unwrap();
    assert_eq!(run(), run());
}

#[test]
fn exponential_limits_name_the_bound() {
    let tight = ExpLimits {
        max_terms: 1,
        max_edges: 256,
    };
    assert!(matches!(
        exponential_typoid(&stock::bool_disc(), &stock::prop2(), tight),
        Err(Error::Resource {
            bound: Bound::MaxTerms,
            limit: 1
        })
    ));
    let tight = ExpLimits {
        max_terms: 64,
        max_edges: 2,
    };
    assert!(matches!(
        exponential_typoid(&stock::bool_disc(), &stock::prop2(), tight),
        Err(Error::Resource {
            bound: Bound::MaxEdges,
            limit: 2
        })
    ));
}

#[test]
fn function_typoid_of_equality_typoids() {
    let (a, b) = (stock::eq_z2(), stock::universe_2());
    let (exp, prov) = exponential_typoid(&a, &b, ExpLimits::default()).unwrap();
    assert_valid(&exp);
    // Z/2 into S_2 has two homomorphisms on paths and, independently, two
    // on edges
    assert_eq!(prov.terms.len(), 4);
    assert!(prov.edges.iter().all(|d| d.theta.len() == 1));
}
