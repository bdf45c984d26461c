#![allow(dead_code)]

use typoid_core::{verify_certificate, EdgeId, PathId, Typoid, UnivalenceCertificate};

/// Every ua table respecting endpoints that passes `verify_certificate`,
/// found by plain enumeration.
pub fn brute_force_certificates(t: &Typoid) -> Vec<Vec<PathId>> {
    let layer = t.layer();
    let cands: Vec<Vec<PathId>> = layer
        .edges()
        .map(|e| {
            let (x, y) = layer.ends(e);
            t.base().hom(x, y).to_vec()
        })
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let strict = |ua: &[PathId]| t.terms().all(|x| ua[layer.eqv(x).index()] == t.base().refl(x));
    let mut found = Vec::new();
    let mut cursor = vec![0usize; cands.len()];
    loop {
        let ua: Vec<PathId> = cursor.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        let cert = UnivalenceCertificate {
            typoid: t.name().into(),
            strict: strict(&ua),
            ua,
        };
        if verify_certificate(t, &cert).is_valid() {
            found.push(cert.ua);
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == cursor.len() {
                return found;
            }
            cursor[k] += 1;
            if cursor[k] < cands[k].len() {
                break;
            }
            cursor[k] = 0;
            k += 1;
        }
    }
}

/// Number of composable triples of edges, counted over all triples.
pub fn composable_edge_triples(t: &Typoid) -> u64 {
    let l = t.layer();
    let edges: Vec<EdgeId> = l.edges().collect();
    let mut n = 0;
    for &a in &edges {
        for &b in &edges {
            for &c in &edges {
                if l.ends(a).1 == l.ends(b).0 && l.ends(b).1 == l.ends(c).0 {
                    n += 1;
                }
            }
        }
    }
    n
}
