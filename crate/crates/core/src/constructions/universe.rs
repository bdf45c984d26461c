use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Bound, Error};
use crate::ids::{PathId, TermId};
use crate::model::{FiniteGroupoid, Typoid};
use crate::tables::ArrowTables;

use super::equality_unchecked;

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = alloc::vec![current.clone()];
    loop {
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// The groupoid of bijections between the given finite sets. Arrows are
/// ordered by source, target, then the bijection as a lexicographic table.
pub fn permutation_groupoid(cardinalities: &[usize], max_arrows: usize) -> Result<FiniteGroupoid, Error> {
    let n = cardinalities.len();
    let mut total = 0usize;
    for &a in cardinalities {
        for &b in cardinalities {
            if a == b {
                total = factorial(a)
                    .and_then(|f| total.checked_add(f))
                    .filter(|&t| t <= max_arrows)
                    .ok_or(Error::Resource {
                        bound: Bound::MaxEdges,
                        limit: max_arrows,
                    })?;
            }
        }
    }
    let mut perms: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
    let mut ends = Vec::with_capacity(total);
    let mut table = Vec::with_capacity(total);
    let mut index: BTreeMap<(usize, usize, Vec<u8>), PathId> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let k = cardinalities[i];
            if k != cardinalities[j] {
                continue;
            }
            for p in perms.entry(k).or_insert_with(|| permutations(k)).iter() {
                index.insert((i, j, p.clone()), PathId::new(ends.len()));
                ends.push((TermId::new(i), TermId::new(j)));
                table.push(p.clone());
            }
        }
    }
    let lookup = |i: TermId, j: TermId, p: Vec<u8>| index[&(i.index(), j.index(), p)];
    let tables = ArrowTables::from_fn(
        n,
        ends.clone(),
        |x| lookup(x, x, (0..cardinalities[x.index()] as u8).collect()),
        |f, g| {
            let (tf, tg) = (&table[f.index()], &table[g.index()]);
            // first f, then g
            let h = tf.iter().map(|&v| tg[v as usize]).collect();
            lookup(ends[f.index()].0, ends[g.index()].1, h)
        },
        |f| {
            let tf = &table[f.index()];
            let mut h = alloc::vec![0u8; tf.len()];
            for (i, &v) in tf.iter().enumerate() {
                h[v as usize] = i as u8;
            }
            let (x, y) = ends[f.index()];
            lookup(y, x, h)
        },
    );
    Ok(FiniteGroupoid::from_tables(tables))
}

/// Finite sets as terms, bijections as both paths and edges, cells the
/// identity partition and `idtoeqv` the identity.
pub fn universe_typoid(cardinalities: &[usize], max_edges: usize) -> Result<Typoid, Error> {
    let g = permutation_groupoid(cardinalities, max_edges)?;
    let mut name = String::from("universe");
    for c in cardinalities {
        name.push('_');
        name.push_str(&alloc::format!("{c}"));
    }
    Ok(equality_unchecked(&g, name))
}
