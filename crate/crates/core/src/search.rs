//! Backtracking enumeration of term maps, path actions and edge actions.
//!
//! Variables are assigned in id order; each constraint is checked once, as
//! soon as the largest variable it mentions has a value.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::ids::{EdgeId, PathId, TermId};
use crate::model::{FiniteGroupoid, Typoid};

/// Depth-first search over `cands[0] x cands[1] x ...`, in lexicographic
/// order. `consistent(i, partial)` is called after variable `i` is set, with
/// `partial` holding values for `0..=i`. Returns the deepest variable whose
/// candidates were all rejected without a full solution being reached,
/// or `None` when at least one solution was visited.
pub(crate) fn backtrack<T: Copy>(
    cands: &[Vec<T>],
    mut consistent: impl FnMut(usize, &[T]) -> bool,
    mut visit: impl FnMut(&[T]) -> ControlFlow<()>,
) -> Option<usize> {
    let n = cands.len();
    if cands.iter().any(Vec::is_empty) {
        return cands.iter().position(Vec::is_empty);
    }
    if n == 0 {
        let _ = visit(&[]);
        return None;
    }
    let mut values: Vec<T> = Vec::with_capacity(n);
    let mut cursor = vec![0usize; n];
    let mut deepest = 0;
    let mut found = false;
    let mut i = 0usize;
    loop {
        if cursor[i] == cands[i].len() {
            // exhausted this variable
            cursor[i] = 0;
            if i == 0 {
                break;
            }
            i -= 1;
            values.pop();
            continue;
        }
        let v = cands[i][cursor[i]];
        cursor[i] += 1;
        values.push(v);
        if !consistent(i, &values) {
            deepest = deepest.max(i);
            values.pop();
            continue;
        }
        if i + 1 == n {
            found = true;
            if visit(&values).is_break() {
                return None;
            }
            values.pop();
            continue;
        }
        i += 1;
    }
    if found {
        None
    } else {
        Some(deepest)
    }
}

/// All maps from `0..src` to `0..dst`, lexicographic.
pub fn term_maps(src: usize, dst: usize) -> Vec<Vec<TermId>> {
    let mut out = Vec::new();
    let cands = vec![(0..dst).map(TermId::new).collect::<Vec<_>>(); src];
    backtrack(
        &cands,
        |_, _| true,
        |m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        },
    );
    out
}

struct PathProblem {
    cands: Vec<Vec<PathId>>,
    // (p, q, p.q) keyed by the largest of the three
    triggers: Vec<Vec<(PathId, PathId, PathId)>>,
}

fn path_problem(src: &FiniteGroupoid, dst: &FiniteGroupoid, term_map: &[TermId]) -> PathProblem {
    let f = |x: TermId| term_map[x.index()];
    let mut cands: Vec<Vec<PathId>> = src
        .paths()
        .map(|p| {
            let (x, y) = src.ends(p);
            dst.hom(f(x), f(y)).to_vec()
        })
        .collect();
    for x in src.terms() {
        cands[src.refl(x).index()] = vec![dst.refl(f(x))];
    }
    let mut triggers = vec![Vec::new(); src.path_count()];
    for (p, q) in src.tables().composable_pairs() {
        let r = src.comp(p, q);
        triggers[p.max(q).max(r).index()].push((p, q, r));
    }
    PathProblem { cands, triggers }
}

fn path_search(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    term_map: &[TermId],
    visit: impl FnMut(&[PathId]) -> ControlFlow<()>,
) -> Option<usize> {
    let problem = path_problem(src, dst, term_map);
    backtrack(
        &problem.cands,
        |i, ap| {
            problem.triggers[i]
                .iter()
                .all(|&(p, q, r)| ap[r.index()] == dst.comp(ap[p.index()], ap[q.index()]))
        },
        visit,
    )
}

/// Every strict functor between the base groupoids lying over `term_map`,
/// in lexicographic order of their tables.
pub fn path_actions(src: &FiniteGroupoid, dst: &FiniteGroupoid, term_map: &[TermId]) -> Vec<Vec<PathId>> {
    let mut out = Vec::new();
    path_search(src, dst, term_map, |ap| {
        out.push(ap.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// The first path action over `term_map`, or the path at which every
/// attempt broke down.
pub fn find_path_action(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    term_map: &[TermId],
) -> Result<Vec<PathId>, PathId> {
    let mut first = None;
    let stuck = path_search(src, dst, term_map, |ap| {
        first = Some(ap.to_vec());
        ControlFlow::Break(())
    });
    match (first, stuck) {
        (Some(ap), _) => Ok(ap),
        (None, stuck) => Err(PathId::new(stuck.unwrap_or(0))),
    }
}

/// Every edge action over `term_map` that preserves units and composition
/// up to cells and respects cells, in lexicographic order. Stops early and
/// returns `false` once `visit` breaks.
pub fn for_each_edge_action(
    src: &Typoid,
    dst: &Typoid,
    term_map: &[TermId],
    mut visit: impl FnMut(&[EdgeId]) -> ControlFlow<()>,
) -> bool {
    let (sl, dl) = (src.layer(), dst.layer());
    let f = |x: TermId| term_map[x.index()];
    let cands: Vec<Vec<EdgeId>> = sl
        .edges()
        .map(|e| {
            let (x, y) = sl.ends(e);
            dl.hom(f(x), f(y)).to_vec()
        })
        .collect();
    enum Rule {
        Unit(EdgeId, EdgeId),
        Star(EdgeId, EdgeId, EdgeId),
        Same(EdgeId, EdgeId),
    }
    let mut triggers: Vec<Vec<Rule>> = (0..sl.edge_count()).map(|_| Vec::new()).collect();
    for x in src.terms() {
        let u = sl.eqv(x);
        triggers[u.index()].push(Rule::Unit(u, dl.eqv(f(x))));
    }
    for (e, d) in sl.tables().composable_pairs() {
        let c = sl.star(e, d);
        triggers[e.max(d).max(c).index()].push(Rule::Star(e, d, c));
    }
    for e in sl.edges() {
        let rep = sl.class_of(e);
        if rep != e {
            triggers[e.index()].push(Rule::Same(rep, e));
        }
    }
    let mut stopped = false;
    backtrack(
        &cands,
        |i, phi| {
            triggers[i].iter().all(|rule| match *rule {
                Rule::Unit(u, target) => dl.same_cell(phi[u.index()], target),
                Rule::Star(e, d, c) => dl.same_cell(phi[c.index()], dl.star(phi[e.index()], phi[d.index()])),
                Rule::Same(a, b) => dl.same_cell(phi[a.index()], phi[b.index()]),
            })
        },
        |phi| {
            let flow = visit(phi);
            stopped = flow.is_break();
            flow
        },
    );
    !stopped
}
