//! Dense composition tables shared by the base groupoid and the
//! equivalence layer.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::ids::{ArrowId, TermId};
use crate::report::{Law, ValidationReport, Violation, Witness};

/// Arrows between terms together with unit, composition and inverse tables.
///
/// Tables are stored densely and may be partial; shape problems are reported
/// by [`ArrowTables::check_shape`] rather than rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowTables<I> {
    term_count: usize,
    ends: Vec<(TermId, TermId)>,
    unit: Vec<Option<I>>,
    comp: Vec<Option<I>>,
    inv: Vec<Option<I>>,
    homs: Vec<Vec<I>>,
    stray: Vec<Violation>,
}

impl<I: ArrowId> ArrowTables<I> {
    pub fn term_count(&self) -> usize {
        self.term_count
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = I> + Clone {
        (0..self.ends.len()).map(I::from_index)
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = TermId> + Clone {
        (0..self.term_count).map(TermId::new)
    }

    #[inline]
    pub fn contains(&self, a: I) -> bool {
        a.to_index() < self.ends.len()
    }

    #[inline]
    pub fn ends(&self, a: I) -> (TermId, TermId) {
        self.ends[a.to_index()]
    }

    #[inline]
    pub fn source(&self, a: I) -> TermId {
        self.ends[a.to_index()].0
    }

    #[inline]
    pub fn target(&self, a: I) -> TermId {
        self.ends[a.to_index()].1
    }

    /// Arrows from `x` to `y`, in id order.
    #[inline]
    pub fn hom(&self, x: TermId, y: TermId) -> &[I] {
        if x.index() >= self.term_count || y.index() >= self.term_count {
            return &[];
        }
        &self.homs[x.index() * self.term_count + y.index()]
    }

    #[inline]
    pub fn lookup_unit(&self, x: TermId) -> Option<I> {
        self.unit.get(x.index()).copied().flatten()
    }

    #[inline]
    pub fn lookup_comp(&self, a: I, b: I) -> Option<I> {
        let n = self.ends.len();
        if a.to_index() >= n || b.to_index() >= n {
            return None;
        }
        self.comp[a.to_index() * n + b.to_index()]
    }

    #[inline]
    pub fn lookup_inv(&self, a: I) -> Option<I> {
        self.inv.get(a.to_index()).copied().flatten()
    }

    /// # Panics
    /// If the unit table has no entry for `x`; only call on validated data.
    #[inline]
    pub fn unit(&self, x: TermId) -> I {
        self.lookup_unit(x)
            .expect("unit table is total on validated structures")
    }

    /// # Panics
    /// If the pair is not composable or the entry is missing.
    #[inline]
    pub fn comp(&self, a: I, b: I) -> I {
        self.lookup_comp(a, b)
            .expect("composition table is total on validated structures")
    }

    /// # Panics
    /// If the inverse table has no entry for `a`.
    #[inline]
    pub fn inv(&self, a: I) -> I {
        self.lookup_inv(a)
            .expect("inverse table is total on validated structures")
    }

    /// Every composable pair `(a, b)` with `target(a) = source(b)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (I, I)> + '_ {
        let n = self.term_count;
        (0..n).flat_map(move |x| {
            (0..n).flat_map(move |y| {
                (0..n).flat_map(move |z| {
                    let (x, y, z) = (TermId::new(x), TermId::new(y), TermId::new(z));
                    self.hom(x, y)
                        .iter()
                        .flat_map(move |&a| self.hom(y, z).iter().map(move |&b| (a, b)))
                })
            })
        })
    }

    fn valid_id(&self, a: I) -> bool {
        self.contains(a) && self.source(a).index() < self.term_count && self.target(a).index() < self.term_count
    }

    /// Reports totality, id-range and endpoint problems as
    /// [`Law::Bookkeeping`] violations.
    pub fn check_shape(&self, report: &mut ValidationReport) {
        let kind = I::KIND;
        for v in &self.stray {
            report.push(v.clone());
        }
        for a in self.arrows() {
            let (s, t) = self.ends(a);
            if s.index() >= self.term_count || t.index() >= self.term_count {
                report.violate(
                    Law::Bookkeeping,
                    [a.into()],
                    format!("{kind} {a} has an endpoint outside the term range"),
                );
            }
        }
        for x in self.terms() {
            report.tick(Law::Bookkeeping);
            match self.lookup_unit(x) {
                None => report.violate(
                    Law::Bookkeeping,
                    [Witness::Term(x)],
                    format!("no unit {kind} for term {x}"),
                ),
                Some(u) if !self.contains(u) => report.violate(
                    Law::Bookkeeping,
                    [Witness::Term(x), u.into()],
                    format!("unit {kind} {u} of {x} is out of range"),
                ),
                Some(u) if self.ends(u) != (x, x) => report.violate(
                    Law::Bookkeeping,
                    [Witness::Term(x), u.into()],
                    format!("unit {kind} {u} of {x} is not a loop at {x}"),
                ),
                Some(_) => {}
            }
        }
        let n = self.ends.len();
        for a in self.arrows() {
            for b in self.arrows() {
                let entry = self.comp[a.to_index() * n + b.to_index()];
                let composable = self.valid_id(a) && self.valid_id(b) && self.target(a) == self.source(b);
                if !composable {
                    if let Some(c) = entry {
                        report.violate(
                            Law::Bookkeeping,
                            [a.into(), b.into(), c.into()],
                            format!("composition entry for non-composable {kind}s {a}, {b}"),
                        );
                    }
                    continue;
                }
                report.tick(Law::Bookkeeping);
                match entry {
                    None => report.violate(
                        Law::Bookkeeping,
                        [a.into(), b.into()],
                        format!("missing composition entry for {kind}s {a}, {b}"),
                    ),
                    Some(c) if !self.contains(c) => report.violate(
                        Law::Bookkeeping,
                        [a.into(), b.into(), c.into()],
                        format!("composite of {a}, {b} is out of range"),
                    ),
                    Some(c) if self.ends(c) != (self.source(a), self.target(b)) => report.violate(
                        Law::Bookkeeping,
                        [a.into(), b.into(), c.into()],
                        format!("composite {c} of {a}, {b} has the wrong endpoints"),
                    ),
                    Some(_) => {}
                }
            }
        }
        for a in self.arrows() {
            report.tick(Law::Bookkeeping);
            match self.lookup_inv(a) {
                None => report.violate(
                    Law::Bookkeeping,
                    [a.into()],
                    format!("missing inverse entry for {kind} {a}"),
                ),
                Some(b) if !self.contains(b) => report.violate(
                    Law::Bookkeeping,
                    [a.into(), b.into()],
                    format!("inverse of {a} is out of range"),
                ),
                Some(b) if self.ends(b) != (self.target(a), self.source(a)) => report.violate(
                    Law::Bookkeeping,
                    [a.into(), b.into()],
                    format!("inverse {b} of {a} has the wrong endpoints"),
                ),
                Some(_) => {}
            }
        }
    }

    /// Builder-free constructor from complete tables, used by constructions.
    pub(crate) fn from_fn(
        term_count: usize,
        ends: Vec<(TermId, TermId)>,
        unit: impl Fn(TermId) -> I,
        comp: impl Fn(I, I) -> I,
        inv: impl Fn(I) -> I,
    ) -> Self {
        let mut b = ArrowTablesBuilder::new(term_count);
        for (s, t) in ends {
            b.add_arrow(s, t);
        }
        let n = b.ends.len();
        let mut tables = b.build();
        for x in 0..term_count {
            tables.unit[x] = Some(unit(TermId::new(x)));
        }
        for a in tables.arrows().collect::<Vec<_>>() {
            tables.inv[a.to_index()] = Some(inv(a));
            let t = tables.target(a);
            for &c in tables.hom_from(t).collect::<Vec<_>>().iter() {
                tables.comp[a.to_index() * n + c.to_index()] = Some(comp(a, c));
            }
        }
        tables
    }

    pub(crate) fn hom_from(&self, x: TermId) -> impl Iterator<Item = I> + '_ {
        (0..self.term_count).flat_map(move |y| self.hom(x, TermId::new(y)).iter().copied())
    }
}

/// Incremental construction of [`ArrowTables`]. Entries whose keys are out
/// of range are kept as bookkeeping violations instead of being dropped.
#[derive(Clone, Debug)]
pub struct ArrowTablesBuilder<I> {
    term_count: usize,
    ends: Vec<(TermId, TermId)>,
    unit: Vec<Option<I>>,
    comp: BTreeMap<(I, I), I>,
    inv: BTreeMap<I, I>,
    conflicts: Vec<Violation>,
}

impl<I: ArrowId> ArrowTablesBuilder<I> {
    pub fn new(term_count: usize) -> Self {
        ArrowTablesBuilder {
            term_count,
            ends: Vec::new(),
            unit: vec![None; term_count],
            comp: BTreeMap::new(),
            inv: BTreeMap::new(),
            conflicts: Vec::new(),
        }
    }

    pub fn term_count(&self) -> usize {
        self.term_count
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn ends(&self, a: I) -> Option<(TermId, TermId)> {
        self.ends.get(a.to_index()).copied()
    }

    pub fn add_arrow(&mut self, source: TermId, target: TermId) -> I {
        self.ends.push((source, target));
        I::from_index(self.ends.len() - 1)
    }

    pub fn set_unit(&mut self, x: TermId, a: I) {
        if let Some(slot) = self.unit.get_mut(x.index()) {
            *slot = Some(a);
        }
    }

    pub fn unit(&self, x: TermId) -> Option<I> {
        self.unit.get(x.index()).copied().flatten()
    }

    /// Records `a . b = c`. Conflicting entries keep the smaller id and are
    /// reported as bookkeeping violations.
    pub fn set_comp(&mut self, a: I, b: I, c: I) {
        if let Some(prev) = self.comp.get(&(a, b)).copied() {
            if prev != c {
                let (lo, hi) = (prev.min(c), prev.max(c));
                self.conflicts.push(Violation::new(
                    Law::Bookkeeping,
                    vec![a.into(), b.into(), lo.into(), hi.into()],
                    format!("conflicting composition entries for ({a}, {b})"),
                ));
                self.comp.insert((a, b), lo);
            }
            return;
        }
        self.comp.insert((a, b), c);
    }

    pub fn comp(&self, a: I, b: I) -> Option<I> {
        self.comp.get(&(a, b)).copied()
    }

    pub fn set_inv(&mut self, a: I, b: I) {
        if let Some(prev) = self.inv.get(&a).copied() {
            if prev != b {
                let (lo, hi) = (prev.min(b), prev.max(b));
                self.conflicts.push(Violation::new(
                    Law::Bookkeeping,
                    vec![a.into(), lo.into(), hi.into()],
                    format!("conflicting inverse entries for {a}"),
                ));
                self.inv.insert(a, lo);
            }
            return;
        }
        self.inv.insert(a, b);
    }

    pub fn inv(&self, a: I) -> Option<I> {
        self.inv.get(&a).copied()
    }

    pub fn build(self) -> ArrowTables<I> {
        let n = self.ends.len();
        let t = self.term_count;
        let kind = I::KIND;
        let mut stray = Vec::new();
        let mut homs = vec![Vec::new(); t * t];
        for (i, &(s, d)) in self.ends.iter().enumerate() {
            if s.index() < t && d.index() < t {
                homs[s.index() * t + d.index()].push(I::from_index(i));
            }
        }
        let mut comp = vec![None; n * n];
        for ((a, b), c) in self.comp {
            if a.to_index() >= n || b.to_index() >= n {
                stray.push(Violation::new(
                    Law::Bookkeeping,
                    vec![a.into(), b.into()],
                    format!("composition entry keyed by out-of-range {kind} ({a}, {b})"),
                ));
                continue;
            }
            comp[a.to_index() * n + b.to_index()] = Some(c);
        }
        let mut inv = vec![None; n];
        for (a, b) in self.inv {
            if a.to_index() >= n {
                stray.push(Violation::new(
                    Law::Bookkeeping,
                    vec![a.into()],
                    format!("inverse entry keyed by out-of-range {kind} {a}"),
                ));
                continue;
            }
            inv[a.to_index()] = Some(b);
        }
        stray.extend(self.conflicts);
        ArrowTables {
            term_count: t,
            ends: self.ends,
            unit: self.unit,
            comp,
            inv,
            homs,
            stray,
        }
    }
}
