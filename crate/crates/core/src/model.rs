//! The finite model of a 2-typoid: a strict base groupoid of paths, an
//! equivalence layer of edges with a cell partition, and the table sending
//! paths to edges.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ids::{EdgeId, PathId, TermId};
use crate::partition::CellPartition;
use crate::tables::{ArrowTables, ArrowTablesBuilder};

/// The identity structure of a carrier, modelled as a strict groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    tables: ArrowTables<PathId>,
}

impl FiniteGroupoid {
    pub fn builder(term_count: usize) -> GroupoidBuilder {
        GroupoidBuilder {
            tables: ArrowTablesBuilder::new(term_count),
        }
    }

    pub(crate) fn from_tables(tables: ArrowTables<PathId>) -> Self {
        FiniteGroupoid { tables }
    }

    pub fn tables(&self) -> &ArrowTables<PathId> {
        &self.tables
    }

    pub fn term_count(&self) -> usize {
        self.tables.term_count()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = TermId> + Clone {
        self.tables.terms()
    }

    pub fn path_count(&self) -> usize {
        self.tables.len()
    }

    pub fn paths(&self) -> impl ExactSizeIterator<Item = PathId> + Clone {
        self.tables.arrows()
    }

    pub fn ends(&self, p: PathId) -> (TermId, TermId) {
        self.tables.ends(p)
    }

    pub fn hom(&self, x: TermId, y: TermId) -> &[PathId] {
        self.tables.hom(x, y)
    }

    pub fn refl(&self, x: TermId) -> PathId {
        self.tables.unit(x)
    }

    pub fn comp(&self, p: PathId, q: PathId) -> PathId {
        self.tables.comp(p, q)
    }

    pub fn inv(&self, p: PathId) -> PathId {
        self.tables.inv(p)
    }

    pub fn is_refl(&self, p: PathId) -> bool {
        let (x, y) = self.ends(p);
        x == y && self.tables.lookup_unit(x) == Some(p)
    }

    /// Every base hom-set is inhabited.
    pub fn is_prop(&self) -> bool {
        self.terms().all(|x| self.terms().all(|y| !self.hom(x, y).is_empty()))
    }

    /// Path equality is id equality here, so every carrier is a set.
    pub fn is_set(&self) -> bool {
        true
    }

    /// Every base hom-set is a singleton.
    pub fn is_prop_and_set(&self) -> bool {
        self.terms().all(|x| self.terms().all(|y| self.hom(x, y).len() == 1))
    }
}

#[derive(Clone, Debug)]
pub struct GroupoidBuilder {
    tables: ArrowTablesBuilder<PathId>,
}

impl GroupoidBuilder {
    pub fn add_path(&mut self, source: TermId, target: TermId) -> PathId {
        self.tables.add_arrow(source, target)
    }

    /// Adds a fresh loop at every term and registers it as refl.
    pub fn add_refls(&mut self) -> &mut Self {
        for x in 0..self.tables.term_count() {
            let x = TermId::new(x);
            let r = self.tables.add_arrow(x, x);
            self.tables.set_unit(x, r);
        }
        self
    }

    pub fn set_refl(&mut self, x: TermId, p: PathId) -> &mut Self {
        self.tables.set_unit(x, p);
        self
    }

    pub fn set_comp(&mut self, p: PathId, q: PathId, r: PathId) -> &mut Self {
        self.tables.set_comp(p, q, r);
        self
    }

    pub fn set_inv(&mut self, p: PathId, q: PathId) -> &mut Self {
        self.tables.set_inv(p, q);
        self
    }

    /// Fills refl compositions and inverses that were not given explicitly.
    pub fn fill_units(&mut self) -> &mut Self {
        fill_units(&mut self.tables, |_| true);
        self
    }

    pub fn build(self) -> FiniteGroupoid {
        FiniteGroupoid {
            tables: self.tables.build(),
        }
    }
}

/// Unit absorption and self-inverse entries for the units of the selected
/// terms, added only where no explicit entry exists.
fn fill_units<I: crate::ids::ArrowId>(tables: &mut ArrowTablesBuilder<I>, select: impl Fn(TermId) -> bool) {
    let n = tables.len();
    for x in 0..tables.term_count() {
        let x = TermId::new(x);
        if !select(x) {
            continue;
        }
        let Some(u) = tables.unit(x) else { continue };
        for a in (0..n).map(I::from_index) {
            let Some((s, t)) = tables.ends(a) else { continue };
            if s == x && tables.comp(u, a).is_none() {
                tables.set_comp(u, a, a);
            }
            if t == x && tables.comp(a, u).is_none() {
                tables.set_comp(a, u, a);
            }
        }
        if tables.inv(u).is_none() {
            tables.set_inv(u, u);
        }
    }
}

/// Edges `x ~ y` with designated units, composition, inversion and the cell
/// partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceLayer {
    tables: ArrowTables<EdgeId>,
    cells: CellPartition,
}

impl EquivalenceLayer {
    pub(crate) fn new(tables: ArrowTables<EdgeId>, cells: CellPartition) -> Self {
        EquivalenceLayer { tables, cells }
    }

    pub fn tables(&self) -> &ArrowTables<EdgeId> {
        &self.tables
    }

    pub fn cells(&self) -> &CellPartition {
        &self.cells
    }

    pub fn term_count(&self) -> usize {
        self.tables.term_count()
    }

    pub fn edge_count(&self) -> usize {
        self.tables.len()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + Clone {
        self.tables.arrows()
    }

    pub fn ends(&self, e: EdgeId) -> (TermId, TermId) {
        self.tables.ends(e)
    }

    pub fn hom(&self, x: TermId, y: TermId) -> &[EdgeId] {
        self.tables.hom(x, y)
    }

    pub fn eqv(&self, x: TermId) -> EdgeId {
        self.tables.unit(x)
    }

    pub fn star(&self, e: EdgeId, d: EdgeId) -> EdgeId {
        self.tables.comp(e, d)
    }

    pub fn einv(&self, e: EdgeId) -> EdgeId {
        self.tables.inv(e)
    }

    /// Cell representative of `e`.
    pub fn class_of(&self, e: EdgeId) -> EdgeId {
        self.cells.class_of(e)
    }

    /// Same cell, without the hom-set check of [`Typoid::cells_equal`].
    #[inline]
    pub fn same_cell(&self, e: EdgeId, d: EdgeId) -> bool {
        self.cells.same(e, d)
    }

    /// Cell representatives of the hom-set `(x, y)`, in id order.
    pub fn classes_in(&self, x: TermId, y: TermId) -> Vec<EdgeId> {
        let mut reps: Vec<EdgeId> = self.hom(x, y).iter().map(|&e| self.class_of(e)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }
}

/// A finite 2-typoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typoid {
    name: String,
    base: FiniteGroupoid,
    layer: EquivalenceLayer,
    idtoeqv: Vec<Option<EdgeId>>,
}

impl Typoid {
    pub fn builder(name: impl Into<String>, term_count: usize) -> TypoidBuilder {
        TypoidBuilder {
            name: name.into(),
            base: ArrowTablesBuilder::new(term_count),
            layer: ArrowTablesBuilder::new(term_count),
            cell_pairs: Vec::new(),
            cell_labels: None,
            idtoeqv: BTreeMap::new(),
        }
    }

    pub(crate) fn from_parts(
        name: String,
        base: FiniteGroupoid,
        layer: EquivalenceLayer,
        idtoeqv: Vec<Option<EdgeId>>,
    ) -> Self {
        Typoid {
            name,
            base,
            layer,
            idtoeqv,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn term_count(&self) -> usize {
        self.base.term_count()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = TermId> + Clone {
        self.base.terms()
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn layer(&self) -> &EquivalenceLayer {
        &self.layer
    }

    pub fn idtoeqv_table(&self) -> &[Option<EdgeId>] {
        &self.idtoeqv
    }

    pub fn lookup_idtoeqv(&self, p: PathId) -> Option<EdgeId> {
        self.idtoeqv.get(p.index()).copied().flatten()
    }

    /// # Panics
    /// If the table has no entry for `p`; only call on validated typoids.
    pub fn idtoeqv(&self, p: PathId) -> EdgeId {
        self.lookup_idtoeqv(p)
            .expect("idtoeqv table is total on validated typoids")
    }

    /// Whether `e` and `d` lie in the same cell. Both must belong to the
    /// same hom-set.
    pub fn cells_equal(&self, e: EdgeId, d: EdgeId) -> Result<bool, Error> {
        let tables = self.layer.tables();
        for x in [e, d] {
            if !tables.contains(x) || x.index() >= self.layer.cells.len() {
                return Err(Error::UnknownEdge(x));
            }
        }
        if tables.ends(e) != tables.ends(d) {
            return Err(Error::HomMismatch(e, d));
        }
        Ok(self.layer.same_cell(e, d))
    }
}

/// Incremental construction of a [`Typoid`]. Nothing is checked here; run
/// [`crate::validate_typoid`] on the result.
#[derive(Clone, Debug)]
pub struct TypoidBuilder {
    name: String,
    base: ArrowTablesBuilder<PathId>,
    layer: ArrowTablesBuilder<EdgeId>,
    cell_pairs: Vec<(EdgeId, EdgeId)>,
    cell_labels: Option<Vec<EdgeId>>,
    idtoeqv: BTreeMap<PathId, EdgeId>,
}

impl TypoidBuilder {
    pub fn term_count(&self) -> usize {
        self.base.term_count()
    }

    /// Adds `refl_x` and `eqv_x` for every term, and maps one to the other.
    pub fn with_units(mut self) -> Self {
        for x in 0..self.term_count() {
            let x = TermId::new(x);
            let r = self.base.add_arrow(x, x);
            self.base.set_unit(x, r);
            let e = self.layer.add_arrow(x, x);
            self.layer.set_unit(x, e);
            self.idtoeqv.insert(r, e);
        }
        self
    }

    pub fn add_path(&mut self, source: TermId, target: TermId) -> PathId {
        self.base.add_arrow(source, target)
    }

    pub fn path_ends(&self, p: PathId) -> Option<(TermId, TermId)> {
        self.base.ends(p)
    }

    pub fn path_count(&self) -> usize {
        self.base.len()
    }

    pub fn set_refl(&mut self, x: TermId, p: PathId) -> &mut Self {
        self.base.set_unit(x, p);
        self
    }

    pub fn refl(&self, x: TermId) -> Option<PathId> {
        self.base.unit(x)
    }

    pub fn set_comp(&mut self, p: PathId, q: PathId, r: PathId) -> &mut Self {
        self.base.set_comp(p, q, r);
        self
    }

    pub fn comp(&self, p: PathId, q: PathId) -> Option<PathId> {
        self.base.comp(p, q)
    }

    pub fn set_pinv(&mut self, p: PathId, q: PathId) -> &mut Self {
        self.base.set_inv(p, q);
        self
    }

    pub fn pinv(&self, p: PathId) -> Option<PathId> {
        self.base.inv(p)
    }

    pub fn add_edge(&mut self, source: TermId, target: TermId) -> EdgeId {
        self.layer.add_arrow(source, target)
    }

    pub fn edge_ends(&self, e: EdgeId) -> Option<(TermId, TermId)> {
        self.layer.ends(e)
    }

    pub fn edge_count(&self) -> usize {
        self.layer.len()
    }

    pub fn set_eqv(&mut self, x: TermId, e: EdgeId) -> &mut Self {
        self.layer.set_unit(x, e);
        self
    }

    pub fn eqv(&self, x: TermId) -> Option<EdgeId> {
        self.layer.unit(x)
    }

    pub fn set_star(&mut self, e: EdgeId, d: EdgeId, c: EdgeId) -> &mut Self {
        self.layer.set_comp(e, d, c);
        self
    }

    pub fn star(&self, e: EdgeId, d: EdgeId) -> Option<EdgeId> {
        self.layer.comp(e, d)
    }

    pub fn set_einv(&mut self, e: EdgeId, d: EdgeId) -> &mut Self {
        self.layer.set_inv(e, d);
        self
    }

    pub fn einv(&self, e: EdgeId) -> Option<EdgeId> {
        self.layer.inv(e)
    }

    /// Puts `e` and `d` in the same cell; the partition is the closure of
    /// all joined pairs.
    pub fn join_cells(&mut self, e: EdgeId, d: EdgeId) -> &mut Self {
        self.cell_pairs.push((e, d));
        self
    }

    /// Overrides pair closure with raw labels (which may be malformed).
    pub fn set_cell_labels(&mut self, labels: Vec<EdgeId>) -> &mut Self {
        self.cell_labels = Some(labels);
        self
    }

    pub fn set_idtoeqv(&mut self, p: PathId, e: EdgeId) -> &mut Self {
        self.idtoeqv.insert(p, e);
        self
    }

    pub fn idtoeqv(&self, p: PathId) -> Option<EdgeId> {
        self.idtoeqv.get(&p).copied()
    }

    /// Unit absorption and `refl^-1 = refl` for every term.
    pub fn fill_path_units(&mut self) -> &mut Self {
        fill_units(&mut self.base, |_| true);
        self
    }

    /// Unit absorption and `eqv^-1 = eqv` for the selected terms.
    pub fn fill_edge_units(&mut self, select: impl Fn(TermId) -> bool) -> &mut Self {
        fill_units(&mut self.layer, select);
        self
    }

    /// `idtoeqv(refl_x) = eqv_x` wherever no entry was given.
    pub fn fill_idtoeqv_units(&mut self) -> &mut Self {
        for x in 0..self.term_count() {
            let x = TermId::new(x);
            if let (Some(r), Some(e)) = (self.base.unit(x), self.layer.unit(x)) {
                self.idtoeqv.entry(r).or_insert(e);
            }
        }
        self
    }

    /// All three unit fills.
    pub fn fill_units(&mut self) -> &mut Self {
        self.fill_path_units();
        self.fill_edge_units(|_| true);
        self.fill_idtoeqv_units()
    }

    pub fn build(self) -> Typoid {
        let base = FiniteGroupoid::from_tables(self.base.build());
        let layer_tables = self.layer.build();
        let edge_count = layer_tables.len();
        let cells = match self.cell_labels {
            Some(labels) => CellPartition::from_labels(labels),
            None => CellPartition::from_pairs(edge_count, self.cell_pairs),
        };
        let mut idtoeqv = alloc::vec![None; base.path_count()];
        for (p, e) in self.idtoeqv {
            if let Some(slot) = idtoeqv.get_mut(p.index()) {
                *slot = Some(e);
            }
        }
        Typoid {
            name: self.name,
            base,
            layer: EquivalenceLayer::new(layer_tables, cells),
            idtoeqv,
        }
    }
}
