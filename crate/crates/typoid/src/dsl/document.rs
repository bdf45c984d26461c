use std::collections::{BTreeMap, BTreeSet, HashMap};

use typoid_core::{EdgeId, PathId, TermId, Typoid, TypoidMorphism};

use super::diagnostic::Span;

/// A declared arrow: its name and the names of its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl ArrowDecl {
    pub fn new(name: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        ArrowDecl {
            name: name.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

/// A typoid with every table materialized and every arrow named.
///
/// `refl_<t>` paths are never listed in `paths`. An edge is listed in
/// `edges` unless it is the implicit `eqv_<t>` of its term. Equality ignores
/// `span`.
#[derive(Clone, Debug, Default)]
pub struct TypoidDecl {
    pub name: String,
    pub terms: Vec<String>,
    pub paths: Vec<ArrowDecl>,
    pub edges: Vec<ArrowDecl>,
    /// Designated unit edge of every term.
    pub eqv: BTreeMap<String, String>,
    pub comp: BTreeMap<(String, String), String>,
    pub pinv: BTreeMap<String, String>,
    pub star: BTreeMap<(String, String), String>,
    pub einv: BTreeMap<String, String>,
    /// Cells with more than one edge.
    pub cells: BTreeSet<BTreeSet<String>>,
    pub idtoeqv: BTreeMap<String, String>,
    pub span: Span,
}

impl PartialEq for TypoidDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.terms == other.terms
            && self.paths == other.paths
            && self.edges == other.edges
            && self.eqv == other.eqv
            && self.comp == other.comp
            && self.pinv == other.pinv
            && self.star == other.star
            && self.einv == other.einv
            && self.cells == other.cells
            && self.idtoeqv == other.idtoeqv
    }
}

impl Eq for TypoidDecl {}

pub fn refl_name(term: &str) -> String {
    format!("refl_{term}")
}

pub fn eqv_name(term: &str) -> String {
    format!("eqv_{term}")
}

/// Names of the terms, paths and edges of a typoid, indexed by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub terms: Vec<String>,
    pub paths: Vec<String>,
    pub edges: Vec<String>,
}

/// Id assignment of a [`TypoidDecl`]: terms in order; refl paths first, then
/// declared paths; implicit eqv edges first, then declared edges.
#[derive(Clone, Debug)]
pub struct Index {
    pub names: Names,
    pub path_ends: Vec<(TermId, TermId)>,
    pub edge_ends: Vec<(TermId, TermId)>,
    term: HashMap<String, TermId>,
    path: HashMap<String, PathId>,
    edge: HashMap<String, EdgeId>,
}

impl Index {
    pub fn term(&self, name: &str) -> Option<TermId> {
        self.term.get(name).copied()
    }

    pub fn path(&self, name: &str) -> Option<PathId> {
        self.path.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge.get(name).copied()
    }

    pub fn term_name(&self, x: TermId) -> &str {
        &self.names.terms[x.index()]
    }

    pub fn path_name(&self, p: PathId) -> &str {
        &self.names.paths[p.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.names.edges[e.index()]
    }
}

impl TypoidDecl {
    /// Terms whose unit edge is implicit, in term order.
    pub fn implicit_eqv_terms(&self) -> impl Iterator<Item = &String> + '_ {
        let declared: BTreeSet<&str> = self.edges.iter().map(|e| e.name.as_str()).collect();
        self.terms.iter().filter(move |t| match self.eqv.get(*t) {
            Some(e) => !declared.contains(e.as_str()),
            None => true,
        })
    }

    pub fn index(&self) -> Index {
        let term: HashMap<String, TermId> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), TermId::new(i)))
            .collect();
        let at = |name: &str| term.get(name).copied().unwrap_or(TermId::new(0));
        let mut names = Names {
            terms: self.terms.clone(),
            paths: Vec::new(),
            edges: Vec::new(),
        };
        let mut path_ends = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            names.paths.push(refl_name(t));
            path_ends.push((TermId::new(i), TermId::new(i)));
        }
        for p in &self.paths {
            names.paths.push(p.name.clone());
            path_ends.push((at(&p.source), at(&p.target)));
        }
        let mut edge_ends = Vec::new();
        for t in self.implicit_eqv_terms() {
            names
                .edges
                .push(self.eqv.get(t).cloned().unwrap_or_else(|| eqv_name(t)));
            edge_ends.push((at(t), at(t)));
        }
        for e in &self.edges {
            names.edges.push(e.name.clone());
            edge_ends.push((at(&e.source), at(&e.target)));
        }
        let path = names
            .paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), PathId::new(i)))
            .collect();
        let edge = names
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), EdgeId::new(i)))
            .collect();
        Index {
            names,
            path_ends,
            edge_ends,
            term,
            path,
            edge,
        }
    }

    /// The core typoid described by this declaration. Names that do not
    /// resolve are skipped, which leaves the corresponding entries missing
    /// for validation to report.
    pub fn to_typoid(&self) -> Typoid {
        let ix = self.index();
        let mut b = Typoid::builder(self.name.clone(), self.terms.len());
        for &(x, y) in &ix.path_ends {
            b.add_path(x, y);
        }
        for &(x, y) in &ix.edge_ends {
            b.add_edge(x, y);
        }
        for (i, t) in self.terms.iter().enumerate() {
            let x = TermId::new(i);
            b.set_refl(x, PathId::new(i));
            if let Some(e) = self.eqv.get(t).and_then(|e| ix.edge(e)) {
                b.set_eqv(x, e);
            }
        }
        for ((p, q), r) in &self.comp {
            if let (Some(p), Some(q), Some(r)) = (ix.path(p), ix.path(q), ix.path(r)) {
                b.set_comp(p, q, r);
            }
        }
        for (p, q) in &self.pinv {
            if let (Some(p), Some(q)) = (ix.path(p), ix.path(q)) {
                b.set_pinv(p, q);
            }
        }
        for ((e, d), c) in &self.star {
            if let (Some(e), Some(d), Some(c)) = (ix.edge(e), ix.edge(d), ix.edge(c)) {
                b.set_star(e, d, c);
            }
        }
        for (e, d) in &self.einv {
            if let (Some(e), Some(d)) = (ix.edge(e), ix.edge(d)) {
                b.set_einv(e, d);
            }
        }
        for class in &self.cells {
            let ids: Vec<EdgeId> = class.iter().filter_map(|e| ix.edge(e)).collect();
            for w in ids.windows(2) {
                b.join_cells(w[0], w[1]);
            }
        }
        for (p, e) in &self.idtoeqv {
            if let (Some(p), Some(e)) = (ix.path(p), ix.edge(e)) {
                b.set_idtoeqv(p, e);
            }
        }
        b.build()
    }

    /// Describes `t` using `names`, which must name refl paths `refl_<t>`
    /// and unit edges `eqv_<t>` after their terms.
    pub fn from_typoid(t: &Typoid, names: &Names) -> TypoidDecl {
        let (g, l) = (t.base(), t.layer());
        let (pt, et) = (g.tables(), l.tables());
        let tn = |x: TermId| names.terms[x.index()].clone();
        let pn = |p: PathId| names.paths[p.index()].clone();
        let en = |e: EdgeId| names.edges[e.index()].clone();
        let refls: BTreeSet<PathId> = t.terms().filter_map(|x| pt.lookup_unit(x)).collect();
        let units: BTreeSet<EdgeId> = t.terms().filter_map(|x| et.lookup_unit(x)).collect();
        let mut d = TypoidDecl {
            name: t.name().into(),
            terms: names.terms.clone(),
            ..TypoidDecl::default()
        };
        for p in g.paths().filter(|p| !refls.contains(p)) {
            let (x, y) = g.ends(p);
            d.paths.push(ArrowDecl::new(pn(p), tn(x), tn(y)));
        }
        for e in l.edges() {
            let (x, y) = l.ends(e);
            let implicit = units.contains(&e) && x == y && en(e) == eqv_name(&tn(x));
            if !implicit {
                d.edges.push(ArrowDecl::new(en(e), tn(x), tn(y)));
            }
        }
        for x in t.terms() {
            if let Some(e) = et.lookup_unit(x) {
                d.eqv.insert(tn(x), en(e));
            }
        }
        for (p, q) in pt.composable_pairs() {
            if let Some(r) = pt.lookup_comp(p, q) {
                d.comp.insert((pn(p), pn(q)), pn(r));
            }
        }
        for p in g.paths() {
            if let Some(q) = pt.lookup_inv(p) {
                d.pinv.insert(pn(p), pn(q));
            }
            if let Some(e) = t.lookup_idtoeqv(p) {
                d.idtoeqv.insert(pn(p), en(e));
            }
        }
        for (e, f) in et.composable_pairs() {
            if let Some(c) = et.lookup_comp(e, f) {
                d.star.insert((en(e), en(f)), en(c));
            }
        }
        for e in l.edges() {
            if let Some(f) = et.lookup_inv(e) {
                d.einv.insert(en(e), en(f));
            }
        }
        for class in l.cells().members() {
            if class.len() > 1 {
                d.cells.insert(class.into_iter().map(en).collect());
            }
        }
        d
    }
}

/// A morphism with every table materialized. `paths` is `None` when the
/// morphism carries no path action.
#[derive(Clone, Debug, Default)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub terms: BTreeMap<String, String>,
    pub paths: Option<BTreeMap<String, String>>,
    pub edges: BTreeMap<String, String>,
    pub span: Span,
}

impl PartialEq for MorphismDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.source == other.source
            && self.target == other.target
            && self.terms == other.terms
            && self.paths == other.paths
            && self.edges == other.edges
    }
}

impl Eq for MorphismDecl {}

impl MorphismDecl {
    /// Resolves the declaration against its source and target. Unresolved
    /// entries map to id 0; validation reports them.
    pub fn to_morphism(&self, src: &TypoidDecl, dst: &TypoidDecl) -> TypoidMorphism {
        let (si, di) = (src.index(), dst.index());
        let term_map = si
            .names
            .terms
            .iter()
            .map(|x| {
                self.terms
                    .get(x)
                    .and_then(|y| di.term(y))
                    .unwrap_or(TermId::new(u32::MAX as usize))
            })
            .collect();
        let path_map = self.paths.as_ref().map(|paths| {
            si.names
                .paths
                .iter()
                .map(|p| {
                    paths
                        .get(p)
                        .and_then(|q| di.path(q))
                        .unwrap_or(PathId::new(u32::MAX as usize))
                })
                .collect()
        });
        let edge_map = si
            .names
            .edges
            .iter()
            .map(|e| {
                self.edges
                    .get(e)
                    .and_then(|d| di.edge(d))
                    .unwrap_or(EdgeId::new(u32::MAX as usize))
            })
            .collect();
        TypoidMorphism {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            term_map,
            path_map,
            edge_map,
        }
    }

    pub fn from_morphism(m: &TypoidMorphism, src: &TypoidDecl, dst: &TypoidDecl) -> MorphismDecl {
        let (si, di) = (src.index(), dst.index());
        let terms = m
            .term_map
            .iter()
            .enumerate()
            .map(|(x, &y)| (si.names.terms[x].clone(), di.term_name(y).to_string()))
            .collect();
        let paths = m.path_map.as_ref().map(|pm| {
            pm.iter()
                .enumerate()
                .map(|(p, &q)| (si.names.paths[p].clone(), di.path_name(q).to_string()))
                .collect()
        });
        let edges = m
            .edge_map
            .iter()
            .enumerate()
            .map(|(e, &d)| (si.names.edges[e].clone(), di.edge_name(d).to_string()))
            .collect();
        MorphismDecl {
            name: m.name.clone(),
            source: src.name.clone(),
            target: dst.name.clone(),
            terms,
            paths,
            edges,
            span: Span::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Typoid(TypoidDecl),
    Morphism(MorphismDecl),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Typoid(t) => &t.name,
            Item::Morphism(m) => &m.name,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            Item::Typoid(t) => t.span,
            Item::Morphism(m) => m.span,
        }
    }
}

/// An ordered collection of uniquely named declarations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn typoids(&self) -> impl Iterator<Item = &TypoidDecl> + '_ {
        self.items.iter().filter_map(|i| match i {
            Item::Typoid(t) => Some(t),
            Item::Morphism(_) => None,
        })
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &MorphismDecl> + '_ {
        self.items.iter().filter_map(|i| match i {
            Item::Morphism(m) => Some(m),
            Item::Typoid(_) => None,
        })
    }

    pub fn typoid(&self, name: &str) -> Option<&TypoidDecl> {
        self.typoids().find(|t| t.name == name)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl> {
        self.morphisms().find(|m| m.name == name)
    }

    pub fn push_typoid(&mut self, t: TypoidDecl) {
        self.items.push(Item::Typoid(t));
    }

    pub fn push_morphism(&mut self, m: MorphismDecl) {
        self.items.push(Item::Morphism(m));
    }
}
