//! Name resolution, endpoint checking and materialization of implicit
//! table entries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::diagnostic::{Code, Diagnostic, Span};
use super::document::{eqv_name, refl_name, ArrowDecl, Document, MorphismDecl, TypoidDecl};
use super::parser::{Block, BlockKind, Name, Stmt};

pub fn resolve(blocks: &[Block]) -> (Document, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    let mut seen = BTreeSet::new();
    let mut unique = Vec::new();
    for b in blocks {
        if seen.insert(b.name.text.as_str()) {
            unique.push(b);
        } else {
            diags.push(Diagnostic::new(
                Code::Duplicate,
                b.name.span,
                format!("`{}` is already declared in this file", b.name.text),
            ));
        }
    }
    let mut typoids: HashMap<&str, TypoidDecl> = HashMap::new();
    for b in &unique {
        if b.kind == BlockKind::Typoid {
            typoids.insert(&b.name.text, TypoidResolver::new(b, &mut diags).run());
        }
    }
    let mut doc = Document::default();
    for b in unique {
        match &b.kind {
            BlockKind::Typoid => doc.push_typoid(typoids[b.name.text.as_str()].clone()),
            BlockKind::Morphism { source, target } => {
                let (src, dst) = (typoids.get(source.text.as_str()), typoids.get(target.text.as_str()));
                for (n, t) in [(source, src), (target, dst)] {
                    if t.is_none() {
                        diags.push(Diagnostic::new(
                            Code::Unknown,
                            n.span,
                            format!("unknown typoid `{}`", n.text),
                        ));
                    }
                }
                let m = match (src, dst) {
                    (Some(s), Some(d)) => resolve_morphism(b, s, d, &mut diags),
                    _ => MorphismDecl {
                        name: b.name.text.clone(),
                        source: source.text.clone(),
                        target: target.text.clone(),
                        span: b.name.span,
                        ..MorphismDecl::default()
                    },
                };
                doc.push_morphism(m);
            }
        }
    }
    (doc, diags)
}

/// Endpoint names of an arrow.
type Ends = (String, String);

struct TypoidResolver<'a> {
    block: &'a Block,
    diags: &'a mut Vec<Diagnostic>,
    decl: TypoidDecl,
    term_span: HashMap<String, Span>,
    path_ends: HashMap<String, Ends>,
    path_span: HashMap<String, Span>,
    edge_ends: HashMap<String, Ends>,
    edge_span: HashMap<String, Span>,
}

impl<'a> TypoidResolver<'a> {
    fn new(block: &'a Block, diags: &'a mut Vec<Diagnostic>) -> Self {
        TypoidResolver {
            block,
            diags,
            decl: TypoidDecl {
                name: block.name.text.clone(),
                span: block.name.span,
                ..TypoidDecl::default()
            },
            term_span: HashMap::new(),
            path_ends: HashMap::new(),
            path_span: HashMap::new(),
            edge_ends: HashMap::new(),
            edge_span: HashMap::new(),
        }
    }

    fn diag(&mut self, code: Code, span: Span, message: String) {
        self.diags.push(Diagnostic::new(code, span, message));
    }

    fn known_term(&mut self, n: &Name) -> bool {
        let ok = self.term_span.contains_key(&n.text);
        if !ok {
            self.diag(Code::Unknown, n.span, format!("unknown term `{}`", n.text));
        }
        ok
    }

    fn path(&mut self, n: &Name) -> Option<Ends> {
        let ends = self.path_ends.get(&n.text).cloned();
        if ends.is_none() {
            self.diag(Code::Unknown, n.span, format!("unknown path `{}`", n.text));
        }
        ends
    }

    fn edge(&mut self, n: &Name) -> Option<Ends> {
        let ends = self.edge_ends.get(&n.text).cloned();
        if ends.is_none() {
            self.diag(Code::Unknown, n.span, format!("unknown edge `{}`", n.text));
        }
        ends
    }

    fn stmts(&self) -> impl Iterator<Item = &'a Stmt> + 'a {
        self.block.stmts.iter()
    }

    fn run(mut self) -> TypoidDecl {
        self.terms();
        self.paths();
        self.edges();
        let strict = self.stmts().any(|s| matches!(s, Stmt::StrictUnits(_)));
        self.entries();
        self.fill_implicit(strict);
        self.report_missing(strict);
        self.decl
    }

    fn terms(&mut self) {
        let mut any = false;
        for s in self.stmts() {
            let Stmt::Terms(names) = s else { continue };
            any = true;
            for n in names {
                if self.term_span.contains_key(&n.text) {
                    self.diag(
                        Code::Duplicate,
                        n.span,
                        format!("term `{}` is already declared", n.text),
                    );
                } else {
                    self.term_span.insert(n.text.clone(), n.span);
                    self.decl.terms.push(n.text.clone());
                }
            }
        }
        if !any {
            let span = self.block.name.span;
            self.diag(
                Code::NoTerms,
                span,
                format!("typoid `{}` has no `terms` statement", self.decl.name),
            );
        }
    }

    fn paths(&mut self) {
        for t in self.decl.terms.clone() {
            self.path_ends.insert(refl_name(&t), (t.clone(), t));
        }
        for s in self.stmts() {
            let Stmt::Path(n, a, b) = s else { continue };
            if self.path_ends.contains_key(&n.text) {
                self.diag(
                    Code::Duplicate,
                    n.span,
                    format!("path `{}` is already declared", n.text),
                );
                continue;
            }
            if !(self.known_term(a) & self.known_term(b)) {
                continue;
            }
            self.path_ends.insert(n.text.clone(), (a.text.clone(), b.text.clone()));
            self.path_span.insert(n.text.clone(), n.span);
            self.decl.paths.push(ArrowDecl::new(&n.text, &a.text, &b.text));
        }
    }

    fn edges(&mut self) {
        let mut declared: Vec<(&Name, &Name, &Name)> = Vec::new();
        for s in self.stmts() {
            let Stmt::Edge(n, a, b) = s else { continue };
            if declared.iter().any(|d| d.0.text == n.text) {
                self.diag(
                    Code::Duplicate,
                    n.span,
                    format!("edge `{}` is already declared", n.text),
                );
                continue;
            }
            if self.known_term(a) & self.known_term(b) {
                declared.push((n, a, b));
            }
        }
        let mut overrides: BTreeMap<String, (String, Span)> = BTreeMap::new();
        for s in self.stmts() {
            let Stmt::Eqv(x, e) = s else { continue };
            if !self.known_term(x) {
                continue;
            }
            let Some(&(_, a, b)) = declared.iter().find(|d| d.0.text == e.text) else {
                self.diag(Code::Unknown, e.span, format!("unknown edge `{}`", e.text));
                continue;
            };
            if a.text != x.text || b.text != x.text {
                self.diag(
                    Code::Endpoints,
                    e.span,
                    format!(
                        "unit edge of `{}` must be a loop at it, `{}` : {} ~ {}",
                        x.text, e.text, a.text, b.text
                    ),
                );
                continue;
            }
            match overrides.get(&x.text) {
                Some((prev, _)) if *prev != e.text => {
                    self.diag(
                        Code::Conflict,
                        e.span,
                        format!("unit edge of `{}` is already `{prev}`", x.text),
                    );
                }
                _ => {
                    overrides.insert(x.text.clone(), (e.text.clone(), e.span));
                }
            }
        }
        for t in self.decl.terms.clone() {
            let name = match overrides.get(&t) {
                Some((e, _)) => e.clone(),
                None => {
                    let e = eqv_name(&t);
                    self.edge_ends.insert(e.clone(), (t.clone(), t.clone()));
                    e
                }
            };
            self.decl.eqv.insert(t, name);
        }
        for (n, a, b) in declared {
            if self.edge_ends.contains_key(&n.text) {
                self.diag(
                    Code::Duplicate,
                    n.span,
                    format!("edge `{}` clashes with an implicit unit edge", n.text),
                );
                continue;
            }
            self.edge_ends.insert(n.text.clone(), (a.text.clone(), b.text.clone()));
            self.edge_span.insert(n.text.clone(), n.span);
            self.decl.edges.push(ArrowDecl::new(&n.text, &a.text, &b.text));
        }
    }

    fn entries(&mut self) {
        let mut cells: Vec<(String, String)> = Vec::new();
        for s in self.stmts() {
            match s {
                Stmt::Comp(p, q, r) => {
                    let (Some(pe), Some(qe), Some(re)) = (self.path(p), self.path(q), self.path(r)) else {
                        continue;
                    };
                    if pe.1 != qe.0 {
                        self.diag(
                            Code::Endpoints,
                            q.span,
                            format!(
                                "cannot compose `{}` : {} -> {} with `{}` : {} -> {}",
                                p.text, pe.0, pe.1, q.text, qe.0, qe.1
                            ),
                        );
                        continue;
                    }
                    if re != (pe.0.clone(), qe.1.clone()) {
                        self.diag(
                            Code::Endpoints,
                            r.span,
                            format!(
                                "`{}` : {} -> {} cannot be `{} . {}` : {} -> {}",
                                r.text, re.0, re.1, p.text, q.text, pe.0, qe.1
                            ),
                        );
                        continue;
                    }
                    let key = (p.text.clone(), q.text.clone());
                    self.insert_pair(Kind::Comp, key, &r.text, p.span);
                }
                Stmt::Star(e, d, c) => {
                    let (Some(ee), Some(de), Some(ce)) = (self.edge(e), self.edge(d), self.edge(c)) else {
                        continue;
                    };
                    if ee.1 != de.0 {
                        self.diag(
                            Code::Endpoints,
                            d.span,
                            format!(
                                "cannot compose `{}` : {} ~ {} with `{}` : {} ~ {}",
                                e.text, ee.0, ee.1, d.text, de.0, de.1
                            ),
                        );
                        continue;
                    }
                    if ce != (ee.0.clone(), de.1.clone()) {
                        self.diag(
                            Code::Endpoints,
                            c.span,
                            format!(
                                "`{}` : {} ~ {} cannot be `{} * {}` : {} ~ {}",
                                c.text, ce.0, ce.1, e.text, d.text, ee.0, de.1
                            ),
                        );
                        continue;
                    }
                    let key = (e.text.clone(), d.text.clone());
                    self.insert_pair(Kind::Star, key, &c.text, e.span);
                }
                Stmt::Pinv(p, q) => {
                    let (Some(pe), Some(qe)) = (self.path(p), self.path(q)) else {
                        continue;
                    };
                    if qe != (pe.1.clone(), pe.0.clone()) {
                        self.diag(
                            Code::Endpoints,
                            q.span,
                            format!(
                                "inverse of `{}` : {} -> {} must go {} -> {}",
                                p.text, pe.0, pe.1, pe.1, pe.0
                            ),
                        );
                        continue;
                    }
                    self.insert_single(Kind::Pinv, &p.text, &q.text, p.span);
                }
                Stmt::Einv(e, d) => {
                    let (Some(ee), Some(de)) = (self.edge(e), self.edge(d)) else {
                        continue;
                    };
                    if de != (ee.1.clone(), ee.0.clone()) {
                        self.diag(
                            Code::Endpoints,
                            d.span,
                            format!(
                                "inverse of `{}` : {} ~ {} must go {} ~ {}",
                                e.text, ee.0, ee.1, ee.1, ee.0
                            ),
                        );
                        continue;
                    }
                    self.insert_single(Kind::Einv, &e.text, &d.text, e.span);
                }
                Stmt::Idtoeqv(p, e) => {
                    let (Some(pe), Some(ee)) = (self.path(p), self.edge(e)) else {
                        continue;
                    };
                    if pe != ee {
                        self.diag(
                            Code::Endpoints,
                            e.span,
                            format!(
                                "`{}` : {} ~ {} does not match `{}` : {} -> {}",
                                e.text, ee.0, ee.1, p.text, pe.0, pe.1
                            ),
                        );
                        continue;
                    }
                    self.insert_single(Kind::Idtoeqv, &p.text, &e.text, p.span);
                }
                Stmt::Cell(e, d) => {
                    let (Some(ee), Some(de)) = (self.edge(e), self.edge(d)) else {
                        continue;
                    };
                    if ee != de {
                        self.diag(
                            Code::Endpoints,
                            d.span,
                            format!(
                                "`{}` : {} ~ {} and `{}` : {} ~ {} lie in different hom-sets",
                                e.text, ee.0, ee.1, d.text, de.0, de.1
                            ),
                        );
                        continue;
                    }
                    if e.text == d.text {
                        self.diag(
                            Code::TrivialCell,
                            d.span,
                            format!("`{}` is always in its own cell", e.text),
                        );
                    }
                    cells.push((e.text.clone(), d.text.clone()));
                }
                _ => {}
            }
        }
        self.decl.cells = close_cells(&cells);
    }

    fn insert_pair(&mut self, kind: Kind, key: (String, String), value: &str, span: Span) {
        let table = match kind {
            Kind::Comp => &mut self.decl.comp,
            _ => &mut self.decl.star,
        };
        if let Some(prev) = table.get(&key) {
            if prev != value {
                let msg = format!("`{} {} {}` is already `{prev}`", key.0, kind.op(), key.1);
                self.diag(Code::Conflict, span, msg);
            }
            return;
        }
        table.insert(key, value.to_string());
    }

    fn insert_single(&mut self, kind: Kind, key: &str, value: &str, span: Span) {
        let table = match kind {
            Kind::Pinv => &mut self.decl.pinv,
            Kind::Einv => &mut self.decl.einv,
            _ => &mut self.decl.idtoeqv,
        };
        if let Some(prev) = table.get(key) {
            if prev != value {
                let msg = format!("`{} {key}` is already `{prev}`", kind.op());
                self.diag(Code::Conflict, span, msg);
            }
            return;
        }
        table.insert(key.to_string(), value.to_string());
    }

    fn unit_edge(&self, t: &str) -> String {
        self.decl.eqv[t].clone()
    }

    fn fill_implicit(&mut self, strict: bool) {
        let d = &mut self.decl;
        let refl: HashMap<&str, String> = d.terms.iter().map(|t| (t.as_str(), refl_name(t))).collect();
        let unit: HashMap<&str, String> = d.terms.iter().map(|t| (t.as_str(), d.eqv[t].clone())).collect();
        for (p, (a, b)) in &self.path_ends {
            d.comp
                .entry((refl[a.as_str()].clone(), p.clone()))
                .or_insert_with(|| p.clone());
            d.comp
                .entry((p.clone(), refl[b.as_str()].clone()))
                .or_insert_with(|| p.clone());
        }
        for t in &d.terms {
            let (r, u) = (&refl[t.as_str()], &unit[t.as_str()]);
            d.pinv.entry(r.clone()).or_insert_with(|| r.clone());
            d.idtoeqv.entry(r.clone()).or_insert_with(|| u.clone());
            d.einv.entry(u.clone()).or_insert_with(|| u.clone());
            d.star.entry((u.clone(), u.clone())).or_insert_with(|| u.clone());
        }
        if strict {
            for (e, (a, b)) in &self.edge_ends {
                d.star
                    .entry((unit[a.as_str()].clone(), e.clone()))
                    .or_insert_with(|| e.clone());
                d.star
                    .entry((e.clone(), unit[b.as_str()].clone()))
                    .or_insert_with(|| e.clone());
            }
        }
    }

    fn report_missing(&mut self, strict: bool) {
        let paths = self.ordered_paths();
        let edges = self.ordered_edges();
        let units: BTreeSet<String> = self.decl.terms.iter().map(|t| self.unit_edge(t)).collect();
        let mut found = Vec::new();
        for (p, pe) in &paths {
            for (q, qe) in &paths {
                if pe.1 == qe.0 && !self.decl.comp.contains_key(&(p.clone(), q.clone())) {
                    found.push((self.path_at(p, q), format!("missing composition `comp {p} . {q}`")));
                }
            }
            if !self.decl.pinv.contains_key(p) {
                found.push((self.path_at(p, p), format!("missing inverse `pinv {p}`")));
            }
            if !self.decl.idtoeqv.contains_key(p) {
                found.push((self.path_at(p, p), format!("missing entry `idtoeqv {p}`")));
            }
        }
        for (e, ee) in &edges {
            for (d, de) in &edges {
                if ee.1 == de.0 && !self.decl.star.contains_key(&(e.clone(), d.clone())) {
                    let hint = if !strict && (units.contains(e) || units.contains(d)) {
                        " (declare `strictunits;` to make unit absorption implicit)"
                    } else {
                        ""
                    };
                    found.push((
                        self.edge_at(e, d),
                        format!("missing composition `star {e} * {d}`{hint}"),
                    ));
                }
            }
            if !self.decl.einv.contains_key(e) {
                found.push((self.edge_at(e, e), format!("missing inverse `einv {e}`")));
            }
        }
        for (span, msg) in found {
            self.diag(Code::Missing, span, msg);
        }
    }

    fn ordered_paths(&self) -> Vec<(String, Ends)> {
        let mut names: Vec<String> = self.decl.terms.iter().map(|t| refl_name(t)).collect();
        names.extend(self.decl.paths.iter().map(|p| p.name.clone()));
        names
            .into_iter()
            .map(|n| (n.clone(), self.path_ends[&n].clone()))
            .collect()
    }

    fn ordered_edges(&self) -> Vec<(String, Ends)> {
        let mut names: Vec<String> = self.decl.implicit_eqv_terms().map(|t| self.unit_edge(t)).collect();
        names.extend(self.decl.edges.iter().map(|e| e.name.clone()));
        names
            .into_iter()
            .map(|n| (n.clone(), self.edge_ends[&n].clone()))
            .collect()
    }

    fn path_at(&self, p: &str, q: &str) -> Span {
        self.path_span
            .get(p)
            .or_else(|| self.path_span.get(q))
            .copied()
            .unwrap_or(self.block.name.span)
    }

    fn edge_at(&self, e: &str, d: &str) -> Span {
        self.edge_span
            .get(e)
            .or_else(|| self.edge_span.get(d))
            .copied()
            .unwrap_or(self.block.name.span)
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Comp,
    Star,
    Pinv,
    Einv,
    Idtoeqv,
}

impl Kind {
    fn op(self) -> &'static str {
        match self {
            Kind::Comp => ".",
            Kind::Star => "*",
            Kind::Pinv => "pinv",
            Kind::Einv => "einv",
            Kind::Idtoeqv => "idtoeqv",
        }
    }
}

/// Equivalence closure of the declared cell pairs, as classes of size > 1.
fn close_cells(pairs: &[(String, String)]) -> BTreeSet<BTreeSet<String>> {
    let mut parent: BTreeMap<&str, &str> = BTreeMap::new();
    fn root<'s>(parent: &BTreeMap<&'s str, &'s str>, mut x: &'s str) -> &'s str {
        while let Some(&p) = parent.get(x) {
            if p == x {
                break;
            }
            x = p;
        }
        x
    }
    for (a, b) in pairs {
        parent.entry(a).or_insert(a);
        parent.entry(b).or_insert(b);
        let (ra, rb) = (root(&parent, a), root(&parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
    }
    let mut classes: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for &x in parent.keys() {
        classes.entry(root(&parent, x)).or_default().insert(x.to_string());
    }
    classes.into_values().filter(|c| c.len() > 1).collect()
}

fn resolve_morphism(b: &Block, src: &TypoidDecl, dst: &TypoidDecl, diags: &mut Vec<Diagnostic>) -> MorphismDecl {
    let (si, di) = (src.index(), dst.index());
    let mut m = MorphismDecl {
        name: b.name.text.clone(),
        source: src.name.clone(),
        target: dst.name.clone(),
        span: b.name.span,
        ..MorphismDecl::default()
    };
    let mut diag = |code, span, msg: String| diags.push(Diagnostic::new(code, span, msg));
    let mut paths = BTreeMap::new();
    let mut has_path_stmt = false;
    for s in &b.stmts {
        match s {
            Stmt::MapTerm(x, y) => {
                let ok_x = si.term(&x.text).is_some();
                let ok_y = di.term(&y.text).is_some();
                if !ok_x {
                    diag(
                        Code::Unknown,
                        x.span,
                        format!("`{}` is not a term of `{}`", x.text, src.name),
                    );
                }
                if !ok_y {
                    diag(
                        Code::Unknown,
                        y.span,
                        format!("`{}` is not a term of `{}`", y.text, dst.name),
                    );
                }
                if ok_x && ok_y {
                    insert_map(&mut m.terms, x, &y.text, &mut diag);
                }
            }
            Stmt::MapPath(..) | Stmt::MapEdge(..) => {}
            _ => unreachable!("the parser only accepts mapping statements in morphisms"),
        }
    }
    let image = |x: &str, terms: &BTreeMap<String, String>| terms.get(x).cloned();
    for s in &b.stmts {
        let (is_path, a, c) = match s {
            Stmt::MapPath(a, c) => (true, a, c),
            Stmt::MapEdge(a, c) => (false, a, c),
            _ => continue,
        };
        has_path_stmt |= is_path;
        let kind = if is_path { "path" } else { "edge" };
        let src_ends = if is_path {
            si.path(&a.text).map(|p| si.path_ends[p.index()])
        } else {
            si.edge(&a.text).map(|e| si.edge_ends[e.index()])
        };
        let dst_ends = if is_path {
            di.path(&c.text).map(|p| di.path_ends[p.index()])
        } else {
            di.edge(&c.text).map(|e| di.edge_ends[e.index()])
        };
        if src_ends.is_none() {
            diag(
                Code::Unknown,
                a.span,
                format!("`{}` is not a {kind} of `{}`", a.text, src.name),
            );
        }
        if dst_ends.is_none() {
            diag(
                Code::Unknown,
                c.span,
                format!("`{}` is not a {kind} of `{}`", c.text, dst.name),
            );
        }
        let (Some((x, y)), Some((u, v))) = (src_ends, dst_ends) else {
            continue;
        };
        let (fx, fy) = (image(si.term_name(x), &m.terms), image(si.term_name(y), &m.terms));
        if let (Some(fx), Some(fy)) = (fx, fy) {
            if (fx.as_str(), fy.as_str()) != (di.term_name(u), di.term_name(v)) {
                diag(
                    Code::Endpoints,
                    c.span,
                    format!(
                        "`{}` must go from `{fx}` to `{fy}` to be the image of `{}`",
                        c.text, a.text
                    ),
                );
                continue;
            }
        }
        let table = if is_path { &mut paths } else { &mut m.edges };
        insert_map(table, a, &c.text, &mut diag);
    }
    for x in &si.names.terms {
        if !m.terms.contains_key(x) {
            diag(Code::Missing, b.name.span, format!("term `{x}` has no image"));
        }
    }
    for (i, x) in si.names.terms.iter().enumerate() {
        let Some(fx) = m.terms.get(x) else { continue };
        paths.entry(si.names.paths[i].clone()).or_insert_with(|| refl_name(fx));
        let (e, d) = (&src.eqv[x], &dst.eqv[fx]);
        m.edges.entry(e.clone()).or_insert_with(|| d.clone());
    }
    let has_loops = si.names.paths.len() > si.names.terms.len();
    if has_path_stmt || !has_loops {
        for p in &si.names.paths {
            if !paths.contains_key(p) {
                diag(
                    Code::PartialPathAction,
                    b.name.span,
                    format!("path `{p}` has no image; map every path or none"),
                );
            }
        }
        m.paths = Some(paths);
    }
    for e in &si.names.edges {
        if !m.edges.contains_key(e) {
            diag(Code::Missing, b.name.span, format!("edge `{e}` has no image"));
        }
    }
    m
}

fn insert_map(
    table: &mut BTreeMap<String, String>,
    key: &Name,
    value: &str,
    diag: &mut impl FnMut(Code, Span, String),
) {
    match table.get(&key.text) {
        Some(prev) if prev != value => diag(
            Code::Conflict,
            key.span,
            format!("`{}` is already sent to `{prev}`", key.text),
        ),
        Some(_) => {}
        None => {
            table.insert(key.text.clone(), value.to_string());
        }
    }
}
