//! Subcommands of the `typoid` binary. Every command produces a [`Report`]
//! and an exit code; nothing here prints.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use typoid_core::constructions::{
    equality_typoid, exponential_typoid, product_typoid, truncate, univalent_completion, universe_typoid, ExpLimits,
};
use typoid_core::stock::cyclic_groupoid;
use typoid_core::{
    check_univalence, expected_checks, induce_morphism, validate_morphism, validate_typoid, verify_certificate, EdgeId,
    Error, MorphismChecks, PathId, TermId, Typoid, TypoidMorphism,
};

use crate::dsl::{self, Diagnostic, Document, MorphismDecl, Names, TypoidDecl};
use crate::naming;
use crate::report::{ua_entries, violations_of, Report, Stats, ViolationEntry};

pub const DEFAULT_MAX_CHECKS: u64 = 10_000_000;
pub const MAX_CHECKS_VAR: &str = "TYPOID_MAX_CHECKS";

#[derive(Parser, Debug)]
#[command(name = "typoid", version, about = "Validate, construct and check finite typoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every typoid and morphism in a file against its laws.
    Validate { file: PathBuf },
    /// Decide whether a typoid is univalent.
    Univalence {
        file: PathBuf,
        /// Typoid to check; may be omitted when the file holds only one.
        #[arg(long)]
        typoid: Option<String>,
        /// Include the inverse of idtoeqv in the report.
        #[arg(long)]
        emit_ua: bool,
    },
    /// Write the product of two typoids.
    Product {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Write the typoid of functions from A to B.
    Exp {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_terms: usize,
        #[arg(long, default_value_t = 256)]
        max_edges: usize,
    },
    /// Write the truncation of a typoid.
    Truncate {
        file: PathBuf,
        a: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Write the univalent completion of a typoid.
    Complete {
        file: PathBuf,
        a: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Check a typoid function, named in the file or given by flags.
    CheckFun {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["from", "to", "map", "path_map", "edge_map"])]
        morphism: Option<String>,
        #[arg(long, requires_all = ["to", "map"])]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Term map as `a:b,c:d`.
        #[arg(long)]
        map: Option<String>,
        /// Path map as `p:q,...`; refl paths may be left out.
        #[arg(long)]
        path_map: Option<String>,
        /// Edge map as `e:d,...`; unit edges may be left out.
        #[arg(long)]
        edge_map: Option<String>,
        /// Skip the checks on the path action.
        #[arg(long)]
        no_ap: bool,
    },
    /// Build the typoid function a term map and path action induce out of a
    /// univalent typoid.
    Induce {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "")]
        path_map: String,
        #[arg(long)]
        name: Option<String>,
        /// Write source, target and the morphism to this file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a generated typoid.
    Gen {
        kind: GenKind,
        /// `equality`: components as TERMSxORDER; `universe`: set sizes;
        /// `discrete` and `prop`: the number of terms.
        args: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 256)]
        max_edges: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Equality typoid of a groupoid of cyclic components.
    Equality,
    /// Finite sets and bijections.
    Universe,
    /// Terms with only trivial paths.
    Discrete,
    /// Terms with exactly one path between any two.
    Prop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    PropertyFails = 1,
    InputError = 2,
    ResourceLimit = 3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit: Exit,
    /// Diagnostics to show a human, already rendered.
    pub messages: Vec<String>,
}

impl Outcome {
    fn input(message: impl Into<String>) -> Box<Self> {
        let message = message.into();
        let mut report = Report::new("input_error");
        report.violations.push(ViolationEntry::error("E000", message.clone()));
        Box::new(Outcome {
            report,
            exit: Exit::InputError,
            messages: vec![message],
        })
    }

    fn resource(message: impl Into<String>) -> Box<Self> {
        let message = message.into();
        let mut report = Report::new("resource_limit");
        report.violations.push(ViolationEntry::error("R001", message.clone()));
        Box::new(Outcome {
            report,
            exit: Exit::ResourceLimit,
            messages: vec![message],
        })
    }
}

type Step<T> = Result<T, Box<Outcome>>;

/// Runs one command. `max_checks` is the raw value of the work bound
/// variable, if set.
pub fn run(cli: Cli, max_checks: Option<&str>) -> Outcome {
    let result = (|| {
        let budget = parse_budget(max_checks)?;
        match cli.command {
            Command::Validate { file } => validate(&file, budget),
            Command::Univalence { file, typoid, emit_ua } => univalence(&file, typoid.as_deref(), emit_ua, budget),
            Command::Product { file, a, b, out, name } => product(&file, &a, &b, &out, name, budget),
            Command::Exp {
                file,
                a,
                b,
                out,
                name,
                max_terms,
                max_edges,
            } => exp(&file, &a, &b, &out, name, ExpLimits { max_terms, max_edges }, budget),
            Command::Truncate { file, a, out, name } => unary(&file, &a, &out, name, Unary::Truncate, budget),
            Command::Complete { file, a, out, name } => unary(&file, &a, &out, name, Unary::Complete, budget),
            Command::CheckFun {
                file,
                morphism,
                from,
                to,
                map,
                path_map,
                edge_map,
                no_ap,
            } => {
                let spec = match (morphism, from, to, map) {
                    (Some(m), ..) => FunSpec::Named(m),
                    (None, Some(from), Some(to), Some(map)) => FunSpec::Flags {
                        from,
                        to,
                        map,
                        path_map,
                        edge_map: edge_map.unwrap_or_default(),
                    },
                    _ => return Err(Outcome::input("give --morphism, or --from, --to and --map")),
                };
                check_fun(&file, spec, !no_ap, budget)
            }
            Command::Induce {
                file,
                from,
                to,
                map,
                path_map,
                name,
                out,
            } => induce(&file, &from, &to, &map, &path_map, name, out.as_deref(), budget),
            Command::Gen {
                kind,
                args,
                out,
                name,
                max_edges,
            } => generate(kind, &args, &out, name, max_edges, budget),
        }
    })();
    match result {
        Ok(o) => o,
        Err(o) => *o,
    }
}

fn parse_budget(raw: Option<&str>) -> Step<u64> {
    match raw {
        None => Ok(DEFAULT_MAX_CHECKS),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Outcome::input(format!("{MAX_CHECKS_VAR} must be a non-negative integer, got {s:?}"))),
    }
}

fn charge(typoids: &[&Typoid], budget: u64) -> Step<u64> {
    let total: u64 = typoids.iter().flat_map(|t| expected_checks(t)).map(|(_, n)| n).sum();
    if total > budget {
        return Err(Outcome::resource(format!(
            "validation needs {total} law instances, over the bound of {budget} set by {MAX_CHECKS_VAR}"
        )));
    }
    Ok(total)
}

fn stats_of(t: &Typoid, checks: u64) -> Stats {
    Stats {
        terms: t.term_count(),
        paths: t.base().path_count(),
        edges: t.layer().edge_count(),
        checks,
    }
}

fn render(file: &Path, d: &Diagnostic) -> String {
    format!("{}:{d}", file.display())
}

/// A parsed file. Warnings are carried along for the report.
struct Loaded {
    doc: Document,
    warnings: Vec<ViolationEntry>,
    messages: Vec<String>,
}

fn load(file: &Path) -> Step<Loaded> {
    let text = fs::read_to_string(file).map_err(|e| Outcome::input(format!("cannot read {}: {e}", file.display())))?;
    let (doc, diags) = dsl::parse_with_diagnostics(&text);
    let entries: Vec<ViolationEntry> = diags.iter().map(ViolationEntry::from_diagnostic).collect();
    let messages = diags.iter().map(|d| render(file, d)).collect();
    match doc {
        Some(doc) => Ok(Loaded {
            doc,
            warnings: entries,
            messages,
        }),
        None => {
            let mut report = Report::new("input_error");
            report.violations = entries;
            Err(Box::new(Outcome {
                report,
                exit: Exit::InputError,
                messages,
            }))
        }
    }
}

impl Loaded {
    fn typoid(&self, name: &str) -> Step<&TypoidDecl> {
        self.doc
            .typoid(name)
            .ok_or_else(|| Outcome::input(format!("no typoid named `{name}` in the file")))
    }

    fn outcome(&self, mut report: Report, exit: Exit) -> Outcome {
        let mut v = self.warnings.clone();
        v.append(&mut report.violations);
        report.violations = v;
        Outcome {
            report,
            exit,
            messages: self.messages.clone(),
        }
    }
}

/// Fails with the law violations of `t` unless it is valid.
fn require_valid(loaded: &Loaded, decl: &TypoidDecl, t: &Typoid) -> Step<u64> {
    let report = validate_typoid(t);
    if report.is_valid() {
        return Ok(report.total_checks());
    }
    let names = decl.index().names;
    let mut out = Report::new("invalid");
    out.violations = violations_of(&decl.name, &report, Some(&names));
    out.stats = stats_of(t, report.total_checks());
    Err(Box::new(loaded.outcome(out, Exit::PropertyFails)))
}

fn validate(file: &Path, budget: u64) -> Step<Outcome> {
    let loaded = load(file)?;
    let typoids: Vec<(&TypoidDecl, Typoid)> = loaded.doc.typoids().map(|d| (d, d.to_typoid())).collect();
    let refs: Vec<&Typoid> = typoids.iter().map(|(_, t)| t).collect();
    charge(&refs, budget)?;
    let mut report = Report::new("valid");
    let mut valid = std::collections::HashMap::new();
    for (decl, t) in &typoids {
        let r = validate_typoid(t);
        report.stats.terms += t.term_count();
        report.stats.paths += t.base().path_count();
        report.stats.edges += t.layer().edge_count();
        report.stats.checks += r.total_checks();
        valid.insert(decl.name.as_str(), r.is_valid());
        report
            .violations
            .extend(violations_of(&decl.name, &r, Some(&decl.index().names)));
    }
    for m in loaded.doc.morphisms() {
        let lookup = |n: &str| typoids.iter().find(|(d, _)| d.name == n);
        let (Some((sd, s)), Some((dd, d))) = (lookup(&m.source), lookup(&m.target)) else {
            continue;
        };
        if !(valid[sd.name.as_str()] && valid[dd.name.as_str()]) {
            report.violations.push(ViolationEntry {
                item: Some(m.name.clone()),
                ..ViolationEntry::error("L000", "source or target is invalid; morphism laws not checked")
            });
            continue;
        }
        let r = validate_morphism(&m.to_morphism(sd, dd), s, d, MorphismChecks::default());
        report.stats.checks += r.total_checks();
        report.violations.extend(violations_of(&m.name, &r, None));
    }
    let exit = if report.violations.is_empty() {
        Exit::Success
    } else {
        report.result = "invalid".into();
        Exit::PropertyFails
    };
    Ok(loaded.outcome(report, exit))
}

fn univalence(file: &Path, name: Option<&str>, emit_ua: bool, budget: u64) -> Step<Outcome> {
    let loaded = load(file)?;
    let decl = match name {
        Some(n) => loaded.typoid(n)?,
        None => {
            let all: Vec<&TypoidDecl> = loaded.doc.typoids().collect();
            match all[..] {
                [only] => only,
                _ => {
                    return Err(Outcome::input(
                        "the file holds several typoids; choose one with --typoid",
                    ))
                }
            }
        }
    };
    let t = decl.to_typoid();
    charge(&[&t], budget)?;
    let mut checks = require_valid(&loaded, decl, &t)?;
    let names = decl.index().names;
    match check_univalence(&t) {
        Ok(cert) => {
            let verified = verify_certificate(&t, &cert);
            checks += verified.total_checks();
            let mut report = Report::new(if verified.is_valid() { "univalent" } else { "invalid" });
            report.violations = violations_of(&decl.name, &verified, Some(&names));
            if emit_ua {
                report.ua = ua_entries(&cert, &names);
            }
            report.stats = stats_of(&t, checks);
            let exit = if verified.is_valid() {
                Exit::Success
            } else {
                Exit::PropertyFails
            };
            Ok(loaded.outcome(report, exit))
        }
        Err(Error::NotUnivalent { witness, .. }) => {
            let mut report = Report::new("not_univalent");
            report.violations = witness
                .gaps
                .iter()
                .map(|g| ViolationEntry::from_gap(&decl.name, g, &names))
                .collect();
            report.stats = stats_of(&t, checks);
            Ok(loaded.outcome(report, Exit::PropertyFails))
        }
        Err(e) => Err(Outcome::input(e.to_string())),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = OsString::from(out.as_os_str());
    s.push(".json");
    PathBuf::from(s)
}

fn write_file(path: &Path, text: &str) -> Step<()> {
    fs::write(path, text).map_err(|e| Outcome::input(format!("cannot write {}: {e}", path.display())))
}

/// Validates `t`, writes it as the only declaration of `out` and its
/// provenance next to it.
fn emit(loaded: &Loaded, t: &Typoid, names: &Names, out: &Path, provenance: Value, budget: u64) -> Step<Outcome> {
    charge(&[t], budget)?;
    let report = validate_typoid(t);
    let decl = TypoidDecl::from_typoid(t, names);
    let mut doc = Document::default();
    doc.push_typoid(decl);
    write_file(out, &dsl::serialize(&doc))?;
    let sidecar = serde_json::to_string_pretty(&provenance).expect("json values serialize") + "\n";
    write_file(&sidecar_path(out), &sidecar)?;
    let mut summary = Report::new(if report.is_valid() { "written" } else { "invalid" });
    summary.violations = violations_of(t.name(), &report, Some(names));
    summary.stats = stats_of(t, report.total_checks());
    let exit = if report.is_valid() {
        Exit::Success
    } else {
        Exit::PropertyFails
    };
    Ok(loaded.outcome(summary, exit))
}

/// Maps construction errors onto exit codes.
fn construction_error(loaded: &Loaded, e: Error) -> Box<Outcome> {
    match e {
        Error::Resource { .. } => Outcome::resource(e.to_string()),
        Error::InvalidTypoid { name, report } => {
            let names = loaded.doc.typoid(&name).map(|d| d.index().names);
            let mut out = Report::new("invalid");
            out.violations = violations_of(&name, &report, names.as_ref());
            Box::new(loaded.outcome(out, Exit::PropertyFails))
        }
        Error::NotUnivalent { .. } => {
            let mut out = Report::new("not_univalent");
            out.violations.push(ViolationEntry::error(
                typoid_core::Law::RoundTrip2.code(),
                e.to_string(),
            ));
            Box::new(loaded.outcome(out, Exit::PropertyFails))
        }
        other => Outcome::input(other.to_string()),
    }
}

fn renamed(t: Typoid, name: Option<String>) -> Step<Typoid> {
    match name {
        Some(n) if !naming::is_ident(&n) => Err(Outcome::input(format!("`{n}` is not a valid name"))),
        Some(n) => Ok(t.with_name(n)),
        None => Ok(t),
    }
}

fn product(file: &Path, a: &str, b: &str, out: &Path, name: Option<String>, budget: u64) -> Step<Outcome> {
    let loaded = load(file)?;
    let (da, db) = (loaded.typoid(a)?, loaded.typoid(b)?);
    let (ta, tb) = (da.to_typoid(), db.to_typoid());
    charge(&[&ta, &tb], budget)?;
    let (p, prov) = product_typoid(&ta, &tb).map_err(|e| construction_error(&loaded, e))?;
    let (na, nb) = (da.index().names, db.index().names);
    let names = naming::product_names(&p, &prov, &na, &nb);
    let p = renamed(p, name)?;
    let triples =
        |count: usize, own: &[String], split: &dyn Fn(usize) -> (usize, usize), l: &[String], r: &[String]| {
            (0..count)
                .map(|i| {
                    let (x, y) = split(i);
                    json!([own[i], l[x], r[y]])
                })
                .collect::<Vec<_>>()
        };
    let provenance = json!({
        "construction": "product",
        "output": p.name(),
        "left": a,
        "right": b,
        "terms": triples(p.term_count(), &names.terms, &|i| { let (x, y) = prov.unpair_term(TermId::new(i)); (x.index(), y.index()) }, &na.terms, &nb.terms),
        "paths": triples(p.base().path_count(), &names.paths, &|i| { let (x, y) = prov.unpair_path(PathId::new(i)); (x.index(), y.index()) }, &na.paths, &nb.paths),
        "edges": triples(p.layer().edge_count(), &names.edges, &|i| { let (x, y) = prov.unpair_edge(EdgeId::new(i)); (x.index(), y.index()) }, &na.edges, &nb.edges),
    });
    emit(&loaded, &p, &names, out, provenance, budget)
}

#[allow(clippy::too_many_arguments)]
fn exp(
    file: &Path,
    a: &str,
    b: &str,
    out: &Path,
    name: Option<String>,
    limits: ExpLimits,
    budget: u64,
) -> Step<Outcome> {
    let loaded = load(file)?;
    let (da, db) = (loaded.typoid(a)?, loaded.typoid(b)?);
    let (ta, tb) = (da.to_typoid(), db.to_typoid());
    charge(&[&ta, &tb], budget)?;
    let (e, prov) = exponential_typoid(&ta, &tb, limits).map_err(|err| construction_error(&loaded, err))?;
    let names = naming::names_from_hints(
        &e,
        |x| format!("f{}", x.index()),
        |p| format!("p{}", p.index()),
        |d| format!("n{}", d.index()),
    );
    let e = renamed(e, name)?;
    let (na, nb) = (da.index().names, db.index().names);
    let table = |keys: &[String], values: &[String], map: &[usize]| {
        map.iter()
            .enumerate()
            .map(|(i, &j)| (keys[i].clone(), Value::from(values[j].clone())))
            .collect::<serde_json::Map<_, _>>()
    };
    let terms: Vec<Value> = prov
        .terms
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let tm: Vec<usize> = f.term_map.iter().map(|x| x.index()).collect();
            let pm: Vec<usize> = f.path_map.iter().map(|p| p.index()).collect();
            let em: Vec<usize> = f.edge_map.iter().map(|d| d.index()).collect();
            json!({
                "name": names.terms[i],
                "terms": table(&na.terms, &nb.terms, &tm),
                "paths": table(&na.paths, &nb.paths, &pm),
                "edges": table(&na.edges, &nb.edges, &em),
            })
        })
        .collect();
    let edges: Vec<Value> = prov
        .edges
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let th: Vec<usize> = n.theta.iter().map(|d| d.index()).collect();
            json!({
                "name": names.edges[i],
                "source": names.terms[n.source.index()],
                "target": names.terms[n.target.index()],
                "components": table(&na.terms, &nb.edges, &th),
            })
        })
        .collect();
    let provenance = json!({
        "construction": "exponential",
        "output": e.name(),
        "domain": a,
        "codomain": b,
        "terms": terms,
        "edges": edges,
    });
    emit(&loaded, &e, &names, out, provenance, budget)
}

#[derive(Clone, Copy)]
enum Unary {
    Truncate,
    Complete,
}

fn unary(file: &Path, a: &str, out: &Path, name: Option<String>, op: Unary, budget: u64) -> Step<Outcome> {
    let loaded = load(file)?;
    let da = loaded.typoid(a)?;
    let ta = da.to_typoid();
    charge(&[&ta], budget)?;
    let na = da.index().names;
    let (t, names, construction) = match op {
        Unary::Truncate => {
            // the truncation is defined for any carrier, but a broken input
            // would only hide its own problems
            require_valid(&loaded, da, &ta)?;
            let t = truncate(&ta);
            let names = naming::truncation_names(&t, &na);
            (t, names, "truncation")
        }
        Unary::Complete => {
            let t = univalent_completion(&ta).map_err(|e| construction_error(&loaded, e))?;
            let names = naming::completion_names(&t, &na);
            (t, names, "completion")
        }
    };
    let t = renamed(t, name)?;
    let provenance = json!({ "construction": construction, "output": t.name(), "input": a });
    emit(&loaded, &t, &names, out, provenance, budget)
}

/// Parses `a:b,c:d` into pairs. Whitespace around entries is ignored.
pub fn parse_pairs(flag: &str, text: &str) -> Step<Vec<(String, String)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|entry| match entry.split_once(':') {
            Some((a, b)) if naming::is_ident(a.trim()) && naming::is_ident(b.trim()) => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => Err(Outcome::input(format!(
                "--{flag}: cannot read `{entry}`, expected NAME:NAME"
            ))),
        })
        .collect()
}

/// Resolves name pairs into a total table over `keys`, filling gaps with
/// `default` and failing on unknown or missing names.
fn resolve_table<K: Copy, V: Copy>(
    flag: &str,
    pairs: &[(String, String)],
    key_names: &[String],
    key: impl Fn(&str) -> Option<K>,
    value: impl Fn(&str) -> Option<V>,
    index: impl Fn(K) -> usize,
    default: impl Fn(usize) -> Option<V>,
) -> Step<Vec<V>> {
    let mut table: Vec<Option<V>> = vec![None; key_names.len()];
    for (a, b) in pairs {
        let k = key(a).ok_or_else(|| Outcome::input(format!("--{flag}: `{a}` is not in the source")))?;
        let v = value(b).ok_or_else(|| Outcome::input(format!("--{flag}: `{b}` is not in the target")))?;
        let slot = &mut table[index(k)];
        if slot.is_some() {
            return Err(Outcome::input(format!("--{flag}: `{a}` is mapped twice")));
        }
        *slot = Some(v);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.or_else(|| default(i))
                .ok_or_else(|| Outcome::input(format!("--{flag}: `{}` has no image", key_names[i])))
        })
        .collect()
}

fn term_table(src: &TypoidDecl, dst: &TypoidDecl, map: &str) -> Step<Vec<TermId>> {
    let (si, di) = (src.index(), dst.index());
    let pairs = parse_pairs("map", map)?;
    resolve_table(
        "map",
        &pairs,
        &si.names.terms,
        |a| si.term(a),
        |b| di.term(b),
        |x| x.index(),
        |_| None,
    )
}

fn path_table(src: &TypoidDecl, dst: &TypoidDecl, f: &[TermId], map: &str) -> Step<Vec<PathId>> {
    let (si, di) = (src.index(), dst.index());
    let pairs = parse_pairs("path-map", map)?;
    let n = src.terms.len();
    // refl paths come first and go to the refl of their image
    let refl = |i: usize| (i < n).then(|| PathId::new(f[i].index()));
    resolve_table(
        "path-map",
        &pairs,
        &si.names.paths,
        |a| si.path(a),
        |b| di.path(b),
        |p| p.index(),
        refl,
    )
}

fn edge_table(src: &TypoidDecl, dst: &TypoidDecl, f: &[TermId], map: &str) -> Step<Vec<EdgeId>> {
    let (si, di) = (src.index(), dst.index());
    let pairs = parse_pairs("edge-map", map)?;
    let unit = |i: usize| {
        let x = src.terms.iter().position(|t| src.eqv[t] == si.names.edges[i])?;
        di.edge(&dst.eqv[&dst.terms[f[x].index()]])
    };
    resolve_table(
        "edge-map",
        &pairs,
        &si.names.edges,
        |a| si.edge(a),
        |b| di.edge(b),
        |e| e.index(),
        unit,
    )
}

enum FunSpec {
    Named(String),
    Flags {
        from: String,
        to: String,
        map: String,
        path_map: Option<String>,
        edge_map: String,
    },
}

fn check_fun(file: &Path, spec: FunSpec, ap: bool, budget: u64) -> Step<Outcome> {
    let loaded = load(file)?;
    let (m, sd, dd) = match spec {
        FunSpec::Named(n) => {
            let m = loaded
                .doc
                .morphism(&n)
                .ok_or_else(|| Outcome::input(format!("no morphism named `{n}` in the file")))?;
            let (sd, dd) = (loaded.typoid(&m.source)?, loaded.typoid(&m.target)?);
            (m.to_morphism(sd, dd), sd, dd)
        }
        FunSpec::Flags {
            from,
            to,
            map,
            path_map,
            edge_map,
        } => {
            let (sd, dd) = (loaded.typoid(&from)?, loaded.typoid(&to)?);
            let term_map = term_table(sd, dd, &map)?;
            let path_map = match path_map {
                Some(pm) => Some(path_table(sd, dd, &term_map, &pm)?),
                None if sd.paths.is_empty() => Some(path_table(sd, dd, &term_map, "")?),
                None => None,
            };
            let edge_map = edge_table(sd, dd, &term_map, &edge_map)?;
            let m = TypoidMorphism {
                name: "cli".into(),
                source: from,
                target: to,
                term_map,
                path_map,
                edge_map,
            };
            (m, sd, dd)
        }
    };
    let (s, d) = (sd.to_typoid(), dd.to_typoid());
    charge(&[&s, &d], budget)?;
    let mut checks = require_valid(&loaded, sd, &s)?;
    if sd.name != dd.name {
        checks += require_valid(&loaded, dd, &d)?;
    }
    let r = validate_morphism(&m, &s, &d, MorphismChecks { path_action: ap });
    let mut report = Report::new(if r.is_valid() { "valid" } else { "invalid" });
    report.violations = violations_of(&m.name, &r, None);
    report.stats = stats_of(&s, checks + r.total_checks());
    let exit = if r.is_valid() {
        Exit::Success
    } else {
        Exit::PropertyFails
    };
    Ok(loaded.outcome(report, exit))
}

#[allow(clippy::too_many_arguments)]
fn induce(
    file: &Path,
    from: &str,
    to: &str,
    map: &str,
    path_map: &str,
    name: Option<String>,
    out: Option<&Path>,
    budget: u64,
) -> Step<Outcome> {
    let loaded = load(file)?;
    let (sd, dd) = (loaded.typoid(from)?, loaded.typoid(to)?);
    let term_map = term_table(sd, dd, map)?;
    let paths = path_table(sd, dd, &term_map, path_map)?;
    let (s, d) = (sd.to_typoid(), dd.to_typoid());
    let checks = charge(&[&s, &d], budget)?;
    let name = name.unwrap_or_else(|| format!("induced_{from}_{to}"));
    if !naming::is_ident(&name) {
        return Err(Outcome::input(format!("`{name}` is not a valid name")));
    }
    let m = match induce_morphism(name, &s, &d, &term_map, &paths) {
        Ok(m) => m,
        Err(Error::BadPathAction(r)) => {
            let mut report = Report::new("input_error");
            report.violations = violations_of(from, &r, None);
            return Ok(loaded.outcome(report, Exit::InputError));
        }
        Err(e) => return Err(construction_error(&loaded, e)),
    };
    let r = validate_morphism(&m, &s, &d, MorphismChecks::default());
    if let Some(out) = out {
        let mut doc = Document::default();
        doc.push_typoid(sd.clone());
        if dd.name != sd.name {
            doc.push_typoid(dd.clone());
        }
        doc.push_morphism(MorphismDecl::from_morphism(&m, sd, dd));
        write_file(out, &dsl::serialize(&doc))?;
    }
    let mut report = Report::new(if r.is_valid() { "valid" } else { "invalid" });
    report.violations = violations_of(&m.name, &r, None);
    report.stats = stats_of(&s, checks + r.total_checks());
    let exit = if r.is_valid() {
        Exit::Success
    } else {
        Exit::PropertyFails
    };
    Ok(loaded.outcome(report, exit))
}

fn numbers(args: &[String]) -> Step<Vec<usize>> {
    args.iter()
        .map(|a| {
            a.parse()
                .map_err(|_| Outcome::input(format!("`{a}` is not a non-negative integer")))
        })
        .collect()
}

fn components(args: &[String]) -> Step<Vec<(usize, usize)>> {
    args.iter()
        .map(|a| {
            let parsed = a
                .split_once('x')
                .and_then(|(n, k)| Some((n.parse().ok()?, k.parse().ok()?)));
            match parsed {
                Some((n, k)) if k > 0 => Ok((n, k)),
                _ => Err(Outcome::input(format!(
                    "`{a}` is not a component TERMSxORDER with ORDER > 0"
                ))),
            }
        })
        .collect()
}

fn single(kind: &str, args: &[String]) -> Step<usize> {
    match numbers(args)?[..] {
        [n] => Ok(n),
        _ => Err(Outcome::input(format!(
            "`gen {kind}` takes exactly one number of terms"
        ))),
    }
}

fn generate(
    kind: GenKind,
    args: &[String],
    out: &Path,
    name: Option<String>,
    max_edges: usize,
    budget: u64,
) -> Step<Outcome> {
    let loaded = Loaded {
        doc: Document::default(),
        warnings: Vec::new(),
        messages: Vec::new(),
    };
    let t = match kind {
        GenKind::Equality => {
            let comps = components(args)?;
            let label: Vec<String> = comps.iter().map(|(n, k)| format!("{n}x{k}")).collect();
            equality_typoid(&cyclic_groupoid(&comps), format!("eq_{}", label.join("_")))
        }
        GenKind::Universe => universe_typoid(&numbers(args)?, max_edges),
        GenKind::Discrete => {
            let n = single("discrete", args)?;
            equality_typoid(&cyclic_groupoid(&vec![(1, 1); n]), format!("disc{n}"))
        }
        GenKind::Prop => {
            let n = single("prop", args)?;
            let comps: Vec<(usize, usize)> = if n == 0 { vec![] } else { vec![(n, 1)] };
            equality_typoid(&cyclic_groupoid(&comps), format!("prop{n}"))
        }
    }
    .map_err(|e| construction_error(&loaded, e))?;
    let t = renamed(t, name)?;
    let names = naming::generic_names(&t);
    let kind_name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let provenance = json!({ "construction": "gen", "output": t.name(), "kind": kind_name, "args": args });
    emit(&loaded, &t, &names, out, provenance, budget)
}
