//! The machine readable report printed on stdout by every subcommand.

use serde::Serialize;
use typoid_core::{Law, UnivalenceCertificate, UnivalenceGap, ValidationReport, Violation, Witness};

use crate::dsl::{Diagnostic, Names, Severity, Span};

pub const TOOL: &str = "typoid";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub result: String,
    pub violations: Vec<ViolationEntry>,
    pub ua: Vec<UaEntry>,
    pub stats: Stats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub terms: usize,
    pub paths: usize,
    pub edges: usize,
    pub checks: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationEntry {
    pub code: String,
    pub severity: Severity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<&'static str>,
    /// The declaration the problem belongs to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<String>,
    pub message: String,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UaEntry {
    pub edge: String,
    pub path: String,
}

impl Report {
    pub fn new(result: impl Into<String>) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            result: result.into(),
            violations: Vec::new(),
            ua: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

impl ViolationEntry {
    pub fn error(code: &str, message: impl Into<String>) -> Self {
        ViolationEntry {
            code: code.into(),
            severity: Severity::Error,
            law: None,
            item: None,
            message: message.into(),
            witness: Vec::new(),
            span: None,
        }
    }

    pub fn from_diagnostic(d: &Diagnostic) -> Self {
        ViolationEntry {
            code: d.code.as_str().into(),
            severity: d.severity,
            law: None,
            item: None,
            message: d.message.clone(),
            witness: Vec::new(),
            span: Some(d.span),
        }
    }

    /// A law violation, with witnesses named after `names` when given.
    pub fn from_violation(item: &str, v: &Violation, names: Option<&Names>) -> Self {
        ViolationEntry {
            code: v.law.code().into(),
            severity: Severity::Error,
            law: Some(v.law.tag()),
            item: Some(item.into()),
            message: v.detail.to_string(),
            witness: v.witness.iter().map(|w| witness_name(*w, names)).collect(),
            span: None,
        }
    }

    pub fn from_gap(item: &str, gap: &UnivalenceGap, names: &Names) -> Self {
        let (law, message) = match *gap {
            UnivalenceGap::NonInjective { first, second, class } => (
                Law::RoundTrip1,
                format!(
                    "paths `{}` and `{}` both land in the cell of `{}`",
                    names.paths[first.index()],
                    names.paths[second.index()],
                    names.edges[class.index()]
                ),
            ),
            UnivalenceGap::Unhit { source, target, class } => (
                Law::RoundTrip2,
                format!(
                    "the cell of `{}` in {} ~ {} is the image of no path",
                    names.edges[class.index()],
                    names.terms[source.index()],
                    names.terms[target.index()]
                ),
            ),
        };
        ViolationEntry {
            code: law.code().into(),
            severity: Severity::Error,
            law: Some(law.tag()),
            item: Some(item.into()),
            message,
            witness: gap
                .witness()
                .into_iter()
                .map(|w| witness_name(w, Some(names)))
                .collect(),
            span: None,
        }
    }
}

fn witness_name(w: Witness, names: Option<&Names>) -> String {
    let named = names.and_then(|n| match w {
        Witness::Term(x) => n.terms.get(x.index()),
        Witness::Path(p) => n.paths.get(p.index()),
        Witness::Edge(e) => n.edges.get(e.index()),
    });
    match named {
        Some(s) => s.clone(),
        None => w.to_string(),
    }
}

pub fn violations_of(item: &str, report: &ValidationReport, names: Option<&Names>) -> Vec<ViolationEntry> {
    report
        .violations()
        .iter()
        .map(|v| ViolationEntry::from_violation(item, v, names))
        .collect()
}

pub fn ua_entries(cert: &UnivalenceCertificate, names: &Names) -> Vec<UaEntry> {
    cert.ua
        .iter()
        .enumerate()
        .map(|(e, p)| UaEntry {
            edge: names.edges[e].clone(),
            path: names.paths[p.index()].clone(),
        })
        .collect()
}
