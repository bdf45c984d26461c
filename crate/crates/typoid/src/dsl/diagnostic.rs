use std::fmt;

use serde::Serialize;

/// A region of source text. Lines and columns are 1-based and count
/// characters; `len` is at least 1 so every diagnostic points at something.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub line: u32,
    pub column: u32,
    pub len: u32,
}

impl Span {
    pub fn new(line: u32, column: u32, len: u32) -> Self {
        Span { line, column, len }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Parse-level problem codes. Law violations found after parsing use the
/// `L` codes of the core crate instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// A character that starts no token.
    UnexpectedChar,
    /// The token stream does not match the grammar.
    Syntax,
    /// A name is declared twice in the same scope.
    Duplicate,
    /// A reference to an undeclared name.
    Unknown,
    /// An entry whose arrows have the wrong endpoints.
    Endpoints,
    /// Two entries give different values for the same key.
    Conflict,
    /// A mandatory table entry is absent.
    Missing,
    /// A typoid without a `terms` statement.
    NoTerms,
    /// A path action that covers some non-refl paths but not all of them.
    PartialPathAction,
    /// A cell statement that relates an edge to itself.
    TrivialCell,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::UnexpectedChar => "E001",
            Code::Syntax => "E002",
            Code::Duplicate => "E003",
            Code::Unknown => "E004",
            Code::Endpoints => "E005",
            Code::Conflict => "E006",
            Code::Missing => "E007",
            Code::NoTerms => "E008",
            Code::PartialPathAction => "E009",
            Code::TrivialCell => "W001",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::TrivialCell => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diagnostic {
    pub span: Span,
    pub severity: Severity,
    pub code: Code,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            span,
            severity: code.severity(),
            code,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {sev}[{}]: {}",
            self.span.line,
            self.span.column,
            self.code.as_str(),
            self.message
        )
    }
}
