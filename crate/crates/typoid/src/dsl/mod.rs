//! The `.typoid` text format.
//!
//! ```text
//! typoid Z2 {
//!   terms x;
//!   path p : x -> x;
//!   comp p . p = refl_x;
//!   pinv p = p;
//!   idtoeqv p => eqv_x;
//! }
//! ```
//!
//! `refl_<t>` and `eqv_<t>` exist for every term, together with the unit
//! entries of every table. `strictunits;` also makes unit absorption by
//! edges implicit.

mod diagnostic;
mod document;
mod lexer;
mod parser;
mod resolve;
mod serialize;

pub use diagnostic::{Code, Diagnostic, Severity, Span};
pub use document::{eqv_name, refl_name, ArrowDecl, Document, Index, Item, MorphismDecl, Names, TypoidDecl};
pub use serialize::serialize;

/// Parses and resolves `src`. Returns the document when there are no
/// errors, plus every diagnostic (warnings included) in source order.
pub fn parse_with_diagnostics(src: &str) -> (Option<Document>, Vec<Diagnostic>) {
    let (tokens, mut diags) = lexer::lex(src);
    let end = end_span(src);
    let (blocks, syntax) = parser::parse_blocks(&tokens, end);
    diags.extend(syntax);
    let (doc, semantic) = resolve::resolve(&blocks);
    diags.extend(semantic);
    diags.sort();
    let ok = !diags.iter().any(Diagnostic::is_error);
    (ok.then_some(doc), diags)
}

/// Parses and resolves `src`, failing with every error found.
pub fn parse(src: &str) -> Result<Document, Vec<Diagnostic>> {
    match parse_with_diagnostics(src) {
        (Some(doc), _) => Ok(doc),
        (None, diags) => Err(diags),
    }
}

/// The last visible character, where errors about a premature end of input
/// are reported.
fn end_span(src: &str) -> Span {
    let text = src.trim_end();
    let line = text.split('\n').count() as u32;
    let last = text.rsplit('\n').next().unwrap_or("");
    let column = last.chars().count() as u32;
    Span::new(line, column.max(1), 1)
}
