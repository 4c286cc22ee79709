//! The `.osp` surface language: lexing, parsing, name resolution and
//! pretty-printing.

mod grammar;
mod label;
mod lexer;
mod render;
mod resolve;

pub use grammar::{parse_document, parse_documents, ParseResult};
pub use label::classify_kind;
pub use render::render;
pub use resolve::resolve_references;

/// Parses and resolves in one step. Returns the resolved ontology when
/// neither phase produced an Error.
pub fn load(docs: &[(&str, &str)]) -> (Option<crate::model::Ontology>, Vec<crate::model::Diagnostic>) {
    let r = parse_documents(docs.iter().copied());
    let mut diags = r.diagnostics;
    let Some(o) = r.ontology else {
        return (None, diags);
    };
    let (resolved, rd) = resolve_references(&o);
    let failed = rd.iter().any(|d| d.is_error());
    diags.extend(rd);
    (if failed { None } else { Some(resolved) }, diags)
}
