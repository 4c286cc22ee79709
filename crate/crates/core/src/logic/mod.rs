//! First-order formulas with a necessity operator, the condition and
//! meta-property schemas, and the `.osf` emitter.

mod expand;
mod formula;
mod meta;
mod namer;

use std::path::Path;

pub use expand::{expand_condition, Expander, Expansion};
pub use formula::*;
pub use meta::{expand_meta, MetaExpansion, MetaFormula};
pub use namer::{slug, PredicateNamer};

use crate::model::{AxiomRef, Diagnostic, Ontology};

/// Emission counts for one entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntityEmission {
    pub entity: String,
    /// Conditions that produced a formula.
    pub emitted: usize,
    /// Conditions without a schema (free text, missing prerequisites).
    pub unsupported: usize,
    /// Formulas from meta-statuses and partitions.
    pub meta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsfFile {
    /// Stem of the source file the entities came from.
    pub stem: String,
    pub text: String,
}

#[derive(Clone, Debug, Default)]
pub struct Emission {
    pub files: Vec<OsfFile>,
    pub entities: Vec<EntityEmission>,
    /// L01 errors and one L02 note per condition with missing prerequisites.
    pub diagnostics: Vec<Diagnostic>,
}

fn src_line(entity: &str, refs: &[AxiomRef], what: &str) -> String {
    let refs = if refs.is_empty() {
        "-".to_string()
    } else {
        refs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    format!("; src: {entity} {refs} {what}\n")
}

fn stem_of(file: &str) -> String {
    Path::new(file)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "ontology".to_string())
}

/// Emits every expandable condition and meta-assertion, one `.osf` text per
/// source file, entities in document order.
pub fn emit_ontology(o: &Ontology) -> Emission {
    let ex = Expander::new(o);
    let mut out = Emission::default();
    for id in o.ids() {
        let e = o.entity(id);
        let stem = stem_of(&e.span.file);
        let idx = match out.files.iter().position(|f| f.stem == stem) {
            Some(i) => i,
            None => {
                out.files.push(OsfFile {
                    stem,
                    text: String::new(),
                });
                out.files.len() - 1
            }
        };
        let mut text = String::new();
        let mut counts = EntityEmission {
            entity: e.canonical().to_string(),
            emitted: 0,
            unsupported: 0,
            meta: 0,
        };
        for (i, c) in e.conditions.iter().enumerate() {
            match ex.condition(id, i) {
                Ok(Expansion::Formula(f)) => {
                    counts.emitted += 1;
                    text.push_str(&src_line(
                        e.canonical(),
                        &c.axiom_refs,
                        &format!("{}/{}", c.modality, c.label),
                    ));
                    text.push_str(&emit_osf(&f));
                    text.push('\n');
                }
                Ok(Expansion::Unsupported { code, reason }) => {
                    counts.unsupported += 1;
                    if let Some(code) = code {
                        out.diagnostics.push(
                            Diagnostic::note(code, reason)
                                .with_entity(e.canonical())
                                .with_span(c.span.clone()),
                        );
                    }
                }
                Err(d) => {
                    counts.unsupported += 1;
                    out.diagnostics.push(d);
                }
            }
        }
        for mf in ex.meta(id).formulas {
            counts.meta += 1;
            text.push_str(&src_line(e.canonical(), &mf.axiom_refs, &format!("meta/{}", mf.schema)));
            text.push_str(&emit_osf(&mf.formula));
            text.push('\n');
        }
        out.files[idx].text.push_str(&text);
        out.entities.push(counts);
    }
    out
}
