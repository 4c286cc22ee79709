//! Single-edit corpus mutations, one per validator code.

use super::corpus_docs;
use ontospec::model::{Diagnostic, Severity};
use ontospec::parser::{parse_documents, resolve_references};
use ontospec::validator::validate;

pub struct Mutation {
    file: &'static str,
    /// Entity block the edit is confined to.
    entity: &'static str,
    find: &'static str,
    replace: &'static str,
}

pub const fn m(file: &'static str, entity: &'static str, find: &'static str, replace: &'static str) -> Mutation {
    Mutation { file, entity, find, replace }
}

/// Applies the edit inside the block that starts with `entity` and returns
/// the mutated corpus.
pub fn apply(mu: &Mutation) -> Vec<(String, String)> {
    let mut docs = corpus_docs();
    let (_, text) = docs.iter_mut().find(|(n, _)| n == mu.file).expect("file");
    let start = text.find(mu.entity).unwrap_or_else(|| panic!("no block {}", mu.entity));
    let end = text[start..].find("\n}\n").map(|i| start + i).unwrap_or(text.len());
    let block = &text[start..end];
    assert_eq!(block.matches(mu.find).count(), 1, "{:?} not unique in {}", mu.find, mu.entity);
    let edited = block.replacen(mu.find, mu.replace, 1);
    text.replace_range(start..end, &edited);
    docs
}

/// Parse, resolve and validate, keeping the resolver's output even when it
/// reports errors.
pub fn run(mu: &Mutation) -> (Vec<Diagnostic>, Vec<Diagnostic>) {
    let docs = apply(mu);
    let parsed = parse_documents(docs.iter().map(|(n, t)| (t.as_str(), n.as_str())));
    let parse_errors: Vec<_> = parsed.diagnostics.iter().filter(|d| d.is_error()).collect();
    assert!(parse_errors.is_empty(), "{parse_errors:#?}");
    let (o, rd) = resolve_references(&parsed.ontology.unwrap());
    (rd, validate(&o))
}

pub fn errors(ds: &[Diagnostic]) -> Vec<String> {
    ds.iter().filter(|d| d.severity == Severity::Error).map(|d| d.to_text()).collect()
}

/// The code fires; for the structural checks nothing else at Error level.
pub fn verdict(code: &str, mu: &Mutation) -> Result<(), String> {
    let (rd, vd) = run(mu);
    if !vd.iter().any(|d| d.code == code) {
        return Err(format!("{code} not reported: {vd:#?}"));
    }
    if code != "V02" && !errors(&rd).is_empty() {
        return Err(format!("resolver: {:#?}", errors(&rd)));
    }
    let n: u32 = code[1..].parse().unwrap();
    if n <= 10 {
        let others: Vec<_> = vd
            .iter()
            .filter(|d| d.severity == Severity::Error && d.code != code)
            .map(|d| d.to_text())
            .collect();
        if !others.is_empty() {
            return Err(format!("{code} came with {others:#?}"));
        }
    }
    Ok(())
}

pub fn expect(code: &str, mu: Mutation) {
    if let Err(e) = verdict(code, &mu) {
        panic!("{e}");
    }
}

pub fn all() -> Vec<(&'static str, Mutation)> {
    vec![
        ("V01", m("concepts.osp", "concept Abstract ", "  props {\n", "  props {\n    [EP/SL] isa Region;\n")),
        ("V02", m("concepts.osp", "concept Region ", "  props {\n", "  props {\n    [EP/SL] isa is-a-part-of;\n")),
        ("V03", m("concepts.osp", "concept Region ", "  props {\n", "  props {\n    [EP/ICL] not Abstract;\n")),
        ("V04", m("concepts.osp", "concept Region ", "TemporalRegion)", "Quality)")),
        ("V05", m("concepts.osp", "concept Region ", "TemporalRegion)", "SpaceRegion)")),
        ("V06", m("concepts.osp", "concept AbstractRegion ", "unity: ~U", "unity: +U")),
        ("V07", m("concepts.osp", "concept Abstract ", "rigidity: +R", "rigidity: ~R")),
        ("V08", m("concepts.osp", "concept AbstractRegion ", "identity: +I", "identity: -I")),
        ("V09", m("concepts.osp", "concept Event ", "dependence: +D", "dependence: -D")),
        ("V10", m("concepts.osp", "concept Region ", "rigidity: +R", "rigidity: -R")),
        ("V11", m("concepts.osp", "concept Accomplishment ", "anti-atomic-prop", "anti-atomic-prop primitive")),
        ("V12", m("binary-relations.osp", "relation/2 has-for-part ", "inverse is-a-part-of", "inverse is-a-quality-of")),
        ("V13", m("binary-relations.osp", "relation/2 has-for-part ", "sig (any(Abstract | Perdurant),", "sig (any(Abstract | Endurant),")),
        ("V14", m("concepts.osp", "concept Abstract ", "non-empty }", "non-empty cumulative }")),
        ("V15", m("concepts.osp", "concept AbstractRegion ", "identity: +I", "identity: +I supplies-identity")),
        ("V16", m("concepts.osp", "concept Abstract ", "[Ad3b;", "[Ad3a';")),
        ("V17", m("concepts.osp", "concept Region ", "  props {\n", "  props {\n    [EP/NSIC] id text \"other\";\n")),
    ]
}
