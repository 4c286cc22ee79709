//! The DOLCE-OS reference ontology, shipped as six `.osp` files plus a
//! digest manifest.
//!
//! By default the files compiled into the library are used. Setting
//! `ONTOSPEC_CORPUS` to a directory loads that copy instead; either way the
//! manifest digests are checked before parsing.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::model::{AxiomFamily, Diagnostic, EntityKind, Ontology, Rigidity};
use crate::parser;

pub const ENV_VAR: &str = "ONTOSPEC_CORPUS";

/// Corpus file names, in load order.
pub const FILES: [&str; 6] = [
    "concepts.osp",
    "atom.osp",
    "binary-relations.osp",
    "ternary-relations.osp",
    "meta-concepts.osp",
    "meta-relations.osp",
];

const EMBEDDED: [&str; 6] = [
    include_str!("../../../corpus/dolce-os/concepts.osp"),
    include_str!("../../../corpus/dolce-os/atom.osp"),
    include_str!("../../../corpus/dolce-os/binary-relations.osp"),
    include_str!("../../../corpus/dolce-os/ternary-relations.osp"),
    include_str!("../../../corpus/dolce-os/meta-concepts.osp"),
    include_str!("../../../corpus/dolce-os/meta-relations.osp"),
];

const EMBEDDED_MANIFEST: &str = include_str!("../../../corpus/dolce-os/MANIFEST");

/// One corpus file: name and full text.
#[derive(Clone, Debug)]
pub struct CorpusFile {
    pub name: String,
    pub text: String,
}

/// The compiled-in copy.
pub fn embedded_files() -> Vec<CorpusFile> {
    FILES
        .iter()
        .zip(EMBEDDED)
        .map(|(n, t)| CorpusFile {
            name: n.to_string(),
            text: t.to_string(),
        })
        .collect()
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

fn c01(msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error("C01", msg)
}

/// Parses `sha256sum`-style lines (`<hex>  <file>`).
pub fn parse_manifest(text: &str) -> Result<BTreeMap<String, String>, Diagnostic> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(d), Some(f), None) if d.len() == 64 && d.bytes().all(|b| b.is_ascii_hexdigit()) => {
                out.insert(f.trim_start_matches('*').to_string(), d.to_ascii_lowercase());
            }
            _ => return Err(c01(format!("MANIFEST line {} is malformed", n + 1))),
        }
    }
    Ok(out)
}

/// Renders a manifest for `files` in the order given.
pub fn render_manifest(files: &[CorpusFile]) -> String {
    files
        .iter()
        .map(|f| format!("{}  {}\n", sha256_hex(f.text.as_bytes()), f.name))
        .collect()
}

/// Checks every corpus file against the manifest.
pub fn verify(manifest: &str, files: &[CorpusFile]) -> Result<(), Diagnostic> {
    let digests = parse_manifest(manifest)?;
    for name in FILES {
        let Some(f) = files.iter().find(|f| f.name == name) else {
            return Err(c01(format!("corpus file {name} is missing")));
        };
        let Some(want) = digests.get(name) else {
            return Err(c01(format!("MANIFEST has no digest for {name}")));
        };
        let got = sha256_hex(f.text.as_bytes());
        if &got != want {
            return Err(c01(format!("digest mismatch for {name}: expected {want}, found {got}")));
        }
    }
    Ok(())
}

/// Reads the six files and the manifest from `dir`.
pub fn read_dir(dir: &Path) -> Result<(String, Vec<CorpusFile>), Diagnostic> {
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name))
            .map_err(|e| c01(format!("cannot read {}: {e}", dir.join(name).display())))
    };
    let manifest = read("MANIFEST")?;
    let files = FILES
        .iter()
        .map(|n| read(n).map(|text| CorpusFile { name: n.to_string(), text }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((manifest, files))
}

/// The override directory, if `ONTOSPEC_CORPUS` is set and non-empty.
pub fn override_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Verified corpus files from the override directory or the embedded copy.
pub fn corpus_files() -> Result<Vec<CorpusFile>, Diagnostic> {
    let (manifest, files) = match override_dir() {
        Some(dir) => read_dir(&dir)?,
        None => (EMBEDDED_MANIFEST.to_string(), embedded_files()),
    };
    verify(&manifest, &files)?;
    Ok(files)
}

/// Parses and resolves a verified file set.
pub fn load_files(files: &[CorpusFile]) -> Result<Ontology, Vec<Diagnostic>> {
    let docs: Vec<(&str, &str)> = files
        .iter()
        .map(|f| (f.text.as_str(), f.name.as_str()))
        .collect();
    let (o, diags) = parser::load(&docs);
    match o {
        Some(o) => Ok(o),
        None => Err(diags.into_iter().filter(|d| d.is_error()).collect()),
    }
}

/// Loads DOLCE-OS. Errors are C01 for missing or altered files, else the
/// parse and resolution errors.
pub fn load_corpus() -> Result<Ontology, Vec<Diagnostic>> {
    let files = corpus_files().map_err(|d| vec![d])?;
    load_files(&files)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub rigid_concepts: usize,
    pub non_rigid_concepts: usize,
    pub binary_relations: usize,
    pub ternary_relations: usize,
    pub meta_concepts: usize,
    pub meta_relations: usize,
    pub partitions: usize,
    /// Keyed by condition acronym.
    pub conditions_by_kind: BTreeMap<String, usize>,
    /// Keyed by `A`, `D`, `T`.
    pub axiom_refs_by_family: BTreeMap<char, usize>,
}

impl CorpusStats {
    pub fn condition_total(&self) -> usize {
        self.conditions_by_kind.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rigidConcepts": self.rigid_concepts,
            "nonRigidConcepts": self.non_rigid_concepts,
            "binaryRelations": self.binary_relations,
            "ternaryRelations": self.ternary_relations,
            "metaConcepts": self.meta_concepts,
            "metaRelations": self.meta_relations,
            "partitions": self.partitions,
            "conditionsByKind": self.conditions_by_kind,
            "axiomRefsByFamily": self.axiom_refs_by_family
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<_, _>>(),
        })
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let mut row = |k: &str, v: usize| s.push_str(&format!("{k:<22}{v}\n"));
        row("rigid concepts", self.rigid_concepts);
        row("non-rigid concepts", self.non_rigid_concepts);
        row("binary relations", self.binary_relations);
        row("ternary relations", self.ternary_relations);
        row("meta-concepts", self.meta_concepts);
        row("meta-relations", self.meta_relations);
        row("partitions", self.partitions);
        for (k, v) in &self.conditions_by_kind {
            row(&format!("conditions {k}"), *v);
        }
        for (k, v) in &self.axiom_refs_by_family {
            row(&format!("axiom refs {k}d"), *v);
        }
        s
    }
}

/// Counts entities by kind, partitions, conditions and axiom references.
/// Concepts without a declared rigidity count as neither rigid nor non-rigid.
pub fn corpus_stats(o: &Ontology) -> CorpusStats {
    let mut st = CorpusStats::default();
    for f in [AxiomFamily::A, AxiomFamily::D, AxiomFamily::T] {
        st.axiom_refs_by_family.insert(f.letter(), 0);
    }
    for e in &o.entities {
        match e.kind {
            EntityKind::Concept => match e.meta.rigidity {
                Some(Rigidity::Rigid) => st.rigid_concepts += 1,
                Some(_) => st.non_rigid_concepts += 1,
                None => {}
            },
            EntityKind::Relation { arity: 2 } => st.binary_relations += 1,
            EntityKind::Relation { arity: 3 } => st.ternary_relations += 1,
            EntityKind::Relation { .. } => {}
            EntityKind::MetaConcept => st.meta_concepts += 1,
            EntityKind::MetaRelation => st.meta_relations += 1,
        }
        st.partitions += e.partitions.len();
        for c in &e.conditions {
            *st.conditions_by_kind.entry(c.kind.acronym().to_string()).or_default() += 1;
        }
        for r in e.every_axiom_ref() {
            *st.axiom_refs_by_family.entry(r.family.letter()).or_default() += 1;
        }
    }
    st
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_copy_matches_manifest() {
        verify(EMBEDDED_MANIFEST, &embedded_files()).unwrap();
    }

    #[test]
    fn tampered_file_is_c01() {
        let mut files = embedded_files();
        files[1].text.push(' ');
        assert_eq!(verify(EMBEDDED_MANIFEST, &files).unwrap_err().code, "C01");
        files.remove(1);
        assert_eq!(verify(EMBEDDED_MANIFEST, &files).unwrap_err().code, "C01");
    }

    #[test]
    fn counts() {
        let o = load_files(&embedded_files()).unwrap();
        let st = corpus_stats(&o);
        assert_eq!((st.rigid_concepts, st.non_rigid_concepts), (37, 1));
        assert_eq!(st.partitions, 12);
        assert_eq!(st.condition_total(), o.entities.iter().map(|e| e.conditions.len()).sum::<usize>());
    }
}
