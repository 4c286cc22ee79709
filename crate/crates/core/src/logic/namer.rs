use std::collections::HashSet;

use crate::model::{EntityId, EntityKind, Ontology};

/// Maps entities to predicate symbols: the lowercased alias when there is
/// one, else a hyphen slug of the canonical name. Later entities get a
/// numeric suffix on collision, so the mapping is injective.
#[derive(Clone, Debug)]
pub struct PredicateNamer {
    names: Vec<String>,
}

/// `NonPhysicalEndurant` -> `non-physical-endurant`; `is-a-part-of` is kept.
pub fn slug(canonical: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = canonical.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_ascii_uppercase() {
            let prev = i.checked_sub(1).map(|j| chars[j]);
            let next = chars.get(i + 1).copied();
            let boundary = match prev {
                Some(p) if p.is_ascii_lowercase() || p.is_ascii_digit() => true,
                Some(p) if p.is_ascii_uppercase() => next.is_some_and(|n| n.is_ascii_lowercase()),
                _ => false,
            };
            if boundary && !out.ends_with('-') {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c.to_ascii_lowercase());
        }
    }
    out
}

impl PredicateNamer {
    pub fn new(o: &Ontology) -> Self {
        let mut taken = HashSet::new();
        let mut names = Vec::with_capacity(o.entities.len());
        for e in &o.entities {
            let base = match e.alias() {
                Some(a) => a.to_lowercase(),
                None => slug(e.canonical()),
            };
            let mut name = base.clone();
            let mut n = 2;
            while taken.contains(&name) {
                name = format!("{base}-{n}");
                n += 1;
            }
            taken.insert(name.clone());
            names.push(name);
        }
        PredicateNamer { names }
    }

    pub fn name(&self, id: EntityId) -> &str {
        &self.names[id.0]
    }

    /// Symbol of the entity carrying exactly this alias and kind.
    pub fn by_alias(&self, o: &Ontology, alias: &str, kind: EntityKind) -> Option<&str> {
        o.by_alias(alias, kind).map(|id| self.name(id))
    }
}
