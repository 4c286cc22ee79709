//! In-memory model of an OntoSpec ontology.
//!
//! The model stops at the intensional level: entities, the labeled conditions
//! they carry, their meta-properties and comments. Instances are never
//! represented.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// 1-based source location.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: Arc<str>, start: (u32, u32), end: (u32, u32)) -> Self {
        SourceSpan {
            file,
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }

    /// Smallest span covering both.
    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            start_line: self.start_line,
            start_col: self.start_col,
            end_line: other.end_line,
            end_col: other.end_col,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}

/// Index of an entity inside its [`Ontology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntityName {
    /// Display form, e.g. `Perdurant`.
    pub canonical: String,
    /// Short symbol, e.g. `PD`.
    pub alias: Option<String>,
}

impl EntityName {
    pub fn new(canonical: impl Into<String>, alias: Option<String>) -> Self {
        EntityName {
            canonical: canonical.into(),
            alias,
        }
    }
}

impl fmt::Display for EntityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Concept,
    Relation { arity: u32 },
    MetaConcept,
    MetaRelation,
}

impl EntityKind {
    pub fn is_concept_like(self) -> bool {
        matches!(self, EntityKind::Concept | EntityKind::MetaConcept)
    }

    pub fn is_relation_like(self) -> bool {
        matches!(self, EntityKind::Relation { .. } | EntityKind::MetaRelation)
    }

    /// Arity of the predicate the entity denotes (meta-relations count as binary).
    pub fn arity(self) -> u32 {
        match self {
            EntityKind::Concept | EntityKind::MetaConcept => 1,
            EntityKind::Relation { arity } => arity,
            EntityKind::MetaRelation => 2,
        }
    }

    pub fn describe(self) -> String {
        match self {
            EntityKind::Concept => "concept".into(),
            EntityKind::Relation { arity } => format!("relation/{arity}"),
            EntityKind::MetaConcept => "metaconcept".into(),
            EntityKind::MetaRelation => "metarelation".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    /// Essential property.
    Ep,
    /// Contingent property.
    Cp,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modality::Ep => "EP",
            Modality::Cp => "CP",
        })
    }
}

/// Condition taxonomy. `Sig` stands for every argument-signature restriction
/// (DR, RR, DDR, DRR, CDR, CRR, VR1..VRn); the acronym as written is kept in
/// [`Condition::label`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionKind {
    Nmc,
    Sl,
    Er,
    Vr,
    Evr,
    Cr,
    Icl,
    Smc,
    Nsmc,
    Sld,
    Nsic,
    Nic,
    Sic,
    Uc,
    Edc,
    Sig,
    Il,
    Ivl,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 18] = [
        ConditionKind::Nmc,
        ConditionKind::Sl,
        ConditionKind::Er,
        ConditionKind::Vr,
        ConditionKind::Evr,
        ConditionKind::Cr,
        ConditionKind::Icl,
        ConditionKind::Smc,
        ConditionKind::Nsmc,
        ConditionKind::Sld,
        ConditionKind::Nsic,
        ConditionKind::Nic,
        ConditionKind::Sic,
        ConditionKind::Uc,
        ConditionKind::Edc,
        ConditionKind::Sig,
        ConditionKind::Il,
        ConditionKind::Ivl,
    ];

    pub fn acronym(self) -> &'static str {
        match self {
            ConditionKind::Nmc => "NMC",
            ConditionKind::Sl => "SL",
            ConditionKind::Er => "ER",
            ConditionKind::Vr => "VR",
            ConditionKind::Evr => "EVR",
            ConditionKind::Cr => "CR",
            ConditionKind::Icl => "ICL",
            ConditionKind::Smc => "SMC",
            ConditionKind::Nsmc => "NSMC",
            ConditionKind::Sld => "SLD",
            ConditionKind::Nsic => "NSIC",
            ConditionKind::Nic => "NIC",
            ConditionKind::Sic => "SIC",
            ConditionKind::Uc => "UC",
            ConditionKind::Edc => "EDC",
            ConditionKind::Sig => "SIG",
            ConditionKind::Il => "IL",
            ConditionKind::Ivl => "IVL",
        }
    }

    pub fn from_acronym(s: &str) -> Option<ConditionKind> {
        ConditionKind::ALL.into_iter().find(|k| k.acronym() == s)
    }

    /// Legal on concepts (and meta-concepts).
    pub fn allowed_on_concepts(self) -> bool {
        !matches!(
            self,
            ConditionKind::Sig | ConditionKind::Il | ConditionKind::Ivl
        )
    }

    /// Legal on relations (and meta-relations).
    pub fn allowed_on_relations(self) -> bool {
        matches!(
            self,
            ConditionKind::Nmc
                | ConditionKind::Sl
                | ConditionKind::Sig
                | ConditionKind::Il
                | ConditionKind::Smc
                | ConditionKind::Nsmc
                | ConditionKind::Sld
                | ConditionKind::Ivl
        )
    }

    /// Identity, unity and external-dependence conditions: first-order concepts only.
    pub fn concept_only(self) -> bool {
        matches!(
            self,
            ConditionKind::Nsic
                | ConditionKind::Nic
                | ConditionKind::Sic
                | ConditionKind::Uc
                | ConditionKind::Edc
        )
    }

    pub fn is_identity_criterion(self) -> bool {
        matches!(
            self,
            ConditionKind::Nsic | ConditionKind::Nic | ConditionKind::Sic
        )
    }

    pub fn legal_on(self, kind: EntityKind) -> bool {
        match kind {
            EntityKind::Concept => self.allowed_on_concepts(),
            EntityKind::MetaConcept => self.allowed_on_concepts() && !self.concept_only(),
            EntityKind::Relation { .. } | EntityKind::MetaRelation => {
                self.allowed_on_relations()
            }
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.acronym())
    }
}

/// A reference to another entity by name. `target` is filled by
/// [`crate::parser::resolve_references`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NameRef {
    pub name: String,
    pub target: Option<Resolved>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Resolved {
    pub id: EntityId,
    pub canonical: String,
}

impl NameRef {
    pub fn new(name: impl Into<String>) -> Self {
        NameRef {
            name: name.into(),
            target: None,
        }
    }

    pub fn id(&self) -> Option<EntityId> {
        self.target.as_ref().map(|r| r.id)
    }

    /// Lowercased identity used in keys: canonical name once resolved.
    pub fn key(&self) -> String {
        match &self.target {
            Some(r) => r.canonical.to_lowercase(),
            None => self.name.to_lowercase(),
        }
    }
}

impl fmt::Display for NameRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Some,
    ExactlyOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArgSpec {
    One(NameRef),
    AnyOf(Vec<NameRef>),
    AllOf(Vec<NameRef>),
    Unrestricted,
    Text(String),
}

impl ArgSpec {
    pub fn names(&self) -> &[NameRef] {
        match self {
            ArgSpec::One(n) => std::slice::from_ref(n),
            ArgSpec::AnyOf(ns) | ArgSpec::AllOf(ns) => ns,
            ArgSpec::Unrestricted | ArgSpec::Text(_) => &[],
        }
    }

    fn names_mut(&mut self) -> &mut [NameRef] {
        match self {
            ArgSpec::One(n) => std::slice::from_mut(n),
            ArgSpec::AnyOf(ns) | ArgSpec::AllOf(ns) => ns,
            ArgSpec::Unrestricted | ArgSpec::Text(_) => &mut [],
        }
    }

    /// Order-insensitive canonical text.
    pub fn key(&self) -> String {
        let sorted = |ns: &[NameRef]| {
            let mut v: Vec<String> = ns.iter().map(NameRef::key).collect();
            v.sort();
            v.dedup();
            v.join("|")
        };
        match self {
            ArgSpec::One(n) => n.key(),
            ArgSpec::AnyOf(ns) => format!("any({})", sorted(ns)),
            ArgSpec::AllOf(ns) => format!("all({})", sorted(ns)),
            ArgSpec::Unrestricted => "*".into(),
            ArgSpec::Text(t) => format!("text({})", normalize_text(t)),
        }
    }
}

/// Identity or unity criterion: a relation of the ontology or free text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    Rel(NameRef),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConditionPayload {
    /// SL
    Subsumption { target: NameRef },
    /// SLD
    Differentia {
        target: NameRef,
        differentia: String,
        predicate: Option<String>,
    },
    /// ER
    Existential {
        cardinality: Cardinality,
        relation: NameRef,
        targets: Vec<NameRef>,
    },
    /// VR
    Value { relation: NameRef, target: NameRef },
    /// EVR
    ExtendedValue { relation: NameRef, target_text: String },
    /// CR
    Constant { relation: NameRef, constant: String },
    /// ICL (concepts) and IL (relations)
    Incompatible { target: NameRef },
    /// SIG
    Signature { args: Vec<ArgSpec> },
    /// IVL
    Inverse { target: NameRef },
    /// NSIC, NIC, SIC (`id ...`)
    Identity(Criterion),
    /// UC (`unity ...`)
    Unity(Criterion),
    /// EDC
    ExternalDependence { target: NameRef },
    /// NMC, SMC, NSMC in free form.
    FreeForm {
        text: String,
        formula: Option<String>,
    },
}

impl ConditionPayload {
    /// Does this payload shape fit the given kind?
    pub fn fits(&self, kind: ConditionKind) -> bool {
        use ConditionKind as K;
        use ConditionPayload as P;
        matches!(
            (self, kind),
            (P::Subsumption { .. }, K::Sl)
                | (P::Differentia { .. }, K::Sld)
                | (P::Existential { .. }, K::Er)
                | (P::Value { .. }, K::Vr)
                | (P::ExtendedValue { .. }, K::Evr)
                | (P::Constant { .. }, K::Cr)
                | (P::Incompatible { .. }, K::Icl | K::Il)
                | (P::Signature { .. }, K::Sig)
                | (P::Inverse { .. }, K::Ivl)
                | (P::Identity(_), K::Nsic | K::Nic | K::Sic)
                | (P::Unity(_), K::Uc)
                | (P::ExternalDependence { .. }, K::Edc)
                | (P::FreeForm { .. }, K::Nmc | K::Smc | K::Nsmc)
        )
    }

    /// Every entity reference in the payload, in source order.
    pub fn names(&self) -> Vec<&NameRef> {
        use ConditionPayload as P;
        match self {
            P::Subsumption { target }
            | P::Differentia { target, .. }
            | P::Value { target, .. }
            | P::Incompatible { target }
            | P::Inverse { target }
            | P::ExternalDependence { target } => {
                let mut v = Vec::new();
                if let P::Value { relation, .. } = self {
                    v.push(relation);
                }
                v.push(target);
                v
            }
            P::Existential {
                relation, targets, ..
            } => std::iter::once(relation).chain(targets.iter()).collect(),
            P::ExtendedValue { relation, .. } | P::Constant { relation, .. } => vec![relation],
            P::Signature { args } => args.iter().flat_map(|a| a.names().iter()).collect(),
            P::Identity(Criterion::Rel(n)) | P::Unity(Criterion::Rel(n)) => vec![n],
            P::Identity(Criterion::Text(_)) | P::Unity(Criterion::Text(_)) | P::FreeForm { .. } => {
                Vec::new()
            }
        }
    }

    pub fn names_mut(&mut self) -> Vec<&mut NameRef> {
        use ConditionPayload as P;
        match self {
            P::Subsumption { target }
            | P::Differentia { target, .. }
            | P::Incompatible { target }
            | P::Inverse { target }
            | P::ExternalDependence { target } => vec![target],
            P::Value { relation, target } => vec![relation, target],
            P::Existential {
                relation, targets, ..
            } => std::iter::once(relation).chain(targets.iter_mut()).collect(),
            P::ExtendedValue { relation, .. } | P::Constant { relation, .. } => vec![relation],
            P::Signature { args } => args.iter_mut().flat_map(|a| a.names_mut().iter_mut()).collect(),
            P::Identity(Criterion::Rel(n)) | P::Unity(Criterion::Rel(n)) => vec![n],
            P::Identity(Criterion::Text(_)) | P::Unity(Criterion::Text(_)) | P::FreeForm { .. } => {
                Vec::new()
            }
        }
    }
}

/// Reference to a numbered axiom, definition or theorem, e.g. `Ad2a'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxiomRef {
    pub family: AxiomFamily,
    pub number: u32,
    /// Zero or more lowercase letters (`Ad41ab'` has two).
    pub letters: String,
    pub primes: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomFamily {
    A,
    D,
    T,
}

impl AxiomFamily {
    pub fn letter(self) -> char {
        match self {
            AxiomFamily::A => 'A',
            AxiomFamily::D => 'D',
            AxiomFamily::T => 'T',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed axiom reference `{0}`")]
pub struct AxiomRefError(pub String);

impl FromStr for AxiomRef {
    type Err = AxiomRefError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AxiomRefError(s.to_string());
        let mut chars = s.chars().peekable();
        let family = match chars.next() {
            Some('A') => AxiomFamily::A,
            Some('D') => AxiomFamily::D,
            Some('T') => AxiomFamily::T,
            _ => return Err(bad()),
        };
        if chars.next() != Some('d') {
            return Err(bad());
        }
        let mut digits = String::new();
        while let Some(c) = chars.peek().copied().filter(char::is_ascii_digit) {
            digits.push(c);
            chars.next();
        }
        let number: u32 = digits.parse().map_err(|_| bad())?;
        if number == 0 || digits.starts_with('0') {
            return Err(bad());
        }
        let mut letters = String::new();
        while let Some(c) = chars.peek().copied().filter(char::is_ascii_lowercase) {
            letters.push(c);
            chars.next();
        }
        let mut primes = 0u8;
        for c in chars {
            if c != '\'' {
                return Err(bad());
            }
            primes = primes.checked_add(1).ok_or_else(bad)?;
        }
        Ok(AxiomRef {
            family,
            number,
            letters,
            primes,
        })
    }
}

impl fmt::Display for AxiomRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}d{}{}", self.family.letter(), self.number, self.letters)?;
        for _ in 0..self.primes {
            f.write_str("'")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub modality: Modality,
    pub kind: ConditionKind,
    /// Kind label exactly as written (`DR & RR`, `MIL`, ...).
    pub label: String,
    pub payload: ConditionPayload,
    pub axiom_refs: Vec<AxiomRef>,
    /// The natural-language statement of the condition.
    pub gloss: Option<String>,
    pub span: SourceSpan,
}

impl Condition {
    pub fn new(modality: Modality, kind: ConditionKind, payload: ConditionPayload) -> Self {
        Condition {
            modality,
            kind,
            label: kind.acronym().to_string(),
            payload,
            axiom_refs: Vec::new(),
            gloss: None,
            span: SourceSpan::default(),
        }
    }

    /// Rendered label, e.g. `Ad2a'; EP/VR`.
    pub fn label_text(&self) -> String {
        let refs: Vec<String> = self.axiom_refs.iter().map(ToString::to_string).collect();
        if refs.is_empty() {
            format!("{}/{}", self.modality, self.label)
        } else {
            format!("{}; {}/{}", refs.join(", "), self.modality, self.label)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rigidity {
    /// +R
    Rigid,
    /// -R
    NonRigid,
    /// ~R (implies -R)
    AntiRigid,
}

impl Rigidity {
    pub fn symbol(self) -> &'static str {
        match self {
            Rigidity::Rigid => "+R",
            Rigidity::NonRigid => "-R",
            Rigidity::AntiRigid => "~R",
        }
    }

    /// -R holds (either plain or anti).
    pub fn is_non_rigid(self) -> bool {
        !matches!(self, Rigidity::Rigid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// +I
    Carries,
    /// -I
    NotCarries,
}

impl Identity {
    pub fn symbol(self) -> &'static str {
        match self {
            Identity::Carries => "+I",
            Identity::NotCarries => "-I",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unity {
    /// +U
    Carries,
    /// -U
    NotCarries,
    /// ~U (implies -U)
    Anti,
}

impl Unity {
    pub fn symbol(self) -> &'static str {
        match self {
            Unity::Carries => "+U",
            Unity::NotCarries => "-U",
            Unity::Anti => "~U",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dependence {
    /// +D
    Dependent,
    /// -D
    Independent,
}

impl Dependence {
    pub fn symbol(self) -> &'static str {
        match self {
            Dependence::Dependent => "+D",
            Dependence::Independent => "-D",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Definedness {
    Defined,
    Primitive,
}

/// A DOLCE meta-property that comes in a positive and an anti form
/// (CM / CM~, HOM / HOM~, AT / AT~).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Anti,
}

/// Status flags that may carry an axiom reference in the DSL.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatusFlag {
    Cumulative,
    AntiCumulative,
    Homeomerous,
    AntiHomeomerous,
    Atomic,
    AntiAtomic,
}

impl StatusFlag {
    pub fn keyword(self) -> &'static str {
        match self {
            StatusFlag::Cumulative => "cumulative",
            StatusFlag::AntiCumulative => "anti-cumulative",
            StatusFlag::Homeomerous => "homeomerous",
            StatusFlag::AntiHomeomerous => "anti-homeomerous",
            StatusFlag::Atomic => "atomic-prop",
            StatusFlag::AntiAtomic => "anti-atomic-prop",
        }
    }

    pub fn from_keyword(s: &str) -> Option<StatusFlag> {
        [
            StatusFlag::Cumulative,
            StatusFlag::AntiCumulative,
            StatusFlag::Homeomerous,
            StatusFlag::AntiHomeomerous,
            StatusFlag::Atomic,
            StatusFlag::AntiAtomic,
        ]
        .into_iter()
        .find(|f| f.keyword() == s)
    }

    pub fn acronym(self) -> &'static str {
        match self {
            StatusFlag::Cumulative => "CM",
            StatusFlag::AntiCumulative => "CM~",
            StatusFlag::Homeomerous => "HOM",
            StatusFlag::AntiHomeomerous => "HOM~",
            StatusFlag::Atomic => "AT",
            StatusFlag::AntiAtomic => "AT~",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MetaStatuses {
    pub rigidity: Option<Rigidity>,
    pub identity: Option<Identity>,
    /// +O
    pub supplies_identity: bool,
    pub unity: Option<Unity>,
    pub dependence: Option<Dependence>,
    pub definedness: Option<Definedness>,
    /// NEP
    pub non_empty: bool,
    /// NEP_S
    pub strongly_non_empty: bool,
    pub cumulativity: Option<Polarity>,
    pub homeomericity: Option<Polarity>,
    pub atomicity: Option<Polarity>,
    /// Axiom references attached to CM/HOM/AT statuses.
    pub status_refs: Vec<(StatusFlag, AxiomRef)>,
}

impl MetaStatuses {
    /// Declared CM/HOM/AT flags in canonical order.
    pub fn flags(&self) -> Vec<StatusFlag> {
        let mut v = Vec::new();
        match self.cumulativity {
            Some(Polarity::Positive) => v.push(StatusFlag::Cumulative),
            Some(Polarity::Anti) => v.push(StatusFlag::AntiCumulative),
            None => {}
        }
        match self.homeomericity {
            Some(Polarity::Positive) => v.push(StatusFlag::Homeomerous),
            Some(Polarity::Anti) => v.push(StatusFlag::AntiHomeomerous),
            None => {}
        }
        match self.atomicity {
            Some(Polarity::Positive) => v.push(StatusFlag::Atomic),
            Some(Polarity::Anti) => v.push(StatusFlag::AntiAtomic),
            None => {}
        }
        v
    }
}

/// Dependence and constitution meta-relations usable in `dep` links.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaLinkKind {
    Sd,
    Osd,
    Msd,
    Gd,
    Ogd,
    Mgd,
    D,
    Od,
    SdS,
    OsdS,
    MsdS,
    GdS,
    OgdS,
    MgdS,
    PgdS,
    InvPgdS,
    Sk,
    Osk,
    Msk,
    Gk,
    Ogk,
    Mgk,
    K,
}

impl MetaLinkKind {
    pub const ALL: [MetaLinkKind; 23] = [
        MetaLinkKind::Sd,
        MetaLinkKind::Osd,
        MetaLinkKind::Msd,
        MetaLinkKind::Gd,
        MetaLinkKind::Ogd,
        MetaLinkKind::Mgd,
        MetaLinkKind::D,
        MetaLinkKind::Od,
        MetaLinkKind::SdS,
        MetaLinkKind::OsdS,
        MetaLinkKind::MsdS,
        MetaLinkKind::GdS,
        MetaLinkKind::OgdS,
        MetaLinkKind::MgdS,
        MetaLinkKind::PgdS,
        MetaLinkKind::InvPgdS,
        MetaLinkKind::Sk,
        MetaLinkKind::Osk,
        MetaLinkKind::Msk,
        MetaLinkKind::Gk,
        MetaLinkKind::Ogk,
        MetaLinkKind::Mgk,
        MetaLinkKind::K,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            MetaLinkKind::Sd => "SD",
            MetaLinkKind::Osd => "OSD",
            MetaLinkKind::Msd => "MSD",
            MetaLinkKind::Gd => "GD",
            MetaLinkKind::Ogd => "OGD",
            MetaLinkKind::Mgd => "MGD",
            MetaLinkKind::D => "D",
            MetaLinkKind::Od => "OD",
            MetaLinkKind::SdS => "SD_s",
            MetaLinkKind::OsdS => "OSD_s",
            MetaLinkKind::MsdS => "MSD_s",
            MetaLinkKind::GdS => "GD_s",
            MetaLinkKind::OgdS => "OGD_s",
            MetaLinkKind::MgdS => "MGD_s",
            MetaLinkKind::PgdS => "PGD_s",
            MetaLinkKind::InvPgdS => "P-1GD_s",
            MetaLinkKind::Sk => "SK",
            MetaLinkKind::Osk => "OSK",
            MetaLinkKind::Msk => "MSK",
            MetaLinkKind::Gk => "GK",
            MetaLinkKind::Ogk => "OGK",
            MetaLinkKind::Mgk => "MGK",
            MetaLinkKind::K => "K",
        }
    }

    pub fn from_symbol(s: &str) -> Option<MetaLinkKind> {
        MetaLinkKind::ALL.into_iter().find(|k| k.symbol() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetaLink {
    pub kind: MetaLinkKind,
    pub target: NameRef,
    pub axiom_refs: Vec<AxiomRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionDecl {
    pub members: Vec<NameRef>,
    pub axiom_refs: Vec<AxiomRef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommentTag {
    /// Semantic axis.
    Sa,
    Ex,
    Cex,
    Cit,
    Div,
    Def,
}

impl CommentTag {
    pub fn from_tag(s: &str) -> Option<CommentTag> {
        Some(match s {
            "SA" => CommentTag::Sa,
            "EX" => CommentTag::Ex,
            "CEX" => CommentTag::Cex,
            "CIT" => CommentTag::Cit,
            "DIV" => CommentTag::Div,
            "DEF" => CommentTag::Def,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            CommentTag::Sa => "SA",
            CommentTag::Ex => "EX",
            CommentTag::Cex => "CEX",
            CommentTag::Cit => "CIT",
            CommentTag::Div => "DIV",
            CommentTag::Def => "DEF",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommentItem {
    pub tag: CommentTag,
    /// Citation locator, `CIT` only.
    pub source: Option<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entity {
    pub name: EntityName,
    pub kind: EntityKind,
    pub meta: MetaStatuses,
    pub meta_links: Vec<MetaLink>,
    pub partitions: Vec<PartitionDecl>,
    pub conditions: Vec<Condition>,
    pub comments: Vec<CommentItem>,
    pub span: SourceSpan,
}

impl Entity {
    pub fn new(name: EntityName, kind: EntityKind) -> Self {
        Entity {
            name,
            kind,
            meta: MetaStatuses::default(),
            meta_links: Vec::new(),
            partitions: Vec::new(),
            conditions: Vec::new(),
            comments: Vec::new(),
            span: SourceSpan::default(),
        }
    }

    pub fn canonical(&self) -> &str {
        &self.name.canonical
    }

    pub fn alias(&self) -> Option<&str> {
        self.name.alias.as_deref()
    }

    pub fn every_axiom_ref(&self) -> impl Iterator<Item = &AxiomRef> {
        self.conditions
            .iter()
            .flat_map(|c| c.axiom_refs.iter())
            .chain(self.meta_links.iter().flat_map(|l| l.axiom_refs.iter()))
            .chain(self.partitions.iter().flat_map(|p| p.axiom_refs.iter()))
            .chain(self.meta.status_refs.iter().map(|(_, r)| r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    /// Canonical name of the entity concerned.
    pub entity: Option<String>,
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            entity: None,
            message: message.into(),
            span: None,
        }
    }

    pub fn error(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Error, code, message)
    }

    pub fn warning(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Warning, code, message)
    }

    pub fn note(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic::new(Severity::Note, code, message)
    }

    pub fn with_entity(mut self, entity: impl Into<String>) -> Self {
        self.entity = Some(entity.into());
        self
    }

    pub fn with_span(mut self, span: SourceSpan) -> Self {
        self.span = Some(span);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `severity code entity file:line:col message`
    pub fn to_text(&self) -> String {
        let location = match &self.span {
            Some(s) => s.to_string(),
            None => "-".to_string(),
        };
        format!(
            "{} {} {} {} {}",
            self.severity,
            self.code,
            self.entity.as_deref().unwrap_or("-"),
            location,
            self.message
        )
    }

    /// One JSON object with stable keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "severity": self.severity.to_string(),
            "code": self.code,
            "entity": self.entity,
            "file": self.span.as_ref().map(|s| s.file.to_string()),
            "line": self.span.as_ref().map(|s| s.start_line),
            "col": self.span.as_ref().map(|s| s.start_col),
            "message": self.message,
        })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub title: String,
    pub entities: Vec<Entity>,
    index: BTreeMap<String, EntityId>,
}

impl Ontology {
    pub fn new(title: impl Into<String>) -> Self {
        Ontology {
            title: title.into(),
            entities: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Appends an entity. Fails with the colliding key when its canonical
    /// name or alias is already taken (case-insensitively).
    pub fn push(&mut self, entity: Entity) -> Result<EntityId, String> {
        let mut keys = vec![entity.name.canonical.to_lowercase()];
        if let Some(a) = &entity.name.alias {
            let a = a.to_lowercase();
            if a != keys[0] {
                keys.push(a);
            }
        }
        if let Some(k) = keys.iter().find(|k| self.index.contains_key(*k)) {
            return Err(k.clone());
        }
        let id = EntityId(self.entities.len());
        for k in keys {
            self.index.insert(k, id);
        }
        self.entities.push(entity);
        Ok(id)
    }

    pub fn entity(&self, id: EntityId) -> &Entity {
        &self.entities[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = EntityId> {
        (0..self.entities.len()).map(EntityId)
    }

    /// Case-insensitive lookup by canonical name or alias.
    pub fn lookup(&self, name: &str) -> Option<&Entity> {
        self.lookup_id(name).map(|id| self.entity(id))
    }

    pub fn lookup_id(&self, name: &str) -> Option<EntityId> {
        self.index.get(&name.to_lowercase()).copied()
    }

    /// Entity whose alias is exactly `alias` (case-insensitive) and whose kind matches.
    pub fn by_alias(&self, alias: &str, kind: EntityKind) -> Option<EntityId> {
        let id = self.lookup_id(alias)?;
        let e = self.entity(id);
        let alias_matches = e
            .alias()
            .map(|a| a.eq_ignore_ascii_case(alias))
            .unwrap_or(false);
        (alias_matches && e.kind == kind).then_some(id)
    }

    /// Copy with every source span cleared, for structural comparison.
    pub fn without_spans(&self) -> Ontology {
        let mut o = self.clone();
        for e in &mut o.entities {
            e.span = SourceSpan::default();
            for c in &mut e.conditions {
                c.span = SourceSpan::default();
            }
        }
        o
    }

    /// Copy with every name reference unbound.
    pub fn unresolved(&self) -> Ontology {
        let mut o = self.clone();
        for e in &mut o.entities {
            for c in &mut e.conditions {
                for n in c.payload.names_mut() {
                    n.target = None;
                }
            }
            for l in &mut e.meta_links {
                l.target.target = None;
            }
            for p in &mut e.partitions {
                for m in &mut p.members {
                    m.target = None;
                }
            }
        }
        o
    }
}

/// Collapses whitespace runs and lowercases.
pub fn normalize_text(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Canonical key of a condition: a function of kind and payload only.
pub fn condition_key(c: &Condition) -> String {
    use ConditionPayload as P;
    let body = match &c.payload {
        P::Subsumption { target } => target.key(),
        P::Differentia {
            target,
            differentia,
            predicate,
        } => format!(
            "{};diff={};as={}",
            target.key(),
            normalize_text(differentia),
            predicate.as_deref().unwrap_or("").to_lowercase()
        ),
        P::Existential {
            cardinality,
            relation,
            targets,
        } => {
            let card = match cardinality {
                Cardinality::Some => "some",
                Cardinality::ExactlyOne => "exactly-one",
            };
            let ts: Vec<String> = targets.iter().map(NameRef::key).collect();
            format!("{card};{};{}", relation.key(), ts.join(","))
        }
        P::Value { relation, target } => format!("{};{}", relation.key(), target.key()),
        P::ExtendedValue {
            relation,
            target_text,
        } => format!("{};text={}", relation.key(), normalize_text(target_text)),
        P::Constant { relation, constant } => format!("{};'{}", relation.key(), constant.to_lowercase()),
        P::Incompatible { target } | P::Inverse { target } | P::ExternalDependence { target } => {
            target.key()
        }
        P::Signature { args } => args.iter().map(ArgSpec::key).collect::<Vec<_>>().join(","),
        P::Identity(crit) | P::Unity(crit) => match crit {
            Criterion::Rel(n) => n.key(),
            Criterion::Text(t) => format!("text={}", normalize_text(t)),
        },
        P::FreeForm { text, formula } => match formula {
            Some(f) => format!("text={};formula={}", normalize_text(text), normalize_text(f)),
            None => format!("text={}", normalize_text(text)),
        },
    };
    format!("{}({})", c.kind.acronym(), body)
}

/// Case-insensitive lookup by canonical name or alias.
pub fn lookup<'o>(o: &'o Ontology, name: &str) -> Option<&'o Entity> {
    o.lookup(name)
}
