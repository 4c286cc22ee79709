//! Subsumption graph, inheritance of carried conditions, supply and
//! definedness, and effective relation signatures.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::model::*;

/// A child -> parent edge from an SL or SLD condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub child: EntityId,
    pub parent: EntityId,
    /// Index of the originating condition in the child's condition list.
    pub condition: usize,
    /// The edge comes from an SLD.
    pub diff: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SubsumptionGraph {
    pub edges: Vec<Edge>,
    parents: Vec<Vec<EntityId>>,
    children: Vec<Vec<EntityId>>,
    on_cycle: Vec<bool>,
    /// A02 notes for collapsed parallel edges.
    pub diagnostics: Vec<Diagnostic>,
}

impl SubsumptionGraph {
    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, e: EntityId) -> &[EntityId] {
        &self.parents[e.0]
    }

    pub fn children(&self, e: EntityId) -> &[EntityId] {
        &self.children[e.0]
    }

    /// `e` lies on a directed cycle.
    pub fn on_cycle(&self, e: EntityId) -> bool {
        self.on_cycle[e.0]
    }

    /// Every directed cycle, each as its node list (smallest id first),
    /// one per strongly connected component.
    pub fn cycles(&self) -> Vec<Vec<EntityId>> {
        let mut seen = vec![false; self.node_count()];
        let mut out = Vec::new();
        for i in 0..self.node_count() {
            if !self.on_cycle[i] || seen[i] {
                continue;
            }
            let up: HashSet<EntityId> = closure(EntityId(i), |n| self.parents(n)).into_iter().collect();
            let mut comp: Vec<EntityId> = closure(EntityId(i), |n| self.children(n))
                .into_iter()
                .filter(|n| up.contains(n))
                .collect();
            if !comp.contains(&EntityId(i)) {
                comp.push(EntityId(i));
            }
            comp.sort();
            for n in &comp {
                seen[n.0] = true;
            }
            out.push(comp);
        }
        out
    }
}

/// Breadth-first closure, excluding the start node unless it is reachable
/// from itself. Each level is visited in declaration order.
fn closure<'g>(start: EntityId, next: impl Fn(EntityId) -> &'g [EntityId]) -> Vec<EntityId> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        let mut step: Vec<EntityId> = next(n).to_vec();
        step.sort();
        for m in step {
            if seen.insert(m) {
                out.push(m);
                queue.push_back(m);
            }
        }
    }
    out
}

/// One edge per SL/SLD condition; parallel duplicates collapse with a note.
pub fn build_graph(o: &Ontology) -> SubsumptionGraph {
    let n = o.entities.len();
    let mut g = SubsumptionGraph {
        edges: Vec::new(),
        parents: vec![Vec::new(); n],
        children: vec![Vec::new(); n],
        on_cycle: vec![false; n],
        diagnostics: Vec::new(),
    };
    for child in o.ids() {
        let e = o.entity(child);
        for (i, c) in e.conditions.iter().enumerate() {
            let (target, diff) = match &c.payload {
                ConditionPayload::Subsumption { target } => (target, false),
                ConditionPayload::Differentia { target, .. } => (target, true),
                _ => continue,
            };
            let Some(parent) = target.id() else { continue };
            if g.parents[child.0].contains(&parent) {
                g.diagnostics.push(
                    Diagnostic::note(
                        "A02",
                        format!(
                            "duplicate subsumption of `{}` by `{}` collapsed",
                            e.canonical(),
                            o.entity(parent).canonical()
                        ),
                    )
                    .with_entity(e.canonical())
                    .with_span(c.span.clone()),
                );
                continue;
            }
            g.parents[child.0].push(parent);
            g.children[parent.0].push(child);
            g.edges.push(Edge {
                child,
                parent,
                condition: i,
                diff,
            });
        }
    }
    for i in 0..n {
        let id = EntityId(i);
        g.on_cycle[i] = closure(id, |m| g.parents(m)).contains(&id);
    }
    g
}

/// Strict ancestors in breadth-first order. Fails with A01 when a cycle is
/// reachable from `e`.
pub fn ancestors(g: &SubsumptionGraph, e: EntityId) -> Result<Vec<EntityId>, Diagnostic> {
    let up = closure(e, |n| g.parents(n));
    if g.on_cycle(e) || up.iter().any(|&a| g.on_cycle(a)) {
        return Err(Diagnostic::error(
            "A01",
            "subsumption cycle reachable from this entity",
        ));
    }
    Ok(up)
}

/// Strict ancestors, tolerating cycles (the entity itself is never included).
pub fn ancestors_lenient(g: &SubsumptionGraph, e: EntityId) -> Vec<EntityId> {
    closure(e, |n| g.parents(n))
        .into_iter()
        .filter(|&a| a != e)
        .collect()
}

/// Strict descendants in breadth-first order, tolerating cycles.
pub fn descendants(g: &SubsumptionGraph, e: EntityId) -> Vec<EntityId> {
    closure(e, |n| g.children(n))
        .into_iter()
        .filter(|&d| d != e)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Via {
    Own,
    InheritedDown,
    InheritedUp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarriedEntry {
    pub key: String,
    pub origin: EntityId,
    /// Originating condition, absent for status keys and differentia keys.
    pub condition: Option<usize>,
    pub via: Via,
    /// Modality of the originating condition; status keys have none.
    pub modality: Option<Modality>,
}

/// Carried entries per entity, indexed by entity id.
#[derive(Clone, Debug, Default)]
pub struct CarriedSet {
    pub entries: Vec<Vec<CarriedEntry>>,
}

impl CarriedSet {
    pub fn of(&self, e: EntityId) -> &[CarriedEntry] {
        &self.entries[e.0]
    }

    pub fn carries(&self, e: EntityId, key: &str) -> bool {
        self.of(e).iter().any(|c| c.key == key)
    }

    fn carries_via(&self, e: EntityId, key: &str, vias: &[Via]) -> bool {
        self.of(e).iter().any(|c| c.key == key && vias.contains(&c.via))
    }
}

pub const STATUS_IDENTITY: &str = "status:+I";
pub const STATUS_UNITY: &str = "status:+U";
pub const STATUS_DEPENDENCE: &str = "status:+D";

/// Key of the NMC "x is δ" derived from a differentia text.
pub fn differentia_key(differentia: &str) -> String {
    format!("NMC(text={})", normalize_text(differentia))
}

fn inherits_down(kind: ConditionKind) -> bool {
    kind != ConditionKind::Smc
}

fn inherits_up(kind: ConditionKind) -> bool {
    matches!(
        kind,
        ConditionKind::Smc | ConditionKind::Nsmc | ConditionKind::Sld
    )
}

struct OwnKey {
    key: String,
    condition: Option<usize>,
    modality: Option<Modality>,
    down: bool,
    up: bool,
}

fn own_keys(e: &Entity) -> Vec<OwnKey> {
    let mut v = Vec::new();
    for (i, c) in e.conditions.iter().enumerate() {
        v.push(OwnKey {
            key: condition_key(c),
            condition: Some(i),
            modality: Some(c.modality),
            down: inherits_down(c.kind),
            up: inherits_up(c.kind),
        });
        if let ConditionPayload::Differentia { differentia, .. } = &c.payload {
            v.push(OwnKey {
                key: differentia_key(differentia),
                condition: Some(i),
                modality: Some(c.modality),
                down: true,
                up: false,
            });
        }
    }
    let status = |key: &str| OwnKey {
        key: key.to_string(),
        condition: None,
        modality: None,
        down: true,
        up: false,
    };
    if e.meta.identity == Some(Identity::Carries) || e.meta.supplies_identity {
        v.push(status(STATUS_IDENTITY));
    }
    if e.meta.unity == Some(Unity::Carries) {
        v.push(status(STATUS_UNITY));
    }
    if e.meta.dependence == Some(Dependence::Dependent) {
        v.push(status(STATUS_DEPENDENCE));
    }
    v
}

/// Own conditions, downward-inherited keys of every ancestor and
/// upward-inherited SMC-family keys of every descendant.
pub fn carried_closure(o: &Ontology, g: &SubsumptionGraph) -> CarriedSet {
    let own: Vec<Vec<OwnKey>> = o.entities.iter().map(own_keys).collect();
    let mut entries = Vec::with_capacity(o.entities.len());
    for id in o.ids() {
        let mut list: Vec<CarriedEntry> = Vec::new();
        let mut seen: HashSet<(String, EntityId)> = HashSet::new();
        let mut add = |list: &mut Vec<CarriedEntry>, k: &OwnKey, origin: EntityId, via: Via| {
            if seen.insert((k.key.clone(), origin)) {
                list.push(CarriedEntry {
                    key: k.key.clone(),
                    origin,
                    condition: k.condition,
                    via,
                    modality: k.modality,
                });
            }
        };
        for k in &own[id.0] {
            add(&mut list, k, id, Via::Own);
        }
        for a in ancestors_lenient(g, id) {
            for k in own[a.0].iter().filter(|k| k.down) {
                add(&mut list, k, a, Via::InheritedDown);
            }
        }
        for d in descendants(g, id) {
            for k in own[d.0].iter().filter(|k| k.up) {
                add(&mut list, k, d, Via::InheritedUp);
            }
        }
        entries.push(list);
    }
    CarriedSet { entries }
}

fn key_kind(key: &str) -> Option<ConditionKind> {
    ConditionKind::from_acronym(key.split('(').next()?)
}

/// Whether `e` supplies `key`. Downward keys: no strict ancestor carries
/// them. SMC keys: no strict descendant carries them. NSMC keys need both;
/// SLD keys need the SMC half plus a differentia the parent does not carry.
pub fn supplies(
    o: &Ontology,
    g: &SubsumptionGraph,
    carried: &CarriedSet,
    e: EntityId,
    key: &str,
) -> Result<bool, Diagnostic> {
    if !carried.carries(e, key) {
        return Err(Diagnostic::error(
            "S01",
            format!("`{}` does not carry `{key}`", o.entity(e).canonical()),
        )
        .with_entity(o.entity(e).canonical()));
    }
    let down_vias = [Via::Own, Via::InheritedDown];
    let up_vias = [Via::Own, Via::InheritedUp];
    let no_ancestor =
        || !ancestors_lenient(g, e).into_iter().any(|a| carried.carries_via(a, key, &down_vias));
    let no_descendant =
        || !descendants(g, e).into_iter().any(|d| carried.carries_via(d, key, &up_vias));
    Ok(match key_kind(key) {
        Some(ConditionKind::Smc) => no_descendant(),
        Some(ConditionKind::Nsmc) => no_descendant() && no_ancestor(),
        Some(ConditionKind::Sld) => {
            let ent = o.entity(e);
            let sld = ent.conditions.iter().find(|c| {
                c.kind == ConditionKind::Sld && condition_key(c) == key
            });
            match sld.map(|c| &c.payload) {
                Some(ConditionPayload::Differentia {
                    target,
                    differentia,
                    ..
                }) => {
                    let delta = differentia_key(differentia);
                    let parent_has_delta = target
                        .id()
                        .map(|t| carried.carries_via(t, &delta, &down_vias))
                        .unwrap_or(false);
                    no_descendant() && !parent_has_delta
                }
                // Inherited SLD keys fall back to the SMC reading.
                _ => no_descendant() && no_ancestor(),
            }
        }
        _ => no_ancestor(),
    })
}

/// Defined iff the entity's own conditions include an NSMC or SLD.
pub fn derive_definedness(e: &Entity) -> Definedness {
    if e
        .conditions
        .iter()
        .any(|c| matches!(c.kind, ConditionKind::Nsmc | ConditionKind::Sld))
    {
        Definedness::Defined
    } else {
        Definedness::Primitive
    }
}

fn key_set(ns: &[NameRef]) -> BTreeSet<String> {
    ns.iter().map(NameRef::key).collect()
}

/// Narrows `near` (closer declaration) with `far` (ancestor declaration).
fn merge(near: ArgSpec, far: &ArgSpec) -> ArgSpec {
    use ArgSpec::*;
    let conj = |a: &[NameRef], b: &[NameRef]| {
        let mut v: Vec<NameRef> = a.to_vec();
        for n in b {
            if !v.iter().any(|m| m.key() == n.key()) {
                v.push(n.clone());
            }
        }
        if v.len() == 1 {
            One(v.pop().unwrap())
        } else {
            AllOf(v)
        }
    };
    match (near, far) {
        (Unrestricted, f) => f.clone(),
        (n, Unrestricted) => n,
        (Text(t), _) => Text(t),
        (n, Text(_)) => n,
        (One(a), One(b)) => conj(&[a], std::slice::from_ref(b)),
        (One(a), AllOf(bs)) => conj(&[a], bs),
        (AllOf(a), One(b)) => conj(&a, std::slice::from_ref(b)),
        (AllOf(a), AllOf(bs)) => conj(&a, bs),
        (One(a), AnyOf(bs)) => {
            let _ = bs;
            One(a)
        }
        (AllOf(a), AnyOf(_)) => AllOf(a),
        (AnyOf(a), One(b)) => {
            if a.iter().any(|n| n.key() == b.key()) {
                One(b.clone())
            } else {
                AnyOf(a)
            }
        }
        (AnyOf(a), AllOf(bs)) => {
            let want = key_set(&a);
            if bs.iter().any(|b| want.contains(&b.key())) {
                AllOf(bs.clone())
            } else {
                AnyOf(a)
            }
        }
        (AnyOf(a), AnyOf(bs)) => {
            let (sa, sb) = (key_set(&a), key_set(bs));
            if sb.is_subset(&sa) && sb != sa {
                AnyOf(bs.clone())
            } else {
                AnyOf(a)
            }
        }
    }
}

/// Per-argument restrictions of a relation: its own signatures first, then
/// those of its ancestors, narrowed slot by slot.
pub fn effective_signature(o: &Ontology, g: &SubsumptionGraph, rel: EntityId) -> Vec<ArgSpec> {
    let arity = o.entity(rel).kind.arity() as usize;
    let mut slots = vec![ArgSpec::Unrestricted; arity];
    let chain = std::iter::once(rel).chain(ancestors_lenient(g, rel));
    for id in chain {
        for c in &o.entity(id).conditions {
            let ConditionPayload::Signature { args } = &c.payload else {
                continue;
            };
            if args.len() != arity {
                continue;
            }
            for (slot, a) in slots.iter_mut().zip(args) {
                let near = std::mem::replace(slot, ArgSpec::Unrestricted);
                *slot = merge(near, a);
            }
        }
    }
    slots
}
