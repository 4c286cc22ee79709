//! The diagnostic catalog: structure, inheritance constraints, the status
//! lattice, partitions and inverse links.
//!
//! Checks that walk the hierarchy skip entities whose ancestry touches a
//! cycle; the cycle itself is reported once as V01.

use std::collections::{BTreeMap, HashSet};

use crate::analysis::{self, CarriedSet, SubsumptionGraph, Via};
use crate::model::*;

/// One catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckInfo {
    pub code: &'static str,
    pub severity: Severity,
    pub summary: &'static str,
}

const fn check(code: &'static str, severity: Severity, summary: &'static str) -> CheckInfo {
    CheckInfo {
        code,
        severity,
        summary,
    }
}

/// Validator checks in run order. V12 is listed as an Error but also emits
/// a Warning when the inverse side is simply missing.
pub const CATALOG: &[CheckInfo] = &[
    check("V01", Severity::Error, "cycle in the subsumption graph"),
    check("V02", Severity::Error, "subsumption between entities of different kind or arity"),
    check("V03", Severity::Error, "incompatible with one of its own subsumers"),
    check("V04", Severity::Error, "ill-formed partition"),
    check("V05", Severity::Error, "partition members overlap"),
    check("V06", Severity::Error, "anti-unity concept subsumes a +U concept"),
    check("V07", Severity::Error, "anti-rigid concept subsumes a +R concept"),
    check("V08", Severity::Error, "-I below a +I subsumer"),
    check("V09", Severity::Error, "-D below a +D subsumer"),
    check("V10", Severity::Error, "+O without +I and +R"),
    check("V11", Severity::Warning, "declared definedness disagrees with the conditions"),
    check("V12", Severity::Error, "inverse links disagree"),
    check("V13", Severity::Warning, "inverse signatures do not mirror"),
    check("V14", Severity::Error, "perdurant-only status outside PD"),
    check("V15", Severity::Warning, "+O declared but identity not supplied"),
    check("V16", Severity::Warning, "axiom reference used twice"),
    check("V17", Severity::Warning, "several identity criteria of one strength"),
    check("V18", Severity::Note, "anti-status implies the weaker negative status"),
];

struct Ctx<'a> {
    o: &'a Ontology,
    g: SubsumptionGraph,
    carried: CarriedSet,
    /// Entity or one of its ancestors lies on a cycle.
    tainted: Vec<bool>,
    out: Vec<(usize, Diagnostic)>,
}

impl<'a> Ctx<'a> {
    fn name(&self, id: EntityId) -> &'a str {
        self.o.entity(id).canonical()
    }

    fn emit(&mut self, at: EntityId, d: Diagnostic) {
        let e = self.o.entity(at);
        let d = Diagnostic {
            entity: d.entity.or_else(|| Some(e.canonical().to_string())),
            span: d.span.or_else(|| Some(e.span.clone())),
            ..d
        };
        self.out.push((at.0, d));
    }

    fn ancestors(&self, id: EntityId) -> Vec<EntityId> {
        analysis::ancestors_lenient(&self.g, id)
    }

    fn descendants(&self, id: EntityId) -> Vec<EntityId> {
        analysis::descendants(&self.g, id)
    }

    fn clean(&self, id: EntityId) -> bool {
        !self.tainted[id.0]
    }
}

/// Runs every catalog check. Output is ordered by entity declaration, then
/// code; ontology-wide notes from graph construction come first.
pub fn validate(o: &Ontology) -> Vec<Diagnostic> {
    let g = analysis::build_graph(o);
    let carried = analysis::carried_closure(o, &g);
    let tainted = o
        .ids()
        .map(|id| g.on_cycle(id) || analysis::ancestors_lenient(&g, id).iter().any(|&a| g.on_cycle(a)))
        .collect();
    let mut cx = Ctx {
        o,
        g,
        carried,
        tainted,
        out: Vec::new(),
    };
    let mut front: Vec<Diagnostic> = cx.g.diagnostics.clone();
    v01(&mut cx);
    v02(&mut cx);
    v03(&mut cx);
    v04_v05(&mut cx);
    v06_to_v10(&mut cx);
    v11(&mut cx);
    v12_v13(&mut cx);
    v14(&mut cx);
    v15(&mut cx);
    v16(&mut cx);
    v17(&mut cx);
    v18(&mut cx);
    let mut out = std::mem::take(&mut cx.out);
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.code.cmp(b.1.code)));
    front.extend(out.into_iter().map(|(_, d)| d));
    front
}

fn v01(cx: &mut Ctx) {
    for cycle in cx.g.cycles() {
        let names: Vec<&str> = cycle.iter().map(|&n| cx.name(n)).collect();
        let msg = if names.len() == 1 {
            format!("`{}` subsumes itself", names[0])
        } else {
            format!("subsumption cycle through {}", names.join(", "))
        };
        cx.emit(cycle[0], Diagnostic::error("V01", msg));
    }
}

fn v02(cx: &mut Ctx) {
    let edges = cx.g.edges.clone();
    for e in edges {
        let (ck, pk) = (cx.o.entity(e.child).kind, cx.o.entity(e.parent).kind);
        if ck != pk {
            let span = cx.o.entity(e.child).conditions[e.condition].span.clone();
            cx.emit(
                e.child,
                Diagnostic::error(
                    "V02",
                    format!(
                        "{} `{}` is subsumed by {} `{}`",
                        ck.describe(),
                        cx.name(e.child),
                        pk.describe(),
                        cx.name(e.parent)
                    ),
                )
                .with_span(span),
            );
        }
    }
}

/// The incompatible target of an ICL/IL condition.
fn incompatible_target(c: &Condition) -> Option<EntityId> {
    match &c.payload {
        ConditionPayload::Incompatible { target } => target.id(),
        _ => None,
    }
}

fn v03(cx: &mut Ctx) {
    for id in cx.o.ids() {
        if !cx.clean(id) {
            continue;
        }
        let mut upward = cx.ancestors(id);
        upward.push(id);
        let entries: Vec<_> = cx
            .carried
            .of(id)
            .iter()
            .filter(|c| matches!(c.via, Via::Own | Via::InheritedDown))
            .cloned()
            .collect();
        for entry in entries {
            let Some(ci) = entry.condition else { continue };
            let c = &cx.o.entity(entry.origin).conditions[ci];
            if !matches!(c.kind, ConditionKind::Icl | ConditionKind::Il) {
                continue;
            }
            let Some(t) = incompatible_target(c) else { continue };
            if !upward.contains(&t) {
                continue;
            }
            // Report where the contradiction first appears.
            if entry.via == Via::InheritedDown {
                let mut at_origin = cx.ancestors(entry.origin);
                at_origin.push(entry.origin);
                if at_origin.contains(&t) {
                    continue;
                }
            }
            let msg = if entry.origin == id {
                format!("`{}` is declared incompatible with its subsumer `{}`", cx.name(id), cx.name(t))
            } else {
                format!(
                    "`{}` inherits incompatibility with `{}` from `{}` but is subsumed by it",
                    cx.name(id),
                    cx.name(t),
                    cx.name(entry.origin)
                )
            };
            cx.emit(id, Diagnostic::error("V03", msg).with_span(c.span.clone()));
        }
    }
}

fn v04_v05(cx: &mut Ctx) {
    for whole in cx.o.ids() {
        let parts = cx.o.entity(whole).partitions.clone();
        for p in parts {
            let mut ok = true;
            let mut seen = HashSet::new();
            let below: HashSet<EntityId> = cx.descendants(whole).into_iter().collect();
            for m in &p.members {
                let problem = match m.id() {
                    None => Some(format!("member `{}` is unresolved", m.name)),
                    Some(id) if !seen.insert(id) => {
                        Some(format!("member `{}` is listed twice", cx.name(id)))
                    }
                    Some(id) if id == whole => {
                        Some(format!("member `{}` equals the partitioned concept", cx.name(id)))
                    }
                    Some(id) if cx.clean(whole) && !below.contains(&id) => Some(format!(
                        "member `{}` is not subsumed by `{}`",
                        cx.name(id),
                        cx.name(whole)
                    )),
                    _ => None,
                };
                if let Some(msg) = problem {
                    ok = false;
                    cx.emit(whole, Diagnostic::error("V04", msg));
                }
            }
            if p.members.len() < 2 {
                ok = false;
                cx.emit(
                    whole,
                    Diagnostic::error("V04", "a partition needs at least two members"),
                );
            }
            if ok && cx.clean(whole) {
                v05_partition(cx, whole, &p);
            }
        }
    }
}

fn v05_partition(cx: &mut Ctx, whole: EntityId, p: &PartitionDecl) {
    let members: Vec<EntityId> = p.members.iter().filter_map(NameRef::id).collect();
    let under: Vec<HashSet<EntityId>> = members
        .iter()
        .map(|&m| {
            let mut s: HashSet<EntityId> = cx.descendants(m).into_iter().collect();
            s.insert(m);
            s
        })
        .collect();
    for d in cx.o.ids() {
        let hits: Vec<usize> = (0..members.len()).filter(|&i| under[i].contains(&d)).collect();
        if hits.len() < 2 {
            continue;
        }
        // Only the topmost overlapping entity is reported.
        let inherited = cx
            .g
            .parents(d)
            .iter()
            .any(|pa| under.iter().filter(|s| s.contains(pa)).count() >= 2);
        if inherited {
            continue;
        }
        let names: Vec<&str> = hits.iter().map(|&i| cx.name(members[i])).collect();
        let msg = format!(
            "`{}` falls under {} which partition `{}` declares disjoint",
            cx.name(d),
            names.join(" and "),
            cx.name(whole)
        );
        cx.emit(d, Diagnostic::error("V05", msg));
    }
}

fn v06_to_v10(cx: &mut Ctx) {
    for id in cx.o.ids() {
        if !cx.clean(id) {
            continue;
        }
        let m = cx.o.entity(id).meta.clone();
        for a in cx.ancestors(id) {
            let am = &cx.o.entity(a).meta;
            let mut found: Vec<(&'static str, String)> = Vec::new();
            if am.unity == Some(Unity::Anti) && m.unity == Some(Unity::Carries) {
                found.push(("V06", format!("`{}` is +U but its subsumer `{}` is ~U", cx.name(id), cx.name(a))));
            }
            if am.rigidity == Some(Rigidity::AntiRigid) && m.rigidity == Some(Rigidity::Rigid) {
                found.push(("V07", format!("`{}` is +R but its subsumer `{}` is ~R", cx.name(id), cx.name(a))));
            }
            let a_plus_i = am.identity == Some(Identity::Carries) || am.supplies_identity;
            if a_plus_i && m.identity == Some(Identity::NotCarries) {
                found.push(("V08", format!("`{}` is -I but its subsumer `{}` carries identity", cx.name(id), cx.name(a))));
            }
            if am.dependence == Some(Dependence::Dependent) && m.dependence == Some(Dependence::Independent) {
                found.push(("V09", format!("`{}` is -D but its subsumer `{}` is +D", cx.name(id), cx.name(a))));
            }
            for (code, msg) in found {
                cx.emit(id, Diagnostic::error(code, msg));
            }
        }
        if m.supplies_identity {
            let mut missing = Vec::new();
            if m.identity != Some(Identity::Carries) {
                missing.push("+I");
            }
            if m.rigidity != Some(Rigidity::Rigid) {
                missing.push("+R");
            }
            if !missing.is_empty() {
                let msg = format!("`{}` supplies identity but lacks {}", cx.name(id), missing.join(" and "));
                cx.emit(id, Diagnostic::error("V10", msg));
            }
        }
    }
}

fn v11(cx: &mut Ctx) {
    for id in cx.o.ids() {
        let e = cx.o.entity(id);
        let Some(declared) = e.meta.definedness else { continue };
        let derived = analysis::derive_definedness(e);
        if declared != derived {
            let msg = format!(
                "`{}` is declared {:?} but its conditions make it {:?}",
                e.canonical(),
                declared,
                derived
            )
            .to_lowercase();
            cx.emit(id, Diagnostic::warning("V11", msg));
        }
    }
}

fn inverse_targets(e: &Entity) -> Vec<(EntityId, &Condition)> {
    e.conditions
        .iter()
        .filter_map(|c| match &c.payload {
            ConditionPayload::Inverse { target } => target.id().map(|t| (t, c)),
            _ => None,
        })
        .collect()
}

fn v12_v13(cx: &mut Ctx) {
    for r in cx.o.ids() {
        let e = cx.o.entity(r);
        for (s, c) in inverse_targets(e) {
            let back: Vec<EntityId> = inverse_targets(cx.o.entity(s)).into_iter().map(|(t, _)| t).collect();
            if back.is_empty() {
                let msg = format!(
                    "`{}` declares `{}` as its inverse but `{}` declares none",
                    cx.name(r),
                    cx.name(s),
                    cx.name(s)
                );
                cx.emit(r, Diagnostic::warning("V12", msg).with_span(c.span.clone()));
            } else if !back.contains(&r) {
                let others: Vec<&str> = back.iter().map(|&t| cx.name(t)).collect();
                let msg = format!(
                    "`{}` declares `{}` as its inverse but `{}` names {}",
                    cx.name(r),
                    cx.name(s),
                    cx.name(s),
                    others.join(", ")
                );
                cx.emit(r, Diagnostic::error("V12", msg).with_span(c.span.clone()));
            }
            let binary = |id: EntityId| cx.o.entity(id).kind == EntityKind::Relation { arity: 2 };
            if binary(r) && binary(s) {
                let rs = analysis::effective_signature(cx.o, &cx.g, r);
                let ss = analysis::effective_signature(cx.o, &cx.g, s);
                if rs[0].key() != ss[1].key() {
                    let msg = format!(
                        "first argument of `{}` is {} but second argument of its inverse `{}` is {}",
                        cx.name(r),
                        rs[0].key(),
                        cx.name(s),
                        ss[1].key()
                    );
                    cx.emit(r, Diagnostic::warning("V13", msg).with_span(c.span.clone()));
                }
            }
        }
    }
}

fn v14(cx: &mut Ctx) {
    let pd = cx.o.by_alias("PD", EntityKind::Concept);
    for id in cx.o.ids() {
        let m = &cx.o.entity(id).meta;
        let mut statuses: Vec<&str> = m.flags().into_iter().map(StatusFlag::acronym).collect();
        if m.strongly_non_empty {
            statuses.push("NEP_S");
        }
        if statuses.is_empty() || !cx.clean(id) {
            continue;
        }
        let under_pd = pd.is_some_and(|pd| pd == id || cx.ancestors(id).contains(&pd));
        if !under_pd {
            let msg = match pd {
                Some(pd) => format!(
                    "{} apply only below `{}`, which does not subsume `{}`",
                    statuses.join(", "),
                    cx.name(pd),
                    cx.name(id)
                ),
                None => format!("{} need a concept aliased PD", statuses.join(", ")),
            };
            cx.emit(id, Diagnostic::error("V14", msg));
        }
    }
}

fn v15(cx: &mut Ctx) {
    for id in cx.o.ids() {
        if !cx.o.entity(id).meta.supplies_identity || !cx.clean(id) {
            continue;
        }
        let supplied = analysis::supplies(cx.o, &cx.g, &cx.carried, id, analysis::STATUS_IDENTITY)
            .unwrap_or(false);
        if !supplied {
            let carrier = cx
                .ancestors(id)
                .into_iter()
                .find(|&a| cx.carried.carries(a, analysis::STATUS_IDENTITY));
            let msg = match carrier {
                Some(a) => format!(
                    "`{}` is declared +O but its subsumer `{}` already carries identity",
                    cx.name(id),
                    cx.name(a)
                ),
                None => format!("`{}` is declared +O but does not supply identity", cx.name(id)),
            };
            cx.emit(id, Diagnostic::warning("V15", msg));
        }
    }
}

fn v16(cx: &mut Ctx) {
    let mut first: BTreeMap<String, EntityId> = BTreeMap::new();
    for id in cx.o.ids() {
        let refs: Vec<String> = cx.o.entity(id).every_axiom_ref().map(ToString::to_string).collect();
        for r in refs {
            match first.get(&r) {
                Some(&prev) => {
                    let msg = format!("axiom reference {r} is also used by `{}`", cx.name(prev));
                    cx.emit(id, Diagnostic::warning("V16", msg));
                }
                None => {
                    first.insert(r, id);
                }
            }
        }
    }
}

fn v17(cx: &mut Ctx) {
    for id in cx.o.ids() {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for c in &cx.o.entity(id).conditions {
            if c.kind.is_identity_criterion() || c.kind == ConditionKind::Uc {
                *counts.entry(c.kind.acronym()).or_default() += 1;
            }
        }
        for (kind, n) in counts {
            if n > 1 {
                let msg = format!("`{}` has {n} {kind} conditions", cx.name(id));
                cx.emit(id, Diagnostic::warning("V17", msg));
            }
        }
    }
}

fn v18(cx: &mut Ctx) {
    for id in cx.o.ids() {
        let m = &cx.o.entity(id).meta;
        if m.unity == Some(Unity::Anti) {
            cx.emit(id, Diagnostic::note("V18", "~U recorded, which implies -U"));
        }
        if m.rigidity == Some(Rigidity::AntiRigid) {
            cx.emit(id, Diagnostic::note("V18", "~R recorded, which implies -R"));
        }
    }
}

/// Explanations for every diagnostic code the toolchain emits.
const EXPLANATIONS: &[(&str, &str)] = &[
    ("P01", "Lexical error: a character, string or label that cannot be tokenized."),
    ("P02", "Syntax error: the input does not fit the grammar at this point. Parsing resumes at the next `;` or `}`."),
    ("P03", "Unknown condition label. Known kinds: NMC SL ER VR EVR CR ICL SMC NSMC SLD NSIC NIC SIC UC EDC SIG IL IVL, plus the signature pieces DR RR DDR DRR CDR CRR VRn."),
    ("P04", "Unknown comment tag. Known tags: SA EX CEX CIT DIV DEF."),
    ("P05", "Malformed axiom reference. References look like Ad41, Dd16b or Td3' (family, number, optional letters, optional primes)."),
    ("P06", "Two entities share a canonical name or alias, compared case-insensitively and across files."),
    ("P07", "A known misspelling was read as its intended form, for example MIL as IVL, NC as NMC, PE as EP."),
    ("R01", "A name does not refer to any declared entity or alias."),
    ("R02", "A name refers to an entity of the wrong kind or arity for this position, or the condition kind is not allowed on its host."),
    ("A01", "The ancestors of this entity could not be ordered because a subsumption cycle is reachable from it."),
    ("A02", "The same subsumption was declared twice; the duplicate edge was dropped."),
    ("S01", "Supply was asked for a condition the entity does not carry."),
    ("L01", "An inline formula does not parse, or has free variables."),
    ("L02", "A condition schema needs entities with particular aliases (for example ED, PD, AB, P) that the ontology does not define."),
    ("C01", "The reference corpus is missing or its digest does not match the manifest."),
    ("E01", "Unknown diagnostic code."),
    ("V01", "The subsumption graph has a cycle. Subsumption must be a strict order, so every cycle is an error."),
    ("V02", "A subsumption links entities of different kinds or relations of different arity."),
    ("V03", "An entity carries an incompatibility with a concept that subsumes it (or with itself). Its instances would have to be and not be that concept."),
    ("V04", "A partition must list at least two distinct resolved members, none equal to the partitioned concept, each subsumed by it (Dd13)."),
    ("V05", "Partition members are pairwise disjoint (Dd13), so nothing may be subsumed by two members of one partition."),
    ("V06", "SC3, corrected reading: a concept that is anti-unity (~U) may not subsume a concept carrying a common unity criterion (+U). Read literally, the constraint pushes anti-unity up to subsumers instead, which the examples and the corpus contradict."),
    ("V07", "SC4, corrected reading: an anti-rigid concept (~R) may not subsume a rigid one (+R). Read literally, the constraint pushes anti-rigidity up to subsumers instead, which would make any rigid concept above an anti-rigid one inconsistent."),
    ("V08", "SC1 with identity criteria: a concept below one carrying identity (+I or +O) carries it too, so it may not be declared -I."),
    ("V09", "SC1 with external dependence: a concept below a +D concept is itself dependent, so it may not be declared -D."),
    ("V10", "Supplying an identity criterion (+O) is only possible for rigid concepts that carry one (+R and +I)."),
    ("V11", "A concept is defined exactly when it has its own NSMC (an SLD counts as one); the declared status says otherwise."),
    ("V12", "Inverse links must agree: if r names s as its inverse, s must name r. A missing back link is only a warning."),
    ("V13", "For binary inverses the first argument of r should match the second argument of its inverse."),
    ("V14", "Cumulativity, homeomericity, atomicity and strong non-emptiness are defined for subconcepts of the concept aliased PD only (Dd57)."),
    ("V15", "+O was declared but a subsumer already carries identity, so this concept does not supply it."),
    ("V16", "The same axiom reference appears more than once in the ontology."),
    ("V17", "A concept has several identity or unity criteria of the same strength. This is allowed but often unintended."),
    ("V18", "Anti-rigidity implies non-rigidity, and anti-unity implies not carrying unity; the weaker status was recorded."),
];

/// Explanation text for a diagnostic code. Unknown codes give E01.
pub fn explain(code: &str) -> Result<&'static str, Diagnostic> {
    let wanted = code.trim().to_ascii_uppercase();
    EXPLANATIONS
        .iter()
        .find(|(c, _)| *c == wanted)
        .map(|(_, text)| *text)
        .ok_or_else(|| Diagnostic::error("E01", format!("unknown diagnostic code `{}`", code.trim())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::load;

    fn codes(src: &str) -> Vec<&'static str> {
        let (o, d) = load(&[(src, "t.osp")]);
        let o = o.unwrap_or_else(|| panic!("{d:#?}"));
        validate(&o).into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn self_cycle() {
        assert_eq!(codes(r#"ontology "T" concept A { props { [EP/SL] isa A; } }"#), vec!["V01"]);
    }

    #[test]
    fn anti_rigid_over_rigid() {
        let c = codes(r#"ontology "T"
            concept A { meta { rigidity: ~R } }
            concept B { meta { rigidity: +R } props { [EP/SL] isa A; } }"#);
        assert_eq!(c, vec!["V18", "V07"]);
    }

    #[test]
    fn partition_overlap() {
        let c = codes(r#"ontology "T"
            concept W { meta { partition (A, B) } }
            concept A { props { [EP/SL] isa W; } }
            concept B { props { [EP/SL] isa W; } }
            concept X { props { [EP/SL] isa A; [EP/SL] isa B; } }
            concept Y { props { [EP/SL] isa X; } }"#);
        assert_eq!(c, vec!["V05"]);
    }

    #[test]
    fn explain_codes() {
        assert!(explain("V07").unwrap().contains("SC4"));
        assert!(explain("v05").unwrap().contains("Dd13"));
        assert_eq!(explain("V99").unwrap_err().code, "E01");
        for c in CATALOG {
            assert!(explain(c.code).is_ok());
        }
    }

    #[test]
    fn output_is_deterministic() {
        let src = r#"ontology "T"
            concept A { meta { unity: ~U rigidity: ~R } }
            concept B { meta { unity: +U } props { [EP/SL] isa A; [EP/ICL] not A; } }"#;
        assert_eq!(codes(src), codes(src));
        assert_eq!(codes(src), vec!["V18", "V18", "V03", "V06"]);
    }
}
