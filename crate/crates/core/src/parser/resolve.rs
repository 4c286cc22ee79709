use crate::model::*;

/// Binds every name in payloads, meta links and partitions. Reports R01 for
/// unknown names and R02 for kind/arity mismatches or conditions illegal on
/// their host kind.
pub fn resolve_references(o: &Ontology) -> (Ontology, Vec<Diagnostic>) {
    let mut out = o.clone();
    let mut diags = Vec::new();
    for idx in 0..out.entities.len() {
        let mut entity = std::mem::replace(&mut out.entities[idx], Entity::new(EntityName::new("", None), EntityKind::Concept));
        resolve_entity(o, &mut entity, &mut diags);
        out.entities[idx] = entity;
    }
    (out, diags)
}

#[derive(Clone, Copy)]
enum Want {
    /// Same kind and arity as the host.
    SameAsHost,
    /// A relation (meta-relations allowed for meta hosts), optional arity.
    Relation(Option<u32>),
    /// A concept (meta-concepts allowed for meta hosts).
    Concept,
}

impl Want {
    fn describe(self, host: EntityKind) -> String {
        match self {
            Want::SameAsHost => host.describe(),
            Want::Relation(Some(n)) => format!("relation/{n}"),
            Want::Relation(None) => "relation".into(),
            Want::Concept => "concept".into(),
        }
    }

    fn accepts(self, host: EntityKind, got: EntityKind) -> bool {
        let meta_host = matches!(host, EntityKind::MetaConcept | EntityKind::MetaRelation);
        match self {
            Want::SameAsHost => host == got,
            Want::Relation(arity) => match got {
                EntityKind::Relation { arity: a } => arity.is_none_or(|n| n == a),
                EntityKind::MetaRelation => meta_host && arity.is_none_or(|n| n == 2),
                _ => false,
            },
            Want::Concept => match got {
                EntityKind::Concept => true,
                EntityKind::MetaConcept => meta_host,
                _ => false,
            },
        }
    }
}

fn bind(
    o: &Ontology,
    host: &Entity,
    name: &mut NameRef,
    want: Want,
    span: &SourceSpan,
    diags: &mut Vec<Diagnostic>,
) {
    match o.lookup_id(&name.name) {
        None => {
            name.target = None;
            diags.push(
                Diagnostic::error("R01", format!("unresolved name `{}`", name.name))
                    .with_entity(host.canonical())
                    .with_span(span.clone()),
            );
        }
        Some(id) => {
            let target = o.entity(id);
            name.target = Some(Resolved {
                id,
                canonical: target.canonical().to_string(),
            });
            if !want.accepts(host.kind, target.kind) {
                diags.push(
                    Diagnostic::error(
                        "R02",
                        format!(
                            "`{}` is a {}, expected a {}",
                            target.canonical(),
                            target.kind.describe(),
                            want.describe(host.kind)
                        ),
                    )
                    .with_entity(host.canonical())
                    .with_span(span.clone()),
                );
            }
        }
    }
}

fn resolve_entity(o: &Ontology, e: &mut Entity, diags: &mut Vec<Diagnostic>) {
    let host = e.clone();
    let arity = host.kind.arity();
    for c in &mut e.conditions {
        let span = c.span.clone();
        if !c.kind.legal_on(host.kind) {
            diags.push(
                Diagnostic::error(
                    "R02",
                    format!("{} is not allowed on a {}", c.kind, host.kind.describe()),
                )
                .with_entity(host.canonical())
                .with_span(span.clone()),
            );
        }
        use ConditionPayload as P;
        match &mut c.payload {
            P::Subsumption { target } | P::Differentia { target, .. } => {
                bind(o, &host, target, Want::SameAsHost, &span, diags)
            }
            P::Existential {
                relation, targets, ..
            } => {
                let n = targets.len() as u32 + 1;
                bind(o, &host, relation, Want::Relation(Some(n)), &span, diags);
                for t in targets {
                    bind(o, &host, t, Want::Concept, &span, diags);
                }
            }
            P::Value { relation, target } => {
                bind(o, &host, relation, Want::Relation(None), &span, diags);
                bind(o, &host, target, Want::Concept, &span, diags);
            }
            P::ExtendedValue { relation, .. } | P::Constant { relation, .. } => {
                bind(o, &host, relation, Want::Relation(None), &span, diags)
            }
            P::Incompatible { target } | P::Inverse { target } => {
                let want = if host.kind.is_relation_like() {
                    Want::Relation(Some(arity))
                } else {
                    Want::Concept
                };
                bind(o, &host, target, want, &span, diags)
            }
            P::ExternalDependence { target } => bind(o, &host, target, Want::Concept, &span, diags),
            P::Identity(Criterion::Rel(r)) | P::Unity(Criterion::Rel(r)) => {
                bind(o, &host, r, Want::Relation(None), &span, diags)
            }
            P::Signature { args } => {
                if args.len() as u32 != arity {
                    diags.push(
                        Diagnostic::error(
                            "R02",
                            format!(
                                "signature has {} argument(s) but the relation has arity {arity}",
                                args.len()
                            ),
                        )
                        .with_entity(host.canonical())
                        .with_span(span.clone()),
                    );
                }
                for a in args {
                    if let ArgSpec::One(_) | ArgSpec::AnyOf(_) | ArgSpec::AllOf(_) = a {
                        let names: Vec<&mut NameRef> = match a {
                            ArgSpec::One(n) => vec![n],
                            ArgSpec::AnyOf(ns) | ArgSpec::AllOf(ns) => ns.iter_mut().collect(),
                            _ => unreachable!(),
                        };
                        for n in names {
                            bind(o, &host, n, Want::Concept, &span, diags);
                        }
                    }
                }
            }
            P::Identity(Criterion::Text(_)) | P::Unity(Criterion::Text(_)) | P::FreeForm { .. } => {}
        }
    }
    let span = host.span.clone();
    let concept_side = Want::Concept;
    for l in &mut e.meta_links {
        // Links are stated between first-order concepts even on meta hosts.
        let as_concept_host = Entity::new(host.name.clone(), EntityKind::Concept);
        bind(o, &as_concept_host, &mut l.target, concept_side, &span, diags);
    }
    if !e.partitions.is_empty() && !host.kind.is_concept_like() {
        diags.push(
            Diagnostic::error("R02", "partitions are only allowed on concepts")
                .with_entity(host.canonical())
                .with_span(span.clone()),
        );
    }
    for p in &mut e.partitions {
        for m in &mut p.members {
            bind(o, &host, m, Want::SameAsHost, &span, diags);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_document;

    fn resolve(src: &str) -> (Ontology, Vec<Diagnostic>) {
        let r = parse_document(src, "t.osp");
        assert!(!r.has_errors(), "{:?}", r.diagnostics);
        resolve_references(&r.ontology.unwrap())
    }

    #[test]
    fn binds_aliases_case_insensitively() {
        let (o, d) = resolve(
            r#"ontology "T" concept Particular alias PT { } concept Perdurant alias PD { props { [EP/SL] isa pt; } }"#,
        );
        assert!(d.is_empty());
        let c = &o.entities[1].conditions[0];
        let ConditionPayload::Subsumption { target } = &c.payload else {
            panic!()
        };
        assert_eq!(target.id(), Some(EntityId(0)));
        assert_eq!(target.target.as_ref().unwrap().canonical, "Particular");
    }

    #[test]
    fn unresolved_name() {
        let (_, d) = resolve(r#"ontology "T" concept A { props { [EP/SL] isa B; } }"#);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "R01");
        assert!(d[0].message.contains("`B`"));
    }

    #[test]
    fn concept_cannot_subsume_relation() {
        let (_, d) = resolve(
            r#"ontology "T" relation/2 part-of { } concept A { props { [EP/SL] isa part-of; } }"#,
        );
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "R02");
    }

    #[test]
    fn arity_and_legality() {
        let (_, d) = resolve(
            r#"ontology "T" concept A { }
               relation/2 r { props { [EP/DR & RR] sig (A, A, A); [EP/ER] some r -> A; } }
               relation/3 t { props { [EP/SL] isa r; } }
               concept B { props { [EP/ER] some t -> A; [EP/IL] notrel A; } }"#,
        );
        let codes: Vec<_> = d.iter().map(|d| d.code).collect();
        assert_eq!(codes, vec!["R02", "R02", "R02", "R02", "R02"], "{d:#?}");
    }
}
