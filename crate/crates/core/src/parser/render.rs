use std::fmt::Write;

use crate::model::*;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn refs(rs: &[AxiomRef]) -> String {
    if rs.is_empty() {
        String::new()
    } else {
        let v: Vec<String> = rs.iter().map(ToString::to_string).collect();
        format!(" ref {}", v.join(", "))
    }
}

fn names(ns: &[NameRef], sep: &str) -> String {
    ns.iter().map(|n| n.name.as_str()).collect::<Vec<_>>().join(sep)
}

fn payload(kind: ConditionKind, p: &ConditionPayload) -> String {
    use ConditionPayload as P;
    let crit = |c: &Criterion| match c {
        Criterion::Rel(n) => n.name.clone(),
        Criterion::Text(t) => format!("text {}", quote(t)),
    };
    match p {
        P::Subsumption { target } => format!("isa {target}"),
        P::Differentia {
            target,
            differentia,
            predicate,
        } => {
            let mut s = format!("isa {target} diff {}", quote(differentia));
            if let Some(pr) = predicate {
                write!(s, " as {pr}").unwrap();
            }
            s
        }
        P::Existential {
            cardinality,
            relation,
            targets,
        } => {
            let kw = match cardinality {
                Cardinality::Some => "some",
                Cardinality::ExactlyOne => "exactly-one",
            };
            format!("{kw} {relation} -> {}", names(targets, ", "))
        }
        P::Value { relation, target } => format!("only {relation} -> {target}"),
        P::ExtendedValue {
            relation,
            target_text,
        } => format!("only {relation} -> text {}", quote(target_text)),
        P::Constant { relation, constant } => format!("const {relation} -> {constant}"),
        P::Incompatible { target } => {
            if kind == ConditionKind::Il {
                format!("notrel {target}")
            } else {
                format!("not {target}")
            }
        }
        P::Signature { args } => {
            let parts: Vec<String> = args
                .iter()
                .map(|a| match a {
                    ArgSpec::One(n) => n.name.clone(),
                    ArgSpec::AnyOf(ns) => format!("any({})", names(ns, " | ")),
                    ArgSpec::AllOf(ns) => format!("all({})", names(ns, " & ")),
                    ArgSpec::Unrestricted => "*".into(),
                    ArgSpec::Text(t) => format!("text {}", quote(t)),
                })
                .collect();
            format!("sig ({})", parts.join(", "))
        }
        P::Inverse { target } => format!("inverse {target}"),
        P::Identity(c) => format!("id {}", crit(c)),
        P::Unity(c) => format!("unity {}", crit(c)),
        P::ExternalDependence { target } => format!("edc {target}"),
        P::FreeForm { text, formula } => match formula {
            Some(f) => format!("text {} formula {}", quote(text), quote(f)),
            None => format!("text {}", quote(text)),
        },
    }
}

fn meta_lines(m: &MetaStatuses) -> Vec<String> {
    let mut v = Vec::new();
    if let Some(r) = m.rigidity {
        v.push(format!("rigidity: {}", r.symbol()));
    }
    if let Some(i) = m.identity {
        v.push(format!("identity: {}", i.symbol()));
    }
    if m.supplies_identity {
        v.push("supplies-identity".into());
    }
    if let Some(u) = m.unity {
        v.push(format!("unity: {}", u.symbol()));
    }
    if let Some(d) = m.dependence {
        v.push(format!("dependence: {}", d.symbol()));
    }
    match m.definedness {
        Some(Definedness::Defined) => v.push("defined".into()),
        Some(Definedness::Primitive) => v.push("primitive".into()),
        None => {}
    }
    if m.non_empty {
        v.push("non-empty".into());
    }
    if m.strongly_non_empty {
        v.push("strongly-non-empty".into());
    }
    for flag in m.flags() {
        let rs: Vec<AxiomRef> = m
            .status_refs
            .iter()
            .filter(|(f, _)| *f == flag)
            .map(|(_, r)| r.clone())
            .collect();
        v.push(format!("{}{}", flag.keyword(), refs(&rs)));
    }
    v
}

/// Pretty-prints an ontology in document order. Parsing the output yields a
/// structurally equal model.
pub fn render(o: &Ontology) -> String {
    let mut s = String::new();
    writeln!(s, "ontology {}", quote(&o.title)).unwrap();
    for e in &o.entities {
        s.push('\n');
        let head = match e.kind {
            EntityKind::Concept => "concept".to_string(),
            EntityKind::Relation { arity } => format!("relation/{arity}"),
            EntityKind::MetaConcept => "metaconcept".into(),
            EntityKind::MetaRelation => "metarelation".into(),
        };
        write!(s, "{head} {}", e.name.canonical).unwrap();
        if let Some(a) = &e.name.alias {
            write!(s, " alias {a}").unwrap();
        }
        s.push_str(" {\n");
        let mut meta = meta_lines(&e.meta);
        meta.extend(e.partitions.iter().map(|p| {
            format!("partition ({}){}", names(&p.members, ", "), refs(&p.axiom_refs))
        }));
        meta.extend(e.meta_links.iter().map(|l| {
            format!("dep {} -> {}{}", l.kind.symbol(), l.target, refs(&l.axiom_refs))
        }));
        if !meta.is_empty() {
            s.push_str("  meta {\n");
            for line in meta {
                writeln!(s, "    {line}").unwrap();
            }
            s.push_str("  }\n");
        }
        if !e.conditions.is_empty() {
            s.push_str("  props {\n");
            for c in &e.conditions {
                let refs: Vec<String> = c.axiom_refs.iter().map(ToString::to_string).collect();
                let label = if refs.is_empty() {
                    format!("{}/{}", c.modality, c.label)
                } else {
                    format!("{}; {}/{}", refs.join(", "), c.modality, c.label)
                };
                write!(s, "    [{label}] {}", payload(c.kind, &c.payload)).unwrap();
                if let Some(g) = &c.gloss {
                    write!(s, "\n      gloss {}", quote(g)).unwrap();
                }
                s.push_str(";\n");
            }
            s.push_str("  }\n");
        }
        if !e.comments.is_empty() {
            s.push_str("  comment {\n");
            for c in &e.comments {
                match &c.source {
                    Some(src) => writeln!(s, "    {} {} {};", c.tag.tag(), quote(src), quote(&c.text)),
                    None => writeln!(s, "    {} {};", c.tag.tag(), quote(&c.text)),
                }
                .unwrap();
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
    }
    s
}
