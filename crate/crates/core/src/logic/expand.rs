use super::formula::*;
use super::namer::PredicateNamer;
use crate::model::*;

/// Result of expanding one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Formula(Formula),
    /// No schema applies. `code` is set when a prerequisite is missing (L02).
    Unsupported {
        code: Option<&'static str>,
        reason: String,
    },
}

impl Expansion {
    pub fn formula(&self) -> Option<&Formula> {
        match self {
            Expansion::Formula(f) => Some(f),
            Expansion::Unsupported { .. } => None,
        }
    }

    fn unsupported(reason: impl Into<String>) -> Self {
        Expansion::Unsupported {
            code: None,
            reason: reason.into(),
        }
    }

    fn missing(reason: impl Into<String>) -> Self {
        Expansion::Unsupported {
            code: Some("L02"),
            reason: reason.into(),
        }
    }
}

/// Instantiates condition schemas against one ontology.
pub struct Expander<'o> {
    pub(crate) o: &'o Ontology,
    pub(crate) namer: PredicateNamer,
}

fn vars(n: u32) -> Vec<String> {
    (0..n as usize).map(var_name).collect()
}

fn refs(vs: &[String]) -> Vec<&str> {
    vs.iter().map(String::as_str).collect()
}

impl<'o> Expander<'o> {
    pub fn new(o: &'o Ontology) -> Self {
        Expander {
            o,
            namer: PredicateNamer::new(o),
        }
    }

    pub fn namer(&self) -> &PredicateNamer {
        &self.namer
    }

    fn entity_of(&self, n: &NameRef) -> Option<EntityId> {
        n.id().or_else(|| self.o.lookup_id(&n.name))
    }

    fn sym(&self, n: &NameRef) -> Option<&str> {
        self.entity_of(n).map(|id| self.namer.name(id))
    }

    fn arity(&self, n: &NameRef) -> Option<u32> {
        self.entity_of(n).map(|id| self.o.entity(id).kind.arity())
    }

    pub(crate) fn alias_sym(&self, alias: &str, kind: EntityKind) -> Option<&str> {
        self.namer.by_alias(self.o, alias, kind)
    }

    /// Expands condition `index` of entity `host`.
    pub fn condition(&self, host: EntityId, index: usize) -> Result<Expansion, Diagnostic> {
        let e = self.o.entity(host);
        let c = &e.conditions[index];
        self.expand(host, c).map_err(|msg| {
            Diagnostic::error("L01", msg)
                .with_entity(e.canonical())
                .with_span(c.span.clone())
        })
    }

    fn expand(&self, host: EntityId, c: &Condition) -> Result<Expansion, String> {
        use ConditionPayload as P;
        let e = self.o.entity(host);
        let h = self.namer.name(host);
        let hv = vars(e.kind.arity());
        let hvr = refs(&hv);
        macro_rules! sym {
            ($n:expr) => {
                match self.sym($n) {
                    Some(s) => s,
                    None => return Ok(Expansion::unsupported(format!("unresolved name `{}`", $n.name))),
                }
            };
        }
        let f = match (&c.payload, c.kind) {
            (P::Subsumption { target }, _) => {
                let t = sym!(target);
                forall(&hvr, imp(pred(h, &hvr), pred(t, &hvr)))
            }
            (P::Differentia { target, predicate, .. }, _) => {
                let t = sym!(target);
                let d = match predicate {
                    Some(p) => p.clone(),
                    None => {
                        let ordinal = e
                            .conditions
                            .iter()
                            .filter(|x| x.kind == ConditionKind::Sld)
                            .position(|x| x == c)
                            .unwrap_or(0)
                            + 1;
                        format!("diff_{h}_{ordinal}")
                    }
                };
                forall(
                    &hvr,
                    iff(pred(h, &hvr), and(vec![pred(t, &hvr), pred(&d, &hvr)])),
                )
            }
            (
                P::Existential {
                    cardinality,
                    relation,
                    targets,
                },
                _,
            ) => {
                let r = sym!(relation);
                let ts: Vec<&str> = {
                    let mut v = Vec::new();
                    for t in targets {
                        v.push(sym!(t));
                    }
                    v
                };
                let body = match ts.as_slice() {
                    [t] => {
                        let some = exists(&["y"], and(vec![pred(t, &["y"]), pred(r, &["x", "y"])]));
                        match cardinality {
                            Cardinality::Some => some,
                            Cardinality::ExactlyOne => and(vec![
                                some,
                                forall(
                                    &["y", "z"],
                                    imp(
                                        and(vec![
                                            pred(t, &["y"]),
                                            pred(r, &["x", "y"]),
                                            pred(t, &["z"]),
                                            pred(r, &["x", "z"]),
                                        ]),
                                        eq("y", "z"),
                                    ),
                                ),
                            ]),
                        }
                    }
                    [t1, t2] => {
                        let some = exists(
                            &["y", "z"],
                            and(vec![pred(t1, &["y"]), pred(t2, &["z"]), pred(r, &["x", "y", "z"])]),
                        );
                        match cardinality {
                            Cardinality::Some => some,
                            Cardinality::ExactlyOne => and(vec![
                                some,
                                forall(
                                    &["y", "z", "w", "t"],
                                    imp(
                                        and(vec![
                                            pred(t1, &["y"]),
                                            pred(t2, &["z"]),
                                            pred(r, &["x", "y", "z"]),
                                            pred(t1, &["w"]),
                                            pred(t2, &["t"]),
                                            pred(r, &["x", "w", "t"]),
                                        ]),
                                        and(vec![eq("y", "w"), eq("z", "t")]),
                                    ),
                                ),
                            ]),
                        }
                    }
                    _ => return Ok(Expansion::unsupported("existential restriction over more than two targets")),
                };
                forall(&["x"], imp(pred(h, &["x"]), body))
            }
            (P::Value { relation, target }, _) => {
                let r = sym!(relation);
                let t = sym!(target);
                let n = self.arity(relation).unwrap_or(2);
                self.value_schema(h, r, n, pred(t, &["y"]))
            }
            (P::ExtendedValue { relation, target_text }, _) => {
                let r = sym!(relation);
                let n = self.arity(relation).unwrap_or(2);
                let mut disjuncts = Vec::new();
                for part in split_or(target_text) {
                    match self.o.lookup_id(part) {
                        Some(id) if self.o.entity(id).kind.is_concept_like() => {
                            disjuncts.push(pred(self.namer.name(id), &["y"]))
                        }
                        _ => {
                            return Ok(Expansion::unsupported(format!(
                                "value text `{target_text}` is not a disjunction of concepts"
                            )))
                        }
                    }
                }
                if disjuncts.is_empty() {
                    return Ok(Expansion::unsupported("empty value text"));
                }
                self.value_schema(h, r, n, or(disjuncts))
            }
            (P::Constant { relation, constant }, _) => {
                let r = sym!(relation);
                if self.arity(relation) != Some(2) {
                    return Ok(Expansion::unsupported("constant restriction needs a binary relation"));
                }
                forall(
                    &["x"],
                    imp(
                        pred(h, &["x"]),
                        pred_terms(r, vec![v("x"), Term::Const(constant.clone())]),
                    ),
                )
            }
            (P::Incompatible { target }, _) => {
                let t = sym!(target);
                forall(&hvr, imp(pred(h, &hvr), not(pred(t, &hvr))))
            }
            (P::Identity(crit), kind) => {
                let r = match crit {
                    Criterion::Rel(n) => sym!(n),
                    Criterion::Text(_) => return Ok(Expansion::unsupported("identity criterion given as text")),
                };
                if let Criterion::Rel(n) = crit {
                    if self.arity(n) != Some(2) {
                        return Ok(Expansion::unsupported("identity criterion needs a binary relation"));
                    }
                }
                let rel = pred(r, &["x", "y"]);
                let same = eq("x", "y");
                let inner = match kind {
                    ConditionKind::Nsic => iff(rel, same),
                    ConditionKind::Nic => imp(same, rel),
                    _ => imp(rel, same),
                };
                forall(
                    &["x", "y"],
                    imp(and(vec![pred(h, &["x"]), pred(h, &["y"])]), inner),
                )
            }
            (P::Unity(crit), _) => {
                let r = match crit {
                    Criterion::Rel(n) => {
                        if self.arity(n) != Some(2) {
                            return Ok(Expansion::unsupported("unity criterion needs a binary relation"));
                        }
                        sym!(n)
                    }
                    Criterion::Text(_) => return Ok(Expansion::unsupported("unity criterion given as text")),
                };
                return Ok(self.unity_schema(h, r));
            }
            (P::ExternalDependence { target }, _) => {
                let t = sym!(target);
                let binary = EntityKind::Relation { arity: 2 };
                let (Some(p), Some(k)) = (self.alias_sym("P", binary), self.alias_sym("K", binary)) else {
                    return Ok(Expansion::missing(
                        "external dependence needs binary relations aliased P and K",
                    ));
                };
                forall(
                    &["x"],
                    nec(imp(
                        pred(h, &["x"]),
                        exists(
                            &["y"],
                            and(vec![
                                pred(t, &["y"]),
                                not(pred(p, &["y", "x"])),
                                not(pred(k, &["y", "x"])),
                            ]),
                        ),
                    )),
                )
            }
            (P::Signature { args }, _) => {
                let mut parts = Vec::new();
                for (i, a) in args.iter().enumerate() {
                    let x = var_name(i);
                    let slot = |ns: &[NameRef]| -> Option<Vec<Formula>> {
                        ns.iter().map(|n| self.sym(n).map(|s| pred(s, &[&x]))).collect()
                    };
                    let f = match a {
                        ArgSpec::Unrestricted => continue,
                        ArgSpec::Text(_) => {
                            return Ok(Expansion::unsupported("argument restriction given as text"))
                        }
                        ArgSpec::One(n) => slot(std::slice::from_ref(n)).map(and),
                        ArgSpec::AnyOf(ns) => slot(ns).map(or),
                        ArgSpec::AllOf(ns) => slot(ns).map(and),
                    };
                    match f {
                        Some(f) => parts.push(imp(pred(h, &hvr), f)),
                        None => return Ok(Expansion::unsupported("unresolved argument restriction")),
                    }
                }
                if parts.is_empty() {
                    return Ok(Expansion::unsupported("every argument is unrestricted"));
                }
                forall(&hvr, and(parts))
            }
            (P::Inverse { target }, _) => {
                let t = sym!(target);
                let mut swapped = hvr.clone();
                if swapped.len() >= 2 {
                    swapped.swap(0, 1);
                }
                forall(&hvr, iff(pred(h, &hvr), pred(t, &swapped)))
            }
            (P::FreeForm { formula, .. }, _) => match formula {
                None => return Ok(Expansion::unsupported("free-text condition")),
                Some(text) => {
                    let f = parse_osf(text).map_err(|e| format!("inline formula: {e}"))?;
                    let free = free_variables(&f);
                    if !free.is_empty() {
                        let names: Vec<_> = free.into_iter().collect();
                        return Err(format!("inline formula has free variables: {}", names.join(", ")));
                    }
                    f
                }
            },
        };
        Ok(Expansion::Formula(f))
    }

    fn value_schema(&self, h: &str, r: &str, arity: u32, target: Formula) -> Formula {
        if arity <= 2 {
            return forall(
                &["x"],
                imp(pred(h, &["x"]), forall(&["y"], imp(pred(r, &["x", "y"]), target))),
            );
        }
        // Extra argument positions are threaded through the outer prefix.
        let extra: Vec<String> = (2..arity as usize).map(var_name).collect();
        let mut outer = vec!["x"];
        outer.extend(extra.iter().map(String::as_str));
        let mut args = vec!["x", "y"];
        args.extend(extra.iter().map(String::as_str));
        forall(
            &outer,
            imp(pred(h, &["x"]), forall(&["y"], imp(pred(r, &args), target))),
        )
    }

    fn unity_schema(&self, h: &str, r: &str) -> Expansion {
        let concept = EntityKind::Concept;
        let prereqs = (
            self.alias_sym("ED", concept),
            self.alias_sym("PD", concept),
            self.alias_sym("AB", concept),
            self.alias_sym("P", EntityKind::Relation { arity: 2 }),
            self.alias_sym("P3", EntityKind::Relation { arity: 3 }),
        );
        let (Some(ed), Some(pd), Some(ab), Some(p), Some(p3)) = prereqs else {
            return Expansion::missing(
                "unity schema needs concepts aliased ED, PD, AB and relations aliased P (binary) and P3 (ternary)",
            );
        };
        let whole = |part: &dyn Fn(&str) -> Formula| {
            and(vec![
                forall(
                    &["y", "z"],
                    imp(and(vec![part("y"), part("z")]), pred(r, &["y", "z"])),
                ),
                forall(
                    &["y", "z"],
                    imp(
                        and(vec![not(part("y")), not(part("z"))]),
                        not(pred(r, &["y", "z"])),
                    ),
                ),
            ])
        };
        let timed = |v: &str| pred(p3, &[v, "x", "t"]);
        let untimed = |v: &str| pred(p, &[v, "x"]);
        Expansion::Formula(forall(
            &["x", "t"],
            imp(
                pred(h, &["x"]),
                and(vec![
                    imp(pred(ed, &["x"]), whole(&timed)),
                    imp(
                        or(vec![pred(pd, &["x"]), pred(ab, &["x"])]),
                        whole(&untimed),
                    ),
                ]),
            ),
        ))
    }
}

/// Splits `A or B, C` style value text into names.
fn split_or(text: &str) -> Vec<&str> {
    text.split(',')
        .flat_map(|chunk| chunk.split(" or "))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Expands one condition of `host`. Builds a fresh namer for `o`; use
/// [`Expander`] when expanding many conditions.
pub fn expand_condition(host: &Entity, c: &Condition, o: &Ontology) -> Result<Expansion, Diagnostic> {
    let Some(id) = o.lookup_id(host.canonical()) else {
        return Ok(Expansion::unsupported("host entity is not part of the ontology"));
    };
    let ex = Expander::new(o);
    ex.expand(id, c).map_err(|msg| {
        Diagnostic::error("L01", msg)
            .with_entity(host.canonical())
            .with_span(c.span.clone())
    })
}
