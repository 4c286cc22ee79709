use super::expand::Expander;
use super::formula::*;
use crate::model::*;

/// One expanded meta-level assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaFormula {
    /// Schema tag: RG, ~R, -R, NEP, NEP_S, CM, CM~, HOM, HOM~, AT, AT~, DJ, PT.
    pub schema: &'static str,
    pub axiom_refs: Vec<AxiomRef>,
    pub formula: Formula,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetaExpansion {
    pub formulas: Vec<MetaFormula>,
    /// Declared items with no schema, or whose prerequisites are missing.
    pub skipped: Vec<String>,
}

impl Expander<'_> {
    /// `SB(PD, h)`.
    fn under_perdurant(&self, h: &str) -> Result<Formula, String> {
        let pd = self
            .alias_sym("PD", EntityKind::Concept)
            .ok_or("no concept aliased PD")?;
        Ok(nec(forall(&["x"], imp(pred(h, &["x"]), pred(pd, &["x"])))))
    }

    fn binary(&self, alias: &str) -> Result<&str, String> {
        self.alias_sym(alias, EntityKind::Relation { arity: 2 })
            .ok_or_else(|| format!("no binary relation aliased {alias}"))
    }

    fn sum_of(&self, h: &str) -> Result<Formula, String> {
        let sum = self
            .alias_sym("sum", EntityKind::Relation { arity: 3 })
            .ok_or("no ternary relation aliased sum")?;
        Ok(exists(
            &["z"],
            and(vec![pred(sum, &["z", "x", "y"]), pred(h, &["z"])]),
        ))
    }

    fn flag_schema(&self, h: &str, flag: StatusFlag) -> Result<Formula, String> {
        let sb = self.under_perdurant(h)?;
        let hx = pred(h, &["x"]);
        let hy = pred(h, &["y"]);
        let body = match flag {
            StatusFlag::Cumulative => nec(forall(
                &["x", "y"],
                imp(and(vec![hx, hy]), self.sum_of(h)?),
            )),
            StatusFlag::AntiCumulative => {
                let p = self.binary("P")?;
                nec(forall(
                    &["x", "y"],
                    imp(
                        and(vec![
                            hx,
                            hy,
                            not(pred(p, &["x", "y"])),
                            not(pred(p, &["y", "x"])),
                        ]),
                        not(self.sum_of(h)?),
                    ),
                ))
            }
            StatusFlag::Homeomerous => {
                let pt = self.binary("P_T")?;
                nec(forall(
                    &["x", "y"],
                    imp(and(vec![hx, pred(pt, &["y", "x"])]), hy),
                ))
            }
            StatusFlag::AntiHomeomerous => {
                let pt = self.binary("P_T")?;
                nec(forall(
                    &["x"],
                    imp(hx, exists(&["y"], and(vec![pred(pt, &["y", "x"]), not(hy)]))),
                ))
            }
            StatusFlag::Atomic | StatusFlag::AntiAtomic => {
                let at = self
                    .alias_sym("At", EntityKind::Concept)
                    .ok_or("no concept aliased At")?;
                let atomic = pred(at, &["x"]);
                let consequent = if flag == StatusFlag::Atomic {
                    atomic
                } else {
                    not(atomic)
                };
                nec(forall(&["x"], imp(hx, consequent)))
            }
        };
        Ok(and(vec![sb, body]))
    }

    /// Expands the meta-statuses and partitions of `host`.
    pub fn meta(&self, host: EntityId) -> MetaExpansion {
        let e = self.o.entity(host);
        let h = self.namer.name(host);
        let m = &e.meta;
        let mut out = MetaExpansion::default();
        let hx = || pred(h, &["x"]);
        let push = |out: &mut MetaExpansion, schema, axiom_refs: Vec<AxiomRef>, formula| {
            out.formulas.push(MetaFormula {
                schema,
                axiom_refs,
                formula,
            })
        };

        match m.rigidity {
            Some(Rigidity::Rigid) => push(
                &mut out,
                "RG",
                vec![],
                nec(forall(&["x"], imp(hx(), nec(hx())))),
            ),
            Some(Rigidity::AntiRigid) => push(
                &mut out,
                "~R",
                vec![],
                forall(&["x"], imp(hx(), not(nec(hx())))),
            ),
            Some(Rigidity::NonRigid) => push(
                &mut out,
                "-R",
                vec![],
                exists(&["x"], and(vec![hx(), not(nec(hx()))])),
            ),
            None => {}
        }
        if m.non_empty {
            push(&mut out, "NEP", vec![], nec(exists(&["x"], hx())));
        }
        if m.strongly_non_empty {
            let f = self.under_perdurant(h).and_then(|sb| {
                let p = self.binary("P")?;
                Ok(and(vec![
                    sb,
                    nec(exists(
                        &["x", "y"],
                        and(vec![
                            hx(),
                            pred(h, &["y"]),
                            not(pred(p, &["x", "y"])),
                            not(pred(p, &["y", "x"])),
                        ]),
                    )),
                ]))
            });
            match f {
                Ok(f) => push(&mut out, "NEP_S", vec![], f),
                Err(why) => out.skipped.push(format!("NEP_S: {why}")),
            }
        }
        for flag in m.flags() {
            let refs: Vec<AxiomRef> = m
                .status_refs
                .iter()
                .filter(|(f, _)| *f == flag)
                .map(|(_, r)| r.clone())
                .collect();
            match self.flag_schema(h, flag) {
                Ok(f) => push(&mut out, flag.acronym(), refs, f),
                Err(why) => out.skipped.push(format!("{}: {why}", flag.acronym())),
            }
        }
        for p in &e.partitions {
            let members: Option<Vec<&str>> = p
                .members
                .iter()
                .map(|n| n.id().or_else(|| self.o.lookup_id(&n.name)).map(|id| self.namer.name(id)))
                .collect();
            let Some(members) = members else {
                out.skipped.push("partition: unresolved member".into());
                continue;
            };
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    push(
                        &mut out,
                        "DJ",
                        p.axiom_refs.clone(),
                        nec(not(exists(
                            &["x"],
                            and(vec![pred(a, &["x"]), pred(b, &["x"])]),
                        ))),
                    );
                }
            }
            push(
                &mut out,
                "PT",
                p.axiom_refs.clone(),
                nec(forall(
                    &["x"],
                    iff(hx(), or(members.iter().map(|m| pred(m, &["x"])).collect())),
                )),
            );
        }

        if let Some(i) = m.identity {
            out.skipped.push(format!("{}: no closed schema", i.symbol()));
        }
        if m.supplies_identity {
            out.skipped.push("+O: no closed schema".into());
        }
        if let Some(u) = m.unity {
            out.skipped.push(format!("{}: no schema", u.symbol()));
        }
        if let Some(d) = m.dependence {
            out.skipped.push(format!("{}: no schema", d.symbol()));
        }
        for l in &e.meta_links {
            out.skipped.push(format!("{} -> {}: dependence links are not expanded", l.kind.symbol(), l.target));
        }
        out
    }
}

/// Expands the meta-level assertions of `host`.
pub fn expand_meta(host: &Entity, o: &Ontology) -> MetaExpansion {
    match o.lookup_id(host.canonical()) {
        Some(id) => Expander::new(o).meta(id),
        None => MetaExpansion::default(),
    }
}
