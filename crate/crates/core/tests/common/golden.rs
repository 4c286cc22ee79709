//! Hand-derived expected formulas for one small ontology exercising every
//! structured condition kind and the RG, NEP, CM and PT meta schemas.

use super::fixture;
use ontospec::logic::{emit_osf, free_variables, Expander, Expansion};
use ontospec::model::Ontology;

pub const FIXTURE: &str = r#"
ontology "Golden"

concept Particular alias PT {
  meta { rigidity: +R non-empty partition (Endurant, Perdurant, Abstract) }
}

concept Endurant alias ED {
  props {
    [EP/SL] isa Particular;
    [EP/ICL] not Perdurant;
    [EP/EDC] edc Perdurant;
  }
}

concept Perdurant alias PD {
  meta { cumulative }
  props {
    [EP/SL] isa Particular;
    [EP/ER] some has-part -> Perdurant;
    [EP/ER] exactly-one has-part -> Perdurant;
    [EP/VR] only has-part -> Perdurant;
    [EP/EVR] only has-part -> text "Perdurant or Abstract";
    [EP/SMC] text "whatever something participates in is a perdurant"
      formula "(forall (x) (imp (exists (y) (pred participates y x)) (pred pd x)))";
    [EP/VR] only part-during -> Perdurant;
    [EP/ER] some part-during -> Perdurant, Abstract;
  }
}

concept Event alias EV {
  props {
    [EP/SLD] isa Perdurant diff "is bounded";
    [EP/NSMC] text "an event is a perdurant with a boundary"
      formula "(forall (x) (iff (pred ev x) (and (pred pd x) (exists (y) (pred bounds y x)))))";
  }
}

concept Abstract alias AB {
  props {
    [EP/SL] isa Particular;
    [EP/CR] const has-part -> zero;
    [EP/NSIC] id same-as;
    [EP/NIC] id same-as;
    [EP/SIC] id same-as;
    [EP/UC] unity same-as;
  }
}

relation/2 is-part-of alias P {
  props {
    [EP/DR & DRR] sig (Particular, any(Endurant | Perdurant));
    [EP/IVL] inverse has-part;
    [EP/IL] notrel constitutes;
  }
}

relation/2 has-part {
  props { [EP/IVL] inverse is-part-of; }
}

relation/2 constitutes alias K { }
relation/2 same-as { }
relation/2 participates { }
relation/2 bounds { }
relation/3 part-during alias P3 { }
relation/3 sum-of alias sum { }
"#;

pub fn golden() -> Ontology {
    fixture(FIXTURE)
}

pub fn cond(o: &Ontology, entity: &str, index: usize) -> Result<String, String> {
    let id = o.lookup_id(entity).ok_or_else(|| format!("no entity {entity}"))?;
    match Expander::new(o).condition(id, index).map_err(|d| d.to_text())? {
        Expansion::Formula(f) if free_variables(&f).is_empty() => Ok(emit_osf(&f)),
        Expansion::Formula(f) => Err(format!("free variables in {}", emit_osf(&f))),
        other => Err(format!("{entity}[{index}] not expanded: {other:?}")),
    }
}

pub fn meta_of(o: &Ontology, entity: &str, schema: &str) -> Vec<String> {
    Expander::new(o)
        .meta(o.lookup_id(entity).unwrap())
        .formulas
        .into_iter()
        .filter(|m| m.schema == schema)
        .map(|m| emit_osf(&m.formula))
        .collect()
}

pub enum Target {
    Condition(&'static str, usize),
    Meta(&'static str, &'static str),
}

fn uc_expected() -> String {
    let timed = "(and (forall (y z) (imp (and (pred p3 y x t) (pred p3 z x t)) (pred same-as y z))) \
                 (forall (y z) (imp (and (not (pred p3 y x t)) (not (pred p3 z x t))) (not (pred same-as y z)))))";
    let plain = "(and (forall (y z) (imp (and (pred p y x) (pred p z x)) (pred same-as y z))) \
                 (forall (y z) (imp (and (not (pred p y x)) (not (pred p z x))) (not (pred same-as y z)))))";
    format!("(forall (x t) (imp (pred ab x) (and (imp (pred ed x) {timed}) (imp (or (pred pd x) (pred ab x)) {plain}))))")
}

/// (label, where to look, expected formulas)
pub fn table() -> Vec<(&'static str, Target, Vec<String>)> {
    use Target::*;
    let one = |s: &str| vec![s.to_string()];
    vec![
        ("SL", Condition("Endurant", 0), one("(forall (x) (imp (pred ed x) (pred pt x)))")),
        ("SLD", Condition("Event", 0), one("(forall (x) (iff (pred ev x) (and (pred pd x) (pred diff_ev_1 x))))")),
        ("ER some", Condition("Perdurant", 1), one("(forall (x) (imp (pred pd x) (exists (y) (and (pred pd y) (pred has-part x y)))))")),
        ("ER exactly-one", Condition("Perdurant", 2), one(
            "(forall (x) (imp (pred pd x) (and (exists (y) (and (pred pd y) (pred has-part x y))) \
             (forall (y z) (imp (and (pred pd y) (pred has-part x y) (pred pd z) (pred has-part x z)) (eq y z))))))")),
        ("VR", Condition("Perdurant", 3), one("(forall (x) (imp (pred pd x) (forall (y) (imp (pred has-part x y) (pred pd y)))))")),
        ("EVR", Condition("Perdurant", 4), one(
            "(forall (x) (imp (pred pd x) (forall (y) (imp (pred has-part x y) (or (pred pd y) (pred ab y))))))")),
        ("CR", Condition("Abstract", 1), one("(forall (x) (imp (pred ab x) (pred has-part x 'zero)))")),
        ("ICL", Condition("Endurant", 1), one("(forall (x) (imp (pred ed x) (not (pred pd x))))")),
        ("NSIC", Condition("Abstract", 2), one(
            "(forall (x y) (imp (and (pred ab x) (pred ab y)) (iff (pred same-as x y) (eq x y))))")),
        ("NIC", Condition("Abstract", 3), one(
            "(forall (x y) (imp (and (pred ab x) (pred ab y)) (imp (eq x y) (pred same-as x y))))")),
        ("SIC", Condition("Abstract", 4), one(
            "(forall (x y) (imp (and (pred ab x) (pred ab y)) (imp (pred same-as x y) (eq x y))))")),
        ("UC", Condition("Abstract", 5), vec![uc_expected()]),
        ("IVL", Condition("is-part-of", 1), one("(forall (x y) (iff (pred p x y) (pred has-part y x)))")),
        ("IL", Condition("is-part-of", 2), one("(forall (x y) (imp (pred p x y) (not (pred k x y))))")),
        ("SIG", Condition("is-part-of", 0), one(
            "(forall (x y) (and (imp (pred p x y) (pred pt x)) (imp (pred p x y) (or (pred ed y) (pred pd y)))))")),
        ("SMC", Condition("Perdurant", 5), one("(forall (x) (imp (exists (y) (pred participates y x)) (pred pd x)))")),
        ("NSMC", Condition("Event", 1), one(
            "(forall (x) (iff (pred ev x) (and (pred pd x) (exists (y) (pred bounds y x)))))")),
        ("EDC", Condition("Endurant", 2), one(
            "(forall (x) (box (imp (pred ed x) (exists (y) (and (pred pd y) (not (pred p y x)) (not (pred k y x)))))))")),
        ("RG", Meta("Particular", "RG"), one("(box (forall (x) (imp (pred pt x) (box (pred pt x)))))")),
        ("NEP", Meta("Particular", "NEP"), one("(box (exists (x) (pred pt x)))")),
        ("CM", Meta("Perdurant", "CM"), one(
            "(and (box (forall (x) (imp (pred pd x) (pred pd x)))) \
             (box (forall (x y) (imp (and (pred pd x) (pred pd y)) (exists (z) (and (pred sum z x y) (pred pd z)))))))")),
        ("DJ", Meta("Particular", "DJ"), vec![
            "(box (not (exists (x) (and (pred ed x) (pred pd x)))))".into(),
            "(box (not (exists (x) (and (pred ed x) (pred ab x)))))".into(),
            "(box (not (exists (x) (and (pred pd x) (pred ab x)))))".into(),
        ]),
        ("PT", Meta("Particular", "PT"), one(
            "(box (forall (x) (iff (pred pt x) (or (pred ed x) (pred pd x) (pred ab x)))))")),
    ]
}

/// Compares one labelled golden with the emitter.
pub fn check(label: &str) -> Result<(), String> {
    let o = golden();
    let (_, target, want) = table().into_iter().find(|t| t.0 == label).ok_or("no such golden")?;
    let got = match target {
        Target::Condition(e, i) => vec![cond(&o, e, i)?],
        Target::Meta(e, s) => meta_of(&o, e, s),
    };
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: expected {want:#?}, got {got:#?}"))
    }
}
