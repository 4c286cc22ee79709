//! Plain set-theoretic readings of the structured condition kinds, checked
//! against the emitted formulas over every interpretation with a domain of
//! at most three elements.

use super::{fixture, Model};
use ontospec::logic::{Expander, Expansion, Formula};
use ontospec::model::Ontology;

pub const FIXTURE: &str = r#"
ontology "Models"
concept A {
  props {
    [EP/SL] isa B;
    [EP/ER] some r -> B;
    [EP/ER] exactly-one r -> B;
    [EP/VR] only r -> B;
    [EP/ICL] not B;
    [EP/NSIC] id r;
  }
}
concept B { }
concept C { }
relation/2 r {
  props {
    [EP/DR & DRR] sig (A, any(B | C));
    [EP/IVL] inverse s;
  }
}
relation/2 s { props { [EP/IVL] inverse r; } }
"#;

pub fn formula(o: &Ontology, entity: &str, index: usize) -> Formula {
    match Expander::new(o).condition(o.lookup_id(entity).unwrap(), index).unwrap() {
        Expansion::Formula(f) => f,
        other => panic!("{other:?}"),
    }
}

/// Compares `oracle` with the formula over every interpretation of `preds`
/// (name, arity) for n = 1..=3. Returns the number of models checked, or
/// the first disagreement.
pub fn agree(f: &Formula, preds: &[(&str, usize)], oracle: &dyn Fn(&Model) -> bool) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=3 {
        let sizes: Vec<usize> = preds.iter().map(|(_, a)| Model::tuples(n, *a)).collect();
        let mut bits = vec![0u64; preds.len()];
        loop {
            let mut m = Model::new(n);
            for ((name, arity), b) in preds.iter().zip(&bits) {
                m.set(name, *arity, *b);
            }
            if m.eval(f) != oracle(&m) {
                return Err(format!("disagreement at n={n}, interpretation {bits:?}"));
            }
            checked += 1;
            // Odometer over the bitsets.
            let mut i = 0;
            while i < bits.len() {
                bits[i] += 1;
                if bits[i] < 1u64 << sizes[i] {
                    break;
                }
                bits[i] = 0;
                i += 1;
            }
            if i == bits.len() {
                break;
            }
        }
    }
    Ok(checked)
}

fn dom(m: &Model) -> std::ops::Range<usize> {
    0..m.n
}

type Oracle = Box<dyn Fn(&Model) -> bool>;
type Case = (&'static str, &'static str, usize, Vec<(&'static str, usize)>, Oracle);

/// (kind, entity, condition index, predicates, extensional statement)
pub fn cases() -> Vec<Case> {
    let abr = vec![("a", 1), ("b", 1), ("r", 2)];
    vec![
        ("SL", "A", 0, vec![("a", 1), ("b", 1)], Box::new(|m: &Model| {
            dom(m).all(|d| !m.holds("a", &[d]) || m.holds("b", &[d]))
        })),
        ("ER some", "A", 1, abr.clone(), Box::new(|m: &Model| {
            dom(m)
                .filter(|&x| m.holds("a", &[x]))
                .all(|x| dom(m).any(|y| m.holds("b", &[y]) && m.holds("r", &[x, y])))
        })),
        ("ER exactly-one", "A", 2, abr.clone(), Box::new(|m: &Model| {
            dom(m)
                .filter(|&x| m.holds("a", &[x]))
                .all(|x| dom(m).filter(|&y| m.holds("b", &[y]) && m.holds("r", &[x, y])).count() == 1)
        })),
        ("VR", "A", 3, abr, Box::new(|m: &Model| {
            dom(m)
                .filter(|&x| m.holds("a", &[x]))
                .all(|x| dom(m).filter(|&y| m.holds("r", &[x, y])).all(|y| m.holds("b", &[y])))
        })),
        ("ICL", "A", 4, vec![("a", 1), ("b", 1)], Box::new(|m: &Model| {
            dom(m).all(|d| !(m.holds("a", &[d]) && m.holds("b", &[d])))
        })),
        ("NSIC", "A", 5, vec![("a", 1), ("r", 2)], Box::new(|m: &Model| {
            // On instances of A, r coincides with identity.
            let inst: Vec<usize> = dom(m).filter(|&x| m.holds("a", &[x])).collect();
            inst.iter().all(|&x| inst.iter().all(|&y| m.holds("r", &[x, y]) == (x == y)))
        })),
        ("SIG", "r", 0, vec![("a", 1), ("b", 1), ("c", 1), ("r", 2)], Box::new(|m: &Model| {
            dom(m).all(|x| {
                dom(m).all(|y| {
                    !m.holds("r", &[x, y]) || (m.holds("a", &[x]) && (m.holds("b", &[y]) || m.holds("c", &[y])))
                })
            })
        })),
        ("IVL", "r", 1, vec![("r", 2), ("s", 2)], Box::new(|m: &Model| {
            // s is the converse of r.
            dom(m).all(|x| dom(m).all(|y| m.holds("r", &[x, y]) == m.holds("s", &[y, x])))
        })),
    ]
}

/// Runs one case by kind name.
pub fn check(kind: &str) -> Result<usize, String> {
    let o = fixture(FIXTURE);
    let (_, entity, index, preds, oracle) = cases().into_iter().find(|c| c.0 == kind).expect("case");
    agree(&formula(&o, entity, index), &preds, &*oracle)
}
