//! Translate structured conditions into first-order formulas (s-expression
//! syntax) and show which conditions have no schema.

use ontospec::logic::emit_ontology;
use ontospec::parser;

const SOURCE: &str = r#"
ontology "Parts"

concept Object alias OB {
  meta { rigidity: +R non-empty partition (Body, Hole) }
  props {
    [EP/VR] only has-part -> Object;
    [EP/ER] some has-part -> Object;
  }
}
concept Body { props { [EP/SL] isa Object; [EP/ICL] not Hole; } }
concept Hole {
  props {
    [EP/SL] isa Object;
    [EP/NMC] text "A hole is hosted by some body.";
  }
}

relation/2 has-part {
  props {
    [EP/DR & DRR] sig (Object, Object);
    [EP/IVL] inverse part-of;
  }
}
relation/2 part-of { props { [EP/IVL] inverse has-part; } }
"#;

fn main() {
    let (o, _) = parser::load(&[(SOURCE, "parts.osp")]);
    let em = emit_ontology(&o.expect("document resolves"));
    for f in &em.files {
        println!("==> {}.osf", f.stem);
        print!("{}", f.text);
    }
    for c in &em.entities {
        println!("{:<10} emitted={} unsupported={} meta={}", c.entity, c.emitted, c.unsupported, c.meta);
    }
}
