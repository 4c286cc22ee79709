//! Parse a document, report diagnostics with source positions, and print the
//! canonical rendering.

use ontospec::parser::{parse_document, render};

const SOURCE: &str = r#"
ontology "Vehicles"

concept Vehicle alias VH {
  meta { rigidity: +R identity: +I supplies-identity }
  props {
    [EP/NSIC] id same-vin;
  }
}

concept Car { props { [EP/SL] isa Vehicle gloss "A car is a vehicle."; } }

# The label below is misspelt on purpose.
concept Boat { props { [EP/SLX] isa Vehicle; } }

relation/2 same-vin { }
"#;

fn main() {
    let r = parse_document(SOURCE, "vehicles.osp");
    for d in &r.diagnostics {
        println!("{}", d.to_text());
    }
    if r.ontology.is_none() {
        println!("no ontology; retrying with the label fixed");
    }
    let fixed = SOURCE.replace("[EP/SLX]", "[EP/SL]");
    let o = parse_document(&fixed, "vehicles.osp").ontology.expect("parses");
    println!("--- {} entities ---", o.entities.len());
    print!("{}", render(&o));
}
