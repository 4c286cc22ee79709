//! Run the validator over a small taxonomy that breaks two constraints: an
//! anti-rigid concept above a rigid one, and a cycle.

use ontospec::model::Severity;
use ontospec::parser;
use ontospec::validator::{explain, validate};

const SOURCE: &str = r#"
ontology "Roles"

concept Person { meta { rigidity: +R } }
concept Student {
  meta { rigidity: ~R }
  props { [EP/SL] isa Person; }
}
concept GraduateStudent {
  meta { rigidity: +R }
  props { [EP/SL] isa Student; }
}

concept Chicken { props { [EP/SL] isa Egg; } }
concept Egg { props { [EP/SL] isa Chicken; } }
"#;

fn main() {
    let (o, parse_diags) = parser::load(&[(SOURCE, "roles.osp")]);
    for d in &parse_diags {
        println!("{}", d.to_text());
    }
    let o = o.expect("document resolves");
    let diags = validate(&o);
    for d in &diags {
        println!("{}", d.to_text());
    }
    let errors: Vec<_> = diags.iter().filter(|d| d.severity == Severity::Error).collect();
    println!("\n{} error(s)", errors.len());
    for d in errors {
        if let Ok(text) = explain(d.code) {
            println!("{}: {text}", d.code);
        }
    }
}
