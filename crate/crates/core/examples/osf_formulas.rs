//! Build formulas with the AST helpers, print them, read them back, and
//! inspect free variables and predicate symbols.

use ontospec::logic::{and, emit_osf, exists, forall, free_variables, imp, nec, parse_osf, pred, predicates};

fn main() {
    let body = imp(pred("ev", &["x"]), exists(&["y"], and(vec![pred("pd", &["y"]), pred("p", &["x", "y"])])));
    let closed = nec(forall(&["x"], body.clone()));
    let text = emit_osf(&closed);
    println!("{text}");
    assert_eq!(parse_osf(&text).unwrap(), closed);

    println!("free in the open body: {:?}", free_variables(&body));
    println!("free in the closed formula: {:?}", free_variables(&closed));
    println!("predicates: {:?}", predicates(&closed));

    match parse_osf("(forall (x) (pred p x)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
