//! Print the subsumption graph of the reference corpus as Graphviz DOT,
//! restricted to the descendants of one concept.

use ontospec::analysis::{build_graph, descendants};
use ontospec::cli::render_dot;
use ontospec::corpus::load_corpus;

fn main() {
    let o = load_corpus().expect("corpus loads");
    let root = std::env::args().nth(1).unwrap_or_else(|| "Perdurant".to_string());
    let g = build_graph(&o);
    let id = o.lookup_id(&root).expect("known entity");
    let below = descendants(&g, id);
    eprintln!("{} has {} descendants", o.entity(id).canonical(), below.len());
    // The full graph is large; pipe it through `dot -Tsvg` to view it.
    let dot = render_dot(&o);
    let keep: Vec<&str> = std::iter::once(id).chain(below).map(|e| o.entity(e).canonical()).collect();
    for line in dot.lines() {
        let quoted: Vec<&str> = line.split('"').skip(1).step_by(2).collect();
        if quoted.is_empty() || quoted.iter().all(|n| keep.contains(n)) {
            println!("{line}");
        }
    }
}
