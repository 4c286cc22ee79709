//! Inspect what an entity of the reference corpus carries, where each key
//! comes from, and which keys it supplies rather than inherits.

use ontospec::analysis::{ancestors, build_graph, carried_closure, supplies};
use ontospec::corpus::load_corpus;

fn main() {
    let o = load_corpus().expect("corpus loads");
    let g = build_graph(&o);
    let carried = carried_closure(&o, &g);
    let name = std::env::args().nth(1).unwrap_or_else(|| "PhysicalObject".to_string());
    let id = o.lookup_id(&name).unwrap_or_else(|| panic!("no entity {name}"));

    let chain: Vec<_> = ancestors(&g, id).unwrap().into_iter().map(|a| o.entity(a).canonical()).collect();
    println!("{} isa {}", o.entity(id).canonical(), chain.join(", "));
    for entry in carried.of(id) {
        let supplied = supplies(&o, &g, &carried, id, &entry.key).unwrap();
        let key: String = if entry.key.chars().count() > 48 {
            entry.key.chars().take(45).chain("...".chars()).collect()
        } else {
            entry.key.clone()
        };
        println!(
            "  {key:<48} {:?} from {} {}",
            entry.via,
            o.entity(entry.origin).canonical(),
            if supplied { "(supplied)" } else { "" }
        );
    }
}
