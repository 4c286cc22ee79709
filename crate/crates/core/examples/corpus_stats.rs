//! Load the shipped reference ontology (or the copy named by
//! `ONTOSPEC_CORPUS`) and print its statistics as a table and as JSON.

use ontospec::corpus::{corpus_files, corpus_stats, load_files};

fn main() {
    let files = match corpus_files() {
        Ok(f) => f,
        Err(d) => {
            eprintln!("{}", d.to_text());
            std::process::exit(1);
        }
    };
    for f in &files {
        println!("{:<24} {:>6} bytes", f.name, f.text.len());
    }
    let o = load_files(&files).expect("corpus resolves");
    let st = corpus_stats(&o);
    print!("\n{}", st.to_table());
    println!("\n{}", serde_json::to_string_pretty(&st.to_json()).unwrap());
}
