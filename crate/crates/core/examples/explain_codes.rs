//! Print the description of every validator code, or of the codes given on
//! the command line.

use ontospec::validator::explain;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let codes: Vec<String> = if args.is_empty() {
        (1..=18).map(|n| format!("V{n:02}")).collect()
    } else {
        args
    };
    for code in codes {
        match explain(&code) {
            Ok(text) => println!("{code}: {text}"),
            Err(d) => println!("{}", d.to_text()),
        }
    }
}
