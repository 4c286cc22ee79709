//! Drive the command-line interface from code, capturing its output.

use ontospec::cli::run;

fn main() {
    for args in [
        vec!["ontospec", "check", "--strict"],
        vec!["ontospec", "stats", "--format", "json"],
        vec!["ontospec", "supplies", "Region"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.clone(), &mut out, &mut err);
        println!("$ {} -> exit {code}", args.join(" "));
        let text = String::from_utf8_lossy(&out);
        for line in text.lines().take(8) {
            println!("  {line}");
        }
        print!("{}", String::from_utf8_lossy(&err));
    }
}
