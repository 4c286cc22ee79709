//! The `ontospec` command line. [`run`] takes the arguments and two output
//! streams and returns the process exit code, so tests can drive it
//! in-process.
//!
//! Exit codes: 0 no Errors, 1 Errors found (or Warnings under `--strict`),
//! 2 usage or I/O failure.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{self, Via};
use crate::corpus::{self, CorpusFile};
use crate::logic;
use crate::model::{Diagnostic, Ontology, Severity};
use crate::parser;
use crate::validator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERRORS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ontospec", version, about = "Check, emit and inspect OntoSpec ontologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, resolve and validate; print diagnostics.
    Check {
        /// Input `.osp` files. Defaults to the shipped corpus.
        files: Vec<PathBuf>,
        /// Warnings make the run fail, except the corpus's known ones.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// With --strict, count the corpus's known Warnings too.
        #[arg(long)]
        no_corpus_baseline: bool,
    },
    /// Write first-order formulas as `.osf` files.
    Emit {
        files: Vec<PathBuf>,
        /// Output directory. Without it the formulas go to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entity, partition, condition and axiom-reference counts.
    Stats {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Subsumption edges.
    Graph {
        files: Vec<PathBuf>,
        /// Graphviz output instead of one edge per line.
        #[arg(long)]
        dot: bool,
    },
    /// Carried conditions of an entity and whether it supplies each.
    Supplies {
        entity: String,
        files: Vec<PathBuf>,
    },
    /// Describe a diagnostic code.
    Explain { code: String },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(text.as_bytes());
            return EXIT_USAGE;
        }
    };
    let mut io = Io { out, err };
    let r = match cli.command {
        Command::Check {
            files,
            strict,
            format,
            no_corpus_baseline,
        } => cmd_check(&files, strict, format, !no_corpus_baseline, &mut io),
        Command::Emit { files, out } => cmd_emit(&files, out.as_deref(), &mut io),
        Command::Stats { files, format } => cmd_stats(&files, format, &mut io),
        Command::Graph { files, dot } => cmd_graph(&files, dot, &mut io),
        Command::Supplies { entity, files } => cmd_supplies(&files, &entity, &mut io),
        Command::Explain { code } => cmd_explain(&code, &mut io),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "ontospec: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn read_inputs(files: &[PathBuf]) -> Result<Vec<CorpusFile>, String> {
    if files.is_empty() {
        return corpus::corpus_files().map_err(|d| d.to_text());
    }
    files
        .iter()
        .map(|p| {
            std::fs::read_to_string(p)
                .map(|text| CorpusFile {
                    name: p.display().to_string(),
                    text,
                })
                .map_err(|e| format!("cannot read {}: {e}", p.display()))
        })
        .collect()
}

/// Parse, resolve and, when both succeed, validate.
struct Checked {
    ontology: Option<Ontology>,
    diagnostics: Vec<Diagnostic>,
}

impl Checked {
    fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

fn check_files(files: &[CorpusFile]) -> Checked {
    let docs: Vec<(&str, &str)> = files.iter().map(|f| (f.text.as_str(), f.name.as_str())).collect();
    let (o, mut diagnostics) = parser::load(&docs);
    if let Some(o) = &o {
        diagnostics.extend(validator::validate(o));
    }
    Checked {
        ontology: o,
        diagnostics,
    }
}

/// Loads inputs and stops with exit 1 on any Error.
fn load_valid(files: &[PathBuf], io: &mut Io) -> Result<Result<Ontology, i32>, String> {
    let inputs = read_inputs(files)?;
    let checked = check_files(&inputs);
    if checked.has_errors() {
        for d in checked.diagnostics.iter().filter(|d| d.is_error()) {
            let _ = writeln!(io.err, "{}", d.to_text());
        }
        return Ok(Err(EXIT_ERRORS));
    }
    Ok(Ok(checked.ontology.expect("no errors implies an ontology")))
}

fn baseline_key(d: &Diagnostic) -> (String, Option<String>, String) {
    (d.code.to_string(), d.entity.clone(), d.message.clone())
}

/// Warnings the shipped corpus is known to produce.
fn corpus_baseline() -> BTreeSet<(String, Option<String>, String)> {
    corpus::corpus_files()
        .map(|files| {
            check_files(&files)
                .diagnostics
                .iter()
                .filter(|d| d.severity == Severity::Warning)
                .map(baseline_key)
                .collect()
        })
        .unwrap_or_default()
}

fn cmd_check(files: &[PathBuf], strict: bool, format: Format, use_baseline: bool, io: &mut Io) -> CmdResult {
    let inputs = read_inputs(files)?;
    let checked = check_files(&inputs);
    for d in &checked.diagnostics {
        let line = match format {
            Format::Text => d.to_text(),
            Format::Json => d.to_json().to_string(),
        };
        writeln!(io.out, "{line}").map_err(|e| e.to_string())?;
    }
    let count = |s: Severity| checked.diagnostics.iter().filter(|d| d.severity == s).count();
    let (errors, warnings, notes) = (count(Severity::Error), count(Severity::Warning), count(Severity::Note));
    let _ = writeln!(io.err, "{errors} error(s), {warnings} warning(s), {notes} note(s)");
    if errors > 0 {
        return Ok(EXIT_ERRORS);
    }
    if strict {
        let baseline = if use_baseline { corpus_baseline() } else { BTreeSet::new() };
        let fresh = checked
            .diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Warning && !baseline.contains(&baseline_key(d)))
            .count();
        if fresh > 0 {
            let _ = writeln!(io.err, "--strict: {fresh} warning(s) outside the corpus baseline");
            return Ok(EXIT_ERRORS);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_emit(files: &[PathBuf], out_dir: Option<&Path>, io: &mut Io) -> CmdResult {
    let o = match load_valid(files, io)? {
        Ok(o) => o,
        Err(code) => return Ok(code),
    };
    let em = logic::emit_ontology(&o);
    for d in &em.diagnostics {
        let _ = writeln!(io.err, "{}", d.to_text());
    }
    // Counts go to stdout when the formulas go to files, else to stderr.
    let mut report = String::new();
    for c in &em.entities {
        report.push_str(&format!(
            "{} emitted={} unsupported={} meta={}\n",
            c.entity, c.emitted, c.unsupported, c.meta
        ));
    }
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            for f in &em.files {
                let path = dir.join(format!("{}.osf", f.stem));
                std::fs::write(&path, &f.text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            io.out.write_all(report.as_bytes()).map_err(|e| e.to_string())?;
        }
        None => {
            for f in &em.files {
                io.out.write_all(f.text.as_bytes()).map_err(|e| e.to_string())?;
            }
            let _ = io.err.write_all(report.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_stats(files: &[PathBuf], format: Format, io: &mut Io) -> CmdResult {
    let inputs = read_inputs(files)?;
    let docs: Vec<(&str, &str)> = inputs.iter().map(|f| (f.text.as_str(), f.name.as_str())).collect();
    let (o, diags) = parser::load(&docs);
    let Some(o) = o else {
        for d in diags.iter().filter(|d| d.is_error()) {
            let _ = writeln!(io.err, "{}", d.to_text());
        }
        return Ok(EXIT_ERRORS);
    };
    let st = corpus::corpus_stats(&o);
    let text = match format {
        Format::Text => st.to_table(),
        Format::Json => format!("{}\n", st.to_json()),
    };
    io.out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text for the subsumption graph: every entity is a node, every
/// SL or SLD an edge from child to parent.
pub fn render_dot(o: &Ontology) -> String {
    let g = analysis::build_graph(o);
    let mut s = format!("digraph {} {{\n", dot_id(&o.title));
    if !o.entities.is_empty() {
        s.push_str("  rankdir=BT;\n");
    }
    for e in &o.entities {
        s.push_str(&format!("  {} [shape={}];\n", dot_id(e.canonical()), if e.kind.is_concept_like() { "box" } else { "ellipse" }));
    }
    for edge in &g.edges {
        s.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_id(o.entity(edge.child).canonical()),
            dot_id(o.entity(edge.parent).canonical()),
            if edge.diff { "SLD" } else { "SL" }
        ));
    }
    s.push_str("}\n");
    s
}

fn cmd_graph(files: &[PathBuf], dot: bool, io: &mut Io) -> CmdResult {
    let inputs = read_inputs(files)?;
    let docs: Vec<(&str, &str)> = inputs.iter().map(|f| (f.text.as_str(), f.name.as_str())).collect();
    let (o, diags) = parser::load(&docs);
    let Some(o) = o else {
        for d in diags.iter().filter(|d| d.is_error()) {
            let _ = writeln!(io.err, "{}", d.to_text());
        }
        return Ok(EXIT_ERRORS);
    };
    let text = if dot {
        render_dot(&o)
    } else {
        let g = analysis::build_graph(&o);
        g.edges
            .iter()
            .map(|e| format!("{} -> {}\n", o.entity(e.child).canonical(), o.entity(e.parent).canonical()))
            .collect()
    };
    io.out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn via_text(v: Via) -> &'static str {
    match v {
        Via::Own => "own",
        Via::InheritedDown => "inherited-down",
        Via::InheritedUp => "inherited-up",
    }
}

fn cmd_supplies(files: &[PathBuf], entity: &str, io: &mut Io) -> CmdResult {
    let o = match load_valid(files, io)? {
        Ok(o) => o,
        Err(code) => return Ok(code),
    };
    let Some(id) = o.lookup_id(entity) else {
        let _ = writeln!(io.err, "ontospec: unknown entity `{entity}`");
        return Ok(EXIT_USAGE);
    };
    let g = analysis::build_graph(&o);
    let carried = analysis::carried_closure(&o, &g);
    writeln!(io.out, "{}", o.entity(id).canonical()).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    for c in carried.of(id) {
        if !seen.insert(c.key.clone()) {
            continue;
        }
        let supplied = analysis::supplies(&o, &g, &carried, id, &c.key).map_err(|d| d.to_text())?;
        let origin = o.entity(c.origin).canonical();
        writeln!(
            io.out,
            "  {}\t{}\tfrom {}\t{}",
            c.key,
            via_text(c.via),
            origin,
            if supplied { "supplied" } else { "carried" }
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn cmd_explain(code: &str, io: &mut Io) -> CmdResult {
    match validator::explain(code) {
        Ok(text) => {
            writeln!(io.out, "{}: {text}", code.to_ascii_uppercase()).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Err(d) => {
            let _ = writeln!(io.err, "{}", d.to_text());
            Ok(EXIT_USAGE)
        }
    }
}
