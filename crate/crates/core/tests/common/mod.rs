#![allow(dead_code)]

use std::collections::HashMap;

use ontospec::corpus;
use ontospec::logic::{Formula, Term};
use ontospec::model::{Diagnostic, Ontology};
use ontospec::parser;
use rand::seq::SliceRandom;
use rand::Rng;

pub mod golden;
pub mod mutate;
pub mod oracle;
pub mod tables;

pub fn corpus_docs() -> Vec<(String, String)> {
    corpus::embedded_files()
        .into_iter()
        .map(|f| (f.name, f.text))
        .collect()
}

pub fn load_docs(docs: &[(String, String)]) -> (Option<Ontology>, Vec<Diagnostic>) {
    let refs: Vec<(&str, &str)> = docs.iter().map(|(n, t)| (t.as_str(), n.as_str())).collect();
    parser::load(&refs)
}

pub fn corpus_ontology() -> Ontology {
    corpus::load_files(&corpus::embedded_files()).expect("corpus loads")
}

/// Parses and resolves one document, panicking on any Error.
pub fn fixture(src: &str) -> Ontology {
    let (o, diags) = parser::load(&[(src, "fixture.osp")]);
    let errors: Vec<String> = diags.iter().filter(|d| d.is_error()).map(|d| d.to_text()).collect();
    assert!(errors.is_empty(), "fixture errors: {errors:#?}");
    o.unwrap()
}

// ---------------------------------------------------------------------------
// Finite models

/// A one-world interpretation over `{0, .., n-1}`. Each predicate is a
/// bitset indexed by the mixed-radix encoding of its argument tuple. With a
/// single world `box` is the identity.
#[derive(Clone, Debug)]
pub struct Model {
    pub n: usize,
    preds: HashMap<String, (usize, u64)>,
    consts: HashMap<String, usize>,
}

impl Model {
    pub fn new(n: usize) -> Self {
        Model {
            n,
            preds: HashMap::new(),
            consts: HashMap::new(),
        }
    }

    pub fn tuples(n: usize, arity: usize) -> usize {
        n.pow(arity as u32)
    }

    pub fn set(&mut self, name: &str, arity: usize, bits: u64) {
        self.preds.insert(name.to_string(), (arity, bits));
    }

    pub fn set_const(&mut self, name: &str, value: usize) {
        self.consts.insert(name.to_string(), value);
    }

    fn index(&self, args: &[usize]) -> usize {
        args.iter().rev().fold(0, |acc, &a| acc * self.n + a)
    }

    pub fn holds(&self, name: &str, args: &[usize]) -> bool {
        let (arity, bits) = self.preds.get(name).unwrap_or_else(|| panic!("uninterpreted predicate {name}"));
        assert_eq!(*arity, args.len(), "arity of {name}");
        bits >> self.index(args) & 1 == 1
    }

    fn term(&self, t: &Term, env: &[(String, usize)]) -> usize {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, x)| *x)
                .unwrap_or_else(|| panic!("free variable {v}")),
            Term::Const(c) => *self.consts.get(c).unwrap_or_else(|| panic!("uninterpreted constant {c}")),
        }
    }

    pub fn eval(&self, f: &Formula) -> bool {
        self.ev(f, &mut Vec::new())
    }

    fn quant(&self, vars: &[String], body: &Formula, env: &mut Vec<(String, usize)>, all: bool) -> bool {
        let Some((first, rest)) = vars.split_first() else {
            return self.ev(body, env);
        };
        for x in 0..self.n {
            env.push((first.clone(), x));
            let r = self.quant(rest, body, env, all);
            env.pop();
            if r != all {
                return !all;
            }
        }
        all
    }

    fn ev(&self, f: &Formula, env: &mut Vec<(String, usize)>) -> bool {
        match f {
            Formula::Pred(p, ts) => {
                let args: Vec<usize> = ts.iter().map(|t| self.term(t, env)).collect();
                self.holds(p, &args)
            }
            Formula::Eq(a, b) => self.term(a, env) == self.term(b, env),
            Formula::Not(x) => !self.ev(x, env),
            Formula::And(xs) => xs.iter().all(|x| self.ev(x, env)),
            Formula::Or(xs) => xs.iter().any(|x| self.ev(x, env)),
            Formula::Imp(a, b) => !self.ev(a, env) || self.ev(b, env),
            Formula::Iff(a, b) => self.ev(a, env) == self.ev(b, env),
            Formula::Forall(vs, b) => self.quant(vs, b, env, true),
            Formula::Exists(vs, b) => self.quant(vs, b, env, false),
            Formula::Box(x) => self.ev(x, env),
        }
    }
}

/// Every subset of `tuples` positions, as bitsets.
pub fn all_bitsets(tuples: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << tuples)
}

// ---------------------------------------------------------------------------
// DOT

#[derive(Clone, Debug, PartialEq)]
enum DotTok {
    Id(String),
    Punct(&'static str),
}

fn dot_lex(s: &str) -> Result<Vec<DotTok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut v = String::new();
            i += 1;
            loop {
                match cs.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        v.push(*cs.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(&ch) => {
                        v.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(DotTok::Id(v));
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '.') {
                i += 1;
            }
            let word: String = cs[start..i].iter().collect();
            let numeral = word.chars().next().unwrap().is_ascii_digit() || word.starts_with('.');
            if numeral && word.parse::<f64>().is_err() {
                return Err(format!("bad numeral {word}"));
            }
            out.push(DotTok::Id(word));
        } else if c == '-' && matches!(cs.get(i + 1), Some('>') | Some('-')) {
            out.push(DotTok::Punct(if cs[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else {
            let p = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                ';' => ";",
                ',' => ",",
                '=' => "=",
                ':' => ":",
                _ => return Err(format!("unexpected character {c:?}")),
            };
            out.push(DotTok::Punct(p));
            i += 1;
        }
    }
    Ok(out)
}

/// Result of checking a DOT document.
#[derive(Debug, Default)]
pub struct DotGraph {
    pub directed: bool,
    pub name: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

struct DotParser {
    toks: Vec<DotTok>,
    pos: usize,
    directed: bool,
    out: DotGraph,
}

const DOT_KEYWORDS: [&str; 6] = ["strict", "graph", "digraph", "node", "edge", "subgraph"];

impl DotParser {
    fn peek(&self) -> Option<&DotTok> {
        self.toks.get(self.pos)
    }

    fn punct(&mut self, p: &str) -> bool {
        if self.peek() == Some(&DotTok::Punct(match p {
            "{" => "{",
            "}" => "}",
            "[" => "[",
            "]" => "]",
            ";" => ";",
            "," => ",",
            "=" => "=",
            "->" => "->",
            "--" => "--",
            ":" => ":",
            _ => unreachable!(),
        })) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        match self.peek() {
            Some(DotTok::Id(s)) if s.eq_ignore_ascii_case(k) => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.peek().cloned() {
            Some(DotTok::Id(s)) if !DOT_KEYWORDS.iter().any(|k| s.eq_ignore_ascii_case(k)) => {
                self.pos += 1;
                Ok(s)
            }
            other => Err(format!("expected ID at token {}, found {other:?}", self.pos)),
        }
    }

    fn attr_list(&mut self) -> Result<(), String> {
        while self.punct("[") {
            while !self.punct("]") {
                self.id()?;
                if !self.punct("=") {
                    return Err("expected `=` in attribute list".into());
                }
                self.id()?;
                let _ = self.punct(";") || self.punct(",");
            }
        }
        Ok(())
    }

    fn node_id(&mut self) -> Result<String, String> {
        let id = self.id()?;
        if self.punct(":") {
            self.id()?;
            if self.punct(":") {
                self.id()?;
            }
        }
        Ok(id)
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
            if !matches!(self.peek(), Some(DotTok::Punct("["))) {
                return Err("attribute statement without attribute list".into());
            }
            return self.attr_list();
        }
        if matches!(self.peek(), Some(DotTok::Id(s)) if s == "subgraph") || matches!(self.peek(), Some(DotTok::Punct("{"))) {
            return Err("subgraphs are not expected in this output".into());
        }
        let first = self.node_id()?;
        if self.punct("=") {
            self.id()?;
            return Ok(());
        }
        let op = if self.directed { "->" } else { "--" };
        let mut prev = first.clone();
        let mut had_edge = false;
        while self.punct(op) {
            let next = self.node_id()?;
            self.out.edges.push((prev, next.clone()));
            prev = next;
            had_edge = true;
        }
        if !had_edge {
            self.out.nodes.push(first);
        }
        self.attr_list()
    }

    fn graph(&mut self) -> Result<(), String> {
        self.keyword("strict");
        if self.keyword("digraph") {
            self.directed = true;
        } else if !self.keyword("graph") {
            return Err("expected graph or digraph".into());
        }
        self.out.directed = self.directed;
        if !matches!(self.peek(), Some(DotTok::Punct("{"))) {
            self.out.name = Some(self.id()?);
        }
        if !self.punct("{") {
            return Err("expected `{`".into());
        }
        while !self.punct("}") {
            if self.peek().is_none() {
                return Err("unexpected end of input".into());
            }
            self.stmt()?;
            self.punct(";");
        }
        if self.pos != self.toks.len() {
            return Err("trailing tokens after graph".into());
        }
        Ok(())
    }
}

/// Checks `text` against the DOT grammar (no subgraphs or HTML labels) and
/// returns its nodes and edges.
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let mut p = DotParser {
        toks: dot_lex(text)?,
        pos: 0,
        directed: false,
        out: DotGraph::default(),
    };
    p.graph()?;
    Ok(p.out)
}

// ---------------------------------------------------------------------------
// Random documents

const CONCEPTS: [&str; 6] = ["Alpha", "Beta", "Gamma", "Delta", "Epsilon", "Zeta"];
const RELATIONS: [&str; 3] = ["has-part", "is-part-of", "touches"];
const TERNARY: [&str; 2] = ["part-during", "present-in-at"];
const METAS: [&str; 2] = ["Rigidish", "Emptyish"];

fn pick<'a, R: Rng>(rng: &mut R, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).unwrap()
}

fn string<R: Rng>(rng: &mut R) -> String {
    const WORDS: [&str; 10] = ["every", "part", "is", "a", "WHOLE", "of", "x", "\\\"quoted\\\"", "back\\\\slash", "t'"];
    let n = rng.gen_range(0..6);
    let words: Vec<&str> = (0..n).map(|_| pick(rng, &WORDS)).collect();
    format!("\"{}\"", words.join(" "))
}

fn axiom_ref<R: Rng>(rng: &mut R) -> String {
    let fam = pick(rng, &["A", "D", "T"]);
    let num = rng.gen_range(1..120);
    let letters = if rng.gen_bool(0.3) { pick(rng, &["a", "b", "c"]) } else { "" };
    let primes = "'".repeat(rng.gen_range(0..3));
    format!("{fam}d{num}{letters}{primes}")
}

fn label<R: Rng>(rng: &mut R, kind: &str) -> String {
    let refs = match rng.gen_range(0..4) {
        0 => String::new(),
        1 | 2 => format!("{}; ", axiom_ref(rng)),
        _ => format!("{}, {}; ", axiom_ref(rng), axiom_ref(rng)),
    };
    let modality = pick(rng, &["EP", "CP"]);
    format!("[{refs}{modality}/{kind}]")
}

fn gloss<R: Rng>(rng: &mut R) -> String {
    if rng.gen_bool(0.4) {
        format!(" gloss {}", string(rng))
    } else {
        String::new()
    }
}

fn free_text<R: Rng>(rng: &mut R, arity: usize) -> String {
    if rng.gen_bool(0.5) {
        let vars = ["x", "y", "z"];
        let vs = vars[..arity].join(" ");
        format!(
            "text {} formula \"(forall ({vs}) (imp (pred p {vs}) (pred q {vs})))\"",
            string(rng)
        )
    } else {
        format!("text {}", string(rng))
    }
}

fn concept_prop<R: Rng>(rng: &mut R, meta: bool) -> String {
    let pool: &[&str] = if meta { &METAS } else { &CONCEPTS };
    let kinds: &[&str] = if meta {
        &["NMC", "SL", "SLD", "SMC", "NSMC"]
    } else {
        &["NMC", "SL", "ER", "VR", "EVR", "CR", "ICL", "SMC", "NSMC", "SLD", "NSIC", "NIC", "SIC", "UC", "EDC"]
    };
    let kind = pick(rng, kinds);
    let payload = match kind {
        "SL" => format!("isa {}", pick(rng, pool)),
        "SLD" => {
            let as_pred = if rng.gen_bool(0.3) { " as delta_1" } else { "" };
            format!("isa {} diff {}{as_pred}", pick(rng, pool), string(rng))
        }
        "ER" => {
            let card = pick(rng, &["some", "exactly-one"]);
            if rng.gen_bool(0.7) {
                format!("{card} {} -> {}", pick(rng, &RELATIONS), pick(rng, &CONCEPTS))
            } else {
                format!("{card} {} -> {}, {}", pick(rng, &TERNARY), pick(rng, &CONCEPTS), pick(rng, &CONCEPTS))
            }
        }
        "VR" => format!("only {} -> {}", pick(rng, &RELATIONS), pick(rng, &CONCEPTS)),
        "EVR" => format!("only {} -> text {}", pick(rng, &RELATIONS), string(rng)),
        "CR" => format!("const {} -> k{}", pick(rng, &RELATIONS), rng.gen_range(0..9)),
        "ICL" => format!("not {}", pick(rng, pool)),
        "NSIC" | "NIC" | "SIC" => {
            if rng.gen_bool(0.5) {
                format!("id {}", pick(rng, &RELATIONS))
            } else {
                format!("id text {}", string(rng))
            }
        }
        "UC" => {
            if rng.gen_bool(0.5) {
                format!("unity {}", pick(rng, &RELATIONS))
            } else {
                format!("unity text {}", string(rng))
            }
        }
        "EDC" => format!("edc {}", pick(rng, &CONCEPTS)),
        _ => free_text(rng, 1),
    };
    format!("    {} {payload}{};\n", label(rng, kind), gloss(rng))
}

fn argspec<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..5) {
        0 => "*".to_string(),
        1 => format!("text {}", string(rng)),
        2 => format!("any({} | {})", pick(rng, &CONCEPTS), pick(rng, &CONCEPTS)),
        3 => format!("all({} & {})", pick(rng, &CONCEPTS), pick(rng, &CONCEPTS)),
        _ => pick(rng, &CONCEPTS).to_string(),
    }
}

fn relation_prop<R: Rng>(rng: &mut R, arity: usize) -> String {
    let pool: &[&str] = if arity == 2 { &RELATIONS } else { &TERNARY };
    let kinds: &[&str] = if arity == 2 {
        &["NMC", "SL", "SIG", "IL", "SMC", "NSMC", "SLD", "IVL", "DR & RR"]
    } else {
        &["NMC", "SL", "SIG", "SMC", "NSMC", "SLD", "VR1 & VR2 & VR3"]
    };
    let kind = pick(rng, kinds);
    let payload = match kind {
        "SL" => format!("isa {}", pick(rng, pool)),
        "SLD" => format!("isa {} diff {}", pick(rng, pool), string(rng)),
        "SIG" | "DR & RR" | "VR1 & VR2 & VR3" => {
            let args: Vec<String> = (0..arity).map(|_| argspec(rng)).collect();
            format!("sig ({})", args.join(", "))
        }
        "IL" => format!("notrel {}", pick(rng, pool)),
        "IVL" => format!("inverse {}", pick(rng, pool)),
        _ => free_text(rng, arity),
    };
    format!("    {} {payload}{};\n", label(rng, kind), gloss(rng))
}

fn meta_block<R: Rng>(rng: &mut R) -> String {
    let mut items = Vec::new();
    if rng.gen_bool(0.6) {
        items.push(format!("rigidity: {}R", pick(rng, &["+", "-", "~"])));
    }
    if rng.gen_bool(0.5) {
        items.push(format!("identity: {}I", pick(rng, &["+", "-"])));
    }
    if rng.gen_bool(0.2) {
        items.push("supplies-identity".to_string());
    }
    if rng.gen_bool(0.5) {
        items.push(format!("unity: {}U", pick(rng, &["+", "-", "~"])));
    }
    if rng.gen_bool(0.5) {
        items.push(format!("dependence: {}D", pick(rng, &["+", "-"])));
    }
    if rng.gen_bool(0.3) {
        items.push(pick(rng, &["defined", "primitive"]).to_string());
    }
    if rng.gen_bool(0.4) {
        items.push("non-empty".to_string());
    }
    if rng.gen_bool(0.2) {
        items.push("strongly-non-empty".to_string());
    }
    for pair in [
        ["cumulative", "anti-cumulative"],
        ["homeomerous", "anti-homeomerous"],
        ["atomic-prop", "anti-atomic-prop"],
    ] {
        if rng.gen_bool(0.25) {
            let r = if rng.gen_bool(0.3) { format!(" ref {}", axiom_ref(rng)) } else { String::new() };
            items.push(format!("{}{r}", pick(rng, &pair)));
        }
    }
    for _ in 0..rng.gen_range(0..2) {
        let members: Vec<&str> = (0..rng.gen_range(2..4)).map(|_| pick(rng, &CONCEPTS)).collect();
        let r = if rng.gen_bool(0.3) { format!(" ref {}", axiom_ref(rng)) } else { String::new() };
        items.push(format!("partition ({}){r}", members.join(", ")));
    }
    for _ in 0..rng.gen_range(0..2) {
        let kind = pick(rng, &["SD", "OSD", "MSD", "GD", "SD_s", "P-1GD_s", "MGK", "K"]);
        let r = if rng.gen_bool(0.3) { format!(" ref {}", axiom_ref(rng)) } else { String::new() };
        items.push(format!("dep {kind} -> {}{r}", pick(rng, &CONCEPTS)));
    }
    if items.is_empty() {
        return String::new();
    }
    let sep = if rng.gen_bool(0.5) { "\n    " } else { " " };
    format!("  meta {{{sep}{}\n  }}\n", items.join(sep))
}

fn comment_block<R: Rng>(rng: &mut R) -> String {
    let n = rng.gen_range(0..3);
    if n == 0 {
        return String::new();
    }
    let mut s = String::from("  comment {\n");
    for _ in 0..n {
        let tag = pick(rng, &["SA", "EX", "CEX", "CIT", "DIV", "DEF"]);
        if tag == "CIT" {
            s.push_str(&format!("    CIT \"D18, p. {}\" {};\n", rng.gen_range(1..40), string(rng)));
        } else {
            s.push_str(&format!("    {tag} {};\n", string(rng)));
        }
    }
    s.push_str("  }\n");
    s
}

/// A random document that parses without errors (names may not resolve).
pub fn random_document<R: Rng>(rng: &mut R) -> String {
    let mut s = String::from("# generated\nontology \"Random\"\n");
    let mut declared: Vec<(String, String)> = Vec::new();
    for c in CONCEPTS {
        if rng.gen_bool(0.7) {
            declared.push((format!("concept {c}"), c.to_string()));
        }
    }
    for r in RELATIONS {
        if rng.gen_bool(0.6) {
            declared.push((format!("relation/2 {r}"), r.to_string()));
        }
    }
    for r in TERNARY {
        if rng.gen_bool(0.4) {
            declared.push((format!("relation/3 {r}"), r.to_string()));
        }
    }
    for m in METAS {
        if rng.gen_bool(0.3) {
            declared.push((format!("metaconcept {m}"), m.to_string()));
        }
    }
    if rng.gen_bool(0.3) {
        declared.push(("metarelation Relatesish".into(), "Relatesish".into()));
    }
    declared.shuffle(rng);
    for (i, (head, _)) in declared.iter().enumerate() {
        let alias = if rng.gen_bool(0.4) { format!(" alias Al{i}") } else { String::new() };
        s.push_str(&format!("\n{head}{alias} {{\n"));
        let concept = head.starts_with("concept") || head.starts_with("metaconcept");
        if concept && rng.gen_bool(0.7) {
            s.push_str(&meta_block(rng));
        }
        let n = rng.gen_range(0..5);
        if n > 0 {
            s.push_str("  props {\n");
            for _ in 0..n {
                let p = if head.starts_with("concept") {
                    concept_prop(rng, false)
                } else if head.starts_with("metaconcept") {
                    concept_prop(rng, true)
                } else if head.starts_with("relation/3") {
                    relation_prop(rng, 3)
                } else {
                    relation_prop(rng, 2)
                };
                s.push_str(&p);
            }
            s.push_str("  }\n");
        }
        s.push_str(&comment_block(rng));
        s.push_str("}\n");
    }
    s
}
