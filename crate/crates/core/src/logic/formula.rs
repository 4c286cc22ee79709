use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "'{c}"),
        }
    }
}

/// First-order formula with a necessity operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Box(Box<Formula>),
}

/// Variable names in schema order: x, y, z, w, t, s, then x1, x2, ...
pub fn var_name(i: usize) -> String {
    const BASE: [&str; 6] = ["x", "y", "z", "w", "t", "s"];
    match BASE.get(i) {
        Some(v) => v.to_string(),
        None => format!("x{}", i - BASE.len() + 1),
    }
}

pub fn v(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn pred(name: &str, args: &[&str]) -> Formula {
    Formula::Pred(name.to_string(), args.iter().map(|a| v(a)).collect())
}

pub fn pred_terms(name: &str, args: Vec<Term>) -> Formula {
    Formula::Pred(name.to_string(), args)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

/// Conjunction; a single conjunct is returned as is.
pub fn and(mut fs: Vec<Formula>) -> Formula {
    assert!(!fs.is_empty(), "empty conjunction");
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Formula::And(fs)
    }
}

/// Disjunction; a single disjunct is returned as is.
pub fn or(mut fs: Vec<Formula>) -> Formula {
    assert!(!fs.is_empty(), "empty disjunction");
    if fs.len() == 1 {
        fs.pop().unwrap()
    } else {
        Formula::Or(fs)
    }
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Imp(Box::new(a), Box::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

pub fn forall(vars: &[&str], body: Formula) -> Formula {
    Formula::Forall(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
}

pub fn exists(vars: &[&str], body: Formula) -> Formula {
    Formula::Exists(vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
}

pub fn nec(f: Formula) -> Formula {
    Formula::Box(Box::new(f))
}

pub fn eq(a: &str, b: &str) -> Formula {
    Formula::Eq(v(a), v(b))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, xs: &[Formula]| {
            write!(f, "({op}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            f.write_str(")")
        };
        match self {
            Formula::Pred(p, ts) => {
                write!(f, "(pred {p}")?;
                for t in ts {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            Formula::Eq(a, b) => write!(f, "(eq {a} {b})"),
            Formula::Not(x) => write!(f, "(not {x})"),
            Formula::And(xs) => list(f, "and", xs),
            Formula::Or(xs) => list(f, "or", xs),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(iff {a} {b})"),
            Formula::Forall(vs, b) => write!(f, "(forall ({}) {b})", vs.join(" ")),
            Formula::Exists(vs, b) => write!(f, "(exists ({}) {b})", vs.join(" ")),
            Formula::Box(x) => write!(f, "(box {x})"),
        }
    }
}

/// Canonical s-expression text of a formula.
pub fn emit_osf(f: &Formula) -> String {
    f.to_string()
}

/// Variables occurring free in `f`.
pub fn free_variables(f: &Formula) -> BTreeSet<String> {
    fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match f {
            Formula::Pred(_, ts) => ts.iter().for_each(|t| term(t, bound, out)),
            Formula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Formula::Not(x) | Formula::Box(x) => go(x, bound, out),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, bound, out)),
            Formula::Imp(a, b) | Formula::Iff(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Formula::Forall(vs, b) | Formula::Exists(vs, b) => {
                let n = bound.len();
                bound.extend(vs.iter().cloned());
                go(b, bound, out);
                bound.truncate(n);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

/// Predicate symbols with their arities, in first-occurrence order.
pub fn predicates(f: &Formula) -> Vec<(String, usize)> {
    fn go(f: &Formula, out: &mut Vec<(String, usize)>) {
        match f {
            Formula::Pred(p, ts) => {
                if !out.iter().any(|(q, n)| q == p && *n == ts.len()) {
                    out.push((p.clone(), ts.len()));
                }
            }
            Formula::Eq(..) => {}
            Formula::Not(x) | Formula::Box(x) => go(x, out),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, out)),
            Formula::Imp(a, b) | Formula::Iff(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => go(b, out),
        }
    }
    let mut out = Vec::new();
    go(f, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("formula syntax error at offset {offset}: {message}")]
pub struct OsfError {
    pub offset: usize,
    pub message: String,
}

/// Parses OSF text back into a formula. Accepts exactly the emitter's
/// grammar, with arbitrary whitespace between tokens.
pub fn parse_osf(text: &str) -> Result<Formula, OsfError> {
    let mut p = OsfParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.formula()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

struct OsfParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OsfParser<'_> {
    fn err(&self, m: &str) -> OsfError {
        OsfError {
            offset: self.pos,
            message: m.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), OsfError> {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String, OsfError> {
        self.ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            return Err(self.err("expected identifier"));
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_' || *c == b'-')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term, OsfError> {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            Ok(Term::Const(self.ident()?))
        } else {
            Ok(Term::Var(self.ident()?))
        }
    }

    fn varlist(&mut self) -> Result<Vec<String>, OsfError> {
        self.eat(b'(')?;
        let mut vs = vec![self.ident()?];
        while self.peek() != Some(b')') {
            vs.push(self.ident()?);
        }
        self.eat(b')')?;
        Ok(vs)
    }

    fn formula(&mut self) -> Result<Formula, OsfError> {
        self.eat(b'(')?;
        let op = self.ident()?;
        let f = match op.as_str() {
            "forall" | "exists" => {
                let vs = self.varlist()?;
                let body = Box::new(self.formula()?);
                if op == "forall" {
                    Formula::Forall(vs, body)
                } else {
                    Formula::Exists(vs, body)
                }
            }
            "and" | "or" => {
                let mut xs = vec![self.formula()?];
                while self.peek() == Some(b'(') {
                    xs.push(self.formula()?);
                }
                if xs.len() < 2 {
                    return Err(self.err("`and`/`or` need at least two operands"));
                }
                if op == "and" {
                    Formula::And(xs)
                } else {
                    Formula::Or(xs)
                }
            }
            "not" => Formula::Not(Box::new(self.formula()?)),
            "box" => Formula::Box(Box::new(self.formula()?)),
            "imp" | "iff" => {
                let a = Box::new(self.formula()?);
                let b = Box::new(self.formula()?);
                if op == "imp" {
                    Formula::Imp(a, b)
                } else {
                    Formula::Iff(a, b)
                }
            }
            "pred" => {
                let name = self.ident()?;
                let mut ts = vec![self.term()?];
                while self.peek() != Some(b')') {
                    ts.push(self.term()?);
                }
                Formula::Pred(name, ts)
            }
            "eq" => {
                let a = self.term()?;
                let b = self.term()?;
                Formula::Eq(a, b)
            }
            other => return Err(self.err(&format!("unknown operator `{other}`"))),
        };
        self.eat(b')')?;
        Ok(f)
    }
}
