use std::sync::Arc;

use super::label::parse_label;
use super::lexer::{tokenize, Tok, Token};
use crate::model::*;

/// Outcome of parsing one or more documents.
#[derive(Clone, Debug)]
pub struct ParseResult {
    /// Present iff no Error-severity diagnostic was produced.
    pub ontology: Option<Ontology>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

type PResult<T> = Result<T, ()>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

const ENTITY_KEYWORDS: [&str; 4] = ["concept", "relation", "metaconcept", "metarelation"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&mut self, msg: impl Into<String>) -> PResult<T> {
        let found = self.peek().describe();
        self.diags.push(
            Diagnostic::error("P02", format!("{}, found {}", msg.into(), found)).with_span(self.span()),
        );
        Err(())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            self.error(format!("expected {}", tok.describe()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !s.ends_with('\'') => {
                self.bump();
                Ok(s)
            }
            _ => self.error("expected identifier"),
        }
    }

    fn name_ref(&mut self) -> PResult<NameRef> {
        self.ident().map(NameRef::new)
    }

    fn string(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("expected string"),
        }
    }

    fn next_is_string(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Tok::Str(_))
    }

    /// Skips to the next `;` (consumed) or `}` (left in place).
    fn recover(&mut self) {
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    return;
                }
                Tok::RBrace | Tok::Eof => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn axiom_ref(&mut self) -> PResult<AxiomRef> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.span();
                self.bump();
                s.parse::<AxiomRef>().map_err(|e| {
                    self.diags
                        .push(Diagnostic::error("P05", e.to_string()).with_span(span));
                })
            }
            _ => self.error("expected axiom reference"),
        }
    }

    fn ref_tail(&mut self) -> PResult<Vec<AxiomRef>> {
        let mut refs = Vec::new();
        if self.eat_kw("ref") {
            refs.push(self.axiom_ref()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                refs.push(self.axiom_ref()?);
            }
        }
        Ok(refs)
    }

    fn document(&mut self, ontology: &mut Ontology) {
        if self.eat_kw("ontology") {
            if let Ok(t) = self.string() {
                ontology.title = t;
            }
        } else {
            let _ = self.error::<()>("expected `ontology \"title\"`");
        }
        while !self.at_eof() {
            let is_entity = matches!(self.peek(), Tok::Ident(s) if ENTITY_KEYWORDS.contains(&s.as_str()));
            if is_entity {
                let start = self.pos;
                match self.entity() {
                    Ok(e) => {
                        let span = e.span.clone();
                        let name = e.name.canonical.clone();
                        if let Err(key) = ontology.push(e) {
                            self.diags.push(
                                Diagnostic::error("P06", format!("duplicate entity name or alias `{key}`"))
                                    .with_entity(name)
                                    .with_span(span),
                            );
                        }
                    }
                    Err(()) => {
                        self.recover_entity();
                        if self.pos == start {
                            self.bump();
                        }
                    }
                }
            } else {
                let _ = self.error::<()>("expected entity declaration");
                self.recover_entity();
            }
        }
    }

    /// Skips to the token after the next `}` at nesting depth 0, or to the
    /// next entity keyword, whichever comes first.
    fn recover_entity(&mut self) {
        let mut depth = 0usize;
        let start = self.pos;
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    if depth <= 1 {
                        self.bump();
                        return;
                    }
                    depth -= 1;
                }
                Tok::Ident(s) if depth == 0 && self.pos > start && ENTITY_KEYWORDS.contains(&s.as_str()) => {
                    return
                }
                _ => {}
            }
            self.bump();
        }
    }

    fn entity(&mut self) -> PResult<Entity> {
        let start = self.span();
        let kw = self.ident()?;
        let kind = match kw.as_str() {
            "concept" => EntityKind::Concept,
            "metaconcept" => EntityKind::MetaConcept,
            "metarelation" => EntityKind::MetaRelation,
            _ => {
                self.expect(Tok::Slash)?;
                match self.peek().clone() {
                    Tok::Int(n) if n >= 2 => {
                        self.bump();
                        EntityKind::Relation { arity: n }
                    }
                    Tok::Int(_) => return self.error("relation arity must be at least 2"),
                    _ => return self.error("expected relation arity"),
                }
            }
        };
        let name = self.ident()?;
        let alias = if self.eat_kw("alias") {
            Some(self.ident()?)
        } else {
            None
        };
        let mut entity = Entity::new(EntityName::new(name, alias), kind);
        self.expect(Tok::LBrace)?;
        let mut seen_meta = false;
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof => {
                    self.error::<()>("unterminated entity")?;
                }
                Tok::Ident(b) if b == "meta" || b == "props" || b == "comment" => {
                    self.bump();
                    self.expect(Tok::LBrace)?;
                    match b.as_str() {
                        "meta" => {
                            if seen_meta {
                                self.diags.push(
                                    Diagnostic::error("P02", "duplicate `meta` block")
                                        .with_span(self.prev_span()),
                                );
                            }
                            seen_meta = true;
                            self.meta_block(&mut entity)
                        }
                        "props" => self.props_block(&mut entity),
                        _ => self.comment_block(&mut entity),
                    }
                    self.expect(Tok::RBrace)?;
                }
                _ => {
                    let _ = self.error::<()>("expected `meta`, `props`, `comment` or `}`");
                    // Skip one token and any balanced group it opens.
                    self.skip_group();
                }
            }
        }
        entity.meta.status_refs.sort_by_key(|(flag, _)| *flag);
        entity.span = start.to(&self.prev_span());
        Ok(entity)
    }

    fn skip_group(&mut self) {
        if *self.peek() == Tok::LBrace {
            let mut depth = 0usize;
            loop {
                match self.peek() {
                    Tok::Eof => return,
                    Tok::LBrace => depth += 1,
                    Tok::RBrace => {
                        depth -= 1;
                        if depth == 0 {
                            self.bump();
                            return;
                        }
                    }
                    _ => {}
                }
                self.bump();
            }
        } else {
            self.bump();
        }
    }

    fn item_loop(&mut self, entity: &mut Entity, item: fn(&mut Parser, &mut Entity) -> PResult<()>) {
        while !matches!(self.peek(), Tok::RBrace | Tok::Eof) {
            let start = self.pos;
            if item(self, entity).is_err() {
                self.recover();
                if self.pos == start {
                    self.bump();
                }
            }
        }
    }

    fn meta_block(&mut self, entity: &mut Entity) {
        self.item_loop(entity, Parser::meta_item);
    }

    fn props_block(&mut self, entity: &mut Entity) {
        self.item_loop(entity, Parser::prop);
    }

    fn comment_block(&mut self, entity: &mut Entity) {
        self.item_loop(entity, Parser::comment_item);
    }

    fn status_letter(&mut self, letter: &str, allow_anti: bool) -> PResult<char> {
        let sign = match self.peek() {
            Tok::Plus => '+',
            Tok::Minus => '-',
            Tok::Tilde if allow_anti => '~',
            _ => return self.error(format!("expected +{letter} or -{letter}")),
        };
        self.bump();
        match self.peek() {
            Tok::Ident(s) if s == letter => {
                self.bump();
                Ok(sign)
            }
            _ => self.error(format!("expected `{letter}` after sign")),
        }
    }

    fn dup_meta(&mut self, what: &str, span: &SourceSpan) {
        self.diags.push(
            Diagnostic::error("P02", format!("`{what}` declared more than once")).with_span(span.clone()),
        );
    }

    fn meta_item(&mut self, e: &mut Entity) -> PResult<()> {
        let span = self.span();
        let kw = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return self.error("expected meta item"),
        };
        self.bump();
        let m = &mut e.meta;
        match kw.as_str() {
            "rigidity" => {
                self.expect(Tok::Colon)?;
                let r = match self.status_letter("R", true)? {
                    '+' => Rigidity::Rigid,
                    '-' => Rigidity::NonRigid,
                    _ => Rigidity::AntiRigid,
                };
                if e.meta.rigidity.replace(r).is_some() {
                    self.dup_meta("rigidity", &span);
                }
            }
            "identity" => {
                self.expect(Tok::Colon)?;
                let i = match self.status_letter("I", false)? {
                    '+' => Identity::Carries,
                    _ => Identity::NotCarries,
                };
                if e.meta.identity.replace(i).is_some() {
                    self.dup_meta("identity", &span);
                }
            }
            "unity" => {
                self.expect(Tok::Colon)?;
                let u = match self.status_letter("U", true)? {
                    '+' => Unity::Carries,
                    '-' => Unity::NotCarries,
                    _ => Unity::Anti,
                };
                if e.meta.unity.replace(u).is_some() {
                    self.dup_meta("unity", &span);
                }
            }
            "dependence" => {
                self.expect(Tok::Colon)?;
                let d = match self.status_letter("D", false)? {
                    '+' => Dependence::Dependent,
                    _ => Dependence::Independent,
                };
                if e.meta.dependence.replace(d).is_some() {
                    self.dup_meta("dependence", &span);
                }
            }
            "supplies-identity" => {
                if std::mem::replace(&mut m.supplies_identity, true) {
                    self.dup_meta(&kw, &span);
                }
            }
            "non-empty" => {
                if std::mem::replace(&mut m.non_empty, true) {
                    self.dup_meta(&kw, &span);
                }
            }
            "strongly-non-empty" => {
                if std::mem::replace(&mut m.strongly_non_empty, true) {
                    self.dup_meta(&kw, &span);
                }
            }
            "defined" | "primitive" => {
                let d = if kw == "defined" {
                    Definedness::Defined
                } else {
                    Definedness::Primitive
                };
                if m.definedness.replace(d).is_some() {
                    self.dup_meta("definedness", &span);
                }
            }
            "partition" => {
                self.expect(Tok::LParen)?;
                let mut members = vec![self.name_ref()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    members.push(self.name_ref()?);
                }
                self.expect(Tok::RParen)?;
                if members.len() < 2 {
                    self.diags.push(
                        Diagnostic::error("P02", "a partition needs at least two members")
                            .with_span(span.clone()),
                    );
                }
                let axiom_refs = self.ref_tail()?;
                e.partitions.push(PartitionDecl {
                    members,
                    axiom_refs,
                });
            }
            "dep" => {
                let kspan = self.span();
                let sym = self.ident()?;
                let kind = match MetaLinkKind::from_symbol(&sym) {
                    Some(k) => k,
                    None => {
                        self.diags.push(
                            Diagnostic::error("P02", format!("unknown dependence kind `{sym}`"))
                                .with_span(kspan),
                        );
                        return Err(());
                    }
                };
                self.expect(Tok::Arrow)?;
                let target = self.name_ref()?;
                let axiom_refs = self.ref_tail()?;
                e.meta_links.push(MetaLink {
                    kind,
                    target,
                    axiom_refs,
                });
            }
            other => match StatusFlag::from_keyword(other) {
                Some(flag) => {
                    let (slot, pol) = match flag {
                        StatusFlag::Cumulative => (&mut m.cumulativity, Polarity::Positive),
                        StatusFlag::AntiCumulative => (&mut m.cumulativity, Polarity::Anti),
                        StatusFlag::Homeomerous => (&mut m.homeomericity, Polarity::Positive),
                        StatusFlag::AntiHomeomerous => (&mut m.homeomericity, Polarity::Anti),
                        StatusFlag::Atomic => (&mut m.atomicity, Polarity::Positive),
                        StatusFlag::AntiAtomic => (&mut m.atomicity, Polarity::Anti),
                    };
                    let dup = slot.replace(pol).is_some();
                    if dup {
                        self.dup_meta(other, &span);
                    }
                    let refs = self.ref_tail()?;
                    e.meta.status_refs.extend(refs.into_iter().map(|r| (flag, r)));
                }
                None => {
                    self.pos -= 1;
                    return self.error("expected meta item");
                }
            },
        }
        if *self.peek() == Tok::Semi {
            self.bump();
        }
        Ok(())
    }

    fn comment_item(&mut self, e: &mut Entity) -> PResult<()> {
        let span = self.span();
        let tag = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return self.error("expected comment tag"),
        };
        let Some(tag) = CommentTag::from_tag(&tag) else {
            self.diags.push(
                Diagnostic::error("P04", format!("unknown comment tag `{tag}`")).with_span(span),
            );
            return Err(());
        };
        self.bump();
        let (source, text) = if tag == CommentTag::Cit {
            let source = self.string()?;
            (Some(source), self.string()?)
        } else {
            (None, self.string()?)
        };
        self.expect(Tok::Semi)?;
        e.comments.push(CommentItem { tag, source, text });
        Ok(())
    }

    fn prop(&mut self, e: &mut Entity) -> PResult<()> {
        let (raw, lspan) = match self.peek().clone() {
            Tok::Label(s) => (s, self.span()),
            _ => return self.error("expected condition label `[...]`"),
        };
        self.bump();
        let label = parse_label(&raw, &lspan, &mut self.diags);
        let (payload, form) = self.payload()?;
        let gloss = if self.eat_kw("gloss") {
            Some(self.string()?)
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        let Some(kind) = label.kind else {
            return Ok(());
        };
        let form_ok = match form {
            "not" => kind == ConditionKind::Icl,
            "notrel" => kind == ConditionKind::Il,
            _ => true,
        };
        if !form_ok || !payload.fits(kind) {
            self.diags.push(
                Diagnostic::error(
                    "P02",
                    format!("label `{}` does not match a `{form}` payload", label.text),
                )
                .with_span(lspan.clone()),
            );
            return Ok(());
        }
        e.conditions.push(Condition {
            modality: label.modality,
            kind,
            label: label.text,
            payload,
            axiom_refs: label.axiom_refs,
            gloss,
            span: lspan.to(&self.prev_span()),
        });
        Ok(())
    }

    fn text_or<T>(&mut self, rel: impl FnOnce(NameRef) -> T, text: impl FnOnce(String) -> T) -> PResult<T> {
        if self.is_kw("text") && self.next_is_string(1) {
            self.bump();
            Ok(text(self.string()?))
        } else {
            Ok(rel(self.name_ref()?))
        }
    }

    fn payload(&mut self) -> PResult<(ConditionPayload, &'static str)> {
        use ConditionPayload as P;
        let kw = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return self.error("expected condition payload"),
        };
        self.bump();
        let p = match kw.as_str() {
            "isa" => {
                let target = self.name_ref()?;
                if self.eat_kw("diff") {
                    let differentia = self.string()?;
                    let predicate = if self.eat_kw("as") {
                        Some(self.ident()?)
                    } else {
                        None
                    };
                    (
                        P::Differentia {
                            target,
                            differentia,
                            predicate,
                        },
                        "isa",
                    )
                } else {
                    (P::Subsumption { target }, "isa")
                }
            }
            "some" | "exactly-one" => {
                let cardinality = if kw == "some" {
                    Cardinality::Some
                } else {
                    Cardinality::ExactlyOne
                };
                let relation = self.name_ref()?;
                self.expect(Tok::Arrow)?;
                let mut targets = vec![self.name_ref()?];
                if *self.peek() == Tok::Comma {
                    self.bump();
                    targets.push(self.name_ref()?);
                }
                (
                    P::Existential {
                        cardinality,
                        relation,
                        targets,
                    },
                    "some",
                )
            }
            "only" => {
                let relation = self.name_ref()?;
                self.expect(Tok::Arrow)?;
                if self.is_kw("text") && self.next_is_string(1) {
                    self.bump();
                    let target_text = self.string()?;
                    (
                        P::ExtendedValue {
                            relation,
                            target_text,
                        },
                        "only",
                    )
                } else {
                    let target = self.name_ref()?;
                    (P::Value { relation, target }, "only")
                }
            }
            "const" => {
                let relation = self.name_ref()?;
                self.expect(Tok::Arrow)?;
                let constant = self.ident()?;
                (P::Constant { relation, constant }, "const")
            }
            "not" => (P::Incompatible { target: self.name_ref()? }, "not"),
            "notrel" => (P::Incompatible { target: self.name_ref()? }, "notrel"),
            "inverse" => (P::Inverse { target: self.name_ref()? }, "inverse"),
            "edc" => (P::ExternalDependence { target: self.name_ref()? }, "edc"),
            "id" => (self.text_or(|n| P::Identity(Criterion::Rel(n)), |t| P::Identity(Criterion::Text(t)))?, "id"),
            "unity" => (self.text_or(|n| P::Unity(Criterion::Rel(n)), |t| P::Unity(Criterion::Text(t)))?, "unity"),
            "sig" => {
                self.expect(Tok::LParen)?;
                let mut args = vec![self.arg_spec()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.arg_spec()?);
                }
                self.expect(Tok::RParen)?;
                (P::Signature { args }, "sig")
            }
            "text" => {
                let text = self.string()?;
                let formula = if self.eat_kw("formula") {
                    Some(self.string()?)
                } else {
                    None
                };
                (P::FreeForm { text, formula }, "text")
            }
            _ => {
                self.pos -= 1;
                return self.error("expected condition payload");
            }
        };
        Ok(p)
    }

    fn arg_spec(&mut self) -> PResult<ArgSpec> {
        if *self.peek() == Tok::Star {
            self.bump();
            return Ok(ArgSpec::Unrestricted);
        }
        if self.is_kw("text") && self.next_is_string(1) {
            self.bump();
            return Ok(ArgSpec::Text(self.string()?));
        }
        for (kw, sep) in [("any", Tok::Pipe), ("all", Tok::Amp)] {
            if self.is_kw(kw) && *self.peek_at(1) == Tok::LParen {
                self.bump();
                self.bump();
                let mut names = vec![self.name_ref()?];
                while *self.peek() == sep {
                    self.bump();
                    names.push(self.name_ref()?);
                }
                self.expect(Tok::RParen)?;
                return Ok(if kw == "any" {
                    ArgSpec::AnyOf(names)
                } else {
                    ArgSpec::AllOf(names)
                });
            }
        }
        Ok(ArgSpec::One(self.name_ref()?))
    }
}

fn parse_into(
    source: &str,
    file: &str,
    ontology: &mut Ontology,
    diags: &mut Vec<Diagnostic>,
    take_title: bool,
) {
    let file: Arc<str> = Arc::from(file);
    let (toks, lex_diags) = tokenize(source, &file);
    diags.extend(lex_diags);
    let mut p = Parser {
        toks,
        pos: 0,
        diags: Vec::new(),
    };
    let mut doc = Ontology::new("");
    p.document(&mut doc);
    diags.append(&mut p.diags);
    if take_title {
        ontology.title = doc.title;
    }
    for e in doc.entities {
        let span = e.span.clone();
        let name = e.name.canonical.clone();
        if let Err(key) = ontology.push(e) {
            diags.push(
                Diagnostic::error("P06", format!("duplicate entity name or alias `{key}`"))
                    .with_entity(name)
                    .with_span(span),
            );
        }
    }
}

fn finish(ontology: Ontology, mut diagnostics: Vec<Diagnostic>) -> ParseResult {
    diagnostics.sort_by(|a, b| a.span.cmp(&b.span).then(a.code.cmp(b.code)));
    let ok = !diagnostics.iter().any(Diagnostic::is_error);
    ParseResult {
        ontology: ok.then_some(ontology),
        diagnostics,
    }
}

/// Parses one document into an unresolved ontology.
pub fn parse_document(source: &str, file: &str) -> ParseResult {
    let mut o = Ontology::new("");
    let mut diags = Vec::new();
    parse_into(source, file, &mut o, &mut diags, true);
    finish(o, diags)
}

/// Parses several documents and merges them in order. The first document
/// supplies the title; names must be unique across all of them.
pub fn parse_documents<'a>(docs: impl IntoIterator<Item = (&'a str, &'a str)>) -> ParseResult {
    let mut o = Ontology::new("");
    let mut diags = Vec::new();
    for (i, (source, file)) in docs.into_iter().enumerate() {
        parse_into(source, file, &mut o, &mut diags, i == 0);
    }
    finish(o, diags)
}
