//! Sub-grammar of condition labels: `[refs; MODALITY/KIND]`.

use crate::model::{AxiomRef, ConditionKind, Diagnostic, Modality, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedLabel {
    pub axiom_refs: Vec<AxiomRef>,
    pub modality: Modality,
    /// None when the kind spelling is unknown (P03 already reported).
    pub kind: Option<ConditionKind>,
    /// Kind spelling as written, trimmed.
    pub text: String,
}

/// One slot of a composite argument-signature label, e.g. `DR`, `VR2`.
fn sig_piece(piece: &str) -> Option<bool> {
    const PLAIN: [&str; 7] = ["DR", "RR", "DDR", "DRR", "CDR", "CRR", "SIG"];
    if PLAIN.contains(&piece) {
        return Some(false);
    }
    let numbered = |prefix: &str| {
        piece
            .strip_prefix(prefix)
            .map(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
            .unwrap_or(false)
    };
    if numbered("VR") {
        return Some(false);
    }
    // `R3`, `DR1`: slot shorthands found in printed labels.
    if numbered("DR") || numbered("R") {
        return Some(true);
    }
    None
}

/// Classifies a kind spelling. Returns the kind and, for alias spellings,
/// the canonical form to mention in the P07 warning.
pub fn classify_kind(text: &str) -> Option<(ConditionKind, Option<&'static str>)> {
    if let Some(k) = ConditionKind::from_acronym(text) {
        return Some((k, None));
    }
    match text {
        "MIL" => return Some((ConditionKind::Ivl, Some("IVL"))),
        "NC" => return Some((ConditionKind::Nmc, Some("NMC"))),
        _ => {}
    }
    let mut shorthand = false;
    for piece in text.split('&') {
        shorthand |= sig_piece(piece.trim())?;
    }
    Some((ConditionKind::Sig, shorthand.then_some("DR/RR/VRn")))
}

pub fn parse_label(raw: &str, span: &SourceSpan, diags: &mut Vec<Diagnostic>) -> ParsedLabel {
    let (refs_part, rest) = match raw.rfind(';') {
        Some(i) => (Some(&raw[..i]), &raw[i + 1..]),
        None => (None, raw),
    };
    let mut axiom_refs = Vec::new();
    if let Some(refs) = refs_part {
        for r in refs.split(',') {
            let r = r.trim();
            match r.parse::<AxiomRef>() {
                Ok(a) => axiom_refs.push(a),
                Err(e) => diags.push(Diagnostic::error("P05", e.to_string()).with_span(span.clone())),
            }
        }
    }
    let rest = rest.trim();
    let (modality, kind_text) = match rest.split_once('/') {
        Some((m, k)) => {
            let m = m.trim();
            let modality = match m {
                "EP" => Modality::Ep,
                "CP" => Modality::Cp,
                "PE" => {
                    diags.push(
                        Diagnostic::warning("P07", "modality `PE` read as `EP`")
                            .with_span(span.clone()),
                    );
                    Modality::Ep
                }
                other => {
                    diags.push(
                        Diagnostic::error("P02", format!("unknown modality `{other}`, expected EP or CP"))
                            .with_span(span.clone()),
                    );
                    Modality::Ep
                }
            };
            (modality, k.trim())
        }
        None => {
            diags.push(
                Diagnostic::warning("P07", "label without modality read as `EP`")
                    .with_span(span.clone()),
            );
            (Modality::Ep, rest)
        }
    };
    let kind = match classify_kind(kind_text) {
        Some((k, alias)) => {
            if let Some(canonical) = alias {
                diags.push(
                    Diagnostic::warning(
                        "P07",
                        format!("condition kind `{kind_text}` read as `{canonical}`"),
                    )
                    .with_span(span.clone()),
                );
            }
            Some(k)
        }
        None => {
            diags.push(
                Diagnostic::error("P03", format!("unknown condition kind `{kind_text}`"))
                    .with_span(span.clone()),
            );
            None
        }
    };
    ParsedLabel {
        axiom_refs,
        modality,
        kind,
        text: kind_text.to_string(),
    }
}
