//! The line-oriented presentation file format.
//!
//! ```text
//! # B3 with the dual generator z
//! gens: x y z
//! rel: x y x = y x y
//! rel: x y = y z = z x
//! system g: x, x, y, x
//! system h: y^-1 x y, x, y, y^-1 x y
//! ```
//!
//! A relation chain `A = B = C` expands to `A ≡ B`, `B ≡ C` and `A ≡ C`, in
//! that order, with duplicates (up to orientation) dropped.

use std::fmt;

use crate::hurwitz::GSystem;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Letter, PositiveWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateGenerator(String),
    UndeclaredGenerator(String),
    EmptyRelationSide,
    DuplicateSystem(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::DuplicateGenerator(n) => write!(f, "duplicate generator `{n}`"),
            ParseErrorKind::UndeclaredGenerator(n) => write!(f, "undeclared generator `{n}`"),
            ParseErrorKind::EmptyRelationSide => write!(f, "empty relation side"),
            ParseErrorKind::DuplicateSystem(l) => write!(f, "duplicate system label `{l}`"),
        }
    }
}

/// A parsed presentation file: the presentation plus its labelled systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub presentation: Presentation,
    pub systems: Vec<(String, GSystem)>,
}

impl Document {
    pub fn system(&self, label: &str) -> Option<&GSystem> {
        self.systems.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    /// Serializes to the normalized file form.
    pub fn to_text(&self) -> String {
        let mut out = self.presentation.to_text();
        let a = self.presentation.alphabet();
        for (label, sys) in &self.systems {
            let entries: Vec<String> = sys.entries.iter().map(|e| a.show_signed(e)).collect();
            out.push_str(&format!("system {label}: {}\n", entries.join(", ")));
        }
        out
    }
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_document(text).map(|d| d.presentation)
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut alphabet = Alphabet::new();
    let mut pairs: Vec<(PositiveWord, PositiveWord)> = Vec::new();
    let mut systems: Vec<(String, GSystem)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let col_of = |byte_offset: usize| content[..byte_offset].chars().count() + 1;
        let err = |byte_offset: usize, kind| ParseError { line: line_no, column: col_of(byte_offset), kind };

        let Some(colon) = body.find(':') else {
            return Err(err(lead, ParseErrorKind::Syntax("expected `gens:`, `rel:` or `system <label>:`".into())));
        };
        let head = body[..colon].trim();
        let rest_off = lead + colon + 1;
        let rest = &content[rest_off..];

        if head == "gens" {
            for (off, tok) in tokens(rest) {
                if !tok.chars().all(is_name_char) {
                    return Err(err(rest_off + off, ParseErrorKind::Syntax(format!("invalid generator name `{tok}`"))));
                }
                if alphabet.push(tok.to_string()).is_none() {
                    return Err(err(rest_off + off, ParseErrorKind::DuplicateGenerator(tok.to_string())));
                }
            }
        } else if head == "rel" {
            let mut sides = Vec::new();
            let mut start = 0;
            for piece in rest.split('=') {
                let off = rest_off + start;
                start += piece.len() + 1;
                let word = parse_positive_at(piece, &alphabet).map_err(|(o, k)| err(off + o, k))?;
                if word.is_empty() {
                    return Err(err(off + piece.len().min(piece.len() - piece.trim_start().len()), ParseErrorKind::EmptyRelationSide));
                }
                sides.push(word);
            }
            if sides.len() < 2 {
                return Err(err(rest_off, ParseErrorKind::Syntax("relation needs at least two sides".into())));
            }
            for i in 0..sides.len() - 1 {
                pairs.push((sides[i].clone(), sides[i + 1].clone()));
            }
            if sides.len() > 2 {
                pairs.push((sides[0].clone(), sides[sides.len() - 1].clone()));
            }
        } else if let Some(label) = head.strip_prefix("system") {
            let label = label.trim();
            if label.is_empty() || !label.chars().all(is_name_char) || !head[6..].starts_with(char::is_whitespace) {
                return Err(err(lead, ParseErrorKind::Syntax("expected `system <label>:`".into())));
            }
            if systems.iter().any(|(l, _)| l == label) {
                return Err(err(lead, ParseErrorKind::DuplicateSystem(label.to_string())));
            }
            let mut entries = Vec::new();
            let mut start = 0;
            for piece in rest.split(',') {
                let off = rest_off + start;
                start += piece.len() + 1;
                if piece.trim().is_empty() {
                    return Err(err(off, ParseErrorKind::Syntax("empty system entry".into())));
                }
                let word = parse_signed_at(piece, &alphabet).map_err(|(o, k)| err(off + o, k))?;
                entries.push(word);
            }
            systems.push((label.to_string(), GSystem::new(entries)));
        } else {
            return Err(err(lead, ParseErrorKind::Syntax(format!("unknown directive `{head}`"))));
        }
    }

    let mut presentation = Presentation::new(alphabet);
    for (a, b) in pairs {
        presentation
            .add_relation(a, b, None)
            .expect("sides were validated during parsing");
    }
    Ok(Document { presentation, systems })
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
}

fn parse_positive_at(s: &str, a: &Alphabet) -> Result<PositiveWord, (usize, ParseErrorKind)> {
    let mut out = Vec::new();
    for (off, tok) in tokens(s) {
        if tok == "ε" {
            continue;
        }
        if !tok.chars().all(is_name_char) {
            return Err((off, ParseErrorKind::Syntax(format!("invalid generator token `{tok}`"))));
        }
        match a.get(tok) {
            Some(g) => out.push(g),
            None => return Err((off, ParseErrorKind::UndeclaredGenerator(tok.to_string()))),
        }
    }
    Ok(PositiveWord(out))
}

fn parse_signed_at(s: &str, a: &Alphabet) -> Result<SignedWord, (usize, ParseErrorKind)> {
    let mut out = Vec::new();
    for (off, tok) in tokens(s) {
        if tok == "ε" {
            continue;
        }
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        if name.is_empty() || !name.chars().all(is_name_char) {
            return Err((off, ParseErrorKind::Syntax(format!("invalid letter `{tok}`"))));
        }
        match a.get(name) {
            Some(g) => out.push(Letter { gen: g, inverse }),
            None => return Err((off, ParseErrorKind::UndeclaredGenerator(name.to_string()))),
        }
    }
    Ok(SignedWord(out))
}

/// Parses a whitespace-separated positive word such as `x x y x`.
pub fn parse_positive_word(s: &str, a: &Alphabet) -> Result<PositiveWord, ParseError> {
    parse_positive_at(s, a).map_err(|(off, kind)| ParseError { line: 1, column: s[..off].chars().count() + 1, kind })
}

/// Parses a signed word such as `y^-1 x y`.
pub fn parse_signed_word(s: &str, a: &Alphabet) -> Result<SignedWord, ParseError> {
    parse_signed_at(s, a).map_err(|(off, kind)| ParseError { line: 1, column: s[..off].chars().count() + 1, kind })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_presentation() {
        let p = parse_presentation("gens: x y\nrel: x y x = y x y").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relations().len(), 1);
    }

    #[test]
    fn chain_expands_to_three_relations() {
        let p = parse_presentation("gens: x y z\nrel: x y x = y x y\nrel: x y = y z = z x").unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relations().len(), 4);
        assert_eq!(p.show_relation(1), "x y = y z");
        assert_eq!(p.show_relation(2), "y z = z x");
        assert_eq!(p.show_relation(3), "x y = z x");
    }

    #[test]
    fn empty_side_is_rejected() {
        let e = parse_presentation("gens: x\nrel: x = ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyRelationSide);
        assert_eq!(e.line, 2);
    }

    #[test]
    fn error_positions() {
        let e = parse_presentation("gens: x y x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator("x".into()));
        let e = parse_presentation("gens: x\n\nrel: x = q").unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
        assert_eq!(e.kind, ParseErrorKind::UndeclaredGenerator("q".into()));
        let e = parse_presentation("gens x y").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("gens: x\nrel: x").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn comments_and_systems() {
        let d = parse_document(
            "# braid group\ngens: x y # two\nrel: x y x = y x y\nsystem g: x, x, y, x\nsystem h: y^-1 x y, x, y, y^-1 x y\n",
        )
        .unwrap();
        assert_eq!(d.systems.len(), 2);
        let h = d.system("h").unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(d.presentation.alphabet().show_signed(&h.entries[0]), "y^-1 x y");
        let e = parse_document("gens: x\nsystem g: x\nsystem g: x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateSystem("g".into()));
    }

    #[test]
    fn identity_entries_survive_a_round_trip() {
        let d = parse_document("gens: x\nsystem g: x^-1 x, x\n").unwrap();
        assert!(d.system("g").unwrap().entries[0].is_empty());
        assert_eq!(parse_document(&d.to_text()).unwrap(), d);
        assert!(parse_document("gens: x\nsystem g: x, , x\n").is_err());
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let d = parse_document("gens: x y z\nrel: x y = y z = z x\nsystem g: x, z^-1 y\n").unwrap();
        let again = parse_document(&d.to_text()).unwrap();
        assert_eq!(d, again);
        assert_eq!(again.to_text(), d.to_text());
    }
}
