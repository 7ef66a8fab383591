//! Text literals for finite sets and posets, and their JSON export.
//!
//! ```text
//! poset N { elems a b c; covers a<b b<c; }
//! set X { elems x y; }
//! {x, y}
//! ```
//!
//! Covers may be chained (`a<b<c`). JSON output uses sorted keys.

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::finset::FinSet;
use super::maps::MonotoneMap;
use super::poset::{make_poset, FinPoset};

/// A parsed object literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectLiteral {
    pub name: String,
    pub poset: FinPoset,
    /// `true` for `set` literals (discrete order intended).
    pub is_set: bool,
}

pub fn parse_object(text: &str) -> Result<ObjectLiteral> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| syntax(text, trimmed.len(), "unbalanced braces"))?;
        let elems: Vec<String> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        let set = FinSet::new(elems)?;
        return Ok(ObjectLiteral {
            name: "X".into(),
            poset: FinPoset::discrete(&set),
            is_set: true,
        });
    }
    let (keyword, rest) = split_word(trimmed);
    let is_set = match keyword {
        "poset" => false,
        "set" => true,
        other => {
            return Err(syntax(
                text,
                0,
                &format!("expected `poset` or `set`, found `{other}`"),
            ))
        }
    };
    let (name, rest) = split_word(rest);
    if name.is_empty() || name.starts_with('{') {
        return Err(syntax(text, keyword.len(), "missing name"));
    }
    let body = rest
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.trim_end().strip_suffix('}'))
        .ok_or_else(|| syntax(text, trimmed.len() - rest.len(), "expected `{ ... }`"))?;

    let mut elems: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for clause in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let (head, args) = split_word(clause);
        match head {
            "elems" => elems.extend(args.split_whitespace().map(String::from)),
            "covers" if !is_set => {
                for chain in args.split_whitespace() {
                    let parts: Vec<&str> = chain.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(syntax(text, offset(text, chain), "malformed cover"));
                    }
                    for w in parts.windows(2) {
                        covers.push((w[0].to_string(), w[1].to_string()));
                    }
                }
            }
            other => {
                return Err(syntax(
                    text,
                    offset(text, clause),
                    &format!("unexpected clause `{other}`"),
                ))
            }
        }
    }
    let poset = make_poset(&elems, &covers)?;
    Ok(ObjectLiteral {
        name: name.to_string(),
        poset,
        is_set,
    })
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    let end = s
        .find(|c: char| c.is_whitespace() || c == '{')
        .unwrap_or(s.len());
    (&s[..end], &s[end..])
}

fn offset(text: &str, part: &str) -> usize {
    text.find(part).unwrap_or(0)
}

fn syntax(text: &str, at: usize, message: &str) -> Error {
    let (line, column) = line_col(text, at);
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

pub(crate) fn line_col(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Renders a poset back to literal syntax.
pub fn to_literal(name: &str, p: &FinPoset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    if covers.is_empty() && p.is_discrete() {
        format!("set {name} {{ elems {}; }}", p.labels().join(" "))
    } else {
        format!(
            "poset {name} {{ elems {}; covers {}; }}",
            p.labels().join(" "),
            covers.join(" ")
        )
    }
}

pub fn poset_json(p: &FinPoset) -> Value {
    let covers: Vec<Value> = p
        .covers()
        .into_iter()
        .map(|(a, b)| json!([p.label(a), p.label(b)]))
        .collect();
    json!({
        "elements": p.labels(),
        "covers": covers,
        "size": p.len(),
    })
}

pub fn map_json(f: &MonotoneMap) -> Value {
    let graph: serde_json::Map<String, Value> = (0..f.dom().len())
        .map(|a| {
            (
                f.dom().label(a).to_string(),
                Value::String(f.cod().label(f.apply(a)).to_string()),
            )
        })
        .collect();
    json!({
        "dom": poset_json(f.dom()),
        "cod": poset_json(f.cod()),
        "graph": graph,
    })
}
