//! Line-oriented text formats for posets and monotone maps.
//!
//! Poset files:
//!
//! ```text
//! # comment
//! elem bot
//! elem a
//! elem b
//! le bot a
//! le bot b
//! ```
//!
//! `le` lines are generating pairs; the loader computes the
//! reflexive-transitive closure and then validates antisymmetry (and the
//! other poset laws). Element names are whitespace-free tokens declared
//! before use. Blank lines and `#` comments are ignored.
//!
//! Map files (for an already-loaded source/target poset):
//!
//! ```text
//! map bot a
//! map a   a
//! ```
//!
//! Every source element must get exactly one image and the table must be
//! monotone.

use std::rc::Rc;

use thiserror::Error;

use super::maps::{MapError, MonoMap};
use super::poset::{FinPoset, PosetViolation};

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: unknown directive `{word}`")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: unknown element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("line {line}: duplicate element `{name}`")]
    DuplicateElement { line: usize, name: String },
    #[error("closure is not a poset: {0:?}")]
    NotAPoset(Vec<PosetViolation>),
    #[error("line {line}: element `{name}` already has an image")]
    DuplicateImage { line: usize, name: String },
    #[error("element `{name}` has no image")]
    MissingImage { name: String },
    #[error(transparent)]
    Map(#[from] MapError),
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn lookup(names: &[String], name: &str, line: usize) -> Result<usize, TextError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| TextError::UnknownElement { line, name: name.into() })
}

/// Parses the poset text format: `elem` declarations and generating `le`
/// pairs, closed and validated.
pub fn parse_poset(src: &str) -> Result<FinPoset, TextError> {
    let mut names: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (line, text) in content_lines(src) {
        let mut words = text.split_whitespace();
        let directive = words.next().unwrap();
        match directive {
            "elem" => {
                let name = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "elem <name>" })?;
                if words.next().is_some() {
                    return Err(TextError::Malformed { line, expected: "elem <name>" });
                }
                if names.iter().any(|n| n == name) {
                    return Err(TextError::DuplicateElement { line, name: name.into() });
                }
                names.push(name.to_string());
            }
            "le" => {
                let a = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "le <a> <b>" })?;
                let b = words
                    .next()
                    .ok_or(TextError::Malformed { line, expected: "le <a> <b>" })?;
                if words.next().is_some() {
                    return Err(TextError::Malformed { line, expected: "le <a> <b>" });
                }
                let ia = lookup(&names, a, line)?;
                let ib = lookup(&names, b, line)?;
                pairs.push((ia, ib));
            }
            other => {
                return Err(TextError::UnknownDirective { line, word: other.into() })
            }
        }
    }
    let poset = FinPoset::from_generators(names, &pairs);
    poset.validate().map_err(TextError::NotAPoset)?;
    Ok(poset)
}

/// Renders a poset in the text format, listing the covering (transitive
/// reduction) pairs so the file round-trips through `parse_poset`.
pub fn render_poset(p: &FinPoset) -> String {
    let mut out = String::new();
    for name in p.names() {
        out.push_str(&format!("elem {name}\n"));
    }
    let n = p.len();
    for i in 0..n {
        for j in 0..n {
            if i == j || !p.leq(i, j) {
                continue;
            }
            // Keep only covering pairs: no k strictly between i and j.
            let covering = (0..n).all(|k| {
                k == i || k == j || !(p.leq(i, k) && p.leq(k, j))
            });
            if covering {
                out.push_str(&format!("le {} {}\n", p.name(i), p.name(j)));
            }
        }
    }
    out
}

/// Parses a map file as a monotone map between the given posets.
pub fn parse_monomap(
    src: &str,
    source: &Rc<FinPoset>,
    target: &Rc<FinPoset>,
) -> Result<MonoMap, TextError> {
    let mut table: Vec<Option<usize>> = vec![None; source.len()];
    for (line, text) in content_lines(src) {
        let mut words = text.split_whitespace();
        let directive = words.next().unwrap();
        if directive != "map" {
            return Err(TextError::UnknownDirective { line, word: directive.into() });
        }
        let from = words
            .next()
            .ok_or(TextError::Malformed { line, expected: "map <from> <to>" })?;
        let to = words
            .next()
            .ok_or(TextError::Malformed { line, expected: "map <from> <to>" })?;
        if words.next().is_some() {
            return Err(TextError::Malformed { line, expected: "map <from> <to>" });
        }
        let i = source
            .index(from)
            .ok_or_else(|| TextError::UnknownElement { line, name: from.into() })?;
        let j = target
            .index(to)
            .ok_or_else(|| TextError::UnknownElement { line, name: to.into() })?;
        if table[i].is_some() {
            return Err(TextError::DuplicateImage { line, name: from.into() });
        }
        table[i] = Some(j);
    }
    let table: Vec<usize> = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| TextError::MissingImage { name: source.name(i).to_string() })
        })
        .collect::<Result<_, _>>()?;
    Ok(MonoMap::new(Rc::clone(source), Rc::clone(target), table)?)
}
