//! Text forms of words and relations: `alpha^2*beta`, `alpha*beta=gamma`.

use thiserror::Error;

use super::{Relation, Word};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty word")]
    EmptyWord,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("malformed relation `{0}`")]
    BadRelation(String),
}

/// Renders a word, folding runs of a repeated label into powers.
pub fn render_word(labels: &[String], word: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let name = &labels[word[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

pub fn parse_word(labels: &[String], text: &str) -> Result<Word, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseError::EmptyWord);
    }
    let mut word = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let k: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::BadExponent(factor.to_string()))?;
                if k == 0 {
                    return Err(ParseError::BadExponent(factor.to_string()));
                }
                (n.trim(), k)
            }
            None => (factor, 1),
        };
        let idx = labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| ParseError::UnknownLabel(name.to_string()))?;
        word.extend(std::iter::repeat_n(idx, power));
    }
    Ok(word)
}

pub fn render_relation(labels: &[String], r: &Relation) -> String {
    format!(
        "{}*{}={}",
        labels[r.left.0], labels[r.left.1], labels[r.right]
    )
}

pub fn parse_relation(labels: &[String], text: &str) -> Result<Relation, ParseError> {
    let bad = || ParseError::BadRelation(text.to_string());
    let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
    let left = parse_word(labels, lhs)?;
    let right = parse_word(labels, rhs)?;
    match (left.as_slice(), right.as_slice()) {
        (&[a, b], &[c]) => Ok(Relation {
            left: (a, b),
            right: c,
        }),
        _ => Err(bad()),
    }
}
