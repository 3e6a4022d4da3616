//! Line-oriented text formats for algebras and gradings.
//!
//! ```text
//! # the solvable example
//! field Q
//! basis a u v w
//! bracket a u = u
//! bracket a v = w
//! bracket a w = v
//! ```
//!
//! ```text
//! part alpha = a, u
//! part beta = v
//! part gamma = w
//! ```
//!
//! `field GF 5` selects a prime field. Vectors are signed sums of `coeff*name`
//! or `name` terms, with integer or `a/b` coefficients, or `0`. Grading labels
//! are identifiers, possibly joined with `+` (as produced by coarsening).

use std::fmt;
use std::sync::Arc;

use glg_core::exactmath::{Field, Subspace, Vector};
use glg_core::grading::{validate_grading, Grading, GradingError};
use glg_core::liealg::{render_combination, AxiomViolation, LieAlgebra, LieError};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", lines_text(.lines))]
    Axiom { lines: Vec<usize>, message: String },
    #[error("invalid grading: {0}")]
    Invalid(GradingError),
}

fn lines_text(lines: &[usize]) -> String {
    match lines {
        [] => "algebra".to_string(),
        [one] => format!("line {one}"),
        many => {
            let all: Vec<String> = many.iter().map(ToString::to_string).collect();
            format!("lines {}", all.join(", "))
        }
    }
}

impl FormatError {
    /// The grammar was fine but the grading is not a grading.
    pub fn is_invalid_grading(&self) -> bool {
        matches!(self, FormatError::Invalid(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Plus,
    Minus,
    Comma,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
        }
    }
}

/// The tokens of one line, each with its 1-based column.
struct Line {
    number: usize,
    toks: Vec<(usize, Tok)>,
    end: usize,
    pos: usize,
}

impl Line {
    fn lex(number: usize, text: &str) -> Result<Line, FormatError> {
        let text = text.split('#').next().unwrap_or("");
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((col, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            let tok = match c {
                '/' => Tok::Slash,
                '*' => Tok::Star,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                other => {
                    return Err(FormatError::Syntax {
                        line: number,
                        column: col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            toks.push((col, tok));
            i += 1;
        }
        Ok(Line {
            number,
            toks,
            end: chars.len() + 1,
            pos: 0,
        })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        self.error_at(self.column(), message)
    }

    fn error_at<T>(&self, column: usize, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax {
            line: self.number,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect(&mut self, want: Tok) -> Result<(), FormatError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected {want}, found {t}")),
            None => self.error(format!("expected {want} at end of line")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(usize, String), FormatError> {
        let col = self.column();
        match self.next() {
            Some(Tok::Ident(s)) => Ok((col, s)),
            Some(t) => self.error_at(col, format!("expected {what}, found {t}")),
            None => self.error_at(col, format!("expected {what} at end of line")),
        }
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected {t}")),
        }
    }

    /// `0`, or a signed sum of `coeff*name` and `name` terms.
    fn vector(&mut self, field: Field, names: &[String]) -> Result<Vector, FormatError> {
        let mut v = vec![field.zero(); names.len()];
        if self.peek() == Some(&Tok::Int(BigInt::from(0))) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), None | Some(Tok::Comma)) {
                return Ok(v);
            }
            self.pos = save;
        }
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                Some(Tok::Plus) if !first => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let col = self.column();
            let coeff = match self.peek() {
                Some(Tok::Int(_)) => {
                    let Some(Tok::Int(num)) = self.next() else {
                        unreachable!()
                    };
                    let den = if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Int(d)) => d,
                            _ => return self.error_at(col, "expected a denominator after `/`"),
                        }
                    } else {
                        BigInt::from(1)
                    };
                    self.expect(Tok::Star)?;
                    match field.from_ratio(&num, &den) {
                        Ok(c) => c,
                        Err(_) => {
                            return self
                                .error_at(col, format!("{num}/{den} is not defined in {field}"))
                        }
                    }
                }
                _ => field.one(),
            };
            let (ncol, name) = self.ident("a basis name")?;
            let Some(i) = names.iter().position(|n| *n == name) else {
                return self.error_at(ncol, format!("unknown basis name `{name}`"));
            };
            let term = if negative { -&coeff } else { coeff };
            v[i] = &v[i] + &term;
        }
        Ok(v)
    }
}

fn lines(text: &str) -> Result<Vec<Line>, FormatError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = Line::lex(k + 1, raw)?;
        if !line.toks.is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn parse_field(line: &mut Line) -> Result<Field, FormatError> {
    let (col, name) = line.ident("a field")?;
    let field = match name.as_str() {
        "Q" => Field::Rationals,
        "GF" => {
            let pcol = line.column();
            let Some(Tok::Int(p)) = line.next() else {
                return line.error_at(pcol, "expected a prime after `GF`");
            };
            let p: u64 = p.try_into().map_err(|_| FormatError::Syntax {
                line: line.number,
                column: pcol,
                message: "modulus too large".into(),
            })?;
            match Field::prime(p) {
                Ok(f) => f,
                Err(e) => return line.error_at(pcol, e.to_string()),
            }
        }
        other => {
            return line.error_at(
                col,
                format!("unknown field `{other}` (use `Q` or `GF <p>`)"),
            )
        }
    };
    line.finish()?;
    Ok(field)
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra, FormatError> {
    let mut lines = lines(text)?.into_iter();
    let no_line = |message: &str| FormatError::Syntax {
        line: 1,
        column: 1,
        message: message.to_string(),
    };
    let mut line = lines.next().ok_or_else(|| no_line("empty algebra file"))?;
    let (col, kw) = line.ident("`field`")?;
    if kw != "field" {
        return line.error_at(col, format!("expected `field`, found `{kw}`"));
    }
    let field = parse_field(&mut line)?;

    let mut line = lines
        .next()
        .ok_or_else(|| no_line("missing `basis` line"))?;
    let (col, kw) = line.ident("`basis`")?;
    if kw != "basis" {
        return line.error_at(col, format!("expected `basis`, found `{kw}`"));
    }
    let mut names: Vec<String> = Vec::new();
    while !line.at_end() {
        let (col, name) = line.ident("a basis name")?;
        if names.contains(&name) {
            return line.error_at(col, format!("duplicate basis name `{name}`"));
        }
        names.push(name);
    }
    if names.is_empty() {
        return line.error("the basis is empty");
    }

    let n = names.len();
    let mut declared: Vec<Vec<Option<(usize, Vector)>>> = vec![vec![None; n]; n];
    let mut brackets = Vec::new();
    for mut line in lines {
        let (col, kw) = line.ident("`bracket`")?;
        if kw != "bracket" {
            return line.error_at(col, format!("expected `bracket`, found `{kw}`"));
        }
        let index = |line: &mut Line| -> Result<(String, usize), FormatError> {
            let (col, name) = line.ident("a basis name")?;
            match names.iter().position(|x| *x == name) {
                Some(i) => Ok((name, i)),
                None => line.error_at(col, format!("unknown basis name `{name}`")),
            }
        };
        let (a, i) = index(&mut line)?;
        let (b, j) = index(&mut line)?;
        line.expect(Tok::Eq)?;
        let v = line.vector(field, &names)?;
        line.finish()?;
        if i == j {
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            return line.error_at(col, format!("[{a},{a}] must be zero"));
        }
        if let Some((first, w)) = &declared[j][i] {
            let negated: Vector = w.iter().map(|x| -x).collect();
            let message = if negated == v {
                format!("[{a},{b}] is already determined by line {first}")
            } else {
                format!(
                    "inconsistent with anticommutativity: [{a},{b}] must be {} (line {first})",
                    render_combination(&names, &negated)
                )
            };
            return line.error_at(col, message);
        }
        if declared[i][j].is_some() {
            return line.error_at(col, format!("duplicate declaration of [{a},{b}]"));
        }
        declared[i][j] = Some((line.number, v.clone()));
        brackets.push((i, j, v));
    }

    let alg = LieAlgebra::new(field, names.clone(), &brackets).map_err(|e: LieError| {
        FormatError::Axiom {
            lines: Vec::new(),
            message: e.to_string(),
        }
    })?;
    let report = alg.check_lie_axioms();
    if let Some(violation) = report.violations.first() {
        let line_of = |i: usize, j: usize| {
            declared[i][j]
                .as_ref()
                .or(declared[j][i].as_ref())
                .map(|d| d.0)
        };
        let mut lines: Vec<usize> = match violation {
            AxiomViolation::Jacobi(i, j, k) => [(*i, *j), (*j, *k), (*i, *k)]
                .iter()
                .filter_map(|&(x, y)| line_of(x, y))
                .collect(),
            AxiomViolation::Anticommutative(i, j) => line_of(*i, *j).into_iter().collect(),
            AxiomViolation::Alternating(_) => Vec::new(),
        };
        lines.sort_unstable();
        lines.dedup();
        return Err(FormatError::Axiom {
            lines,
            message: violation.describe(&alg),
        });
    }
    Ok(alg)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Grading labels: identifiers joined by `+`.
pub fn is_label(s: &str) -> bool {
    s.split('+').all(is_identifier)
}

pub fn parse_grading(text: &str, alg: Arc<LieAlgebra>) -> Result<Grading, FormatError> {
    let field = alg.field();
    let names = alg.names().to_vec();
    let mut parts: Vec<(String, Subspace)> = Vec::new();
    for mut line in lines(text)? {
        let (col, kw) = line.ident("`part`")?;
        if kw != "part" {
            return line.error_at(col, format!("expected `part`, found `{kw}`"));
        }
        let label_col = line.column();
        let (_, mut label) = line.ident("a label")?;
        while line.peek() == Some(&Tok::Plus) {
            line.pos += 1;
            let (_, more) = line.ident("a label after `+`")?;
            label = format!("{label}+{more}");
        }
        if parts.iter().any(|(l, _)| *l == label) {
            return line.error_at(label_col, format!("duplicate label `{label}`"));
        }
        line.expect(Tok::Eq)?;
        let mut vectors = vec![line.vector(field, &names)?];
        while line.peek() == Some(&Tok::Comma) {
            line.pos += 1;
            vectors.push(line.vector(field, &names)?);
        }
        line.finish()?;
        let space = Subspace::span(field, names.len(), &vectors)
            .expect("vectors have one entry per basis element");
        parts.push((label, space));
    }
    if parts.is_empty() {
        return Err(FormatError::Syntax {
            line: 1,
            column: 1,
            message: "grading file declares no parts".into(),
        });
    }
    validate_grading(alg, parts).map_err(FormatError::Invalid)
}

pub fn serialize_field(field: Field) -> String {
    match field {
        Field::Rationals => "Q".to_string(),
        Field::Prime(p) => format!("GF {p}"),
    }
}

/// The algebra in file form, one `bracket` line per nonzero `[e_i, e_j]` with `i < j`.
pub fn serialize_algebra(alg: &LieAlgebra) -> String {
    let names = alg.names();
    let mut out = format!(
        "field {}\nbasis {}\n",
        serialize_field(alg.field()),
        names.join(" ")
    );
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let v = alg.basis_bracket(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                out.push_str(&format!(
                    "bracket {} {} = {}\n",
                    names[i],
                    names[j],
                    alg.render_vector(v)
                ));
            }
        }
    }
    out
}

pub fn serialize_grading(grading: &Grading) -> String {
    let alg = grading.algebra();
    let mut out = String::new();
    for (label, part) in grading.labels().iter().zip(grading.parts()) {
        let vs: Vec<String> = part.basis().iter().map(|v| alg.render_vector(v)).collect();
        out.push_str(&format!("part {label} = {}\n", vs.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use glg_core::corpus;

    const SOLVABLE: &str = "# four dimensional\nfield Q\nbasis a u v w\nbracket a u = u\nbracket a v = w\nbracket a w = v\n";

    fn syntax_at(err: FormatError) -> (usize, usize) {
        match err {
            FormatError::Syntax { line, column, .. } => (line, column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parses_the_solvable_algebra() {
        let alg = parse_algebra(SOLVABLE).unwrap();
        assert_eq!(alg, corpus::solvable4_algebra(Field::Rationals));
    }

    #[test]
    fn diagonal_bracket_rejected() {
        let err = parse_algebra("field Q\nbasis a u\nbracket a a = u\n").unwrap_err();
        assert_eq!(syntax_at(err), (3, 1));
        // a zero diagonal is harmless
        assert!(parse_algebra("field Q\nbasis a u\nbracket a a = 0\n").is_ok());
    }

    #[test]
    fn both_orientations_rejected() {
        let err =
            parse_algebra("field Q\nbasis a u\nbracket a u = u\nbracket u a = u\n").unwrap_err();
        assert!(err.to_string().contains("anticommutativity"), "{err}");
        assert!(err.to_string().contains("-u"), "{err}");
        assert_eq!(syntax_at(err), (4, 1));
        let err =
            parse_algebra("field Q\nbasis a u\nbracket a u = u\nbracket u a = -u\n").unwrap_err();
        assert!(err.to_string().contains("already determined"), "{err}");
        let err =
            parse_algebra("field Q\nbasis a u\nbracket a u = u\nbracket a u = u\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(syntax_at(parse_algebra("field R\n").unwrap_err()), (1, 7));
        assert_eq!(
            syntax_at(parse_algebra("field GF 4\nbasis a\n").unwrap_err()),
            (1, 10)
        );
        assert_eq!(
            syntax_at(parse_algebra("field Q\nbasis a b\nbracket a c = a\n").unwrap_err()),
            (3, 11)
        );
        assert_eq!(
            syntax_at(parse_algebra("field Q\nbasis a b\nbracket a b = 2 a\n").unwrap_err()),
            (3, 17)
        );
        assert_eq!(
            syntax_at(parse_algebra("field Q\nbasis a b\nbracket a b = a ?\n").unwrap_err()),
            (3, 17)
        );
        assert_eq!(
            syntax_at(parse_algebra("field Q\nbasis a a\n").unwrap_err()),
            (2, 9)
        );
        assert_eq!(syntax_at(parse_algebra("").unwrap_err()), (1, 1));
    }

    #[test]
    fn jacobi_failure_names_lines() {
        // [a,b]=c, [b,c]=a, [c,a]=c is not Lie
        let err = parse_algebra(
            "field Q\nbasis a b c\nbracket a b = c\nbracket b c = a\nbracket a c = -c\n",
        )
        .unwrap_err();
        match err {
            FormatError::Axiom { lines, .. } => {
                assert!(!lines.is_empty() && lines.iter().all(|l| (3..=5).contains(l)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficients_and_fields() {
        let alg = parse_algebra("field GF 5\nbasis x y\nbracket x y = 1/2*x - y + 3*y\n").unwrap();
        let f = Field::prime(5).unwrap();
        assert_eq!(alg.basis_bracket(0, 1), &vec![f.from_i64(3), f.from_i64(2)]);
        let err = parse_algebra("field GF 5\nbasis x y\nbracket x y = 1/5*x\n").unwrap_err();
        assert!(err.to_string().contains("not defined"), "{err}");
    }

    #[test]
    fn grading_files() {
        let alg = Arc::new(corpus::solvable4_algebra(Field::Rationals));
        let g = parse_grading(
            "part alpha = a, u\npart beta = v\npart gamma = w\n",
            alg.clone(),
        )
        .unwrap();
        assert_eq!(g, corpus::solvable4_grading(Field::Rationals));
        // row reduction canonicalizes the spanning set
        let h = parse_grading(
            "part alpha = a, a+u\npart beta = v\npart gamma = w\n",
            alg.clone(),
        )
        .unwrap();
        assert_eq!(h, g);
        let err = parse_grading("part alpha = a, u\npart beta = v\n", alg.clone()).unwrap_err();
        assert_eq!(err, FormatError::Invalid(GradingError::NotSpanning));
        assert!(err.is_invalid_grading());
        let err =
            parse_grading("part p = a\npart q = u, v\npart r = w\n", alg.clone()).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Invalid(GradingError::BracketNotHomogeneous { .. })
        ));
        let err = parse_grading("part alpha = a, u\npart alpha = v, w\n", alg.clone()).unwrap_err();
        assert_eq!(syntax_at(err), (2, 6));
        let err = parse_grading("part alpha = a, q\n", alg.clone()).unwrap_err();
        assert_eq!(syntax_at(err), (1, 17));
    }

    #[test]
    fn merged_labels_parse() {
        let alg = Arc::new(corpus::semisimple6_algebra(Field::Rationals));
        let text = "part h+e1 = h, e1\npart x = x\npart y = y\npart e2 = e2\npart e3 = e3\n";
        let g = parse_grading(text, alg).unwrap();
        assert_eq!(g.labels()[0], "h+e1");
        assert_eq!(serialize_grading(&g), text);
    }

    #[test]
    fn serialization_round_trips() {
        for field in [
            Field::Rationals,
            Field::gf2(),
            Field::prime(3).unwrap(),
            Field::prime(7).unwrap(),
        ] {
            for name in corpus::BUILTIN_NAMES {
                let ex = corpus::builtin(name, field).unwrap();
                let alg = parse_algebra(&serialize_algebra(&ex.algebra)).unwrap();
                assert_eq!(alg, *ex.algebra);
                let g = parse_grading(&serialize_grading(&ex.grading), Arc::new(alg)).unwrap();
                assert_eq!(g, ex.grading);
            }
        }
    }
}
