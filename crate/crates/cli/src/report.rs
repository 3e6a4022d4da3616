//! JSON and text reports.
//!
//! Every JSON report is one object whose first keys are always `status`,
//! `mode`, `labels`, `fusion_table`, `certificate`, `witness` and `counts`, in
//! that order (absent parts are `null`). Command specific keys follow.
//! Integers are plain JSON numbers of any size.

use std::str::FromStr;

use glg_core::enumerate::CensusReport;
use glg_core::grading::FusionTable;
use glg_core::realize::{
    parse_relation, parse_word, render_relation, render_word, DerivationCertificate, Direction,
    GroupWitness, Justification, LatticeCertificate, Mode, ModelWitness, QuotientWitness,
    RealizeOutcome, Refutation, SearchLimits, Step, Verdict, Witness,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("report is not valid JSON: {0}")]
    Json(String),
    #[error("report field `{0}` is missing or has the wrong type")]
    Field(String),
    #[error("bad report entry `{0}`: {1}")]
    Entry(String, String),
}

pub const KEYS: [&str; 7] = [
    "status",
    "mode",
    "labels",
    "fusion_table",
    "certificate",
    "witness",
    "counts",
];

/// An object holding the fixed keys, all `null`.
pub fn skeleton(status: &str) -> Map<String, Value> {
    let mut m = Map::new();
    for k in KEYS {
        m.insert(k.to_string(), Value::Null);
    }
    m.insert("status".into(), json!(status));
    m
}

pub fn int(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn labels_json(table: &FusionTable) -> Value {
    json!(table.labels())
}

pub fn fusion_json(table: &FusionTable) -> Value {
    let labels = table.labels();
    table
        .entries()
        .iter()
        .map(|&(a, b, c)| {
            json!(render_relation(
                labels,
                &glg_core::realize::Relation {
                    left: (a, b),
                    right: c
                }
            ))
        })
        .collect()
}

fn direction_text(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

fn mono_text(labels: &[String], m: &[u32]) -> String {
    let word: Vec<usize> = m
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect();
    render_word(labels, &word)
}

/// `alpha*gamma by alpha*gamma=beta backward at 0`.
pub fn step_text(labels: &[String], step: &Step) -> String {
    let j = &step.justification;
    let mut s = format!(
        "{} by {} {}",
        render_word(labels, &step.word),
        render_relation(labels, &j.relation),
        direction_text(j.direction)
    );
    if let Some(p) = j.position {
        s.push_str(&format!(" at {p}"));
    }
    s
}

fn derivation_json(labels: &[String], d: &DerivationCertificate) -> Value {
    json!({
        "kind": "derivation",
        "pair": [labels[d.pair.0], labels[d.pair.1]],
        "commutative": d.commutative,
        "chain": d.chain_text(labels),
        "start": render_word(labels, &d.start),
        "steps": d.steps.iter().map(|s| step_text(labels, s)).collect::<Vec<_>>(),
    })
}

fn lattice_json(labels: &[String], c: &LatticeCertificate) -> Value {
    let combination: Vec<Value> = c
        .combination
        .iter()
        .map(|(r, k)| json!({"relation": render_relation(labels, r), "coefficient": int(k)}))
        .collect();
    json!({
        "kind": "lattice",
        "pair": [labels[c.pair.0], labels[c.pair.1]],
        "combination": combination,
    })
}

fn bounds_json(b: &SearchLimits) -> Value {
    json!({
        "kind": "exhausted",
        "max_word_len": b.max_word_len,
        "max_pairs": b.max_pairs,
        "max_model_size": b.max_model_size,
        "max_model_nodes": b.max_model_nodes,
    })
}

fn witness_json(labels: &[String], w: &Witness) -> Value {
    match w {
        Witness::Group(g) => {
            let mut assignment = Map::new();
            for (l, coords) in labels.iter().zip(&g.assignment) {
                assignment.insert(l.clone(), coords.iter().map(int).collect());
            }
            json!({
                "kind": "group",
                "free_rank": g.free_rank,
                "torsion": g.torsion.iter().map(int).collect::<Vec<_>>(),
                "assignment": assignment,
            })
        }
        Witness::Model(m) => json!({
            "kind": "model",
            "size": m.size,
            "table": m.table,
        }),
        Witness::Quotient(q) => {
            let mut nf = Map::new();
            for (l, m) in labels.iter().zip(&q.normal_forms) {
                nf.insert(l.clone(), json!(mono_text(labels, m)));
            }
            json!({
                "kind": "quotient",
                "rules": q.rules.iter().map(|(l, r)| format!("{} -> {}", mono_text(labels, l), mono_text(labels, r))).collect::<Vec<_>>(),
                "normal_forms": nf,
            })
        }
    }
}

pub fn outcome_json(table: &FusionTable, outcome: &RealizeOutcome) -> Value {
    let labels = table.labels();
    let mut m = skeleton(outcome.status().as_str());
    m.insert("mode".into(), json!(outcome.mode.as_str()));
    m.insert("labels".into(), labels_json(table));
    m.insert("fusion_table".into(), fusion_json(table));
    match &outcome.verdict {
        Verdict::NotRealizable(Refutation::Derivation(d)) => {
            m.insert("certificate".into(), derivation_json(labels, d));
        }
        Verdict::NotRealizable(Refutation::Lattice(c)) => {
            m.insert("certificate".into(), lattice_json(labels, c));
        }
        Verdict::Realizable(w) => {
            m.insert("witness".into(), witness_json(labels, w));
        }
        Verdict::Unknown(b) => {
            m.insert("certificate".into(), bounds_json(b));
        }
    }
    Value::Object(m)
}

pub fn census_json(r: &CensusReport) -> Value {
    let mut m = skeleton(if r.confirmed() { "confirmed" } else { "failed" });
    m.insert("mode".into(), json!(Mode::AbelianSemigroup.as_str()));
    m.insert(
        "counts".into(),
        json!({
            "field": r.field.to_string(),
            "dimension": r.dimension,
            "algebras_total": r.algebras_total,
            "algebras_valid": r.algebras_valid,
            "decompositions": r.decompositions,
            "gradings_checked": r.gradings_checked,
            "realizable_group": r.realizable_group,
            "realizable_abelian_semigroup": r.realizable_abelian_semigroup,
            "certificates_verified": r.certificates_verified,
            "constant_witnesses": r.constant_witnesses,
            "failures": r.failures.len(),
        }),
    );
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({"algebra": f.algebra, "grading": f.grading, "reason": f.reason}))
        .collect();
    m.insert("failures".into(), Value::Array(failures));
    Value::Object(m)
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

// ----- reading reports back -----

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, ReportError> {
    v.get(key)
        .ok_or_else(|| ReportError::Field(key.to_string()))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, ReportError> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| ReportError::Field(key.to_string()))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, ReportError> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| ReportError::Field(key.to_string()))
}

fn usize_of(v: &Value, key: &str) -> Result<usize, ReportError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| ReportError::Field(key.to_string()))
}

fn bigint_of(v: &Value, key: &str) -> Result<BigInt, ReportError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| ReportError::Field(key.to_string()))
        }
        _ => Err(ReportError::Field(key.to_string())),
    }
}

fn entry_err(text: &str, e: impl ToString) -> ReportError {
    ReportError::Entry(text.to_string(), e.to_string())
}

fn label_index(labels: &[String], name: &Value, key: &str) -> Result<usize, ReportError> {
    let name = name
        .as_str()
        .ok_or_else(|| ReportError::Field(key.to_string()))?;
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| entry_err(name, "unknown label"))
}

fn pair_of(labels: &[String], v: &Value) -> Result<(usize, usize), ReportError> {
    match array_field(v, "pair")?.as_slice() {
        [a, b] => Ok((
            label_index(labels, a, "pair")?,
            label_index(labels, b, "pair")?,
        )),
        _ => Err(ReportError::Field("pair".into())),
    }
}

fn mono_of(labels: &[String], text: &str) -> Result<Vec<u32>, ReportError> {
    let word = parse_word(labels, text).map_err(|e| entry_err(text, e))?;
    let mut m = vec![0u32; labels.len()];
    for x in word {
        m[x] += 1;
    }
    Ok(m)
}

fn parse_step(labels: &[String], text: &str) -> Result<Step, ReportError> {
    let (word, rest) = text
        .split_once(" by ")
        .ok_or_else(|| entry_err(text, "expected `<word> by <relation> <direction>`"))?;
    let word = parse_word(labels, word).map_err(|e| entry_err(text, e))?;
    let parts: Vec<&str> = rest.split_whitespace().collect();
    let (rel, dir, position) = match parts.as_slice() {
        [rel, dir] => (rel, dir, None),
        [rel, dir, "at", p] => (
            rel,
            dir,
            Some(p.parse::<usize>().map_err(|e| entry_err(text, e))?),
        ),
        _ => {
            return Err(entry_err(
                text,
                "expected `<relation> <direction> [at <position>]`",
            ))
        }
    };
    let relation = parse_relation(labels, rel).map_err(|e| entry_err(text, e))?;
    let direction = match *dir {
        "forward" => Direction::Forward,
        "backward" => Direction::Backward,
        other => return Err(entry_err(text, format!("unknown direction `{other}`"))),
    };
    Ok(Step {
        justification: Justification {
            relation,
            direction,
            position,
        },
        word,
    })
}

fn parse_certificate(labels: &[String], c: &Value) -> Result<Verdict, ReportError> {
    match str_field(c, "kind")? {
        "derivation" => {
            let start =
                parse_word(labels, str_field(c, "start")?).map_err(|e| entry_err("start", e))?;
            let steps = array_field(c, "steps")?
                .iter()
                .map(|s| {
                    let text = s
                        .as_str()
                        .ok_or_else(|| ReportError::Field("steps".into()))?;
                    parse_step(labels, text)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let commutative = field(c, "commutative")?
                .as_bool()
                .ok_or_else(|| ReportError::Field("commutative".into()))?;
            Ok(Verdict::NotRealizable(Refutation::Derivation(
                DerivationCertificate {
                    pair: pair_of(labels, c)?,
                    commutative,
                    start,
                    steps,
                },
            )))
        }
        "lattice" => {
            let combination = array_field(c, "combination")?
                .iter()
                .map(|e| {
                    let text = str_field(e, "relation")?;
                    let r = parse_relation(labels, text).map_err(|err| entry_err(text, err))?;
                    Ok((r, bigint_of(field(e, "coefficient")?, "coefficient")?))
                })
                .collect::<Result<Vec<_>, ReportError>>()?;
            Ok(Verdict::NotRealizable(Refutation::Lattice(
                LatticeCertificate {
                    pair: pair_of(labels, c)?,
                    combination,
                },
            )))
        }
        "exhausted" => {
            let max_model_size = match field(c, "max_model_size")? {
                Value::Null => None,
                v => Some(usize_of(v, "max_model_size")?),
            };
            Ok(Verdict::Unknown(SearchLimits {
                max_word_len: usize_of(field(c, "max_word_len")?, "max_word_len")?,
                max_pairs: usize_of(field(c, "max_pairs")?, "max_pairs")?,
                max_model_size,
                max_model_nodes: usize_of(field(c, "max_model_nodes")?, "max_model_nodes")?,
            }))
        }
        other => Err(entry_err(other, "unknown certificate kind")),
    }
}

fn parse_witness(labels: &[String], w: &Value) -> Result<Witness, ReportError> {
    match str_field(w, "kind")? {
        "group" => {
            let torsion = array_field(w, "torsion")?
                .iter()
                .map(|x| bigint_of(x, "torsion"))
                .collect::<Result<Vec<_>, _>>()?;
            let assignment_obj = field(w, "assignment")?
                .as_object()
                .ok_or_else(|| ReportError::Field("assignment".into()))?;
            let assignment = labels
                .iter()
                .map(|l| {
                    let coords = assignment_obj
                        .get(l)
                        .and_then(Value::as_array)
                        .ok_or_else(|| entry_err(l, "no assignment"))?;
                    coords.iter().map(|x| bigint_of(x, "assignment")).collect()
                })
                .collect::<Result<Vec<Vec<BigInt>>, ReportError>>()?;
            Ok(Witness::Group(GroupWitness {
                free_rank: usize_of(field(w, "free_rank")?, "free_rank")?,
                torsion,
                assignment,
            }))
        }
        "model" => {
            let table = array_field(w, "table")?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| ReportError::Field("table".into()))?
                        .iter()
                        .map(|x| usize_of(x, "table"))
                        .collect()
                })
                .collect::<Result<Vec<Vec<usize>>, ReportError>>()?;
            Ok(Witness::Model(ModelWitness {
                size: usize_of(field(w, "size")?, "size")?,
                table,
            }))
        }
        "quotient" => {
            let rules = array_field(w, "rules")?
                .iter()
                .map(|r| {
                    let text = r
                        .as_str()
                        .ok_or_else(|| ReportError::Field("rules".into()))?;
                    let (l, rhs) = text
                        .split_once(" -> ")
                        .ok_or_else(|| entry_err(text, "expected `<word> -> <word>`"))?;
                    Ok((mono_of(labels, l)?, mono_of(labels, rhs)?))
                })
                .collect::<Result<Vec<_>, ReportError>>()?;
            let nf_obj = field(w, "normal_forms")?
                .as_object()
                .ok_or_else(|| ReportError::Field("normal_forms".into()))?;
            let normal_forms = labels
                .iter()
                .map(|l| {
                    let text = nf_obj
                        .get(l)
                        .and_then(Value::as_str)
                        .ok_or_else(|| entry_err(l, "no normal form"))?;
                    mono_of(labels, text)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Witness::Quotient(QuotientWitness {
                rules,
                normal_forms,
            }))
        }
        other => Err(entry_err(other, "unknown witness kind")),
    }
}

/// Reads a `realize` report back into the table it was computed for and
/// its outcome.
pub fn parse_outcome(text: &str) -> Result<(FusionTable, RealizeOutcome), ReportError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
    let mode: Mode = str_field(&v, "mode")?
        .parse()
        .map_err(|e: String| entry_err("mode", e))?;
    let labels: Vec<String> = array_field(&v, "labels")?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| ReportError::Field("labels".into()))
        })
        .collect::<Result<_, _>>()?;
    let products = array_field(&v, "fusion_table")?
        .iter()
        .map(|e| {
            let text = e
                .as_str()
                .ok_or_else(|| ReportError::Field("fusion_table".into()))?;
            let r = parse_relation(&labels, text).map_err(|err| entry_err(text, err))?;
            Ok((r.left.0, r.left.1, r.right))
        })
        .collect::<Result<Vec<_>, ReportError>>()?;
    let table =
        FusionTable::new(labels.clone(), &products).map_err(|e| entry_err("fusion_table", e))?;
    let verdict = match str_field(&v, "status")? {
        "realizable" => Verdict::Realizable(parse_witness(&labels, field(&v, "witness")?)?),
        "not-realizable" | "unknown" => parse_certificate(&labels, field(&v, "certificate")?)?,
        other => return Err(entry_err(other, "unknown status")),
    };
    let outcome = RealizeOutcome { mode, verdict };
    if outcome.status().as_str() != str_field(&v, "status")? {
        return Err(entry_err("status", "does not match the certificate"));
    }
    Ok((table, outcome))
}

// ----- text -----

pub fn group_text(w: &GroupWitness) -> String {
    let mut factors: Vec<String> = Vec::new();
    match w.free_rank {
        0 => {}
        1 => factors.push("Z".into()),
        r => factors.push(format!("Z^{r}")),
    }
    factors.extend(w.torsion.iter().map(|d| format!("Z/{d}")));
    if factors.is_empty() {
        "0".into()
    } else {
        factors.join(" x ")
    }
}

fn coords_text(w: &GroupWitness, coords: &[BigInt]) -> String {
    let free: Vec<String> = coords[..w.free_rank]
        .iter()
        .map(ToString::to_string)
        .collect();
    let tors: Vec<String> = coords[w.free_rank..]
        .iter()
        .map(ToString::to_string)
        .collect();
    match (free.is_empty(), tors.is_empty()) {
        (_, true) => format!("({})", free.join(", ")),
        (true, false) => format!("({})", tors.join(", ")),
        (false, false) => format!("({}; {})", free.join(", "), tors.join(", ")),
    }
}

pub fn outcome_text(table: &FusionTable, outcome: &RealizeOutcome) -> String {
    let labels = table.labels();
    let mut out = format!(
        "mode: {}\nfusion table: {table}\nstatus: {}\n",
        outcome.mode,
        outcome.status()
    );
    match &outcome.verdict {
        Verdict::NotRealizable(Refutation::Derivation(d)) => {
            out.push_str(&format!(
                "collapsed: {} ~ {}\n",
                labels[d.pair.0], labels[d.pair.1]
            ));
            out.push_str(&format!("chain: {}\n", d.chain_text(labels)));
            out.push_str(&format!("  {}\n", render_word(labels, &d.start)));
            for s in &d.steps {
                out.push_str(&format!("  = {}\n", step_text(labels, s)));
            }
        }
        Verdict::NotRealizable(Refutation::Lattice(c)) => {
            out.push_str(&format!(
                "collapsed: {} ~ {}\n",
                labels[c.pair.0], labels[c.pair.1]
            ));
            out.push_str(&format!("{} - {} =\n", labels[c.pair.0], labels[c.pair.1]));
            for (r, k) in &c.combination {
                out.push_str(&format!("  {k:>4} x ({})\n", render_relation(labels, r)));
            }
        }
        Verdict::Realizable(Witness::Group(w)) => {
            out.push_str(&format!("group: {}\n", group_text(w)));
            for (l, coords) in labels.iter().zip(&w.assignment) {
                out.push_str(&format!("  {l} -> {}\n", coords_text(w, coords)));
            }
        }
        Verdict::Realizable(Witness::Model(m)) => {
            let name = |i: usize| labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
            out.push_str(&format!("semigroup of order {}\n", m.size));
            for (i, row) in m.table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|&x| name(x)).collect();
                out.push_str(&format!("  {} * _ : {}\n", name(i), cells.join(" ")));
            }
        }
        Verdict::Realizable(Witness::Quotient(q)) => {
            out.push_str("quotient of the free abelian semigroup by\n");
            for (l, r) in &q.rules {
                out.push_str(&format!(
                    "  {} -> {}\n",
                    mono_text(labels, l),
                    mono_text(labels, r)
                ));
            }
        }
        Verdict::Unknown(b) => {
            out.push_str(&format!(
                "search exhausted: words up to length {}, {} words, models up to size {}\n",
                b.max_word_len,
                b.max_pairs,
                b.model_size_for(labels.len())
            ));
        }
    }
    out
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = format!(
        "census over {} in dimension {}\n\
         algebras: {} candidates, {} Lie\n\
         decompositions per algebra: {}\n\
         gradings checked: {}\n\
         realizable over an abelian group: {}\n\
         realizable over an abelian semigroup: {}\n\
         certificates verified: {}\n\
         constant semigroup witnesses: {}\n\
         failures: {}\n",
        r.field,
        r.dimension,
        r.algebras_total,
        r.algebras_valid,
        r.decompositions,
        r.gradings_checked,
        r.realizable_group,
        r.realizable_abelian_semigroup,
        r.certificates_verified,
        r.constant_witnesses,
        r.failures.len()
    );
    for f in &r.failures {
        out.push_str(&format!("  algebra #{}: {}\n", f.algebra, f.reason));
        for line in f.grading.lines() {
            out.push_str(&format!("    {line}\n"));
        }
    }
    out
}
