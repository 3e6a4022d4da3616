//! Independent replay of realizability certificates.
//!
//! Nothing here calls into the deciders: relation membership is read directly
//! from the fusion table, and the rewriting, ordering and lattice arithmetic
//! needed to check witnesses are reimplemented locally.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use super::{
    DerivationCertificate, Direction, GroupWitness, LatticeCertificate, Mode, ModelWitness,
    QuotientWitness, RealizeOutcome, Refutation, Relation, Verdict, Witness,
};
use crate::grading::FusionTable;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("label index {0} out of range")]
    LabelOutOfRange(usize),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("an unknown outcome carries no certificate")]
    NoCertificate,
}

/// Checks `outcome` against `table`: `Ok(true)` iff the certificate is valid
/// and proves the claimed status for the claimed mode.
pub fn verify_certificate(
    table: &FusionTable,
    outcome: &RealizeOutcome,
) -> Result<bool, CertificateError> {
    let n = table.len();
    match (&outcome.verdict, outcome.mode) {
        (Verdict::Unknown(_), _) => Err(CertificateError::NoCertificate),
        (Verdict::NotRealizable(Refutation::Lattice(c)), Mode::Group) => check_lattice(table, c),
        (Verdict::NotRealizable(Refutation::Lattice(_)), _) => Ok(false),
        (Verdict::NotRealizable(Refutation::Derivation(d)), mode) => {
            if mode == Mode::Semigroup && d.commutative {
                return Ok(false);
            }
            check_derivation(table, d)
        }
        (Verdict::Realizable(Witness::Group(w)), _) => check_group(table, w),
        (Verdict::Realizable(_), Mode::Group) => Ok(false),
        (Verdict::Realizable(Witness::Model(m)), mode) => {
            if !check_model(table, m)? {
                return Ok(false);
            }
            Ok(mode == Mode::Semigroup || is_commutative(m))
        }
        (Verdict::Realizable(Witness::Quotient(q)), _) => check_quotient(n, table, q),
    }
}

fn check_label(n: usize, g: usize) -> Result<(), CertificateError> {
    if g >= n {
        Err(CertificateError::LabelOutOfRange(g))
    } else {
        Ok(())
    }
}

fn relation_holds(table: &FusionTable, r: &Relation) -> Result<bool, CertificateError> {
    let n = table.len();
    check_label(n, r.left.0)?;
    check_label(n, r.left.1)?;
    check_label(n, r.right)?;
    Ok(table.product(r.left.0, r.left.1) == Some(r.right))
}

fn counts(n: usize, word: &[usize]) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for &x in word {
        c[x] += 1;
    }
    c
}

fn check_derivation(
    table: &FusionTable,
    d: &DerivationCertificate,
) -> Result<bool, CertificateError> {
    let n = table.len();
    let (g, h) = d.pair;
    check_label(n, g)?;
    check_label(n, h)?;
    for w in std::iter::once(&d.start).chain(d.steps.iter().map(|s| &s.word)) {
        if w.is_empty() {
            return Err(CertificateError::Malformed("empty word".into()));
        }
        for &x in w {
            check_label(n, x)?;
        }
    }
    if g == h || d.start != [g] {
        return Ok(false);
    }
    let last = d.steps.last().map_or(&d.start, |s| &s.word);
    if *last != [h] {
        return Ok(false);
    }
    let mut prev = &d.start;
    for step in &d.steps {
        let j = &step.justification;
        if !relation_holds(table, &j.relation)? {
            return Ok(false);
        }
        let pair = [j.relation.left.0, j.relation.left.1];
        let single = [j.relation.right];
        let (take, put): (&[usize], &[usize]) = match j.direction {
            Direction::Forward => (&pair, &single),
            Direction::Backward => (&single, &pair),
        };
        let ok = if d.commutative {
            let mut c = counts(n, prev);
            for &x in take {
                c[x] -= 1;
            }
            if c.iter().any(|&k| k < 0) {
                false
            } else {
                for &x in put {
                    c[x] += 1;
                }
                c == counts(n, &step.word)
            }
        } else {
            match j.position {
                None => false,
                Some(p) => {
                    if p + take.len() > prev.len() || prev[p..p + take.len()] != *take {
                        false
                    } else {
                        let mut expect = prev[..p].to_vec();
                        expect.extend_from_slice(put);
                        expect.extend_from_slice(&prev[p + take.len()..]);
                        expect == step.word
                    }
                }
            }
        };
        if !ok {
            return Ok(false);
        }
        prev = &step.word;
    }
    Ok(true)
}

fn check_lattice(table: &FusionTable, c: &LatticeCertificate) -> Result<bool, CertificateError> {
    let n = table.len();
    let (g, h) = c.pair;
    check_label(n, g)?;
    check_label(n, h)?;
    if g == h {
        return Ok(false);
    }
    let mut total = vec![BigInt::zero(); n];
    for (r, k) in &c.combination {
        if !relation_holds(table, r)? {
            return Ok(false);
        }
        total[r.left.0] += k;
        total[r.left.1] += k;
        total[r.right] -= k;
    }
    let mut target = vec![BigInt::zero(); n];
    target[g] += 1;
    target[h] -= 1;
    Ok(total == target)
}

fn check_group(table: &FusionTable, w: &GroupWitness) -> Result<bool, CertificateError> {
    let n = table.len();
    let width = w.free_rank + w.torsion.len();
    if w.assignment.len() != n || w.assignment.iter().any(|a| a.len() != width) {
        return Err(CertificateError::Malformed("assignment shape".into()));
    }
    if w.torsion.iter().any(|d| *d < BigInt::from(2)) {
        return Ok(false);
    }
    let reduce = |v: &[BigInt]| -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if i < w.free_rank {
                    x.clone()
                } else {
                    x.mod_floor(&w.torsion[i - w.free_rank])
                }
            })
            .collect()
    };
    let elems: Vec<Vec<BigInt>> = w.assignment.iter().map(|a| reduce(a)).collect();
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = table.product(a, b) {
                let sum: Vec<BigInt> = elems[a].iter().zip(&elems[b]).map(|(x, y)| x + y).collect();
                if reduce(&sum) != elems[c] {
                    return Ok(false);
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if elems[a] == elems[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_model(table: &FusionTable, m: &ModelWitness) -> Result<bool, CertificateError> {
    let n = table.len();
    let s = m.size;
    if m.table.len() != s || m.table.iter().any(|row| row.len() != s) {
        return Err(CertificateError::Malformed("Cayley table shape".into()));
    }
    if m.table.iter().flatten().any(|&x| x >= s) {
        return Err(CertificateError::Malformed(
            "Cayley table entry outside carrier".into(),
        ));
    }
    if s < n {
        return Ok(false);
    }
    let op = |a: usize, b: usize| m.table[a][b];
    for a in 0..s {
        for b in 0..s {
            for c in 0..s {
                if op(op(a, b), c) != op(a, op(b, c)) {
                    return Ok(false);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = table.product(a, b) {
                if op(a, b) != c {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn is_commutative(m: &ModelWitness) -> bool {
    (0..m.size).all(|a| (0..m.size).all(|b| m.table[a][b] == m.table[b][a]))
}

/// Degree first, then exponents in label order.
fn decreasing(l: &[u32], r: &[u32]) -> bool {
    let dl: u64 = l.iter().map(|&x| u64::from(x)).sum();
    let dr: u64 = r.iter().map(|&x| u64::from(x)).sum();
    if dl != dr {
        return dl > dr;
    }
    for (a, b) in l.iter().zip(r) {
        if a != b {
            return a > b;
        }
    }
    false
}

struct Rewriter<'a> {
    rules: &'a [(Vec<u32>, Vec<u32>)],
}

impl Rewriter<'_> {
    fn normal_form(&self, m: &[u32]) -> Vec<u32> {
        let mut cur = m.to_vec();
        loop {
            let hit = self
                .rules
                .iter()
                .find(|(l, _)| l.iter().zip(&cur).all(|(a, b)| a <= b));
            match hit {
                None => return cur,
                Some((l, r)) => {
                    for i in 0..cur.len() {
                        cur[i] = cur[i] - l[i] + r[i];
                    }
                }
            }
        }
    }
}

fn check_quotient(
    n: usize,
    table: &FusionTable,
    q: &QuotientWitness,
) -> Result<bool, CertificateError> {
    if q.normal_forms.len() != n || q.normal_forms.iter().any(|m| m.len() != n) {
        return Err(CertificateError::Malformed("normal form shape".into()));
    }
    if q.rules.iter().any(|(l, r)| l.len() != n || r.len() != n) {
        return Err(CertificateError::Malformed("rule shape".into()));
    }
    // nonempty sides, strictly decreasing: the system terminates
    for (l, r) in &q.rules {
        if l.iter().all(|&x| x == 0) || r.iter().all(|&x| x == 0) || !decreasing(l, r) {
            return Ok(false);
        }
    }
    let rw = Rewriter { rules: &q.rules };
    // local confluence at every overlap
    for (i, (l1, r1)) in q.rules.iter().enumerate() {
        for (l2, r2) in &q.rules[i + 1..] {
            let top: Vec<u32> = l1.iter().zip(l2).map(|(a, b)| *a.max(b)).collect();
            let u: Vec<u32> = (0..n).map(|k| top[k] - l1[k] + r1[k]).collect();
            let v: Vec<u32> = (0..n).map(|k| top[k] - l2[k] + r2[k]).collect();
            if rw.normal_form(&u) != rw.normal_form(&v) {
                return Ok(false);
            }
        }
    }
    // every relation holds in the quotient
    let unit = |g: usize| {
        let mut m = vec![0u32; n];
        m[g] = 1;
        m
    };
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = table.product(a, b) {
                let mut lhs = vec![0u32; n];
                lhs[a] += 1;
                lhs[b] += 1;
                if rw.normal_form(&lhs) != rw.normal_form(&unit(c)) {
                    return Ok(false);
                }
            }
        }
    }
    let mut seen: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for g in 0..n {
        let nf = rw.normal_form(&unit(g));
        if nf != q.normal_forms[g] || seen.insert(nf, g).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
