//! Completion of commutative semigroup presentations.
//!
//! Elements of the free abelian semigroup on the labels are nonzero exponent
//! vectors. Rules `l → r` rewrite `m ↦ m - l + r` whenever `l ≤ m`
//! componentwise, and always decrease in graded-lexicographic order (degree
//! first, then exponents compared in label order). Overlaps of two left-hand
//! sides are formed at their componentwise maximum. By Dickson's lemma only
//! finitely many incomparable left-hand sides can ever appear, so completion
//! terminates.
//!
//! Every rule keeps a chain of single-relation rewrites from its left- to its
//! right-hand side, so collapses can be certified with steps that use only
//! the original relations.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use super::{
    shorten, DerivationCertificate, Direction, Justification, QuotientWitness, Refutation,
    Relation, Step, Verdict, Witness,
};
use crate::grading::FusionTable;

type Mono = Vec<u32>;

pub(crate) fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(l: &[u32], m: &[u32]) -> bool {
    l.iter().zip(m).all(|(x, y)| x <= y)
}

fn shares_label(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).any(|(x, y)| *x > 0 && *y > 0)
}

/// A chain of words `words[0] → … → words[k]`; `steps[i]` turns `words[i]`
/// into `words[i + 1]`.
#[derive(Clone, Debug)]
struct Chain {
    words: Vec<Mono>,
    steps: Vec<(Relation, Direction)>,
}

impl Chain {
    fn trivial(m: Mono) -> Chain {
        Chain {
            words: vec![m],
            steps: Vec::new(),
        }
    }

    fn last(&self) -> &Mono {
        self.words.last().expect("chains are nonempty")
    }

    fn reversed(&self) -> Chain {
        let mut words = self.words.clone();
        words.reverse();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|(r, d)| (*r, d.flipped()))
            .collect();
        Chain { words, steps }
    }

    fn shifted(&self, ctx: &[u32]) -> Chain {
        let words = self
            .words
            .iter()
            .map(|w| w.iter().zip(ctx).map(|(a, b)| a + b).collect())
            .collect();
        Chain {
            words,
            steps: self.steps.clone(),
        }
    }

    fn extend(&mut self, other: Chain) {
        debug_assert_eq!(self.last(), &other.words[0]);
        self.words.extend(other.words.into_iter().skip(1));
        self.steps.extend(other.steps);
    }
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Mono,
    rhs: Mono,
    proof: Chain,
}

/// A completed, interreduced rewriting system.
#[derive(Clone, Debug)]
pub(crate) struct Completion {
    n: usize,
    relations: Vec<Relation>,
    rules: Vec<Rule>,
}

fn unit(n: usize, i: usize) -> Mono {
    let mut m = vec![0; n];
    m[i] = 1;
    m
}

impl Completion {
    /// Runs completion on the commutative relations of `table`.
    pub(crate) fn run(table: &FusionTable) -> Completion {
        let n = table.len();
        let relations = Relation::from_table(table, true);
        let mut pending: VecDeque<(Mono, Mono, Chain)> = relations
            .iter()
            .map(|&r| {
                let mut lhs = vec![0; n];
                lhs[r.left.0] += 1;
                lhs[r.left.1] += 1;
                let rhs = unit(n, r.right);
                let proof = Chain {
                    words: vec![lhs.clone(), rhs.clone()],
                    steps: vec![(r, Direction::Forward)],
                };
                (lhs, rhs, proof)
            })
            .collect();
        let mut sys = Completion {
            n,
            relations,
            rules: Vec::new(),
        };
        loop {
            while let Some((u, v, proof)) = pending.pop_front() {
                sys.add_equation(u, v, proof, &mut pending);
            }
            let unjoined = sys.unjoined_critical_pairs();
            if unjoined.is_empty() {
                break;
            }
            pending.extend(unjoined);
        }
        sys.normalize_right_sides();
        sys
    }

    fn normal_form(&self, m: &[u32]) -> Chain {
        let mut chain = Chain::trivial(m.to_vec());
        'outer: loop {
            let cur = chain.last().clone();
            for rule in &self.rules {
                if divides(&rule.lhs, &cur) {
                    let ctx: Mono = cur.iter().zip(&rule.lhs).map(|(a, b)| a - b).collect();
                    chain.extend(rule.proof.shifted(&ctx));
                    continue 'outer;
                }
            }
            return chain;
        }
    }

    fn add_equation(
        &mut self,
        u: Mono,
        v: Mono,
        proof: Chain,
        pending: &mut VecDeque<(Mono, Mono, Chain)>,
    ) {
        let to_u = self.normal_form(&u);
        let to_v = self.normal_form(&v);
        if to_u.last() == to_v.last() {
            return;
        }
        let mut chain = to_u.reversed();
        chain.extend(proof);
        chain.extend(to_v);
        let (lhs, rhs, proof) = match graded_lex(&chain.words[0], chain.last()) {
            Ordering::Greater => (chain.words[0].clone(), chain.last().clone(), chain),
            Ordering::Less => (
                chain.last().clone(),
                chain.words[0].clone(),
                chain.reversed(),
            ),
            Ordering::Equal => unreachable!("distinct normal forms compare unequal"),
        };
        assert_eq!(
            graded_lex(&lhs, &rhs),
            Ordering::Greater,
            "rules must decrease"
        );
        let rule = Rule { lhs, rhs, proof };

        // rules whose left side the new rule rewrites go back into the queue
        let (stale, keep): (Vec<Rule>, Vec<Rule>) = self
            .rules
            .drain(..)
            .partition(|r| divides(&rule.lhs, &r.lhs));
        self.rules = keep;
        for r in stale {
            pending.push_back((r.lhs, r.rhs, r.proof));
        }
        for other in &self.rules {
            if let Some(cp) = critical_pair(&rule, other) {
                pending.push_back(cp);
            }
        }
        self.rules.push(rule);
    }

    fn unjoined_critical_pairs(&self) -> Vec<(Mono, Mono, Chain)> {
        let mut out = Vec::new();
        for (i, a) in self.rules.iter().enumerate() {
            for b in &self.rules[i + 1..] {
                if let Some((u, v, proof)) = critical_pair(a, b) {
                    if self.normal_form(&u).last() != self.normal_form(&v).last() {
                        out.push((u, v, proof));
                    }
                }
            }
        }
        out
    }

    fn normalize_right_sides(&mut self) {
        for i in 0..self.rules.len() {
            let tail = self.normal_form(&self.rules[i].rhs);
            let rule = &mut self.rules[i];
            rule.rhs = tail.last().clone();
            rule.proof.extend(tail);
        }
    }

    pub(crate) fn rules(&self) -> Vec<(Mono, Mono)> {
        self.rules
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect()
    }

    pub(crate) fn label_normal_forms(&self) -> Vec<Mono> {
        (0..self.n)
            .map(|g| self.normal_form(&unit(self.n, g)).last().clone())
            .collect()
    }

    /// A certificate that labels `g` and `h` coincide, if they do.
    pub(crate) fn collapse_certificate(&self, g: usize, h: usize) -> Option<DerivationCertificate> {
        let to_g = self.normal_form(&unit(self.n, g));
        let to_h = self.normal_form(&unit(self.n, h));
        if to_g.last() != to_h.last() {
            return None;
        }
        let mut chain = to_g;
        chain.extend(to_h.reversed());
        if let Some(shorter) = self.shortest_chain(g, h, &chain) {
            chain = shorter;
        }
        let steps = chain
            .steps
            .iter()
            .zip(chain.words.iter().skip(1))
            .map(|((relation, direction), w)| Step {
                justification: Justification {
                    relation: *relation,
                    direction: *direction,
                    position: None,
                },
                word: mono_to_word(w),
            })
            .collect();
        let (start, steps) = shorten(mono_to_word(&chain.words[0]), steps);
        Some(DerivationCertificate {
            pair: (g, h),
            commutative: true,
            start,
            steps,
        })
    }
}

impl Completion {
    /// A shortest chain from `g` to `h` among words no longer than the
    /// longest word of `known`. Each level is explored in descending
    /// graded-lex order so the result does not depend on hashing.
    fn shortest_chain(&self, g: usize, h: usize, known: &Chain) -> Option<Chain> {
        const MAX_WORDS: usize = 50_000;
        let max_degree: u32 = known.words.iter().map(|w| w.iter().sum::<u32>()).max()?;
        let relations = &self.relations;
        let start = unit(self.n, g);
        let target = unit(self.n, h);
        let mut parent: HashMap<Mono, (Mono, Relation, Direction)> = HashMap::new();
        let mut seen: HashSet<Mono> = HashSet::from([start.clone()]);
        let mut level = vec![start.clone()];
        while !level.is_empty() {
            level.sort_by(|a, b| graded_lex(b, a));
            let mut next = Vec::new();
            for m in &level {
                for r in relations {
                    let mut lhs = vec![0; self.n];
                    lhs[r.left.0] += 1;
                    lhs[r.left.1] += 1;
                    let rhs = unit(self.n, r.right);
                    let degree: u32 = m.iter().sum();
                    for (dir, take, put) in [
                        (Direction::Forward, &lhs, &rhs),
                        (Direction::Backward, &rhs, &lhs),
                    ] {
                        if !divides(take, m) || (dir == Direction::Backward && degree >= max_degree)
                        {
                            continue;
                        }
                        let w: Mono = (0..self.n).map(|i| m[i] - take[i] + put[i]).collect();
                        if !seen.insert(w.clone()) {
                            continue;
                        }
                        parent.insert(w.clone(), (m.clone(), *r, dir));
                        if w == target {
                            let mut words = vec![w.clone()];
                            let mut steps = Vec::new();
                            let mut cur = w;
                            while let Some((prev, r, d)) = parent.get(&cur) {
                                steps.push((*r, *d));
                                words.push(prev.clone());
                                cur = prev.clone();
                            }
                            words.reverse();
                            steps.reverse();
                            return Some(Chain { words, steps });
                        }
                        if seen.len() > MAX_WORDS {
                            return None;
                        }
                        next.push(w);
                    }
                }
            }
            level = next;
        }
        None
    }
}

/// The overlap of two rules at the componentwise maximum of their left
/// sides, as an equation with a proof chain, or `None` for disjoint sides.
fn critical_pair(a: &Rule, b: &Rule) -> Option<(Mono, Mono, Chain)> {
    if !shares_label(&a.lhs, &b.lhs) {
        return None;
    }
    let top: Mono = a.lhs.iter().zip(&b.lhs).map(|(x, y)| *x.max(y)).collect();
    let ctx_a: Mono = top.iter().zip(&a.lhs).map(|(t, l)| t - l).collect();
    let ctx_b: Mono = top.iter().zip(&b.lhs).map(|(t, l)| t - l).collect();
    let via_a = a.proof.shifted(&ctx_a);
    let via_b = b.proof.shifted(&ctx_b);
    let u = via_a.last().clone();
    let v = via_b.last().clone();
    let mut proof = via_a.reversed();
    proof.extend(via_b);
    Some((u, v, proof))
}

fn mono_to_word(m: &[u32]) -> Vec<usize> {
    m.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect()
}

pub(super) fn decide(table: &FusionTable) -> Verdict {
    let sys = Completion::run(table);
    let n = table.len();
    for g in 0..n {
        for h in g + 1..n {
            if let Some(cert) = sys.collapse_certificate(g, h) {
                return Verdict::NotRealizable(Refutation::Derivation(cert));
            }
        }
    }
    Verdict::Realizable(Witness::Quotient(QuotientWitness {
        rules: sys.rules(),
        normal_forms: sys.label_normal_forms(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(labels: &[&str], products: &[(&str, &str, &str)]) -> FusionTable {
        FusionTable::from_named(labels, products).unwrap()
    }

    #[test]
    fn ordering_is_degree_then_label_order() {
        assert_eq!(graded_lex(&[2, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(graded_lex(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
        assert_eq!(graded_lex(&[1, 1], &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn completed_systems_are_locally_confluent() {
        let tables = [
            table(
                &["a", "b", "c"],
                &[("a", "a", "a"), ("a", "b", "c"), ("a", "c", "b")],
            ),
            table(
                &["a", "b", "c", "d", "m"],
                &[
                    ("a", "b", "b"),
                    ("a", "c", "c"),
                    ("b", "c", "a"),
                    ("a", "d", "m"),
                    ("a", "m", "d"),
                    ("d", "m", "a"),
                ],
            ),
            table(&["x", "y", "z"], &[("x", "z", "z"), ("y", "z", "z")]),
            table(
                &["p", "q"],
                &[("p", "p", "q"), ("q", "q", "p"), ("p", "q", "p")],
            ),
        ];
        for t in &tables {
            let sys = Completion::run(t);
            assert!(sys.unjoined_critical_pairs().is_empty());
            for r in &sys.rules {
                assert_eq!(graded_lex(&r.lhs, &r.rhs), Ordering::Greater);
                assert_eq!(&r.proof.words[0], &r.lhs);
                assert_eq!(r.proof.last(), &r.rhs);
                // right sides are irreducible
                assert!(sys.rules.iter().all(|o| !divides(&o.lhs, &r.rhs)));
            }
            // proof chains consist of single relation steps
            for r in &sys.rules {
                for (k, (rel, dir)) in r.proof.steps.iter().enumerate() {
                    let (from, to) = (&r.proof.words[k], &r.proof.words[k + 1]);
                    let mut lhs = vec![0u32; t.len()];
                    lhs[rel.left.0] += 1;
                    lhs[rel.left.1] += 1;
                    let rhs = unit(t.len(), rel.right);
                    let (take, put) = match dir {
                        Direction::Forward => (lhs, rhs),
                        Direction::Backward => (rhs, lhs),
                    };
                    assert!(divides(&take, from));
                    let expect: Mono = (0..t.len()).map(|i| from[i] - take[i] + put[i]).collect();
                    assert_eq!(&expect, to);
                }
            }
        }
    }
}
