//! Bounded congruence closure on noncommutative words.
//!
//! A breadth-first search grows the congruence classes of all labels at once,
//! one rewrite at a time, over words of bounded length. Two classes meeting
//! yields a shortest chain (within the bound) between two distinct labels.

use std::collections::{HashMap, VecDeque};

use super::{DerivationCertificate, Direction, Justification, Relation, SearchLimits, Step, Word};
use crate::grading::FusionTable;

struct Visit {
    source: usize,
    parent: Option<(Word, Justification)>,
}

fn neighbours(
    word: &[usize],
    relations: &[Relation],
    max_len: usize,
) -> Vec<(Word, Justification)> {
    let mut out = Vec::new();
    for p in 0..word.len() {
        for r in relations {
            if p + 1 < word.len() && word[p] == r.left.0 && word[p + 1] == r.left.1 {
                let mut w = word[..p].to_vec();
                w.push(r.right);
                w.extend_from_slice(&word[p + 2..]);
                out.push((
                    w,
                    Justification {
                        relation: *r,
                        direction: Direction::Forward,
                        position: Some(p),
                    },
                ));
            }
            if word[p] == r.right && word.len() < max_len {
                let mut w = word[..p].to_vec();
                w.push(r.left.0);
                w.push(r.left.1);
                w.extend_from_slice(&word[p + 1..]);
                out.push((
                    w,
                    Justification {
                        relation: *r,
                        direction: Direction::Backward,
                        position: Some(p),
                    },
                ));
            }
        }
    }
    out
}

/// Chain from the source label of `word` to `word`.
fn path_to(visited: &HashMap<Word, Visit>, word: &Word) -> (Word, Vec<Step>) {
    let mut steps = Vec::new();
    let mut cur = word.clone();
    while let Some((prev, just)) = &visited[&cur].parent {
        steps.push(Step {
            justification: just.clone(),
            word: cur.clone(),
        });
        cur = prev.clone();
    }
    steps.reverse();
    (cur, steps)
}

fn reversed(start: Word, steps: Vec<Step>) -> (Word, Vec<Step>) {
    let mut words: Vec<Word> = std::iter::once(start)
        .chain(steps.iter().map(|s| s.word.clone()))
        .collect();
    words.reverse();
    let steps = steps
        .into_iter()
        .rev()
        .zip(words.iter().skip(1))
        .map(|(s, w)| Step {
            justification: Justification {
                direction: s.justification.direction.flipped(),
                ..s.justification
            },
            word: w.clone(),
        })
        .collect();
    (words.swap_remove(0), steps)
}

/// Searches for two labels identified by the congruence; `None` when the
/// bounds are exhausted without a collapse.
pub(super) fn search_collapse(
    table: &FusionTable,
    limits: &SearchLimits,
) -> Option<DerivationCertificate> {
    let relations = Relation::from_table(table, false);
    let mut visited: HashMap<Word, Visit> = HashMap::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    for g in 0..table.len() {
        visited.insert(
            vec![g],
            Visit {
                source: g,
                parent: None,
            },
        );
        queue.push_back(vec![g]);
    }
    while let Some(word) = queue.pop_front() {
        let source = visited[&word].source;
        for (next, just) in neighbours(&word, &relations, limits.max_word_len) {
            match visited.get(&next) {
                Some(seen) if seen.source != source => {
                    let (start, mut steps) = path_to(&visited, &word);
                    steps.push(Step {
                        justification: just,
                        word: next.clone(),
                    });
                    let (back_start, back_steps) = path_to(&visited, &next);
                    let (_, tail) = reversed(back_start, back_steps);
                    steps.extend(tail);
                    let (g, h) = (start[0], seen.source);
                    return Some(DerivationCertificate {
                        pair: (g, h),
                        commutative: false,
                        start,
                        steps,
                    });
                }
                Some(_) => {}
                None => {
                    if visited.len() >= limits.max_pairs {
                        return None;
                    }
                    visited.insert(
                        next.clone(),
                        Visit {
                            source,
                            parent: Some((word.clone(), just)),
                        },
                    );
                    queue.push_back(next);
                }
            }
        }
    }
    None
}
