//! Realizability of fusion tables.
//!
//! A grading satisfies property (P) over a semigroup `S` when its labels map
//! injectively into `S` with `g·g' = g''` whenever `0 ≠ [L_g, L_g'] ⊆ L_g''`.
//! The free (abelian) semigroup on the labels modulo the congruence generated
//! by those relations is the freest such object: every realizing semigroup
//! receives a homomorphism from it. So a table is realizable exactly when its
//! labels stay pairwise distinct in that quotient, and a collapse `g ~ h`
//! there, witnessed by a chain of single-relation rewrites, rules out every
//! semigroup at once.
//!
//! Three deciders are provided:
//!
//! * [`realize_abelian_group`]: lattice membership in `ℤ^G`; witnesses are read
//!   off the Smith form of the relation matrix.
//! * [`realize_abelian_semigroup`]: completion of the commutative rewriting
//!   system (always terminates); witnesses are the completed rules.
//! * [`realize_semigroup`]: bounded search, either a congruence chain over
//!   noncommutative words or a finite Cayley table. May return `Unknown`.
//!
//! [`verify_certificate`] replays any outcome without using the deciders.

mod closure;
mod completion;
mod group;
mod model;
mod syntax;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::grading::FusionTable;
use num_bigint::BigInt;

pub use syntax::{parse_relation, parse_word, render_relation, render_word, ParseError};
pub use verify::{verify_certificate, CertificateError};

/// Which kind of target structure is asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Group,
    AbelianSemigroup,
    Semigroup,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Group, Mode::AbelianSemigroup, Mode::Semigroup];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Group => "group",
            Mode::AbelianSemigroup => "abelian-semigroup",
            Mode::Semigroup => "semigroup",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "group" => Ok(Mode::Group),
            "abelian-semigroup" => Ok(Mode::AbelianSemigroup),
            "semigroup" => Ok(Mode::Semigroup),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Realizable,
    NotRealizable,
    Unknown,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Realizable => "realizable",
            Status::NotRealizable => "not-realizable",
            Status::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Status, String> {
        match s {
            "realizable" => Ok(Status::Realizable),
            "not-realizable" => Ok(Status::NotRealizable),
            "unknown" => Ok(Status::Unknown),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// `left.0 · left.1 = right`, one defined product of a fusion table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub left: (usize, usize),
    pub right: usize,
}

impl Relation {
    /// The relations of `table`: one per unordered defined pair when
    /// `commutative`, otherwise both orders of every pair.
    pub fn from_table(table: &FusionTable, commutative: bool) -> Vec<Relation> {
        let mut out = Vec::new();
        for (a, b, c) in table.entries() {
            out.push(Relation {
                left: (a, b),
                right: c,
            });
            if !commutative && a != b {
                out.push(Relation {
                    left: (b, a),
                    right: c,
                });
            }
        }
        out
    }
}

/// A word over the labels, as label indices. In commutative certificates
/// words are kept sorted and compared as multisets.
pub type Word = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `g·g'` is replaced by `g''`.
    Forward,
    /// `g''` is replaced by `g·g'`.
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One rewrite: `relation` applied in `direction`. Noncommutative steps carry
/// the index in the previous word where the rewritten factor starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Justification {
    pub relation: Relation,
    pub direction: Direction,
    pub position: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub justification: Justification,
    /// The word after the rewrite.
    pub word: Word,
}

/// A chain of single-relation rewrites from the label `pair.0` to the label
/// `pair.1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationCertificate {
    pub pair: (usize, usize),
    pub commutative: bool,
    pub start: Word,
    pub steps: Vec<Step>,
}

impl DerivationCertificate {
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.word))
    }

    /// `gamma = alpha*beta = alpha^2*beta = alpha*gamma = beta`.
    pub fn chain_text(&self, labels: &[String]) -> String {
        let words: Vec<String> = self.words().map(|w| render_word(labels, w)).collect();
        words.join(" = ")
    }
}

/// An integer combination of relation vectors `e_a + e_b - e_c` equal to
/// `e_g - e_h`, where `(g, h) = pair`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCertificate {
    pub pair: (usize, usize),
    pub combination: Vec<(Relation, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Refutation {
    Derivation(DerivationCertificate),
    Lattice(LatticeCertificate),
}

impl Refutation {
    pub fn pair(&self) -> (usize, usize) {
        match self {
            Refutation::Derivation(d) => d.pair,
            Refutation::Lattice(l) => l.pair,
        }
    }
}

/// Labels placed in `ℤ^free_rank × ⊕ ℤ/torsion[i]`. Each assignment lists the
/// free coordinates first, then one residue per torsion factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWitness {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub assignment: Vec<Vec<BigInt>>,
}

/// A finite semigroup on `0..size`; element `i < |G|` is label `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelWitness {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

/// A confluent, terminating commutative rewriting system on exponent
/// vectors over the labels; its quotient realizes the table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientWitness {
    pub rules: Vec<(Vec<u32>, Vec<u32>)>,
    pub normal_forms: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Group(GroupWitness),
    Model(ModelWitness),
    Quotient(QuotientWitness),
}

/// Bounds for the semigroup search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchLimits {
    pub max_word_len: usize,
    /// Cap on distinct words visited by the congruence closure.
    pub max_pairs: usize,
    /// Largest carrier tried by the model search; `None` means `|G| + 2`.
    pub max_model_size: Option<usize>,
    /// Backtracking nodes per carrier size.
    pub max_model_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_word_len: 8,
            max_pairs: 100_000,
            max_model_size: None,
            max_model_nodes: 1_000_000,
        }
    }
}

impl SearchLimits {
    pub fn model_size_for(&self, labels: usize) -> usize {
        self.max_model_size.unwrap_or(labels + 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Realizable(Witness),
    NotRealizable(Refutation),
    /// Search bounds exhausted (semigroup mode only), with the bounds used.
    Unknown(SearchLimits),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealizeOutcome {
    pub mode: Mode,
    pub verdict: Verdict,
}

impl RealizeOutcome {
    pub fn status(&self) -> Status {
        match self.verdict {
            Verdict::Realizable(_) => Status::Realizable,
            Verdict::NotRealizable(_) => Status::NotRealizable,
            Verdict::Unknown(_) => Status::Unknown,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match &self.verdict {
            Verdict::NotRealizable(r) => Some(r),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Realizable(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides realizability over an abelian group.
pub fn realize_abelian_group(table: &FusionTable) -> RealizeOutcome {
    RealizeOutcome {
        mode: Mode::Group,
        verdict: group::decide(table),
    }
}

/// Decides realizability over an abelian semigroup.
pub fn realize_abelian_semigroup(table: &FusionTable) -> RealizeOutcome {
    RealizeOutcome {
        mode: Mode::AbelianSemigroup,
        verdict: completion::decide(table),
    }
}

/// Realizability over an arbitrary semigroup, within `limits`.
///
/// An abelian realization is reused when one exists (a small Cayley table is
/// preferred as witness over the rewriting system). Otherwise a collapse is
/// sought among noncommutative words, then a finite model, and `Unknown` is
/// returned when both searches run out.
pub fn realize_semigroup(table: &FusionTable, limits: &SearchLimits) -> RealizeOutcome {
    let outcome = |verdict| RealizeOutcome {
        mode: Mode::Semigroup,
        verdict,
    };
    let max_size = limits.model_size_for(table.len());
    if let Verdict::Realizable(abelian) = completion::decide(table) {
        let quick = SearchLimits {
            max_model_nodes: limits.max_model_nodes.min(20_000),
            ..*limits
        };
        return match model::search(table, max_size, &quick) {
            Some(m) => outcome(Verdict::Realizable(Witness::Model(m))),
            None => outcome(Verdict::Realizable(abelian)),
        };
    }
    if let Some(chain) = closure::search_collapse(table, limits) {
        return outcome(Verdict::NotRealizable(Refutation::Derivation(chain)));
    }
    if let Some(m) = model::search(table, max_size, limits) {
        return outcome(Verdict::Realizable(Witness::Model(m)));
    }
    outcome(Verdict::Unknown(SearchLimits {
        max_model_size: Some(max_size),
        ..*limits
    }))
}

/// Dispatches on `mode`.
pub fn realize(table: &FusionTable, mode: Mode, limits: &SearchLimits) -> RealizeOutcome {
    match mode {
        Mode::Group => realize_abelian_group(table),
        Mode::AbelianSemigroup => realize_abelian_semigroup(table),
        Mode::Semigroup => realize_semigroup(table, limits),
    }
}

/// Drops loops from a chain: whenever a word reappears, the detour between
/// its two occurrences is cut.
pub(crate) fn shorten(start: Word, steps: Vec<Step>) -> (Word, Vec<Step>) {
    let mut words: Vec<Word> = vec![start];
    let mut kept: Vec<Step> = Vec::new();
    for step in steps {
        if let Some(i) = words.iter().position(|w| *w == step.word) {
            words.truncate(i + 1);
            kept.truncate(i);
        } else {
            words.push(step.word.clone());
            kept.push(step);
        }
    }
    (words.swap_remove(0), kept)
}

#[cfg(test)]
mod tests;
