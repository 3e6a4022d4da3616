//! Lie gradings: labeled direct-sum decompositions whose component brackets
//! are each either zero or contained in a single component.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactmath::{MathError, Subspace};
use crate::liealg::{LieAlgebra, LieError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading has no parts")]
    NoParts,
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("part `{0}` is zero")]
    EmptyPart(String),
    #[error("parts do not form a direct sum")]
    NotDirectSum,
    #[error("parts do not span the algebra")]
    NotSpanning,
    #[error("[{left},{right}] is not homogeneous: {witness} lies in no single part")]
    BracketNotHomogeneous {
        left: String,
        right: String,
        witness: String,
    },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("gradings live on different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl From<MathError> for GradingError {
    fn from(e: MathError) -> Self {
        GradingError::Lie(LieError::Math(e))
    }
}

/// A validated Lie grading `L = ⊕ L_g`. Label order is declaration order and
/// fixes every iteration order downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    algebra: Arc<LieAlgebra>,
    labels: Vec<String>,
    parts: Vec<Subspace>,
}

/// Validates `parts` as a grading of `alg`.
pub fn validate_grading(
    alg: Arc<LieAlgebra>,
    parts: Vec<(String, Subspace)>,
) -> Result<Grading, GradingError> {
    if parts.is_empty() {
        return Err(GradingError::NoParts);
    }
    let mut labels = Vec::with_capacity(parts.len());
    let mut spaces = Vec::with_capacity(parts.len());
    for (label, space) in parts {
        if label.is_empty()
            || label
                .chars()
                .any(|c| c.is_whitespace() || "*^=,".contains(c))
        {
            return Err(GradingError::InvalidLabel(label));
        }
        if labels.contains(&label) {
            return Err(GradingError::DuplicateLabel(label));
        }
        alg.check_subspace(&space)?;
        if space.is_zero() {
            return Err(GradingError::EmptyPart(label));
        }
        labels.push(label);
        spaces.push(space);
    }
    let total = spaces
        .iter()
        .try_fold(Subspace::zero(alg.field(), alg.dim()), |acc, s| acc.sum(s))?;
    let rank_sum: usize = spaces.iter().map(Subspace::rank).sum();
    if total.rank() < rank_sum {
        return Err(GradingError::NotDirectSum);
    }
    if total.rank() < alg.dim() {
        return Err(GradingError::NotSpanning);
    }
    let grading = Grading {
        algebra: alg,
        labels,
        parts: spaces,
    };
    grading.products()?;
    Ok(grading)
}

impl Grading {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, label: &str) -> Option<&Subspace> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.parts[i])
    }

    /// For each unordered pair `(g, g')`, the index of the part containing the
    /// nonzero span `[L_g, L_g']`, or an error naming a vector that escapes.
    fn products(&self) -> Result<BTreeMap<(usize, usize), usize>, GradingError> {
        let mut products = BTreeMap::new();
        for g in 0..self.parts.len() {
            for h in g..self.parts.len() {
                let span = self
                    .algebra
                    .bracket_subspaces(&self.parts[g], &self.parts[h])?;
                if span.is_zero() {
                    continue;
                }
                let violation =
                    |v: &[crate::exactmath::Scalar]| GradingError::BracketNotHomogeneous {
                        left: self.labels[g].clone(),
                        right: self.labels[h].clone(),
                        witness: self.algebra.render_vector(v),
                    };
                let first = &span.basis()[0];
                let mut home = None;
                for (k, part) in self.parts.iter().enumerate() {
                    if part.contains(first)? {
                        home = Some(k);
                        break;
                    }
                }
                let home = home.ok_or_else(|| violation(first))?;
                for v in span.basis() {
                    if !self.parts[home].contains(v)? {
                        return Err(violation(v));
                    }
                }
                products.insert((g, h), home);
                products.insert((h, g), home);
            }
        }
        Ok(products)
    }

    /// The partial operation `(g, g') ↦ g''` with `0 ≠ [L_g, L_g'] ⊆ L_g''`.
    pub fn fusion_table(&self) -> FusionTable {
        let products = self.products().expect("grading was validated");
        FusionTable {
            labels: self.labels.clone(),
            products,
        }
    }

    /// Merges parts along `partition`, a list of blocks of labels covering
    /// every label exactly once. Merged labels default to the block's labels
    /// joined with `+`; `names` overrides them. The result is re-validated.
    pub fn coarsen(
        &self,
        partition: &[Vec<String>],
        names: Option<&[String]>,
    ) -> Result<Grading, GradingError> {
        let mut seen = vec![false; self.labels.len()];
        for block in partition {
            if block.is_empty() {
                return Err(GradingError::InvalidPartition("empty block".into()));
            }
            for label in block {
                let i = self.labels.iter().position(|l| l == label).ok_or_else(|| {
                    GradingError::InvalidPartition(format!("unknown label `{label}`"))
                })?;
                if seen[i] {
                    return Err(GradingError::InvalidPartition(format!(
                        "label `{label}` used twice"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(GradingError::InvalidPartition(format!(
                "label `{}` not covered",
                self.labels[i]
            )));
        }
        if let Some(names) = names {
            if names.len() != partition.len() {
                return Err(GradingError::InvalidPartition(
                    "one name per block required".into(),
                ));
            }
        }
        let mut parts = Vec::with_capacity(partition.len());
        for (b, block) in partition.iter().enumerate() {
            let mut space = Subspace::zero(self.algebra.field(), self.algebra.dim());
            for label in block {
                space = space.sum(self.part(label).expect("checked above"))?;
            }
            let name = match names {
                Some(names) => names[b].clone(),
                None => block.join("+"),
            };
            parts.push((name, space));
        }
        validate_grading(self.algebra.clone(), parts)
    }

    /// Same parts up to relabeling and reordering.
    pub fn same_decomposition(&self, other: &Grading) -> bool {
        let mut a = self.parts.clone();
        let mut b = other.parts.clone();
        a.sort();
        b.sort();
        self.algebra == other.algebra && a == b
    }

    /// Whether `S = ⊕_g (S ∩ L_g)`.
    pub fn is_graded_subspace(&self, s: &Subspace) -> Result<bool, GradingError> {
        self.algebra.check_subspace(s)?;
        let mut total = 0;
        for part in &self.parts {
            total += s.intersection(part)?.rank();
        }
        Ok(total == s.rank())
    }
}

/// Whether every part of `fine` lies inside some part of `coarse`.
pub fn is_refinement(fine: &Grading, coarse: &Grading) -> Result<bool, GradingError> {
    if fine.algebra != coarse.algebra {
        return Err(GradingError::AlgebraMismatch);
    }
    for part in &fine.parts {
        let mut inside = false;
        for big in &coarse.parts {
            if big.contains_subspace(part)? {
                inside = true;
                break;
            }
        }
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, part) in self.labels.iter().zip(&self.parts) {
            let vs: Vec<String> = part
                .basis()
                .iter()
                .map(|v| self.algebra.render_vector(v))
                .collect();
            writeln!(f, "{label} = span{{{}}}", vs.join(", "))?;
        }
        Ok(())
    }
}

/// The partial binary operation on labels induced by nonzero brackets of
/// components. Symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionTable {
    labels: Vec<String>,
    products: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("conflicting products for {0}*{1}")]
    Conflict(String, String),
}

impl FusionTable {
    /// A table from explicit products `(g, g', g'')`; the symmetric entries are
    /// added automatically.
    pub fn new(
        labels: Vec<String>,
        products: &[(usize, usize, usize)],
    ) -> Result<FusionTable, FusionError> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(FusionError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut map = BTreeMap::new();
        for &(a, b, c) in products {
            if a >= n || b >= n || c >= n {
                return Err(FusionError::UnknownLabel(format!("#{}", a.max(b).max(c))));
            }
            for key in [(a, b), (b, a)] {
                if let Some(&old) = map.get(&key) {
                    if old != c {
                        return Err(FusionError::Conflict(labels[a].clone(), labels[b].clone()));
                    }
                }
                map.insert(key, c);
            }
        }
        Ok(FusionTable {
            labels,
            products: map,
        })
    }

    /// Like [`FusionTable::new`] with products given by label names.
    pub fn from_named(
        labels: &[&str],
        products: &[(&str, &str, &str)],
    ) -> Result<FusionTable, FusionError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| FusionError::UnknownLabel(s.into()))
        };
        let mut triples = Vec::new();
        for (a, b, c) in products {
            triples.push((idx(a)?, idx(b)?, idx(c)?));
        }
        FusionTable::new(labels, &triples)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        self.products.get(&(g, h)).copied()
    }

    /// Defined products `(g, g', g'')` with `g <= g'`, in label order.
    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.products
            .iter()
            .filter(|((a, b), _)| a <= b)
            .map(|(&(a, b), &c)| (a, b, c))
            .collect()
    }

    /// Same table after renaming label `i` to `perm[i]`-th position.
    pub fn permuted(&self, perm: &[usize]) -> FusionTable {
        let mut labels = vec![String::new(); self.labels.len()];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        let products = self
            .products
            .iter()
            .map(|(&(a, b), &c)| ((perm[a], perm[b]), perm[c]))
            .collect();
        FusionTable { labels, products }
    }
}

impl fmt::Display for FusionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .entries()
            .iter()
            .map(|&(a, b, c)| format!("{}*{}={}", self.labels[a], self.labels[b], self.labels[c]))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}
