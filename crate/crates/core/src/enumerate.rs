//! Exhaustive census over a small prime field: every Lie algebra of
//! dimension at most three, every grading of it, and the realizability of
//! each grading over an abelian semigroup.
//!
//! Algebras are labeled structure-constant tuples and gradings are labeled
//! decompositions; nothing is identified up to isomorphism.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::{Field, Subspace, Vector};
use crate::grading::{validate_grading, FusionTable, Grading};
use crate::liealg::LieAlgebra;
use crate::realize::{
    realize_abelian_group, realize_abelian_semigroup, verify_certificate, Mode, ModelWitness,
    RealizeOutcome, Status, Verdict, Witness,
};

pub const MAX_DIM: usize = 3;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("the census needs GF(2) or GF(3), not {0}")]
    UnsupportedField(Field),
    #[error("the census covers dimensions 1 to {MAX_DIM}, not {0}")]
    UnsupportedDimension(usize),
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
}

fn check_scope(field: Field, dim: usize) -> Result<u32, EnumError> {
    let q = match field.order() {
        Some(q @ (2 | 3)) => q,
        _ => return Err(EnumError::UnsupportedField(field)),
    };
    if dim == 0 || dim > MAX_DIM {
        return Err(EnumError::UnsupportedDimension(dim));
    }
    Ok(q)
}

fn basis_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn upper_pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
        .collect()
}

/// Number of alternating products on `field^dim`: one vector per pair `i < j`.
pub fn candidate_count(field: Field, dim: usize) -> Result<u64, EnumError> {
    let q = u64::from(check_scope(field, dim)?);
    Ok(q.pow((dim * upper_pairs(dim).len()) as u32))
}

/// The `index`-th alternating product, digits least significant first.
pub fn candidate(field: Field, dim: usize, index: u64) -> Result<LieAlgebra, EnumError> {
    let q = u64::from(check_scope(field, dim)?);
    let elements = field.elements().expect("finite field");
    let mut code = index;
    let brackets: Vec<(usize, usize, Vector)> = upper_pairs(dim)
        .into_iter()
        .map(|(i, j)| {
            let v = (0..dim)
                .map(|_| {
                    let d = code % q;
                    code /= q;
                    elements[d as usize].clone()
                })
                .collect();
            (i, j, v)
        })
        .collect();
    Ok(LieAlgebra::new(field, basis_names(dim), &brackets).expect("well-formed candidate"))
}

/// Every Lie algebra structure on `field^dim`, in candidate order.
pub fn enum_lie_algebras(field: Field, dim: usize) -> Result<Vec<LieAlgebra>, EnumError> {
    let total = candidate_count(field, dim)?;
    Ok((0..total)
        .map(|k| candidate(field, dim, k).expect("in scope"))
        .filter(|alg| alg.check_lie_axioms().is_valid())
        .collect())
}

/// All nonzero proper subspaces of `field^dim`, sorted.
fn proper_subspaces(field: Field, dim: usize) -> Vec<Subspace> {
    let elements = field.elements().expect("finite field");
    let q = elements.len();
    let vectors: Vec<Vector> = (1..q.pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let d = code % q;
                    code /= q;
                    elements[d].clone()
                })
                .collect()
        })
        .collect();
    let mut found = BTreeSet::new();
    // every subspace of dimension <= 2 is spanned by at most two vectors
    for (i, v) in vectors.iter().enumerate() {
        found.insert(Subspace::span(field, dim, std::slice::from_ref(v)).expect("shape"));
        for w in &vectors[i + 1..] {
            found.insert(Subspace::span(field, dim, &[v.clone(), w.clone()]).expect("shape"));
        }
    }
    found.into_iter().filter(|s| s.rank() < dim).collect()
}

/// Unordered decompositions of `field^dim` into at least two nonzero parts,
/// each listed with its parts in increasing order.
pub fn enum_decompositions(field: Field, dim: usize) -> Result<Vec<Vec<Subspace>>, EnumError> {
    check_scope(field, dim)?;
    fn extend(
        subspaces: &[Subspace],
        from: usize,
        sum: &Subspace,
        parts: &mut Vec<Subspace>,
        out: &mut Vec<Vec<Subspace>>,
    ) {
        if sum.rank() == sum.ambient_dim() {
            if parts.len() >= 2 {
                out.push(parts.clone());
            }
            return;
        }
        for (k, s) in subspaces.iter().enumerate().skip(from) {
            let next = sum.sum(s).expect("same ambient space");
            if next.rank() != sum.rank() + s.rank() {
                continue;
            }
            parts.push(s.clone());
            extend(subspaces, k + 1, &next, parts, out);
            parts.pop();
        }
    }
    let subspaces = proper_subspaces(field, dim);
    let mut out = Vec::new();
    extend(
        &subspaces,
        0,
        &Subspace::zero(field, dim),
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

fn label_parts(parts: &[Subspace]) -> Vec<(String, Subspace)> {
    parts
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("p{}", i + 1), s.clone()))
        .collect()
}

/// Every grading of `alg` with at least two parts, labeled `p1, p2, …`.
pub fn enum_gradings(alg: &Arc<LieAlgebra>) -> Result<Vec<Grading>, EnumError> {
    let decompositions = enum_decompositions(alg.field(), alg.dim())?;
    Ok(decompositions
        .iter()
        .filter_map(|parts| validate_grading(alg.clone(), label_parts(parts)).ok())
        .collect())
}

/// The outcome of running one grading through the census pipeline.
#[derive(Clone, Debug)]
pub struct GradingCheck {
    pub fusion: FusionTable,
    pub group: RealizeOutcome,
    pub abelian_semigroup: RealizeOutcome,
    /// Both certificates replayed successfully.
    pub verified: bool,
    /// For a nonempty table whose products all land on one label: whether
    /// the constant semigroup on the labels verifies as a witness.
    pub constant_model: Option<bool>,
}

impl GradingCheck {
    pub fn realizable(&self) -> bool {
        self.abelian_semigroup.status() == Status::Realizable
    }
}

fn constant_target(table: &FusionTable) -> Option<usize> {
    let entries = table.entries();
    let (_, _, c) = *entries.first()?;
    entries.iter().all(|e| e.2 == c).then_some(c)
}

pub fn check_grading(grading: &Grading) -> GradingCheck {
    let fusion = grading.fusion_table();
    let group = realize_abelian_group(&fusion);
    let abelian_semigroup = realize_abelian_semigroup(&fusion);
    let verified = [&group, &abelian_semigroup]
        .iter()
        .all(|o| verify_certificate(&fusion, o).unwrap_or(false));
    let constant_model = constant_target(&fusion).map(|c| {
        let n = fusion.len();
        let outcome = RealizeOutcome {
            mode: Mode::AbelianSemigroup,
            verdict: Verdict::Realizable(Witness::Model(ModelWitness {
                size: n,
                table: vec![vec![c; n]; n],
            })),
        };
        verify_certificate(&fusion, &outcome).unwrap_or(false)
    });
    GradingCheck {
        fusion,
        group,
        abelian_semigroup,
        verified,
        constant_model,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusFailure {
    /// Candidate index of the algebra.
    pub algebra: u64,
    pub grading: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub field: Field,
    pub dimension: usize,
    pub algebras_total: u64,
    pub algebras_valid: u64,
    pub decompositions: u64,
    pub gradings_checked: u64,
    pub realizable_group: u64,
    pub realizable_abelian_semigroup: u64,
    pub certificates_verified: u64,
    /// Gradings realized by the constant semigroup on their labels.
    pub constant_witnesses: u64,
    pub failures: Vec<CensusFailure>,
}

impl CensusReport {
    fn empty(field: Field, dimension: usize) -> CensusReport {
        CensusReport {
            field,
            dimension,
            algebras_total: 0,
            algebras_valid: 0,
            decompositions: 0,
            gradings_checked: 0,
            realizable_group: 0,
            realizable_abelian_semigroup: 0,
            certificates_verified: 0,
            constant_witnesses: 0,
            failures: Vec::new(),
        }
    }

    fn merge(mut self, other: CensusReport) -> CensusReport {
        self.algebras_total += other.algebras_total;
        self.algebras_valid += other.algebras_valid;
        self.gradings_checked += other.gradings_checked;
        self.realizable_group += other.realizable_group;
        self.realizable_abelian_semigroup += other.realizable_abelian_semigroup;
        self.certificates_verified += other.certificates_verified;
        self.constant_witnesses += other.constant_witnesses;
        self.failures.extend(other.failures);
        self
    }

    /// No grading failed: the theorem holds at this scale.
    pub fn confirmed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn census_one(
    field: Field,
    dim: usize,
    index: u64,
    decompositions: &[Vec<Subspace>],
) -> CensusReport {
    let mut report = CensusReport::empty(field, dim);
    report.algebras_total = 1;
    let alg = Arc::new(candidate(field, dim, index).expect("in scope"));
    if !alg.check_lie_axioms().is_valid() {
        return report;
    }
    report.algebras_valid = 1;
    for parts in decompositions {
        let Ok(grading) = validate_grading(alg.clone(), label_parts(parts)) else {
            continue;
        };
        report.gradings_checked += 1;
        let check = check_grading(&grading);
        let group_ok = check.group.status() == Status::Realizable;
        report.realizable_group += u64::from(group_ok);
        report.realizable_abelian_semigroup += u64::from(check.realizable());
        report.certificates_verified += u64::from(check.verified);
        report.constant_witnesses += u64::from(check.constant_model == Some(true));
        let reason = if !check.realizable() {
            Some("not realizable over an abelian semigroup".to_string())
        } else if !check.verified {
            Some("certificate failed to verify".to_string())
        } else if check.constant_model == Some(false) {
            Some("constant semigroup rejected".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            report.failures.push(CensusFailure {
                algebra: index,
                grading: grading.to_string(),
                reason,
            });
        }
    }
    report
}

/// Runs the census on `field^dim` using `jobs` threads (`0` means the rayon
/// default). The report does not depend on `jobs`.
pub fn census(field: Field, dim: usize, jobs: usize) -> Result<CensusReport, EnumError> {
    let total = candidate_count(field, dim)?;
    let decompositions = enum_decompositions(field, dim)?;
    let mut start = CensusReport::empty(field, dim);
    start.decompositions = decompositions.len() as u64;
    if jobs == 1 {
        return Ok((0..total)
            .map(|k| census_one(field, dim, k, &decompositions))
            .fold(start, CensusReport::merge));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
    let parts: Vec<CensusReport> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|k| census_one(field, dim, k, &decompositions))
            .collect()
    });
    Ok(parts.into_iter().fold(start, CensusReport::merge))
}

/// The theorem at its largest dimension: every grading of every Lie algebra
/// on `field^3` is realizable over an abelian semigroup.
pub fn verify_theorem_dim3(field: Field) -> Result<CensusReport, EnumError> {
    census(field, 3, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactmath::Scalar;

    fn gf2() -> Field {
        Field::gf2()
    }

    fn gf3() -> Field {
        Field::prime(3).unwrap()
    }

    /// Jacobi on basis triples with the bracket read straight off the table.
    fn naive_jacobi(alg: &LieAlgebra) -> bool {
        let n = alg.dim();
        let f = alg.field();
        let br = |v: &[Scalar], k: usize| -> Vec<Scalar> {
            // [v, e_k]
            let mut out = vec![f.zero(); n];
            for (i, c) in v.iter().enumerate() {
                for (t, x) in alg.basis_bracket(i, k).iter().enumerate() {
                    out[t] = &out[t] + &(c * x);
                }
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                    let a = br(alg.basis_bracket(i, j), k);
                    let b = br(alg.basis_bracket(j, k), i);
                    let c = br(alg.basis_bracket(k, i), j);
                    if (0..n).any(|t| !(&(&a[t] + &b[t]) + &c[t]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(gf2(), 1).unwrap(), 1);
        assert_eq!(candidate_count(gf2(), 2).unwrap(), 4);
        assert_eq!(candidate_count(gf2(), 3).unwrap(), 512);
        assert_eq!(candidate_count(gf3(), 3).unwrap(), 19683);
        assert_eq!(
            candidate_count(Field::Rationals, 2),
            Err(EnumError::UnsupportedField(Field::Rationals))
        );
        assert_eq!(
            candidate_count(gf2(), 4),
            Err(EnumError::UnsupportedDimension(4))
        );
    }

    #[test]
    fn jacobi_filter_matches_naive_filter() {
        for field in [gf2(), gf3()] {
            for dim in 1..=3 {
                let total = candidate_count(field, dim).unwrap();
                let mut naive = 0;
                for k in 0..total {
                    let alg = candidate(field, dim, k).unwrap();
                    let ok = naive_jacobi(&alg);
                    assert_eq!(
                        ok,
                        alg.check_lie_axioms().is_valid(),
                        "{field} dim {dim} candidate {k}"
                    );
                    naive += usize::from(ok);
                }
                assert_eq!(enum_lie_algebras(field, dim).unwrap().len(), naive);
            }
        }
    }

    #[test]
    fn small_dimensions_are_all_lie() {
        assert_eq!(enum_lie_algebras(gf2(), 1).unwrap().len(), 1);
        // Jacobi is vacuous on two generators
        assert_eq!(enum_lie_algebras(gf2(), 2).unwrap().len(), 4);
        assert_eq!(enum_lie_algebras(gf3(), 2).unwrap().len(), 9);
    }

    #[test]
    fn decomposition_counts() {
        let d = enum_decompositions(gf2(), 3).unwrap();
        let shape = |k: usize| d.iter().filter(|p| p.len() == k).count();
        // (7*6*4)/3! lines, and 7 planes with 4 complementary lines each
        assert_eq!(shape(3), 28);
        assert_eq!(shape(2), 28);
        assert_eq!(d.len(), 56);
        assert_eq!(enum_decompositions(gf2(), 2).unwrap().len(), 3);
        assert!(enum_decompositions(gf2(), 1).unwrap().is_empty());
        // over GF(3): 13*12*9/6 + 13*9
        assert_eq!(enum_decompositions(gf3(), 3).unwrap().len(), 234 + 117);
        for parts in &d {
            let total: usize = parts.iter().map(Subspace::rank).sum();
            assert_eq!(total, 3);
            assert!(parts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn abelian_algebra_admits_every_decomposition() {
        let alg = Arc::new(LieAlgebra::abelian(gf2(), basis_names(3)).unwrap());
        let gradings = enum_gradings(&alg).unwrap();
        assert_eq!(gradings.len(), 56);
        assert!(gradings
            .iter()
            .all(|g| g.fusion_table().entries().is_empty()));
    }

    #[test]
    fn remark3_basis_grading_is_enumerated() {
        let alg = Arc::new(corpus::remark3_algebra(gf2()));
        let basis = corpus::remark3_grading(gf2());
        let gradings = enum_gradings(&alg).unwrap();
        assert!(gradings.iter().any(|g| g.same_decomposition(&basis)));
    }

    #[test]
    fn census_is_independent_of_thread_count() {
        let one = census(gf2(), 2, 1).unwrap();
        let many = census(gf2(), 2, 4).unwrap();
        assert_eq!(one, many);
        assert!(one.confirmed());
        assert_eq!(one.algebras_total, 4);
        assert_eq!(one.decompositions, 3);
    }

    #[test]
    fn census_gf2_dim3() {
        let report = verify_theorem_dim3(gf2()).unwrap();
        assert_eq!(report.algebras_total, 512);
        assert!(report.confirmed(), "{:?}", report.failures);
        assert_eq!(report.certificates_verified, report.gradings_checked);
        assert_eq!(report.realizable_abelian_semigroup, report.gradings_checked);
        assert!(report.realizable_group <= report.realizable_abelian_semigroup);
        assert!(report.constant_witnesses > 0);
    }

    #[test]
    fn derived_line_gives_constant_table() {
        // e3 spans the derived algebra: every nonzero bracket lands in its part
        let alg = Arc::new(
            LieAlgebra::new(
                gf2(),
                basis_names(3),
                &[(0, 1, vec![gf2().zero(), gf2().zero(), gf2().one()])],
            )
            .unwrap(),
        );
        assert_eq!(alg.derived_ideal().rank(), 1);
        let constant: Vec<GradingCheck> = enum_gradings(&alg)
            .unwrap()
            .iter()
            .map(check_grading)
            .filter(|c| c.constant_model.is_some())
            .collect();
        assert!(!constant.is_empty());
        assert!(constant
            .iter()
            .all(|c| c.constant_model == Some(true) && c.realizable()));
    }

    #[test]
    fn solvable4_is_flagged() {
        let check = check_grading(&corpus::solvable4_grading(Field::Rationals));
        assert!(check.verified);
        assert!(!check.realizable());
        assert_eq!(check.group.status(), Status::NotRealizable);
    }
}
