//! Built-in algebras and gradings, with their expected realizability.

use std::sync::Arc;

use thiserror::Error;

use crate::exactmath::{unit, Field, Subspace, Vector};
use crate::grading::{validate_grading, Grading};
use crate::liealg::LieAlgebra;
use crate::realize::{Mode, Status};

pub const BUILTIN_NAMES: [&str; 4] = ["solvable4", "remark3", "semisimple6", "semisimple6-fine"];

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error(
        "unknown builtin `{0}` (available: solvable4, remark3, semisimple6, semisimple6-fine)"
    )]
    UnknownName(String),
}

/// Expected decider verdict per mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub group: Status,
    pub abelian_semigroup: Status,
    pub semigroup: Status,
}

impl Expected {
    pub fn for_mode(&self, mode: Mode) -> Status {
        match mode {
            Mode::Group => self.group,
            Mode::AbelianSemigroup => self.abelian_semigroup,
            Mode::Semigroup => self.semigroup,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub algebra: Arc<LieAlgebra>,
    pub grading: Grading,
    pub expected: Expected,
}

/// Looks up a builtin example by name over `field`.
pub fn builtin(name: &str, field: Field) -> Result<NamedExample, CorpusError> {
    use Status::{NotRealizable as No, Realizable as Yes};
    let (name, grading, expected) = match name {
        "solvable4" => (
            "solvable4",
            solvable4_grading(field),
            Expected {
                group: No,
                abelian_semigroup: No,
                semigroup: No,
            },
        ),
        "remark3" => (
            "remark3",
            remark3_grading(field),
            Expected {
                group: No,
                abelian_semigroup: Yes,
                semigroup: Yes,
            },
        ),
        "semisimple6" => (
            "semisimple6",
            semisimple6_grading(field),
            Expected {
                group: No,
                abelian_semigroup: No,
                semigroup: No,
            },
        ),
        "semisimple6-fine" => (
            "semisimple6-fine",
            semisimple6_fine_grading(field),
            Expected {
                group: Yes,
                abelian_semigroup: Yes,
                semigroup: Yes,
            },
        ),
        other => return Err(CorpusError::UnknownName(other.to_string())),
    };
    Ok(NamedExample {
        name,
        algebra: grading.algebra().clone(),
        grading,
        expected,
    })
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// `[a, b] = Σ c·e`, written with basis names.
type NamedBracket<'a> = (&'a str, &'a str, &'a [(i64, &'a str)]);

fn build(field: Field, basis: &[&str], brackets: &[NamedBracket]) -> LieAlgebra {
    let n = basis.len();
    let idx = |s: &str| {
        basis
            .iter()
            .position(|b| *b == s)
            .expect("known basis name")
    };
    let table: Vec<(usize, usize, Vector)> = brackets
        .iter()
        .map(|(a, b, terms)| {
            let mut v = vec![field.zero(); n];
            for (c, name) in terms.iter() {
                v[idx(name)] = &v[idx(name)] + &field.from_i64(*c);
            }
            (idx(a), idx(b), v)
        })
        .collect();
    LieAlgebra::new(field, names(basis), &table).expect("builtin algebra is well formed")
}

fn coordinate_grading(alg: LieAlgebra, parts: &[(&str, &[&str])]) -> Grading {
    let n = alg.dim();
    let field = alg.field();
    let parts = parts
        .iter()
        .map(|(label, members)| {
            let vs: Vec<Vector> = members
                .iter()
                .map(|m| unit(field, n, alg.index_of(m).expect("known basis name")))
                .collect();
            (
                label.to_string(),
                Subspace::span(field, n, &vs).expect("unit vectors"),
            )
        })
        .collect();
    validate_grading(Arc::new(alg), parts).expect("builtin grading is valid")
}

/// Basis `a,u,v,w` with `[a,u]=u, [a,v]=w, [a,w]=v`.
pub fn solvable4_algebra(field: Field) -> LieAlgebra {
    build(
        field,
        &["a", "u", "v", "w"],
        &[
            ("a", "u", &[(1, "u")]),
            ("a", "v", &[(1, "w")]),
            ("a", "w", &[(1, "v")]),
        ],
    )
}

pub fn solvable4_grading(field: Field) -> Grading {
    coordinate_grading(
        solvable4_algebra(field),
        &[("alpha", &["a", "u"]), ("beta", &["v"]), ("gamma", &["w"])],
    )
}

/// Basis `x,y,z` with `[x,z]=[y,z]=z`, `[x,y]=0`.
pub fn remark3_algebra(field: Field) -> LieAlgebra {
    build(
        field,
        &["x", "y", "z"],
        &[("x", "z", &[(1, "z")]), ("y", "z", &[(1, "z")])],
    )
}

pub fn remark3_grading(field: Field) -> Grading {
    coordinate_grading(
        remark3_algebra(field),
        &[("x", &["x"]), ("y", &["y"]), ("z", &["z"])],
    )
}

/// The direct sum of `span{h,x,y}` (`[h,x]=x, [h,y]=-y, [x,y]=h`) and
/// `span{e1,e2,e3}` (`[e1,e2]=e3` and cyclic).
pub fn semisimple6_algebra(field: Field) -> LieAlgebra {
    build(
        field,
        &["h", "x", "y", "e1", "e2", "e3"],
        &[
            ("h", "x", &[(1, "x")]),
            ("h", "y", &[(-1, "y")]),
            ("x", "y", &[(1, "h")]),
            ("e1", "e2", &[(1, "e3")]),
            ("e2", "e3", &[(1, "e1")]),
            ("e3", "e1", &[(1, "e2")]),
        ],
    )
}

pub fn semisimple6_grading(field: Field) -> Grading {
    coordinate_grading(
        semisimple6_algebra(field),
        &[
            ("alpha", &["h", "e1"]),
            ("beta", &["x"]),
            ("gamma", &["y"]),
            ("delta", &["e2"]),
            ("mu", &["e3"]),
        ],
    )
}

/// All six basis lines as parts, labeled by the basis names.
pub fn semisimple6_fine_grading(field: Field) -> Grading {
    coordinate_grading(
        semisimple6_algebra(field),
        &[
            ("h", &["h"]),
            ("x", &["x"]),
            ("y", &["y"]),
            ("e1", &["e1"]),
            ("e2", &["e2"]),
            ("e3", &["e3"]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::is_refinement;

    #[test]
    fn every_builtin_is_a_valid_grading_on_every_field() {
        for field in [
            Field::Rationals,
            Field::gf2(),
            Field::Prime(3),
            Field::Prime(5),
        ] {
            for name in BUILTIN_NAMES {
                let ex = builtin(name, field).unwrap();
                assert!(
                    ex.algebra.check_lie_axioms().is_valid(),
                    "{name} over {field}"
                );
                assert_eq!(ex.grading.algebra(), &ex.algebra);
            }
        }
        assert!(matches!(
            builtin("sl2", Field::Rationals),
            Err(CorpusError::UnknownName(_))
        ));
    }

    #[test]
    fn solvable4_table() {
        let ex = builtin("solvable4", Field::Rationals).unwrap();
        assert_eq!(
            ex.grading.fusion_table().to_string(),
            "{alpha*alpha=alpha, alpha*beta=gamma, alpha*gamma=beta}"
        );
    }

    #[test]
    fn remark3_center() {
        let ex = builtin("remark3", Field::Rationals).unwrap();
        let c = ex.algebra.center();
        assert_eq!(c.rank(), 1);
        assert_eq!(ex.algebra.render_vector(&c.basis()[0]), "x - y");
    }

    #[test]
    fn fine_refines_coarse_on_every_field() {
        for field in [Field::Rationals, Field::gf2(), Field::Prime(3)] {
            let fine = builtin("semisimple6-fine", field).unwrap().grading;
            let coarse = builtin("semisimple6", field).unwrap().grading;
            assert!(is_refinement(&fine, &coarse).unwrap());
            let blocks: Vec<Vec<String>> = vec![
                vec!["h".into(), "e1".into()],
                vec!["x".into()],
                vec!["y".into()],
                vec!["e2".into()],
                vec!["e3".into()],
            ];
            assert_eq!(fine.coarsen(&blocks, None).unwrap().parts(), coarse.parts());
        }
    }

    #[test]
    fn semisimple6_table_survives_characteristic_two() {
        let q = builtin("semisimple6", Field::Rationals)
            .unwrap()
            .grading
            .fusion_table();
        let two = builtin("semisimple6", Field::gf2())
            .unwrap()
            .grading
            .fusion_table();
        assert_eq!(q, two);
    }
}
