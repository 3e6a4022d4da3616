//! Lie algebras given by structure constants.

use std::fmt;

use thiserror::Error;

use crate::exactmath::{kernel, Field, MathError, Scalar, Subspace, Vector};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("bracket [{0},{0}] must be zero")]
    DiagonalBracket(String),
    #[error("bracket [{0},{1}] declared twice")]
    DuplicateBracket(String, String),
    #[error("structure table has the wrong shape")]
    Shape,
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A finite-dimensional algebra with an alternating bracket, stored as the
/// full table of brackets of basis vectors.
///
/// Construction checks only the shape of the data; use
/// [`LieAlgebra::check_lie_axioms`] to confirm the Lie axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    field: Field,
    names: Vec<String>,
    // structure[i][j] = coordinates of [e_i, e_j]
    structure: Vec<Vec<Vector>>,
}

/// One violated axiom instance, by basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Alternating(usize),
    Anticommutative(usize, usize),
    Jacobi(usize, usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LieAlgebra {
    /// Builds an algebra from the brackets `[e_i, e_j]` with `i != j`; the
    /// opposite orientation is filled in by negation and every undeclared
    /// bracket is zero.
    pub fn new(
        field: Field,
        names: Vec<String>,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<LieAlgebra, LieError> {
        check_names(&names)?;
        let n = names.len();
        let mut declared = vec![vec![false; n]; n];
        let mut structure = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(LieError::IndexOutOfRange(i.max(j)));
            }
            if i == j {
                return Err(LieError::DiagonalBracket(names[i].clone()));
            }
            if declared[i][j] {
                return Err(LieError::DuplicateBracket(
                    names[i].clone(),
                    names[j].clone(),
                ));
            }
            check_vector(field, n, v)?;
            declared[i][j] = true;
            declared[j][i] = true;
            structure[i][j] = v.clone();
            structure[j][i] = v.iter().map(|x| -x).collect();
        }
        Ok(LieAlgebra {
            field,
            names,
            structure,
        })
    }

    /// Builds an algebra from a full `n × n` table of bracket vectors without
    /// filling or checking anything beyond shape.
    pub fn from_structure_constants(
        field: Field,
        names: Vec<String>,
        structure: Vec<Vec<Vector>>,
    ) -> Result<LieAlgebra, LieError> {
        check_names(&names)?;
        let n = names.len();
        if structure.len() != n || structure.iter().any(|row| row.len() != n) {
            return Err(LieError::Shape);
        }
        for v in structure.iter().flatten() {
            check_vector(field, n, v)?;
        }
        Ok(LieAlgebra {
            field,
            names,
            structure,
        })
    }

    pub fn abelian(field: Field, names: Vec<String>) -> Result<LieAlgebra, LieError> {
        LieAlgebra::new(field, names, &[])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.structure[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        crate::exactmath::unit(self.field, self.dim(), i)
    }

    /// Reports every violated axiom instance: `[e_i,e_i] = 0`,
    /// `[e_i,e_j] = -[e_j,e_i]`, and Jacobi on basis triples.
    pub fn check_lie_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            if !is_zero(&self.structure[i][i]) {
                violations.push(AxiomViolation::Alternating(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let sum = add(&self.structure[i][j], &self.structure[j][i]);
                if !is_zero(&sum) {
                    violations.push(AxiomViolation::Anticommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |t: usize| self.basis_vector(t);
                    let t1 = self.bracket_unchecked(&self.structure[i][j], &e(k));
                    let t2 = self.bracket_unchecked(&self.structure[j][k], &e(i));
                    let t3 = self.bracket_unchecked(&self.structure[k][i], &e(j));
                    if !is_zero(&add(&add(&t1, &t2), &t3)) {
                        violations.push(AxiomViolation::Jacobi(i, j, k));
                    }
                }
            }
        }
        AxiomReport { violations }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, v: &[Scalar], w: &[Scalar]) -> Result<Vector, LieError> {
        check_vector(self.field, self.dim(), v)?;
        check_vector(self.field, self.dim(), w)?;
        Ok(self.bracket_unchecked(v, w))
    }

    fn bracket_unchecked(&self, v: &[Scalar], w: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let c = vi * wj;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Span of `[x, y]` over basis vectors `x` of `a` and `y` of `b`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let products: Vec<Vector> = a
            .basis()
            .iter()
            .flat_map(|x| b.basis().iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bracket_unchecked(x, y))
            .collect();
        Ok(Subspace::span(self.field, self.dim(), &products)?)
    }

    /// `[L, L]`.
    pub fn derived_ideal(&self) -> Subspace {
        let all: Vec<Vector> = self.structure.iter().flatten().cloned().collect();
        Subspace::span(self.field, self.dim(), &all)
            .expect("structure vectors have the algebra's shape")
    }

    /// `{v : [v, e_i] = 0 for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // row (i, l), column k: coefficient of e_l in [e_k, e_i]
        let rows: Vec<Vector> = (0..n)
            .flat_map(|i| (0..n).map(move |l| (i, l)))
            .map(|(i, l)| (0..n).map(|k| self.structure[k][i][l].clone()).collect())
            .collect();
        let basis = kernel(self.field, n, &rows);
        Subspace::span(self.field, n, &basis).expect("kernel vectors have the algebra's shape")
    }

    pub fn check_subspace(&self, s: &Subspace) -> Result<(), LieError> {
        if s.field() != self.field {
            return Err(MathError::FieldMismatch {
                expected: self.field,
                found: s.field(),
            }
            .into());
        }
        if s.ambient_dim() != self.dim() {
            return Err(MathError::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            }
            .into());
        }
        Ok(())
    }

    /// Renders a coordinate vector as a linear combination of basis names,
    /// e.g. `x - y` or `1/2*a + u`.
    pub fn render_vector(&self, v: &[Scalar]) -> String {
        render_combination(&self.names, v)
    }
}

/// `coeff*name` terms joined with signs; `0` for the zero vector.
pub fn render_combination(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Alternating(i) => write!(f, "[e{i},e{i}] != 0"),
            AxiomViolation::Anticommutative(i, j) => write!(f, "[e{i},e{j}] != -[e{j},e{i}]"),
            AxiomViolation::Jacobi(i, j, k) => write!(f, "Jacobi fails on (e{i},e{j},e{k})"),
        }
    }
}

impl AxiomViolation {
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        let n = |i: &usize| alg.names()[*i].as_str();
        match self {
            AxiomViolation::Alternating(i) => format!("[{0},{0}] is not zero", n(i)),
            AxiomViolation::Anticommutative(i, j) => {
                format!(
                    "[{},{}] is not the negative of [{},{}]",
                    n(i),
                    n(j),
                    n(j),
                    n(i)
                )
            }
            AxiomViolation::Jacobi(i, j, k) => {
                format!("Jacobi identity fails on ({}, {}, {})", n(i), n(j), n(k))
            }
        }
    }
}

fn check_names(names: &[String]) -> Result<(), LieError> {
    if names.is_empty() {
        return Err(LieError::EmptyBasis);
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(LieError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

fn check_vector(field: Field, n: usize, v: &[Scalar]) -> Result<(), MathError> {
    if v.len() != n {
        return Err(MathError::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if let Some(bad) = v.iter().find(|s| !field.contains(s)) {
        return Err(MathError::FieldMismatch {
            expected: field,
            found: bad.field(),
        });
    }
    Ok(())
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
