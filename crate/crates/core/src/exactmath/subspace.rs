use super::{Field, MathError, Scalar};

/// A dense vector of field elements.
pub type Vector = Vec<Scalar>;

/// Row-reduces `rows` in place into reduced row echelon form and drops zero
/// rows. Returns the pivot columns.
fn reduce(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for the matrix `M` given by its rows.
pub fn kernel(field: Field, ncols: usize, rows: &[Vector]) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = reduce(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Canonical reduced-row-echelon basis of the row space of `rows`.
pub fn rref(field: Field, ambient_dim: usize, rows: &[Vector]) -> Result<Subspace, MathError> {
    for row in rows {
        check_vector(field, ambient_dim, row)?;
    }
    let mut basis = rows.to_vec();
    reduce(&mut basis, ambient_dim);
    Ok(Subspace {
        field,
        ambient_dim,
        basis,
    })
}

fn check_vector(field: Field, ambient_dim: usize, v: &[Scalar]) -> Result<(), MathError> {
    if v.len() != ambient_dim {
        return Err(MathError::DimensionMismatch {
            expected: ambient_dim,
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

/// A subspace of `F^n`, stored as its canonical RREF basis. Equality is
/// structural, so two subspaces are equal iff they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        let basis = (0..ambient_dim)
            .map(|i| unit(field, ambient_dim, i))
            .collect();
        Subspace {
            field,
            ambient_dim,
            basis,
        }
    }

    /// Span of the given vectors.
    pub fn span(
        field: Field,
        ambient_dim: usize,
        vectors: &[Vector],
    ) -> Result<Subspace, MathError> {
        rref(field, ambient_dim, vectors)
    }

    /// Span of a set of coordinate axes.
    pub fn coordinate(field: Field, ambient_dim: usize, axes: &[usize]) -> Subspace {
        let vectors: Vec<Vector> = axes.iter().map(|&i| unit(field, ambient_dim, i)).collect();
        rref(field, ambient_dim, &vectors).expect("unit vectors are well formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    fn check_same_space(&self, other: &Subspace) -> Result<(), MathError> {
        if self.field != other.field {
            return Err(MathError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(MathError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, MathError> {
        self.check_same_space(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        reduce(&mut rows, self.ambient_dim);
        Ok(Subspace {
            field: self.field,
            ambient_dim: self.ambient_dim,
            basis: rows,
        })
    }

    /// Membership by reduction against the RREF basis.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool, MathError> {
        check_vector(self.field, self.ambient_dim, v)?;
        let mut rest = v.to_vec();
        for row in &self.basis {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if rest[pivot].is_zero() {
                continue;
            }
            let factor = rest[pivot].clone();
            for (x, y) in rest.iter_mut().zip(row) {
                *x = &*x - &(&factor * y);
            }
        }
        Ok(rest.iter().all(Scalar::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, MathError> {
        self.check_same_space(other)?;
        for row in &other.basis {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection through the left kernel of the stacked bases: a
    /// combination `λ·A + μ·B = 0` yields `λ·A ∈ A ∩ B`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, MathError> {
        self.check_same_space(other)?;
        let a = self.rank();
        let stacked: Vec<&Vector> = self.basis.iter().chain(&other.basis).collect();
        let transposed: Vec<Vector> = (0..self.ambient_dim)
            .map(|c| stacked.iter().map(|row| row[c].clone()).collect())
            .collect();
        let combos = kernel(self.field, stacked.len(), &transposed);
        let vectors: Vec<Vector> = combos
            .iter()
            .map(|lambda| {
                let mut v = vec![self.field.zero(); self.ambient_dim];
                for (coef, row) in lambda[..a].iter().zip(&self.basis) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = &*x + &(coef * y);
                    }
                }
                v
            })
            .collect();
        rref(self.field, self.ambient_dim, &vectors)
    }
}

pub fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}
