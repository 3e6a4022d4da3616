use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MathError;

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns from its rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<IntMatrix, MathError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(MathError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows,
        })
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Result<IntMatrix, MathError> {
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += a * &other.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, v: &[BigInt]) -> Result<Vec<BigInt>, MathError> {
        if v.len() != self.rows {
            return Err(MathError::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (coef, row) in v.iter().zip(&self.entries) {
            if coef.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += coef * x;
            }
        }
        Ok(out)
    }

    /// Row Hermite normal form of the row lattice; zero rows are dropped.
    pub fn hermite_basis(&self) -> IntMatrix {
        self.hermite_with_transform().basis
    }

    /// Hermite normal form together with the combinations producing each row:
    /// `basis = transform · self`.
    pub fn hermite_with_transform(&self) -> HermiteForm {
        let mut h = self.entries.clone();
        let mut t = IntMatrix::identity(self.rows).entries;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            loop {
                // smallest nonzero magnitude in column c at or below row r
                let best = (r..self.rows)
                    .filter(|&i| !h[i][c].is_zero())
                    .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
                let Some(best) = best else { break };
                h.swap(r, best);
                t.swap(r, best);
                let mut done = true;
                for i in r + 1..self.rows {
                    if h[i][c].is_zero() {
                        continue;
                    }
                    let q = h[i][c].div_floor(&h[r][c]);
                    sub_row_multiple(&mut h, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(r).is_none_or(|row| row[c].is_zero()) {
                continue;
            }
            if h[r][c].is_negative() {
                negate_row(&mut h[r]);
                negate_row(&mut t[r]);
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    sub_row_multiple(&mut h, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                }
            }
            r += 1;
        }
        h.truncate(r);
        t.truncate(r);
        HermiteForm {
            basis: IntMatrix {
                rows: r,
                cols: self.cols,
                entries: h,
            },
            transform: IntMatrix {
                rows: r,
                cols: self.rows,
                entries: t,
            },
        }
    }

    /// Whether `v` is an integer combination of the rows.
    pub fn lattice_contains(&self, v: &[BigInt]) -> Result<bool, MathError> {
        Ok(self.lattice_solve(v)?.is_some())
    }

    /// Integer coefficients `y` with `y · self = v`, if any exist. Decided by
    /// back-substitution against the Hermite basis.
    pub fn lattice_solve(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, MathError> {
        if v.len() != self.cols {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let hf = self.hermite_with_transform();
        let mut rest = v.to_vec();
        let mut z = vec![BigInt::zero(); hf.basis.rows];
        for (k, row) in hf.basis.entries.iter().enumerate() {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("hermite rows are nonzero");
            if rest[..pivot].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, rem) = rest[pivot].div_rem(&row[pivot]);
            if !rem.is_zero() {
                return Ok(None);
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            z[k] = q;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(hf.transform.left_mul_vector(&z)?))
    }

    /// Smith normal form `U · self · V = D` with `d₁ | d₂ | …`.
    pub fn smith_decomposition(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut u = IntMatrix::identity(m).entries;
        let mut v = IntMatrix::identity(n).entries;
        let mut t = 0;
        while t < m.min(n) {
            let best = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    sub_row_multiple(&mut a, i, t, &q);
                    sub_row_multiple(&mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    sub_col_multiple(&mut a, j, t, &q);
                    sub_col_multiple(&mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility of the remaining block
                    let bad = (t + 1..m)
                        .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            add_row(&mut a, t, i);
                            add_row(&mut u, t, i);
                            continue;
                        }
                    }
                }
                // move the smallest remaining entry of row/column t onto the pivot
                let cand_row = (t..m)
                    .filter(|&i| !a[i][t].is_zero())
                    .min_by(|&i, &k| a[i][t].abs().cmp(&a[k][t].abs()))
                    .expect("pivot column is nonzero");
                if a[cand_row][t].abs() < a[t][t].abs() {
                    a.swap(t, cand_row);
                    u.swap(t, cand_row);
                }
                let cand_col = (t..n)
                    .filter(|&j| !a[t][j].is_zero())
                    .min_by(|&j, &l| a[t][j].abs().cmp(&a[t][l].abs()))
                    .expect("pivot row is nonzero");
                if a[t][cand_col].abs() < a[t][t].abs() {
                    swap_cols(&mut a, t, cand_col);
                    swap_cols(&mut v, t, cand_col);
                }
            }
            if a[t][t].is_negative() {
                negate_row(&mut a[t]);
                negate_row(&mut u[t]);
            }
            t += 1;
        }
        let invariant_factors = (0..t).map(|i| a[i][i].clone()).collect();
        SmithForm {
            invariant_factors,
            diagonal: IntMatrix {
                rows: m,
                cols: n,
                entries: a,
            },
            left: IntMatrix {
                rows: m,
                cols: m,
                entries: u,
            },
            right: IntMatrix {
                rows: n,
                cols: n,
                entries: v,
            },
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub basis: IntMatrix,
    pub transform: IntMatrix,
}

/// Result of `smith_decomposition`: `left · m · right = diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Rank of the free part of the cokernel `ℤ^cols / rowspace`.
    pub fn free_rank(&self) -> usize {
        self.diagonal.cols - self.invariant_factors.len()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

fn sub_row_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

fn add_row(m: &mut [Vec<BigInt>], target: usize, source: usize) {
    sub_row_multiple(m, target, source, &BigInt::from(-1));
}

fn sub_col_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let delta = q * &row[source];
        row[target] -= delta;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}
