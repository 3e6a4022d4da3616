//! Abelian-group realizability through the relation lattice.
//!
//! The universal abelian group is `ℤ^G / L` with `L` spanned by
//! `e_g + e_g' - e_g''` over all relations. Two labels coincide there iff
//! their difference lies in `L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{GroupWitness, LatticeCertificate, Refutation, Relation, Verdict, Witness};
use crate::exactmath::IntMatrix;
use crate::grading::FusionTable;

fn relation_matrix(n: usize, relations: &[Relation]) -> IntMatrix {
    let rows = relations
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); n];
            row[r.left.0] += 1;
            row[r.left.1] += 1;
            row[r.right] -= 1;
            row
        })
        .collect();
    IntMatrix::from_rows(n, rows).expect("rows have one entry per label")
}

pub(super) fn decide(table: &FusionTable) -> Verdict {
    let n = table.len();
    let relations = Relation::from_table(table, true);
    let m = relation_matrix(n, &relations);
    for g in 0..n {
        for h in g + 1..n {
            let mut v = vec![BigInt::zero(); n];
            v[g] = BigInt::one();
            v[h] = -BigInt::one();
            if let Some(coefs) = m.lattice_solve(&v).expect("vector has one entry per label") {
                let combination = relations
                    .iter()
                    .zip(coefs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| (*r, c))
                    .collect();
                return Verdict::NotRealizable(Refutation::Lattice(LatticeCertificate {
                    pair: (g, h),
                    combination,
                }));
            }
        }
    }
    Verdict::Realizable(Witness::Group(witness(&m)))
}

/// Reads the cokernel presentation off the Smith form: `x ↦ x·V` carries the
/// relation lattice onto the row lattice of the diagonal form.
fn witness(m: &IntMatrix) -> GroupWitness {
    let smith = m.smith_decomposition();
    let rank = smith.invariant_factors.len();
    let n = m.ncols();
    let torsion_axes: Vec<usize> = (0..rank)
        .filter(|&i| !smith.invariant_factors[i].is_one())
        .collect();
    let assignment = (0..n)
        .map(|g| {
            let row = &smith.right.rows()[g];
            let mut coords: Vec<BigInt> = row[rank..].to_vec();
            coords.extend(
                torsion_axes
                    .iter()
                    .map(|&i| row[i].mod_floor(&smith.invariant_factors[i])),
            );
            coords
        })
        .collect();
    GroupWitness {
        free_rank: smith.free_rank(),
        torsion: smith.torsion(),
        assignment,
    }
}
