//! Finite model search: Cayley tables on the labels plus a few extra
//! elements, with the fusion relations fixed in advance and associativity
//! checked after every assignment.

use super::{ModelWitness, Relation, SearchLimits};
use crate::grading::FusionTable;

struct Search {
    size: usize,
    cells: Vec<Vec<Option<usize>>>,
    free: Vec<(usize, usize)>,
    budget: usize,
}

impl Search {
    fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.cells[a][b]
    }

    fn triple_ok(&self, a: usize, b: usize, c: usize) -> bool {
        let left = self.product(a, b).and_then(|ab| self.product(ab, c));
        let right = self.product(b, c).and_then(|bc| self.product(a, bc));
        match (left, right) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        }
    }

    /// Every triple whose evaluation reads cell `(x, y)`.
    fn consistent_at(&self, x: usize, y: usize) -> bool {
        let n = self.size;
        for t in 0..n {
            if !self.triple_ok(x, y, t) || !self.triple_ok(t, x, y) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.cells[a][b] == Some(x) && !self.triple_ok(a, b, y) {
                    return false;
                }
                if self.cells[a][b] == Some(y) && !self.triple_ok(x, a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn fully_consistent(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.triple_ok(a, b, c))))
    }

    fn fill(&mut self, k: usize) -> bool {
        if k == self.free.len() {
            return true;
        }
        let (x, y) = self.free[k];
        for v in (0..self.size).rev() {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            self.cells[x][y] = Some(v);
            if self.consistent_at(x, y) && self.fill(k + 1) {
                return true;
            }
        }
        self.cells[x][y] = None;
        false
    }
}

fn search_size(table: &FusionTable, size: usize, budget: usize) -> Option<ModelWitness> {
    let mut cells = vec![vec![None; size]; size];
    for r in Relation::from_table(table, false) {
        cells[r.left.0][r.left.1] = Some(r.right);
    }
    let free = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| cells[a][b].is_none())
        .collect();
    let mut s = Search {
        size,
        cells,
        free,
        budget,
    };
    if !s.fully_consistent() || !s.fill(0) {
        return None;
    }
    let table = s
        .cells
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.expect("filled")).collect())
        .collect();
    Some(ModelWitness { size, table })
}

/// Tries carriers of size `|G|` through `max_size`.
pub(super) fn search(
    table: &FusionTable,
    max_size: usize,
    limits: &SearchLimits,
) -> Option<ModelWitness> {
    (table.len().max(1)..=max_size)
        .find_map(|size| search_size(table, size, limits.max_model_nodes))
}
