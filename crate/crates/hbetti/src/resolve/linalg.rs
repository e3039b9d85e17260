//! Sparse row echelon forms over ℚ, used by the Koszul oracle.

use std::collections::{BTreeMap, HashMap};

use crate::exactalg::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

/// An incrementally built echelon basis; each stored row has a distinct
/// leading (smallest) column with coefficient 1.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((&col, c)) = v.iter().next() else { return false };
            match self.rows.get(&col) {
                Some(row) => {
                    let c = c.clone();
                    for (k, x) in row {
                        let e = v.entry(*k).or_default();
                        *e -= &(&c * x);
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = c.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(col, v);
                    return true;
                }
            }
        }
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(vs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}
