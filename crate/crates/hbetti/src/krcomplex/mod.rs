//! The middle complex `C₀(B)` of a positive closed braid and its iterated
//! homology `H(H(C₀, d₊), d_v)` as modules over the component ring.
//!
//! Each crossing contributes a square of rank-one free modules over the
//! edge ring; the complex is their tensor product. Homology is taken
//! horizontally first, then vertically, and only then shifted.

mod complex;
mod homology;

use crate::braid::{ClosedBraidDiagram, Crossing};
use crate::exactalg::Rational;
use crate::grmodule::ModuleError;
use crate::polyring::{GradedRing, PolyError, Polynomial, Ring};

pub use complex::{assemble, assemble_over, Corner, Summand, TotalDoubleComplex};
pub use homology::{
    middle_homology, plus_homology, reduced_homology, reduced_middle_homology, vertical_homology,
    PlusStratum, TriGradedHomology,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KrError {
    #[error(
        "negative crossings unsupported: letter {} of the word is negative; \
         only positive braids are in scope",
        index + 1
    )]
    NegativeCrossing { index: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("complex invariant violated: {0}")]
    Invariant(String),
    #[error("component {0} has no surviving edge variable")]
    EmptyComponent(usize),
}

/// `ℚ[X_1, …, X_M] / (ρ(c))`, presented as a polynomial ring on the edge
/// variables that survive Gaussian elimination.
#[derive(Debug, Clone)]
pub struct EdgeRing {
    pub ring: Ring,
    /// Image of every edge variable, a linear form in `ring`.
    pub edge_images: Vec<Polynomial>,
    /// Edge id of each variable of `ring`.
    pub free_edges: Vec<usize>,
    /// `ρ(c)` per crossing, as coefficients over the edges.
    pub relations: Vec<Vec<i64>>,
    /// Whether `X_1 = 0` was imposed as well.
    pub reduced: bool,
}

impl EdgeRing {
    pub fn edge(&self, e: usize) -> &Polynomial {
        &self.edge_images[e]
    }
}

/// Edge ring of a diagram. Elimination pivots on the highest-indexed edge
/// variable of each relation, so `X_1, …, X_m` survive where possible.
pub fn edge_ring(d: &ClosedBraidDiagram) -> Result<EdgeRing, KrError> {
    build_edge_ring(d, false)
}

/// `R(B) / (X_1)`, which is isomorphic to the reduced edge ring via
/// `X_i − X_1 ↦ X_i`.
pub fn reduced_edge_ring(d: &ClosedBraidDiagram) -> Result<EdgeRing, KrError> {
    build_edge_ring(d, true)
}

fn build_edge_ring(d: &ClosedBraidDiagram, reduced: bool) -> Result<EdgeRing, KrError> {
    let m = d.edges.len();
    let relations: Vec<Vec<i64>> = d
        .crossings
        .iter()
        .map(|c| {
            let mut row = vec![0i64; m];
            row[c.out_left] += 1;
            row[c.out_right] += 1;
            row[c.in_left] -= 1;
            row[c.in_right] -= 1;
            row
        })
        .collect();
    let mut rows: Vec<Vec<Rational>> =
        relations.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    if reduced && m > 0 {
        let mut r = vec![Rational::zero(); m];
        r[0] = Rational::one();
        rows.push(r);
    }
    let mut used = vec![false; rows.len()];
    let mut pivot_row: Vec<Option<usize>> = vec![None; m];
    for col in (0..m).rev() {
        let Some(r) = (0..rows.len()).find(|&r| !used[r] && !rows[r][col].is_zero()) else {
            continue;
        };
        used[r] = true;
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (s, row) in rows.iter_mut().enumerate() {
            if s != r && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &(&c * p);
                }
            }
        }
        pivot_row[col] = Some(r);
    }
    let free_edges: Vec<usize> = (0..m).filter(|&e| pivot_row[e].is_none()).collect();
    let names: Vec<String> = free_edges.iter().map(|e| format!("X{}", e + 1)).collect();
    let ring = GradedRing::new(&names)?;
    let var_of = |e: usize| free_edges.binary_search(&e).ok();
    let edge_images = (0..m)
        .map(|e| match pivot_row[e] {
            None => ring.var(var_of(e).unwrap()),
            Some(r) => {
                let mut p = Polynomial::zero();
                for (f, c) in rows[r].iter().enumerate() {
                    if f != e && !c.is_zero() {
                        p = p.sub(&ring.var(var_of(f).expect("reduced row uses free columns")).scale(c));
                    }
                }
                p
            }
        })
        .collect();
    Ok(EdgeRing { ring, edge_images, free_edges, relations, reduced })
}

/// The four maps of a crossing square. Corners sit at `(j, k)` with `L`, `R`
/// at `j = −2, 0` and `T`, `B` at `k = 0, −2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingSquare {
    /// `LT → RT`.
    pub h_top: Polynomial,
    /// `LB → RB`.
    pub h_bot: Polynomial,
    /// `LB → LT`.
    pub v_left: Polynomial,
    /// `RB → RT`.
    pub v_right: Polynomial,
}

/// The square of a positive crossing. With `x₁` the left outgoing edge,
/// `x₂` the right outgoing edge and `x₃` the right incoming edge:
/// `h_top = x₂ − x₃`, `h_bot = (x₂ − x₃)(x₁ − x₃)`, `v_left = x₁ − x₃`,
/// `v_right = 1`.
pub fn crossing_square(c: &Crossing, e: &EdgeRing) -> Result<CrossingSquare, KrError> {
    if c.sign < 0 {
        return Err(KrError::NegativeCrossing { index: c.index });
    }
    let x1 = e.edge(c.out_left);
    let x2 = e.edge(c.out_right);
    let x3 = e.edge(c.in_right);
    let h = x2.sub(x3);
    let v = x1.sub(x3);
    Ok(CrossingSquare { h_bot: h.mul(&v), h_top: h, v_left: v, v_right: Polynomial::one() })
}

#[cfg(test)]
mod tests;
