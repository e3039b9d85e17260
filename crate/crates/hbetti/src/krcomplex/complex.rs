use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{crossing_square, edge_ring, CrossingSquare, EdgeRing, KrError};
use crate::braid::ClosedBraidDiagram;
use crate::exactalg::Rational;
use crate::polyring::{GradedFreeModule, HomMatrix, ModuleVector};

/// A corner of a crossing square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Corner {
    LT,
    RT,
    LB,
    RB,
}

impl Corner {
    /// `{first, j, k}` shift of the corner's rank-one module.
    pub fn shift(self) -> (i64, i64, i64) {
        match self {
            Corner::LT => (0, -2, 0),
            Corner::RT => (0, 0, 0),
            Corner::LB => (2, -2, -2),
            Corner::RB => (0, 0, -2),
        }
    }

    fn of(right: bool, bottom: bool) -> Self {
        match (right, bottom) {
            (false, false) => Corner::LT,
            (true, false) => Corner::RT,
            (false, true) => Corner::LB,
            (true, true) => Corner::RB,
        }
    }
}

/// One rank-one summand: a corner per crossing. Bit `t` of `right` (resp.
/// `bottom`) says crossing `t` sits in a right (resp. bottom) corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Summand {
    pub right: u32,
    pub bottom: u32,
    /// First-grading shift: the degree of the generator.
    pub shift: i64,
}

impl Summand {
    pub fn corners(&self, n: usize) -> Vec<Corner> {
        (0..n).map(|t| Corner::of(self.right >> t & 1 == 1, self.bottom >> t & 1 == 1)).collect()
    }

    /// Ordering within a position: vertical states first (`T < B`), then
    /// horizontal states (`L < R`), both read from the first crossing on.
    fn key(&self, n: usize) -> (Vec<bool>, Vec<bool>) {
        let bits = |m: u32| (0..n).map(|t| m >> t & 1 == 1).collect();
        (bits(self.bottom), bits(self.right))
    }
}

/// `C₀(B)`: free modules over the edge ring at positions `(j, k)`, with
/// `d₊ : (j, k) → (j + 2, k)` of first-degree 2 and `d_v : (j, k) → (j, k + 2)`
/// of first-degree 0, both stored by columns.
#[derive(Debug, Clone)]
pub struct TotalDoubleComplex {
    pub edges: EdgeRing,
    pub crossings: usize,
    pub positions: BTreeMap<(i64, i64), Vec<Summand>>,
    pub dplus: BTreeMap<(i64, i64), Vec<ModuleVector>>,
    pub dv: BTreeMap<(i64, i64), Vec<ModuleVector>>,
}

impl TotalDoubleComplex {
    /// First-grading shifts of the summands at `(j, k)`.
    pub fn degrees(&self, j: i64, k: i64) -> Vec<i64> {
        self.positions.get(&(j, k)).map(|s| s.iter().map(|x| x.shift).collect()).unwrap_or_default()
    }

    /// Degrees with `j` subtracted, which makes `d₊` homogeneous of degree 0.
    pub fn adjusted_degrees(&self, j: i64, k: i64) -> Vec<i64> {
        self.degrees(j, k).into_iter().map(|d| d - j).collect()
    }

    pub fn rank(&self, j: i64, k: i64) -> usize {
        self.positions.get(&(j, k)).map_or(0, Vec::len)
    }

    fn free(&self, j: i64, k: i64) -> GradedFreeModule {
        GradedFreeModule::new(self.adjusted_degrees(j, k))
    }

    /// `d₊` leaving `(j, k)` on adjusted degrees; `None` past the last column.
    pub fn dplus_matrix(&self, j: i64, k: i64) -> Option<HomMatrix> {
        let cols = self.dplus.get(&(j, k))?;
        Some(HomMatrix { source: self.free(j, k), target: self.free(j + 2, k), cols: cols.clone() })
    }

    /// `d_v` leaving `(j, k)`; `None` past the top row.
    pub fn dv_matrix(&self, j: i64, k: i64) -> Option<HomMatrix> {
        let cols = self.dv.get(&(j, k))?;
        Some(HomMatrix { source: self.free(j, k), target: self.free(j, k + 2), cols: cols.clone() })
    }

    /// Homogeneity, `d₊² = 0`, `d_v² = 0` and `d₊ d_v = d_v d₊`.
    pub fn check_invariants(&self) -> Result<(), KrError> {
        let bad = |what: String| Err(KrError::Invariant(what));
        for &(j, k) in self.positions.keys() {
            if let Some(a) = self.dplus_matrix(j, k) {
                if HomMatrix::new(a.source.clone(), a.target.clone(), a.cols.clone(), 0).is_err() {
                    return bad(format!("d+ at ({j},{k}) is not homogeneous of degree (2,2,0)"));
                }
                if let Some(b) = self.dplus_matrix(j + 2, k) {
                    if !b.compose(&a).is_zero() {
                        return bad(format!("d+ d+ != 0 at ({j},{k})"));
                    }
                }
            }
            if let Some(a) = self.dv_matrix(j, k) {
                if HomMatrix::new(a.source.clone(), a.target.clone(), a.cols.clone(), 0).is_err() {
                    return bad(format!("d_v at ({j},{k}) is not homogeneous of degree (0,0,2)"));
                }
                if let Some(b) = self.dv_matrix(j, k + 2) {
                    if !b.compose(&a).is_zero() {
                        return bad(format!("d_v d_v != 0 at ({j},{k})"));
                    }
                }
            }
            if let (Some(h), Some(v)) = (self.dplus_matrix(j, k), self.dv_matrix(j, k)) {
                let hv = self.dplus_matrix(j, k + 2).map(|h2| h2.compose(&v).cols);
                let vh = self.dv_matrix(j + 2, k).map(|v2| v2.compose(&h).cols);
                if hv != vh {
                    return bad(format!("square at ({j},{k}) does not commute"));
                }
            }
        }
        Ok(())
    }

    /// Positions, ranks, shift triples and matrices (rows of entry strings).
    pub fn to_json(&self) -> serde_json::Value {
        let ring = &self.edges.ring;
        let matrix = |cols: &[ModuleVector], rows: usize| -> Vec<Vec<String>> {
            (0..rows).map(|r| cols.iter().map(|c| ring.format(&c.entry(r))).collect()).collect()
        };
        let positions: Vec<serde_json::Value> = self
            .positions
            .iter()
            .map(|(&(j, k), s)| {
                serde_json::json!({
                    "j": j,
                    "k": k,
                    "rank": s.len(),
                    "shifts": s.iter().map(|x| [x.shift, j, k]).collect::<Vec<_>>(),
                    "corners": s.iter().map(|x| x.corners(self.crossings)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let maps = |m: &BTreeMap<(i64, i64), Vec<ModuleVector>>, dj: i64, dk: i64| -> Vec<serde_json::Value> {
            m.iter()
                .map(|(&(j, k), cols)| {
                    serde_json::json!({
                        "from": [j, k],
                        "to": [j + dj, k + dk],
                        "matrix": matrix(cols, self.rank(j + dj, k + dk)),
                    })
                })
                .collect()
        };
        serde_json::json!({
            "ring": ring.names(),
            "edge_images": self.edges.edge_images.iter().map(|p| ring.format(p)).collect::<Vec<_>>(),
            "positions": positions,
            "d_plus": maps(&self.dplus, 2, 0),
            "d_v": maps(&self.dv, 0, 2),
        })
    }
}

/// `C₀(B)` over the edge ring.
pub fn assemble(d: &ClosedBraidDiagram) -> Result<TotalDoubleComplex, KrError> {
    assemble_over(d, edge_ring(d)?)
}

/// The complex over a given edge ring; with the reduced edge ring this is
/// the reduced complex `C_r(B)`.
pub fn assemble_over(d: &ClosedBraidDiagram, edges: EdgeRing) -> Result<TotalDoubleComplex, KrError> {
    if let Some(c) = d.crossings.iter().find(|c| c.sign < 0) {
        return Err(KrError::NegativeCrossing { index: c.index });
    }
    let n = d.crossings.len();
    assert!(n < 16, "at most 15 crossings");
    let squares: Vec<CrossingSquare> =
        d.crossings.iter().map(|c| crossing_square(c, &edges)).collect::<Result<_, _>>()?;

    let mut positions: BTreeMap<(i64, i64), Vec<Summand>> = BTreeMap::new();
    for right in 0..(1u32 << n) {
        for bottom in 0..(1u32 << n) {
            let mut shift = 0;
            let (mut j, mut k) = (0, 0);
            for t in 0..n {
                let (s, dj, dk) = Corner::of(right >> t & 1 == 1, bottom >> t & 1 == 1).shift();
                shift += s;
                j += dj;
                k += dk;
            }
            positions.entry((j, k)).or_default().push(Summand { right, bottom, shift });
        }
    }
    for s in positions.values_mut() {
        s.sort_by_cached_key(|x| x.key(n));
    }
    let index: HashMap<(u32, u32), usize> = positions
        .values()
        .flat_map(|s| s.iter().enumerate().map(|(i, x)| ((x.right, x.bottom), i)))
        .collect();

    let sign = |mask: u32, t: usize| {
        let below = mask & ((1u32 << t) - 1);
        if below.count_ones().is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        }
    };
    let full = (1u32 << n) - 1;
    let mut dplus = BTreeMap::new();
    let mut dv = BTreeMap::new();
    for (&(j, k), summands) in &positions {
        if j < 0 {
            let cols = summands
                .iter()
                .map(|s| {
                    let mut v = ModuleVector::zero();
                    for t in (0..n).filter(|&t| s.right >> t & 1 == 0) {
                        let target = index[&(s.right | 1 << t, s.bottom)];
                        let entry = if s.bottom >> t & 1 == 1 { &squares[t].h_bot } else { &squares[t].h_top };
                        // sign counts earlier factors sitting in a left corner
                        let c = sign(!s.right & full, t);
                        v = v.add(&ModuleVector::from_poly(target, &entry.scale(&c)));
                    }
                    v
                })
                .collect();
            dplus.insert((j, k), cols);
        }
        if k < 0 {
            let cols = summands
                .iter()
                .map(|s| {
                    let mut v = ModuleVector::zero();
                    for t in (0..n).filter(|&t| s.bottom >> t & 1 == 1) {
                        let target = index[&(s.right, s.bottom & !(1 << t))];
                        let entry = if s.right >> t & 1 == 1 { &squares[t].v_right } else { &squares[t].v_left };
                        let c = sign(s.bottom, t);
                        v = v.add(&ModuleVector::from_poly(target, &entry.scale(&c)));
                    }
                    v
                })
                .collect();
            dv.insert((j, k), cols);
        }
    }
    let c = TotalDoubleComplex { edges, crossings: n, positions, dplus, dv };
    c.check_invariants()?;
    Ok(c)
}
