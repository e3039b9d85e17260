//! Minimal graded free resolutions, Betti tables and an independent Koszul
//! complex oracle for `Tor(R/m, M)`.

mod koszul;
mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::binomial;
use crate::grmodule::PresentedGradedModule;
use crate::polyring::{kernel_gens, minimal_generators, GradedFreeModule, HomMatrix, ModuleVector, Ring};

pub use koszul::{koszul_betti_table, koszul_tor};
pub use linalg::{rank, Echelon, SparseVec};

/// `F_l → … → F_1 → F_0`, with `maps[p-1] = d_p : F_p → F_{p-1}` stored by
/// columns.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub ring: Ring,
    pub degrees: Vec<Vec<i64>>,
    pub maps: Vec<Vec<ModuleVector>>,
}

impl FreeResolution {
    /// Number of nonzero free modules minus one; `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.degrees.iter().rposition(|d| !d.is_empty())
    }

    pub fn differential(&self, p: usize) -> HomMatrix {
        HomMatrix {
            source: GradedFreeModule::new(self.degrees[p].clone()),
            target: GradedFreeModule::new(self.degrees[p - 1].clone()),
            cols: self.maps[p - 1].clone(),
        }
    }

    /// True when no differential has an entry with a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().all(|c| !c.has_unit_entry())
    }

    pub fn betti(&self) -> BettiTablePQ {
        let mut t = BettiTablePQ::default();
        for (p, degs) in self.degrees.iter().enumerate() {
            for &q in degs {
                t.add(p, q, 1);
            }
        }
        t
    }
}

/// Minimal graded free resolution: iterated minimal kernels followed by
/// cancellation of unit entries.
pub fn minimal_free_resolution(m: &PresentedGradedModule) -> FreeResolution {
    let d0 = m.degrees.clone();
    let keep = minimal_generators(&m.relations, &d0, &[]);
    let d1: Vec<ModuleVector> = keep.iter().map(|&i| m.relations[i].clone()).collect();
    let deg1: Vec<i64> = d1.iter().map(|v| v.degree(&d0).unwrap()).collect();
    let mut degrees = vec![d0, deg1];
    let mut maps = vec![d1];
    loop {
        let p = maps.len();
        if degrees[p].is_empty() {
            break;
        }
        let a = HomMatrix {
            source: GradedFreeModule::new(degrees[p].clone()),
            target: GradedFreeModule::new(degrees[p - 1].clone()),
            cols: maps[p - 1].clone(),
        };
        let k = kernel_gens(&a);
        if k.is_empty() {
            break;
        }
        degrees.push(k.iter().map(|v| v.degree(&degrees[p]).unwrap()).collect());
        maps.push(k);
    }
    let mut res = FreeResolution { ring: m.ring.clone(), degrees, maps };
    cancel_units(&mut res);
    while res.degrees.len() > 1 && res.degrees.last().unwrap().is_empty() {
        res.degrees.pop();
        res.maps.pop();
    }
    res
}

/// Removes unit entries: for a constant `c` at `(r, s)` of `d_p`, replace
/// `d(i,t)` by `d(i,t) - d(i,s) d(r,t) / c`, drop row `r` and column `s` of
/// `d_p`, row `s` of `d_{p+1}` and column `r` of `d_{p-1}`.
fn cancel_units(res: &mut FreeResolution) {
    let mut p = 1;
    while p <= res.maps.len() {
        let found = res.maps[p - 1].iter().enumerate().find_map(|(s, col)| {
            col.terms()
                .iter()
                .find(|t| t.mon.is_one())
                .map(|t| (t.pos as usize, s, t.coef.clone()))
        });
        let Some((r, s, c)) = found else {
            p += 1;
            continue;
        };
        let col_s = res.maps[p - 1][s].clone();
        let cols: Vec<ModuleVector> = res.maps[p - 1]
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != s)
            .map(|(_, col)| {
                let drt = col.entry(r);
                let v = col.sub(&col_s.mul_poly(&drt.scale(&c.recip())));
                v.remap(|i| match i.cmp(&r) {
                    std::cmp::Ordering::Less => Some(i),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(i - 1),
                })
            })
            .collect();
        res.maps[p - 1] = cols;
        res.degrees[p].remove(s);
        res.degrees[p - 1].remove(r);
        if p < res.maps.len() {
            for col in res.maps[p].iter_mut() {
                *col = col.remap(|i| match i.cmp(&s) {
                    std::cmp::Ordering::Less => Some(i),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(i - 1),
                });
            }
        }
        if p >= 2 {
            res.maps[p - 2].remove(r);
        }
    }
}

/// `β(p, q)`: number of degree-`q` generators of `F_p` in a minimal
/// resolution. Only nonzero entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTablePQ {
    entries: BTreeMap<(usize, i64), u64>,
}

impl BettiTablePQ {
    pub fn add(&mut self, p: usize, q: i64, n: u64) {
        if n > 0 {
            *self.entries.entry((p, q)).or_default() += n;
        }
    }

    pub fn get(&self, p: usize, q: i64) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(p, q), &v)| (p, q, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_p(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn from_entries(it: impl IntoIterator<Item = (usize, i64, u64)>) -> Self {
        let mut t = Self::default();
        for (p, q, v) in it {
            t.add(p, q, v);
        }
        t
    }

    /// Rows `p,q,value` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,value\n");
        for (p, q, v) in self.iter() {
            s += &format!("{p},{q},{v}\n");
        }
        s
    }
}

impl serde::Serialize for BettiTablePQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Row {
            p: usize,
            q: i64,
            value: u64,
        }
        s.collect_seq(self.iter().map(|(p, q, value)| Row { p, q, value }))
    }
}

impl fmt::Display for BettiTablePQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, q, v)| format!("({p},{q}):{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn betti_table(m: &PresentedGradedModule) -> BettiTablePQ {
    minimal_free_resolution(m).betti()
}

/// Projective dimension, with the zero module reported distinctly.
/// Serializes as a number or the string `"zero-module"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjDim {
    ZeroModule,
    Finite(usize),
}

impl ProjDim {
    pub fn from_table(t: &BettiTablePQ) -> Self {
        t.max_p().map_or(ProjDim::ZeroModule, ProjDim::Finite)
    }

    pub fn value(self) -> Option<usize> {
        match self {
            ProjDim::Finite(p) => Some(p),
            ProjDim::ZeroModule => None,
        }
    }
}

impl serde::Serialize for ProjDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ProjDim::ZeroModule => s.serialize_str("zero-module"),
            ProjDim::Finite(p) => s.serialize_u64(*p as u64),
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::ZeroModule => write!(f, "zero-module"),
            ProjDim::Finite(p) => write!(f, "{p}"),
        }
    }
}

pub fn projective_dimension(m: &PresentedGradedModule) -> ProjDim {
    ProjDim::from_table(&betti_table(m))
}

/// Depth via Auslander–Buchsbaum; `None` for the zero module.
pub fn depth(m: &PresentedGradedModule) -> Option<usize> {
    projective_dimension(m).value().map(|pd| m.nvars() - pd)
}

/// Coefficient of `y^i` in `Σ (-1)^p β(p,q) y^q / (1 - y²)^m`.
pub fn graded_dim_from_betti(beta: &BettiTablePQ, m: usize, i: i64) -> i64 {
    let mut total: i64 = 0;
    for (p, q, v) in beta.iter() {
        let c = series_coeff(m, i - q);
        let sign = if p % 2 == 0 { 1 } else { -1 };
        total += sign * v as i64 * c;
    }
    total
}

/// Coefficient of `y^e` in `1/(1-y²)^m`.
pub fn series_coeff(m: usize, e: i64) -> i64 {
    if e < 0 || e % 2 != 0 {
        return 0;
    }
    if m == 0 {
        return i64::from(e == 0);
    }
    let k = e / 2;
    i64::try_from(binomial(k + m as i64 - 1, m as i64 - 1)).expect("coefficient fits in i64")
}

#[cfg(test)]
mod tests;
