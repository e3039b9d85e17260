use std::collections::BTreeMap;

use super::{assemble, assemble_over, reduced_edge_ring, KrError, TotalDoubleComplex};
use crate::braid::ClosedBraidDiagram;
use crate::grmodule::{change_ring, homology_of, quotient_by_element, PresentedGradedModule};
use crate::par;
use crate::polyring::{GradedFreeModule, GradedRing, HomMatrix, ImageGb, ModuleVector, Polynomial, Ring};

/// `H(C₀, d₊)` at one position. Degrees of `module` are adjusted (first
/// grading minus `j`); `reps` live in the free module at the position.
#[derive(Debug, Clone)]
pub struct PlusStratum {
    pub j: i64,
    pub module: PresentedGradedModule,
    pub reps: Vec<ModuleVector>,
}

impl PlusStratum {
    /// The module with its true first grading.
    pub fn graded_module(&self) -> PresentedGradedModule {
        self.module.shifted(self.j)
    }
}

/// Strata `(j, k) ↦ H^{⋆,j,k}` over the component ring, shift applied.
#[derive(Debug, Clone)]
pub struct TriGradedHomology {
    pub ring: Ring,
    pub strata: BTreeMap<(i64, i64), PresentedGradedModule>,
    pub components: usize,
    pub reduced: bool,
}

/// Horizontal homology at every position.
pub fn plus_homology(c: &TotalDoubleComplex) -> Result<BTreeMap<(i64, i64), PlusStratum>, KrError> {
    let keys: Vec<(i64, i64)> = c.positions.keys().copied().collect();
    let ring = c.edges.ring.clone();
    let out = par::map(keys.clone(), |(j, k)| -> Result<PlusStratum, KrError> {
        let b = PresentedGradedModule::free(ring.clone(), c.adjusted_degrees(j, k));
        let (g_cols, c_degrees) = match c.dplus.get(&(j, k)) {
            Some(cols) => (cols.clone(), c.adjusted_degrees(j + 2, k)),
            None => (vec![ModuleVector::zero(); b.ngens()], Vec::new()),
        };
        let f_cols = c.dplus.get(&(j - 2, k)).cloned().unwrap_or_default();
        let h = homology_of(&b, &g_cols, &c_degrees, &[], &f_cols)?;
        Ok(PlusStratum { j, module: h.module, reps: h.reps })
    });
    keys.into_iter().zip(out).map(|(key, h)| Ok((key, h?))).collect()
}

/// The map `H₊^{j,k} → H₊^{j,k+2}` induced by `d_v`, on generators.
fn induced_dv(
    c: &TotalDoubleComplex,
    plus: &BTreeMap<(i64, i64), PlusStratum>,
    j: i64,
    k: i64,
) -> Result<Vec<ModuleVector>, KrError> {
    let src = &plus[&(j, k)];
    let tgt = &plus[&(j, k + 2)];
    if src.reps.is_empty() || tgt.reps.is_empty() {
        return Ok(vec![ModuleVector::zero(); src.reps.len()]);
    }
    let dv = c.dv_matrix(j, k).expect("vertical map below the top row");
    let ntgt = tgt.reps.len();
    let mut cols = tgt.reps.clone();
    let mut degrees = tgt.module.degrees.clone();
    if let Some(d) = c.dplus.get(&(j - 2, k + 2)) {
        cols.extend(d.iter().cloned());
        degrees.extend(c.adjusted_degrees(j - 2, k + 2));
    }
    let a = HomMatrix::new(
        GradedFreeModule::new(degrees),
        GradedFreeModule::new(c.adjusted_degrees(j, k + 2)),
        cols,
        0,
    )?;
    let gb = ImageGb::new(&a);
    src.reps
        .iter()
        .map(|r| {
            let v = dv.apply(r);
            gb.lift(&v)
                .map(|u| u.slice(0, ntgt))
                .ok_or_else(|| KrError::Invariant(format!("d_v of a d+ cycle at ({j},{k}) is not a d+ cycle")))
        })
        .collect()
}

/// `H(H(C₀, d₊), d_v)` per position, with the true first grading and no
/// further shift. Zero positions are dropped.
pub fn vertical_homology(
    c: &TotalDoubleComplex,
    plus: &BTreeMap<(i64, i64), PlusStratum>,
) -> Result<BTreeMap<(i64, i64), PresentedGradedModule>, KrError> {
    let lower: Vec<(i64, i64)> = plus.keys().copied().filter(|&(_, k)| k < 0).collect();
    let maps = par::map(lower.clone(), |(j, k)| induced_dv(c, plus, j, k));
    let mut phi = BTreeMap::new();
    for (key, m) in lower.into_iter().zip(maps) {
        phi.insert(key, m?);
    }
    let keys: Vec<(i64, i64)> = plus.keys().copied().collect();
    let out = par::map(keys.clone(), |(j, k)| -> Result<PresentedGradedModule, KrError> {
        let b = &plus[&(j, k)].module;
        if b.has_no_generators() {
            return Ok(b.clone());
        }
        let empty = PresentedGradedModule::zero(b.ring.clone());
        let (g_cols, target) = match phi.get(&(j, k)) {
            Some(cols) => (cols.clone(), &plus[&(j, k + 2)].module),
            None => (vec![ModuleVector::zero(); b.ngens()], &empty),
        };
        let f_cols = phi.get(&(j, k - 2)).cloned().unwrap_or_default();
        let h = homology_of(b, &g_cols, &target.degrees, &target.relations, &f_cols)?;
        Ok(h.module.shifted(j))
    });
    let mut strata = BTreeMap::new();
    for (key, m) in keys.into_iter().zip(out) {
        let m = m?;
        if !m.has_no_generators() {
            strata.insert(key, m);
        }
    }
    Ok(strata)
}

/// Re-expresses a module over the edge ring as a module over the component
/// ring: each surviving edge variable maps to its component's variable (or
/// to 0 for component 0 when `kill_first`). Every same-component difference
/// of edge variables, and every component-0 edge when `kill_first`, is
/// checked to act as zero.
fn to_component_ring(
    d: &ClosedBraidDiagram,
    c: &TotalDoubleComplex,
    kill_first: bool,
    target: &Ring,
    modules: BTreeMap<(i64, i64), PresentedGradedModule>,
) -> Result<BTreeMap<(i64, i64), PresentedGradedModule>, KrError> {
    let comp_of = |e: usize| d.edges[e].component;
    let offset = usize::from(kill_first);
    for comp in offset..d.components {
        if !c.edges.free_edges.iter().any(|&e| comp_of(e) == comp) {
            return Err(KrError::EmptyComponent(comp));
        }
    }
    let images: Vec<Polynomial> = c
        .edges
        .free_edges
        .iter()
        .map(|&e| match comp_of(e) {
            0 if kill_first => Polynomial::zero(),
            comp => target.var(comp - offset),
        })
        .collect();
    let mut kernel = Vec::new();
    for edges in d.component_edges() {
        for w in edges.windows(2) {
            let p = c.edges.edge(w[0]).sub(c.edges.edge(w[1]));
            if !p.is_zero() {
                kernel.push(p);
            }
        }
    }
    if kill_first {
        for e in d.component_edges().swap_remove(0) {
            let p = c.edges.edge(e).clone();
            if !p.is_zero() {
                kernel.push(p);
            }
        }
    }
    let keys: Vec<(i64, i64)> = modules.keys().copied().collect();
    let mods: Vec<PresentedGradedModule> = modules.into_values().collect();
    let out = par::map(mods, |m| change_ring(&m, target.clone(), &images, &kernel));
    keys.into_iter().zip(out).map(|(key, m)| Ok((key, m?))).collect()
}

fn check_parity(h: &TriGradedHomology) -> Result<(), KrError> {
    let want = if h.reduced { 0 } else { 1 };
    for (&(j, k), m) in &h.strata {
        if let Some(&g) = m.degrees.iter().find(|&&g| (g + j).rem_euclid(2) != want) {
            return Err(KrError::Invariant(format!(
                "generator in degree {g} at (j,k)=({j},{k}) breaks the parity of i + j"
            )));
        }
    }
    Ok(())
}

fn shift_strata(
    strata: BTreeMap<(i64, i64), PresentedGradedModule>,
    (s, t, u): (i64, i64, i64),
) -> BTreeMap<(i64, i64), PresentedGradedModule> {
    strata.into_iter().map(|((j, k), m)| ((j + t, k + u), m.shifted(s))).collect()
}

/// `H(B) = H(H(C₀(B), d₊), d_v){−w+b, w+b−1, w−b+1}` over `ℚ[X_1, …, X_m]`.
pub fn middle_homology(d: &ClosedBraidDiagram) -> Result<TriGradedHomology, KrError> {
    let c = assemble(d)?;
    let raw = vertical_homology(&c, &plus_homology(&c)?)?;
    let ring = GradedRing::with_prefix("X", d.components);
    let strata = to_component_ring(d, &c, false, &ring, raw)?;
    let (w, b) = (d.writhe, d.strands as i64);
    let h = TriGradedHomology {
        ring,
        strata: shift_strata(strata, (-w + b, w + b - 1, w - b + 1)),
        components: d.components,
        reduced: false,
    };
    check_parity(&h)?;
    Ok(h)
}

/// `ℚ[X_2, …, X_m]`, where `X_i` stands for `X_i − X_1`.
fn reduced_ring(m: usize) -> Ring {
    let names: Vec<String> = (2..=m).map(|i| format!("X{i}")).collect();
    GradedRing::new(&names).expect("distinct names")
}

/// `H(B) / X_1 H(B)` with the first grading lowered by one.
pub fn reduced_homology(h: &TriGradedHomology) -> Result<TriGradedHomology, KrError> {
    assert!(!h.reduced, "already reduced");
    let ring = reduced_ring(h.components);
    let x1 = h.ring.var(0);
    let mut images = vec![Polynomial::zero()];
    images.extend((0..ring.nvars()).map(|i| ring.var(i)));
    let entries: Vec<((i64, i64), PresentedGradedModule)> = h.strata.clone().into_iter().collect();
    let out = par::map(entries, |((j, k), m)| -> Result<_, KrError> {
        let q = quotient_by_element(&m, &x1)?;
        let q = change_ring(&q, ring.clone(), &images, std::slice::from_ref(&x1))?;
        Ok(((j, k), q.shifted(-1)))
    });
    let mut strata = BTreeMap::new();
    for r in out {
        let (key, m) = r?;
        if !m.is_zero() {
            strata.insert(key, m);
        }
    }
    Ok(TriGradedHomology { ring, strata, components: h.components, reduced: true })
}

/// `H_r(B) = H(H(C_r(B), d₊), d_v){−w+b−1, w+b−1, w−b+1}`, computed from
/// the reduced complex without passing through `H(B)`.
pub fn reduced_middle_homology(d: &ClosedBraidDiagram) -> Result<TriGradedHomology, KrError> {
    let c = assemble_over(d, reduced_edge_ring(d)?)?;
    let raw = vertical_homology(&c, &plus_homology(&c)?)?;
    let ring = reduced_ring(d.components);
    let strata = to_component_ring(d, &c, true, &ring, raw)?;
    let (w, b) = (d.writhe, d.strands as i64);
    let h = TriGradedHomology {
        ring,
        strata: shift_strata(strata, (-w + b - 1, w + b - 1, w - b + 1)),
        components: d.components,
        reduced: true,
    };
    check_parity(&h)?;
    Ok(h)
}
