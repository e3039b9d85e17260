//! Finitely presented graded modules over a [`GradedRing`].
//!
//! A module is `F / N` with `F` free on generators of the given degrees and
//! `N` spanned by the relation columns. Presentations are never minimized
//! here; see [`crate::resolve`].

mod text;

use std::fmt;

use crate::polyring::{
    minimal_generators, GbEngine, GradedFreeModule, GradedRing, HomMatrix, ImageGb, Monomial,
    ModuleVector, PolyError, Polynomial, Ring,
};

pub use text::ParseModuleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("map is not well defined: relation column {0} does not land in the target relations")]
    IllDefined(usize),
    #[error("composite g∘f is nonzero on generator {0}")]
    NotAComplex(usize),
    #[error("maps do not compose: {0}")]
    Mismatch(String),
    #[error("annihilation precondition fails: {0} does not act as zero")]
    NotAnnihilated(String),
    #[error("variable name collision: `{0}`")]
    NameCollision(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct PresentedGradedModule {
    pub ring: Ring,
    pub degrees: Vec<i64>,
    pub relations: Vec<ModuleVector>,
}

impl PresentedGradedModule {
    pub fn new(ring: Ring, degrees: Vec<i64>, relations: Vec<ModuleVector>) -> Result<Self, ModuleError> {
        for (i, r) in relations.iter().enumerate() {
            if r.span() > degrees.len() {
                return Err(PolyError::Shape(format!("relation {i} exceeds generator count")).into());
            }
            if !r.is_zero() && r.degree(&degrees).is_none() {
                return Err(PolyError::Inhomogeneous(format!("relation {i}")).into());
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedGradedModule { ring, degrees, relations })
    }

    pub fn free(ring: Ring, degrees: Vec<i64>) -> Self {
        PresentedGradedModule { ring, degrees, relations: Vec::new() }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// True when the presentation has no generators. A module may be zero
    /// without this (all generators killed); see [`Self::is_zero`].
    pub fn has_no_generators(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Decides whether the module is zero.
    pub fn is_zero(&self) -> bool {
        let mut e = GbEngine::new(self.degrees.clone(), self.ngens());
        for r in &self.relations {
            e.push(r.clone());
        }
        let dmax = self.degrees.iter().copied().max().unwrap_or(0);
        e.complete(Some(dmax));
        (0..self.ngens()).all(|i| e.reduce(&ModuleVector::unit(i), false).is_zero())
    }

    pub fn cover(&self) -> GradedFreeModule {
        GradedFreeModule::new(self.degrees.clone())
    }

    /// The relation matrix as a degree-0 map onto the free cover.
    pub fn relation_matrix(&self) -> HomMatrix {
        HomMatrix::from_columns(self.cover(), self.relations.clone(), 0).expect("homogeneous relations")
    }

    pub fn relation_degrees(&self) -> Vec<i64> {
        self.relations.iter().map(|r| r.degree(&self.degrees).unwrap()).collect()
    }

    /// `M{s}`: every generator moves up by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        PresentedGradedModule {
            ring: self.ring.clone(),
            degrees: self.degrees.iter().map(|d| d + s).collect(),
            relations: self.relations.clone(),
        }
    }

    pub fn direct_sum(ring: Ring, parts: &[PresentedGradedModule]) -> Self {
        let mut degrees = Vec::new();
        let mut relations = Vec::new();
        for p in parts {
            let off = degrees.len();
            relations.extend(p.relations.iter().map(|r| r.offset(off)));
            degrees.extend_from_slice(&p.degrees);
        }
        PresentedGradedModule { ring, degrees, relations }
    }

    /// A Gröbner basis engine for the relation submodule, completed to
    /// degree `bound`.
    fn relation_gb(&self, bound: Option<i64>) -> GbEngine {
        let mut e = GbEngine::new(self.degrees.clone(), self.ngens());
        for r in &self.relations {
            e.push(r.clone());
        }
        e.complete(bound);
        e
    }

    /// Whether `v` (in the free cover) is zero in the module.
    pub fn is_zero_element(&self, v: &ModuleVector) -> bool {
        let d = v.degree(&self.degrees);
        self.relation_gb(d).reduce(v, false).is_zero()
    }
}

impl fmt::Debug for PresentedGradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_module(self))
    }
}

/// A homogeneous degree-0 map of presented modules, given on free covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: PresentedGradedModule,
    pub target: PresentedGradedModule,
    /// Column `i` is the image of source generator `i` in the target cover.
    pub cols: Vec<ModuleVector>,
}

impl ModuleMap {
    pub fn matrix(&self) -> HomMatrix {
        HomMatrix {
            source: self.source.cover(),
            target: self.target.cover(),
            cols: self.cols.clone(),
        }
    }

    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        self.matrix().apply(v)
    }

    pub fn zero(source: PresentedGradedModule, target: PresentedGradedModule) -> Self {
        let n = source.ngens();
        ModuleMap { source, target, cols: vec![ModuleVector::zero(); n] }
    }

    pub fn identity(m: PresentedGradedModule) -> Self {
        let cols = (0..m.ngens()).map(ModuleVector::unit).collect();
        ModuleMap { source: m.clone(), target: m, cols }
    }
}

/// Validates a candidate map: shapes, homogeneity, and that source relations
/// land in the target relation submodule.
pub fn check_map(f: ModuleMap) -> Result<ModuleMap, ModuleError> {
    if f.cols.len() != f.source.ngens() {
        return Err(ModuleError::Mismatch(format!(
            "{} columns for {} source generators",
            f.cols.len(),
            f.source.ngens()
        )));
    }
    HomMatrix::new(f.source.cover(), f.target.cover(), f.cols.clone(), 0)?;
    if f.source.relations.is_empty() {
        return Ok(f);
    }
    let a = f.matrix();
    let tgt = f.target.relation_gb(None);
    for (i, r) in f.source.relations.iter().enumerate() {
        let img = a.apply(r);
        if !tgt.reduce(&img, false).is_zero() {
            return Err(ModuleError::IllDefined(i));
        }
    }
    Ok(f)
}

/// `ker g / im f` together with representatives of its generators in the
/// free cover of the middle module.
#[derive(Debug, Clone)]
pub struct Homology {
    pub module: PresentedGradedModule,
    pub reps: Vec<ModuleVector>,
}

/// Homology at the middle of `A --f--> B --g--> C`.
pub fn homology(f: &ModuleMap, g: &ModuleMap) -> Result<Homology, ModuleError> {
    if f.target != g.source {
        return Err(ModuleError::Mismatch("target(f) differs from source(g)".into()));
    }
    let b = &g.source;
    let c = &g.target;
    let fm = f.matrix();
    let gm = g.matrix();
    if !f.cols.is_empty() {
        let cgb = c.relation_gb(None);
        for (i, col) in f.cols.iter().enumerate() {
            if !cgb.reduce(&gm.apply(col), false).is_zero() {
                return Err(ModuleError::NotAComplex(i));
            }
        }
    }
    homology_of(b, &g.cols, &c.degrees, &c.relations, &fm.cols)
}

/// Homology of `B` at the middle given raw data: `g_cols` maps `B`'s cover
/// into a cover with degrees `c_degrees` and relations `c_rel`; `f_cols` are
/// images in `B`'s cover. No well-definedness checks.
pub fn homology_of(
    b: &PresentedGradedModule,
    g_cols: &[ModuleVector],
    c_degrees: &[i64],
    c_rel: &[ModuleVector],
    f_cols: &[ModuleVector],
) -> Result<Homology, ModuleError> {
    let r = b.ngens();
    // preimage of the target relations: kernel of [G | N']
    let c_rel_deg: Vec<i64> = c_rel.iter().map(|v| v.degree(c_degrees).unwrap()).collect();
    let mut cols = g_cols.to_vec();
    cols.extend_from_slice(c_rel);
    let mut src = b.degrees.clone();
    src.extend_from_slice(&c_rel_deg);
    let big = HomMatrix::new(GradedFreeModule::new(src), GradedFreeModule::new(c_degrees.to_vec()), cols, 0)?;
    let kernel: Vec<ModuleVector> = ImageGb::new(&big)
        .kernel()
        .into_iter()
        .map(|(_, v)| v.slice(0, r))
        .filter(|v| !v.is_zero())
        .collect();
    let mut denom: Vec<ModuleVector> = f_cols.iter().filter(|v| !v.is_zero()).cloned().collect();
    denom.extend(b.relations.iter().cloned());
    let keep = minimal_generators(&kernel, &b.degrees, &denom);
    let reps: Vec<ModuleVector> = keep.iter().map(|&i| kernel[i].clone()).collect();
    let rep_deg: Vec<i64> = reps.iter().map(|v| v.degree(&b.degrees).unwrap()).collect();
    let module = present_subquotient(b, &reps, &rep_deg, &denom)?;
    Ok(Homology { module, reps })
}

/// Presentation of `(span reps + D) / D` with generators `reps`, where `D`
/// is spanned by `denom` (which must contain the relations of `b`).
pub fn present_subquotient(
    b: &PresentedGradedModule,
    reps: &[ModuleVector],
    rep_deg: &[i64],
    denom: &[ModuleVector],
) -> Result<PresentedGradedModule, ModuleError> {
    let k = reps.len();
    if k == 0 {
        return Ok(PresentedGradedModule::zero(b.ring.clone()));
    }
    let mut cols = reps.to_vec();
    cols.extend(denom.iter().cloned());
    let mut src = rep_deg.to_vec();
    src.extend(denom.iter().map(|v| v.degree(&b.degrees).unwrap()));
    let m = HomMatrix::new(GradedFreeModule::new(src), b.cover(), cols, 0)?;
    let rels: Vec<ModuleVector> = ImageGb::new(&m)
        .kernel()
        .into_iter()
        .map(|(_, v)| v.slice(0, k))
        .filter(|v| !v.is_zero())
        .collect();
    let keep = minimal_generators(&rels, rep_deg, &[]);
    let rels = keep.into_iter().map(|i| rels[i].clone()).collect();
    PresentedGradedModule::new(b.ring.clone(), rep_deg.to_vec(), rels)
}

/// `M / fM`.
pub fn quotient_by_element(m: &PresentedGradedModule, f: &Polynomial) -> Result<PresentedGradedModule, ModuleError> {
    if f.is_zero() {
        return Ok(m.clone());
    }
    if f.degree().is_none() {
        return Err(PolyError::Inhomogeneous("quotient element".into()).into());
    }
    let mut rels = m.relations.clone();
    rels.extend((0..m.ngens()).map(|i| ModuleVector::from_poly(i, f)));
    PresentedGradedModule::new(m.ring.clone(), m.degrees.clone(), rels)
}

/// Base change along a surjective degree-preserving ring map `φ: S → T`
/// given by the images of the variables of `S`. `kernel` must generate
/// `ker φ`; each kernel element is checked to act as zero on `M`, which makes
/// `M` a `T`-module presented by `φ` applied to the relations.
pub fn change_ring(
    m: &PresentedGradedModule,
    target: Ring,
    images: &[Polynomial],
    kernel: &[Polynomial],
) -> Result<PresentedGradedModule, ModuleError> {
    assert_eq!(images.len(), m.nvars(), "one image per variable");
    if !m.relations.is_empty() || !kernel.is_empty() {
        let gb = m.relation_gb(None);
        for p in kernel {
            for i in 0..m.ngens() {
                if !gb.reduce(&ModuleVector::from_poly(i, p), false).is_zero() {
                    return Err(ModuleError::NotAnnihilated(m.ring.format(p)));
                }
            }
        }
    }
    let rels = m.relations.iter().map(|r| r.substitute(images, m.ngens())).collect();
    PresentedGradedModule::new(target, m.degrees.clone(), rels)
}

/// Collapses each class of variables to one new variable named
/// `names[class]`; variables in `zero` are sent to 0. Requires
/// `X_k − X_l` (same class) and `X_z` (zero list) to act as zero on `M`.
pub fn identify_variables(
    m: &PresentedGradedModule,
    classes: &[Vec<usize>],
    zero: &[usize],
    names: &[String],
) -> Result<PresentedGradedModule, ModuleError> {
    let target = GradedRing::new(names)?;
    let mut images = vec![None; m.nvars()];
    let mut kernel = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            images[v] = Some(target.var(c));
        }
        for w in class.windows(2) {
            kernel.push(m.ring.var(w[0]).sub(&m.ring.var(w[1])));
        }
    }
    for &z in zero {
        images[z] = Some(Polynomial::zero());
        kernel.push(m.ring.var(z));
    }
    let images: Vec<Polynomial> = images
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.unwrap_or_else(|| panic!("variable {i} not covered by classes")))
        .collect();
    change_ring(m, target, &images, &kernel)
}

/// `M ⊗_ℚ N` over the ring with the concatenated variable lists.
pub fn tensor_over_q(m: &PresentedGradedModule, n: &PresentedGradedModule) -> Result<PresentedGradedModule, ModuleError> {
    for v in n.ring.names() {
        if m.ring.names().contains(v) {
            return Err(ModuleError::NameCollision(v.clone()));
        }
    }
    let mut names = m.ring.names().to_vec();
    names.extend_from_slice(n.ring.names());
    let ring = GradedRing::new(&names)?;
    let nm = m.nvars();
    let shift_vars = |v: &ModuleVector| -> ModuleVector {
        let images: Vec<Polynomial> = (0..n.nvars()).map(|i| ring.var(nm + i)).collect();
        v.substitute(&images, n.ngens())
    };
    let (a, b) = (m.ngens(), n.ngens());
    let idx = |i: usize, j: usize| i * b + j;
    let mut degrees = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            degrees.push(m.degrees[i] + n.degrees[j]);
        }
    }
    let mut rels = Vec::new();
    for r in &m.relations {
        for j in 0..b {
            rels.push(r.remap(|i| Some(idx(i, j))));
        }
    }
    for r in &n.relations {
        let r = shift_vars(r);
        for i in 0..a {
            rels.push(r.remap(|j| Some(idx(i, j))));
        }
    }
    PresentedGradedModule::new(ring, degrees, rels)
}

/// Graded dimensions `dim M^i` for `start <= i <= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub start: i64,
    pub dims: Vec<u64>,
}

impl HilbertSeries {
    pub fn dim(&self, i: i64) -> u64 {
        if i < self.start {
            return 0;
        }
        self.dims.get((i - self.start) as usize).copied().unwrap_or(0)
    }

    pub fn cutoff(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    /// Nonzero entries as `(degree, dim)`.
    pub fn nonzero(&self) -> Vec<(i64, u64)> {
        (self.start..=self.cutoff()).map(|i| (i, self.dim(i))).filter(|p| p.1 != 0).collect()
    }
}

/// Graded dimensions up to `cutoff`, by counting standard monomials against
/// a (degree-truncated) Gröbner basis of the relations. The series starts at
/// `min(0, smallest generator degree)`.
pub fn hilbert_series(m: &PresentedGradedModule, cutoff: i64) -> HilbertSeries {
    let start = m.degrees.iter().copied().min().unwrap_or(0).min(0);
    let gb = m.relation_gb(Some(cutoff));
    let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); m.ngens()];
    for g in gb.basis() {
        let t = g.lead().unwrap();
        leads[t.pos as usize].push(t.mon);
    }
    let n = m.nvars();
    let len = if cutoff >= start { (cutoff - start + 1) as usize } else { 0 };
    let mut dims = vec![0u64; len];
    for (pos, &d) in m.degrees.iter().enumerate() {
        let mut i = d;
        while i <= cutoff {
            let total = ((i - d) / 2) as u32;
            let count = Monomial::all_of_total(n, total)
                .into_iter()
                .filter(|mon| !leads[pos].iter().any(|l| l.divides(mon)))
                .count();
            dims[(i - start) as usize] += count as u64;
            i += 2;
        }
    }
    HilbertSeries { start, dims }
}

pub use text::{format_module, parse_module};
