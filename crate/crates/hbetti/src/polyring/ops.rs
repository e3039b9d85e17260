use super::free::{term_cmp, Term};
use super::groebner::GbEngine;
use super::{GradedFreeModule, HomMatrix, ModuleVector, PolyError};
use crate::exactalg::Rational;

/// Division of `v` by the list `g` (in the given order), reducing every term.
/// The result has no term divisible by a leading term of `g`, and `v` minus
/// the result lies in the span of `g`.
pub fn normal_form(v: &ModuleVector, g: &[ModuleVector]) -> ModuleVector {
    divide(v, g).0
}

/// Division with quotients: returns `(r, q)` with `v = Σ q_i g_i + r`, each
/// `q_i` a vector over a single position whose terms are `coef * mon`.
fn divide(v: &ModuleVector, g: &[ModuleVector]) -> (ModuleVector, Vec<Vec<(Rational, super::Monomial)>>) {
    let mut quot = vec![Vec::new(); g.len()];
    let mut done: Vec<Term> = Vec::new();
    let mut work = v.clone();
    while let Some(t) = work.lead().cloned() {
        let hit = g.iter().enumerate().find(|(_, gi)| {
            gi.lead().is_some_and(|l| l.pos == t.pos && l.mon.divides(&t.mon))
        });
        match hit {
            Some((i, gi)) => {
                let l = gi.lead().unwrap();
                let m = l.mon.quotient_of(&t.mon);
                let c = &t.coef / &l.coef;
                work = work.combine(gi, &-c.clone(), &m);
                quot[i].push((c, m));
            }
            None => {
                let mut terms = work.into_terms();
                done.push(terms.remove(0));
                work = ModuleVector::from_sorted_terms(terms);
            }
        }
    }
    (ModuleVector::from_sorted_terms(done), quot)
}

fn check_homogeneous(gens: &[ModuleVector], degrees: &[i64]) -> Result<(), PolyError> {
    for (i, v) in gens.iter().enumerate() {
        if v.span() > degrees.len() {
            return Err(PolyError::Shape(format!("generator {i} exceeds rank")));
        }
        if !v.is_zero() && v.degree(degrees).is_none() {
            return Err(PolyError::Inhomogeneous(format!("generator {i}")));
        }
    }
    Ok(())
}

/// The reduced Gröbner basis of the submodule generated by `gens` inside the
/// free module with the given generator degrees.
pub fn buchberger(gens: &[ModuleVector], module: &GradedFreeModule) -> Result<Vec<ModuleVector>, PolyError> {
    check_homogeneous(gens, &module.degrees)?;
    let mut e = GbEngine::new(module.degrees.clone(), module.rank());
    for v in gens {
        e.push(v.clone());
    }
    e.complete(None);
    Ok(e.reduced_basis())
}

/// `lcm/lt(g_i) * g_i - lcm/lt(g_j) * g_j` with leading coefficients cleared.
pub fn s_vector(gi: &ModuleVector, gj: &ModuleVector) -> Option<ModuleVector> {
    let (a, b) = (gi.lead()?, gj.lead()?);
    if a.pos != b.pos {
        return None;
    }
    let l = a.mon.lcm(&b.mon);
    Some(
        gi.mul_term(&a.coef.recip(), &a.mon.quotient_of(&l))
            .combine(gj, &-b.coef.recip(), &b.mon.quotient_of(&l)),
    )
}

/// Schreyer generators of the syzygy module of a Gröbner basis `g`.
/// Position `i` of each syzygy carries the degree of `g_i`.
pub fn syzygy_basis(g: &[ModuleVector], module: &GradedFreeModule) -> Result<Vec<ModuleVector>, PolyError> {
    check_homogeneous(g, &module.degrees)?;
    if let Some(i) = g.iter().position(|v| v.is_zero()) {
        return Err(PolyError::NotGroebner(format!("zero element at {i}")));
    }
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let Some(s) = s_vector(&g[i], &g[j]) else { continue };
            let (a, b) = (g[i].lead().unwrap(), g[j].lead().unwrap());
            let l = a.mon.lcm(&b.mon);
            let (r, q) = divide(&s, g);
            if !r.is_zero() {
                return Err(PolyError::NotGroebner(format!("S-pair ({i},{j}) has nonzero remainder")));
            }
            let mut terms = vec![
                Term { pos: i as u32, mon: a.mon.quotient_of(&l), coef: a.coef.recip() },
                Term { pos: j as u32, mon: b.mon.quotient_of(&l), coef: -b.coef.recip() },
            ];
            for (k, qk) in q.into_iter().enumerate() {
                for (c, m) in qk {
                    terms.push(Term { pos: k as u32, mon: m, coef: -c });
                }
            }
            let syz = ModuleVector::from_terms(terms);
            if !syz.is_zero() {
                out.push(syz);
            }
        }
    }
    Ok(out)
}

/// A Gröbner basis of the image of a matrix that remembers how each basis
/// element is built from the columns.
#[derive(Debug, Clone)]
pub struct ImageGb {
    engine: GbEngine,
    ncols: usize,
}

impl ImageGb {
    pub fn new(a: &HomMatrix) -> Self {
        let top = a.nrows();
        let mut degrees = a.target.degrees.clone();
        degrees.extend_from_slice(&a.source.degrees);
        let mut engine = GbEngine::new(degrees, top);
        for (i, c) in a.cols.iter().enumerate() {
            engine.push(c.add(&ModuleVector::unit(top + i)));
        }
        engine.complete(None);
        ImageGb { engine, ncols: a.ncols() }
    }

    /// Some `u` with `A·u = v`, or `None` when `v` is not in the image.
    pub fn lift(&self, v: &ModuleVector) -> Option<ModuleVector> {
        let r = self.engine.reduce(v, false);
        match r.lead() {
            Some(t) if (t.pos as usize) < self.engine.top() => None,
            _ => Some(r.slice(self.engine.top(), self.engine.top() + self.ncols).scale(&-Rational::one())),
        }
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.engine
            .reduce(v, false)
            .lead()
            .is_none_or(|t| t.pos as usize >= self.engine.top())
    }

    /// Generators of the kernel (not necessarily minimal).
    pub fn kernel(&self) -> Vec<(i64, ModuleVector)> {
        self.engine.syzygies().to_vec()
    }
}

/// Generators of `ker A`, pruned to a minimal generating set.
pub fn kernel_gens(a: &HomMatrix) -> Vec<ModuleVector> {
    let syz = ImageGb::new(a).kernel();
    let vs: Vec<ModuleVector> = syz.into_iter().map(|(_, v)| v).collect();
    let keep = minimal_generators(&vs, &a.source.degrees, &[]);
    keep.into_iter().map(|i| vs[i].clone()).collect()
}

/// `u` with `A·u = v`, or `None` ("not in image").
pub fn lift_through(a: &HomMatrix, v: &ModuleVector) -> Option<ModuleVector> {
    ImageGb::new(a).lift(v)
}

/// Indices of a minimal subset of `vs` that, together with `modulo`,
/// generates the same submodule as `vs ∪ modulo`. Candidates are scanned in
/// order of increasing degree (stable), so earlier vectors are preferred.
pub fn minimal_generators(vs: &[ModuleVector], degrees: &[i64], modulo: &[ModuleVector]) -> Vec<usize> {
    let mut e = GbEngine::new(degrees.to_vec(), degrees.len());
    for m in modulo {
        e.push(m.clone());
    }
    let mut order: Vec<(i64, usize)> = vs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (v.degree(degrees).expect("homogeneous generator"), i))
        .collect();
    order.sort();
    let mut keep = Vec::new();
    for (d, i) in order {
        e.complete(Some(d));
        let r = e.reduce(&vs[i], false);
        if !r.is_zero() {
            keep.push(i);
            e.insert_reduced(r);
        }
    }
    keep.sort();
    keep
}

/// Sorts vectors by leading term (greatest first); used to compare bases.
pub fn sort_by_lead(vs: &mut [ModuleVector]) {
    vs.sort_by(|a, b| match (a.lead(), b.lead()) {
        (Some(x), Some(y)) => term_cmp(x.pos, &x.mon, y.pos, &y.mon),
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, None) => std::cmp::Ordering::Equal,
    });
}
