use std::cmp::Ordering;

use super::{Monomial, PolyError, Polynomial};
use crate::exactalg::Rational;

/// One term `coef * mon * e_pos` of a module vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub pos: u32,
    pub mon: Monomial,
    pub coef: Rational,
}

/// Position-over-term order with earlier positions greater; `Less` means
/// `a` is the greater term and sorts first.
#[inline]
pub(crate) fn term_cmp(a_pos: u32, a_mon: &Monomial, b_pos: u32, b_mon: &Monomial) -> Ordering {
    a_pos.cmp(&b_pos).then_with(|| b_mon.cmp(a_mon))
}

/// An element of a free module, stored sparsely with terms in decreasing
/// module order; the first term is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct ModuleVector {
    terms: Vec<Term>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_pos`.
    pub fn unit(pos: usize) -> Self {
        Self::from_poly(pos, &Polynomial::one())
    }

    pub fn from_poly(pos: usize, p: &Polynomial) -> Self {
        ModuleVector {
            terms: p
                .terms()
                .map(|(m, c)| Term { pos: pos as u32, mon: *m, coef: c.clone() })
                .collect(),
        }
    }

    pub fn from_entries(entries: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            terms.extend(p.terms().map(|(m, c)| Term { pos: i as u32, mon: *m, coef: c.clone() }));
        }
        ModuleVector { terms }
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| term_cmp(w[0].pos, &w[0].mon, w[1].pos, &w[1].mon) == Ordering::Less));
        ModuleVector { terms }
    }

    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| term_cmp(a.pos, &a.mon, b.pos, &b.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mon == t.mon => l.coef += &t.coef,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        ModuleVector { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn entry(&self, pos: usize) -> Polynomial {
        Polynomial::from_sorted(
            self.terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mon, t.coef.clone()))
                .collect(),
        )
    }

    pub fn entries(&self, rank: usize) -> Vec<Polynomial> {
        let mut out = vec![Vec::new(); rank];
        for t in &self.terms {
            out[t.pos as usize].push((t.mon, t.coef.clone()));
        }
        out.into_iter().map(Polynomial::from_sorted).collect()
    }

    /// One past the largest position used.
    pub fn span(&self) -> usize {
        self.terms.iter().map(|t| t.pos as usize + 1).max().unwrap_or(0)
    }

    /// Degree given the position degrees, if homogeneous.
    pub fn degree(&self, pos_degrees: &[i64]) -> Option<i64> {
        let d = |t: &Term| 2 * t.mon.total() as i64 + pos_degrees[t.pos as usize];
        let first = d(self.terms.first()?);
        self.terms.iter().all(|t| d(t) == first).then_some(first)
    }

    /// `self + c * m * other`.
    pub fn combine(&self, other: &Self, c: &Rational, m: &Monomial) -> Self {
        combine_terms(&self.terms, &other.terms, c, m)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one(), &Monomial::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Rational::one(), &Monomial::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_term(c, &Monomial::ONE)
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos, mon: t.mon.mul(m), coef: &t.coef * c })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc = acc.combine(self, c, m);
        }
        acc
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(t) if !t.coef.is_one() => self.scale(&t.coef.recip()),
            _ => self.clone(),
        }
    }

    /// Renumbers positions through `f`; positions mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter_map(|t| {
                    f(t.pos as usize).map(|p| Term { pos: p as u32, mon: t.mon, coef: t.coef.clone() })
                })
                .collect(),
        )
    }

    /// Keeps positions in `range`, shifted to start at zero.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .filter(|t| (start..end).contains(&(t.pos as usize)))
                .map(|t| Term { pos: t.pos - start as u32, mon: t.mon, coef: t.coef.clone() })
                .collect(),
        }
    }

    pub fn offset(&self, by: usize) -> Self {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos + by as u32, mon: t.mon, coef: t.coef.clone() })
                .collect(),
        }
    }

    /// Applies a ring map to every entry.
    pub fn substitute(&self, images: &[Polynomial], rank: usize) -> Self {
        let entries: Vec<Polynomial> =
            self.entries(rank).iter().map(|p| p.substitute(images)).collect();
        Self::from_entries(&entries)
    }

    /// True when some entry has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.terms.iter().any(|t| t.mon.is_one())
    }
}

pub(crate) fn combine_terms(a: &[Term], b: &[Term], c: &Rational, m: &Monomial) -> ModuleVector {
    if c.is_zero() || b.is_empty() {
        return ModuleVector { terms: a.to_vec() };
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = m.mul(&b[j].mon);
        match term_cmp(a[i].pos, &a[i].mon, b[j].pos, &bm) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(Term { pos: b[j].pos, mon: bm, coef: c * &b[j].coef });
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].coef + &(c * &b[j].coef);
                if !s.is_zero() {
                    out.push(Term { pos: a[i].pos, mon: a[i].mon, coef: s });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term { pos: t.pos, mon: m.mul(&t.mon), coef: c * &t.coef });
    }
    ModuleVector { terms: out }
}

/// A graded free module `⊕ R{d_i}`; generator `i` sits in degree `d_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradedFreeModule {
    pub degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// A homogeneous map of graded free modules stored by columns: column `i` is
/// the image of the `i`-th source generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomMatrix {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub cols: Vec<ModuleVector>,
}

impl HomMatrix {
    /// Validates that each nonzero column is homogeneous of degree
    /// `source_i + offset`.
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        cols: Vec<ModuleVector>,
        offset: i64,
    ) -> Result<Self, PolyError> {
        if cols.len() != source.rank() {
            return Err(PolyError::Shape(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.rank()
            )));
        }
        for (i, c) in cols.iter().enumerate() {
            if c.span() > target.rank() {
                return Err(PolyError::Shape(format!("column {i} exceeds target rank")));
            }
            if c.is_zero() {
                continue;
            }
            match c.degree(&target.degrees) {
                Some(d) if d == source.degrees[i] + offset => {}
                _ => return Err(PolyError::Inhomogeneous(format!("column {i}"))),
            }
        }
        Ok(HomMatrix { source, target, cols })
    }

    /// Builds a degree-0 map whose source degrees are read off the columns;
    /// zero columns get degree `fallback`.
    pub fn from_columns(target: GradedFreeModule, cols: Vec<ModuleVector>, fallback: i64) -> Result<Self, PolyError> {
        let mut degs = Vec::with_capacity(cols.len());
        for (i, c) in cols.iter().enumerate() {
            if c.is_zero() {
                degs.push(fallback);
            } else {
                degs.push(
                    c.degree(&target.degrees)
                        .ok_or_else(|| PolyError::Inhomogeneous(format!("column {i}")))?,
                );
            }
        }
        Self::new(GradedFreeModule::new(degs), target, cols, 0)
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, row: usize, col: usize) -> Polynomial {
        self.cols[col].entry(row)
    }

    /// `A · u` for `u` in the source.
    pub fn apply(&self, u: &ModuleVector) -> ModuleVector {
        let mut acc = ModuleVector::zero();
        for t in u.terms() {
            acc = acc.combine(&self.cols[t.pos as usize], &t.coef, &t.mon);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMatrix) -> HomMatrix {
        HomMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::GradedRing;

    #[test]
    fn combine_cancels_and_orders() {
        let r = GradedRing::with_prefix("X", 2);
        let a = ModuleVector::from_entries(&[r.parse("X1").unwrap(), r.parse("X2^2").unwrap()]);
        let b = ModuleVector::from_entries(&[r.parse("X1").unwrap(), r.parse("X1^2").unwrap()]);
        let d = a.sub(&b);
        assert_eq!(d.lead().unwrap().pos, 1);
        assert_eq!(d.entry(1), r.parse("X2^2 - X1^2").unwrap());
        assert_eq!(d.degree(&[0, 0]), Some(4));
        assert_eq!(a.degree(&[0, 0]), None);
        assert_eq!(a.degree(&[2, 0]), Some(4));
    }

    #[test]
    fn hom_matrix_validates_homogeneity() {
        let r = GradedRing::with_prefix("X", 2);
        let col = ModuleVector::from_entries(&[r.parse("X1").unwrap(), r.parse("X1*X2").unwrap()]);
        let tgt = GradedFreeModule::new(vec![0, -2]);
        assert!(HomMatrix::new(GradedFreeModule::new(vec![2]), tgt.clone(), vec![col.clone()], 0).is_ok());
        assert!(HomMatrix::new(GradedFreeModule::new(vec![0]), tgt, vec![col], 0).is_err());
    }
}
