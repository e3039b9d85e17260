use std::cmp::Ordering;

use super::Monomial;
use crate::exactalg::Rational;

/// A polynomial as a list of terms sorted by decreasing monomial (grevlex),
/// without zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub(crate) fn from_sorted(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Exponent sum shared by all terms, if homogeneous and nonzero.
    pub fn homogeneous_total(&self) -> Option<u32> {
        let d = self.terms.first()?.0.total();
        self.terms.iter().all(|(m, _)| m.total() == d).then_some(d)
    }

    /// Degree in the grading where every variable has degree 2.
    pub fn degree(&self) -> Option<i64> {
        self.homogeneous_total().map(|t| 2 * t as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one(), &Monomial::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &-Rational::one(), &Monomial::ONE)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// `self + c * m * other`.
    pub fn combine(&self, other: &Self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&m.mul(&b.0)),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (bm, bc) = &other.terms[j];
                    out.push((m.mul(bm), c * bc));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &(c * &other.terms[j].1);
                    if !s.is_zero() {
                        out.push((self.terms[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect() }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, d)| (m.mul(n), d * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) =
            if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero();
        for (m, c) in &small.terms {
            acc = acc.combine(big, c, m);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(), p.clone()]).collect();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            debug_assert!(m.support_len() <= images.len());
            acc = acc.add(&t);
        }
        acc
    }

    /// Divides all coefficients so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::GradedRing;

    #[test]
    fn arithmetic_and_degree() {
        let r = GradedRing::with_prefix("X", 3);
        let f = r.parse("X1 + X2").unwrap();
        let g = r.parse("X1 - X2").unwrap();
        assert_eq!(f.mul(&g), r.parse("X1^2 - X2^2").unwrap());
        assert_eq!(f.mul(&g).degree(), Some(4));
        assert_eq!(r.parse("X1 + 1").unwrap().degree(), None);
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = GradedRing::with_prefix("X", 3);
        let f = r.parse("X1*X2 - X3^2").unwrap();
        let imgs = [r.parse("X2").unwrap(), r.parse("X1 + X3").unwrap(), Polynomial::zero()];
        assert_eq!(f.substitute(&imgs), r.parse("X1*X2 + X2*X3").unwrap());
    }

    #[test]
    fn printing_round_trips_through_ring() {
        let r = GradedRing::with_prefix("X", 2);
        let f = r.parse("-1/2*X1^2*X2 + 3*X2^3").unwrap();
        assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
        assert!(r.parse("X1^-1").is_err());
    }
}
