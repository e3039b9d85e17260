use std::sync::Arc;

use super::{Monomial, PolyError, Polynomial, MAX_VARS};
use crate::exactalg::{LaurentPoly, Rational};

/// A polynomial ring over ℚ with named variables, each of degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedRing {
    names: Vec<String>,
}

pub type Ring = Arc<GradedRing>;

impl GradedRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring, PolyError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(GradedRing { names }))
    }

    /// `X1, …, Xn` style names.
    pub fn with_prefix(prefix: &str, n: usize) -> Ring {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::var(i), Rational::one())
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial, PolyError> {
        self.index_of(name)
            .map(|i| self.var(i))
            .ok_or_else(|| PolyError::UnknownVariable(name.into()))
    }

    /// Parses a polynomial with the Laurent text grammar; negative exponents
    /// are rejected.
    pub fn parse(&self, text: &str) -> Result<Polynomial, PolyError> {
        let vars: Arc<[String]> = self.names.iter().cloned().collect();
        let l = LaurentPoly::parse_in(text, vars).map_err(|e| PolyError::Parse(e.to_string()))?;
        let mut terms = Vec::new();
        for (k, c) in l.terms() {
            if k.iter().any(|&e| e < 0) {
                return Err(PolyError::Parse(format!("negative exponent in `{text}`")));
            }
            let exps: Vec<u32> = k.iter().map(|&e| e as u32).collect();
            terms.push((Monomial::from_exps(&exps), c.clone()));
        }
        Ok(Polynomial::from_terms(terms))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.to_laurent(p).to_string()
    }

    pub fn to_laurent(&self, p: &Polynomial) -> LaurentPoly {
        let vars: Arc<[String]> = self.names.iter().cloned().collect();
        let mut l = LaurentPoly::zero_in(vars);
        for (m, c) in p.terms() {
            l.add_term(m.exps(self.nvars()).into_iter().map(|e| e as i32).collect(), c);
        }
        l
    }
}
