//! Multivariate Laurent polynomials over the rationals in named variables.
//!
//! Text grammar (whitespace allowed between tokens):
//!
//! ```text
//! poly   := "0" | sign? term (sign term)*
//! sign   := "+" | "-"
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! coeff  := digits ("/" digits)?
//! factor := name ("^" "-"? digits)? | "(" poly ")" ("^" digits)?
//! name   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Printing lists terms in decreasing lexicographic order of exponent tuples,
//! omits unit coefficients and unit exponents, and uses ` + ` / ` - ` between
//! terms, so `-1/2*a^3*b^-1 + 2` prints back as itself.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substituting 0 for `{0}`, which occurs with a negative exponent")]
    Singular(String),
    #[error("cannot invert non-monomial image for `{0}`")]
    NotInvertible(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A Laurent polynomial with rational coefficients in an ordered list of
/// named variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_in(vars: Arc<[String]>) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: Arc<[String]>, c: Rational) -> Self {
        let n = vars.len();
        Self::monomial_in(vars, vec![0; n], c)
    }

    pub fn one_in(vars: Arc<[String]>) -> Self {
        Self::constant_in(vars, Rational::one())
    }

    pub fn monomial_in(vars: Arc<[String]>, exps: Vec<i32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent tuple length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { vars, terms }
    }

    /// The variable `name` raised to `e`.
    pub fn var_in(vars: Arc<[String]>, name: &str, e: i32) -> Result<Self, LaurentError> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        Ok(Self::monomial_in(vars, exps, Rational::one()))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_list(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c * monomial(exps)` in place.
    pub fn add_term(&mut self, exps: Vec<i32>, c: &Rational) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch(self.vars.to_vec(), other.vars.to_vec()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), &-v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = Self::zero_in(self.vars.clone());
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let k: Vec<i32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(k, &(va * vb));
            }
        }
        Ok(out)
    }

    /// Panicking shorthands for operands known to share a variable list.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("laurent add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("laurent sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("laurent mul")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.vars.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_in(self.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by the monomial with exponent tuple `exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(exps).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Replaces the listed variables by rational values; the variables are
    /// removed from the result's variable list.
    pub fn substitute(&self, assignments: &[(&str, Rational)]) -> Result<Self, LaurentError> {
        let mut idx = Vec::new();
        for (name, val) in assignments {
            let i = self
                .vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
            idx.push((i, val));
        }
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|i| !idx.iter().any(|(j, _)| j == i)).collect();
        let vars: Arc<[String]> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero_in(vars);
        for (k, v) in &self.terms {
            let mut c = v.clone();
            for &(i, val) in &idx {
                if val.is_zero() {
                    if k[i] < 0 {
                        return Err(LaurentError::Singular(self.vars[i].clone()));
                    }
                    if k[i] > 0 {
                        c = Rational::zero();
                    }
                } else {
                    c = &c * &val.pow(k[i]);
                }
            }
            out.add_term(keep.iter().map(|&i| k[i]).collect(), &c);
        }
        Ok(out)
    }

    /// Replaces variable `name` by `image` (over the same variable list).
    /// Negative powers of `name` require `image` to be a single monomial.
    pub fn compose(&self, name: &str, image: &Self) -> Result<Self, LaurentError> {
        self.check(image)?;
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
        let inverse = if self.terms.keys().any(|k| k[i] < 0) {
            if image.terms.len() != 1 {
                return Err(LaurentError::NotInvertible(name.to_string()));
            }
            let (k, v) = image.terms.iter().next().unwrap();
            Some(Self::monomial_in(
                self.vars.clone(),
                k.iter().map(|e| -e).collect(),
                v.recip(),
            ))
        } else {
            None
        };
        let mut out = Self::zero_in(self.vars.clone());
        let mut cache: BTreeMap<i32, Self> = BTreeMap::new();
        for (k, v) in &self.terms {
            let e = k[i];
            let p = cache
                .entry(e)
                .or_insert_with(|| match e {
                    e if e >= 0 => image.pow(e as u32),
                    e => inverse.as_ref().unwrap().pow((-e) as u32),
                })
                .clone();
            let mut rest = k.clone();
            rest[i] = 0;
            out = out.add(&p.shift(&rest).scale(v));
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a superset variable list.
    pub fn embed(&self, vars: Arc<[String]>) -> Result<Self, LaurentError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| LaurentError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero_in(vars.clone());
        for (k, v) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (j, &t) in map.iter().enumerate() {
                e[t] = k[j];
            }
            out.add_term(e, v);
        }
        Ok(out)
    }

    /// Minimum and maximum exponent of variable `i` over the support.
    pub fn exponent_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|k| k[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, LaurentError> {
        Self::parse_in(text, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn parse_in(text: &str, vars: Arc<[String]>) -> Result<Self, LaurentError> {
        Parser { s: text.as_bytes(), pos: 0, vars }.all()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: Arc<[String]>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn all(&mut self) -> Result<LaurentPoly, LaurentError> {
        let p = self.poly()?;
        match self.peek() {
            None => Ok(p),
            Some(_) => self.err("unexpected input"),
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero_in(self.vars.clone());
        let mut first = true;
        loop {
            let negate = match self.peek() {
                None | Some(b')') if !first => break,
                None | Some(b')') => return self.err("empty polynomial"),
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return self.err("expected `+` or `-`"),
            };
            first = false;
            let t = self.term()?;
            out = if negate { out.sub(&t) } else { out.add(&t) };
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::one_in(self.vars.clone());
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n = self.digits().unwrap().to_string();
                let mut lit = n;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    match self.digits() {
                        Some(d) => lit = format!("{lit}/{d}"),
                        None => return self.err("expected denominator"),
                    }
                }
                let c: Rational = lit.parse().or_else(|_| self.err("bad coefficient"))?;
                out = out.scale(&c);
                if self.peek() != Some(b'*') {
                    return Ok(out);
                }
                self.pos += 1;
            }
            Some(_) => {}
            None => return self.err("expected term"),
        }
        loop {
            out = out.mul(&self.factor()?);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, LaurentError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        match self.digits().and_then(|d| d.parse::<i32>().ok()) {
            Some(v) if neg => Ok(-v),
            Some(v) => Ok(v),
            None => self.err("expected exponent"),
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.poly()?;
            if self.peek() != Some(b')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            let e = self.exponent()?;
            if e < 0 {
                return self.err("negative power of a parenthesized polynomial");
            }
            return Ok(inner.pow(e as u32));
        }
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            && (self.pos > start || !self.s[self.pos].is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected variable name");
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; self.vars.len()];
        exps[i] = self.exponent()?;
        Ok(LaurentPoly::monomial_in(self.vars.clone(), exps, Rational::one()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().rev().enumerate() {
            let neg = v.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = v.abs();
            let mut parts: Vec<String> = Vec::new();
            let constant = k.iter().all(|&e| e == 0);
            if !a.is_one() || constant {
                parts.push(a.to_string());
            }
            for (name, &e) in self.vars.iter().zip(k) {
                match e {
                    0 => {}
                    1 => parts.push(name.clone()),
                    e => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, vars: &[&str]) -> LaurentPoly {
        LaurentPoly::parse(s, vars).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = ["y"];
        assert_eq!(p("y + y^-1", &v).mul(&p("y - y^-1", &v)), p("y^2 - y^-2", &v));
    }

    #[test]
    fn additive_identity() {
        let v = ["a", "b"];
        let f = p("3*a*b^-2 - 1/7", &v);
        assert_eq!(f.add(&LaurentPoly::zero(&v)), f);
    }

    #[test]
    fn binomial_square_matches_termwise_expansion() {
        let v = ["a", "b"];
        let f = p("1 + a*b^-1", &v);
        // oracle: sum over pairs of terms
        let mut expect = LaurentPoly::zero(&v);
        for (k1, c1) in f.terms() {
            for (k2, c2) in f.terms() {
                expect.add_term(vec![k1[0] + k2[0], k1[1] + k2[1]], &(c1 * c2));
            }
        }
        assert_eq!(f.pow(2), expect);
        assert_eq!(expect, p("1 + 2*a*b^-1 + a^2*b^-2", &v));
    }

    #[test]
    fn parenthesized_factors() {
        let v = ["a", "b"];
        assert_eq!(p("(a - b)*(a + b)", &v), p("a^2 - b^2", &v));
        assert_eq!(p("-2*(a + b^-1)^2", &v), p("-2*a^2 - 4*a*b^-1 - 2*b^-2", &v));
        assert_eq!(p("((a))", &v), p("a", &v));
        assert!(LaurentPoly::parse("(a + b", &v).is_err());
        assert!(LaurentPoly::parse("(a + b)^-1", &v).is_err());
        assert!(LaurentPoly::parse("a)", &v).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = p("x^2*y + x*y", &["x", "y"]);
        assert!(f.substitute(&[("x", Rational::from_int(-1))]).unwrap().is_zero());
        let g = p("a*b^-1", &["a", "b"]);
        assert_eq!(g.substitute(&[("b", Rational::from_int(-1))]).unwrap(), p("-a", &["a"]));
        let h = p("x*a^3*b^-3", &["x", "a", "b"]);
        let m1 = Rational::from_int(-1);
        assert_eq!(h.substitute(&[("x", m1.clone()), ("b", m1)]).unwrap(), p("a^3", &["a"]));
    }

    #[test]
    fn zero_into_negative_power_is_singular() {
        let g = p("a*b^-1", &["a", "b"]);
        assert_eq!(
            g.substitute(&[("b", Rational::zero())]),
            Err(LaurentError::Singular("b".into()))
        );
        assert!(g.substitute(&[("a", Rational::zero())]).unwrap().is_zero());
    }

    #[test]
    fn mismatch_rejected() {
        let f = p("a", &["a"]);
        let g = p("b", &["b"]);
        assert!(matches!(f.try_add(&g), Err(LaurentError::VariableMismatch(..))));
    }

    #[test]
    fn printing_is_canonical() {
        let v = ["a", "b"];
        assert_eq!(p("-1/2*a^3*b^-1", &v).to_string(), "-1/2*a^3*b^-1");
        assert_eq!(p("2 + b - a + a", &v).to_string(), "b + 2");
        assert_eq!(p("a*a*b^0", &v).to_string(), "a^2");
        assert_eq!(LaurentPoly::zero(&v).to_string(), "0");
        assert!(LaurentPoly::parse("a +", &v).is_err());
        assert!(LaurentPoly::parse("c", &v).is_err());
    }

    #[test]
    fn compose_with_monomial_inverse() {
        let v = ["a", "y"];
        let f = p("a^-1 + a^2", &v);
        let g = f.compose("a", &p("-a*y", &v)).unwrap();
        assert_eq!(g, p("-a^-1*y^-1 + a^2*y^2", &v));
        assert!(f.compose("a", &p("a + y", &v)).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-3i32..4, -3i32..4), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            let mut f = LaurentPoly::zero(&["a", "b"]);
            for ((e1, e2), n, d) in ts {
                f.add_term(vec![e1, e2], &Rational::new(n, d));
            }
            f
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn text_round_trip(f in arb_poly()) {
            let back = LaurentPoly::parse(&f.to_string(), &["a", "b"]).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
