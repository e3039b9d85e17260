//! HOMFLYPT polynomials of arbitrary braid closures through the Hecke
//! algebra and its Markov trace. Independent of the homology pipeline.
//!
//! The algebra is generic in its quadratic relation `T² = αT + β`. Two
//! instances are provided: [`HeckeAlgebra::standard`] with `α = q − 1`,
//! `β = q` and trace parameter `z`, and [`HeckeAlgebra::normalized`] with
//! `α = z`, `β = 1` and trace parameter `t`, from which [`homfly`] is read
//! off in the variables `(a, z)`.

mod fit;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::braid::BraidWord;
use crate::exactalg::{LaurentPoly, Rational};

pub use fit::{fit_normalization, reduced_euler_target, EulerTarget, Normalization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("β = {0} must be a single monomial to invert T_i")]
    NotInvertible(String),
    #[error("bad algebra parameter: {0}")]
    Parameter(String),
}

/// `Σ c_w T_w` over permutations `w ∈ S_n` in one-line notation.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    pub n: usize,
    pub terms: BTreeMap<Vec<u8>, LaurentPoly>,
}

impl HeckeElement {
    pub fn coeff(&self, perm: &[u8]) -> Option<&LaurentPoly> {
        self.terms.get(perm)
    }

    fn add_term(&mut self, perm: Vec<u8>, c: LaurentPoly) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(perm) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

/// Canonical reduced word of a permutation: repeatedly swap the leftmost
/// descent. Generators are 1-based.
pub fn reduced_word(perm: &[u8]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (1..p.len()).find(|&i| p[i - 1] > p[i]) {
        p.swap(i - 1, i);
        word.push(i);
    }
    word.reverse();
    word
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let w: Vec<String> = reduced_word(p).iter().map(|i| format!("s{i}")).collect();
                let w = if w.is_empty() { "e".to_string() } else { w.join(" ") };
                format!("({c})*T[{w}]")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}: {self}", self.n)
    }
}

/// Hecke algebra with `T_i² = α T_i + β` and a Markov trace
/// `tr(x T_{n−1} y) = t · tr(x y)` for `x, y ∈ H_{n−1}`, `tr(T_e) = 1`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    vars: Arc<[String]>,
    alpha: LaurentPoly,
    beta: LaurentPoly,
    beta_inv: LaurentPoly,
    trace_var: usize,
}

impl HeckeAlgebra {
    pub fn new(vars: &[&str], alpha: &str, beta: &str, trace_var: &str) -> Result<Self, HeckeError> {
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        let parse = |s: &str| LaurentPoly::parse_in(s, vars.clone()).map_err(|e| HeckeError::Parameter(e.to_string()));
        let alpha = parse(alpha)?;
        let beta = parse(beta)?;
        let beta_inv = match beta.terms().collect::<Vec<_>>()[..] {
            [(e, c)] => {
                let e: Vec<i32> = e.iter().map(|x| -x).collect();
                LaurentPoly::monomial_in(vars.clone(), e, c.recip())
            }
            _ => return Err(HeckeError::NotInvertible(beta.to_string())),
        };
        let trace_var = vars
            .iter()
            .position(|v| v == trace_var)
            .ok_or_else(|| HeckeError::Parameter(format!("unknown trace variable `{trace_var}`")))?;
        Ok(Self { vars, alpha, beta, beta_inv, trace_var })
    }

    /// `T² = (q − 1)T + q`, trace parameter `z`.
    pub fn standard() -> Self {
        Self::new(&["q", "z"], "q - 1", "q", "z").expect("standard parameters")
    }

    /// `g² = z g + 1`, trace parameter `t`.
    pub fn normalized() -> Self {
        Self::new(&["z", "t"], "z", "1", "t").expect("normalized parameters")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn one(&self) -> LaurentPoly {
        LaurentPoly::one_in(self.vars.clone())
    }

    pub fn identity(&self, n: usize) -> HeckeElement {
        let mut h = HeckeElement { n, terms: BTreeMap::new() };
        h.add_term((0..n as u8).collect(), self.one());
        h
    }

    /// `h · T_i`, or `h · T_i⁻¹ = β⁻¹ (h T_i − α h)` when `inverse`.
    pub fn mul_generator(&self, h: &HeckeElement, i: usize, inverse: bool) -> HeckeElement {
        assert!(i >= 1 && i < h.n, "generator {i} out of range for H_{}", h.n);
        let mut out = HeckeElement { n: h.n, terms: BTreeMap::new() };
        for (w, c) in &h.terms {
            let mut ws = w.clone();
            ws.swap(i - 1, i);
            if w[i - 1] < w[i] {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w.clone(), c.mul(&self.alpha));
                out.add_term(ws, c.mul(&self.beta));
            }
        }
        if !inverse {
            return out;
        }
        for (w, c) in &h.terms {
            out.add_term(w.clone(), c.mul(&self.alpha).neg());
        }
        let terms = out.terms.into_iter().map(|(w, c)| (w, c.mul(&self.beta_inv))).collect();
        HeckeElement { n: h.n, terms }
    }

    /// `σ_i ↦ T_i`, `σ_i⁻¹ ↦ T_i⁻¹`, multiplied left to right.
    pub fn image(&self, w: &BraidWord) -> HeckeElement {
        w.letters().iter().fold(self.identity(w.strands()), |h, &l| {
            self.mul_generator(&h, l.unsigned_abs() as usize, l < 0)
        })
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        assert_eq!(x.n, y.n, "strand counts differ");
        let mut out = HeckeElement { n: x.n, terms: BTreeMap::new() };
        for (w, c) in &y.terms {
            let prod = reduced_word(w).into_iter().fold(x.clone(), |h, i| self.mul_generator(&h, i, false));
            for (v, d) in prod.terms {
                out.add_term(v, d.mul(c));
            }
        }
        out
    }

    /// The Markov trace, by peeling off the largest strand.
    pub fn trace(&self, h: &HeckeElement) -> LaurentPoly {
        let mut memo = HashMap::new();
        let mut out = LaurentPoly::zero_in(self.vars.clone());
        for (w, c) in &h.terms {
            out = out.add(&self.trace_basis(w, &mut memo).mul(c));
        }
        out
    }

    fn trace_basis(&self, w: &[u8], memo: &mut HashMap<Vec<u8>, LaurentPoly>) -> LaurentPoly {
        let n = w.len();
        if n <= 1 {
            return self.one();
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let top = (n - 1) as u8;
        let r = w.iter().position(|&x| x == top).unwrap();
        let value = if r == n - 1 {
            self.trace_basis(&w[..n - 1], memo)
        } else {
            // T_w = T_{w'} T_{n−1} T_{n−2} ⋯ T_{r+1} with w' fixing the top strand
            let prime: Vec<u8> = w.iter().copied().filter(|&x| x != top).collect();
            let mut h = HeckeElement { n: n - 1, terms: BTreeMap::new() };
            h.add_term(prime, self.one());
            for i in (r + 1..n - 1).rev() {
                h = self.mul_generator(&h, i, false);
            }
            let mut e = vec![0; self.vars.len()];
            e[self.trace_var] = 1;
            let mut acc = LaurentPoly::zero_in(self.vars.clone());
            for (v, c) in &h.terms {
                acc = acc.add(&self.trace_basis(v, memo).mul(c));
            }
            acc.shift(&e)
        };
        memo.insert(w.to_vec(), value.clone());
        value
    }
}

/// Image of a braid word in the standard algebra.
pub fn hecke_image(w: &BraidWord) -> HeckeElement {
    HeckeAlgebra::standard().image(w)
}

/// Markov trace in the standard algebra, a Laurent polynomial in `q, z`.
pub fn ocneanu_trace(h: &HeckeElement) -> LaurentPoly {
    HeckeAlgebra::standard().trace(h)
}

pub fn homfly_vars() -> Arc<[String]> {
    ["a", "z"].iter().map(|s| s.to_string()).collect()
}

/// HOMFLYPT polynomial in `(a, z)`, normalized by `P(unknot) = 1` and
/// `a P(L₊) − a⁻¹ P(L₋) = z P(L₀)`.
///
/// With `tr(image) = Σ c_k(z) t^k` in the normalized algebra,
/// `P = a^{−w} Σ_k c_k(z) a^k z^{k−n+1} (a − a⁻¹)^{n−1−k}`.
pub fn homfly(w: &BraidWord) -> LaurentPoly {
    let alg = HeckeAlgebra::normalized();
    let tr = alg.trace(&alg.image(w));
    let vars = homfly_vars();
    let n = w.strands() as i32;
    let writhe = i32::try_from(w.writhe()).expect("writhe fits in i32");
    let loop_factor = LaurentPoly::parse_in("a - a^-1", vars.clone()).unwrap();
    let mut out = LaurentPoly::zero_in(vars.clone());
    for (e, c) in tr.terms() {
        let (ze, k) = (e[0], e[1]);
        assert!(k < n, "trace degree exceeds strand count");
        let mono = LaurentPoly::monomial_in(vars.clone(), vec![k - writhe, ze + k - n + 1], c.clone());
        out = out.add(&mono.mul(&loop_factor.pow((n - 1 - k) as u32)));
    }
    out
}

/// `P(unknot ⊔ ⋯)` loop factor `(a − a⁻¹) / z`.
pub fn loop_factor() -> LaurentPoly {
    LaurentPoly::parse_in("a*z^-1 - a^-1*z^-1", homfly_vars()).unwrap()
}

/// `a P(L₊) − a⁻¹ P(L₋) − z P(L₀)`.
pub fn skein_defect(plus: &LaurentPoly, minus: &LaurentPoly, zero: &LaurentPoly) -> LaurentPoly {
    let v = homfly_vars();
    let a = LaurentPoly::monomial_in(v.clone(), vec![1, 0], Rational::one());
    let ainv = LaurentPoly::monomial_in(v.clone(), vec![-1, 0], Rational::one());
    let z = LaurentPoly::monomial_in(v, vec![0, 1], Rational::one());
    a.mul(plus).sub(&ainv.mul(minus)).sub(&z.mul(zero))
}
