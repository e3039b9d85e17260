//! Four-index Betti tables of `H(B)` and `H_r(B)`, their Poincaré
//! polynomials, the Hilbert-function identity, projective dimension and the
//! split obstruction.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::braid::ClosedBraidDiagram;
use crate::exactalg::{binomial, LaurentPoly, Rational};
use crate::grmodule::hilbert_series;
use crate::krcomplex::{middle_homology, reduced_middle_homology, KrError, TriGradedHomology};
use crate::par;
use crate::resolve::{betti_table, series_coeff, BettiTablePQ, ProjDim};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error(transparent)]
    Complex(#[from] KrError),
    #[error("Betti table invariant violated: {0}")]
    Invariant(String),
    #[error("split index n = {n} outside 1..={m}")]
    SplitRange { n: usize, m: usize },
}

/// Binomial numbers with `C(−1, 0) = 1` and zero outside `0 ≤ k ≤ n`.
pub fn binom_norm(n: i64, k: i64) -> i64 {
    if n == -1 && k == 0 {
        return 1;
    }
    i64::try_from(binomial(n, k)).expect("binomial fits in i64")
}

/// `β(p, q, j, k)`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64, i64, i64), u64>,
    /// Number of link components `m`.
    pub components: usize,
    pub reduced: bool,
}

impl BettiTable {
    pub fn empty(components: usize, reduced: bool) -> Self {
        Self { entries: BTreeMap::new(), components, reduced }
    }

    pub fn from_entries(
        components: usize,
        reduced: bool,
        it: impl IntoIterator<Item = ((usize, i64, i64, i64), u64)>,
    ) -> Self {
        let mut t = Self::empty(components, reduced);
        for (key, v) in it {
            if v > 0 {
                *t.entries.entry(key).or_default() += v;
            }
        }
        t
    }

    pub fn get(&self, p: usize, q: i64, j: i64, k: i64) -> u64 {
        self.entries.get(&(p, q, j, k)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i64, i64, i64), u64)> + '_ {
        self.entries.iter().map(|(&key, &v)| (key, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Variables of the base ring: `m`, or `m − 1` when reduced.
    pub fn nvars(&self) -> usize {
        if self.reduced {
            self.components.saturating_sub(1)
        } else {
            self.components
        }
    }

    /// Strata `(j, k)` carrying a nonzero entry.
    pub fn strata(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self.entries.keys().map(|&(_, _, j, k)| (j, k)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The `(p, q)` table of one stratum.
    pub fn stratum(&self, j: i64, k: i64) -> BettiTablePQ {
        BettiTablePQ::from_entries(
            self.iter().filter(|((_, _, a, b), _)| (*a, *b) == (j, k)).map(|((p, q, _, _), v)| (p, q, v)),
        )
    }

    pub fn pd(&self) -> ProjDim {
        self.entries.keys().map(|k| k.0).max().map_or(ProjDim::ZeroModule, ProjDim::Finite)
    }

    /// Rows `p,q,j,k,value` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,j,k,value\n");
        for ((p, q, j, k), v) in self.iter() {
            s += &format!("{p},{q},{j},{k},{v}\n");
        }
        s
    }

    fn check(&self) -> Result<(), LinkError> {
        let parity = if self.reduced { 0 } else { 1 };
        for ((p, q, j, k), _) in self.iter() {
            if (k - j).rem_euclid(2) != 0 {
                return Err(LinkError::Invariant(format!("k − j odd at (p,q,j,k)=({p},{q},{j},{k})")));
            }
            if (q + j).rem_euclid(2) != parity {
                return Err(LinkError::Invariant(format!("q + j has the wrong parity at ({p},{q},{j},{k})")));
            }
            if p > self.nvars() {
                return Err(LinkError::Invariant(format!("p = {p} exceeds the number of variables")));
            }
        }
        Ok(())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            p: usize,
            q: i64,
            j: i64,
            k: i64,
            value: u64,
        }
        s.collect_seq(self.iter().map(|((p, q, j, k), value)| Row { p, q, j, k, value }))
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4} {:>5} {:>5} {:>5} {:>6}", "p", "q", "j", "k", "value")?;
        for ((p, q, j, k), v) in self.iter() {
            writeln!(f, "{p:>4} {q:>5} {j:>5} {k:>5} {v:>6}")?;
        }
        Ok(())
    }
}

/// Betti table of a trigraded homology: each stratum is resolved over its
/// own ring.
pub fn betti_of(h: &TriGradedHomology) -> Result<BettiTable, LinkError> {
    let strata: Vec<_> = h.strata.iter().collect();
    let tables = par::map(strata, |(&(j, k), m)| ((j, k), betti_table(m)));
    let entries = tables
        .into_iter()
        .flat_map(|((j, k), t)| t.iter().map(move |(p, q, v)| ((p, q, j, k), v)).collect::<Vec<_>>());
    let t = BettiTable::from_entries(h.components, h.reduced, entries);
    t.check()?;
    Ok(t)
}

/// `β_B` of `H(B)`, or of `H_r(B)` computed from the reduced complex.
pub fn betti_numbers(d: &ClosedBraidDiagram, reduced: bool) -> Result<BettiTable, LinkError> {
    let h = if reduced { reduced_middle_homology(d)? } else { middle_homology(d)? };
    betti_of(&h)
}

/// `numerator / (1 − y²)^denominator_power` with the numerator in `x, y, a, b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub numerator: LaurentPoly,
    pub denominator_power: usize,
}

pub fn poincare_vars() -> Arc<[String]> {
    ["x", "y", "a", "b"].iter().map(|s| s.to_string()).collect()
}

impl PoincarePolynomial {
    pub fn zero() -> Self {
        Self { numerator: LaurentPoly::zero_in(poincare_vars()), denominator_power: 0 }
    }

    /// `x`-degree of the numerator, i.e. the projective dimension.
    pub fn x_degree(&self) -> Option<i32> {
        self.numerator.exponent_range(0).map(|r| r.1)
    }

    /// `a b⁻¹ P₁ P₂`, the Poincaré polynomial of a split union.
    pub fn split_product(&self, other: &Self) -> Self {
        let ab = LaurentPoly::monomial_in(poincare_vars(), vec![0, 0, 1, -1], Rational::one());
        Self {
            numerator: ab.mul(&self.numerator).mul(&other.numerator),
            denominator_power: self.denominator_power + other.denominator_power,
        }
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denominator_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (1 - y^2)", self.numerator),
            e => write!(f, "({}) / (1 - y^2)^{e}", self.numerator),
        }
    }
}

impl Serialize for PoincarePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PoincarePolynomial", 2)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("denominator_power", &self.denominator_power)?;
        st.end()
    }
}

/// `Σ β(p,q,j,k) x^p y^q a^j b^{(k−j)/2} / (1 − y²)^n`, `n` the number of
/// variables of the base ring.
pub fn poincare(t: &BettiTable) -> Result<PoincarePolynomial, LinkError> {
    let mut num = LaurentPoly::zero_in(poincare_vars());
    for ((p, q, j, k), v) in t.iter() {
        if (k - j) % 2 != 0 {
            return Err(LinkError::Invariant(format!("k − j odd at (p,q,j,k)=({p},{q},{j},{k})")));
        }
        let e = |x: i64| i32::try_from(x).expect("exponent fits in i32");
        num.add_term(vec![e(p as i64), e(q), e(j), e((k - j) / 2)], &Rational::from_int(v as i64));
    }
    Ok(PoincarePolynomial { numerator: num, denominator_power: t.nvars() })
}

/// Outcome of a coefficientwise identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    /// Number of coefficients compared.
    pub compared: usize,
    pub first_mismatch: Option<String>,
}

impl CheckReport {
    fn new() -> Self {
        Self { passed: true, compared: 0, first_mismatch: None }
    }

    fn compare(&mut self, expected: i64, found: i64, at: impl FnOnce() -> String) {
        self.compared += 1;
        if expected != found && self.passed {
            self.passed = false;
            self.first_mismatch = Some(format!("{}: expected {expected}, found {found}", at()));
        }
    }

    fn merge(&mut self, other: CheckReport) {
        self.compared += other.compared;
        if self.passed && !other.passed {
            self.passed = false;
            self.first_mismatch = other.first_mismatch;
        }
    }
}

/// Coefficient of `y^i` in the `(j, k)` part of `P(−1, y, a, b)`.
fn euler_coeff(t: &BettiTable, j: i64, k: i64, i: i64) -> i64 {
    t.iter()
        .filter(|((_, _, a, b), _)| (*a, *b) == (j, k))
        .map(|((p, q, _, _), v)| {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            sign * v as i64 * series_coeff(t.nvars(), i - q)
        })
        .sum()
}

/// Compares `P(−1, y, a, b)` expanded up to `y^cutoff` with the graded
/// dimensions of every stratum of `h`.
pub fn stratum_euler_check(t: &BettiTable, h: &TriGradedHomology, cutoff: i64) -> CheckReport {
    let mut keys: Vec<(i64, i64)> = h.strata.keys().copied().collect();
    keys.extend(t.strata());
    keys.sort_unstable();
    keys.dedup();
    let reports = par::map(keys, |(j, k)| {
        let mut r = CheckReport::new();
        let hs = h.strata.get(&(j, k)).map(|m| hilbert_series(m, cutoff));
        let min_q = t.iter().filter(|(key, _)| (key.2, key.3) == (j, k)).map(|(key, _)| key.1).min();
        let lo = hs.as_ref().map_or(0, |s| s.start).min(min_q.unwrap_or(0));
        for i in lo..=cutoff {
            let dim = hs.as_ref().map_or(0, |s| s.dim(i)) as i64;
            r.compare(dim, euler_coeff(t, j, k, i), || format!("y^{i} at (j,k)=({j},{k})"));
        }
        r
    });
    let mut out = CheckReport::new();
    for r in reports {
        out.merge(r);
    }
    out
}

/// `P(−1, y, a, −1)` as `(i, j) ↦` coefficient of `y^i a^j`.
fn specialized(t: &BettiTable, lo: i64, hi: i64) -> BTreeMap<(i64, i64), i64> {
    let mut out = BTreeMap::new();
    for ((p, q, j, k), v) in t.iter() {
        let sign = if (p as i64 + (k - j) / 2) % 2 == 0 { 1 } else { -1 };
        for i in lo..=hi {
            let c = series_coeff(t.nvars(), i - q);
            if c != 0 {
                *out.entry((i, j)).or_default() += sign * v as i64 * c;
            }
        }
    }
    out
}

/// `(y − y⁻¹) P_B(−1, y, a, −1) = −P_{B,r}(−1, y, a, −1)` through `y^{cutoff−1}`.
pub fn bridge_check(unreduced: &BettiTable, reduced: &BettiTable, cutoff: i64) -> CheckReport {
    let qs = unreduced.iter().chain(reduced.iter()).map(|(key, _)| key.1);
    let lo = qs.min().unwrap_or(0) - 1;
    let u = specialized(unreduced, lo - 1, cutoff);
    let r = specialized(reduced, lo, cutoff);
    let mut js: Vec<i64> = u.keys().chain(r.keys()).map(|k| k.1).collect();
    js.sort_unstable();
    js.dedup();
    let get = |m: &BTreeMap<(i64, i64), i64>, i, j| m.get(&(i, j)).copied().unwrap_or(0);
    let mut report = CheckReport::new();
    for &j in &js {
        for i in lo..cutoff {
            let left = get(&u, i - 1, j) - get(&u, i + 1, j);
            report.compare(-get(&r, i, j), left, || format!("y^{i} a^{j}"));
        }
    }
    report
}

/// `dim H^{2T+1−j, j, k}` against `Σ (−1)^p β(p,q,j,k) C(T+m−(j+q+1)/2, T−(j+q−1)/2)`
/// for `T = 0..=t_max`. For a reduced table the first grading is `2T − j`
/// and the base ring has `m − 1` variables.
pub fn hilbert_identity_check(t: &BettiTable, h: &TriGradedHomology, j: i64, k: i64, t_max: i64) -> CheckReport {
    let stratum = t.stratum(j, k);
    let n = t.nvars() as i64;
    let first = |tt: i64| if t.reduced { 2 * tt - j } else { 2 * tt + 1 - j };
    let hs = h.strata.get(&(j, k)).map(|m| hilbert_series(m, first(t_max)));
    let mut report = CheckReport::new();
    for tt in 0..=t_max {
        let i = first(tt);
        let lhs = hs.as_ref().map_or(0, |s| s.dim(i)) as i64;
        let rhs: i64 = stratum
            .iter()
            .map(|(p, q, v)| {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                let c = if (i - q) % 2 != 0 {
                    0
                } else {
                    let e = (i - q) / 2;
                    binom_norm(e + n - 1, e)
                };
                sign * v as i64 * c
            })
            .sum();
        report.compare(lhs, rhs, || format!("T = {tt} at (j,k)=({j},{k})"));
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVerdict {
    Consistent,
    Obstructed,
}

impl fmt::Display for SplitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitVerdict::Consistent => "consistent",
            SplitVerdict::Obstructed => "obstructed",
        })
    }
}

/// Obstructed iff `pd > m − n`. A zero module never obstructs.
pub fn split_verdict(pd: ProjDim, m: usize, n: usize) -> Result<SplitVerdict, LinkError> {
    if n == 0 || n > m {
        return Err(LinkError::SplitRange { n, m });
    }
    Ok(match pd {
        ProjDim::Finite(p) if p > m - n => SplitVerdict::Obstructed,
        _ => SplitVerdict::Consistent,
    })
}

pub fn split_obstruction(d: &ClosedBraidDiagram, n: usize) -> Result<SplitVerdict, LinkError> {
    if n == 0 || n > d.components {
        return Err(LinkError::SplitRange { n, m: d.components });
    }
    split_verdict(betti_numbers(d, false)?.pd(), d.components, n)
}

/// Everything computed for one diagram.
#[derive(Debug, Clone)]
pub struct LinkAnalysis {
    pub diagram: ClosedBraidDiagram,
    pub homology: TriGradedHomology,
    pub reduced_homology: TriGradedHomology,
    pub betti: BettiTable,
    pub betti_reduced: BettiTable,
}

pub fn analyze(d: &ClosedBraidDiagram) -> Result<LinkAnalysis, LinkError> {
    let homology = middle_homology(d)?;
    let reduced_homology = reduced_middle_homology(d)?;
    let betti = betti_of(&homology)?;
    let betti_reduced = betti_of(&reduced_homology)?;
    Ok(LinkAnalysis { diagram: d.clone(), homology, reduced_homology, betti, betti_reduced })
}

/// Both stratum checks (unreduced and reduced) and the bridge identity.
pub fn euler_check(d: &ClosedBraidDiagram, cutoff: i64) -> Result<CheckReport, LinkError> {
    Ok(analyze(d)?.euler_check(cutoff))
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidInfo {
    pub word: String,
    pub strands: usize,
    pub components: usize,
    pub writhe: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitEntry {
    pub n: usize,
    pub verdict: SplitVerdict,
}

/// The JSON report; field order is part of the output format.
#[derive(Debug, Clone, Serialize)]
pub struct LinkReport {
    pub braid: BraidInfo,
    pub betti: BettiTable,
    pub betti_reduced: BettiTable,
    pub pd: ProjDim,
    pub poincare: PoincarePolynomial,
    pub split_obstruction: Vec<SplitEntry>,
}

impl LinkAnalysis {
    pub fn pd(&self) -> ProjDim {
        self.betti.pd()
    }

    pub fn euler_check(&self, cutoff: i64) -> CheckReport {
        let mut r = stratum_euler_check(&self.betti, &self.homology, cutoff);
        r.merge(stratum_euler_check(&self.betti_reduced, &self.reduced_homology, cutoff));
        r.merge(bridge_check(&self.betti, &self.betti_reduced, cutoff));
        r
    }

    pub fn split_obstruction(&self, n: usize) -> Result<SplitVerdict, LinkError> {
        split_verdict(self.pd(), self.diagram.components, n)
    }

    pub fn report(&self) -> Result<LinkReport, LinkError> {
        let d = &self.diagram;
        Ok(LinkReport {
            braid: BraidInfo {
                word: d.word.word_text(),
                strands: d.strands,
                components: d.components,
                writhe: d.writhe,
            },
            betti: self.betti.clone(),
            betti_reduced: self.betti_reduced.clone(),
            pd: self.pd(),
            poincare: poincare(&self.betti)?,
            split_obstruction: (1..=d.components)
                .map(|n| Ok(SplitEntry { n, verdict: self.split_obstruction(n)? }))
                .collect::<Result<_, LinkError>>()?,
        })
    }
}
