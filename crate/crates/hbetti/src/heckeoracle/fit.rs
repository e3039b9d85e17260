//! Matching HOMFLYPT values against `P_{B,r}(−1, y, a, −1)` up to a monomial
//! change of variables `a ↦ ±a^{±1} y^f`, `z ↦ ±(y − y⁻¹)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::exactalg::{LaurentPoly, Rational};
use crate::linkbetti::{poincare, BettiTable, LinkError};

/// `numerator / (1 − y²)^denominator_power` in the variables `y, a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTarget {
    pub numerator: LaurentPoly,
    pub denominator_power: usize,
}

fn ya() -> Arc<[String]> {
    ["y", "a"].iter().map(|s| s.to_string()).collect()
}

/// `P_{B,r}(−1, y, a, −1)` from a reduced Betti table.
pub fn reduced_euler_target(t: &BettiTable) -> Result<EulerTarget, LinkError> {
    assert!(t.reduced, "target needs the reduced table");
    let p = poincare(t)?;
    let m1 = -Rational::one();
    let numerator = p.numerator.substitute(&[("x", m1.clone()), ("b", m1)]).expect("x, b are nonzero");
    Ok(EulerTarget { numerator, denominator_power: p.denominator_power })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Normalization {
    pub a_sign: i8,
    pub a_power: i8,
    pub y_shift: i32,
    pub z_sign: i8,
}

impl Normalization {
    fn candidates() -> impl Iterator<Item = Self> {
        let signs = [1i8, -1];
        signs.into_iter().flat_map(move |a_sign| {
            signs.into_iter().flat_map(move |a_power| {
                (-3..=3).flat_map(move |y_shift| {
                    signs.into_iter().map(move |z_sign| Normalization { a_sign, a_power, y_shift, z_sign })
                })
            })
        })
    }

    /// Whether `homfly` (in `a, z`) maps onto `target` exactly. Both sides
    /// are cleared of denominators before comparing.
    pub fn matches(&self, homfly: &LaurentPoly, target: &EulerTarget) -> bool {
        let v = ya();
        let one = Rational::one();
        let zsub = LaurentPoly::parse_in("y - y^-1", v.clone()).unwrap().scale(&Rational::from_int(self.z_sign.into()));
        let n = homfly.exponent_range(1).map_or(0, |(lo, _)| (-lo).max(0));
        let lhs = target.numerator.mul(&zsub.pow(n as u32));
        let mut rhs = LaurentPoly::zero_in(v.clone());
        for (e, c) in homfly.terms() {
            let (i, ze) = (e[0], e[1]);
            let sign = if self.a_sign < 0 && i % 2 != 0 { -one.clone() } else { one.clone() };
            let mono = LaurentPoly::monomial_in(v.clone(), vec![self.y_shift * i, i32::from(self.a_power) * i], c * &sign);
            rhs = rhs.add(&mono.mul(&zsub.pow((ze + n) as u32)));
        }
        let denom = LaurentPoly::parse_in("1 - y^2", v).unwrap().pow(target.denominator_power as u32);
        lhs == rhs.mul(&denom)
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: i8| if x < 0 { "-" } else { "" };
        let ap = if self.a_power < 0 { "a^-1" } else { "a" };
        let y = match self.y_shift {
            0 => String::new(),
            1 => "*y".to_string(),
            k => format!("*y^{k}"),
        };
        write!(f, "a -> {}{ap}{y}, z -> {}(y - y^-1)", s(self.a_sign), s(self.z_sign))
    }
}

/// Every candidate normalization that maps each sample exactly.
pub fn fit_normalization(samples: &[(LaurentPoly, EulerTarget)]) -> Vec<Normalization> {
    Normalization::candidates().filter(|c| samples.iter().all(|(h, t)| c.matches(h, t))).collect()
}
