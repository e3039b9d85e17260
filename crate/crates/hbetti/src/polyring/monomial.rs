use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial stored as a fixed-width exponent array.
///
/// `Ord` is graded reverse lexicographic: higher total degree is greater; ties
/// are broken by the last variable where the exponents differ, the smaller
/// exponent there being the greater monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    e: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; MAX_VARS], deg: 0 };

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    /// Panics when an exponent exceeds 127 or there are too many variables.
    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        for (i, &x) in exps.iter().enumerate() {
            assert!(x < 128, "exponent overflow");
            m.e[i] = x as u8;
            m.deg += x as u16;
        }
        m
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    /// Total exponent sum; the internal degree is twice this.
    pub fn total(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Index one past the last variable with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.e.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let s = m.e[i] as u16 + other.e[i] as u16;
            assert!(s < 128, "exponent overflow");
            m.e[i] = s as u8;
        }
        m.deg += other.deg;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        let a = u128::from_le_bytes(self.e);
        let b = u128::from_le_bytes(other.e);
        // All bytes are below 128, so borrow-free bytewise subtraction
        // with the high bit preset detects `a_i > b_i`.
        const H: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
        ((b | H) - a) & H == H
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.e[i] -= self.e[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(other.e[i]);
            m.deg += m.e[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || other.e[i] == 0)
    }

    /// All monomials in `nvars` variables with exponent sum `total`, in
    /// decreasing order.
    pub fn all_of_total(nvars: usize, total: u32) -> Vec<Monomial> {
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::from_exps(cur));
                return;
            }
            for x in (0..=left).rev() {
                cur[i] = x;
                rec(i + 1, nvars, left - x, cur, out);
            }
        }
        if nvars == 0 {
            return if total == 0 { vec![Monomial::ONE] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(0, nvars, total, &mut vec![0; nvars], &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.e[i] {
                0 => {}
                1 => parts.push(name.clone()),
                x => parts.push(format!("{name}^{x}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.e[i] != other.e[i] {
                return other.e[i].cmp(&self.e[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.e[..self.support_len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_small_cases() {
        // x1 > x2 > x3 in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x1*x3 < x2^2 in grevlex (differs from lex)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::all_of_total(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_total(0, 0), vec![Monomial::ONE]);
        assert!(Monomial::all_of_total(0, 1).is_empty());
        let ms = Monomial::all_of_total(2, 3);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    fn arb() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 4).prop_map(|v| Monomial::from_exps(&v))
    }

    proptest! {
        #[test]
        fn divides_matches_componentwise(a in arb(), b in arb()) {
            let expect = (0..4).all(|i| a.exp(i) <= b.exp(i));
            prop_assert_eq!(a.divides(&b), expect);
            prop_assert!(a.divides(&a.mul(&b)));
            prop_assert_eq!(a.quotient_of(&a.mul(&b)), b);
            prop_assert!(a.divides(&a.lcm(&b)) && b.divides(&a.lcm(&b)));
        }

        #[test]
        fn order_is_multiplicative(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        }
    }
}
