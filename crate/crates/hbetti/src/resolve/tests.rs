use proptest::prelude::*;

use super::*;
use crate::exactalg::Rational;
use crate::grmodule::{hilbert_series, quotient_by_element, tensor_over_q};
use crate::polyring::{GradedRing, ImageGb, Monomial, Polynomial};

fn ring(n: usize) -> Ring {
    GradedRing::with_prefix("X", n)
}

fn cyclic(r: &Ring, d: i64, rels: &[&str]) -> PresentedGradedModule {
    let rels = rels.iter().map(|s| ModuleVector::from_poly(0, &r.parse(s).unwrap())).collect();
    PresentedGradedModule::new(r.clone(), vec![d], rels).unwrap()
}

fn table(xs: &[(usize, i64, u64)]) -> BettiTablePQ {
    BettiTablePQ::from_entries(xs.iter().copied())
}

#[test]
fn resolution_examples() {
    let r = ring(2);
    let free = PresentedGradedModule::free(r.clone(), vec![0]);
    let res = minimal_free_resolution(&free);
    assert_eq!(res.length(), Some(0));
    assert_eq!(res.betti(), table(&[(0, 0, 1)]));

    let k = cyclic(&r, 0, &["X1", "X2"]);
    assert_eq!(betti_table(&k), table(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]));

    let diag = cyclic(&r, 0, &["X1 - X2"]);
    assert_eq!(betti_table(&diag), table(&[(0, 0, 1), (1, 2, 1)]));
    assert_eq!(projective_dimension(&diag), ProjDim::Finite(1));
}

#[test]
fn betti_examples() {
    let r = ring(2);
    assert_eq!(betti_table(&cyclic(&r, 0, &["X1"])), table(&[(0, 0, 1), (1, 2, 1)]));
    assert_eq!(betti_table(&PresentedGradedModule::free(r.clone(), vec![0])), table(&[(0, 0, 1)]));
    assert_eq!(betti_table(&PresentedGradedModule::free(r.clone(), vec![2])), table(&[(0, 2, 1)]));
}

#[test]
fn koszul_examples() {
    let r = ring(2);
    let k = cyclic(&r, 0, &["X1", "X2"]);
    assert_eq!(koszul_tor(&k, 2, 4), 1);
    let free = PresentedGradedModule::free(r.clone(), vec![0, 2]);
    for p in 1..=2 {
        for q in -2..10 {
            assert_eq!(koszul_tor(&free, p, q), 0);
        }
    }
    let diag = cyclic(&r, 0, &["X1 - X2"]);
    assert_eq!(koszul_tor(&diag, 1, 2), 1);
    assert_eq!(koszul_betti_table(&diag), betti_table(&diag));
}

#[test]
fn pd_and_depth() {
    let r = ring(2);
    let k = cyclic(&r, 0, &["X1", "X2"]);
    assert_eq!((projective_dimension(&k), depth(&k)), (ProjDim::Finite(2), Some(0)));
    let c = cyclic(&r, 0, &["X1"]);
    assert_eq!((projective_dimension(&c), depth(&c)), (ProjDim::Finite(1), Some(1)));
    let z = PresentedGradedModule::zero(r.clone());
    assert_eq!(projective_dimension(&z), ProjDim::ZeroModule);
    assert_eq!(depth(&z), None);
    let killed = cyclic(&r, 0, &["1"]);
    assert_eq!(projective_dimension(&killed), ProjDim::ZeroModule);
    assert_eq!(ProjDim::ZeroModule.to_string(), "zero-module");
}

/// `R / m^d` over `n` variables.
fn power_of_max_ideal(n: usize, d: u32) -> PresentedGradedModule {
    let r = ring(n);
    let rels = Monomial::all_of_total(n, d)
        .into_iter()
        .map(|m| ModuleVector::from_poly(0, &Polynomial::monomial(m, Rational::one())))
        .collect();
    PresentedGradedModule::new(r, vec![0], rels).unwrap()
}

#[test]
fn artinian_quotients_have_full_pd() {
    for n in 2..=3 {
        for d in 2..=3 {
            let m = power_of_max_ideal(n, d);
            assert_eq!(projective_dimension(&m), ProjDim::Finite(n), "n={n} d={d}");
            assert_eq!(depth(&m), Some(0));
        }
    }
}

#[test]
fn graded_dim_examples() {
    let r = ring(2);
    let k = betti_table(&cyclic(&r, 0, &["X1", "X2"]));
    assert_eq!(graded_dim_from_betti(&k, 2, 0), 1);
    assert_eq!(graded_dim_from_betti(&k, 2, 2), 0);
    let c = betti_table(&cyclic(&r, 0, &["X1"]));
    assert_eq!(graded_dim_from_betti(&c, 2, 4), 1);
    let s = table(&[(0, 2, 1)]);
    // oracle: monomials of exponent sum 2 in two variables
    assert_eq!(graded_dim_from_betti(&s, 2, 6), Monomial::all_of_total(2, 2).len() as i64);
}

#[test]
fn unit_cancellation_removes_redundant_generators() {
    // generators e0 (deg 0), e1 (deg 2) with e1 = X1 e0: a cyclic module in
    // disguise, namely R/(X2^2)
    let r = ring(2);
    let rel = ModuleVector::from_entries(&[r.parse("X1").unwrap(), r.parse("-1").unwrap()]);
    let rel2 = ModuleVector::from_entries(&[r.parse("X2^2").unwrap(), Polynomial::zero()]);
    let m = PresentedGradedModule::new(r.clone(), vec![0, 2], vec![rel, rel2]).unwrap();
    let res = minimal_free_resolution(&m);
    assert!(res.is_minimal());
    assert_eq!(res.betti(), betti_table(&cyclic(&r, 0, &["X2^2"])));
    assert_eq!(res.betti(), koszul_betti_table(&m));
}

#[test]
fn oracle_window_reaches_late_syzygies() {
    // Tor_2 sits in degree 14, beyond max relation degree + 2n = 12
    let r = ring(2);
    let p = |s: &str| r.parse(s).unwrap();
    let rels = [
        ["X1+2*X2", "0", "0"],
        ["0", "-4*X1^2*X2", "2*X2^2"],
        ["2*X1^2-X2^2", "2*X1^2", "X2"],
        ["-X1^2*X2", "X1^2*X2-2*X2^3", "-3*X2^2"],
    ]
    .iter()
    .map(|row| ModuleVector::from_entries(&row.map(p)))
    .collect();
    let m = PresentedGradedModule::new(r.clone(), vec![2, 2, 4], rels).unwrap();
    let k = koszul_betti_table(&m);
    assert_eq!(k.get(2, 14), 1);
    assert_eq!(k, betti_table(&m));
}

#[test]
fn csv_and_json_forms() {
    let t = table(&[(0, 0, 1), (1, 2, 2)]);
    assert_eq!(t.to_csv(), "p,q,value\n0,0,1\n1,2,2\n");
    assert_eq!(
        serde_json::to_string(&t).unwrap(),
        r#"[{"p":0,"q":0,"value":1},{"p":1,"q":2,"value":2}]"#
    );
}

/// Extra degree above the top generator, then per generator a list of `(monomial index, coefficient)`.
type Relation = (i64, Vec<Vec<(usize, i64)>>);

/// Random presentations: up to 3 variables, 4 generators, 5 relations.
pub(crate) fn arb_presentation() -> impl Strategy<Value = PresentedGradedModule> {
    (1usize..=3, prop::collection::vec(0i64..=2, 1..=4)).prop_flat_map(|(n, gdeg)| {
        let g = gdeg.len();
        let rel = prop::collection::vec(
            (0i64..=2, prop::collection::vec(prop::collection::vec((0usize..10, -2i64..=2), 0..=2), g)),
            0..=5,
        );
        rel.prop_map(move |rels| build_presentation(n, &gdeg, rels))
    })
}

pub(crate) fn build_presentation(
    n: usize,
    gdeg: &[i64],
    rels: Vec<Relation>,
) -> PresentedGradedModule {
    let r = ring(n);
    let degrees: Vec<i64> = gdeg.iter().map(|d| 2 * d).collect();
    let base = *degrees.iter().max().unwrap();
    let rels: Vec<ModuleVector> = rels
        .into_iter()
        .map(|(extra, entries)| {
            let top = base + 2 * extra;
            let polys: Vec<Polynomial> = entries
                .into_iter()
                .enumerate()
                .map(|(i, ts)| {
                    if top < degrees[i] {
                        return Polynomial::zero();
                    }
                    let ms = Monomial::all_of_total(n, ((top - degrees[i]) / 2) as u32);
                    Polynomial::from_terms(
                        ts.into_iter().map(|(k, c)| (ms[k % ms.len()], Rational::from_int(c))).collect(),
                    )
                })
                .collect();
            ModuleVector::from_entries(&polys)
        })
        .collect();
    PresentedGradedModule::new(r, degrees, rels).unwrap()
}

fn assert_exact(res: &FreeResolution) {
    for p in 1..res.maps.len() {
        let (d1, d2) = (res.differential(p), res.differential(p + 1));
        assert!(d1.compose(&d2).is_zero(), "d_{p} d_{} != 0", p + 1);
        // kernel of d_p lies in the image of d_{p+1}
        let img = ImageGb::new(&d2);
        for k in crate::polyring::kernel_gens(&d1) {
            assert!(img.contains(&k));
        }
    }
    if let Some(last) = res.maps.last() {
        let p = res.maps.len();
        if !last.is_empty() {
            assert!(crate::polyring::kernel_gens(&res.differential(p)).is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn resolution_is_minimal_exact_and_matches_oracle(m in arb_presentation()) {
        let res = minimal_free_resolution(&m);
        prop_assert!(res.is_minimal());
        assert_exact(&res);
        let b = res.betti();
        prop_assert!(b.max_p().unwrap_or(0) <= m.nvars());
        prop_assert_eq!(&b, &koszul_betti_table(&m));
        let h = hilbert_series(&m, 12);
        for i in h.start..=12 {
            prop_assert_eq!(graded_dim_from_betti(&b, m.nvars(), i), h.dim(i) as i64);
        }
    }

    #[test]
    fn quotient_hilbert_is_difference(m in arb_presentation()) {
        let f = m.ring.var(0);
        let q = quotient_by_element(&m, &f).unwrap();
        let hm = hilbert_series(&m, 10);
        let hq = hilbert_series(&q, 10);
        // dim (fM)^i = rank of multiplication by f from degree i-2 to i,
        // computed independently from the Koszul oracle's degree pieces:
        // M/fM has Tor_0 equal to M's Tor_0 (same generators), and
        // dim(M/fM)^i = dim M^i - dim (fM)^i with dim(fM)^i <= dim M^{i-2}
        for i in hm.start..=10 {
            prop_assert!(hq.dim(i) <= hm.dim(i));
            prop_assert!(hm.dim(i) - hq.dim(i) <= hm.dim(i - 2));
        }
        prop_assert_eq!(koszul_tor(&q, 0, hm.start), koszul_tor(&m, 0, hm.start));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_betti_is_convolution(a in arb_small(), b in arb_small()) {
        let b = PresentedGradedModule { ring: GradedRing::with_prefix("Y", b.nvars()), ..b };
        let t = betti_table(&tensor_over_q(&a, &b).unwrap());
        let (ta, tb) = (betti_table(&a), betti_table(&b));
        let mut conv = BettiTablePQ::default();
        for (p1, q1, v1) in ta.iter() {
            for (p2, q2, v2) in tb.iter() {
                conv.add(p1 + p2, q1 + q2, v1 * v2);
            }
        }
        prop_assert_eq!(t, conv);
    }
}

fn arb_small() -> impl Strategy<Value = PresentedGradedModule> {
    (1usize..=2, prop::collection::vec(0i64..=1, 1..=2)).prop_flat_map(|(n, gdeg)| {
        let g = gdeg.len();
        let rel = prop::collection::vec(
            (0i64..=1, prop::collection::vec(prop::collection::vec((0usize..10, -2i64..=2), 0..=2), g)),
            0..=3,
        );
        rel.prop_map(move |rels| build_presentation(n, &gdeg, rels))
    })
}
