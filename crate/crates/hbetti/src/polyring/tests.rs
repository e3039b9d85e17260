use proptest::prelude::*;

use super::*;
use crate::exactalg::Rational;

fn ring(n: usize) -> Ring {
    GradedRing::with_prefix("X", n)
}

fn vec1(r: &Ring, s: &str) -> ModuleVector {
    ModuleVector::from_poly(0, &r.parse(s).unwrap())
}

fn vecn(r: &Ring, entries: &[&str]) -> ModuleVector {
    let ps: Vec<Polynomial> = entries.iter().map(|s| r.parse(s).unwrap()).collect();
    ModuleVector::from_entries(&ps)
}

fn free(d: &[i64]) -> GradedFreeModule {
    GradedFreeModule::new(d.to_vec())
}

#[test]
fn normal_form_examples() {
    let r = ring(2);
    assert!(normal_form(&vec1(&r, "X1^2"), &[vec1(&r, "X1")]).is_zero());
    assert_eq!(normal_form(&vec1(&r, "X2"), &[vec1(&r, "X1")]), vec1(&r, "X2"));
    assert!(normal_form(&vec1(&r, "X1*X2 + X2^2"), &[vec1(&r, "X1 + X2")]).is_zero());
}

#[test]
fn buchberger_examples() {
    let r = ring(2);
    let gb = buchberger(&[vec1(&r, "X1"), vec1(&r, "X2")], &free(&[0])).unwrap();
    assert_eq!(gb, vec![vec1(&r, "X1"), vec1(&r, "X2")]);
    let gb = buchberger(&[vec1(&r, "X1 + X2")], &free(&[0])).unwrap();
    assert_eq!(gb, vec![vec1(&r, "X1 + X2")]);
    let g = vecn(&r, &["X1", "X2"]);
    let gb = buchberger(std::slice::from_ref(&g), &free(&[0, 0])).unwrap();
    assert_eq!(gb, vec![g]);
    assert!(normal_form(&vecn(&r, &["X1^2", "X1*X2"]), &gb).is_zero());
    assert!(!normal_form(&vecn(&r, &["X1^2", "X2^2"]), &gb).is_zero());
}

#[test]
fn buchberger_rejects_inhomogeneous() {
    let r = ring(2);
    assert!(matches!(
        buchberger(&[vec1(&r, "X1 + 1")], &free(&[0])),
        Err(PolyError::Inhomogeneous(_))
    ));
}

#[test]
fn buchberger_adds_spolys() {
    // twisted cubic style ideal: the GB needs extra elements
    let r = ring(3);
    let gens = [vec1(&r, "X1*X2 - X3^2"), vec1(&r, "X1^2 - X2*X3")];
    let gb = buchberger(&gens, &free(&[0])).unwrap();
    assert!(gb.len() > 2);
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            if let Some(s) = s_vector(&gb[i], &gb[j]) {
                assert!(normal_form(&s, &gb).is_zero());
            }
        }
    }
}

#[test]
fn syzygy_examples() {
    let r = ring(3);
    let g = [vec1(&r, "X1"), vec1(&r, "X2")];
    let s = syzygy_basis(&g, &free(&[0])).unwrap();
    assert_eq!(s, vec![vecn(&r, &["X2", "-X1"])]);
    assert!(syzygy_basis(&[vec1(&r, "X1")], &free(&[0])).unwrap().is_empty());

    let g3 = [vec1(&r, "X1"), vec1(&r, "X2"), vec1(&r, "X3")];
    let s = syzygy_basis(&g3, &free(&[0])).unwrap();
    assert_eq!(s.len(), 3);
    // second step of the Koszul complex: rank 1
    let f1 = free(&[2, 2, 2]);
    let gb = buchberger(&s, &f1).unwrap();
    let s2 = syzygy_basis(&gb, &f1).unwrap();
    let a = HomMatrix::from_columns(f1.clone(), s.clone(), 0).unwrap();
    let k = kernel_gens(&a);
    assert_eq!(k.len(), 1);
    for v in s2 {
        // every Schreyer syzygy of the basis maps to zero
        let h = HomMatrix::from_columns(f1.clone(), gb.clone(), 0).unwrap();
        assert!(h.apply(&v).is_zero());
    }
}

#[test]
fn syzygy_rejects_non_groebner() {
    let r = ring(3);
    let g = [vec1(&r, "X1*X2 - X3^2"), vec1(&r, "X1^2 - X2*X3")];
    assert!(matches!(syzygy_basis(&g, &free(&[0])), Err(PolyError::NotGroebner(_))));
}

#[test]
fn kernel_examples() {
    let r = ring(3);
    let row = HomMatrix::from_columns(free(&[0]), vec![vec1(&r, "X1"), vec1(&r, "X2")], 0).unwrap();
    assert_eq!(kernel_gens(&row), vec![vecn(&r, &["X2", "-X1"])]);
    let id = HomMatrix::from_columns(
        free(&[0, 0]),
        vec![ModuleVector::unit(0), ModuleVector::unit(1)],
        0,
    )
    .unwrap();
    assert!(kernel_gens(&id).is_empty());
    let m = HomMatrix::from_columns(free(&[0]), vec![vec1(&r, "X2 - X3")], 0).unwrap();
    assert!(kernel_gens(&m).is_empty());
}

#[test]
fn kernel_of_zero_column() {
    let r = ring(1);
    let a = HomMatrix::new(free(&[4]), free(&[0]), vec![ModuleVector::zero()], 0).unwrap();
    assert_eq!(kernel_gens(&a), vec![ModuleVector::unit(0)]);
    let _ = r;
}

#[test]
fn lift_examples() {
    let r = ring(2);
    let a = HomMatrix::from_columns(free(&[0]), vec![vec1(&r, "X1")], 0).unwrap();
    assert_eq!(lift_through(&a, &vec1(&r, "X1^2")), Some(vec1(&r, "X1")));
    assert_eq!(lift_through(&a, &vec1(&r, "X2")), None);
    let b = HomMatrix::from_columns(free(&[0]), vec![vec1(&r, "X1"), vec1(&r, "X2")], 0).unwrap();
    let v = vec1(&r, "X1*X2");
    let u = lift_through(&b, &v).unwrap();
    assert_eq!(b.apply(&u), v);
}

// Random homogeneous data over three variables.

fn arb_hpoly(total: u32) -> impl Strategy<Value = Polynomial> {
    let ms = Monomial::all_of_total(3, total);
    prop::collection::vec((0..ms.len(), -3i64..4), 0..4).prop_map(move |ts| {
        Polynomial::from_terms(ts.into_iter().map(|(i, c)| (ms[i], Rational::from_int(c))).collect())
    })
}

/// A random 2-row matrix whose columns are homogeneous for target degrees
/// (0, 2).
fn arb_matrix() -> impl Strategy<Value = HomMatrix> {
    prop::collection::vec((1u32..3, any::<u64>()), 1..4).prop_flat_map(|specs| {
        let cols: Vec<_> = specs
            .iter()
            .map(|&(d, _)| (arb_hpoly(d), arb_hpoly(d - 1)))
            .collect();
        cols.prop_map(|cs| {
            let cols: Vec<ModuleVector> =
                cs.into_iter().map(|(a, b)| ModuleVector::from_entries(&[a, b])).collect();
            let degs: Vec<i64> = cols
                .iter()
                .map(|c| c.degree(&[0, 2]).unwrap_or(0))
                .collect();
            HomMatrix::new(GradedFreeModule::new(degs), free(&[0, 2]), cols, 0).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spairs_reduce_to_zero(a in arb_matrix()) {
        let gb = buchberger(&a.cols, &a.target).unwrap();
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                if let Some(s) = s_vector(&gb[i], &gb[j]) {
                    prop_assert!(normal_form(&s, &gb).is_zero());
                }
            }
        }
        for c in &a.cols {
            prop_assert!(normal_form(c, &gb).is_zero());
        }
    }

    #[test]
    fn kernel_and_lifts_are_sound(a in arb_matrix(), coeffs in prop::collection::vec(-2i64..3, 4)) {
        let k = kernel_gens(&a);
        for v in &k {
            prop_assert!(a.apply(v).is_zero());
        }
        // a random combination of kernel generators is in the span of the
        // kernel generators and maps to zero
        let mut comb = ModuleVector::zero();
        for (v, c) in k.iter().zip(&coeffs) {
            comb = comb.add(&v.scale(&Rational::from_int(*c)));
        }
        prop_assert!(a.apply(&comb).is_zero());
        if !comb.is_zero() && comb.degree(&a.source.degrees).is_some() {
            let kmat = HomMatrix::from_columns(a.source.clone(), k.clone(), 0).unwrap();
            prop_assert!(lift_through(&kmat, &comb).is_some());
        }
        // lifting an image element recovers a preimage
        let img = a.apply(&ModuleVector::unit(0).mul_term(&Rational::one(), &Monomial::var(1)));
        if !img.is_zero() {
            let u = lift_through(&a, &img).unwrap();
            prop_assert_eq!(a.apply(&u), img);
        }
    }

    #[test]
    fn schreyer_syzygies_annihilate(a in arb_matrix()) {
        let gb = buchberger(&a.cols, &a.target).unwrap();
        let degs: Vec<i64> = gb.iter().map(|g| g.degree(&a.target.degrees).unwrap()).collect();
        let h = HomMatrix::new(GradedFreeModule::new(degs), a.target.clone(), gb.clone(), 0).unwrap();
        for s in syzygy_basis(&gb, &a.target).unwrap() {
            prop_assert!(h.apply(&s).is_zero());
        }
    }
}

#[test]
fn deterministic_reduced_basis_independent_of_input_order() {
    let r = ring(3);
    let gens = vec![
        vec1(&r, "X1*X2 - X3^2"),
        vec1(&r, "X1^2 - X2*X3"),
        vec1(&r, "X2^2 - X1*X3"),
    ];
    let a = buchberger(&gens, &free(&[0])).unwrap();
    let mut rev = gens.clone();
    rev.reverse();
    let b = buchberger(&rev, &free(&[0])).unwrap();
    assert_eq!(a, b);
}
