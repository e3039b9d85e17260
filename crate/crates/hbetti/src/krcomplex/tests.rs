use super::*;
use crate::braid::{close, split_union, BraidWord};
use crate::grmodule::{hilbert_series, PresentedGradedModule};
use crate::polyring::{ModuleVector, Polynomial};

type MatrixFixture<'a> = &'a [((i64, i64), &'a [&'a [&'a str]])];
type GensFixture<'a> = &'a [((i64, i64), &'a [(i64, &'a str)])];

fn w(b: usize, ls: &[i32]) -> BraidWord {
    BraidWord::new(b, ls.to_vec()).unwrap()
}

fn hopf() -> crate::braid::ClosedBraidDiagram {
    close(&w(2, &[1, 1]))
}

#[test]
fn edge_ring_examples() {
    let e = edge_ring(&hopf()).unwrap();
    assert_eq!(e.ring.names(), ["X1", "X2", "X3"]);
    assert_eq!(e.edge(3), &e.ring.parse("X1 + X2 - X3").unwrap());

    let e = edge_ring(&close(&w(1, &[]))).unwrap();
    assert_eq!(e.ring.names(), ["X1"]);
    assert!(e.relations.is_empty());

    let e = edge_ring(&close(&w(2, &[1]))).unwrap();
    assert_eq!(e.ring.names(), ["X1", "X2"]);
    assert_eq!(e.relations, vec![vec![0, 0]]);

    let r = reduced_edge_ring(&hopf()).unwrap();
    assert_eq!(r.ring.names(), ["X2", "X3"]);
    assert!(r.edge(0).is_zero());
}

#[test]
fn hopf_crossing_squares() {
    let d = hopf();
    let e = edge_ring(&d).unwrap();
    let p = |s: &str| e.ring.parse(s).unwrap();
    let c1 = crossing_square(&d.crossings[0], &e).unwrap();
    assert_eq!(c1.h_top, p("X2 - X3"));
    assert_eq!(c1.h_bot, p("(X2 - X3)*(X1 - X3)"));
    assert_eq!(c1.v_left, p("X1 - X3"));
    assert_eq!(c1.v_right, Polynomial::one());
    let c2 = crossing_square(&d.crossings[1], &e).unwrap();
    assert_eq!(c2.h_top, p("X3 - X2"));
    assert_eq!(c2.h_bot, p("-(X2 - X3)*(X1 - X3)"));
    assert_eq!(c2.v_left, c1.v_left);
    assert_eq!(c2.v_right, c1.v_right);
}

#[test]
fn negative_crossings_are_rejected() {
    let d = close(&w(2, &[1, -1]));
    let err = assemble(&d).unwrap_err();
    assert_eq!(err, KrError::NegativeCrossing { index: 1 });
    assert!(err.to_string().contains("negative crossings unsupported"));
}

fn check_matrix(c: &TotalDoubleComplex, cols: &[ModuleVector], rows: &[&[&str]], what: &str) {
    let ring = &c.edges.ring;
    assert_eq!(cols.len(), rows[0].len(), "{what}: column count");
    for (r, row) in rows.iter().enumerate() {
        for (col, s) in row.iter().enumerate() {
            assert_eq!(cols[col].entry(r), ring.parse(s).unwrap(), "{what} entry ({r},{col})");
        }
    }
    for col in cols {
        assert!(col.span() <= rows.len(), "{what}: extra rows");
    }
}

#[test]
fn hopf_complex_matches_displayed_matrices() {
    let c = assemble(&hopf()).unwrap();
    let ranks: Vec<usize> = [0, -2, -4]
        .iter()
        .flat_map(|&k| [-4, -2, 0].map(|j| c.rank(j, k)))
        .collect();
    assert_eq!(ranks, [1, 2, 1, 2, 4, 2, 1, 2, 1]);
    assert_eq!(c.degrees(-2, -2), [0, 2, 2, 0]);
    assert_eq!(c.degrees(-4, -4), [4]);
    assert_eq!(c.degrees(-2, -4), [2, 2]);

    let h = "X2-X3";
    let hb = "(X2-X3)*(X1-X3)";
    let dp: MatrixFixture = &[
        ((-2, 0), &[&[h, "X3-X2"]]),
        ((-4, 0), &[&[h], &[h]]),
        ((-2, -2), &[&[h, "-(X2-X3)*(X1-X3)", "0", "0"], &["0", "0", hb, "X3-X2"]]),
        ((-4, -2), &[&[hb, "0"], &[h, "0"], &["0", h], &["0", hb]]),
        ((-2, -4), &[&[hb, "-(X2-X3)*(X1-X3)"]]),
        ((-4, -4), &[&[hb], &[hb]]),
    ];
    for (pos, rows) in dp {
        check_matrix(&c, &c.dplus[pos], rows, &format!("d+ at {pos:?}"));
    }
    let v = "X1-X3";
    let dv: MatrixFixture = &[
        ((0, -2), &[&["1", "1"]]),
        ((-2, -2), &[&["1", "0", v, "0"], &["0", v, "0", "1"]]),
        ((-4, -2), &[&[v, v]]),
        ((0, -4), &[&["1"], &["-1"]]),
        ((-2, -4), &[&[v, "0"], &["0", "1"], &["-1", "0"], &["0", "X3-X1"]]),
        ((-4, -4), &[&[v], &["X3-X1"]]),
    ];
    for (pos, rows) in dv {
        check_matrix(&c, &c.dv[pos], rows, &format!("d_v at {pos:?}"));
    }
}

#[test]
fn unknot_complex_is_rank_one() {
    let c = assemble(&close(&w(1, &[]))).unwrap();
    assert_eq!(c.positions.len(), 1);
    assert_eq!(c.rank(0, 0), 1);
}

#[test]
fn complex_dump_lists_positions_and_maps() {
    let v = assemble(&hopf()).unwrap().to_json();
    assert_eq!(v["positions"].as_array().unwrap().len(), 9);
    assert_eq!(v["d_plus"].as_array().unwrap().len(), 6);
    assert_eq!(v["d_v"][0]["matrix"][0][0], "X1 - X3");
}

fn same_hilbert(a: &PresentedGradedModule, b: &PresentedGradedModule) -> bool {
    hilbert_series(a, 20) == hilbert_series(b, 20)
}

fn module(ring: &crate::polyring::Ring, degree: i64, rels: &[&str]) -> PresentedGradedModule {
    let rels = rels.iter().map(|s| ModuleVector::from_poly(0, &ring.parse(s).unwrap())).collect();
    PresentedGradedModule::new(ring.clone(), vec![degree], rels).unwrap()
}

#[test]
fn hopf_plus_homology_matches_display() {
    let c = assemble(&hopf()).unwrap();
    let plus = plus_homology(&c).unwrap();
    let r = &c.edges.ring;
    let expect: GensFixture = &[
        ((-4, 0), &[]),
        ((-2, 0), &[(0, "X2-X3")]),
        ((0, 0), &[(0, "X2-X3")]),
        ((-4, -2), &[]),
        ((-2, -2), &[(2, "X2-X3"), (2, "X2-X3")]),
        ((0, -2), &[(0, "X2-X3"), (0, "X2-X3")]),
        ((-4, -4), &[]),
        ((-2, -4), &[(2, "(X2-X3)*(X1-X3)")]),
        ((0, -4), &[(0, "(X2-X3)*(X1-X3)")]),
    ];
    for (pos, parts) in expect {
        let parts: Vec<_> = parts.iter().map(|&(d, rel)| module(r, d, &[rel])).collect();
        let want = PresentedGradedModule::direct_sum(r.clone(), &parts);
        assert!(same_hilbert(&plus[pos].graded_module(), &want), "stratum {pos:?}");
    }
}

#[test]
fn hopf_middle_homology() {
    let h = middle_homology(&hopf()).unwrap();
    let r = &h.ring;
    assert_eq!(h.strata.keys().copied().collect::<Vec<_>>(), [(1, -3), (1, 1), (3, -3)]);
    assert!(same_hilbert(&h.strata[&(1, 1)], &module(r, 0, &["X1-X2"])));
    assert!(same_hilbert(&h.strata[&(3, -3)], &module(r, 2, &[])));
    assert!(same_hilbert(&h.strata[&(1, -3)], &module(r, 4, &[])));
}

#[test]
fn unknot_and_unlink_homology() {
    let h = middle_homology(&close(&w(1, &[]))).unwrap();
    assert_eq!(h.strata.len(), 1);
    assert_eq!(h.strata[&(0, 0)].degrees, [1]);
    assert!(h.strata[&(0, 0)].relations.is_empty());

    let u = split_union(&w(1, &[]), &w(1, &[]));
    let h = middle_homology(&close(&u)).unwrap();
    assert_eq!(h.ring.names(), ["X1", "X2"]);
    assert_eq!(h.strata.len(), 1);
    assert_eq!(h.strata[&(1, -1)].degrees, [2]);
    assert!(h.strata[&(1, -1)].relations.is_empty());
}

#[test]
fn stabilized_unknot_matches_unknot() {
    let h = middle_homology(&close(&w(2, &[1]))).unwrap();
    assert_eq!(h.strata.len(), 1);
    assert!(same_hilbert(&h.strata[&(0, 0)], &module(&h.ring, 1, &[])));
}

#[test]
fn reduced_examples() {
    let unknot = close(&w(1, &[]));
    let r = reduced_homology(&middle_homology(&unknot).unwrap()).unwrap();
    assert_eq!(r.ring.nvars(), 0);
    assert_eq!(r.strata[&(0, 0)].degrees, [0]);

    let h = middle_homology(&hopf()).unwrap();
    let r = reduced_homology(&h).unwrap();
    assert_eq!(r.ring.names(), ["X2"]);
    let top = &r.strata[&(1, 1)];
    assert_eq!(hilbert_series(top, 10).nonzero(), [(-1, 1)]);
    // free strata stay free with the shift lowered by one
    assert!(same_hilbert(&r.strata[&(3, -3)], &module(&r.ring, 1, &[])));
}

#[test]
fn reduced_routes_agree() {
    for word in [w(1, &[]), w(2, &[1]), w(2, &[1, 1]), w(2, &[1, 1, 1])] {
        let d = close(&word);
        let a = reduced_homology(&middle_homology(&d).unwrap()).unwrap();
        let b = reduced_middle_homology(&d).unwrap();
        assert_eq!(a.strata.keys().collect::<Vec<_>>(), b.strata.keys().collect::<Vec<_>>(), "{word}");
        for (key, m) in &a.strata {
            assert!(same_hilbert(m, &b.strata[key]), "{word} at {key:?}");
        }
    }
}
