use proptest::prelude::*;

use super::*;

fn w(b: usize, ls: &[i32]) -> BraidWord {
    BraidWord::new(b, ls.to_vec()).unwrap()
}

/// Number of cycles of the strand permutation, computed directly.
fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    cycles
}

#[test]
fn close_examples() {
    let hopf = close(&w(2, &[1, 1]));
    assert_eq!((hopf.edges.len(), hopf.crossings.len(), hopf.components, hopf.writhe), (4, 2, 2, 2));

    let unknot = close(&w(1, &[]));
    assert_eq!((unknot.circles, unknot.crossings.len(), unknot.components, unknot.writhe), (1, 0, 1, 0));
    assert_eq!(unknot.edges.len(), 1);

    let trefoil = close(&w(2, &[1, 1, 1]));
    assert_eq!((trefoil.edges.len(), trefoil.crossings.len(), trefoil.components, trefoil.writhe), (6, 3, 1, 3));
}

#[test]
fn hopf_edge_labels() {
    // first crossing: out X1, X2; in X4 (left), X3 (right); X1, X3 share a component
    let d = close(&w(2, &[1, 1]));
    let c = &d.crossings[0];
    assert_eq!((c.out_left, c.out_right, c.in_left, c.in_right), (0, 1, 3, 2));
    let c = &d.crossings[1];
    assert_eq!((c.out_left, c.out_right, c.in_left, c.in_right), (3, 2, 0, 1));
    assert_eq!(d.component_edges(), vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn first_edges_lie_on_distinct_components() {
    for word in [w(3, &[1, 2, 1, 2]), w(4, &[1, 1, 3, 3]), w(3, &[2, 2]), w(5, &[1, 3, 3])] {
        let d = close(&word);
        for l in 0..d.components {
            assert_eq!(d.edges[l].component, l);
        }
    }
}

#[test]
fn split_union_examples() {
    assert_eq!(split_union(&w(2, &[1, 1]), &w(2, &[1, 1])), w(4, &[1, 1, 3, 3]));
    assert_eq!(split_union(&w(2, &[1, -1]), &w(1, &[])), w(3, &[1, -1]));
    let u = split_union(&w(2, &[1]), &w(2, &[1]));
    assert_eq!(u, w(4, &[1, 3]));
    assert_eq!(close(&u).components, 2);
    assert_eq!(split_union(&w(2, &[-1]), &w(2, &[-1])), w(4, &[-1, -3]));
}

#[test]
fn positivity() {
    assert!(w(2, &[1, 1]).is_positive());
    assert!(!w(2, &[-1]).is_positive());
    assert!(w(1, &[]).is_positive());
}

#[test]
fn markov_pairs_are_positive_and_match_components() {
    let pairs = markov_test_pairs();
    assert!(pairs.len() >= 4);
    for (a, b) in &pairs {
        assert!(a.is_positive() && b.is_positive());
        assert_eq!(cycle_count(&a.permutation()), cycle_count(&b.permutation()));
        assert_eq!(close(a).components, close(b).components);
    }
}

#[test]
fn parse_grammar() {
    assert_eq!(BraidWord::parse("1 1", 2).unwrap(), w(2, &[1, 1]));
    assert_eq!(BraidWord::parse("  -2\t1 ", 3).unwrap(), w(3, &[-2, 1]));
    assert_eq!(BraidWord::parse("", 1).unwrap(), w(1, &[]));
    assert!(matches!(BraidWord::parse("1 x", 2), Err(BraidError::Parse(_))));
    assert!(matches!(BraidWord::parse("2", 2), Err(BraidError::OutOfRange { .. })));
    assert!(matches!(BraidWord::parse("0", 3), Err(BraidError::OutOfRange { .. })));
    assert_eq!(BraidWord::new(0, vec![]), Err(BraidError::NoStrands));
}

#[test]
fn diagram_dump_is_json() {
    let v: serde_json::Value = serde_json::from_str(&close(&w(2, &[1, 1])).to_json()).unwrap();
    assert_eq!(v["components"], 2);
    assert_eq!(v["crossings"].as_array().unwrap().len(), 2);
}

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (1usize..=5).prop_flat_map(|b| {
        let letter = if b == 1 {
            Just(0i32).boxed()
        } else {
            (1..b as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }).boxed()
        };
        prop::collection::vec(letter, 0..8).prop_map(move |ls| {
            BraidWord::new(b, ls.into_iter().filter(|&l| l != 0).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn closure_invariants(word in arb_word()) {
        let d = close(&word);
        prop_assert_eq!(d.edges.len(), 2 * word.len() + d.circles);
        prop_assert_eq!(d.components, cycle_count(&word.permutation()));
        prop_assert_eq!(d.writhe, word.letters().iter().map(|l| i64::from(l.signum())).sum::<i64>());
        for e in &d.edges {
            prop_assert_eq!(e.start.is_none(), e.end.is_none());
            let starts = d.crossings.iter().filter(|c| c.out_left == e.id || c.out_right == e.id).count();
            let ends = d.crossings.iter().filter(|c| c.in_left == e.id || c.in_right == e.id).count();
            let expected = usize::from(e.start.is_some());
            prop_assert_eq!((starts, ends), (expected, expected));
        }
        for c in &d.crossings {
            // the strands swap sides through a crossing
            prop_assert_eq!(d.edges[c.in_left].component, d.edges[c.out_right].component);
            prop_assert_eq!(d.edges[c.in_right].component, d.edges[c.out_left].component);
        }
    }

    #[test]
    fn split_union_adds(a in arb_word(), b in arb_word()) {
        let u = split_union(&a, &b);
        let (da, db, du) = (close(&a), close(&b), close(&u));
        prop_assert_eq!(du.components, da.components + db.components);
        prop_assert_eq!(du.writhe, da.writhe + db.writhe);
        prop_assert_eq!(du.strands, da.strands + db.strands);
    }
}
