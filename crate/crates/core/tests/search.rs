use mixgraph::bounds::{level_counts, perfect_matchings};
use mixgraph::canon::{canonical_form, is_isomorphic};
use mixgraph::families::build_fprime;
use mixgraph::search::*;
use num_traits::ToPrimitive;

fn check_survivors(out: &SearchOutcome) {
    let mut prev = None;
    for s in &out.survivors {
        assert_eq!(s.graph.order(), out.order);
        assert_eq!(s.graph.diameter(), Some(out.k));
        assert!(s.graph.is_totally_regular(1, 1));
        assert!(!s.graph.has_digons());
        assert_eq!(canonical_form(&s.graph), s.form);
        assert!(prev.is_none_or(|p| p < &s.form), "survivors sorted and distinct");
        prev = Some(&s.form);
    }
}

/// Matchings of the last level that survive the arc-joined pairs: the
/// edge-entered leaves pair up with one extra arc-entered leaf, or not.
fn expected_matchings(k: u32) -> u64 {
    let (_, b, c) = level_counts(k);
    let (b, c) = (b.to_u32().unwrap(), c.to_u32().unwrap());
    (perfect_matchings(c + 1) * b + perfect_matchings(c - 1) * c).to_u64().unwrap()
}

fn fingerprint(o: &SearchOutcome) -> (u64, u64, u64, Vec<String>, bool) {
    let forms = o.survivors.iter().map(|s| format!("{:?}", s.form)).collect();
    (o.examined, o.matchings, o.cases, forms, o.complete)
}

#[test]
fn almost_moore_diameter_3() {
    let out = search_almost_moore(3).unwrap();
    assert!(out.complete);
    assert_eq!(out.order, 10);
    assert_eq!(out.matchings, expected_matchings(3));
    assert_eq!(out.survivors.len(), 3);
    check_survivors(&out);
}

#[test]
fn almost_moore_diameter_4_is_empty() {
    let out = search_almost_moore(4).unwrap();
    assert!(out.complete);
    assert_eq!(out.matchings, expected_matchings(4));
    assert!(out.survivors.is_empty());
}

#[test]
fn order_16_is_empty() {
    let out = search_order16_k4().unwrap();
    assert!(out.complete);
    assert_eq!(out.cases, order16_removals().len() as u64);
    assert!(out.survivors.is_empty());
}

#[test]
fn generic_order_6_diameter_2() {
    let out = search_generic(6, 2, &[], None).unwrap();
    assert_eq!(out.survivors.len(), 1);
    check_survivors(&out);
    assert!(is_isomorphic(&out.survivors[0].graph, &build_fprime(2).unwrap().graph));
}

#[test]
fn generic_order_10_matches_tree_search() {
    let generic = search_generic(10, 3, &[], None).unwrap();
    check_survivors(&generic);
    assert_eq!(generic.forms(), search_almost_moore(3).unwrap().forms());
}

#[test]
fn argument_errors() {
    assert!(matches!(search_almost_moore(5), Err(SearchError::UnsupportedK(5))));
    assert!(matches!(search_generic(7, 3, &[], None), Err(SearchError::OddOrder(7))));
    assert!(matches!(search_generic(MAX_SEARCH_ORDER + 2, 3, &[], None), Err(SearchError::TooLarge(_))));
    // An arc parallel to a matching edge, and a loop.
    assert!(matches!(search_generic(10, 3, &[(0, 1)], None), Err(SearchError::InvalidSeed((0, 1)))));
    assert!(matches!(search_generic(10, 3, &[(2, 2)], None), Err(SearchError::InvalidSeed((2, 2)))));
}

#[test]
fn budget_is_reported() {
    match search_generic(12, 4, &[], Some(10)) {
        Err(SearchError::BudgetExhausted(out)) => {
            assert!(!out.complete);
            assert!(out.examined <= 10);
            check_survivors(&out);
        }
        other => panic!("expected an exhausted budget, got {other:?}"),
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let full = search_generic(10, 3, &[], None).unwrap();
            let capped = match search_generic(12, 4, &[(0, 2)], Some(500)) {
                Ok(o) => o,
                Err(SearchError::BudgetExhausted(o)) => *o,
                Err(e) => panic!("{e}"),
            };
            (fingerprint(&full), fingerprint(&capped))
        })
    };
    let one = run(1);
    assert_eq!(one, run(2));
    assert_eq!(one, run(3));
}

#[test]
fn moore_tree_layout() {
    let t = moore_tree(3);
    assert_eq!(t.order(), 11);
    assert_eq!(t.index_of("101"), t.words.iter().position(|w| w == "101"));
    assert_eq!(t.index_of("00"), None);
    for l in 0..=3 {
        let (a, b, c) = level_counts(l as u32);
        let (a, b, c) = (a.to_usize().unwrap(), b.to_usize().unwrap(), c.to_usize().unwrap());
        let got = t.level_counts(l);
        assert_eq!(got.0, a, "level {l}");
        if l > 0 {
            assert_eq!((got.1, got.2), (b, c), "level {l}");
        }
    }
    // Every non-root word hangs off its prefix by an edge (last symbol 0) or an arc.
    for (i, w) in t.words.iter().enumerate().skip(1) {
        let parent = t.index_of(&w[..w.len() - 1]).unwrap();
        if w.ends_with('0') {
            assert!(t.edges.contains(&(parent.min(i), parent.max(i))));
        } else {
            assert!(t.arcs.contains(&(parent, i)));
        }
    }
}
