mod common;

use common::*;
use smooth_fano::oracle::ord_by_definition;
use smooth_fano::order::{is_canonical, is_presubset, is_sd_minimal_naive};
use smooth_fano::sfp::{add_point, SearchNode};
use smooth_fano::{classify_with, generate_wd, ClassifyOptions, LatticePoint, Mode, PointSet};

fn run(d: usize, opts: &ClassifyOptions) -> (Vec<PointSet>, smooth_fano::Statistics) {
    let mut out = Vec::new();
    let stats = classify_with(d, opts, |p| out.push(p.vertices().clone()));
    (out, stats)
}

#[test]
fn literal_and_optimized_agree() {
    for d in 1..=4 {
        let (a, sa) = run(d, &ClassifyOptions::default());
        let (b, sb) = run(d, &ClassifyOptions { mode: Mode::Literal, ..Default::default() });
        assert_eq!(a, b, "d={d}");
        assert_eq!(sa.by_vertex_count, sb.by_vertex_count);
    }
}

#[test]
fn parallel_matches_sequential() {
    for d in 2..=5 {
        let (a, sa) = run(d, &ClassifyOptions::default());
        for (workers, split_depth) in [(2, 1), (3, 2), (4, 3)] {
            let opts = ClassifyOptions { workers, split_depth, ..Default::default() };
            let (b, sb) = run(d, &opts);
            assert_eq!(a, b, "d={d} workers={workers}");
            assert_eq!(sa.total, sb.total);
            assert_eq!(sa.nodes, sb.nodes);
        }
    }
}

#[test]
fn plane_from_the_root() {
    let w = generate_wd(2);
    let mut out = Vec::new();
    let stats = add_point(&SearchNode::root(2), &w, &ClassifyOptions::default(), |p| out.push(p));
    assert_eq!(out.len(), 5);
    assert_eq!(stats.by_vertex_count.into_iter().collect::<Vec<_>>(), vec![(3, 1), (4, 2), (5, 1), (6, 1)]);
}

#[test]
fn outputs_are_canonical_and_reachable() {
    for d in 1..=4 {
        for p in classify_all(d) {
            let v = p.vertices();
            assert!(is_canonical(&p));
            assert_eq!(ord_by_definition(&p), *v);
            assert!(v.len() <= 3 * d);
            assert!(p.is_special(&p.facets()[0]) || p.special_facets().count() > 0);
            let node = SearchNode::replay(v).expect("every output lies on a search path");
            assert_eq!(node.points(), v);
            for f in node.facets().iter() {
                assert!(p.has_facet(f));
            }
        }
    }
}

#[test]
fn initial_segments_are_minimal() {
    for d in 1..=4 {
        for p in classify_all(d) {
            let pts = p.vertices().points();
            for k in d..=pts.len() {
                let prefix = PointSet::from_points(pts[..k].iter().copied());
                assert!(is_presubset(&prefix, p.vertices()));
                assert!(is_sd_minimal_naive(&prefix), "{prefix:?}");
            }
        }
    }
}

#[test]
fn adjacency_and_coefficient_invariants_hold() {
    for d in 1..=4 {
        let w = generate_wd(d);
        for p in classify_all(d) {
            assert_eq!(invariant_violations(&p, &w), Vec::<String>::new());
        }
    }
}

#[test]
fn deduction_is_sound_on_outputs() {
    for d in 1..=3 {
        for p in classify_all(d) {
            assert_eq!(presubset_violations(&p), Vec::<String>::new());
        }
    }
}

#[test]
fn worked_example_along_the_search_path() {
    let (direct, chain) = worked_example_deductions();
    let direct = direct.unwrap();
    let chain = chain.unwrap();
    for f in [[1, 2, 3, 4, 5], [2, 3, 4, 5, 6], [1, 3, 4, 5, 6], [1, 2, 3, 4, 8]] {
        assert!(direct.contains(&f.to_vec()));
    }
    for f in WORKED_EXAMPLE_FACETS.iter().filter(|f| **f != [1, 2, 3, 5, 8]) {
        assert!(chain.contains(&f.to_vec()), "{f:?}");
    }
    // the neighbour of I across {1,2,3,5} has the larger height of v7 and v8
    assert!(chain.contains(&vec![1, 2, 3, 5, 7]));
    assert!(!chain.contains(&vec![1, 2, 3, 5, 8]));
    let sum = worked_example_points().iter().fold(LatticePoint::zero(5), |a, p| a.add(p));
    assert_eq!(sum, LatticePoint::new(&[0, 1, 0, 0, 1]));
}

#[test]
fn runs_are_repeatable() {
    let a = run(4, &ClassifyOptions::default());
    let b = run(4, &ClassifyOptions::default());
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
}
