//! Build a polytope from its vertices by walking across ridges, then list
//! each facet with its outer normal and neighbours.

use smooth_fano::geometry::RejectError;
use smooth_fano::{build_polytope, identity_simplex, LatticePoint, PointSet};

fn main() {
    let pts: PointSet = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, -1]]
        .iter()
        .map(|c| LatticePoint::new(c))
        .collect();
    let p = build_polytope(&pts, &identity_simplex(3)).expect("smooth Fano");
    for (i, f) in p.facets().iter().enumerate() {
        let nbrs: Vec<usize> = (0..3).map(|s| p.neighbor(i, s)).collect();
        println!("facet {i}: {:?} normal {:?} neighbours {nbrs:?}", f.sorted_vertices(), f.normal().coeffs());
    }

    let not_smooth: PointSet = [[1, 0], [0, 1], [-1, 0], [-1, -2]].iter().map(|c| LatticePoint::new(c)).collect();
    match build_polytope(&not_smooth, &identity_simplex(2)) {
        Err(e @ RejectError::NonUnimodular { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
}
