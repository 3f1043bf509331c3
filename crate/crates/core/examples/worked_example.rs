//! Facet deduction on a five-dimensional partial vertex set.

use smooth_fano::{check_subset, DeducedFacets, LatticePoint, PointSet};


fn main() {
    let v: Vec<LatticePoint> = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [-1, -1, 0, 1, 1],
        [0, 1, -1, -1, 0],
        [0, 0, 0, -1, -1],
    ]
    .iter()
    .map(|c| LatticePoint::new(c))
    .collect();
    let set = PointSet::from_points(v.iter().copied());
    println!("sum of points: {}", set.sum().unwrap());
    report("from the standard simplex", &v, check_subset(&set, &DeducedFacets::seed(5)));

    // the search reaches this set through its prefixes, carrying facets
    let mut facets = DeducedFacets::seed(5);
    for k in 6..=7 {
        facets = check_subset(&PointSet::from_points(v[..k].iter().copied()), &facets).unwrap();
    }
    report("along the search path", &v, check_subset(&set, &facets));
}

fn report(label: &str, v: &[LatticePoint], result: Result<DeducedFacets, smooth_fano::Rejected>) {
    println!("{label}:");
    match result {
        Ok(facets) => {
            println!("{} facets deduced", facets.len());
            for f in facets.iter() {
                let mut labels: Vec<usize> = f
                    .vertices()
                    .iter()
                    .map(|x| v.iter().position(|y| y == x).unwrap() + 1)
                    .collect();
                labels.sort_unstable();
                println!("  {labels:?}");
            }
        }
        Err(e) => println!("rejected at step {}", e.step.step_number()),
    }
}
