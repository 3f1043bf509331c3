//! Two embeddings of the same hexagon reduce to one canonical vertex set.

use smooth_fano::{ord, polytope_from_vertices, LatticePoint, PointSet};

fn hexagon(cols: [[i64; 2]; 2]) -> PointSet {
    let c = cols.map(|v| LatticePoint::new(&v));
    [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, -1]]
        .iter()
        .map(|x| LatticePoint::new(x).apply_columns(&c))
        .collect()
}

fn main() {
    let a = polytope_from_vertices(&hexagon([[1, 0], [0, 1]])).unwrap();
    let b = polytope_from_vertices(&hexagon([[2, 1], [1, 1]])).unwrap();
    println!("first embedding:  {:?}", a.vertices());
    println!("second embedding: {:?}", b.vertices());
    println!("canonical form:   {:?}", ord(&a));
    assert_eq!(ord(&a), ord(&b));
    println!("special facets: {}", a.special_facets().count());
}
