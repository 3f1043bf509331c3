//! Classify one dimension and print the vertex-count histogram.
//!
//! ```text
//! cargo run --release --example classify -- 5
//! ```

use smooth_fano::classify;

fn main() {
    let d: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut largest = None;
    let stats = classify(d, |p| {
        if largest.as_ref().is_none_or(|q: &smooth_fano::FanoPolytope| p.n_vertices() > q.n_vertices()) {
            largest = Some(p);
        }
    });
    println!("{} smooth Fano polytopes of dimension {d}", stats.total);
    for (n, count) in &stats.by_vertex_count {
        println!("  {n:>2} vertices: {count}");
    }
    println!("search nodes: {}", stats.nodes);
    if let Some(p) = largest {
        println!("one with the most vertices:");
        for v in p.vertices() {
            println!("  {v}");
        }
    }
}
