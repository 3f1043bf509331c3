//! Cross-check the search against brute-force enumeration in dimension 3.

use smooth_fano::classify;
use smooth_fano::oracle::{are_isomorphic, brute_force_classify};

fn main() {
    let brute = brute_force_classify(3);
    let mut found = Vec::new();
    classify(3, |p| found.push(p));
    println!("brute force: {} classes, search: {} classes", brute.len(), found.len());
    for b in &brute {
        let m = found.iter().position(|f| are_isomorphic(b, f)).expect("every class is found");
        println!("{:>2} vertices  brute {:?}  ->  search #{}", b.n_vertices(), b.vertices(), m + 1);
    }
}
