//! Walk the search tree by hand from the standard basis, showing which
//! extensions survive and what each one deduces.

use smooth_fano::sfp::SearchNode;
use smooth_fano::{generate_wd, LatticePoint};

fn main() {
    let root = SearchNode::root(2);
    let w = generate_wd(2);
    for x in w.points_after(root.max_point()) {
        match root.child(*x) {
            Ok(node) => {
                let facets: Vec<Vec<LatticePoint>> = node.facets().iter().map(|f| f.sorted_vertices()).collect();
                println!("add {x}: {} facets known {facets:?}", facets.len());
            }
            Err(e) => println!("add {x}: {e}"),
        }
    }
}
