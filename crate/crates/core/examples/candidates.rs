//! Sizes of the candidate vertex sets, and the full list in dimension 2.

use smooth_fano::generate_wd;

fn main() {
    for p in &generate_wd(2) {
        println!("{p}");
    }
    for d in 1..=6 {
        println!("d={d}: {} candidates", generate_wd(d).len());
    }
}
