//! The table of class counts by dimension and number of vertices.

use smooth_fano::io::write_table;
use smooth_fano::{classify_with, ClassifyOptions};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let opts = ClassifyOptions::default();
    let stats: Vec<_> = (1..=max).map(|d| classify_with(d, &opts, |_| {})).collect();
    write_table(&stats, &mut std::io::stdout().lock()).unwrap();
}
