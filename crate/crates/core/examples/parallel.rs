//! Split the search tree into tasks for a thread pool; the output matches a
//! sequential run.

use std::time::Instant;

use smooth_fano::{classify_with, ClassifyOptions};

fn main() {
    let d: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let workers = std::thread::available_parallelism().map_or(2, |n| n.get()).max(2);
    let mut seq = Vec::new();
    let t = Instant::now();
    classify_with(d, &ClassifyOptions::default(), |p| seq.push(p.vertices().clone()));
    println!("sequential: {} in {:.2?}", seq.len(), t.elapsed());

    let mut par = Vec::new();
    let opts = ClassifyOptions { workers, split_depth: 2, ..Default::default() };
    let t = Instant::now();
    let stats = classify_with(d, &opts, |p| par.push(p.vertices().clone()));
    println!("{workers} workers: {} in {:.2?}, {} nodes", par.len(), t.elapsed(), stats.nodes);
    assert_eq!(seq, par);
}
