//! Write a classification to a file, read it back and re-check it, then
//! show that a damaged copy fails.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use smooth_fano::cli::verify_records;
use smooth_fano::io::{read_records, Format, PolytopeWriter};
use smooth_fano::{classify, LatticePoint};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("smooth-fano-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("dim4.txt");
    let mut w = PolytopeWriter::new(BufWriter::new(File::create(&path)?), Format::Text);
    classify(4, |p| w.write(&p).unwrap());
    w.flush()?;
    println!("wrote {} records to {}", w.written(), path.display());

    let mut records = read_records(BufReader::new(File::open(&path)?)).expect("well-formed file");
    println!("problems: {:?}", verify_records(&records));

    let last = records[10].vertices.last_mut().unwrap();
    *last = last.add(&LatticePoint::basis(4, 0));
    for p in verify_records(&records) {
        println!("after damage: {p}");
    }
    Ok(())
}
