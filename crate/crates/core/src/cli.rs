//! Command-line front end. Every subcommand writes results to standard
//! output (or `--out`) and diagnostics to standard error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::geometry::polytope_from_vertices;
use crate::io::{read_records, write_table, Format, PolytopeWriter, Record};
use crate::lattice::MAX_DIM;
use crate::oracle::{are_isomorphic, brute_force_classify, MAX_ORACLE_DIM};
use crate::order::{ord, PointSet};
use crate::sfp::{classify_with, ClassifyOptions, Mode, Progress, Statistics};
use crate::wd::generate_wd;

#[derive(Debug, Parser)]
#[command(name = "sfp", version, about = "Classify smooth Fano polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all smooth Fano polytopes of one dimension.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_DIM as i64))]
        dim: u8,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Number of worker threads.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
        /// Depth at which the search tree is split into parallel tasks.
        #[arg(long, default_value_t = 2)]
        split_depth: usize,
        /// Run the unoptimized reference search.
        #[arg(long)]
        literal: bool,
        /// Print counters and the per-vertex-count histogram to standard error.
        #[arg(long)]
        stats: bool,
        /// Print a node-count heartbeat to standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Classify dimensions 1..=max-dim and print the count table.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_DIM as i64))]
        max_dim: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
    },
    /// Print the candidate vertex set.
    Wd {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_DIM as i64))]
        dim: u8,
        /// Print only the number of points.
        #[arg(long)]
        count: bool,
    },
    /// Re-check a file of polytopes.
    Verify {
        /// Input file, or `-` for standard input.
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Cross-check the classifier against brute force.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_ORACLE_DIM as i64))]
        dim: u8,
    },
}

/// Parses `args` and runs the selected subcommand.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn options(parallel: u16, split_depth: usize, literal: bool, progress: bool) -> ClassifyOptions {
    let mut opts = ClassifyOptions {
        mode: if literal { Mode::Literal } else { Mode::Optimized },
        workers: parallel as usize,
        split_depth,
        ..ClassifyOptions::default()
    };
    if progress {
        opts.progress_every = 1 << 14;
        opts.progress = Some(Arc::new(|p: &Progress| {
            eprintln!("nodes {} emitted {} depth {}", p.nodes, p.emitted, p.depth);
        }));
    }
    opts
}

fn run(command: Command) -> io::Result<ExitCode> {
    match command {
        Command::Classify { dim, out, format, parallel, split_depth, literal, stats, progress } => {
            let sink: Box<dyn Write> = match out {
                Some(path) => Box::new(File::create(path)?),
                None => Box::new(io::stdout().lock()),
            };
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Structured => Format::Structured,
            };
            let mut writer = PolytopeWriter::new(BufWriter::new(sink), format);
            let mut failure = None;
            let opts = options(parallel, split_depth, literal, progress);
            let st = classify_with(dim as usize, &opts, |p| {
                if failure.is_none() {
                    if let Err(e) = writer.write(&p) {
                        failure = Some(e);
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            writer.flush()?;
            if stats {
                print_stats(&st);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { max_dim, parallel } => {
            let opts = options(parallel, 2, false, false);
            let all: Vec<Statistics> = (1..=max_dim as usize).map(|d| classify_with(d, &opts, |_| {})).collect();
            let mut out = io::stdout().lock();
            write_table(&all, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wd { dim, count } => {
            let w = generate_wd(dim as usize);
            let mut out = BufWriter::new(io::stdout().lock());
            if count {
                writeln!(out, "{}", w.len())?;
            } else {
                for p in &w {
                    let line: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
                    writeln!(out, "{}", line.join(" "))?;
                }
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => {
            let reader: Box<dyn BufRead> = if input == "-" {
                Box::new(io::stdin().lock())
            } else {
                Box::new(BufReader::new(File::open(&input)?))
            };
            let records = match read_records(reader) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("verify: {e}");
                    return Ok(ExitCode::from(1));
                }
            };
            let problems = verify_records(&records);
            for p in &problems {
                eprintln!("verify: {p}");
            }
            if problems.is_empty() {
                println!("ok {} polytopes", records.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Oracle { dim } => {
            let d = dim as usize;
            let brute = brute_force_classify(d);
            let mut found = Vec::new();
            classify_with(d, &ClassifyOptions::default(), |p| found.push(p));
            let unmatched_brute = brute.iter().filter(|b| !found.iter().any(|f| are_isomorphic(b, f))).count();
            let unmatched_sfp = found.iter().filter(|f| !brute.iter().any(|b| are_isomorphic(b, f))).count();
            println!("brute force {} classes, classifier {} classes", brute.len(), found.len());
            if unmatched_brute == 0 && unmatched_sfp == 0 && brute.len() == found.len() {
                println!("agree");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("disagree: {unmatched_brute} brute-force classes unmatched, {unmatched_sfp} classifier classes unmatched");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn print_stats(st: &Statistics) {
    eprintln!("dim {}", st.dim);
    eprintln!("polytopes {}", st.total);
    eprintln!("nodes {}", st.nodes);
    eprintln!("largest subset {}", st.max_subset);
    for (step, count) in &st.subset_rejections {
        eprintln!("rejected at step {} ({}) {}", step.step_number(), step.name(), count);
    }
    eprintln!("inherited prunes {}", st.inherited_prunes);
    eprintln!("not minimal {}", st.not_minimal);
    eprintln!("not special {}", st.not_special);
    for (reason, count) in &st.hull_rejections {
        eprintln!("hull rejected ({reason}) {count}");
    }
    eprintln!("not canonical {}", st.not_canonical);
    for (n, count) in &st.by_vertex_count {
        eprintln!("n={n} {count}");
    }
}

/// Checks a list of records: each is a sorted vertex list of a smooth Fano
/// polytope in canonical form, records are strictly increasing, and no two
/// records with the same vertex count are isomorphic. Returns one message
/// per problem found.
pub fn verify_records(records: &[Record]) -> Vec<String> {
    let mut problems = Vec::new();
    let mut previous: Option<PointSet> = None;
    let mut seen: std::collections::BTreeMap<usize, std::collections::BTreeSet<PointSet>> = Default::default();
    for (i, rec) in records.iter().enumerate() {
        let label = rec.index.unwrap_or(i as u64 + 1);
        let v = PointSet::from_points(rec.vertices.iter().copied());
        if v.len() != rec.vertices.len() || v.iter().ne(rec.vertices.iter()) {
            problems.push(format!("record {label}: vertices not strictly increasing"));
        }
        if rec.vertices.iter().any(|p| p.dim() != rec.vertices[0].dim()) {
            problems.push(format!("record {label}: mixed dimensions"));
            continue;
        }
        let p = match polytope_from_vertices(&v) {
            Ok(p) => p,
            Err(e) => {
                problems.push(format!("record {label}: not a smooth Fano polytope: {e}"));
                continue;
            }
        };
        let canon = ord(&p);
        if canon != v {
            problems.push(format!("record {label}: not in canonical form"));
        }
        if let Some(prev) = &previous {
            if *prev >= v {
                problems.push(format!("record {label}: out of order"));
            }
        }
        // equal canonical forms are exactly the isomorphic pairs
        if !seen.entry(v.len()).or_default().insert(canon) {
            problems.push(format!("record {label}: isomorphic to an earlier record"));
        }
        previous = Some(v);
    }
    problems
}
