//! Classification of smooth Fano polytopes up to lattice isomorphism.
//!
//! The search enumerates vertex sets of special embeddings in increasing
//! order, pruning with facet deductions, and emits each isomorphism class
//! exactly once in canonical form.
//!
//! ```
//! let mut count = 0;
//! smooth_fano::classify(2, |_| count += 1);
//! assert_eq!(count, 5);
//! ```

pub mod checksubset;
pub mod cli;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod order;
pub mod sfp;
pub mod wd;

pub use checksubset::{check_subset, DeducedFacets, RejectStep, Rejected};
pub use geometry::{build_polytope, polytope_from_vertices, FanoPolytope, RejectError};
pub use lattice::{build_simplex, change_basis, identity_simplex, LatticePoint, Simplex};
pub use order::{is_sd_minimal, ord, PointSet};
pub use sfp::{classify, classify_with, ClassifyOptions, Mode, Statistics};
pub use wd::generate_wd;
