//! The classification driver.
//!
//! Subsets of the candidate set are explored depth-first in increasing
//! order, starting from the standard basis. A subset is extended by a point
//! only if the extension survives [`check_subset`] and is minimal under
//! coordinate permutations; a subset is emitted if it is the vertex set of a
//! smooth Fano polytope and equals that polytope's canonical form. Emitted
//! polytopes come out strictly increasing and are never stored.
//!
//! The default engine keeps one facet stack for the whole path and passes
//! each child the list of candidates that survived the parent's facet
//! tests. Both tests that the filter applies only become harder to pass as
//! points are added, so the filtered candidates are exactly those that the
//! plain procedure would not reject on those grounds. [`Mode::Literal`] runs
//! the plain procedure for comparison.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::checksubset::{
    check_subset, check_subset_literal, examine, sum_tests, DeducedFacets, RejectStep, Rejected, SlotIter,
};
use crate::geometry::{build_polytope, FanoPolytope, RejectError};
use crate::lattice::{identity_simplex, LatticePoint, Simplex, MAX_DIM};
use crate::oracle::ord_by_definition;
use crate::order::{has_smaller_image, is_sd_minimal, is_sd_minimal_naive, no_smaller_special_embedding, PointSet};
use crate::wd::generate_wd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Shared facet stack, inherited candidate filtering, pruned symmetry
    /// tests.
    #[default]
    Optimized,
    /// The unmodified procedure with exhaustive symmetry tests. Intended for
    /// small dimensions only.
    Literal,
}

pub type ProgressFn = Arc<dyn Fn(&Progress) + Send + Sync>;

#[derive(Debug, Clone)]
pub struct Progress {
    pub nodes: u64,
    pub emitted: u64,
    pub depth: usize,
}

#[derive(Clone)]
pub struct ClassifyOptions {
    pub mode: Mode,
    /// Number of worker threads; 1 runs sequentially.
    pub workers: usize,
    /// Number of added points below which subtrees become parallel tasks.
    pub split_depth: usize,
    pub progress: Option<ProgressFn>,
    /// Nodes between progress callbacks.
    pub progress_every: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            mode: Mode::Optimized,
            workers: 1,
            split_depth: 2,
            progress: None,
            progress_every: 1 << 20,
        }
    }
}

impl std::fmt::Debug for ClassifyOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassifyOptions")
            .field("mode", &self.mode)
            .field("workers", &self.workers)
            .field("split_depth", &self.split_depth)
            .finish()
    }
}

/// Counters collected during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Statistics {
    pub dim: usize,
    /// Number of isomorphism classes emitted.
    pub total: u64,
    /// Emitted classes keyed by number of vertices.
    pub by_vertex_count: BTreeMap<usize, u64>,
    /// Number of search nodes visited.
    pub nodes: u64,
    /// Largest subset size reached.
    pub max_subset: usize,
    /// Extensions rejected by [`check_subset`], keyed by step.
    pub subset_rejections: BTreeMap<RejectStep, u64>,
    /// Candidates dropped before testing because a facet known at an
    /// ancestor already excludes them.
    pub inherited_prunes: u64,
    /// Extensions that are not minimal under coordinate permutations.
    pub not_minimal: u64,
    /// Subsets whose sum is not a non-negative combination of the basis.
    pub not_special: u64,
    /// Subsets whose convex hull failed verification, keyed by cause.
    pub hull_rejections: BTreeMap<&'static str, u64>,
    /// Verified polytopes with a smaller special embedding.
    pub not_canonical: u64,
}

impl Statistics {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            ..Default::default()
        }
    }

    fn record(&mut self, p: &FanoPolytope) {
        self.total += 1;
        *self.by_vertex_count.entry(p.n_vertices()).or_default() += 1;
    }

    fn reject(&mut self, step: RejectStep, count: u64) {
        if count > 0 {
            *self.subset_rejections.entry(step).or_default() += count;
        }
    }

    fn hull_reject(&mut self, e: &RejectError) {
        let name = match e {
            RejectError::TooFewPoints(_) => "too-few-points",
            RejectError::SeedNotContained(_) => "seed-missing",
            RejectError::NoApex { .. } => "no-apex",
            RejectError::AmbiguousApex { .. } => "ambiguous-apex",
            RejectError::NonUnimodular { .. } => "non-unimodular",
            RejectError::PointBeyondFacet { .. } => "point-beyond-facet",
            RejectError::PointOnFacet { .. } => "point-on-facet",
            RejectError::NotAVertex(_) => "not-a-vertex",
            RejectError::RidgeMismatch => "ridge-mismatch",
        };
        *self.hull_rejections.entry(name).or_default() += 1;
    }

    /// Adds the counters of `other`.
    pub fn merge(&mut self, other: &Statistics) {
        self.total += other.total;
        for (k, v) in &other.by_vertex_count {
            *self.by_vertex_count.entry(*k).or_default() += v;
        }
        self.nodes += other.nodes;
        self.max_subset = self.max_subset.max(other.max_subset);
        for (k, v) in &other.subset_rejections {
            *self.subset_rejections.entry(*k).or_default() += v;
        }
        self.inherited_prunes += other.inherited_prunes;
        self.not_minimal += other.not_minimal;
        self.not_special += other.not_special;
        for (k, v) in &other.hull_rejections {
            *self.hull_rejections.entry(k).or_default() += v;
        }
        self.not_canonical += other.not_canonical;
    }
}

/// A subset reached by the search together with the facets deduced on the
/// way to it.
#[derive(Clone, Debug)]
pub struct SearchNode {
    points: PointSet,
    facets: DeducedFacets,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("point {0:?} does not follow the current maximum")]
    NotIncreasing(LatticePoint),
    #[error(transparent)]
    Rejected(#[from] Rejected),
    #[error("extension is not minimal under coordinate permutations")]
    NotMinimal,
}

impl SearchNode {
    /// The standard basis with the standard simplex as its only facet.
    pub fn root(dim: usize) -> Self {
        Self {
            points: PointSet::standard_basis(dim),
            facets: DeducedFacets::seed(dim),
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn facets(&self) -> &DeducedFacets {
        &self.facets
    }

    pub fn max_point(&self) -> &LatticePoint {
        self.points.last().expect("nodes contain the basis")
    }

    pub fn dim(&self) -> usize {
        self.max_point().dim()
    }

    /// The child obtained by adding `v`, subject to the same tests the
    /// search applies.
    pub fn child(&self, v: LatticePoint) -> Result<SearchNode, ExtendError> {
        if v <= *self.max_point() {
            return Err(ExtendError::NotIncreasing(v));
        }
        let mut points = self.points.clone();
        points.insert(v);
        let facets = check_subset(&points, &self.facets)?;
        if !is_sd_minimal(&points) {
            return Err(ExtendError::NotMinimal);
        }
        Ok(SearchNode { points, facets })
    }

    /// Replays the path from the root to `vertices`, adding the non-basis
    /// points in increasing order.
    pub fn replay(vertices: &PointSet) -> Result<SearchNode, ExtendError> {
        let d = vertices.dim().expect("non-empty vertex set");
        let mut node = SearchNode::root(d);
        for v in vertices.iter().filter(|v| v.basis_index().is_none()) {
            node = node.child(*v)?;
        }
        Ok(node)
    }
}

/// Runs the classification for dimension `d` with default options, handing
/// every representative to `sink` in increasing order.
pub fn classify(d: usize, sink: impl FnMut(FanoPolytope)) -> Statistics {
    classify_with(d, &ClassifyOptions::default(), sink)
}

pub fn classify_with(d: usize, opts: &ClassifyOptions, sink: impl FnMut(FanoPolytope)) -> Statistics {
    assert!((1..=MAX_DIM).contains(&d), "dimension must be in 1..={MAX_DIM}");
    let w = generate_wd(d);
    add_point(&SearchNode::root(d), &w, opts, sink)
}

/// Explores the subtree below `node` (including `node` itself) over the
/// candidate set `w`.
pub fn add_point(node: &SearchNode, w: &PointSet, opts: &ClassifyOptions, mut sink: impl FnMut(FanoPolytope)) -> Statistics {
    match opts.mode {
        Mode::Literal => {
            let mut lit = Literal {
                w,
                stats: Statistics::new(node.dim()),
                sink: &mut sink,
            };
            lit.add_point(node.points.clone(), node.facets.clone());
            lit.stats
        }
        Mode::Optimized if opts.workers <= 1 => {
            let mut engine = Engine::new(node, w.points(), opts, &mut sink);
            let cands = engine.root_candidates();
            engine.add_point(&cands);
            engine.stats
        }
        Mode::Optimized => parallel(node, w.points(), opts, &mut sink),
    }
}

struct Literal<'a, S: FnMut(FanoPolytope)> {
    w: &'a PointSet,
    stats: Statistics,
    sink: &'a mut S,
}

impl<S: FnMut(FanoPolytope)> Literal<'_, S> {
    fn add_point(&mut self, v: PointSet, f: DeducedFacets) {
        let d = self.stats.dim;
        self.stats.nodes += 1;
        self.stats.max_subset = self.stats.max_subset.max(v.len());
        match build_polytope(&v, &identity_simplex(d)) {
            Ok(p) => {
                if ord_by_definition(&p) == v {
                    self.stats.record(&p);
                    (self.sink)(p);
                } else {
                    self.stats.not_canonical += 1;
                }
            }
            Err(e) => self.stats.hull_reject(&e),
        }
        let top = *v.last().expect("non-empty");
        for x in self.w.points_after(&top) {
            let mut next = v.clone();
            next.insert(*x);
            match check_subset_literal(&next, &f) {
                Err(r) => self.stats.reject(r.step, 1),
                Ok(f2) => {
                    if is_sd_minimal_naive(&next) {
                        self.add_point(next, f2);
                    } else {
                        self.stats.not_minimal += 1;
                    }
                }
            }
        }
    }
}

/// Depth-first search state shared along the current path.
struct Engine<'a, S: FnMut(FanoPolytope)> {
    d: usize,
    w: &'a [LatticePoint],
    /// Ascending: the basis, then the added points in insertion order.
    points: Vec<LatticePoint>,
    nu: LatticePoint,
    negatives: [u32; MAX_DIM],
    facets: Vec<Simplex>,
    seed: Simplex,
    stats: Statistics,
    sink: &'a mut S,
    progress: Option<ProgressFn>,
    progress_every: u64,
    /// When set, children at this many added points are collected instead
    /// of explored.
    split_at: Option<usize>,
    events: Vec<Event>,
}

enum Event {
    Emitted(FanoPolytope),
    Task(Task),
}

struct Task {
    points: Vec<LatticePoint>,
    facets: Vec<Simplex>,
    cands: Vec<u32>,
}

impl<'a, S: FnMut(FanoPolytope)> Engine<'a, S> {
    fn new(node: &SearchNode, w: &'a [LatticePoint], opts: &ClassifyOptions, sink: &'a mut S) -> Self {
        Self::from_parts(node.points.points().to_vec(), node.facets.as_slice().to_vec(), w, opts, sink)
    }

    fn from_parts(points: Vec<LatticePoint>, facets: Vec<Simplex>, w: &'a [LatticePoint], opts: &ClassifyOptions, sink: &'a mut S) -> Self {
        let d = points[0].dim();
        let nu = points.iter().fold(LatticePoint::zero(d), |a, p| a.add(p));
        let mut negatives = [0u32; MAX_DIM];
        for p in &points {
            for (i, n) in negatives.iter_mut().enumerate().take(d) {
                if p.coord(i) < 0 {
                    *n += 1;
                }
            }
        }
        Self {
            d,
            w,
            points,
            nu,
            negatives,
            facets,
            seed: identity_simplex(d),
            stats: Statistics::new(d),
            sink,
            progress: opts.progress.clone(),
            progress_every: opts.progress_every.max(1),
            split_at: None,
            events: Vec::new(),
        }
    }

    /// Candidates after the current maximum that pass every facet test.
    fn root_candidates(&mut self) -> Vec<u32> {
        let top = *self.points.last().expect("non-empty");
        let start = self.w.partition_point(|p| *p <= top);
        let base = self.nu.coord_sum();
        let mut out = Vec::new();
        for (i, x) in self.w.iter().enumerate().skip(start) {
            if base + x.coord_sum() < 0 {
                self.stats.reject(RejectStep::NegativeSum, (self.w.len() - i) as u64);
                break;
            }
            match self.facets.iter().try_for_each(|f| examine(f, x).map(|_| ())) {
                Ok(()) => out.push(i as u32),
                Err(step) => self.stats.reject(step, 1),
            }
        }
        out
    }

    fn depth(&self) -> usize {
        self.points.len() - self.d
    }

    fn add_point(&mut self, cands: &[u32]) {
        self.stats.nodes += 1;
        self.stats.max_subset = self.stats.max_subset.max(self.points.len());
        if let Some(cb) = &self.progress {
            if self.stats.nodes.is_multiple_of(self.progress_every) {
                cb(&Progress {
                    nodes: self.stats.nodes,
                    emitted: self.stats.total,
                    depth: self.depth(),
                });
            }
        }
        self.try_emit();
        let base_sum = self.nu.coord_sum();
        for (k, &wi) in cands.iter().enumerate() {
            let v = self.w[wi as usize];
            // sums are non-increasing along the candidates
            if base_sum + v.coord_sum() < 0 {
                self.stats.reject(RejectStep::NegativeSum, (cands.len() - k) as u64);
                break;
            }
            let nu = self.nu.add(&v);
            if let Err(step) = sum_tests(&nu) {
                self.stats.reject(step, 1);
                continue;
            }
            let base = self.facets.len();
            if let Err(step) = self.extend(&v, base) {
                self.stats.reject(step, 1);
                self.facets.truncate(base);
                continue;
            }
            self.points.push(v);
            if has_smaller_image(&self.points, &self.points) {
                self.stats.not_minimal += 1;
                self.points.pop();
                self.facets.truncate(base);
                continue;
            }
            let child = self.child_candidates(&cands[k + 1..], nu.coord_sum(), base);
            let saved_nu = self.nu;
            self.nu = nu;
            for i in 0..self.d {
                if v.coord(i) < 0 {
                    self.negatives[i] += 1;
                }
            }
            if self.split_at == Some(self.depth()) {
                self.events.push(Event::Task(Task {
                    points: self.points.clone(),
                    facets: self.facets.clone(),
                    cands: child,
                }));
            } else {
                self.add_point(&child);
            }
            for i in 0..self.d {
                if v.coord(i) < 0 {
                    self.negatives[i] -= 1;
                }
            }
            self.nu = saved_nu;
            self.points.pop();
            self.facets.truncate(base);
        }
    }

    /// Filters the remaining candidates against the facets deduced for the
    /// new child, and against the sum bound.
    fn child_candidates(&mut self, rest: &[u32], sum: i64, base: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(rest.len());
        let new_facets = &self.facets[base..];
        let mut pruned = 0u64;
        for (k, &wi) in rest.iter().enumerate() {
            let x = &self.w[wi as usize];
            if sum + x.coord_sum() < 0 {
                pruned += (rest.len() - k) as u64;
                break;
            }
            if new_facets.iter().all(|f| examine(f, x).is_ok()) {
                out.push(wi);
            } else {
                pruned += 1;
            }
        }
        self.stats.inherited_prunes += pruned;
        out
    }

    /// Deduces the facets implied by adding `v`, pushing them above `base`.
    /// Facets below `base` are closed with respect to the current points and
    /// already known to pass every test against `v`.
    fn extend(&mut self, v: &LatticePoint, base: usize) -> Result<(), RejectStep> {
        for i in 0..self.d {
            if v.coord(i) < 0 && self.negatives[i] == 0 {
                let s = self.seed.replace_vertex(i, v).map_err(|_| RejectStep::NotUnimodular)?;
                self.facets.push(s);
            }
        }
        for idx in 0..base {
            let f = &self.facets[idx];
            debug_assert!(examine(f, v).is_ok());
            if f.normal().pair(v) != 0 {
                continue;
            }
            let mut mask = 0u32;
            for (slot, u) in f.dual_basis().iter().enumerate() {
                if u.pair(v) == -1 {
                    mask |= 1 << slot;
                }
            }
            for slot in SlotIter(mask) {
                let nb = self.facets[idx].replace_vertex(slot, v).expect("coefficient -1 gives a basis");
                self.push_new(nb, base);
            }
        }
        let mut q = base;
        while q < self.facets.len() {
            for j in 0..=self.points.len() {
                let x = if j < self.points.len() { self.points[j] } else { *v };
                let mask = examine(&self.facets[q], &x)?;
                for slot in SlotIter(mask) {
                    let nb = self.facets[q].replace_vertex(slot, &x).expect("coefficient -1 gives a basis");
                    self.push_new(nb, 0);
                }
            }
            q += 1;
        }
        Ok(())
    }

    /// Pushes `s` unless a facet at or above `from` has the same vertex set.
    #[inline]
    fn push_new(&mut self, s: Simplex, from: usize) {
        if !self.facets[from..].iter().any(|f| f.same_vertex_set(&s)) {
            self.facets.push(s);
        }
    }

    fn try_emit(&mut self) {
        if self.points.len() <= self.d {
            self.stats.hull_reject(&RejectError::TooFewPoints(self.points.len()));
            return;
        }
        if self.nu.coords().iter().any(|&c| c < 0) {
            self.stats.not_special += 1;
            return;
        }
        let set = PointSet::from_sorted(self.points.clone());
        match build_polytope(&set, &self.seed) {
            Err(e) => self.stats.hull_reject(&e),
            Ok(p) => {
                if no_smaller_special_embedding(&p) {
                    self.stats.record(&p);
                    if self.split_at.is_some() {
                        self.events.push(Event::Emitted(p));
                    } else {
                        (self.sink)(p);
                    }
                } else {
                    self.stats.not_canonical += 1;
                }
            }
        }
    }
}

fn parallel<S: FnMut(FanoPolytope)>(node: &SearchNode, w: &[LatticePoint], opts: &ClassifyOptions, sink: &mut S) -> Statistics {
    let mut discard = |_: FanoPolytope| {};
    let mut engine = Engine::new(node, w, opts, &mut discard);
    engine.split_at = Some(engine.depth() + opts.split_depth.max(1));
    let cands = engine.root_candidates();
    engine.add_point(&cands);
    let mut stats = engine.stats;
    let events = std::mem::take(&mut engine.events);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .expect("thread pool");
    let results: Vec<(Vec<FanoPolytope>, Option<Statistics>)> = pool.install(|| {
        events
            .into_par_iter()
            .map(|ev| match ev {
                Event::Emitted(p) => (vec![p], None),
                Event::Task(t) => {
                    let mut out = Vec::new();
                    let mut push = |p: FanoPolytope| out.push(p);
                    let mut e = Engine::from_parts(t.points, t.facets, w, opts, &mut push);
                    e.add_point(&t.cands);
                    let s = e.stats;
                    (out, Some(s))
                }
            })
            .collect()
    });
    let mut all = Vec::new();
    for (polys, s) in results {
        all.extend(polys);
        if let Some(s) = s {
            stats.merge(&s);
        }
    }
    all.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    for p in all {
        sink(p);
    }
    stats
}
