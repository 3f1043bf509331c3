//! Pruning of partial vertex sets by facet deduction.
//!
//! Given a set `V` that might be an initial segment of the vertex set of a
//! special embedding, and some simplices already known to be facets of that
//! embedding, deduce further facets and look for contradictions with the
//! structural bounds every smooth Fano polytope satisfies. A rejection is a
//! proof that no such embedding exists; acceptance proves nothing.

use thiserror::Error;

use crate::lattice::{identity_simplex, LatticePoint, Simplex, MAX_DIM};
use crate::order::PointSet;

/// Which test rejected the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectStep {
    /// `<u_I, ν> < 0`
    NegativeSum,
    /// `<u_I^{e_i}, ν> > 1 + <u_I, ν>`
    CoefficientSum,
    /// a deduced simplex is not a lattice basis
    NotUnimodular,
    /// a point lies beyond a deduced facet
    BeyondFacet,
    /// a point has a coefficient below the lower bound for its height
    CoefficientBound,
}

impl RejectStep {
    pub const ALL: [RejectStep; 5] = [
        RejectStep::NegativeSum,
        RejectStep::CoefficientSum,
        RejectStep::NotUnimodular,
        RejectStep::BeyondFacet,
        RejectStep::CoefficientBound,
    ];

    /// Position of the test in the procedure (2, 3, 6, 7 or 8).
    pub fn step_number(self) -> u8 {
        match self {
            RejectStep::NegativeSum => 2,
            RejectStep::CoefficientSum => 3,
            RejectStep::NotUnimodular => 6,
            RejectStep::BeyondFacet => 7,
            RejectStep::CoefficientBound => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RejectStep::NegativeSum => "negative-sum",
            RejectStep::CoefficientSum => "coefficient-sum",
            RejectStep::NotUnimodular => "not-unimodular",
            RejectStep::BeyondFacet => "beyond-facet",
            RejectStep::CoefficientBound => "coefficient-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("subset rejected at step {} ({})", .step.step_number(), .step.name())]
pub struct Rejected {
    pub step: RejectStep,
}

impl From<RejectStep> for Rejected {
    fn from(step: RejectStep) -> Self {
        Rejected { step }
    }
}

/// Simplices known to be facets, always including the standard simplex.
#[derive(Clone, Debug)]
pub struct DeducedFacets {
    facets: Vec<Simplex>,
}

impl DeducedFacets {
    /// `{I}`.
    pub fn seed(dim: usize) -> Self {
        Self {
            facets: vec![identity_simplex(dim)],
        }
    }

    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut out = Self { facets: Vec::new() };
        for s in simplices {
            out.insert(s);
        }
        out
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| f.same_vertex_set(s))
    }

    /// Adds `s` unless a simplex with the same vertex set is present.
    pub fn insert(&mut self, s: Simplex) -> bool {
        if self.contains(&s) {
            false
        } else {
            self.facets.push(s);
            true
        }
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Simplex> {
        self.facets.iter()
    }

    pub fn as_slice(&self) -> &[Simplex] {
        &self.facets
    }

    /// Same vertex sets, in any order.
    pub fn same_set(&self, other: &DeducedFacets) -> bool {
        self.len() == other.len() && self.iter().all(|f| other.contains(f))
    }
}

/// Tests one (facet, point) pair: the point must lie beneath the facet and
/// its coefficients must respect the lower bound for its height. On success
/// returns the bitmask of slots `w` with `<u_F, x> = 0` and
/// `<u_F^w, x> = -1`, each of which yields a new facet.
#[inline]
pub(crate) fn examine(f: &Simplex, x: &LatticePoint) -> Result<u32, RejectStep> {
    let h = f.normal().pair(x);
    if h > 1 {
        return Err(RejectStep::BeyondFacet);
    }
    let lower = match h {
        1 => 0,
        0 => -1,
        _ => h,
    };
    let mut derive = 0u32;
    for (slot, u) in f.dual_basis().iter().enumerate() {
        let c = u.pair(x);
        if c < lower {
            return Err(RejectStep::CoefficientBound);
        }
        if h == 0 && c == -1 {
            derive |= 1 << slot;
        }
    }
    Ok(derive)
}

/// Steps 2 and 3: the sum tests on `ν = Σ V`.
#[inline]
pub(crate) fn sum_tests(nu: &LatticePoint) -> Result<(), RejectStep> {
    let s = nu.coord_sum();
    if s < 0 {
        return Err(RejectStep::NegativeSum);
    }
    if nu.coords().iter().any(|&c| c > 1 + s) {
        return Err(RejectStep::CoefficientSum);
    }
    Ok(())
}

/// Step 5: the neighbours of `I` forced by the ordering. For each `i` such
/// that `max V` is the only point with negative `i`-th coordinate, returns
/// the simplex `I` with `e_i` replaced by `max V`.
pub(crate) fn forced_neighbours(points: &[LatticePoint]) -> Result<Vec<Simplex>, RejectStep> {
    let Some(top) = points.last() else {
        return Ok(Vec::new());
    };
    let d = top.dim();
    let identity = identity_simplex(d);
    let mut out = Vec::new();
    for i in 0..d {
        if top.coord(i) >= 0 {
            continue;
        }
        let unique = points[..points.len() - 1].iter().all(|x| x.coord(i) >= 0);
        if unique {
            let s = identity
                .replace_vertex(i, top)
                .map_err(|_| RejectStep::NotUnimodular)?;
            out.push(s);
        }
    }
    Ok(out)
}

fn preamble(v: &PointSet, f: &DeducedFacets) -> Result<DeducedFacets, Rejected> {
    let nu = v.sum().expect("V contains the standard basis");
    sum_tests(&nu)?;
    let mut out = f.clone();
    for s in forced_neighbours(v.points())? {
        out.insert(s);
    }
    Ok(out)
}

/// Deduces facets of any special embedding having `v` as an initial segment
/// of its vertex set and every simplex of `f` as a facet, or rejects `v`.
///
/// The deduction closes the facet set under the height-zero rule using a
/// work queue; the result is independent of processing order.
pub fn check_subset(v: &PointSet, f: &DeducedFacets) -> Result<DeducedFacets, Rejected> {
    let mut out = preamble(v, f)?;
    let mut next = 0;
    while next < out.facets.len() {
        for x in v.iter() {
            let derive = examine(&out.facets[next], x)?;
            for slot in SlotIter(derive) {
                let nb = out.facets[next]
                    .replace_vertex(slot, x)
                    .expect("coefficient -1 gives a basis");
                out.insert(nb);
            }
        }
        next += 1;
    }
    Ok(out)
}

/// The procedure exactly as stated: every test over every facet, restarting
/// after each newly deduced facet.
pub fn check_subset_literal(v: &PointSet, f: &DeducedFacets) -> Result<DeducedFacets, Rejected> {
    let mut out = preamble(v, f)?;
    loop {
        for s in out.iter() {
            for x in v.iter() {
                if s.normal().pair(x) > 1 {
                    return Err(RejectStep::BeyondFacet.into());
                }
            }
        }
        for s in out.iter() {
            for x in v.iter() {
                examine(s, x)?;
            }
        }
        let mut added = None;
        'search: for s in out.iter() {
            for x in v.iter() {
                if s.normal().pair(x) != 0 {
                    continue;
                }
                for (slot, u) in s.dual_basis().iter().enumerate() {
                    if u.pair(x) == -1 {
                        let nb = s.replace_vertex(slot, x).expect("coefficient -1 gives a basis");
                        if !out.contains(&nb) {
                            added = Some(nb);
                            break 'search;
                        }
                    }
                }
            }
        }
        match added {
            Some(nb) => {
                out.facets.push(nb);
            }
            None => return Ok(out),
        }
    }
}

/// Iterates the set bits of a slot mask.
pub(crate) struct SlotIter(pub u32);

impl Iterator for SlotIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

const _: () = assert!(MAX_DIM <= 32);
