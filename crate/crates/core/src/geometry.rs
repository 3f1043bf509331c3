//! Boundary construction and verification for simplicial polytopes with the
//! origin in the interior.
//!
//! Starting from one known facet, the neighbour across each ridge is found
//! with the argmax rule: among the points with negative coefficient on the
//! dropped vertex, the apex of the neighbouring facet is the one maximising
//! the facet normal. Every new facet is checked against all points, so a
//! traversal that closes up is a proof that the points are the vertices of a
//! smooth Fano polytope.

use std::collections::HashMap;

use thiserror::Error;

use crate::lattice::{LatticePoint, Simplex, MAX_DIM};
use crate::order::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ApexError {
    #[error("no point lies beyond the ridge")]
    NotFound,
    #[error("the apex is not unique")]
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RejectError {
    #[error("need at least d+1 points, got {0}")]
    TooFewPoints(usize),
    #[error("seed vertex {0:?} is not among the points")]
    SeedNotContained(LatticePoint),
    #[error("no apex across a ridge of {facet:?}")]
    NoApex { facet: Vec<LatticePoint> },
    #[error("ambiguous apex across a ridge of {facet:?}")]
    AmbiguousApex { facet: Vec<LatticePoint> },
    #[error("neighbour facet with apex {apex:?} is not unimodular")]
    NonUnimodular { apex: LatticePoint },
    #[error("point {point:?} lies beyond facet {facet:?}")]
    PointBeyondFacet {
        point: LatticePoint,
        facet: Vec<LatticePoint>,
    },
    #[error("point {point:?} lies on facet {facet:?} without being one of its vertices")]
    PointOnFacet {
        point: LatticePoint,
        facet: Vec<LatticePoint>,
    },
    #[error("point {0:?} is not a vertex")]
    NotAVertex(LatticePoint),
    #[error("ridge adjacency is not symmetric")]
    RidgeMismatch,
}

/// A verified smooth Fano polytope with its complete facet list.
#[derive(Clone)]
pub struct FanoPolytope {
    vertices: PointSet,
    facets: Vec<Simplex>,
    adjacency: Vec<[u32; MAX_DIM]>,
}

impl FanoPolytope {
    pub fn dim(&self) -> usize {
        self.facets[0].dim()
    }

    pub fn vertices(&self) -> &PointSet {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Index of the facet sharing with facet `facet` the ridge opposite its
    /// vertex `slot`.
    pub fn neighbor(&self, facet: usize, slot: usize) -> usize {
        self.adjacency[facet][slot] as usize
    }

    /// Assembles a polytope from an already verified facet list, computing
    /// ridge adjacency by comparing vertex sets.
    pub(crate) fn from_facets(vertices: PointSet, facets: Vec<Simplex>) -> Self {
        let d = facets[0].dim();
        let mut adjacency = vec![[u32::MAX; MAX_DIM]; facets.len()];
        for (i, f) in facets.iter().enumerate() {
            for slot in 0..d {
                let ridge: Vec<&LatticePoint> = f
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != slot)
                    .map(|(_, v)| v)
                    .collect();
                if let Some(j) = facets
                    .iter()
                    .enumerate()
                    .position(|(j, g)| j != i && ridge.iter().all(|v| g.contains_vertex(v)))
                {
                    adjacency[i][slot] = j as u32;
                }
            }
        }
        Self {
            vertices,
            facets,
            adjacency,
        }
    }

    pub fn vertex_sum(&self) -> LatticePoint {
        self.vertices.sum().expect("polytope has vertices")
    }

    pub fn is_special(&self, facet: &Simplex) -> bool {
        let nu = self.vertex_sum();
        facet.dual_basis().iter().all(|u| u.pair(&nu) >= 0)
    }

    /// Facets `F` for which the vertex sum is a non-negative combination of
    /// the vertices of `F`.
    pub fn special_facets(&self) -> impl Iterator<Item = &Simplex> + '_ {
        let nu = self.vertex_sum();
        self.facets
            .iter()
            .filter(move |f| f.dual_basis().iter().all(|u| u.pair(&nu) >= 0))
    }

    /// Index of the facet with the given vertex set.
    pub fn find_facet(&self, facet: &Simplex) -> Option<usize> {
        self.facets.iter().position(|f| f.same_vertex_set(facet))
    }

    pub fn has_facet(&self, facet: &Simplex) -> bool {
        self.find_facet(facet).is_some()
    }
}

impl std::fmt::Debug for FanoPolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FanoPolytope")
            .field("vertices", &self.vertices)
            .field("facets", &self.facets.len())
            .finish()
    }
}

/// Apex of the facet adjacent to `facet` across the ridge opposite vertex
/// `slot`: the unique maximiser of `u_F` among points with negative
/// coefficient on that vertex.
pub fn neighbor_apex(facet: &Simplex, slot: usize, points: &[LatticePoint]) -> Result<LatticePoint, ApexError> {
    let dual = facet.dual(slot);
    let normal = facet.normal();
    let mut best: Option<(i64, LatticePoint)> = None;
    let mut tied = false;
    for x in points {
        if dual.pair(x) >= 0 {
            continue;
        }
        let h = normal.pair(x);
        match best {
            Some((b, _)) if h < b => {}
            Some((b, _)) if h == b => tied = true,
            _ => {
                best = Some((h, *x));
                tied = false;
            }
        }
    }
    match best {
        None => Err(ApexError::NotFound),
        Some(_) if tied => Err(ApexError::Ambiguous),
        Some((_, x)) => Ok(x),
    }
}

/// `<u_F', x>` for the neighbour `F'` across the ridge opposite `slot` with
/// apex `apex`, computed from `F` alone.
pub fn neighbor_normal_pairing(facet: &Simplex, slot: usize, apex: &LatticePoint, x: &LatticePoint) -> i64 {
    let normal = facet.normal();
    normal.pair(x) + facet.dual(slot).pair(x) * (normal.pair(apex) - 1)
}

fn facet_points(f: &Simplex) -> Vec<LatticePoint> {
    f.sorted_vertices()
}

fn check_beneath(f: &Simplex, points: &[LatticePoint]) -> Result<(), RejectError> {
    let normal = f.normal();
    for x in points {
        let h = normal.pair(x);
        if h > 1 {
            return Err(RejectError::PointBeyondFacet {
                point: *x,
                facet: facet_points(f),
            });
        }
        if h == 1 && !f.contains_vertex(x) {
            return Err(RejectError::PointOnFacet {
                point: *x,
                facet: facet_points(f),
            });
        }
    }
    Ok(())
}

/// Builds the boundary of `conv(points)` by ridge pivoting from `seed`,
/// succeeding iff the points are exactly the vertices of a smooth Fano
/// polytope having `seed` as a facet.
pub fn build_polytope(points: &PointSet, seed: &Simplex) -> Result<FanoPolytope, RejectError> {
    let d = seed.dim();
    let pts = points.points();
    if pts.len() < d + 1 {
        return Err(RejectError::TooFewPoints(pts.len()));
    }
    if let Some(v) = seed.vertices().iter().find(|v| !points.contains(v)) {
        return Err(RejectError::SeedNotContained(*v));
    }
    check_beneath(seed, pts)?;
    let mut facets = vec![seed.clone()];
    let mut adjacency: Vec<[u32; MAX_DIM]> = vec![[u32::MAX; MAX_DIM]];
    let mut by_key: HashMap<u64, Vec<usize>> = HashMap::new();
    by_key.entry(seed.key()).or_default().push(0);
    let mut next = 0;
    while next < facets.len() {
        for slot in 0..d {
            let f = &facets[next];
            let apex = neighbor_apex(f, slot, pts).map_err(|e| match e {
                ApexError::NotFound => RejectError::NoApex { facet: facet_points(f) },
                ApexError::Ambiguous => RejectError::AmbiguousApex { facet: facet_points(f) },
            })?;
            let nb = f
                .replace_vertex(slot, &apex)
                .map_err(|_| RejectError::NonUnimodular { apex })?;
            let existing = by_key
                .get(&nb.key())
                .and_then(|ids| ids.iter().copied().find(|&i| facets[i].same_vertex_set(&nb)));
            let id = match existing {
                Some(id) => id,
                None => {
                    check_beneath(&nb, pts)?;
                    let id = facets.len();
                    by_key.entry(nb.key()).or_default().push(id);
                    facets.push(nb);
                    adjacency.push([u32::MAX; MAX_DIM]);
                    id
                }
            };
            adjacency[next][slot] = id as u32;
        }
        next += 1;
    }
    // every ridge must be shared by exactly two facets
    for (f, adj) in adjacency.iter().enumerate() {
        for slot in 0..d {
            let g = adj[slot] as usize;
            let back = facets[g]
                .vertices()
                .iter()
                .position(|v| !facets[f].contains_vertex(v));
            match back {
                Some(j) if adjacency[g][j] as usize == f && g != f => {}
                _ => return Err(RejectError::RidgeMismatch),
            }
        }
    }
    if let Some(x) = pts
        .iter()
        .find(|x| !facets.iter().any(|f| f.contains_vertex(x)))
    {
        return Err(RejectError::NotAVertex(*x));
    }
    Ok(FanoPolytope {
        vertices: points.clone(),
        facets,
        adjacency,
    })
}

/// Builds the polytope without a known facet. Tries the standard simplex
/// first when all basis vectors are present, then every unimodular
/// `d`-subset as the seed.
pub fn polytope_from_vertices(points: &PointSet) -> Result<FanoPolytope, RejectError> {
    let d = points.dim().ok_or(RejectError::TooFewPoints(0))?;
    let basis = PointSet::standard_basis(d);
    let mut last = RejectError::TooFewPoints(points.len());
    if basis.is_subset(points) {
        match build_polytope(points, &crate::lattice::identity_simplex(d)) {
            Ok(p) => return Ok(p),
            Err(e) => last = e,
        }
    }
    for combo in itertools::Itertools::combinations(points.iter().copied(), d) {
        let Ok(seed) = crate::lattice::build_simplex(&combo) else {
            continue;
        };
        match build_polytope(points, &seed) {
            Ok(p) => return Ok(p),
            Err(e) => last = e,
        }
    }
    Err(last)
}
