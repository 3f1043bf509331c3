#![allow(dead_code)]

use rand::Rng;
use smooth_fano::geometry::build_polytope;
use smooth_fano::lattice::build_simplex;
use smooth_fano::{classify, generate_wd, DeducedFacets, FanoPolytope, LatticePoint, PointSet};

pub fn classify_all(d: usize) -> Vec<FanoPolytope> {
    let mut out = Vec::new();
    classify(d, |p| out.push(p));
    out
}

/// Columns of a random unimodular matrix, built from elementary column
/// operations, a permutation and sign changes.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> Vec<LatticePoint> {
    let mut cols: Vec<LatticePoint> = (0..d).map(|i| LatticePoint::basis(d, i)).collect();
    if d > 1 {
        for _ in 0..rng.gen_range(1..=2 * d) {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let k = rng.gen_range(-2i64..=2);
            let scaled = LatticePoint::new(&cols[j].coords().iter().map(|c| c * k).collect::<Vec<_>>());
            cols[i] = cols[i].add(&scaled);
        }
    }
    for i in (1..d).rev() {
        cols.swap(i, rng.gen_range(0..=i));
    }
    for c in cols.iter_mut() {
        if rng.gen_bool(0.5) {
            *c = c.neg();
        }
    }
    cols
}

/// The image of `p` under the linear map with the given columns.
pub fn transform(p: &FanoPolytope, cols: &[LatticePoint]) -> FanoPolytope {
    let points = PointSet::from_points(p.vertices().iter().map(|v| v.apply_columns(cols)));
    let seed: Vec<LatticePoint> = p.facets()[0].vertices().iter().map(|v| v.apply_columns(cols)).collect();
    build_polytope(&points, &build_simplex(&seed).unwrap()).unwrap()
}

/// Checks, across every ridge, the apex coefficient, the height symmetry,
/// the normal transition formula and its sign consequences, and that the
/// apex is the highest point with a negative coefficient; the lower
/// coefficient bounds on every facet; the height and upper coefficient
/// bounds on special facets; and containment in the candidate set.
pub fn invariant_violations(p: &FanoPolytope, w: &PointSet) -> Vec<String> {
    let d = p.dim() as i64;
    let mut bad = Vec::new();
    let verts = p.vertices();
    for (fi, f) in p.facets().iter().enumerate() {
        for slot in 0..p.dim() {
            let g = &p.facets()[p.neighbor(fi, slot)];
            let v = *f.vertex(slot);
            let v2 = *g.vertices().iter().find(|x| !f.contains_vertex(x)).unwrap();
            let uf = f.normal();
            let ug = g.normal();
            let uv = f.dual(slot);
            if uv.pair(&v2) != -1 {
                bad.push(format!("apex coefficient at {f:?} slot {slot}"));
            }
            if uf.pair(&v2) != ug.pair(&v) {
                bad.push(format!("height symmetry at {f:?} slot {slot}"));
            }
            for x in verts {
                let lhs = ug.pair(x);
                if lhs != uf.pair(x) + uv.pair(x) * (uf.pair(&v2) - 1) {
                    bad.push(format!("transition formula at {f:?} slot {slot} x {x}"));
                }
                if (uv.pair(x) < 0) != (lhs > uf.pair(x))
                    || (uv.pair(x) > 0) != (lhs < uf.pair(x))
                    || (uv.pair(x) == 0) != (lhs == uf.pair(x))
                {
                    bad.push(format!("transition signs at {f:?} slot {slot} x {x}"));
                }
                if *x != v2 && uv.pair(x) < 0 && uf.pair(&v2) <= uf.pair(x) {
                    bad.push(format!("apex height at {f:?} slot {slot} x {x}"));
                }
            }
        }
        let special = p.is_special(f);
        for x in verts {
            let h = f.normal().pair(x);
            if special && !(-d..=1).contains(&h) {
                bad.push(format!("height bound at {f:?} x {x}"));
            }
            let (lo, hi) = match h {
                1 => (0, 1),
                0 => (-1, d - 1),
                _ => (h, d + h),
            };
            for k in 0..p.dim() {
                let c = f.dual(k).pair(x);
                if c < lo {
                    bad.push(format!("lower coefficient bound at {f:?} x {x}"));
                }
                if special && c > hi {
                    bad.push(format!("upper coefficient bound at {f:?} x {x}"));
                }
            }
        }
    }
    if !verts.is_subset(w) {
        bad.push("vertex outside the candidate set".into());
    }
    bad
}

/// Checks every basis-containing initial segment of `V(p)`: the deduction
/// must not reject and must return only facets of `p`.
pub fn presubset_violations(p: &FanoPolytope) -> Vec<String> {
    let d = p.dim();
    let pts = p.vertices().points();
    let mut bad = Vec::new();
    for k in d..=pts.len() {
        let v = PointSet::from_points(pts[..k].iter().copied());
        match smooth_fano::check_subset(&v, &DeducedFacets::seed(d)) {
            Err(e) => bad.push(format!("prefix of length {k} rejected at step {}", e.step.step_number())),
            Ok(fs) => {
                for f in fs.iter() {
                    if !p.has_facet(f) {
                        bad.push(format!("prefix of length {k} deduced non-facet {f:?}"));
                    }
                }
            }
        }
    }
    bad
}

pub fn wd(d: usize) -> PointSet {
    generate_wd(d)
}

pub fn worked_example_points() -> Vec<LatticePoint> {
    [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [-1, -1, 0, 1, 1],
        [0, 1, -1, -1, 0],
        [0, 0, 0, -1, -1],
    ]
    .iter()
    .map(|c| LatticePoint::new(c))
    .collect()
}

/// The facets listed for the worked example, as 1-based indices into
/// [`worked_example_points`].
pub const WORKED_EXAMPLE_FACETS: [[usize; 5]; 10] = [
    [1, 2, 3, 4, 5],
    [2, 3, 4, 5, 6],
    [1, 3, 4, 5, 6],
    [1, 2, 4, 5, 7],
    [1, 2, 3, 5, 8],
    [1, 2, 3, 4, 8],
    [2, 4, 5, 6, 7],
    [1, 4, 5, 6, 7],
    [1, 2, 3, 7, 8],
    [1, 3, 5, 7, 8],
];

pub fn labels(f: &smooth_fano::Simplex, pts: &[LatticePoint]) -> Vec<usize> {
    let mut l: Vec<usize> = f
        .vertices()
        .iter()
        .map(|x| pts.iter().position(|y| y == x).map_or(0, |i| i + 1))
        .collect();
    l.sort_unstable();
    l
}

/// Facets deduced from `{I}` directly, and along the chain of prefixes the
/// search passes through.
pub type Deduction = Result<Vec<Vec<usize>>, u8>;

pub fn worked_example_deductions() -> (Deduction, Deduction) {
    let pts = worked_example_points();
    let run = |facets: &DeducedFacets, k: usize| {
        smooth_fano::check_subset(&PointSet::from_points(pts[..k].iter().copied()), facets)
    };
    let direct = run(&DeducedFacets::seed(5), 8)
        .map(|fs| fs.iter().map(|f| labels(f, &pts)).collect())
        .map_err(|e| e.step.step_number());
    let mut chain = Ok(DeducedFacets::seed(5));
    for k in 6..=8 {
        chain = chain.and_then(|fs| run(&fs, k));
    }
    let chain = chain
        .map(|fs| fs.iter().map(|f| labels(f, &pts)).collect())
        .map_err(|e| e.step.step_number());
    (direct, chain)
}
