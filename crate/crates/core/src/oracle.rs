//! Slow reference implementations used to validate the search.
//!
//! Nothing here shares code with the ridge-pivoting hull construction: the
//! brute-force classifier finds facets by testing every `d`-subset of points
//! against every other point.

use itertools::Itertools;

use crate::geometry::FanoPolytope;
use crate::lattice::{build_simplex, change_basis, LatticePoint};
use crate::order::{permute, Permutation, PointSet};

/// Largest dimension accepted by [`brute_force_classify`].
pub const MAX_ORACLE_DIM: usize = 3;

/// True iff some lattice automorphism of `Z^d` maps `V(p)` onto `V(q)`.
///
/// Fixes one facet basis of `p` and tries every facet of `q`, with every
/// ordering of its vertices, as the image of that basis.
pub fn are_isomorphic(p: &FanoPolytope, q: &FanoPolytope) -> bool {
    if p.dim() != q.dim() || p.n_vertices() != q.n_vertices() || p.facets().len() != q.facets().len() {
        return false;
    }
    let d = p.dim();
    let base = &p.facets()[0];
    let coords: Vec<LatticePoint> = p.vertices().iter().map(|v| change_basis(base, v)).collect();
    for g in q.facets() {
        for order in (0..d).permutations(d) {
            let images: Vec<LatticePoint> = order.iter().map(|&k| *g.vertex(k)).collect();
            if coords
                .iter()
                .all(|c| q.vertices().contains(&c.apply_columns(&images)))
            {
                return true;
            }
        }
    }
    false
}

/// The canonical form computed straight from its definition: every special
/// facet as the standard basis, every coordinate permutation, minimum.
pub fn ord_by_definition(p: &FanoPolytope) -> PointSet {
    let d = p.dim();
    let perms: Vec<Permutation> = Permutation::all(d).collect();
    p.special_facets()
        .flat_map(|f| {
            let image = PointSet::from_points(p.vertices().iter().map(|v| change_basis(f, v)));
            perms.iter().map(move |s| permute(s, &image)).collect::<Vec<_>>()
        })
        .min()
        .expect("every smooth Fano polytope has a special facet")
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b))
}

/// Candidate vertex set filtered straight from its definition over a box.
fn candidate_points(d: usize) -> Vec<LatticePoint> {
    let di = d as i64;
    let range = -di..=di;
    let mut out = Vec::new();
    for coords in (0..d).map(|_| range.clone()).multi_cartesian_product() {
        let a: i64 = coords.iter().sum();
        if coords.iter().all(|&c| c == 0) || gcd_all(&coords) != 1 || a > 1 || a < -di {
            continue;
        }
        let (lo, hi) = match a {
            1 => (0, 1),
            0 => (-1, di - 1),
            _ => (a, di + a),
        };
        if coords.iter().all(|&c| (lo..=hi).contains(&c)) {
            out.push(LatticePoint::new(&coords));
        }
    }
    out
}

fn det(rows: &[Vec<i64>]) -> i64 {
    // cofactor expansion along the first row; d <= 3 here
    match rows.len() {
        0 => 1,
        1 => rows[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * rows[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Normal `a` and offset `b` of the affine hyperplane through `pts`, with
/// `a = 0` when the points are affinely dependent.
fn hyperplane(pts: &[LatticePoint]) -> (Vec<i64>, i64) {
    let d = pts.len();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.coords().iter().zip(pts[0].coords()).map(|(a, b)| a - b).collect())
        .collect();
    let a: Vec<i64> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> = diffs
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect();
    let b = a.iter().zip(pts[0].coords()).map(|(x, y)| x * y).sum();
    (a, b)
}

/// Facets of `conv(points)` if the points are exactly the vertices of a
/// smooth Fano polytope, by exhaustive hyperplane tests.
pub fn smooth_fano_facets(points: &[LatticePoint]) -> Option<Vec<Vec<LatticePoint>>> {
    let d = points.first()?.dim();
    let mut facets = Vec::new();
    for combo in points.iter().copied().combinations(d) {
        let (a, b) = hyperplane(&combo);
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let side = |x: &LatticePoint| -> i64 {
            (a.iter().zip(x.coords()).map(|(p, q)| p * q).sum::<i64>() - b).signum()
        };
        let others: Vec<i64> = points.iter().filter(|x| !combo.contains(x)).map(side).collect();
        let pos = others.iter().any(|&s| s > 0);
        let neg = others.iter().any(|&s| s < 0);
        if pos && neg {
            continue;
        }
        // supporting hyperplane: the face must be exactly this simplex and
        // the origin strictly on the inner side
        if others.contains(&0) || b == 0 {
            return None;
        }
        let inner = if pos { 1 } else if neg { -1 } else { (-b).signum() };
        if (-b).signum() != inner {
            return None;
        }
        let rows: Vec<Vec<i64>> = combo.iter().map(|p| p.coords().to_vec()).collect();
        if det(&rows).abs() != 1 {
            return None;
        }
        facets.push(combo);
    }
    if facets.is_empty() || points.iter().any(|x| !facets.iter().any(|f| f.contains(x))) {
        return None;
    }
    Some(facets)
}

/// Every smooth Fano `d`-polytope up to isomorphism, for `d <= 3`, by
/// enumerating subsets of the candidate set that contain the standard basis
/// and have it as a special facet.
pub fn brute_force_classify(d: usize) -> Vec<FanoPolytope> {
    assert!(
        (1..=MAX_ORACLE_DIM).contains(&d),
        "brute force is limited to dimension {MAX_ORACLE_DIM}"
    );
    let basis: Vec<LatticePoint> = (0..d).map(|i| LatticePoint::basis(d, i)).collect();
    let extra: Vec<LatticePoint> = candidate_points(d)
        .into_iter()
        .filter(|p| !basis.contains(p))
        .collect();
    let mut reps: Vec<FanoPolytope> = Vec::new();
    let mut chosen = Vec::new();
    subsets(&extra, 0, &mut chosen, d as i64, 2 * d, &mut |sel| {
        let mut pts = basis.clone();
        pts.extend_from_slice(sel);
        let nu = pts.iter().fold(LatticePoint::zero(d), |a, p| a.add(p));
        if nu.coords().iter().any(|&c| c < 0) {
            return;
        }
        let Some(facets) = smooth_fano_facets(&pts) else {
            return;
        };
        let simplices = facets
            .iter()
            .map(|f| build_simplex(f).expect("facet bases are unimodular"))
            .collect();
        let poly = FanoPolytope::from_facets(PointSet::from_points(pts), simplices);
        if !reps.iter().any(|r| are_isomorphic(r, &poly)) {
            reps.push(poly);
        }
    });
    reps.sort_by(|a, b| a.n_vertices().cmp(&b.n_vertices()).then_with(|| a.vertices().cmp(b.vertices())));
    reps
}

/// Visits every non-empty selection of at most `max_len` points whose
/// coordinate sums total at least `-budget`.
fn subsets(points: &[LatticePoint], start: usize, chosen: &mut Vec<LatticePoint>, budget: i64, max_len: usize, visit: &mut impl FnMut(&[LatticePoint])) {
    if !chosen.is_empty() {
        visit(chosen);
    }
    if chosen.len() == max_len {
        return;
    }
    for i in start..points.len() {
        let s = points[i].coord_sum();
        if budget + s < 0 {
            continue;
        }
        chosen.push(points[i]);
        subsets(points, i + 1, chosen, budget + s, max_len, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope_from_vertices;

    fn poly(pts: &[&[i64]]) -> FanoPolytope {
        polytope_from_vertices(&PointSet::from_points(pts.iter().map(|c| LatticePoint::new(c)))).unwrap()
    }

    #[test]
    fn isomorphism_basics() {
        let tri = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let sq = poly(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        assert!(are_isomorphic(&tri, &tri));
        assert!(!are_isomorphic(&tri, &sq));
        // F1 in two embeddings
        let a = poly(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]]);
        let b = poly(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[-1, -1]]);
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn triangle_canonical_form() {
        let tri = poly(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let expected = PointSet::from_points([
            LatticePoint::new(&[0, 1]),
            LatticePoint::new(&[1, 0]),
            LatticePoint::new(&[-1, -1]),
        ]);
        assert_eq!(ord_by_definition(&tri), expected);
    }

    #[test]
    fn candidate_points_match_generator() {
        for d in 1..=3 {
            let a = PointSet::from_points(candidate_points(d));
            assert_eq!(a, crate::wd::generate_wd(d));
        }
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_classify(1).len(), 1);
        assert_eq!(brute_force_classify(2).len(), 5);
    }

    #[test]
    fn brute_facets_reject_degenerate_sets() {
        let p = |c: &[i64]| LatticePoint::new(c);
        assert!(smooth_fano_facets(&[p(&[1, 0]), p(&[-1, 0]), p(&[0, 1])]).is_none());
        assert_eq!(smooth_fano_facets(&[p(&[1, 0]), p(&[0, 1]), p(&[-1, -1])]).unwrap().len(), 3);
        assert!(smooth_fano_facets(&[p(&[1, 0]), p(&[0, 1]), p(&[-1, -2])]).is_none());
    }
}
