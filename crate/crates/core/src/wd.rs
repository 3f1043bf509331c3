//! The finite candidate set containing every vertex of every special
//! embedding.

use crate::lattice::{is_primitive, LatticePoint};
use crate::order::PointSet;

/// Coordinate bounds for points with coordinate sum `a`.
fn coordinate_bounds(d: i64, a: i64) -> (i64, i64) {
    match a {
        1 => (0, 1),
        0 => (-1, d - 1),
        _ => (a, d + a),
    }
}

/// All nonzero primitive points `p` with `-d <= sum(p) <= 1` whose
/// coordinates lie in the bounds for that sum, ascending.
pub fn generate_wd(d: usize) -> PointSet {
    assert!(d >= 1);
    let di = d as i64;
    let mut out = Vec::new();
    let mut coords = vec![0i64; d];
    for a in -di..=1 {
        let (lo, hi) = coordinate_bounds(di, a);
        fill(&mut coords, 0, lo, hi, a, &mut out);
    }
    PointSet::from_points(out)
}

fn fill(coords: &mut [i64], i: usize, lo: i64, hi: i64, target: i64, out: &mut Vec<LatticePoint>) {
    let d = coords.len();
    let partial: i64 = coords[..i].iter().sum();
    if i == d {
        if partial == target {
            let p = LatticePoint::new(coords);
            if is_primitive(&p) {
                out.push(p);
            }
        }
        return;
    }
    let remaining = (d - i - 1) as i64;
    for c in lo..=hi {
        let s = partial + c;
        // the remaining coordinates can move the sum by [remaining*lo, remaining*hi]
        if s + remaining * lo > target || s + remaining * hi < target {
            continue;
        }
        coords[i] = c;
        fill(coords, i + 1, lo, hi, target, out);
    }
    coords[i] = 0;
}

/// All `w` in `W` with `x ≺ w`, ascending.
pub fn points_after<'a>(w: &'a PointSet, x: &LatticePoint) -> impl Iterator<Item = &'a LatticePoint> + 'a {
    w.points_after(x)
}
