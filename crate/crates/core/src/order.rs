//! The total order on lattice points and finite point sets, the action of
//! the symmetric group by permuting coordinates, and the canonical form of a
//! smooth Fano polytope.
//!
//! Points are compared by the key `(-x_1 - ... - x_d, x_1, ..., x_d)` in
//! lexicographic order. Point sets are compared as their ascending sequences,
//! lexicographically, with a proper prefix smaller than its extensions.
//!
//! Minimality under `S_d` is decided by a backtracking search that matches
//! the points of a candidate image against the target one position at a
//! time. The set of permutations consistent with the matches made so far is
//! always of the form "coordinates in source cell `k` go to positions in
//! target cell `k`", so it is tracked as a pair of cell labellings and never
//! enumerated.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::geometry::FanoPolytope;
use crate::lattice::{change_basis, LatticePoint, MAX_DIM};

impl Ord for LatticePoint {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.dim(), other.dim(), "comparing across dimensions");
        other
            .coord_sum()
            .cmp(&self.coord_sum())
            .then_with(|| self.raw().cmp(other.raw()))
    }
}

impl PartialOrd for LatticePoint {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two points in the classification order.
pub fn cmp_points(x: &LatticePoint, y: &LatticePoint) -> Ordering {
    x.cmp(y)
}

/// A duplicate-free set of points kept in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PointSet {
    points: Vec<LatticePoint>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points<I: IntoIterator<Item = LatticePoint>>(points: I) -> Self {
        let mut points: Vec<_> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        Self { points }
    }

    /// Wraps an already strictly ascending vector.
    pub(crate) fn from_sorted(points: Vec<LatticePoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Self { points }
    }

    /// The standard basis `{e_1, ..., e_d}`.
    pub fn standard_basis(dim: usize) -> Self {
        Self::from_points((0..dim).map(|i| LatticePoint::basis(dim, i)))
    }

    #[inline]
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(|p| p.dim())
    }

    pub fn first(&self) -> Option<&LatticePoint> {
        self.points.first()
    }

    pub fn last(&self) -> Option<&LatticePoint> {
        self.points.last()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn insert(&mut self, p: LatticePoint) -> bool {
        match self.points.binary_search(&p) {
            Ok(_) => false,
            Err(i) => {
                self.points.insert(i, p);
                true
            }
        }
    }

    /// Sum of all points.
    pub fn sum(&self) -> Option<LatticePoint> {
        let (first, rest) = self.points.split_first()?;
        Some(rest.iter().fold(*first, |acc, p| acc.add(p)))
    }

    /// Index of the first element strictly greater than `x`.
    pub fn position_after(&self, x: &LatticePoint) -> usize {
        self.points.partition_point(|p| p <= x)
    }

    /// All elements strictly greater than `x`, ascending.
    pub fn points_after<'a>(&'a self, x: &LatticePoint) -> impl Iterator<Item = &'a LatticePoint> + 'a {
        self.points[self.position_after(x)..].iter()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn into_vec(self) -> Vec<LatticePoint> {
        self.points
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.points.cmp(&other.points)
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.points).finish()
    }
}

impl FromIterator<LatticePoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        Self::from_points(iter)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Compares point sets in the classification order.
pub fn cmp_point_sets(x: &PointSet, y: &PointSet) -> Ordering {
    x.cmp(y)
}

/// A permutation of the coordinate positions, 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: [u8; MAX_DIM],
    dim: u8,
}

impl Permutation {
    /// `images[i]` is the image of position `i`. Returns `None` unless this
    /// is a bijection.
    pub fn new(images: &[usize]) -> Option<Self> {
        let d = images.len();
        if d == 0 || d > MAX_DIM {
            return None;
        }
        let mut seen = [false; MAX_DIM];
        let mut map = [0u8; MAX_DIM];
        for (i, &j) in images.iter().enumerate() {
            if j >= d || seen[j] {
                return None;
            }
            seen[j] = true;
            map[i] = j as u8;
        }
        Some(Self { map, dim: d as u8 })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(&(0..dim).collect::<Vec<_>>()).expect("identity is a bijection")
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    /// Every permutation of `dim` positions, in lexicographic order.
    pub fn all(dim: usize) -> impl Iterator<Item = Permutation> {
        (0..dim)
            .permutations(dim)
            .map(|p| Permutation::new(&p).expect("permutations are bijections"))
    }

    /// `a_1 e_1 + ... + a_d e_d` maps to `a_1 e_σ(1) + ... + a_d e_σ(d)`.
    pub fn apply(&self, x: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(x.dim(), self.dim as usize);
        let mut out = [0i64; MAX_DIM];
        for i in 0..self.dim as usize {
            out[self.map[i] as usize] = x.coord(i);
        }
        LatticePoint::from_raw(out, self.dim as usize)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(&self.map[..self.dim as usize])
            .finish()
    }
}

pub fn permute(sigma: &Permutation, x: &PointSet) -> PointSet {
    PointSet::from_points(x.iter().map(|p| sigma.apply(p)))
}

/// Partially determined permutation: source coordinate `i` must land on a
/// target position `j` with `tgt[j] == src[i]`.
#[derive(Clone, Copy)]
struct Cells {
    src: [u8; MAX_DIM],
    tgt: [u8; MAX_DIM],
    dim: usize,
}

impl Cells {
    fn unconstrained(dim: usize) -> Self {
        Self {
            src: [0; MAX_DIM],
            tgt: [0; MAX_DIM],
            dim,
        }
    }

    /// The smallest image of `x` under any permutation in this class.
    fn min_image(&self, x: &LatticePoint) -> LatticePoint {
        let d = self.dim;
        let mut vals = [[0i64; MAX_DIM]; MAX_DIM];
        let mut counts = [0usize; MAX_DIM];
        for i in 0..d {
            let c = self.src[i] as usize;
            vals[c][counts[c]] = x.coord(i);
            counts[c] += 1;
        }
        for c in 0..d {
            if counts[c] > 1 {
                vals[c][..counts[c]].sort_unstable();
            }
        }
        let mut next = [0usize; MAX_DIM];
        let mut out = [0i64; MAX_DIM];
        for (j, o) in out.iter_mut().enumerate().take(d) {
            let c = self.tgt[j] as usize;
            *o = vals[c][next[c]];
            next[c] += 1;
        }
        LatticePoint::from_raw(out, d)
    }

    /// Restricts to the permutations that also send `x` to `q`.
    fn refine(&self, x: &LatticePoint, q: &LatticePoint) -> Option<Cells> {
        let d = self.dim;
        let mut labels = [(0u8, 0i64); MAX_DIM];
        let mut n = 0usize;
        let mut src_count = [0u8; MAX_DIM];
        let mut tgt_count = [0u8; MAX_DIM];
        let mut out = Cells::unconstrained(d);
        for i in 0..d {
            let key = (self.src[i], x.coord(i));
            let id = match labels[..n].iter().position(|l| *l == key) {
                Some(id) => id,
                None => {
                    labels[n] = key;
                    n += 1;
                    n - 1
                }
            };
            out.src[i] = id as u8;
            src_count[id] += 1;
        }
        for j in 0..d {
            let key = (self.tgt[j], q.coord(j));
            let id = labels[..n].iter().position(|l| *l == key)?;
            out.tgt[j] = id as u8;
            tgt_count[id] += 1;
        }
        (src_count == tgt_count).then_some(out)
    }
}

/// Splits off the full standard basis when present. The basis is invariant
/// under every coordinate permutation, so it never decides a comparison.
fn strip_basis(points: &[LatticePoint]) -> (bool, Vec<LatticePoint>) {
    let d = match points.first() {
        Some(p) => p.dim(),
        None => return (false, Vec::new()),
    };
    let mut seen = [false; MAX_DIM];
    for p in points {
        if let Some(i) = p.basis_index() {
            seen[i] = true;
        }
    }
    if seen[..d].iter().all(|&s| s) {
        (
            true,
            points
                .iter()
                .filter(|p| p.basis_index().is_none())
                .copied()
                .collect(),
        )
    } else {
        (false, points.to_vec())
    }
}

fn smaller_rec(rem: &mut Vec<LatticePoint>, target: &[LatticePoint], cells: &Cells) -> bool {
    let Some(q) = target.first() else {
        return false;
    };
    let mut ties = [0usize; 64];
    let mut n_ties = 0;
    for (i, x) in rem.iter().enumerate() {
        match cells.min_image(x).cmp(q) {
            Ordering::Less => return true,
            Ordering::Equal => {
                if n_ties == ties.len() {
                    // too many ties to buffer: fall back to the slow path below
                    n_ties = usize::MAX;
                    break;
                }
                ties[n_ties] = i;
                n_ties += 1;
            }
            Ordering::Greater => {}
        }
    }
    let candidates: Vec<usize> = if n_ties == usize::MAX {
        (0..rem.len())
            .filter(|&i| cells.min_image(&rem[i]) == *q)
            .collect()
    } else {
        ties[..n_ties].to_vec()
    };
    for i in candidates {
        let x = rem.remove(i);
        let refined = cells.refine(&x, q).expect("tie implies a consistent refinement");
        let found = smaller_rec(rem, &target[1..], &refined);
        rem.insert(i, x);
        if found {
            return true;
        }
    }
    false
}

/// True iff some coordinate permutation maps `image` to a set strictly
/// smaller than `target`. Both must be ascending with equal lengths.
pub fn has_smaller_image(image: &[LatticePoint], target: &[LatticePoint]) -> bool {
    assert_eq!(image.len(), target.len(), "sets of different sizes");
    let Some(d) = target.first().map(|p| p.dim()) else {
        return false;
    };
    let (img_basis, img_rest) = strip_basis(image);
    let (tgt_basis, tgt_rest) = strip_basis(target);
    let (mut rem, tgt) = if img_basis && tgt_basis {
        (img_rest, tgt_rest)
    } else {
        (image.to_vec(), target.to_vec())
    };
    smaller_rec(&mut rem, &tgt, &Cells::unconstrained(d))
}

/// True iff `v` is the minimum of its orbit under coordinate permutations.
pub fn is_sd_minimal(v: &PointSet) -> bool {
    !has_smaller_image(v.points(), v.points())
}

/// Reference implementation of [`is_sd_minimal`] trying all `d!` permutations.
pub fn is_sd_minimal_naive(v: &PointSet) -> bool {
    let Some(d) = v.dim() else { return true };
    Permutation::all(d).all(|s| permute(&s, v) >= *v)
}

fn min_rec(rem: &mut Vec<LatticePoint>, prefix: &mut Vec<LatticePoint>, cells: &Cells, best: &mut Option<Vec<LatticePoint>>) {
    if rem.is_empty() {
        if best.as_ref().is_none_or(|b| prefix[..] < b[..]) {
            *best = Some(prefix.clone());
        }
        return;
    }
    let images: Vec<LatticePoint> = rem.iter().map(|x| cells.min_image(x)).collect();
    let t = *images.iter().min().expect("non-empty");
    let m = prefix.len();
    if let Some(b) = best.as_ref() {
        if prefix[..] == b[..m] && t > b[m] {
            return;
        }
    }
    for i in 0..rem.len() {
        if images[i] != t {
            continue;
        }
        let x = rem.remove(i);
        let refined = cells.refine(&x, &t).expect("minimum is attained");
        prefix.push(t);
        min_rec(rem, prefix, &refined, best);
        prefix.pop();
        rem.insert(i, x);
    }
}

/// The smallest set in the orbit of `y` under coordinate permutations.
pub fn min_image(y: &PointSet) -> PointSet {
    let Some(d) = y.dim() else {
        return PointSet::new();
    };
    let (has_basis, mut rem) = strip_basis(y.points());
    let mut best = None;
    min_rec(&mut rem, &mut Vec::new(), &Cells::unconstrained(d), &mut best);
    let mut out = best.expect("search always completes one branch");
    if has_basis {
        out.extend((0..d).map(|i| LatticePoint::basis(d, i)));
        out.sort_unstable();
    }
    PointSet::from_sorted(out)
}

/// True iff `v ⊆ w` and every element of `v` precedes every element of
/// `w \ v`, i.e. `v` is an initial segment of `w`.
pub fn is_presubset(v: &PointSet, w: &PointSet) -> bool {
    v.len() <= w.len() && v.points() == &w.points()[..v.len()]
}

/// The canonical form of `p`: the smallest vertex set over all special
/// embeddings, i.e. over all special facets used as the standard basis and
/// all coordinate permutations.
pub fn ord(p: &FanoPolytope) -> PointSet {
    p.special_facets()
        .map(|f| {
            let image = PointSet::from_points(p.vertices().iter().map(|v| change_basis(f, v)));
            min_image(&image)
        })
        .min()
        .expect("every smooth Fano polytope has a special facet")
}

/// True iff `V(p) = ord(p)`. `p` must have the standard simplex as a
/// special facet.
pub fn is_canonical(p: &FanoPolytope) -> bool {
    let verts = p.vertices().points();
    !has_smaller_image(verts, verts) && no_smaller_special_embedding(p)
}

/// True iff no special facet other than the standard simplex, used as the
/// standard basis, gives a vertex set smaller than `V(p)` after any
/// coordinate permutation.
pub fn no_smaller_special_embedding(p: &FanoPolytope) -> bool {
    let verts = p.vertices().points();
    p.special_facets().all(|f| {
        let image = PointSet::from_points(verts.iter().map(|v| change_basis(f, v)));
        image.points() == verts || !has_smaller_image(image.points(), verts)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c)
    }

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::from_points(pts.iter().map(|c| p(c)))
    }

    #[test]
    fn point_order_examples() {
        assert_eq!(cmp_points(&p(&[0, 1]), &p(&[-1, 1])), Ordering::Less);
        assert_eq!(cmp_points(&p(&[-1, 1]), &p(&[1, -1])), Ordering::Less);
        assert_eq!(cmp_points(&p(&[1, -1]), &p(&[-1, 0])), Ordering::Less);
        assert_eq!(cmp_points(&p(&[3, -4]), &p(&[3, -4])), Ordering::Equal);
    }

    #[test]
    fn basis_extremes() {
        for d in 1..=MAX_DIM {
            let b = PointSet::standard_basis(d);
            assert_eq!(b.first(), Some(&LatticePoint::basis(d, d - 1)));
            assert_eq!(b.last(), Some(&LatticePoint::basis(d, 0)));
        }
    }

    #[test]
    fn set_order_examples() {
        let chain = [
            PointSet::new(),
            set(&[&[0, 1]]),
            set(&[&[0, 1], &[-1, 1]]),
            set(&[&[0, 1], &[1, -1]]),
            set(&[&[-1, 1]]),
        ];
        for w in chain.windows(2) {
            assert_eq!(cmp_point_sets(&w[0], &w[1]), Ordering::Less, "{:?} vs {:?}", w[0], w[1]);
        }
        assert_eq!(cmp_point_sets(&PointSet::new(), &PointSet::new()), Ordering::Equal);
    }

    #[test]
    fn permutation_action() {
        let x = set(&[&[0, 1], &[1, 0], &[1, -1]]);
        assert_eq!(permute(&Permutation::identity(2), &x), x);
        let swap = Permutation::new(&[1, 0]).unwrap();
        assert_eq!(permute(&swap, &PointSet::standard_basis(2)), PointSet::standard_basis(2));
        assert_eq!(permute(&swap, &x), set(&[&[0, 1], &[1, 0], &[-1, 1]]));
        assert!(Permutation::new(&[0, 0]).is_none());
        let s = Permutation::new(&[2, 0, 1]).unwrap();
        assert_eq!(s.apply(&p(&[5, 6, 7])), p(&[6, 7, 5]));
    }

    #[test]
    fn minimality_examples() {
        for d in 1..=6 {
            assert!(is_sd_minimal(&PointSet::standard_basis(d)));
        }
        let not_min = set(&[&[0, 1], &[1, 0], &[1, -1]]);
        let min = set(&[&[0, 1], &[1, 0], &[-1, 1]]);
        assert!(!is_sd_minimal(&not_min));
        assert!(!is_sd_minimal_naive(&not_min));
        assert!(is_sd_minimal(&min));
        assert!(is_sd_minimal_naive(&min));
    }

    #[test]
    fn presubset_examples() {
        let w = set(&[&[0, 1], &[-1, 1], &[1, -1]]);
        assert!(is_presubset(&set(&[&[0, 1], &[-1, 1]]), &w));
        assert!(!is_presubset(&set(&[&[0, 1], &[1, -1]]), &w));
        assert!(is_presubset(&w, &w));
        assert!(is_presubset(&PointSet::new(), &w));
    }

    #[test]
    fn min_image_of_triangle_embedding() {
        let y = set(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(min_image(&y), y);
        let z = set(&[&[1, 0], &[0, 1], &[1, -1]]);
        assert_eq!(min_image(&z), set(&[&[0, 1], &[1, 0], &[-1, 1]]));
    }

    #[test]
    fn cells_refinement_respects_values() {
        let c = Cells::unconstrained(3);
        let x = p(&[2, -1, 0]);
        assert_eq!(c.min_image(&x), p(&[-1, 0, 2]));
        let r = c.refine(&x, &p(&[0, 2, -1])).unwrap();
        assert_eq!(r.min_image(&x), p(&[0, 2, -1]));
        assert!(c.refine(&x, &p(&[0, 1, -1])).is_none());
    }
}
