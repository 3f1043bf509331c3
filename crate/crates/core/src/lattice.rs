//! Exact integer linear algebra on the lattice `Z^d`.
//!
//! Points and covectors are stored in fixed-width arrays of [`MAX_DIM`]
//! coordinates padded with zeros, so pairings and coordinate sums never need
//! to consult the dimension. Every facet basis encountered during
//! classification is unimodular, which keeps all dual-basis computations in
//! machine integers.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use thiserror::Error;

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

/// A point of `Z^d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    coords: [i64; MAX_DIM],
    dim: u8,
}

/// An integer covector, acting on points by the dot product.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Functional {
    coeffs: [i64; MAX_DIM],
    dim: u8,
}

fn check_dim(dim: usize) {
    assert!(
        (1..=MAX_DIM).contains(&dim),
        "dimension {dim} outside 1..={MAX_DIM}"
    );
}

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Self {
        check_dim(coords.len());
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Self {
            coords: c,
            dim: coords.len() as u8,
        }
    }

    pub fn zero(dim: usize) -> Self {
        check_dim(dim);
        Self {
            coords: [0; MAX_DIM],
            dim: dim as u8,
        }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut p = Self::zero(dim);
        p.coords[i] = 1;
        p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[i64; MAX_DIM] {
        &self.coords
    }

    #[inline]
    pub(crate) fn from_raw(coords: [i64; MAX_DIM], dim: usize) -> Self {
        Self {
            coords,
            dim: dim as u8,
        }
    }

    #[inline]
    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    /// Sum of the coordinates, i.e. the pairing with `(1, ..., 1)`.
    #[inline]
    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Index of the standard basis vector this point equals, if any.
    pub fn basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.coords().iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    #[inline]
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(other.coords.iter()) {
            *a += b;
        }
        Self { coords: c, dim: self.dim }
    }

    #[inline]
    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut c = self.coords;
        for (a, b) in c.iter_mut().zip(other.coords.iter()) {
            *a -= b;
        }
        Self { coords: c, dim: self.dim }
    }

    pub fn neg(&self) -> Self {
        let mut c = self.coords;
        c.iter_mut().for_each(|a| *a = -*a);
        Self { coords: c, dim: self.dim }
    }

    /// Image under the linear map whose matrix has the given columns.
    pub fn apply_columns(&self, columns: &[LatticePoint]) -> Self {
        debug_assert_eq!(columns.len(), self.dim());
        let mut out = Self::zero(self.dim());
        for (a, col) in self.coords().iter().zip(columns) {
            for (o, c) in out.coords.iter_mut().zip(col.coords.iter()) {
                *o += a * c;
            }
        }
        out
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Functional {
    pub fn new(coeffs: &[i64]) -> Self {
        check_dim(coeffs.len());
        let mut c = [0; MAX_DIM];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self {
            coeffs: c,
            dim: coeffs.len() as u8,
        }
    }

    /// The covector `(1, ..., 1)`.
    pub fn all_ones(dim: usize) -> Self {
        Self::new(&vec![1; dim])
    }

    /// The `i`-th standard covector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = vec![0; dim];
        c[i] = 1;
        Self::new(&c)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.dim as usize]
    }

    #[inline]
    pub fn pair(&self, x: &LatticePoint) -> i64 {
        debug_assert_eq!(self.dim, x.dim, "pairing across dimensions");
        self.coeffs
            .iter()
            .zip(x.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    #[inline]
    fn axpy(&mut self, scale: i64, other: &Functional) {
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += scale * b;
        }
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

/// Exact dot product of a covector and a point.
#[inline]
pub fn pairing(f: &Functional, x: &LatticePoint) -> i64 {
    f.pair(x)
}

/// True iff the coordinates of `p` have gcd 1. The zero vector is not primitive.
pub fn is_primitive(p: &LatticePoint) -> bool {
    p.coords().iter().fold(0i64, |g, &c| g.gcd(&c)) == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnimodularityError {
    #[error("expected {expected} vertices, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("vertex matrix is singular")]
    Singular,
    #[error("vertex matrix has determinant of absolute value {0}")]
    NotUnimodular(i64),
    #[error("coefficient {0} is not a unit")]
    NonUnitCoefficient(i64),
}

/// A `(d-1)`-simplex whose vertices form a lattice basis, together with its
/// normal `u_F` (value 1 on every vertex) and the dual basis `u_F^w`.
#[derive(Clone)]
pub struct Simplex {
    vertices: [LatticePoint; MAX_DIM],
    dual: [Functional; MAX_DIM],
    normal: Functional,
    key: u64,
    dim: u8,
}

#[inline]
fn point_fingerprint(p: &LatticePoint) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &c in p.coords.iter() {
        h = (h ^ (c as u64)).wrapping_mul(0x1000_0000_01b3).rotate_left(23);
    }
    h ^ (h >> 29)
}

fn vertex_key(vertices: &[LatticePoint]) -> u64 {
    vertices
        .iter()
        .fold(0u64, |acc, v| acc.wrapping_add(point_fingerprint(v)))
}

impl Simplex {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices[..self.dim as usize]
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.vertices[i]
    }

    #[inline]
    pub fn normal(&self) -> &Functional {
        &self.normal
    }

    #[inline]
    pub fn dual_basis(&self) -> &[Functional] {
        &self.dual[..self.dim as usize]
    }

    #[inline]
    pub fn dual(&self, i: usize) -> &Functional {
        &self.dual[i]
    }

    /// Order-insensitive fingerprint of the vertex set.
    #[inline]
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn position_of(&self, p: &LatticePoint) -> Option<usize> {
        self.vertices().iter().position(|v| v == p)
    }

    pub fn contains_vertex(&self, p: &LatticePoint) -> bool {
        self.position_of(p).is_some()
    }

    /// True iff both simplices have the same vertex set.
    pub fn same_vertex_set(&self, other: &Simplex) -> bool {
        self.key == other.key
            && self.dim == other.dim
            && self
                .vertices()
                .iter()
                .all(|v| other.contains_vertex(v))
    }

    /// Vertices sorted ascending, for display and deterministic comparison.
    pub fn sorted_vertices(&self) -> Vec<LatticePoint> {
        let mut v = self.vertices().to_vec();
        v.sort();
        v
    }

    /// Coordinates of `x` in the vertex basis: entry `i` is `<u_F^{v_i}, x>`.
    #[inline]
    pub fn coefficients(&self, x: &LatticePoint) -> [i64; MAX_DIM] {
        let mut out = [0; MAX_DIM];
        for (o, u) in out.iter_mut().zip(self.dual_basis()) {
            *o = u.pair(x);
        }
        out
    }

    /// The simplex with vertex `slot` replaced by `x`, computed by a rank-one
    /// update of the dual basis. The result is unimodular iff the coefficient
    /// of `x` along the replaced vertex is `±1`.
    pub fn replace_vertex(&self, slot: usize, x: &LatticePoint) -> Result<Simplex, UnimodularityError> {
        let d = self.dim();
        let c = self.dual[slot].pair(x);
        if c != 1 && c != -1 {
            return Err(if c == 0 {
                UnimodularityError::Singular
            } else {
                UnimodularityError::NonUnitCoefficient(c)
            });
        }
        let mut out = self.clone();
        out.vertices[slot] = *x;
        // new dual for the slot: u^w / c; others: u^y - <u^y, x> * new
        let mut pivot = self.dual[slot];
        if c == -1 {
            pivot.coeffs.iter_mut().for_each(|a| *a = -*a);
        }
        let mut normal = pivot;
        for i in 0..d {
            if i == slot {
                out.dual[i] = pivot;
                continue;
            }
            let mut u = self.dual[i];
            let t = u.pair(x);
            if t != 0 {
                u.axpy(-t, &pivot);
            }
            out.dual[i] = u;
            normal.axpy(1, &u);
        }
        out.normal = normal;
        out.key = self
            .key
            .wrapping_sub(point_fingerprint(&self.vertices[slot]))
            .wrapping_add(point_fingerprint(x));
        Ok(out)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices()).finish()
    }
}

impl PartialEq for Simplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_vertex_set(other)
    }
}

impl Eq for Simplex {}

impl Hash for Simplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

/// The simplex `conv{e_1, ..., e_d}`.
pub fn identity_simplex(dim: usize) -> Simplex {
    let pts: Vec<_> = (0..dim).map(|i| LatticePoint::basis(dim, i)).collect();
    build_simplex(&pts).expect("standard basis is unimodular")
}

/// Builds a simplex from `d` lattice points, failing unless they form a
/// lattice basis.
pub fn build_simplex(vertices: &[LatticePoint]) -> Result<Simplex, UnimodularityError> {
    let d = vertices.first().map(|v| v.dim()).unwrap_or(0);
    if d == 0 || vertices.len() != d {
        return Err(UnimodularityError::WrongCount {
            expected: d.max(1),
            got: vertices.len(),
        });
    }
    let inverse = unimodular_inverse(vertices)?;
    // row i of the inverse pairs to 1 with column i and 0 with the others
    let mut dual = [Functional { coeffs: [0; MAX_DIM], dim: d as u8 }; MAX_DIM];
    let mut normal = Functional { coeffs: [0; MAX_DIM], dim: d as u8 };
    for (i, u) in dual.iter_mut().enumerate().take(d) {
        for k in 0..d {
            u.coeffs[k] = inverse[i][k];
        }
        normal.axpy(1, u);
    }
    let mut verts = [LatticePoint::zero(d); MAX_DIM];
    verts[..d].copy_from_slice(vertices);
    Ok(Simplex {
        vertices: verts,
        dual,
        normal,
        key: vertex_key(vertices),
        dim: d as u8,
    })
}

/// Inverse of the matrix whose columns are `cols`, by unimodular row
/// operations (Euclidean elimination). Fails unless `|det| = 1`.
fn unimodular_inverse(cols: &[LatticePoint]) -> Result<Vec<Vec<i64>>, UnimodularityError> {
    let d = cols.len();
    // a[r][c] = cols[c][r]
    let mut a: Vec<Vec<i128>> = (0..d)
        .map(|r| cols.iter().map(|c| c.coords[r] as i128).collect())
        .collect();
    let mut inv: Vec<Vec<i128>> = (0..d)
        .map(|r| (0..d).map(|c| i128::from(r == c)).collect())
        .collect();
    for col in 0..d {
        loop {
            let pivot = (col..d)
                .filter(|&r| a[r][col] != 0)
                .min_by_key(|&r| a[r][col].abs());
            let Some(p) = pivot else {
                return Err(UnimodularityError::Singular);
            };
            a.swap(col, p);
            inv.swap(col, p);
            let mut done = true;
            for r in col + 1..d {
                if a[r][col] != 0 {
                    let q = a[r][col] / a[col][col];
                    for k in 0..d {
                        a[r][k] -= q * a[col][k];
                        inv[r][k] -= q * inv[col][k];
                    }
                    if a[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
    }
    let det: i128 = (0..d).map(|i| a[i][i]).product();
    if det.abs() != 1 {
        return Err(UnimodularityError::NotUnimodular(
            i64::try_from(det.abs()).unwrap_or(i64::MAX),
        ));
    }
    for col in (0..d).rev() {
        if a[col][col] == -1 {
            for k in 0..d {
                a[col][k] = -a[col][k];
                inv[col][k] = -inv[col][k];
            }
        }
        for r in 0..col {
            let q = a[r][col];
            if q != 0 {
                for k in 0..d {
                    a[r][k] -= q * a[col][k];
                    inv[r][k] -= q * inv[col][k];
                }
            }
        }
    }
    Ok(inv
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).expect("inverse entry overflows i64"))
                .collect()
        })
        .collect())
}

/// Coordinates of `x` with respect to the vertex basis of `basis`. Maps
/// `basis.vertex(i)` to `e_i`.
pub fn change_basis(basis: &Simplex, x: &LatticePoint) -> LatticePoint {
    LatticePoint::from_raw(basis.coefficients(x), basis.dim())
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[LatticePoint]) -> i64 {
    let d = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.coords().iter().map(|&c| c as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..d {
        if m[k][k] == 0 {
            match (k + 1..d).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[d - 1][d - 1]).expect("determinant overflows i64")
}
