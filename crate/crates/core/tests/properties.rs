mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smooth_fano::io::{read_records, Format, PolytopeWriter};
use smooth_fano::lattice::{build_simplex, change_basis, determinant};
use smooth_fano::order::{is_sd_minimal, is_sd_minimal_naive, min_image, permute, Permutation};
use smooth_fano::{generate_wd, ord, LatticePoint, PointSet};

fn point(d: usize) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-4i64..=4, d).prop_map(|c| LatticePoint::new(&c))
}

fn key(p: &LatticePoint) -> (i64, Vec<i64>) {
    (-p.coord_sum(), p.coords().to_vec())
}

/// Subsets of the candidate set that contain the standard basis.
fn basis_subset(d: usize, extra: usize) -> impl Strategy<Value = PointSet> {
    let w: Vec<LatticePoint> = generate_wd(d).iter().copied().filter(|p| p.basis_index().is_none()).collect();
    let extra = extra.min(w.len());
    prop::sample::subsequence(w, 0..=extra).prop_map(move |pts| {
        let mut s = PointSet::standard_basis(d);
        for p in pts {
            s.insert(p);
        }
        s
    })
}

proptest! {
    #[test]
    fn point_order_is_the_key_order((x, y) in (1usize..=5).prop_flat_map(|d| (point(d), point(d)))) {
        prop_assert_eq!(x.cmp(&y), key(&x).cmp(&key(&y)));
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
    }

    #[test]
    fn equal_size_sets_compare_by_smallest_difference(a in prop::collection::btree_set(point(3), 4), b in prop::collection::btree_set(point(3), 4)) {
        let a = PointSet::from_points(a);
        let b = PointSet::from_points(b);
        prop_assume!(a.len() == b.len() && a != b);
        let diff = a.iter().filter(|p| !b.contains(p)).chain(b.iter().filter(|p| !a.contains(p))).min().copied().unwrap();
        prop_assert_eq!(a < b, a.contains(&diff));
    }

    #[test]
    fn dual_basis_of_random_unimodular_bases(d in 1usize..=6, seed in any::<u64>(), x in point(6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = common::random_unimodular(&mut rng, d);
        prop_assert_eq!(determinant(&cols).abs(), 1);
        let s = build_simplex(&cols).unwrap();
        for (i, u) in s.dual_basis().iter().enumerate() {
            for (j, v) in cols.iter().enumerate() {
                prop_assert_eq!(u.pair(v), i64::from(i == j));
            }
        }
        for v in &cols {
            prop_assert_eq!(s.normal().pair(v), 1);
        }
        let x = LatticePoint::new(&x.coords()[..d]);
        prop_assert_eq!(change_basis(&s, &x).apply_columns(&cols), x);
    }

    #[test]
    fn replacing_a_vertex_matches_a_fresh_build(d in 2usize..=5, seed in any::<u64>(), slot in 0usize..5, x in point(5)) {
        let slot = slot % d;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = common::random_unimodular(&mut rng, d);
        let s = build_simplex(&cols).unwrap();
        let x = LatticePoint::new(&x.coords()[..d]);
        let mut replaced = cols.clone();
        replaced[slot] = x;
        match (s.replace_vertex(slot, &x), build_simplex(&replaced)) {
            (Ok(a), Ok(b)) => {
                prop_assert!(a.same_vertex_set(&b));
                prop_assert_eq!(a.normal(), b.normal());
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "disagree: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn minimality_matches_exhaustive_search(v in (1usize..=4).prop_flat_map(|d| basis_subset(d, 5))) {
        prop_assert_eq!(is_sd_minimal(&v), is_sd_minimal_naive(&v));
    }

    #[test]
    fn min_image_is_the_least_permuted_copy(v in (1usize..=4).prop_flat_map(|d| basis_subset(d, 5))) {
        let d = v.dim().unwrap();
        let least = Permutation::all(d).map(|s| permute(&s, &v)).min().unwrap();
        prop_assert_eq!(min_image(&v), least);
    }

    #[test]
    fn text_records_round_trip(v in (1usize..=5).prop_flat_map(|d| basis_subset(d, 6)), structured in any::<bool>()) {
        let format = if structured { Format::Structured } else { Format::Text };
        let mut w = PolytopeWriter::new(Vec::new(), format);
        w.write_vertices(&v).unwrap();
        let recs = read_records(&w.into_inner()[..]).unwrap();
        prop_assert_eq!(recs.len(), 1);
        prop_assert_eq!(recs[0].vertices.as_slice(), v.points());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_invariant(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let outputs = common::classify_all(3);
        let p = &outputs[pick.index(outputs.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_unimodular(&mut rng, 3);
        prop_assert_eq!(ord(&common::transform(p, &m)), p.vertices().clone());
    }
}
