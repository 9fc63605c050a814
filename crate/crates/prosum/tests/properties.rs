//! Property tests for the exact linear algebra layer: Howell forms, solution
//! sets, and rank profiles against brute-force enumeration on small inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use prosum::mat::{howell_form, rank_profile, solve_affine, Mat};
use prosum::ring::ChainRing;

fn rings() -> Vec<ChainRing> {
    vec![
        ChainRing::new(2, 2).unwrap(),
        ChainRing::new(2, 3).unwrap(),
        ChainRing::new(3, 2).unwrap(),
        ChainRing::field(2).unwrap(),
        ChainRing::field(3).unwrap(),
    ]
}

fn enumerate_span(a: &Mat) -> BTreeSet<Vec<u64>> {
    let ring = a.ring();
    let mut span = BTreeSet::new();
    let total = (ring.modulus() as u128).pow(a.rows() as u32);
    for mut code in 0..total {
        let mut coeffs = Vec::with_capacity(a.rows());
        for _ in 0..a.rows() {
            coeffs.push((code % ring.modulus() as u128) as u64);
            code /= ring.modulus() as u128;
        }
        let mut v = vec![0u64; a.cols()];
        for (i, &c) in coeffs.iter().enumerate() {
            for (vi, &ai) in v.iter_mut().zip(a.row(i)) {
                *vi = ring.add(*vi, ring.mul(c, ai));
            }
        }
        span.insert(v);
    }
    span
}

fn small_matrix(ring_idx: usize) -> impl Strategy<Value = (usize, Vec<Vec<u64>>)> {
    let modulus = rings()[ring_idx].modulus();
    (1usize..=3, 1usize..=3)
        .prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0..modulus, c), r)
        })
        .prop_map(move |rows| (ring_idx, rows))
}

fn any_small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<u64>>)> {
    (0usize..rings().len()).prop_flat_map(small_matrix)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn howell_is_idempotent((ring_idx, rows) in any_small_matrix()) {
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        let h = howell_form(&a);
        prop_assert_eq!(howell_form(&h), h);
    }

    #[test]
    fn howell_preserves_the_row_span((ring_idx, rows) in any_small_matrix()) {
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        let h = howell_form(&a);
        prop_assert_eq!(enumerate_span(&a), enumerate_span(&h));
    }

    #[test]
    fn howell_has_the_leading_zero_property((ring_idx, rows) in any_small_matrix()) {
        // any span vector whose first j coordinates vanish lies in the span
        // of the rows with leading index >= j
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        let h = howell_form(&a);
        let span = enumerate_span(&a);
        for j in 0..=h.cols() {
            let tail_rows: Vec<Vec<u64>> = (0..h.rows())
                .map(|r| h.row_vec(r))
                .filter(|row| row[..j].iter().all(|&x| x == 0))
                .collect();
            let tail_span = if tail_rows.is_empty() {
                let mut s = BTreeSet::new();
                s.insert(vec![0u64; h.cols()]);
                s
            } else {
                enumerate_span(&Mat::from_rows(ring, tail_rows).unwrap())
            };
            for v in &span {
                if v[..j].iter().all(|&x| x == 0) {
                    prop_assert!(tail_span.contains(v));
                }
            }
        }
    }

    #[test]
    fn rank_profile_product_law((ring_idx, rows) in any_small_matrix()) {
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        let (image, kernel) = rank_profile(&a);
        let total = (ring.modulus() as u128).pow(a.rows() as u32);
        prop_assert_eq!(image * kernel, total);
    }

    #[test]
    fn solution_sets_match_brute_force(
        (ring_idx, rows) in any_small_matrix(),
        b_seed in proptest::collection::vec(0u64..9, 3),
    ) {
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        let b: Vec<u64> = (0..a.cols()).map(|c| ring.reduce(b_seed[c])).collect();
        let sols = solve_affine(&a, &b).unwrap();
        let got: Vec<Vec<u64>> = sols.enumerate(ring);
        let total = (ring.modulus() as u128).pow(a.rows() as u32);
        let mut expected = Vec::new();
        for mut code in 0..total {
            let mut x = Vec::with_capacity(a.rows());
            for _ in 0..a.rows() {
                x.push((code % ring.modulus() as u128) as u64);
                code /= ring.modulus() as u128;
            }
            let mut prod = vec![0u64; a.cols()];
            for (i, &xi) in x.iter().enumerate() {
                for (p, &ai) in prod.iter_mut().zip(a.row(i)) {
                    *p = ring.add(*p, ring.mul(xi, ai));
                }
            }
            if prod == b {
                expected.push(x);
            }
        }
        expected.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn inverse_is_two_sided((ring_idx, rows) in any_small_matrix()) {
        let ring = rings()[ring_idx];
        let a = Mat::from_rows(ring, rows).unwrap();
        if !a.is_square() {
            return Ok(());
        }
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        }
    }
}
