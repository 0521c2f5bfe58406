mod common;

use bott_core::linalg::{
    is_primitive, kernel_basis, lattice_points_in_box, row_hermite_form, smith_normal_form,
    solve_linear, IntMatrix,
};
use common::{big, box_of};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_entries(r, c, big(&e)).unwrap())
    })
}

fn is_diagonal(d: &IntMatrix) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)].is_zero()))
}

fn box_points(n: usize, b: i64) -> Vec<Vec<BigInt>> {
    box_of(n, b).iter().map(|v| big(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_invariants(a in matrix(8, 8, 9)) {
        let s = smith_normal_form(&a);
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(is_diagonal(&s.d));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        for i in s.rank()..s.d.rows().min(s.d.cols()) {
            prop_assert!(s.d[(i, i)].is_zero());
        }
    }

    // for square matrices the product of invariant factors is |det|
    #[test]
    fn smith_determinant(n in 1usize..6, e in proptest::collection::vec(-6i64..=6, 36)) {
        let a = IntMatrix::from_entries(n, n, big(&e[..n * n])).unwrap();
        let s = smith_normal_form(&a);
        let det = a.determinant().unwrap();
        let prod: BigInt = (0..n).map(|i| s.d[(i, i)].clone()).product();
        prop_assert_eq!(prod, det.abs());
    }

    #[test]
    fn hermite_is_echelon_and_same_lattice(a in matrix(5, 5, 7)) {
        let h = row_hermite_form(&a);
        let rows = h.to_rows();
        let mut last = None;
        for r in &rows {
            let p = r.iter().position(|x| !x.is_zero()).unwrap();
            prop_assert!(last.is_none_or(|q| p > q));
            prop_assert!(r[p].is_positive());
            last = Some(p);
        }
        // same row lattice: each original row solves h^T x = row and vice versa
        let ht = h.transpose();
        let at = a.transpose();
        for i in 0..a.rows() {
            prop_assert!(solve_linear(&ht, a.row(i)).unwrap().is_some());
        }
        for r in &rows {
            prop_assert!(solve_linear(&at, r).unwrap().is_some());
        }
    }

    #[test]
    fn kernel_is_saturated(a in matrix(3, 4, 4)) {
        let k = kernel_basis(&a);
        let s = smith_normal_form(&a);
        prop_assert_eq!(k.len(), a.cols() - s.rank());
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        // every small kernel vector is an integer combination of the basis
        if !k.is_empty() {
            let kt = IntMatrix::from_columns(a.cols(), &k).unwrap();
            for p in box_points(a.cols(), 2) {
                if a.mul_vec(&p).unwrap().iter().all(Zero::is_zero) {
                    prop_assert!(solve_linear(&kt, &p).unwrap().is_some(), "{:?} not in span", p);
                }
            }
        }
    }

    #[test]
    fn solve_matches_search(a in matrix(3, 3, 4), b in proptest::collection::vec(-6i64..=6, 3)) {
        let b = big(&b[..a.rows()]);
        let found = solve_linear(&a, &b).unwrap();
        if let Some(x) = &found {
            prop_assert_eq!(&a.mul_vec(x).unwrap(), &b);
        }
        // any solution found by search must be detected
        let small = box_points(a.cols(), 6).into_iter().find(|x| a.mul_vec(x).unwrap() == b);
        if small.is_some() {
            prop_assert!(found.is_some());
        }
    }

    #[test]
    fn box_points_match_filter(a in matrix(2, 4, 3), bound in 0i64..3) {
        let k = kernel_basis(&a);
        let mut listed = lattice_points_in_box(a.cols(), &k, &BigInt::from(bound));
        listed.sort();
        let mut expected: Vec<_> = box_points(a.cols(), bound)
            .into_iter()
            .filter(|p| a.mul_vec(p).unwrap().iter().all(Zero::is_zero))
            .collect();
        expected.sort();
        prop_assert_eq!(listed, expected);
    }
}

#[test]
fn primitivity() {
    assert!(is_primitive(&big(&[2, 3])));
    assert!(is_primitive(&big(&[0, -1])));
    assert!(!is_primitive(&big(&[2, -4])));
    assert!(!is_primitive(&big(&[0, 0])));
}
