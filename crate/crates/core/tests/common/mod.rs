#![allow(dead_code)]

use bott_core::{BottTower, CohClass, Subset};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn build_tower(n: usize, flat: &[i64]) -> BottTower {
    let mut it = flat.iter().map(|&x| BigInt::from(x));
    let rows = (0..n).map(|i| it.by_ref().take(i).collect()).collect();
    BottTower::new(n, rows).unwrap()
}

/// Heights in `1..=max_n`, entries in `[-bound, bound]`.
pub fn tower(max_n: usize, bound: i64) -> impl Strategy<Value = BottTower> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * (n - 1) / 2)
            .prop_map(move |flat| build_tower(n, &flat))
    })
}

/// Raw `(subset bits, coefficient)` terms, turned into a class by [`class_from`].
pub fn raw_class(max_terms: usize, bound: i64) -> impl Strategy<Value = Vec<(u32, i64)>> {
    proptest::collection::vec((any::<u32>(), -bound..=bound), 0..=max_terms)
}

pub fn class_from(t: &BottTower, raw: &[(u32, i64)]) -> CohClass {
    let n = t.height();
    let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let terms = raw.iter().map(|&(bits, c)| {
        let b = bits & mask;
        let s = Subset::from_indices((1..=n).filter(|i| b & (1 << (i - 1)) != 0)).unwrap();
        (s, BigInt::from(c))
    });
    CohClass::from_terms(t, terms).unwrap()
}

/// Degree-2 class from the first `n` entries of `coeffs`.
pub fn linear_from(t: &BottTower, coeffs: &[i64]) -> CohClass {
    CohClass::from_linear_i64(t, &coeffs[..t.height()]).unwrap()
}

/// Part of `u` in degree `2k`.
pub fn homogeneous_part(u: &CohClass, k: usize) -> CohClass {
    CohClass::from_terms(
        u.tower(),
        u.terms()
            .filter(|(s, _)| s.len() == k)
            .map(|(s, c)| (s, c.clone())),
    )
    .unwrap()
}

/// Every vector of `[-b, b]^n` in lexicographic order.
pub fn box_of(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
