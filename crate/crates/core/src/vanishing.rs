//! Vanishing pairs: ordered pairs `(z, zbar)` of degree-2 classes with
//! `z * zbar = 0`.
//!
//! A primitive vanishing pair always has the shape
//! `(a x_j + u, ±(a (x_j - alpha_j) - u))` with `a != 0`, `u` supported on
//! `x_1..x_{j-1}` and `u (u + a alpha_j) = 0`. [`lemma_form_decompose`]
//! recovers that data from a pair, and [`enumerate_primitive_vanishing_pairs`]
//! lists all primitive pairs inside a coefficient box.
//!
//! The set of primitive vanishing pairs is infinite in general (already for a
//! product of two spheres), so every enumeration here is exhaustive only
//! within its box.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{is_primitive, kernel_basis, lattice_points_in_box, IntMatrix};
use crate::ring::{BottTower, CohClass, Subset};
use crate::{Error, Result, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingPair {
    pub z: CohClass,
    pub zbar: CohClass,
}

/// `z = a x_j + u`, `zbar = sign * (a (x_j - alpha_j) - u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaForm {
    pub j: usize,
    pub a: BigInt,
    pub u: CohClass,
    pub sign: Sign,
}

impl LemmaForm {
    /// Rebuilds the pair described by this data.
    pub fn pair(&self) -> Result<VanishingPair> {
        lemma_pair(self.u.tower(), self.j, &self.a, &self.u, self.sign)
    }
}

/// The pair `(a x_j + u, sign * (a (x_j - alpha_j) - u))`.
pub fn lemma_pair(
    tower: &BottTower,
    j: usize,
    a: &BigInt,
    u: &CohClass,
    sign: Sign,
) -> Result<VanishingPair> {
    let xj = tower.generator(j)?;
    let alpha = tower.alpha(j)?;
    let z = xj.scale(a).try_add(u)?;
    let base = (&xj - &alpha).scale(a).try_sub(u)?;
    let zbar = match sign {
        Sign::Plus => base,
        Sign::Minus => -base,
    };
    Ok(VanishingPair { z, zbar })
}

fn require_degree2(z: &CohClass) -> Result<()> {
    if z.is_homogeneous_of(2) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { expected_degree: 2 })
    }
}

/// Matrix of `w -> z w` from `H^2` (basis `x_1..x_n`) to `H^4` (2-subsets in
/// basis order).
pub fn mult_map_deg2(tower: &BottTower, z: &CohClass) -> Result<IntMatrix> {
    require_degree2(z)?;
    if z.tower() != tower {
        return Err(Error::TowerMismatch);
    }
    let n = tower.height();
    let targets = tower.basis(2);
    let mut m = IntMatrix::zeros(targets.len(), n);
    for (col, x) in tower.generators().iter().enumerate() {
        let prod = z * x;
        for (s, c) in prod.terms() {
            let row = targets
                .binary_search(&s)
                .expect("product of degree-2 classes has degree 4");
            m[(row, col)] = c.clone();
        }
    }
    Ok(m)
}

/// A lattice basis of `{w in H^2 : z w = 0}`.
pub fn vanishing_partners(tower: &BottTower, z: &CohClass) -> Result<Vec<CohClass>> {
    let m = mult_map_deg2(tower, z)?;
    kernel_basis(&m)
        .iter()
        .map(|v| CohClass::from_linear(tower, v))
        .collect()
}

/// Every vector of `[-bound, bound]^n`, in lexicographic order.
pub(crate) fn box_vectors(n: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = if bound < 0 {
        0
    } else {
        (2 * bound as u64 + 1).pow(n as u32)
    };
    let mut cur = alloc::vec![-bound; n];
    let mut first = true;
    (0..total).map(move |_| {
        if first {
            first = false;
        } else {
            for k in (0..n).rev() {
                if cur[k] < bound {
                    cur[k] += 1;
                    break;
                }
                cur[k] = -bound;
            }
        }
        cur.clone()
    })
}

/// All ordered primitive vanishing pairs with every coefficient in
/// `[-bound, bound]`, sorted lexicographically by the coefficient vectors of
/// `z` and then `zbar`.
pub fn enumerate_primitive_vanishing_pairs(tower: &BottTower, bound: u32) -> Vec<VanishingPair> {
    if bound == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let n = tower.height();
    let bound_big = BigInt::from(bound);
    for coeffs in box_vectors(n, bound as i64) {
        let zc: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
        if !is_primitive(&zc) {
            continue;
        }
        let z = CohClass::from_linear(tower, &zc).expect("length n");
        let m = mult_map_deg2(tower, &z).expect("z has degree 2");
        let basis = kernel_basis(&m);
        for w in lattice_points_in_box(n, &basis, &bound_big) {
            if !is_primitive(&w) {
                continue;
            }
            let zbar = CohClass::from_linear(tower, &w).expect("length n");
            out.push((zc.clone(), w, VanishingPair { z: z.clone(), zbar }));
        }
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out.into_iter().map(|(_, _, p)| p).collect()
}

/// Recovers `(j, a, u, sign)` for a primitive vanishing pair, or `None` when
/// the pair does not have that shape.
pub fn lemma_form_decompose(tower: &BottTower, pair: &VanishingPair) -> Result<Option<LemmaForm>> {
    require_degree2(&pair.z)?;
    require_degree2(&pair.zbar)?;
    if pair.z.tower() != tower || pair.zbar.tower() != tower {
        return Err(Error::TowerMismatch);
    }
    if !(&pair.z * &pair.zbar).is_zero() {
        return Err(Error::NotVanishing);
    }
    let j = pair.z.filtration_level();
    if j == 0 {
        return Ok(None);
    }
    let a = pair.z.coeff(Subset::singleton(j));
    if a.is_zero() {
        return Ok(None);
    }
    let xj = tower.generator(j)?;
    let alpha = tower.alpha(j)?;
    let u = &pair.z - &xj.scale(&a);
    let base = &(&xj - &alpha).scale(&a) - &u;
    let sign = if pair.zbar == base {
        Sign::Plus
    } else if pair.zbar == -&base {
        Sign::Minus
    } else {
        return Ok(None);
    };
    if !(&u * &(&u + &alpha.scale(&a))).is_zero() {
        return Ok(None);
    }
    Ok(Some(LemmaForm { j, a, u, sign }))
}

/// True when both coordinates are primitive and the product vanishes.
pub fn is_primitive_vanishing_pair(pair: &VanishingPair) -> bool {
    let (Ok(z), Ok(zb)) = (pair.z.linear_coeffs(), pair.zbar.linear_coeffs()) else {
        return false;
    };
    is_primitive(&z) && is_primitive(&zb) && (&pair.z * &pair.zbar).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::One;

    fn lin(t: &BottTower, c: &[i64]) -> CohClass {
        CohClass::from_linear_i64(t, c).unwrap()
    }

    #[test]
    fn mult_map_examples() {
        let t = BottTower::trivial(2).unwrap();
        let m = mult_map_deg2(&t, &lin(&t, &[1, 0])).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[0, 1]]).unwrap());

        let h = BottTower::from_i64(&[&[], &[1]]).unwrap();
        let m = mult_map_deg2(&h, &lin(&h, &[0, 1])).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[1, 1]]).unwrap());

        let t3 = BottTower::from_i64(&[&[], &[2], &[1, -1]]).unwrap();
        assert!(mult_map_deg2(&t3, &CohClass::zero(&t3)).unwrap().is_zero());
        assert_eq!(mult_map_deg2(&t3, &CohClass::zero(&t3)).unwrap().rows(), 3);
    }

    #[test]
    fn mult_map_rejects_inhomogeneous() {
        let t = BottTower::trivial(2).unwrap();
        let z = &lin(&t, &[1, 0]) + &CohClass::one(&t);
        assert!(matches!(
            mult_map_deg2(&t, &z),
            Err(Error::NotHomogeneous { .. })
        ));
        assert!(vanishing_partners(&t, &z).is_err());
    }

    #[test]
    fn partner_examples() {
        let t = BottTower::trivial(2).unwrap();
        assert_eq!(
            vanishing_partners(&t, &lin(&t, &[1, 0])).unwrap(),
            vec![lin(&t, &[1, 0])]
        );
        let h = BottTower::from_i64(&[&[], &[1]]).unwrap();
        assert_eq!(
            vanishing_partners(&h, &lin(&h, &[1, 0])).unwrap(),
            vec![lin(&h, &[1, 0])]
        );
        let all = vanishing_partners(&h, &CohClass::zero(&h)).unwrap();
        assert_eq!(all, vec![lin(&h, &[1, 0]), lin(&h, &[0, 1])]);
    }

    #[test]
    fn enumerate_n1() {
        let t = BottTower::trivial(1).unwrap();
        let got = enumerate_primitive_vanishing_pairs(&t, 1);
        let want: Vec<VanishingPair> = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
            .iter()
            .map(|&(a, b)| VanishingPair {
                z: lin(&t, &[a]),
                zbar: lin(&t, &[b]),
            })
            .collect();
        assert_eq!(got, want);
        assert!(enumerate_primitive_vanishing_pairs(&t, 0).is_empty());
    }

    #[test]
    fn enumerate_hirzebruch_contains_lemma_pair() {
        let h = BottTower::from_i64(&[&[], &[1]]).unwrap();
        let pairs = enumerate_primitive_vanishing_pairs(&h, 1);
        let x2 = lin(&h, &[0, 1]);
        let partners: Vec<&CohClass> = pairs
            .iter()
            .filter(|p| p.z == x2)
            .map(|p| &p.zbar)
            .collect();
        assert!(partners.contains(&&lin(&h, &[-1, 1])));
        assert!(partners.contains(&&lin(&h, &[1, -1])));
        for p in &pairs {
            assert!(is_primitive_vanishing_pair(p));
        }
    }

    #[test]
    fn decompose_examples() {
        let t = BottTower::trivial(1).unwrap();
        let f = lemma_form_decompose(
            &t,
            &VanishingPair {
                z: lin(&t, &[1]),
                zbar: lin(&t, &[-1]),
            },
        )
        .unwrap()
        .unwrap();
        assert_eq!(
            (f.j, f.a.clone(), f.u.is_zero(), f.sign),
            (1, BigInt::one(), true, Sign::Minus)
        );

        let h = BottTower::from_i64(&[&[], &[1]]).unwrap();
        let f = lemma_form_decompose(
            &h,
            &VanishingPair {
                z: lin(&h, &[0, 1]),
                zbar: lin(&h, &[-1, 1]),
            },
        )
        .unwrap()
        .unwrap();
        assert_eq!(
            (f.j, f.a.clone(), f.u.is_zero(), f.sign),
            (2, BigInt::one(), true, Sign::Plus)
        );

        let t2 = BottTower::trivial(2).unwrap();
        let pair = VanishingPair {
            z: lin(&t2, &[1, 1]),
            zbar: lin(&t2, &[1, -1]),
        };
        let f = lemma_form_decompose(&t2, &pair).unwrap().unwrap();
        assert_eq!(f.j, 2);
        assert_eq!(f.a, BigInt::one());
        assert_eq!(f.u, lin(&t2, &[1, 0]));
        assert_eq!(f.sign, Sign::Minus);
        assert_eq!(f.pair().unwrap(), pair);
    }

    #[test]
    fn decompose_rejects_non_vanishing() {
        let t2 = BottTower::trivial(2).unwrap();
        let pair = VanishingPair {
            z: lin(&t2, &[1, 0]),
            zbar: lin(&t2, &[0, 1]),
        };
        assert_eq!(lemma_form_decompose(&t2, &pair), Err(Error::NotVanishing));
    }

    #[test]
    fn box_vectors_counts() {
        assert_eq!(box_vectors(3, 1).count(), 27);
        assert_eq!(box_vectors(0, 2).count(), 1);
        let v: Vec<Vec<i64>> = box_vectors(1, 1).collect();
        assert_eq!(v, vec![vec![-1], vec![0], vec![1]]);
    }
}
