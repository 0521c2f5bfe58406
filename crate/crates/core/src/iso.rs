//! Filtered cohomology isomorphisms between Bott towers.
//!
//! A filtered isomorphism `Φ: H*(B') -> H*(B)` preserves every `F_k`, so on
//! degree 2 it sends `x'_i` into `F_i H^2`, i.e. its matrix is triangular.
//! It is invertible over Z with a triangular inverse, so the diagonal entries
//! are units: `Φ(x'_i) = s_i x_i + τ_i` with `s_i = ±1` and `τ_i` of
//! filtration level below `i`.
//!
//! Comparing coefficients of `x_i` and of `F_{i-1}` in the relation
//! `Φ(x'_i)^2 = Φ(α'_i) Φ(x'_i)` (using `x_i^2 = α_i x_i`) gives
//!
//! ```text
//! Φ(α'_i) = s_i α_i + 2 τ_i        and        τ_i (τ_i - Φ(α'_i)) = 0.
//! ```
//!
//! The first equation fixes `τ_i` once `s_i` and the lower levels are chosen,
//! so a search over the `2^n` sign vectors, lowest level first, is exhaustive.
//! That is [`find_tower_iso`]. Every witness it returns is realized by an
//! isomorphism of towers, built one stage at a time from bundle isomorphisms
//! of the projectivizations.
//!
//! [`brute_force_filtered_iso`] searches triangular matrices directly and
//! serves as an independent check. [`bounded_ring_iso_search`] drops the
//! filtration and is only a semi-decision within a coefficient box.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bundles::projective_iso_solutions;
use crate::linalg::{is_primitive, IntMatrix};
use crate::ring::{BottTower, CohClass, Subset};
use crate::vanishing::box_vectors;
use crate::{Error, Result, Sign};

/// `Φ(x'_i) = s_i x_i + τ_i` from a source tower `B'` to a target tower `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredIsoWitness {
    pub source: BottTower,
    pub target: BottTower,
    pub signs: Vec<Sign>,
    /// Classes over the target tower; `τ_i` lives in `F_{i-1}`.
    pub shifts: Vec<CohClass>,
}

impl FilteredIsoWitness {
    pub fn identity(tower: &BottTower) -> FilteredIsoWitness {
        let n = tower.height();
        FilteredIsoWitness {
            source: tower.clone(),
            target: tower.clone(),
            signs: alloc::vec![Sign::Plus; n],
            shifts: alloc::vec![CohClass::zero(tower); n],
        }
    }

    pub fn height(&self) -> usize {
        self.signs.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.source.height();
        if self.target.height() != n {
            return Err(Error::HeightMismatch {
                left: n,
                right: self.target.height(),
            });
        }
        if self.signs.len() != n || self.shifts.len() != n {
            return Err(Error::MalformedWitness(format!(
                "expected {n} signs and shifts, found {} and {}",
                self.signs.len(),
                self.shifts.len()
            )));
        }
        for (k, tau) in self.shifts.iter().enumerate() {
            if tau.tower() != &self.target {
                return Err(Error::TowerMismatch);
            }
            if !tau.is_homogeneous_of(2) {
                return Err(Error::NotHomogeneous { expected_degree: 2 });
            }
            let level = tau.filtration_level();
            if level > k {
                return Err(Error::FiltrationViolation {
                    stage: k + 1,
                    level,
                });
            }
        }
        Ok(())
    }

    /// `Φ(x'_i)` for `i = 1..n`.
    pub fn images(&self) -> Result<Vec<CohClass>> {
        self.check_shape()?;
        Ok(self
            .shifts
            .iter()
            .enumerate()
            .map(|(k, tau)| {
                let x = self.target.generator(k + 1).expect("index in range");
                &x.scale_i64(self.signs[k].to_i64()) + tau
            })
            .collect())
    }

    /// The degree-2 matrix of `Φ`: column `i` holds `Φ(x'_i)`.
    pub fn to_matrix(&self) -> Result<RingHomMatrix> {
        let n = self.height();
        let columns = self
            .images()?
            .iter()
            .map(|c| c.linear_coeffs())
            .collect::<Result<Vec<_>>>()?;
        Ok(RingHomMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            images: IntMatrix::from_columns(n, &columns)?,
        })
    }

    /// Largest absolute coefficient over all shifts.
    pub fn max_shift(&self) -> BigInt {
        self.shifts
            .iter()
            .map(CohClass::max_abs_coeff)
            .max()
            .unwrap_or_default()
    }

    /// The inverse `Φ^{-1}: H*(B) -> H*(B')`.
    ///
    /// From `x_i = s_i (Φ(x'_i) - τ_i)` we get
    /// `Φ^{-1}(x_i) = s_i x'_i - s_i Φ^{-1}(τ_i)`, where `τ_i` only involves
    /// lower levels whose inverse images are already known.
    pub fn inverse(&self) -> Result<FilteredIsoWitness> {
        self.check_shape()?;
        let src = &self.source;
        let mut inv_images: Vec<CohClass> = Vec::with_capacity(self.height());
        let mut shifts = Vec::with_capacity(self.height());
        for (k, tau) in self.shifts.iter().enumerate() {
            let pulled = substitute_linear(tau, &inv_images, src)?;
            let shift = -pulled.scale_i64(self.signs[k].to_i64());
            let x = src.generator(k + 1)?;
            inv_images.push(&x.scale_i64(self.signs[k].to_i64()) + &shift);
            shifts.push(shift);
        }
        Ok(FilteredIsoWitness {
            source: self.target.clone(),
            target: self.source.clone(),
            signs: self.signs.clone(),
            shifts,
        })
    }

    /// `self ∘ inner`, where `inner: H*(B'') -> H*(B')` and
    /// `self: H*(B') -> H*(B)`.
    pub fn compose(&self, inner: &FilteredIsoWitness) -> Result<FilteredIsoWitness> {
        self.check_shape()?;
        inner.check_shape()?;
        if inner.target != self.source {
            return Err(Error::TowerMismatch);
        }
        let images = self.images()?;
        let mut signs = Vec::with_capacity(self.height());
        let mut shifts = Vec::with_capacity(self.height());
        for k in 0..self.height() {
            let t = inner.signs[k];
            signs.push(self.signs[k] * t);
            let mapped = substitute_linear(&inner.shifts[k], &images, &self.target)?;
            shifts.push(&self.shifts[k].scale_i64(t.to_i64()) + &mapped);
        }
        Ok(FilteredIsoWitness {
            source: inner.source.clone(),
            target: self.target.clone(),
            signs,
            shifts,
        })
    }
}

/// Image of a degree-2 class `Σ c_j x_j` under `x_j -> images[j-1]`; only the
/// generators that occur need images.
fn substitute_linear(u: &CohClass, images: &[CohClass], target: &BottTower) -> Result<CohClass> {
    let mut acc = CohClass::zero(target);
    for (s, c) in u.terms() {
        if s.len() != 1 {
            return Err(Error::NotHomogeneous { expected_degree: 2 });
        }
        let j = s.max_index();
        let img = images.get(j - 1).ok_or(Error::FiltrationViolation {
            stage: images.len() + 1,
            level: j,
        })?;
        acc = acc.try_add(&img.scale(c))?;
    }
    Ok(acc)
}

/// Image of an arbitrary class under the ring map `x'_i -> images[i-1]`.
fn substitute(u: &CohClass, images: &[CohClass], target: &BottTower) -> CohClass {
    let mut acc = CohClass::zero(target);
    for (s, c) in u.terms() {
        let mut prod = CohClass::one(target).scale(c);
        for i in s.indices() {
            prod = &prod * &images[i - 1];
        }
        acc = &acc + &prod;
    }
    acc
}

/// `Φ(u)` for a class `u` over the source tower.
pub fn apply_witness(witness: &FilteredIsoWitness, u: &CohClass) -> Result<CohClass> {
    let images = witness.images()?;
    if u.tower() != &witness.source {
        return Err(Error::TowerMismatch);
    }
    Ok(substitute(u, &images, &witness.target))
}

/// Checks, level by level, that `τ_i ∈ F_{i-1}H^2`,
/// `Φ(α'_i) = s_i α_i + 2τ_i` and `τ_i (τ_i - Φ(α'_i)) = 0`.
pub fn verify_witness(
    src: &BottTower,
    dst: &BottTower,
    witness: &FilteredIsoWitness,
) -> Result<bool> {
    if src.height() != dst.height() {
        return Err(Error::HeightMismatch {
            left: src.height(),
            right: dst.height(),
        });
    }
    if witness.source != *src || witness.target != *dst {
        return Err(Error::TowerMismatch);
    }
    let n = src.height();
    if witness.signs.len() != n || witness.shifts.len() != n {
        return Ok(false);
    }
    let mut images: Vec<CohClass> = Vec::with_capacity(n);
    for (k, (sign, tau)) in witness.signs.iter().zip(&witness.shifts).enumerate() {
        let i = k + 1;
        if tau.tower() != dst || !tau.is_homogeneous_of(2) || tau.filtration_level() >= i {
            return Ok(false);
        }
        let w = substitute_linear(&src.alpha(i)?, &images, dst)?;
        let expected = &dst.alpha(i)?.scale_i64(sign.to_i64()) + &tau.scale_i64(2);
        if w != expected {
            return Ok(false);
        }
        if !(tau * &(tau - &w)).is_zero() {
            return Ok(false);
        }
        images.push(&dst.generator(i)?.scale_i64(sign.to_i64()) + tau);
    }
    Ok(true)
}

/// Lifts a filtered isomorphism one level at a time; `s = +1` is explored
/// first. Returns `None` exactly when the towers are not isomorphic.
pub fn find_tower_iso(src: &BottTower, dst: &BottTower) -> Result<Option<FilteredIsoWitness>> {
    if src.height() != dst.height() {
        return Err(Error::HeightMismatch {
            left: src.height(),
            right: dst.height(),
        });
    }
    let mut search = Lift {
        src,
        dst,
        signs: Vec::new(),
        shifts: Vec::new(),
        images: Vec::new(),
    };
    if search.descend()? {
        Ok(Some(FilteredIsoWitness {
            source: src.clone(),
            target: dst.clone(),
            signs: search.signs,
            shifts: search.shifts,
        }))
    } else {
        Ok(None)
    }
}

struct Lift<'a> {
    src: &'a BottTower,
    dst: &'a BottTower,
    signs: Vec<Sign>,
    shifts: Vec<CohClass>,
    images: Vec<CohClass>,
}

impl Lift<'_> {
    fn descend(&mut self) -> Result<bool> {
        let i = self.images.len() + 1;
        if i > self.src.height() {
            return Ok(true);
        }
        let w = substitute_linear(&self.src.alpha(i)?, &self.images, self.dst)?;
        let alpha = self.dst.alpha(i)?;
        let two = BigInt::from(2);
        for s in Sign::BOTH {
            let delta = &w - &alpha.scale_i64(s.to_i64());
            let Some(tau) = delta.div_exact(&two) else {
                continue;
            };
            if !(&tau * &(&tau - &w)).is_zero() {
                continue;
            }
            self.images
                .push(&self.dst.generator(i)?.scale_i64(s.to_i64()) + &tau);
            self.signs.push(s);
            self.shifts.push(tau);
            if self.descend()? {
                return Ok(true);
            }
            self.images.pop();
            self.signs.pop();
            self.shifts.pop();
        }
        Ok(false)
    }
}

/// The `H*(base)`-algebra automorphisms `X -> sX + α'` of
/// `H*(base)[X]/(X^2 - αX)`: always `(+1, 0)` and `(-1, α)`.
pub fn fiber_automorphisms(base: &BottTower, alpha: &CohClass) -> Result<Vec<(Sign, CohClass)>> {
    if alpha.tower() != base {
        return Err(Error::TowerMismatch);
    }
    Ok(projective_iso_solutions(alpha, alpha)?
        .into_iter()
        .map(|w| (w.s, w.alpha_prime))
        .collect())
}

/// A degree-2 ring map given by its matrix: column `i` holds `Φ(x'_i)` in the
/// basis `x_1..x_n` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHomMatrix {
    pub source: BottTower,
    pub target: BottTower,
    pub images: IntMatrix,
}

impl RingHomMatrix {
    pub fn image(&self, i: usize) -> Result<CohClass> {
        CohClass::from_linear(&self.target, &self.images.column(i - 1))
    }

    fn image_classes(&self) -> Result<Vec<CohClass>> {
        (1..=self.source.height()).map(|i| self.image(i)).collect()
    }

    /// Whether `Φ(x'_i)^2 = Φ(α'_i) Φ(x'_i)` for every `i`, so that the
    /// assignment extends to a ring homomorphism.
    pub fn is_ring_hom(&self) -> Result<bool> {
        let n = self.source.height();
        if self.target.height() != n || self.images.rows() != n || self.images.cols() != n {
            return Ok(false);
        }
        let images = self.image_classes()?;
        for i in 1..=n {
            let w = substitute_linear(&self.source.alpha(i)?, &images, &self.target)?;
            let z = &images[i - 1];
            if z.square() != &w * z {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lower-index-supported columns with `±1` on the diagonal.
    pub fn is_filtered(&self) -> bool {
        let n = self.images.rows();
        (0..n).all(|j| {
            self.images[(j, j)].magnitude().is_one()
                && (j + 1..n).all(|i| self.images[(i, j)].is_zero())
        })
    }

    pub fn apply(&self, u: &CohClass) -> Result<CohClass> {
        if u.tower() != &self.source {
            return Err(Error::TowerMismatch);
        }
        Ok(substitute(u, &self.image_classes()?, &self.target))
    }

    /// Reads off `(s_i, τ_i)` from a filtered matrix.
    pub fn to_witness(&self) -> Option<FilteredIsoWitness> {
        if !self.is_filtered() {
            return None;
        }
        let n = self.images.rows();
        let mut signs = Vec::with_capacity(n);
        let mut shifts = Vec::with_capacity(n);
        for j in 0..n {
            signs.push(if self.images[(j, j)] > BigInt::zero() {
                Sign::Plus
            } else {
                Sign::Minus
            });
            let tau = CohClass::from_terms(
                &self.target,
                (0..j).map(|i| (Subset::singleton(i + 1), self.images[(i, j)].clone())),
            )
            .ok()?;
            shifts.push(tau);
        }
        Some(FilteredIsoWitness {
            source: self.source.clone(),
            target: self.target.clone(),
            signs,
            shifts,
        })
    }
}

fn check_heights(src: &BottTower, dst: &BottTower) -> Result<()> {
    if src.height() != dst.height() {
        return Err(Error::HeightMismatch {
            left: src.height(),
            right: dst.height(),
        });
    }
    Ok(())
}

/// Exhaustive search over triangular matrices with `±1` diagonal and
/// off-diagonal entries in `[-bound, bound]`, checking the ring relations
/// directly. Columns are filled left to right and each relation is tested as
/// soon as its column is set.
pub fn brute_force_filtered_iso(
    src: &BottTower,
    dst: &BottTower,
    bound: u32,
) -> Result<Option<RingHomMatrix>> {
    check_heights(src, dst)?;
    let n = src.height();
    let mut images: Vec<CohClass> = Vec::with_capacity(n);
    if !triangular_search(src, dst, bound as i64, &mut images)? {
        return Ok(None);
    }
    let columns = images
        .iter()
        .map(|c| c.linear_coeffs())
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(RingHomMatrix {
        source: src.clone(),
        target: dst.clone(),
        images: IntMatrix::from_columns(n, &columns)?,
    }))
}

fn triangular_search(
    src: &BottTower,
    dst: &BottTower,
    bound: i64,
    images: &mut Vec<CohClass>,
) -> Result<bool> {
    let i = images.len() + 1;
    if i > src.height() {
        return Ok(true);
    }
    let w = substitute_linear(&src.alpha(i)?, images, dst)?;
    for diag in [1i64, -1] {
        for below in box_vectors(i - 1, bound) {
            let mut coeffs: Vec<BigInt> = below.into_iter().map(BigInt::from).collect();
            coeffs.push(BigInt::from(diag));
            coeffs.resize(src.height(), BigInt::zero());
            let z = CohClass::from_linear(dst, &coeffs)?;
            if z.square() != &w * &z {
                continue;
            }
            images.push(z);
            if triangular_search(src, dst, bound, images)? {
                return Ok(true);
            }
            images.pop();
        }
    }
    Ok(false)
}

/// Unfiltered ring isomorphisms whose matrices have entries in
/// `[-bound, bound]`, in search order, stopping after `limit` hits.
///
/// Each column `Φ(x'_i)` must satisfy `z (z - Φ(α'_i)) = 0` and, since the
/// final matrix is unimodular, be primitive.
pub fn ring_isos_within_bound(
    src: &BottTower,
    dst: &BottTower,
    bound: u32,
    limit: usize,
) -> Result<Vec<RingHomMatrix>> {
    check_heights(src, dst)?;
    let n = src.height();
    let candidates: Vec<CohClass> = box_vectors(n, bound as i64)
        .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
        .filter(|v| is_primitive(v))
        .map(|v| CohClass::from_linear(dst, &v))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(n);
    unfiltered_search(src, dst, &candidates, &mut images, limit, &mut found)?;
    Ok(found)
}

fn unfiltered_search(
    src: &BottTower,
    dst: &BottTower,
    candidates: &[CohClass],
    images: &mut Vec<CohClass>,
    limit: usize,
    found: &mut Vec<RingHomMatrix>,
) -> Result<()> {
    if found.len() >= limit {
        return Ok(());
    }
    let n = src.height();
    let i = images.len() + 1;
    if i > n {
        let columns = images
            .iter()
            .map(|c| c.linear_coeffs())
            .collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_columns(n, &columns)?;
        if m.is_unimodular() {
            found.push(RingHomMatrix {
                source: src.clone(),
                target: dst.clone(),
                images: m,
            });
        }
        return Ok(());
    }
    let w = substitute_linear(&src.alpha(i)?, images, dst)?;
    for z in candidates {
        if images.contains(z) || !(z * &(z - &w)).is_zero() {
            continue;
        }
        images.push(z.clone());
        unfiltered_search(src, dst, candidates, images, limit, found)?;
        images.pop();
        if found.len() >= limit {
            break;
        }
    }
    Ok(())
}

/// First unfiltered ring isomorphism within the box. `None` means "none
/// within bound", never "not isomorphic".
pub fn bounded_ring_iso_search(
    src: &BottTower,
    dst: &BottTower,
    bound: u32,
) -> Result<Option<RingHomMatrix>> {
    Ok(ring_isos_within_bound(src, dst, bound, 1)?
        .into_iter()
        .next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lin(t: &BottTower, c: &[i64]) -> CohClass {
        CohClass::from_linear_i64(t, c).unwrap()
    }

    fn tower(rows: &[&[i64]]) -> BottTower {
        BottTower::from_i64(rows).unwrap()
    }

    fn witness(
        src: &BottTower,
        dst: &BottTower,
        signs: &[i64],
        shifts: Vec<CohClass>,
    ) -> FilteredIsoWitness {
        FilteredIsoWitness {
            source: src.clone(),
            target: dst.clone(),
            signs: signs.iter().map(|&s| Sign::from_i64(s).unwrap()).collect(),
            shifts,
        }
    }

    #[test]
    fn apply_identity() {
        let t = tower(&[&[], &[1], &[2, -1]]);
        let id = FilteredIsoWitness::identity(&t);
        let u = &(t.generator(1).unwrap() * t.generator(3).unwrap()) + &lin(&t, &[1, -2, 0]);
        assert_eq!(apply_witness(&id, &u).unwrap(), u);
    }

    #[test]
    fn apply_sign_flip() {
        let t = BottTower::trivial(1).unwrap();
        let w = witness(&t, &t, &[-1], vec![CohClass::zero(&t)]);
        assert_eq!(apply_witness(&w, &lin(&t, &[1])).unwrap(), lin(&t, &[-1]));
    }

    #[test]
    fn hirzebruch_three_to_one() {
        let src = tower(&[&[], &[3]]);
        let dst = tower(&[&[], &[1]]);
        let w = witness(
            &src,
            &dst,
            &[1, 1],
            vec![CohClass::zero(&dst), lin(&dst, &[1, 0])],
        );
        assert_eq!(
            apply_witness(&w, &src.generator(2).unwrap()).unwrap(),
            lin(&dst, &[1, 1])
        );
        assert!(verify_witness(&src, &dst, &w).unwrap());
        let x1x2 = dst.generator(1).unwrap() * dst.generator(2).unwrap();
        let img = apply_witness(&w, &src.generator(2).unwrap()).unwrap();
        assert_eq!(img.square(), x1x2.scale_i64(3));

        let found = find_tower_iso(&src, &dst).unwrap().unwrap();
        assert!(verify_witness(&src, &dst, &found).unwrap());
        let m = brute_force_filtered_iso(&src, &dst, 2).unwrap().unwrap();
        assert!(m.is_ring_hom().unwrap() && m.is_filtered());
    }

    #[test]
    fn parity_obstruction() {
        let src = tower(&[&[], &[1]]);
        let dst = tower(&[&[], &[0]]);
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                let w = witness(&src, &dst, &[s1, s2], vec![CohClass::zero(&dst); 2]);
                assert!(!verify_witness(&src, &dst, &w).unwrap());
            }
        }
        assert!(find_tower_iso(&src, &dst).unwrap().is_none());
        assert!(brute_force_filtered_iso(&src, &dst, 3).unwrap().is_none());
        assert!(bounded_ring_iso_search(&src, &dst, 3).unwrap().is_none());
    }

    #[test]
    fn equal_towers() {
        let t = tower(&[&[], &[2], &[-1, 1]]);
        let w = find_tower_iso(&t, &t).unwrap().unwrap();
        assert_eq!(w, FilteredIsoWitness::identity(&t));
        assert!(verify_witness(&t, &t, &w).unwrap());
        let m = brute_force_filtered_iso(&t, &t, 1).unwrap().unwrap();
        assert_eq!(m.images, IntMatrix::identity(3));
        let m = bounded_ring_iso_search(&t, &t, 1).unwrap().unwrap();
        assert!(m.is_ring_hom().unwrap());
    }

    #[test]
    fn height_mismatch_is_an_error() {
        let a = BottTower::trivial(2).unwrap();
        let b = BottTower::trivial(3).unwrap();
        assert!(matches!(
            find_tower_iso(&a, &b),
            Err(Error::HeightMismatch { .. })
        ));
        assert!(matches!(
            brute_force_filtered_iso(&a, &b, 1),
            Err(Error::HeightMismatch { .. })
        ));
        assert!(matches!(
            bounded_ring_iso_search(&a, &b, 1),
            Err(Error::HeightMismatch { .. })
        ));
        let w = FilteredIsoWitness::identity(&a);
        assert!(matches!(
            verify_witness(&a, &b, &w),
            Err(Error::HeightMismatch { .. })
        ));
    }

    #[test]
    fn shift_above_its_level_is_rejected() {
        let t = BottTower::trivial(2).unwrap();
        let w = witness(&t, &t, &[1, 1], vec![lin(&t, &[1, 0]), CohClass::zero(&t)]);
        assert!(!verify_witness(&t, &t, &w).unwrap());
        assert_eq!(
            apply_witness(&w, &lin(&t, &[1, 0])),
            Err(Error::FiltrationViolation { stage: 1, level: 1 })
        );
    }

    #[test]
    fn fiber_automorphism_examples() {
        let base = BottTower::trivial(1).unwrap();
        let zero = CohClass::zero(&base);
        assert_eq!(
            fiber_automorphisms(&base, &zero).unwrap(),
            vec![(Sign::Plus, zero.clone()), (Sign::Minus, zero.clone())]
        );
        let x1 = lin(&base, &[1]);
        assert_eq!(
            fiber_automorphisms(&base, &x1).unwrap(),
            vec![(Sign::Plus, zero.clone()), (Sign::Minus, x1.clone())]
        );
        let b2 = BottTower::trivial(2).unwrap();
        let a = lin(&b2, &[1, 1]);
        assert_eq!(
            fiber_automorphisms(&b2, &a).unwrap(),
            vec![(Sign::Plus, CohClass::zero(&b2)), (Sign::Minus, a.clone())]
        );
    }

    #[test]
    fn swap_is_an_unfiltered_iso() {
        let t = BottTower::trivial(2).unwrap();
        let swap = RingHomMatrix {
            source: t.clone(),
            target: t.clone(),
            images: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap(),
        };
        assert!(swap.is_ring_hom().unwrap());
        assert!(swap.images.is_unimodular());
        assert!(!swap.is_filtered());
        assert!(swap.to_witness().is_none());
        let all = ring_isos_within_bound(&t, &t, 1, usize::MAX).unwrap();
        assert!(all.contains(&swap));
        assert!(all.iter().all(|m| m.is_ring_hom().unwrap()));
    }

    #[test]
    fn inverse_and_compose() {
        let family = crate::classify::enumerate_towers(3, 1).unwrap().towers;
        let mut checked = 0;
        for a in &family {
            for b in &family {
                let Some(w) = find_tower_iso(a, b).unwrap() else {
                    assert!(find_tower_iso(b, a).unwrap().is_none());
                    continue;
                };
                let inv = w.inverse().unwrap();
                assert!(verify_witness(b, a, &inv).unwrap());
                assert_eq!(w.compose(&inv).unwrap(), FilteredIsoWitness::identity(b));
                assert_eq!(inv.compose(&w).unwrap(), FilteredIsoWitness::identity(a));
                if !w.shifts[2].is_zero() {
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn matrix_witness_round_trip() {
        let src = tower(&[&[], &[3]]);
        let dst = tower(&[&[], &[1]]);
        let w = find_tower_iso(&src, &dst).unwrap().unwrap();
        let m = w.to_matrix().unwrap();
        assert!(m.is_ring_hom().unwrap());
        assert_eq!(m.to_witness().unwrap(), w);
    }
}
