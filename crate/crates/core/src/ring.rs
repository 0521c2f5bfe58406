//! The ring `H*(B_n) = Z[x_1..x_n]/(x_i^2 - alpha_i x_i)`.
//!
//! Classes are stored sparsely over the square-free monomial basis. The basis
//! is ordered by cardinality, then lexicographically on sorted index lists;
//! every matrix layout downstream follows this order.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest height the bitmask monomial encoding supports.
pub const MAX_HEIGHT: usize = 32;

/// A set of generator indices, i.e. the square-free monomial `x_S`.
///
/// Bit `i - 1` stands for `x_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a subset from 1-based indices. Duplicates collapse.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Subset> {
        let mut bits = 0u32;
        for i in indices {
            if i == 0 || i > MAX_HEIGHT {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: MAX_HEIGHT,
                });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Subset(bits))
    }

    pub fn singleton(i: usize) -> Subset {
        debug_assert!((1..=MAX_HEIGHT).contains(&i));
        Subset(1 << (i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_HEIGHT).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    /// Largest index, 0 for the empty set.
    pub fn max_index(self) -> usize {
        (u32::BITS - self.0.leading_zeros()) as usize
    }

    /// Indices in increasing order, 1-based.
    pub fn indices(self) -> impl DoubleEndedIterator<Item = usize> {
        (1..=MAX_HEIGHT).filter(move |&i| self.0 & (1 << (i - 1)) != 0)
    }

    /// All `k`-subsets of `{1..n}` in basis order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Subset(idx.iter().fold(0, |b, &i| b | (1 << (i - 1)))));
            // advance to the next combination in lexicographic order
            let mut p = k;
            while p > 0 && idx[p - 1] == n - k + p {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for q in p..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // the smallest index present in only one of the two sets decides
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// The degree `2k` of a homogeneous class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading {
    pub degree: usize,
}

impl Grading {
    pub fn from_subset_size(k: usize) -> Grading {
        Grading { degree: 2 * k }
    }

    /// Cardinality of the monomials in this degree.
    pub fn half(self) -> usize {
        self.degree / 2
    }
}

#[derive(Debug, PartialEq, Eq)]
struct TowerData {
    coeffs: Vec<Vec<BigInt>>,
    /// Nonzero entries of `alpha_i` as `(j, c_ij)`, indexed by `i - 1`.
    alphas: Vec<Vec<(usize, BigInt)>>,
}

/// A Bott tower, given by the classes `alpha_i` of its stages.
///
/// Cheap to clone; all clones share the same data.
#[derive(Clone)]
pub struct BottTower(Arc<TowerData>);

impl PartialEq for BottTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.coeffs == other.0.coeffs
    }
}

impl Eq for BottTower {}

impl PartialOrd for BottTower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BottTower {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.coeffs.cmp(&other.0.coeffs)
    }
}

impl fmt::Debug for BottTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BottTower")
            .field("coeffs", &self.0.coeffs)
            .finish()
    }
}

impl BottTower {
    /// Validates and builds a tower. `coeffs[i - 1]` lists `c_i1..c_i(i-1)`.
    pub fn new(n: usize, coeffs: Vec<Vec<BigInt>>) -> Result<BottTower> {
        if n > MAX_HEIGHT {
            return Err(Error::TowerTooTall { n });
        }
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: coeffs.len(),
            });
        }
        for (i, row) in coeffs.iter().enumerate() {
            if row.len() != i {
                return Err(Error::MalformedTower {
                    stage: i + 1,
                    expected: i,
                    found: row.len(),
                });
            }
        }
        let alphas = coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j + 1, c.clone()))
                    .collect()
            })
            .collect();
        Ok(BottTower(Arc::new(TowerData { coeffs, alphas })))
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[&[i64]]) -> Result<BottTower> {
        let rows = coeffs
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        BottTower::new(coeffs.len(), rows)
    }

    /// The tower with every `alpha_i = 0`, a product of spheres.
    pub fn trivial(n: usize) -> Result<BottTower> {
        BottTower::new(n, (0..n).map(|i| alloc::vec![BigInt::zero(); i]).collect())
    }

    pub fn height(&self) -> usize {
        self.0.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.0.coeffs
    }

    /// `c_ij`, with 1-based `j < i`.
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.0.coeffs[i - 1][j - 1]
    }

    /// The class `alpha_i` as a ring element.
    pub fn alpha(&self, i: usize) -> Result<CohClass> {
        self.check_index(i)?;
        let terms = self.0.alphas[i - 1]
            .iter()
            .map(|(j, c)| (Subset::singleton(*j), c.clone()))
            .collect();
        Ok(CohClass {
            tower: self.clone(),
            terms,
        })
    }

    fn alpha_terms(&self, i: usize) -> &[(usize, BigInt)] {
        &self.0.alphas[i - 1]
    }

    /// The height-`k` sub-tower given by the leading `k` stages.
    pub fn restrict_stage(&self, k: usize) -> Result<BottTower> {
        let n = self.height();
        if k > n {
            return Err(Error::StageOutOfRange { k, n });
        }
        if k == n {
            return Ok(self.clone());
        }
        BottTower::new(k, self.0.coeffs[..k].to_vec())
    }

    /// Rank of `H^{2k}`, i.e. `binomial(n, k)`.
    pub fn graded_rank(&self, k: usize) -> u64 {
        binomial(self.height(), k)
    }

    pub fn generator(&self, i: usize) -> Result<CohClass> {
        self.check_index(i)?;
        Ok(CohClass::monomial(
            self,
            Subset::singleton(i),
            BigInt::one(),
        ))
    }

    /// The degree-2 basis `x_1, ..., x_n`.
    pub fn generators(&self) -> Vec<CohClass> {
        (1..=self.height())
            .map(|i| CohClass::monomial(self, Subset::singleton(i), BigInt::one()))
            .collect()
    }

    /// Basis monomials of `H^{2k}` in basis order.
    pub fn basis(&self, k: usize) -> Vec<Subset> {
        Subset::all_of_size(self.height(), k)
    }

    /// Largest absolute value of a tower entry.
    pub fn max_abs_entry(&self) -> BigInt {
        self.0
            .coeffs
            .iter()
            .flatten()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.height() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.height(),
            });
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// An element of `H*(B_n)` in canonical sparse form: no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    tower: BottTower,
    terms: BTreeMap<Subset, BigInt>,
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohClass({self})")
    }
}

impl PartialOrd for CohClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by tower, then by the sorted term list.
impl Ord for CohClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tower
            .cmp(&other.tower)
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl CohClass {
    pub fn zero(tower: &BottTower) -> CohClass {
        CohClass {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(tower: &BottTower) -> CohClass {
        CohClass::monomial(tower, Subset::EMPTY, BigInt::one())
    }

    /// `coeff * x_S`. Indices are not validated against the tower.
    fn monomial(tower: &BottTower, s: Subset, coeff: BigInt) -> CohClass {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(s, coeff);
        }
        CohClass {
            tower: tower.clone(),
            terms,
        }
    }

    /// Sums the given terms; repeated subsets accumulate and zeros are dropped.
    pub fn from_terms<I>(tower: &BottTower, terms: I) -> Result<CohClass>
    where
        I: IntoIterator<Item = (Subset, BigInt)>,
    {
        let n = tower.height();
        let mut map = BTreeMap::new();
        for (s, c) in terms {
            if s.max_index() > n {
                return Err(Error::IndexOutOfRange {
                    index: s.max_index(),
                    n,
                });
            }
            accumulate(&mut map, s, c);
        }
        Ok(CohClass {
            tower: tower.clone(),
            terms: map,
        })
    }

    /// The degree-2 class `sum_i coeffs[i-1] x_i`.
    pub fn from_linear(tower: &BottTower, coeffs: &[BigInt]) -> Result<CohClass> {
        if coeffs.len() != tower.height() {
            return Err(Error::DimensionMismatch {
                expected: tower.height(),
                found: coeffs.len(),
            });
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Subset::singleton(i + 1), c.clone()))
            .collect();
        Ok(CohClass {
            tower: tower.clone(),
            terms,
        })
    }

    pub fn from_linear_i64(tower: &BottTower, coeffs: &[i64]) -> Result<CohClass> {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        CohClass::from_linear(tower, &v)
    }

    pub fn tower(&self) -> &BottTower {
        &self.tower
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &BigInt)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, s: Subset) -> BigInt {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree of a nonzero homogeneous class; `None` for zero or
    /// inhomogeneous classes.
    pub fn grading(&self) -> Option<Grading> {
        let mut sizes = self.terms.keys().map(|s| s.len());
        let first = sizes.next()?;
        sizes
            .all(|k| k == first)
            .then(|| Grading::from_subset_size(first))
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|s| 2 * s.len() == degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.grading().is_some()
    }

    /// Smallest `k` such that the class lies in `F_k`, i.e. uses only
    /// `x_1..x_k`.
    pub fn filtration_level(&self) -> usize {
        self.terms.keys().map(|s| s.max_index()).max().unwrap_or(0)
    }

    /// Coefficients in the basis `x_1..x_n` of a degree-2 class.
    pub fn linear_coeffs(&self) -> Result<Vec<BigInt>> {
        if !self.is_homogeneous_of(2) {
            return Err(Error::NotHomogeneous { expected_degree: 2 });
        }
        let mut v = alloc::vec![BigInt::zero(); self.tower.height()];
        for (s, c) in &self.terms {
            v[s.max_index() - 1] = c.clone();
        }
        Ok(v)
    }

    /// Largest absolute coefficient, 0 for the zero class.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// True when every coefficient is even.
    pub fn is_even(&self) -> bool {
        self.terms.values().all(|c| c.is_even())
    }

    /// Exact division of every coefficient by `d`, `None` if some coefficient
    /// is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<CohClass> {
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*s, q);
        }
        Some(CohClass {
            tower: self.tower.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> CohClass {
        if k.is_zero() {
            return CohClass::zero(&self.tower);
        }
        CohClass {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(s, c)| (*s, c * k)).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> CohClass {
        self.scale(&BigInt::from(k))
    }

    fn check_same_tower(&self, other: &CohClass) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn try_add(&self, other: &CohClass) -> Result<CohClass> {
        self.check_same_tower(other)?;
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            accumulate(&mut terms, *s, c.clone());
        }
        Ok(CohClass {
            tower: self.tower.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &CohClass) -> Result<CohClass> {
        self.check_same_tower(other)?;
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            accumulate(&mut terms, *s, -c);
        }
        Ok(CohClass {
            tower: self.tower.clone(),
            terms,
        })
    }

    /// Product in normal form.
    ///
    /// Each monomial of `other` is absorbed one generator at a time, highest
    /// index first; a collision `x_i * x_i` is rewritten to `alpha_i x_i`,
    /// which only introduces indices below `i`.
    pub fn try_mul(&self, other: &CohClass) -> Result<CohClass> {
        self.check_same_tower(other)?;
        let tower = &self.tower;
        let mut out = BTreeMap::new();
        for (t, ct) in &other.terms {
            let mut state: BTreeMap<Subset, BigInt> =
                self.terms.iter().map(|(s, cs)| (*s, cs * ct)).collect();
            for j in t.indices().rev() {
                let mut next = BTreeMap::new();
                for (s, c) in state {
                    mul_generator(tower, s, j, c, &mut next);
                }
                state = next;
            }
            for (s, c) in state {
                accumulate(&mut out, s, c);
            }
        }
        Ok(CohClass {
            tower: tower.clone(),
            terms: out,
        })
    }

    /// `u^2`.
    pub fn square(&self) -> CohClass {
        self * self
    }

    /// Re-reads the same coefficients over another tower, e.g. to move a class
    /// of low filtration level into a sub-tower or back.
    pub fn reinterpret_in(&self, tower: &BottTower) -> Result<CohClass> {
        CohClass::from_terms(tower, self.terms.iter().map(|(s, c)| (*s, c.clone())))
    }
}

/// Integer linear combination of classes over one tower.
pub fn linear_combine<'a, I>(tower: &BottTower, pairs: I) -> Result<CohClass>
where
    I: IntoIterator<Item = (BigInt, &'a CohClass)>,
{
    let mut terms = BTreeMap::new();
    for (k, u) in pairs {
        if u.tower != *tower {
            return Err(Error::TowerMismatch);
        }
        if k.is_zero() {
            continue;
        }
        for (s, c) in &u.terms {
            accumulate(&mut terms, *s, c * &k);
        }
    }
    Ok(CohClass {
        tower: tower.clone(),
        terms,
    })
}

fn accumulate(terms: &mut BTreeMap<Subset, BigInt>, s: Subset, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(s) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Adds `c * x_S * x_j` to `out`. When `j` is in `S`,
/// `x_S x_j = alpha_j x_S`, so recurse on the (strictly lower) indices of
/// `alpha_j`.
fn mul_generator(
    tower: &BottTower,
    s: Subset,
    j: usize,
    c: BigInt,
    out: &mut BTreeMap<Subset, BigInt>,
) {
    if !s.contains(j) {
        accumulate(out, s.insert(j), c);
        return;
    }
    for (k, a) in tower.alpha_terms(j) {
        mul_generator(tower, s, *k, &c * a, out);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live over different towers; use the
        /// `try_` method for a fallible version.
        impl $trait<&CohClass> for &CohClass {
            type Output = CohClass;

            fn $method(self, rhs: &CohClass) -> CohClass {
                self.$checked(rhs).expect("classes over different towers")
            }
        }

        impl $trait<CohClass> for CohClass {
            type Output = CohClass;

            fn $method(self, rhs: CohClass) -> CohClass {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&CohClass> for CohClass {
            type Output = CohClass;

            fn $method(self, rhs: &CohClass) -> CohClass {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CohClass {
    type Output = CohClass;

    fn neg(self) -> CohClass {
        CohClass {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

impl Neg for CohClass {
    type Output = CohClass;

    fn neg(mut self) -> CohClass {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

/// Human-readable form such as `2x1x2 - x3 + 1`.
impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if s.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for i in s.indices() {
                write!(f, "x{i}")?;
            }
        }
        Ok(())
    }
}
