//! Bounded tower families and their partition into isomorphism classes.
//!
//! Families list every tower whose entries lie in `[-bound, bound]`. They are
//! partitioned twice: once with the lifting decision procedure
//! ([`find_tower_iso`]) and once with the triangular brute force
//! ([`brute_force_filtered_iso`]); [`cross_validate`] demands that both agree.
//! The box is stated explicitly in every result; no claim is made that a class
//! meeting the box has all of its small representatives inside it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::iso::{brute_force_filtered_iso, find_tower_iso, verify_witness, FilteredIsoWitness};
use crate::ring::BottTower;
use crate::vanishing::box_vectors;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFamily {
    pub n: usize,
    pub bound: u32,
    pub towers: Vec<BottTower>,
}

impl TowerFamily {
    /// `prod_{i=2..n} (2 bound + 1)^{i-1}`.
    pub fn expected_len(n: usize, bound: u32) -> u64 {
        let base = 2 * bound as u64 + 1;
        (2..=n).map(|i| base.pow(i as u32 - 1)).product()
    }

    pub fn len(&self) -> usize {
        self.towers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.towers.is_empty()
    }
}

/// Every tower of height `n` with entries in `[-bound, bound]`, in
/// lexicographic order of the flattened entries `c_21, c_31, c_32, ...`.
pub fn enumerate_towers(n: usize, bound: u32) -> Result<TowerFamily> {
    let entries = n * n.saturating_sub(1) / 2;
    let mut towers = Vec::new();
    for flat in box_vectors(entries, bound as i64) {
        let mut it = flat.into_iter().map(BigInt::from);
        let rows = (0..n).map(|i| it.by_ref().take(i).collect()).collect();
        towers.push(BottTower::new(n, rows)?);
    }
    Ok(TowerFamily { n, bound, towers })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Sorted member indices; each class starts with its representative and
    /// classes are ordered by representative.
    pub classes: Vec<Vec<usize>>,
    /// For every merge, the witness from the representative to the new member.
    pub witnesses: BTreeMap<(usize, usize), FilteredIsoWitness>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class index of every tower.
    pub fn labels(&self, len: usize) -> Vec<usize> {
        let mut labels = alloc::vec![usize::MAX; len];
        for (c, members) in self.classes.iter().enumerate() {
            for &m in members {
                labels[m] = c;
            }
        }
        labels
    }
}

type Grouping<T> = (Vec<Vec<usize>>, BTreeMap<(usize, usize), T>);

/// Groups `0..len` by an equivalence oracle. Each new index is only compared
/// with class representatives (the lowest index of each class); pairs already
/// known to be connected are never queried.
fn partition_by<T, F>(len: usize, mut related: F) -> Result<Grouping<T>>
where
    F: FnMut(usize, usize) -> Result<Option<T>>,
{
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut edges = BTreeMap::new();
    for j in 0..len {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            if let Some(t) = related(rep, j)? {
                class.push(j);
                edges.insert((rep, j), t);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(alloc::vec![j]);
        }
    }
    Ok((classes, edges))
}

/// Partitions a family by filtered cohomology, i.e. by tower isomorphism.
pub fn partition_towers(family: &TowerFamily) -> Result<Partition> {
    let towers = &family.towers;
    let (classes, witnesses) =
        partition_by(towers.len(), |i, j| find_tower_iso(&towers[i], &towers[j]))?;
    Ok(Partition { classes, witnesses })
}

/// The same partition computed with the brute-force oracle.
pub fn oracle_partition(family: &TowerFamily, oracle_bound: u32) -> Result<Vec<Vec<usize>>> {
    let towers = &family.towers;
    let (classes, _) = partition_by(towers.len(), |i, j| {
        brute_force_filtered_iso(&towers[i], &towers[j], oracle_bound)
    })?;
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub n: usize,
    pub bound: u32,
    pub oracle_bound: u32,
    pub partition: Partition,
    pub oracle_classes: Vec<Vec<usize>>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.partition.classes == self.oracle_classes
    }

    pub fn summary(&self) -> String {
        format!("partitions agree: {} classes", self.partition.class_count())
    }
}

/// Partitions `family` with both algorithms and fails loudly if they
/// disagree, if a witness does not verify, or if a witness shift leaves the
/// oracle's box (which would make the comparison meaningless).
pub fn cross_validate(family: &TowerFamily, oracle_bound: u32) -> Result<CrossValidation> {
    let partition = partition_towers(family)?;
    let towers = &family.towers;
    let limit = BigInt::from(oracle_bound);
    for (&(i, j), w) in &partition.witnesses {
        if !verify_witness(&towers[i], &towers[j], w)? {
            return Err(Error::CrossValidation(format!(
                "witness {i} -> {j} does not verify: {w:?}"
            )));
        }
        if w.max_shift() > limit {
            return Err(Error::CrossValidation(format!(
                "witness {i} -> {j} has shift {} beyond oracle bound {oracle_bound}: {:?}",
                w.max_shift(),
                w.shifts
            )));
        }
    }
    let oracle_classes = oracle_partition(family, oracle_bound)?;
    if oracle_classes != partition.classes {
        return Err(Error::CrossValidation(mismatch_dump(
            family,
            &partition,
            &oracle_classes,
            oracle_bound,
        )?));
    }
    Ok(CrossValidation {
        n: family.n,
        bound: family.bound,
        oracle_bound,
        partition,
        oracle_classes,
    })
}

fn mismatch_dump(
    family: &TowerFamily,
    partition: &Partition,
    oracle: &[Vec<usize>],
    oracle_bound: u32,
) -> Result<String> {
    let len = family.len();
    let lift = partition.labels(len);
    let mut brute = alloc::vec![usize::MAX; len];
    for (c, members) in oracle.iter().enumerate() {
        for &m in members {
            brute[m] = c;
        }
    }
    for i in 0..len {
        for j in i + 1..len {
            if (lift[i] == lift[j]) != (brute[i] == brute[j]) {
                let (a, b) = (&family.towers[i], &family.towers[j]);
                return Ok(format!(
                    "towers {i} {:?} and {j} {:?}: lifting gives {:?}, brute force (bound {oracle_bound}) gives {:?}",
                    a.coeffs(),
                    b.coeffs(),
                    find_tower_iso(a, b)?,
                    brute_force_filtered_iso(a, b, oracle_bound)?,
                ));
            }
        }
    }
    Ok(format!(
        "class lists differ: lifting {:?}, brute force {:?}",
        partition.classes, oracle
    ))
}
