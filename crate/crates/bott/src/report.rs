//! Classification reports: a JSON document for machines and an aligned text
//! table for people. Both are deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bott_core::classify::{CrossValidation, Partition, TowerFamily};
use bott_core::iso::{verify_witness, FilteredIsoWitness};
use bott_core::BottTower;
use serde::{Deserialize, Serialize};

use crate::json::{self, ClassJson, FormatError, TowerJson};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassEntry {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// A merge edge: `source` is the class representative, `target` the member.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessEntry {
    pub source: usize,
    pub target: usize,
    pub signs: Vec<i64>,
    pub shifts: Vec<ClassJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CrossValidationEntry {
    pub oracle_bound: u32,
    pub agree: bool,
    pub oracle_class_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub n: usize,
    pub bound: u32,
    pub tower_count: usize,
    pub class_count: usize,
    pub towers: Vec<TowerJson>,
    pub classes: Vec<ClassEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub cross_validation: Option<CrossValidationEntry>,
}

impl Report {
    pub fn new(
        family: &TowerFamily,
        partition: &Partition,
        cv: Option<&CrossValidation>,
    ) -> Report {
        Report {
            n: family.n,
            bound: family.bound,
            tower_count: family.len(),
            class_count: partition.class_count(),
            towers: family.towers.iter().map(TowerJson::from_tower).collect(),
            classes: partition
                .classes
                .iter()
                .map(|c| ClassEntry {
                    representative: c[0],
                    members: c.clone(),
                })
                .collect(),
            witnesses: partition
                .witnesses
                .iter()
                .map(|(&(source, target), w)| WitnessEntry {
                    source,
                    target,
                    signs: w.signs.iter().map(|s| s.to_i64()).collect(),
                    shifts: w.shifts.iter().map(ClassJson::from_class).collect(),
                })
                .collect(),
            cross_validation: cv.map(|cv| CrossValidationEntry {
                oracle_bound: cv.oracle_bound,
                agree: cv.agree(),
                oracle_class_count: cv.oracle_classes.len(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        json::to_canonical(self)
    }

    pub fn from_json(text: &str) -> Result<Report, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the towers and the partition with its witnesses.
    pub fn reload(&self) -> Result<(Vec<BottTower>, Partition), FormatError> {
        let towers = self
            .towers
            .iter()
            .map(TowerJson::to_tower)
            .collect::<Result<Vec<_>, _>>()?;
        let mut witnesses = BTreeMap::new();
        for e in &self.witnesses {
            let (Some(src), Some(dst)) = (towers.get(e.source), towers.get(e.target)) else {
                return Err(FormatError::Core(bott_core::Error::IndexOutOfRange {
                    index: e.source.max(e.target),
                    n: towers.len(),
                }));
            };
            let signs = e
                .signs
                .iter()
                .map(|&s| json::sign_from_i64(s))
                .collect::<Result<Vec<_>, _>>()?;
            let shifts = e
                .shifts
                .iter()
                .map(|c| c.to_class(dst))
                .collect::<Result<Vec<_>, _>>()?;
            witnesses.insert(
                (e.source, e.target),
                FilteredIsoWitness {
                    source: src.clone(),
                    target: dst.clone(),
                    signs,
                    shifts,
                },
            );
        }
        let classes = self.classes.iter().map(|c| c.members.clone()).collect();
        Ok((towers, Partition { classes, witnesses }))
    }

    /// Reloads every witness and checks it; returns the number verified.
    pub fn audit(&self) -> Result<usize, FormatError> {
        let (_, partition) = self.reload()?;
        let mut ok = 0;
        for w in partition.witnesses.values() {
            if verify_witness(&w.source, &w.target, w)? {
                ok += 1;
            }
        }
        Ok(ok)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={} bound={} towers={} classes={}",
            self.n, self.bound, self.tower_count, self.class_count
        );
        if let Some(cv) = &self.cross_validation {
            let verdict = if cv.agree { "agree" } else { "DISAGREE" };
            let _ = writeln!(
                out,
                "cross-validation: partitions {verdict} (oracle bound {}, {} oracle classes)",
                cv.oracle_bound, cv.oracle_class_count
            );
        }
        let reps: Vec<String> = self
            .classes
            .iter()
            .map(|c| coeffs_text(&self.towers[c.representative]))
            .collect();
        let rep_width = reps
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("representative".len());
        let _ = writeln!(
            out,
            "{:>5}  {:>5}  {:>5}  {:<rep_width$}  members",
            "class", "rep", "size", "representative"
        );
        for (k, (c, rep)) in self.classes.iter().zip(&reps).enumerate() {
            let members: Vec<String> = c.members.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "{:>5}  {:>5}  {:>5}  {:<rep_width$}  {}",
                k,
                c.representative,
                c.members.len(),
                rep,
                members.join(" ")
            );
        }
        out
    }
}

fn coeffs_text(t: &TowerJson) -> String {
    json::to_canonical(&t.coeffs)
}
