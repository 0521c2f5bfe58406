use std::io::Write;
use std::path::{Path, PathBuf};

use bott_core::bundles::{
    bundles_isomorphic, projective_iso_solutions, split_form, splits_trivially, total_chern,
    DecBundle,
};
use bott_core::classify::{cross_validate, enumerate_towers, partition_towers};
use bott_core::iso::{bounded_ring_iso_search, find_tower_iso};
use bott_core::vanishing::{enumerate_primitive_vanishing_pairs, lemma_form_decompose};
use bott_core::BottTower;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Number;

use crate::json::{self, ClassJson, MatrixJson, WitnessJson};
use crate::parse::parse_class;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "bott",
    version,
    about = "Cohomology of Bott manifolds and isomorphism decisions for Bott towers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition all towers with entries in [-bound, bound] into isomorphism classes.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: u32,
        /// Recompute the partition with the brute-force oracle and compare.
        #[arg(long)]
        cross_validate: bool,
        #[arg(long, default_value_t = 4)]
        oracle_bound: u32,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two towers are isomorphic; prints a witness.
    TowerIso { a: PathBuf, b: PathBuf },
    /// Search for an unfiltered ring isomorphism with entries in [-bound, bound].
    RingIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// List primitive vanishing pairs with coefficients in [-bound, bound].
    Pairs {
        tower: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// Total Chern class of the bundle with summands alpha and beta.
    Chern {
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Compare with a second bundle (needs --other-beta too).
        #[arg(long, allow_hyphen_values = true, requires = "other_beta")]
        other_alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "other_alpha")]
        other_beta: Option<String>,
    },
    /// Decide whether P(C + L_alpha) and P(C + L_beta) are isomorphic; lists every witness, s = +1 first.
    ProjIso {
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Multiply two classes.
    Mul {
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found,
    /// "not isomorphic" or "none within bound".
    NotFound,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Found => 0,
            Outcome::NotFound => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(#[from] bott_core::Error),
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) | CliError::Output(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Serialize)]
struct LemmaFormJson {
    j: usize,
    a: Number,
    u: ClassJson,
    sign: i64,
}

#[derive(Serialize)]
struct PairJson {
    z: ClassJson,
    zbar: ClassJson,
    lemma_form: Option<LemmaFormJson>,
}

#[derive(Serialize)]
struct ChernJson {
    c1: ClassJson,
    c2: ClassJson,
    splits_trivially: bool,
    split_form: Option<[ClassJson; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    isomorphic: Option<bool>,
}

/// `s = -1` is reported as complex conjugation.
#[derive(Serialize)]
struct ProjIsoJson {
    s: i64,
    alpha_prime: ClassJson,
    conjugation: bool,
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read_tower(path: &Path) -> Result<BottTower, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    json::tower_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), CliError> {
    writeln!(out, "{}", json::to_canonical(value))?;
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Classify {
            n,
            bound,
            cross_validate: check,
            oracle_bound,
            out: path,
            json: as_json,
        } => {
            if n == 0 {
                return Err(CliError::Input("--n must be at least 1".into()));
            }
            let family = enumerate_towers(n, bound).map_err(input)?;
            let report = if check {
                let cv = cross_validate(&family, oracle_bound)?;
                Report::new(&family, &cv.partition, Some(&cv))
            } else {
                let partition = partition_towers(&family)?;
                Report::new(&family, &partition, None)
            };
            if let Some(path) = path {
                std::fs::write(&path, report.to_json() + "\n")
                    .map_err(|source| CliError::Io { path, source })?;
            }
            if as_json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.to_table())?;
            }
            Ok(Outcome::Found)
        }
        Command::TowerIso { a, b } => {
            let (src, dst) = (read_tower(&a)?, read_tower(&b)?);
            match find_tower_iso(&src, &dst).map_err(input)? {
                Some(w) => {
                    print_json(out, &WitnessJson::from_witness(&w))?;
                    Ok(Outcome::Found)
                }
                None => {
                    writeln!(out, "not isomorphic")?;
                    Ok(Outcome::NotFound)
                }
            }
        }
        Command::RingIso { a, b, bound } => {
            let (src, dst) = (read_tower(&a)?, read_tower(&b)?);
            match bounded_ring_iso_search(&src, &dst, bound).map_err(input)? {
                Some(m) => {
                    print_json(out, &MatrixJson::from_matrix(&m))?;
                    Ok(Outcome::Found)
                }
                None => {
                    writeln!(out, "none within bound")?;
                    Ok(Outcome::NotFound)
                }
            }
        }
        Command::Pairs { tower, bound } => {
            let t = read_tower(&tower)?;
            let mut entries = Vec::new();
            for pair in enumerate_primitive_vanishing_pairs(&t, bound) {
                let form = lemma_form_decompose(&t, &pair)?;
                entries.push(PairJson {
                    z: ClassJson::from_class(&pair.z),
                    zbar: ClassJson::from_class(&pair.zbar),
                    lemma_form: form.map(|f| LemmaFormJson {
                        j: f.j,
                        a: json::big_to_number(&f.a),
                        u: ClassJson::from_class(&f.u),
                        sign: f.sign.to_i64(),
                    }),
                });
            }
            print_json(out, &entries)?;
            Ok(Outcome::Found)
        }
        Command::Chern {
            tower,
            alpha,
            beta,
            other_alpha,
            other_beta,
        } => {
            let t = read_tower(&tower)?;
            let bundle = DecBundle::new(
                parse_class(&t, &alpha).map_err(input)?,
                parse_class(&t, &beta).map_err(input)?,
            )
            .map_err(input)?;
            let c = total_chern(&bundle);
            let mut doc = ChernJson {
                c1: ClassJson::from_class(&c.c1),
                c2: ClassJson::from_class(&c.c2),
                splits_trivially: splits_trivially(&bundle),
                split_form: split_form(&bundle).map(|b| {
                    let (x, y) = b.summands();
                    [ClassJson::from_class(x), ClassJson::from_class(y)]
                }),
                isomorphic: None,
            };
            let mut outcome = Outcome::Found;
            if let (Some(oa), Some(ob)) = (other_alpha, other_beta) {
                let other = DecBundle::new(
                    parse_class(&t, &oa).map_err(input)?,
                    parse_class(&t, &ob).map_err(input)?,
                )
                .map_err(input)?;
                let iso = bundles_isomorphic(&bundle, &other)?;
                doc.isomorphic = Some(iso);
                if !iso {
                    outcome = Outcome::NotFound;
                }
            }
            print_json(out, &doc)?;
            Ok(outcome)
        }
        Command::ProjIso { tower, alpha, beta } => {
            let t = read_tower(&tower)?;
            let a = parse_class(&t, &alpha).map_err(input)?;
            let b = parse_class(&t, &beta).map_err(input)?;
            let witnesses: Vec<ProjIsoJson> = projective_iso_solutions(&a, &b)
                .map_err(input)?
                .iter()
                .map(|w| ProjIsoJson {
                    s: w.s.to_i64(),
                    alpha_prime: ClassJson::from_class(&w.alpha_prime),
                    conjugation: w.is_conjugation(),
                })
                .collect();
            if witnesses.is_empty() {
                writeln!(out, "not isomorphic")?;
                return Ok(Outcome::NotFound);
            }
            print_json(out, &witnesses)?;
            Ok(Outcome::Found)
        }
        Command::Mul { tower, u, v } => {
            let t = read_tower(&tower)?;
            let u = parse_class(&t, &u).map_err(input)?;
            let v = parse_class(&t, &v).map_err(input)?;
            print_json(out, &ClassJson::from_class(&(&u * &v)))?;
            Ok(Outcome::Found)
        }
    }
}
