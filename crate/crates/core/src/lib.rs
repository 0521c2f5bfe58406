//! Exact arithmetic in the integral cohomology rings of Bott manifolds.
//!
//! A Bott tower of height `n` is encoded by strictly lower-indexed integer
//! data: the `i`-th stage carries the degree-2 class
//! `alpha_i = sum_{j < i} c_ij x_j`, and the cohomology ring of the top stage is
//!
//! ```text
//! Z[x_1, ..., x_n] / (x_i^2 - alpha_i x_i ; i = 1..n)
//! ```
//!
//! with the square-free monomials `x_S` as a Z-basis. On top of this ring the
//! crate provides
//!
//! - [`linalg`]: exact integer matrices (Smith and Hermite forms, kernels,
//!   Diophantine solving),
//! - [`vanishing`]: vanishing partners and primitive vanishing pairs,
//! - [`bundles`]: Chern classes of rank-2 decomposable bundles and the
//!   projectivization isomorphism decision,
//! - [`iso`]: filtered isomorphism witnesses between towers, found by
//!   level-by-level lifting, with brute-force and unfiltered searches,
//! - [`classify`]: enumeration of bounded tower families and their partition
//!   into isomorphism classes, cross-validated by two algorithms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bundles;
pub mod classify;
mod error;
pub mod iso;
pub mod linalg;
pub mod ring;
pub mod vanishing;

pub use error::{Error, Result};
pub use ring::{BottTower, CohClass, Grading, Subset};

use core::fmt;
use core::ops::Neg;

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Both signs, `+1` first.
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}
