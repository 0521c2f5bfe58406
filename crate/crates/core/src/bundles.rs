//! Rank-2 decomposable bundles over a Bott manifold and their
//! projectivizations.
//!
//! A complex line bundle over a Bott manifold is determined by its first
//! Chern class, so a line bundle is represented by a degree-2 class and a
//! rank-2 decomposable bundle `γ^α ⊕ γ^β` by the unordered pair `{α, β}`.
//! Such bundles are isomorphic exactly when their total Chern classes
//! `(1 + α)(1 + β)` agree.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ring::CohClass;
use crate::{Error, Result, Sign};

fn require_degree2(c: &CohClass) -> Result<()> {
    if c.is_homogeneous_of(2) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { expected_degree: 2 })
    }
}

/// `γ^α ⊕ γ^β`, stored with the summands in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecBundle {
    alpha: CohClass,
    beta: CohClass,
}

impl DecBundle {
    pub fn new(alpha: CohClass, beta: CohClass) -> Result<DecBundle> {
        require_degree2(&alpha)?;
        require_degree2(&beta)?;
        if alpha.tower() != beta.tower() {
            return Err(Error::TowerMismatch);
        }
        let (alpha, beta) = if beta < alpha {
            (beta, alpha)
        } else {
            (alpha, beta)
        };
        Ok(DecBundle { alpha, beta })
    }

    pub fn summands(&self) -> (&CohClass, &CohClass) {
        (&self.alpha, &self.beta)
    }
}

/// `c(γ^α ⊕ γ^β) = 1 + c1 + c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalChern {
    pub c1: CohClass,
    pub c2: CohClass,
}

pub fn total_chern(bundle: &DecBundle) -> TotalChern {
    TotalChern {
        c1: &bundle.alpha + &bundle.beta,
        c2: &bundle.alpha * &bundle.beta,
    }
}

pub fn bundles_isomorphic(b1: &DecBundle, b2: &DecBundle) -> Result<bool> {
    if b1.alpha.tower() != b2.alpha.tower() {
        return Err(Error::TowerMismatch);
    }
    Ok(total_chern(b1) == total_chern(b2))
}

/// Whether `c2` vanishes, i.e. the bundle is `C ⊕ γ^{α+β}`.
pub fn splits_trivially(bundle: &DecBundle) -> bool {
    (&bundle.alpha * &bundle.beta).is_zero()
}

/// The split form `{0, α + β}` when the bundle splits off a trivial summand.
pub fn split_form(bundle: &DecBundle) -> Option<DecBundle> {
    splits_trivially(bundle).then(|| {
        DecBundle::new(
            CohClass::zero(bundle.alpha.tower()),
            &bundle.alpha + &bundle.beta,
        )
        .expect("degree 2")
    })
}

/// Tensor both summands with `γ^λ`.
pub fn twist(bundle: &DecBundle, lambda: &CohClass) -> Result<DecBundle> {
    require_degree2(lambda)?;
    DecBundle::new(bundle.alpha.try_add(lambda)?, bundle.beta.try_add(lambda)?)
}

/// Outcome of checking that `αβ = 0` forces `(aα)(bβ) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaledSplit {
    /// `αβ = 0` held for the input.
    pub hypothesis: bool,
    /// `(aα)(bβ) = 0`.
    pub scaled_vanishes: bool,
}

impl ScaledSplit {
    /// Vacuously true when the hypothesis fails.
    pub fn passed(self) -> bool {
        !self.hypothesis || self.scaled_vanishes
    }
}

pub fn scaled_split_check(
    alpha: &CohClass,
    beta: &CohClass,
    a: &BigInt,
    b: &BigInt,
) -> Result<ScaledSplit> {
    require_degree2(alpha)?;
    require_degree2(beta)?;
    let hypothesis = alpha.try_mul(beta)?.is_zero();
    let scaled_vanishes = (alpha.scale(a) * beta.scale(b)).is_zero();
    Ok(ScaledSplit {
        hypothesis,
        scaled_vanishes,
    })
}

/// Data of an `H*(B)`-algebra isomorphism
/// `H*(P(C ⊕ γ^β)) -> H*(P(C ⊕ γ^α))`, `Y -> sX + α'`.
///
/// Satisfies `α = s (β - 2α')` and `α' (α' - β) = 0`. The `s = -1` case is
/// realized by complex conjugation on the fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjIsoWitness {
    pub s: Sign,
    pub alpha_prime: CohClass,
}

impl ProjIsoWitness {
    /// Checks both defining equations against `(α, β)`.
    pub fn verify(&self, alpha: &CohClass, beta: &CohClass) -> Result<bool> {
        let lhs = beta
            .try_sub(&self.alpha_prime.scale_i64(2))?
            .scale_i64(self.s.to_i64());
        if lhs != *alpha {
            return Ok(false);
        }
        Ok(self
            .alpha_prime
            .try_mul(&self.alpha_prime.try_sub(beta)?)?
            .is_zero())
    }

    pub fn is_conjugation(&self) -> bool {
        self.s == Sign::Minus
    }
}

/// All witnesses, `s = +1` first. For each sign `α'` is forced to
/// `(β - sα)/2`, so there are at most two.
pub fn projective_iso_solutions(alpha: &CohClass, beta: &CohClass) -> Result<Vec<ProjIsoWitness>> {
    require_degree2(alpha)?;
    require_degree2(beta)?;
    if alpha.tower() != beta.tower() {
        return Err(Error::TowerMismatch);
    }
    let two = BigInt::from(2);
    let mut out = Vec::with_capacity(2);
    for s in Sign::BOTH {
        let delta = beta - &alpha.scale_i64(s.to_i64());
        let Some(alpha_prime) = delta.div_exact(&two) else {
            continue;
        };
        if (&alpha_prime * &(&alpha_prime - beta)).is_zero() {
            out.push(ProjIsoWitness { s, alpha_prime });
        }
    }
    Ok(out)
}

/// Decides whether `P(C ⊕ γ^α)` and `P(C ⊕ γ^β)` are isomorphic as bundles,
/// returning the first witness found.
pub fn projectivizations_isomorphic(
    alpha: &CohClass,
    beta: &CohClass,
) -> Result<Option<ProjIsoWitness>> {
    Ok(projective_iso_solutions(alpha, beta)?.into_iter().next())
}
