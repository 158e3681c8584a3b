//! Brute-force reference results: repeated application of `A† ± A` to a
//! Fock vector, and direct expansion over boson words. Exponential in `k`;
//! meant for certifying the fast path at small scale.

use std::collections::BTreeMap;

use num::{BigRational, One};
use thiserror::Error;

use crate::boson::{
    apply_expr, check_vacuum, BosonExpr, FockState, FockVector, IncompatibleRadicals, RatRadical,
};
use crate::dyck::{enumerate_words, DyckError, PathSpec, Step};
use crate::engine::SignMode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("truncation limits must be positive")]
    BadPolicy,
    #[error("{vac} is not annihilated by the operator")]
    NotAVacuum { vac: String },
    #[error("state {state} after {step} applications exceeds the truncation policy")]
    TruncationBreach { step: usize, state: String },
    #[error("vector has a component outside the ladder span: {residual}")]
    ResidualOutsideTower { residual: String },
    #[error(transparent)]
    Path(#[from] DyckError),
    #[error(transparent)]
    Incompatible(#[from] IncompatibleRadicals),
}

/// Occupation limits. Exceeding them is an error, never a silent cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationPolicy {
    max_total_quanta: u64,
    max_per_mode: u64,
}

impl TruncationPolicy {
    pub fn new(max_total_quanta: u64, max_per_mode: u64) -> Result<Self, OracleError> {
        if max_total_quanta == 0 || max_per_mode == 0 {
            return Err(OracleError::BadPolicy);
        }
        Ok(TruncationPolicy {
            max_total_quanta,
            max_per_mode,
        })
    }

    pub fn max_total_quanta(&self) -> u64 {
        self.max_total_quanta
    }

    pub fn max_per_mode(&self) -> u64 {
        self.max_per_mode
    }

    fn admits(&self, s: &FockState) -> bool {
        s.total_quanta() <= self.max_total_quanta && s.max_occupation() <= self.max_per_mode
    }

    fn check(&self, v: &FockVector, step: usize) -> Result<(), OracleError> {
        match v.iter().find(|(s, _)| !self.admits(s)) {
            Some((s, _)) => Err(OracleError::TruncationBreach {
                step,
                state: s.to_string(),
            }),
            None => Ok(()),
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            max_total_quanta: 4096,
            max_per_mode: 4096,
        }
    }
}

fn require_vacuum(a: &BosonExpr, vac: &FockState) -> Result<(), OracleError> {
    if check_vacuum(a, vac) {
        Ok(())
    } else {
        Err(OracleError::NotAVacuum {
            vac: vac.to_string(),
        })
    }
}

/// `(A† ± A)^k |vac⟩` by `k` successive applications.
pub fn oracle_power(
    a: &BosonExpr,
    vac: &FockState,
    k: usize,
    sign_mode: SignMode,
    policy: &TruncationPolicy,
) -> Result<FockVector, OracleError> {
    require_vacuum(a, vac)?;
    let raise = a.adjoint();
    let mut v = FockVector::unit(vac.clone());
    policy.check(&v, 0)?;
    for step in 1..=k {
        let up = apply_expr(&raise, &v)?;
        let down = apply_expr(a, &v)?;
        v = match sign_mode {
            SignMode::Plus => up.checked_add(&down)?,
            SignMode::Minus => up.checked_sub(&down)?,
        };
        policy.check(&v, step)?;
    }
    Ok(v)
}

/// Applies the boson word for `steps` (taken order, `U → A†`, `D → A`).
pub fn apply_word(a: &BosonExpr, steps: &[Step], vac: &FockState) -> Result<FockVector, OracleError> {
    let raise = a.adjoint();
    let mut v = FockVector::unit(vac.clone());
    for step in steps {
        v = match step {
            Step::U => apply_expr(&raise, &v)?,
            Step::D => apply_expr(a, &v)?,
        };
        if v.is_zero() {
            break;
        }
    }
    Ok(v)
}

/// Normalized ladder states `ψ⁽⁰⁾..ψ⁽ᵖ⁾`, shorter if the tower ends.
fn normalized_tower(a: &BosonExpr, vac: &FockState, p_max: usize) -> Result<Vec<FockVector>, OracleError> {
    require_vacuum(a, vac)?;
    let raise = a.adjoint();
    let mut raw = FockVector::unit(vac.clone());
    let mut out = Vec::new();
    for p in 0..=p_max {
        if p > 0 {
            raw = apply_expr(&raise, &raw)?;
        }
        if raw.is_zero() {
            break;
        }
        let inv_norm = RatRadical::sqrt_of(&(BigRational::one() / raw.norm_sq()));
        out.push(raw.scale(&inv_norm));
    }
    Ok(out)
}

/// Plus-mode coefficient on `ψ⁽δ₂⁾` summed word by word over every Dyck
/// word from the ground. Zero when the tower ends below `δ₂`.
pub fn oracle_word_expansion(
    a: &BosonExpr,
    vac: &FockState,
    k: usize,
    delta2: usize,
) -> Result<RatRadical, OracleError> {
    let spec = PathSpec::new(k, 0, delta2);
    if spec.is_empty() {
        return Err(DyckError::EmptySpec {
            k,
            delta1: 0,
            delta2,
        }
        .into());
    }
    let tower = normalized_tower(a, vac, delta2)?;
    let Some(target) = tower.get(delta2) else {
        return Ok(RatRadical::zero());
    };
    let mut total = FockVector::zero();
    for word in enumerate_words(spec) {
        total = total.checked_add(&apply_word(a, &word.steps, vac)?)?;
    }
    Ok(target.inner(&total)?)
}

/// Coefficients of `v` on the normalized ladder basis up to `p_max`.
/// Fails if anything of `v` lies outside that span.
pub fn oracle_ladder_decomposition(
    a: &BosonExpr,
    vac: &FockState,
    v: &FockVector,
    p_max: usize,
) -> Result<BTreeMap<usize, RatRadical>, OracleError> {
    let tower = normalized_tower(a, vac, p_max)?;
    let mut residual = v.clone();
    let mut out = BTreeMap::new();
    for (p, basis) in tower.iter().enumerate() {
        let c = basis.inner(v)?;
        if c.is_zero() {
            continue;
        }
        residual = residual.checked_sub(&basis.scale(&c))?;
        out.insert(p, c);
    }
    if residual.is_zero() {
        Ok(out)
    } else {
        Err(OracleError::ResidualOutsideTower {
            residual: residual.to_string(),
        })
    }
}

/// Every length-`k` boson word (as taken steps) that does not annihilate
/// `vac`, in lexicographic order with `U < D`.
pub fn nonvanishing_words(a: &BosonExpr, vac: &FockState, k: usize) -> Result<Vec<Vec<Step>>, OracleError> {
    require_vacuum(a, vac)?;
    assert!(k < usize::BITS as usize, "word length too large to enumerate");
    let mut out = Vec::new();
    for mask in 0..(1usize << k) {
        // bit (k-1-i) set means step i is D, so masks run in U < D order
        let steps: Vec<Step> = (0..k)
            .map(|i| if mask >> (k - 1 - i) & 1 == 1 { Step::D } else { Step::U })
            .collect();
        if !apply_word(a, &steps, vac)?.is_zero() {
            out.push(steps);
        }
    }
    Ok(out)
}
