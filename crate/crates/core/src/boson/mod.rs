//! Multimode boson operators, exact Fock-space vectors and ladder towers.

mod fock;
mod ladder;
mod radical;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use fock::{apply_expr, apply_monomial, FockState, FockVector};
pub use ladder::{
    check_vacuum, lambda_mu_polynomial, lambda_mu_table, ladder_states, LadderPolynomial,
    LadderTable,
};
pub use radical::{IncompatibleRadicals, RatRadical};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BosonError {
    #[error("factor power must be at least 1")]
    ZeroPower,
    #[error("a monomial needs at least one factor")]
    EmptyMonomial,
    #[error("an expression needs at least one term")]
    EmptyExpr,
    #[error("{vac} is not annihilated by the operator")]
    NotAVacuum { vac: String },
    #[error("A A† does not act as a scalar on ladder state {p}")]
    NotProportional { p: usize },
    #[error("interpolating a degree-{degree} ladder polynomial needs {needed} table entries, only {available} available")]
    InsufficientTower {
        degree: usize,
        needed: usize,
        available: usize,
    },
    #[error("ladder polynomial predicts {predicted} at p={p} but the table holds {actual}")]
    InterpolationMismatch {
        p: usize,
        predicted: String,
        actual: String,
    },
    #[error(transparent)]
    Incompatible(#[from] IncompatibleRadicals),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonFactor {
    pub mode: usize,
    pub dagger: bool,
    pub power: u32,
}

impl BosonFactor {
    pub fn new(mode: usize, dagger: bool, power: u32) -> Result<Self, BosonError> {
        if power == 0 {
            return Err(BosonError::ZeroPower);
        }
        Ok(BosonFactor {
            mode,
            dagger,
            power,
        })
    }

    pub fn create(mode: usize, power: u32) -> Self {
        Self::new(mode, true, power).expect("positive power")
    }

    pub fn annihilate(mode: usize, power: u32) -> Self {
        Self::new(mode, false, power).expect("positive power")
    }
}

impl fmt::Display for BosonFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.dagger { "ad" } else { "a" };
        write!(f, "{name}[{}]", self.mode)?;
        if self.power > 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// Product of factors, written left to right and applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<BosonFactor>,
}

impl Monomial {
    pub fn new(factors: Vec<BosonFactor>) -> Result<Self, BosonError> {
        if factors.is_empty() {
            return Err(BosonError::EmptyMonomial);
        }
        if factors.iter().any(|f| f.power == 0) {
            return Err(BosonError::ZeroPower);
        }
        Ok(Monomial { factors })
    }

    pub fn factors(&self) -> &[BosonFactor] {
        &self.factors
    }

    /// Total number of single-mode operators.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|f| f.power).sum()
    }

    pub fn modes(&self) -> BTreeSet<usize> {
        self.factors.iter().map(|f| f.mode).collect()
    }

    /// Reversed order with every dagger toggled.
    pub fn adjoint(&self) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| BosonFactor {
                    dagger: !f.dagger,
                    ..*f
                })
                .collect(),
        }
    }

    /// Sorted `(creations, annihilations)` per mode.
    pub fn exponent_profile(&self) -> Vec<(u32, u32)> {
        let mut per_mode: BTreeMap<usize, (u32, u32)> = BTreeMap::new();
        for f in &self.factors {
            let e = per_mode.entry(f.mode).or_default();
            if f.dagger {
                e.0 += f.power;
            } else {
                e.1 += f.power;
            }
        }
        let mut profile: Vec<_> = per_mode.into_values().collect();
        profile.sort_unstable();
        profile
    }

    pub fn max_mode(&self) -> usize {
        self.factors.iter().map(|f| f.mode).max().unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// The sum `A = Σ terms`. Disjointness is checked by [`validate_disjoint`],
/// not enforced, so out-of-class operators can still reach the runtime
/// proportionality check.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BosonExpr {
    terms: Vec<Monomial>,
}

impl BosonExpr {
    pub fn new(terms: Vec<Monomial>) -> Result<Self, BosonError> {
        if terms.is_empty() {
            return Err(BosonError::EmptyExpr);
        }
        Ok(BosonExpr { terms })
    }

    pub fn single(m: Monomial) -> Self {
        BosonExpr { terms: vec![m] }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn adjoint(&self) -> BosonExpr {
        BosonExpr {
            terms: self.terms.iter().map(Monomial::adjoint).collect(),
        }
    }

    /// Length of the first term; equal for all terms of a valid expression.
    pub fn order(&self) -> u32 {
        self.terms[0].length()
    }

    pub fn num_modes(&self) -> usize {
        self.terms.iter().map(|t| t.max_mode()).max().unwrap_or(0) + 1
    }
}

impl fmt::Display for BosonExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnequalLength {
        term: usize,
        length: u32,
        expected: u32,
    },
    SharedMode {
        mode: usize,
        first: usize,
        second: usize,
    },
    ProfileMismatch {
        term: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnequalLength {
                term,
                length,
                expected,
            } => write!(f, "term {term} has length {length}, expected {expected}"),
            Violation::SharedMode {
                mode,
                first,
                second,
            } => write!(f, "terms {first} and {second} both act on mode {mode}"),
            Violation::ProfileMismatch { term } => write!(
                f,
                "term {term} is not a mode permutation of the first term's exponent profile"
            ),
        }
    }
}

/// Reasons `expr` falls outside the class of equal-length monomials on
/// pairwise disjoint modes with permuted exponent profiles. Empty means valid.
pub fn validate_disjoint(expr: &BosonExpr) -> Vec<Violation> {
    let mut out = Vec::new();
    let terms = expr.terms();
    let expected = terms[0].length();
    let profile = terms[0].exponent_profile();
    for (i, t) in terms.iter().enumerate().skip(1) {
        if t.length() != expected {
            out.push(Violation::UnequalLength {
                term: i,
                length: t.length(),
                expected,
            });
        } else if t.exponent_profile() != profile {
            out.push(Violation::ProfileMismatch { term: i });
        }
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, t) in terms.iter().enumerate() {
        for mode in t.modes() {
            if let Some(&first) = owner.get(&mode) {
                out.push(Violation::SharedMode {
                    mode,
                    first,
                    second: i,
                });
            } else {
                owner.insert(mode, i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: usize, p: u32) -> BosonFactor {
        BosonFactor::create(m, p)
    }
    fn a(m: usize, p: u32) -> BosonFactor {
        BosonFactor::annihilate(m, p)
    }
    fn mono(f: &[BosonFactor]) -> Monomial {
        Monomial::new(f.to_vec()).unwrap()
    }

    #[test]
    fn disjoint_sum_with_number_operators_is_valid() {
        let expr = BosonExpr::new(vec![
            mono(&[c(0, 1), a(0, 1), c(1, 3)]),
            mono(&[c(2, 1), a(2, 1), c(3, 3)]),
        ])
        .unwrap();
        assert!(validate_disjoint(&expr).is_empty());
        assert_eq!(expr.to_string(), "ad[0]*a[0]*ad[1]^3 + ad[2]*a[2]*ad[3]^3");
    }

    #[test]
    fn violations() {
        let unequal = BosonExpr::new(vec![mono(&[c(0, 1)]), mono(&[c(0, 1), c(1, 1)])]).unwrap();
        let v = validate_disjoint(&unequal);
        assert!(v.contains(&Violation::UnequalLength {
            term: 1,
            length: 2,
            expected: 1
        }));

        let shared = BosonExpr::new(vec![mono(&[c(0, 1)]), mono(&[a(0, 1)])]).unwrap();
        assert!(validate_disjoint(&shared).contains(&Violation::SharedMode {
            mode: 0,
            first: 0,
            second: 1
        }));

        let profile = BosonExpr::new(vec![mono(&[c(0, 2)]), mono(&[c(1, 1), a(1, 1)])]).unwrap();
        assert_eq!(
            validate_disjoint(&profile),
            vec![Violation::ProfileMismatch { term: 1 }]
        );
    }

    #[test]
    fn adjoint_reverses_and_toggles() {
        let m = mono(&[a(0, 1), c(1, 2)]);
        assert_eq!(m.adjoint(), mono(&[a(1, 2), c(0, 1)]));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn zero_power_rejected() {
        assert_eq!(BosonFactor::new(0, true, 0), Err(BosonError::ZeroPower));
        assert_eq!(Monomial::new(vec![]), Err(BosonError::EmptyMonomial));
        assert_eq!(BosonExpr::new(vec![]), Err(BosonError::EmptyExpr));
    }
}
