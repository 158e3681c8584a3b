//! Padé approximants `[L/M]` from exact Taylor coefficients.

pub mod modular;

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{ratio_to_f64, rational_from_f64};
use crate::polynomial::Poly;
use modular::{ModularOutcome, PooledSystem};

/// Denominator magnitudes below this count as a pole.
pub const NEAR_POLE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PadeError {
    #[error("[{l}/{m}] needs {needed} Taylor coefficients, got {available}")]
    InsufficientCoefficients {
        l: usize,
        m: usize,
        needed: usize,
        available: usize,
    },
    #[error("the [{l}/{m}] denominator system is singular (rank {rank} of {m}); [{}/{}] may be tried instead", fallback.0, fallback.1)]
    SingularSystem {
        l: usize,
        m: usize,
        rank: usize,
        fallback: (usize, usize),
    },
    #[error("denominator is {value:e} at r={r}, too close to a pole")]
    NearPole { r: f64, value: f64 },
    #[error("series is not even: coefficient of r^{index} is nonzero")]
    OddTerm { index: usize },
    #[error("r must be finite, got {0}")]
    BadArgument(f64),
}

/// Variable the approximant's polynomials are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadeVariable {
    R,
    /// Polynomials in `s = r²`, for even series.
    RSquared,
}

impl fmt::Display for PadeVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PadeVariable::R => "r",
            PadeVariable::RSquared => "r^2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadeApproximant {
    pub l: usize,
    pub m: usize,
    pub numerator: Poly,
    /// Constant term 1.
    pub denominator: Poly,
    pub variable: PadeVariable,
}

fn lcm_of_denominators(coeffs: &[BigRational]) -> BigInt {
    coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `[L/M]` for the series `Σ taylor[i] x^i`, solved exactly.
pub fn build_pade(taylor: &[BigRational], l: usize, m: usize) -> Result<PadeApproximant, PadeError> {
    let needed = l + m + 1;
    if taylor.len() < needed {
        return Err(PadeError::InsufficientCoefficients {
            l,
            m,
            needed,
            available: taylor.len(),
        });
    }
    let coeffs = &taylor[..needed];
    let scale = lcm_of_denominators(coeffs);
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
        .collect();

    // Rows: coefficient of x^{L+1+i} in c·D vanishes, i.e.
    // Σ_{j=1}^{M} q_j c_{L+1+i-j} = -c_{L+1+i}.
    let zero = ints.len();
    let mut pool = ints.clone();
    pool.push(BigInt::zero());
    let matrix = (0..m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let n = (l + 1 + i) as isize - j as isize;
                    if n < 0 {
                        zero
                    } else {
                        n as usize
                    }
                })
                .collect()
        })
        .collect();
    let rhs = (0..m).map(|i| l + 1 + i).collect();
    let system = PooledSystem { pool, matrix, rhs };

    let (det, cramer) = match modular::solve(&system) {
        ModularOutcome::Solved(sol) => (sol.det, sol.numerators),
        ModularOutcome::Singular { rank } => {
            return Err(PadeError::SingularSystem {
                l,
                m,
                rank,
                fallback: (l, m.saturating_sub(1)),
            })
        }
    };

    // det·D(x) with integer coefficients.
    let mut den_int = Vec::with_capacity(m + 1);
    den_int.push(det.clone());
    den_int.extend(cramer.into_iter().map(|y| -y));

    let num_int: Vec<BigInt> = (0..=l)
        .map(|i| {
            (0..=i.min(m))
                .map(|j| &den_int[j] * &ints[i - j])
                .fold(BigInt::zero(), |a, b| a + b)
        })
        .collect();

    let numerator = Poly::from_parts(num_int, &det * &scale);
    let denominator = Poly::from_parts(den_int, det);
    Ok(PadeApproximant {
        l,
        m,
        numerator,
        denominator,
        variable: PadeVariable::R,
    })
}

/// `[L/M]` in `s = r²` for an even series in `r`.
pub fn build_even_pade(taylor_r: &[BigRational], l: usize, m: usize) -> Result<PadeApproximant, PadeError> {
    if let Some(index) = (1..taylor_r.len()).step_by(2).find(|&i| !taylor_r[i].is_zero()) {
        return Err(PadeError::OddTerm { index });
    }
    let even: Vec<BigRational> = taylor_r.iter().step_by(2).cloned().collect();
    let mut p = build_pade(&even, l, m)?;
    p.variable = PadeVariable::RSquared;
    Ok(p)
}

/// Exact check that `N/D` re-expands to `taylor` through order `L+M`, in
/// the approximant's own variable.
pub fn order_condition_holds(p: &PadeApproximant, taylor: &[BigRational]) -> bool {
    let n = p.l + p.m + 1;
    let series: Vec<BigRational> = match p.variable {
        PadeVariable::R => taylor.iter().take(n).cloned().collect(),
        PadeVariable::RSquared => taylor.iter().step_by(2).take(n).cloned().collect(),
    };
    if series.len() < n || p.denominator.coeff(0) != BigRational::one() {
        return false;
    }
    // Compare integer numerators over a common denominator to avoid
    // normalizing the large product.
    let scale = lcm_of_denominators(&series);
    let ints: Vec<BigInt> = series
        .iter()
        .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
        .collect();
    let d_num = p.denominator.numerators();
    let d_den = p.denominator.denominator();
    let n_num = p.numerator.numerators();
    let n_den = p.numerator.denominator();
    // c·D = N  ⇔  ints ⋆ d_num · n_den = n_num · scale · d_den.
    let rhs_scale = &scale * d_den;
    (0..n).all(|i| {
        let lhs: BigInt = (0..=i.min(d_num.len().saturating_sub(1)))
            .map(|j| &d_num[j] * &ints[i - j])
            .fold(BigInt::zero(), |a, b| a + b)
            * n_den;
        let rhs = n_num.get(i).map_or_else(BigInt::zero, |v| v * &rhs_scale);
        lhs == rhs
    })
}

/// `N(r)/D(r)`, evaluated exactly and rounded once.
pub fn eval_pade(p: &PadeApproximant, r: f64) -> Result<f64, PadeError> {
    let x = rational_from_f64(r).ok_or(PadeError::BadArgument(r))?;
    let x = match p.variable {
        PadeVariable::R => x,
        PadeVariable::RSquared => &x * &x,
    };
    let (dn, dd) = p.denominator.eval_parts(&x);
    let d_value = ratio_to_f64(&dn, &dd);
    if d_value.abs() < NEAR_POLE {
        return Err(PadeError::NearPole { r, value: d_value });
    }
    let (nn, nd) = p.numerator.eval_parts(&x);
    let (top, bottom) = (nn * dd, nd * dn);
    let value = if bottom.is_negative() {
        ratio_to_f64(&-top, &-bottom)
    } else {
        ratio_to_f64(&top, &bottom)
    };
    Ok(value)
}
