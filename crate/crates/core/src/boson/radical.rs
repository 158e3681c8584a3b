//! Exact scalars of the form `q·√N`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::OnceLock;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{ldexp, rational_parts, sqrt_parts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot add {left} and {right}: radicands are not commensurable")]
pub struct IncompatibleRadicals {
    pub left: String,
    pub right: String,
}

const TRIAL_BOUND: u32 = 2000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Writes `n = s²·m`, removing every square factor built from small primes
/// and absorbing `m` entirely when it is itself a perfect square.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    if let Some(s) = perfect_sqrt(n) {
        return (s, BigInt::one());
    }
    let mut m = n.clone();
    let mut s = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        let pp = &pb * &pb;
        if pp > m {
            break;
        }
        loop {
            let (q, r) = m.div_rem(&pp);
            if !r.is_zero() {
                break;
            }
            m = q;
            s *= &pb;
        }
    }
    if let Some(t) = perfect_sqrt(&m) {
        return (s * t, BigInt::one());
    }
    (s, m)
}

/// `rational · √radicand` with `radicand ≥ 1`. Zero is stored as `0·√1`.
#[derive(Clone, Debug)]
pub struct RatRadical {
    rational: BigRational,
    radicand: BigInt,
}

impl RatRadical {
    pub fn zero() -> Self {
        RatRadical {
            rational: BigRational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatRadical {
            rational: q,
            radicand: BigInt::one(),
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `q·√n`; panics on negative `n`.
    pub fn new(q: BigRational, n: BigInt) -> Self {
        assert!(!n.is_negative(), "negative radicand");
        if q.is_zero() || n.is_zero() {
            return Self::zero();
        }
        let (s, m) = split_square(&n);
        RatRadical {
            rational: q * BigRational::from_integer(s),
            radicand: m,
        }
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt_of(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative value");
        let den = q.denom().clone();
        Self::new(
            BigRational::new(BigInt::one(), den.clone()),
            q.numer() * den,
        )
    }

    /// `√(∏ factors)`, normalizing each factor separately so that products of
    /// many small integers never need trial division of the full product.
    pub fn sqrt_of_product<'a>(factors: impl IntoIterator<Item = &'a BigRational>) -> Self {
        factors
            .into_iter()
            .fold(Self::one(), |acc, f| &acc * &Self::sqrt_of(f))
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// The exact value of `self²`, signed: `sign(q)·q²·N`.
    pub fn signed_square(&self) -> BigRational {
        let sq = &self.rational * &self.rational * BigRational::from_integer(self.radicand.clone());
        if self.rational.is_negative() {
            -sq
        } else {
            sq
        }
    }

    pub fn square(&self) -> BigRational {
        &self.rational * &self.rational * BigRational::from_integer(self.radicand.clone())
    }

    pub fn signum(&self) -> i32 {
        if self.rational.is_positive() {
            1
        } else if self.rational.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        RatRadical {
            rational: &self.rational * q,
            radicand: self.radicand.clone(),
        }
    }

    /// `self / other` when it is rational (same radical class).
    pub fn ratio(&self, other: &Self) -> Option<BigRational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let q = &self.rational / &other.rational;
        if self.radicand == other.radicand {
            return Some(q);
        }
        let prod = &self.radicand * &other.radicand;
        let s = perfect_sqrt(&prod)?;
        Some(q * BigRational::new(s, other.radicand.clone()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, IncompatibleRadicals> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        match other.ratio(self) {
            Some(r) => Ok(self.scale(&(BigRational::one() + r))),
            None => Err(IncompatibleRadicals {
                left: self.to_string(),
                right: other.to_string(),
            }),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, IncompatibleRadicals> {
        self.checked_add(&-other)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (qm, qe) = rational_parts(&self.rational);
        let (rm, re) = sqrt_parts(&self.radicand);
        ldexp(qm * rm, qe + re)
    }
}

impl Default for RatRadical {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for RatRadical {
    fn eq(&self, other: &Self) -> bool {
        self.signum() == other.signum() && self.square() == other.square()
    }
}

impl Eq for RatRadical {}

impl PartialOrd for RatRadical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatRadical {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl Mul for &RatRadical {
    type Output = RatRadical;

    fn mul(self, other: &RatRadical) -> RatRadical {
        if self.is_zero() || other.is_zero() {
            return RatRadical::zero();
        }
        let g = self.radicand.gcd(&other.radicand);
        let rest = (&self.radicand / &g) * (&other.radicand / &g);
        let mut rational = &self.rational * &other.rational * BigRational::from_integer(g);
        let radicand = match perfect_sqrt(&rest) {
            Some(s) => {
                rational *= BigRational::from_integer(s);
                BigInt::one()
            }
            None => rest,
        };
        RatRadical { rational, radicand }
    }
}

impl Mul for RatRadical {
    type Output = RatRadical;

    fn mul(self, other: RatRadical) -> RatRadical {
        &self * &other
    }
}

impl Neg for &RatRadical {
    type Output = RatRadical;

    fn neg(self) -> RatRadical {
        RatRadical {
            rational: -&self.rational,
            radicand: self.radicand.clone(),
        }
    }
}

impl Neg for RatRadical {
    type Output = RatRadical;

    fn neg(self) -> RatRadical {
        -&self
    }
}

impl From<i64> for RatRadical {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// `6`, `-3/2`, `12*sqrt(5)`, `sqrt(6)`, `-1/4*sqrt(3)`.
impl fmt::Display for RatRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            return write!(f, "{}", self.rational);
        }
        if self.rational.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if (-&self.rational).is_one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.rational, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rr(p: i64, q: i64, n: i64) -> RatRadical {
        RatRadical::new(BigRational::new(p.into(), q.into()), n.into())
    }

    #[test]
    fn normalization() {
        let v = rr(1, 1, 720);
        assert_eq!(v.rational(), &BigRational::from_integer(12.into()));
        assert_eq!(v.radicand(), &BigInt::from(5));
        assert_eq!(v.to_string(), "12*sqrt(5)");
        assert_eq!(rr(1, 1, 36).to_string(), "6");
        assert_eq!(rr(3, 1, 0), RatRadical::zero());
        assert_eq!(rr(1, 1, 6).to_string(), "sqrt(6)");
        assert_eq!(rr(-1, 4, 12).to_string(), "-1/2*sqrt(3)");
    }

    #[test]
    fn large_prime_squares_are_equal_by_cross_squares() {
        // 2003 exceeds the trial bound, so 2003²·5 keeps its square factor.
        let raw = RatRadical::new(BigRational::one(), BigInt::from(2003 * 2003 * 5));
        let reduced = rr(2003, 1, 5);
        assert_eq!(raw, reduced);
        assert!(raw.checked_add(&reduced).is_ok());
        assert_eq!(raw.ratio(&reduced), Some(BigRational::one()));
    }

    #[test]
    fn incompatible_sums_error() {
        assert!(rr(1, 1, 2).checked_add(&rr(1, 1, 3)).is_err());
        assert_eq!(
            rr(1, 1, 8).checked_add(&rr(1, 1, 2)).unwrap(),
            rr(3, 1, 2)
        );
    }

    #[test]
    fn products() {
        assert_eq!(&rr(1, 1, 6) * &rr(1, 1, 6), RatRadical::from_int(6));
        assert_eq!(&rr(1, 1, 6) * &rr(1, 1, 10), rr(2, 1, 15));
        let six_fact = RatRadical::sqrt_of(&BigRational::from_integer(720.into()));
        assert_eq!(six_fact, rr(12, 1, 5));
        let quarter = RatRadical::sqrt_of(&BigRational::new(1.into(), 12.into()));
        assert_eq!(quarter, rr(1, 6, 3));
    }

    #[test]
    fn float_conversion() {
        assert!((rr(1, 1, 720).to_f64() - 720f64.sqrt()).abs() < 1e-12);
        let huge = RatRadical::new(
            BigRational::new(1.into(), BigInt::from(10).pow(500)),
            BigInt::from(10).pow(1001),
        );
        assert!((huge.to_f64() - 10f64.sqrt()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn multiplication_matches_squares(a in -50i64..50, b in 1i64..20, n in 0i64..5000,
                                          c in -50i64..50, m in 0i64..5000) {
            let x = rr(a, b, n);
            let y = rr(c, 1, m);
            let prod = &x * &y;
            prop_assert_eq!(prod.square(), x.square() * y.square());
            prop_assert_eq!(prod.signum(), x.signum() * y.signum());
        }

        #[test]
        fn addition_within_a_class(a in -50i64..50, c in -50i64..50, s in 1i64..30, t in 1i64..30,
                                   n in 1i64..200) {
            let x = rr(a, 1, s * s * n);
            let y = rr(c, 1, t * t * n);
            let sum = x.checked_add(&y).unwrap();
            let expect = (a * s + c * t) as f64 * (n as f64).sqrt();
            prop_assert!((sum.to_f64() - expect).abs() < 1e-9 * (1.0 + expect.abs()));
        }
    }
}
