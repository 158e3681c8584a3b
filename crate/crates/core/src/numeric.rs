//! Conversions from exact big numbers to `f64` that survive magnitudes far
//! outside the `f64` exponent range, as long as the final value fits.

use num::bigint::Sign;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

/// Splits `n` into `(m, e)` with `n ≈ m · 2^e` and `|m| < 2^64`.
pub fn bigint_parts(n: &BigInt) -> (f64, i64) {
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_f64().unwrap_or(0.0), 0);
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift as usize;
    (top.to_f64().unwrap_or(0.0), shift as i64)
}

/// `x · 2^e` without intermediate overflow in the exponent bookkeeping.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    const STEP: i64 = 1000;
    let up = 2f64.powi(STEP as i32);
    let down = 2f64.powi(-STEP as i32);
    while e > STEP && x.is_finite() && x != 0.0 {
        x *= up;
        e -= STEP;
    }
    while e < -STEP && x != 0.0 {
        x *= down;
        e += STEP;
    }
    x * 2f64.powi(e as i32)
}

/// `(m, e)` with `q ≈ m · 2^e`.
pub fn rational_parts(q: &BigRational) -> (f64, i64) {
    if q.is_zero() {
        return (0.0, 0);
    }
    let (nm, ne) = bigint_parts(q.numer());
    let (dm, de) = bigint_parts(q.denom());
    (nm / dm, ne - de)
}

/// `(m, e)` with `√n ≈ m · 2^e`; `n` must be non-negative.
pub fn sqrt_parts(n: &BigInt) -> (f64, i64) {
    let (mut m, mut e) = bigint_parts(n);
    if e % 2 != 0 {
        m *= 2.0;
        e -= 1;
    }
    (m.sqrt(), e / 2)
}

pub fn bigint_to_f64(n: &BigInt) -> f64 {
    let (m, e) = bigint_parts(n);
    ldexp(m, e)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let (m, e) = rational_parts(q);
    ldexp(m, e)
}

/// `numer / denom` as `f64`, for unreduced pairs from Horner evaluation.
pub fn ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    let (nm, ne) = bigint_parts(numer);
    let (dm, de) = bigint_parts(denom);
    ldexp(nm / dm, ne - de)
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `log10 |n|`, usable for magnitude reporting of huge integers.
pub fn log10_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = bigint_parts(&n.abs());
    m.log10() + e as f64 * std::f64::consts::LOG10_2
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
