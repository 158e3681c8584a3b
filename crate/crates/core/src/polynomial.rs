//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored as integer numerators over a single shared
//! denominator. The nested sums built by the engine reach degrees in the
//! hundreds with coefficients of many thousands of bits, and a shared
//! denominator keeps almost every inner-loop operation an integer
//! multiply-add by a machine-sized value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Exact rational scalar.
pub type BigRat = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    // value = sum(num[i] * x^i) / den, den > 0, gcd(num..., den) = 1,
    // no trailing zeros in num.
    num: Vec<BigInt>,
    den: BigInt,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_parts(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    /// Builds a polynomial from coefficients in increasing power order.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .into_iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Poly::from_parts(num, den)
    }

    /// Builds `sum(num[i] x^i) / den` and normalizes it.
    pub fn from_parts(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero polynomial denominator");
        let mut p = Poly { num, den };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(|c| c.is_zero()) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        for c in &mut self.num {
            *c = &*c / &g;
        }
        self.den = &self.den / &g;
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> isize {
        self.num.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        match self.num.get(i) {
            Some(c) => BigRat::new(c.clone(), self.den.clone()),
            None => BigRat::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRat> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// Integer numerators over [`Poly::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        Poly::from_parts(
            self.num.iter().map(|a| a * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_parts(
            self.num.iter().take(n).cloned().collect(),
            self.den.clone(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        let (n, d) = self.eval_parts(x);
        BigRat::new(n, d)
    }

    /// Evaluation at an integer point.
    pub fn eval_int(&self, x: i64) -> BigRat {
        BigRat::new(self.eval_numerator_int(&BigInt::from(x)), self.den.clone())
    }

    /// Numerator of the value at integer `x`, over [`Poly::denominator`].
    pub fn eval_numerator_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Unreduced `(numerator, denominator)` of the value at `x`.
    ///
    /// Skips every gcd, which matters for high-degree polynomials with
    /// huge coefficients evaluated at many points.
    pub fn eval_parts(&self, x: &BigRat) -> (BigInt, BigInt) {
        let n = self.num.len();
        if n == 0 {
            return (BigInt::zero(), BigInt::one());
        }
        // den * b^(n-1) * p(a/b) = sum num[i] a^i b^(n-1-i)
        let (a, b) = (x.numer(), x.denom());
        let mut acc = self.num[n - 1].clone();
        let mut bpow = BigInt::one();
        for c in self.num[..n - 1].iter().rev() {
            bpow *= b;
            acc = acc * a + c * &bpow;
        }
        (acc, &self.den * bpow)
    }

    /// Returns `q` with `q(x) = p(x + c)`.
    pub fn shift(&self, c: i64) -> Poly {
        if c == 0 || self.num.len() < 2 {
            return self.clone();
        }
        let c = BigInt::from(c);
        let mut a = self.num.clone();
        let n = a.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                let t = &c * &a[j + 1];
                a[j] += t;
            }
        }
        Poly::from_parts(a, self.den.clone())
    }

    /// Returns `F` with `F(M) = sum_{m=lower}^{M} p(m)` for every integer
    /// `M >= lower - 1`; in particular `F(lower - 1) = 0`.
    ///
    /// Works in the forward-difference basis anchored at `lower`: sample
    /// `deg + 1` values, difference them into Newton coefficients, sum each
    /// binomial term with the hockey-stick identity, and expand back to
    /// monomials with a Horner scheme over `(x - c) / i` factors.
    pub fn definite_sum(&self, lower: u64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let deg = self.num.len() - 1;
        let lower = lower as i64;

        let mut diffs: Vec<BigInt> = (0..=deg as i64)
            .map(|t| self.eval_numerator_int(&BigInt::from(lower + t)))
            .collect();
        for level in 1..=deg {
            for t in (level..=deg).rev() {
                let prev = diffs[t - 1].clone();
                diffs[t] -= prev;
            }
        }

        // F = sum_{i=1}^{n} b_i C(y, i), b_i = diffs[i-1], y = x - lower + 1,
        // expanded as y/1 (b_1 + (y-1)/2 (b_2 + ... (y-n+1)/n b_n)).
        let n = deg + 1;
        let mut q: Vec<BigInt> = vec![diffs[n - 1].clone()];
        let mut scale = BigInt::one();
        for i in (1..=n).rev() {
            let c = BigInt::from(lower + i as i64 - 2);
            let mut next = vec![BigInt::zero(); q.len() + 1];
            for (k, qk) in q.iter().enumerate() {
                next[k + 1] += qk;
                next[k] -= &c * qk;
            }
            q = next;
            scale *= BigInt::from(i as u64);
            if i > 1 {
                q[0] += &diffs[i - 2] * &scale;
            }
        }
        Poly::from_parts(q, scale * &self.den)
    }

    /// Lagrange interpolation through `(x, y)` pairs with distinct `x`.
    pub fn interpolate(points: &[(BigRat, BigRat)]) -> Poly {
        // Newton divided differences, then nested expansion.
        let n = points.len();
        if n == 0 {
            return Poly::zero();
        }
        let mut dd: Vec<BigRat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                dd[i] = (&dd[i] - &dd[i - 1]) / dx;
            }
        }
        let mut acc = Poly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            let lin = Poly::from_coeffs(vec![-points[i].0.clone(), BigRat::one()]);
            acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
        }
        acc
    }
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.num.len().max(rhs.num.len());
        if self.den == rhs.den {
            let num = (0..len)
                .map(|i| {
                    let a = self.num.get(i).cloned().unwrap_or_default();
                    match rhs.num.get(i) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect();
            return Poly::from_parts(num, self.den.clone());
        }
        let zero = BigInt::zero();
        let num = (0..len)
            .map(|i| {
                self.num.get(i).unwrap_or(&zero) * &rhs.den
                    + rhs.num.get(i).unwrap_or(&zero) * &self.den
            })
            .collect();
        Poly::from_parts(num, &self.den * &rhs.den)
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                num[i + j] += a * b;
            }
        }
        Poly::from_parts(num, &self.den * &rhs.den)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.num.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 if show_coeff => write!(f, "*x")?,
                1 => write!(f, "x")?,
                _ if show_coeff => write!(f, "*x^{i}")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in the binomial basis: `sum(num[i] * C(x, i)) / den`.
///
/// Multiplying by `x` and summing over an integer range both cost linear
/// time here, against quadratic in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl BinomialPoly {
    pub fn one() -> Self {
        BinomialPoly {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    /// Degree, or -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.num.iter().rposition(|c| !c.is_zero()).map_or(-1, |d| d as isize)
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    // x * C(x, i) = (i + 1) C(x, i + 1) + i C(x, i)
    fn times_x(a: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + 1];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[i + 1] += c * BigInt::from(i + 1);
            if i > 0 {
                out[i] += c * BigInt::from(i);
            }
        }
        out
    }

    /// Product with a monomial-basis polynomial of small degree.
    pub fn mul_poly(&self, p: &Poly) -> BinomialPoly {
        if p.is_zero() || self.degree() < 0 {
            return BinomialPoly {
                num: Vec::new(),
                den: BigInt::one(),
            };
        }
        let pn = p.numerators();
        let scaled = |t: usize| -> Vec<BigInt> { self.num.iter().map(|c| c * &pn[t]).collect() };
        let mut acc = scaled(pn.len() - 1);
        for t in (0..pn.len() - 1).rev() {
            acc = Self::times_x(&acc);
            if !pn[t].is_zero() {
                for (a, c) in acc.iter_mut().zip(&self.num) {
                    *a += c * &pn[t];
                }
            }
        }
        let mut out = BinomialPoly {
            num: acc,
            den: &self.den * p.denominator(),
        };
        out.normalize();
        out
    }

    /// Returns `F` with `F(M) = sum_{m=lower}^{M} p(m)` for every integer
    /// `M >= lower - 1`.
    pub fn definite_sum(&self, lower: u64) -> BinomialPoly {
        // sum_{m=lower}^{M} C(m, i) = C(M + 1, i + 1) - C(lower, i + 1)
        // and C(M + 1, i + 1) = C(M, i + 1) + C(M, i).
        let mut out = vec![BigInt::zero(); self.num.len() + 1];
        let mut offset = BigInt::zero();
        let lower_big = BigInt::from(lower);
        let mut binom = lower_big.clone(); // C(lower, i + 1)
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                binom = binom * (&lower_big - BigInt::from(i)) / BigInt::from(i + 1);
            }
            out[i + 1] += c;
            out[i] += c;
            if !binom.is_zero() {
                offset += c * &binom;
            }
        }
        out[0] -= offset;
        let mut out = BinomialPoly {
            num: out,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Numerator of the value at a non-negative integer.
    pub fn eval_numerator_int(&self, m: u64) -> BigInt {
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        let mb = BigInt::from(m);
        for (i, c) in self.num.iter().enumerate() {
            if i as u64 > m {
                break;
            }
            if i > 0 {
                binom = binom * (&mb - BigInt::from(i - 1)) / BigInt::from(i);
            }
            acc += c * &binom;
        }
        acc
    }

    pub fn eval_int(&self, m: u64) -> BigRat {
        BigRat::new(self.eval_numerator_int(m), self.den.clone())
    }

    /// Conversion to the monomial basis.
    pub fn to_poly(&self) -> Poly {
        let d = self.degree();
        if d < 0 {
            return Poly::zero();
        }
        let d = d as usize;
        // falling factorial x(x-1)...(x-i+1) = i! C(x, i); scale all terms by d!.
        let mut fact = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            fact[i] = &fact[i - 1] * BigInt::from(i);
        }
        let mut falling: Vec<BigInt> = vec![BigInt::one()];
        let mut acc = vec![BigInt::zero(); d + 1];
        for i in 0..=d {
            if i > 0 {
                let shift = BigInt::from(i - 1);
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (t, f) in falling.iter().enumerate() {
                    next[t + 1] += f;
                    next[t] -= &shift * f;
                }
                falling = next;
            }
            let c = &self.num[i];
            if c.is_zero() {
                continue;
            }
            let w = c * (&fact[d] / &fact[i]);
            for (a, f) in acc.iter_mut().zip(&falling) {
                *a += &w * f;
            }
        }
        Poly::from_parts(acc, &self.den * &fact[d])
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn ints(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn loop_sum(p: &Poly, a: i64, m: i64) -> BigRat {
        (a..=m).map(|i| p.eval_int(i)).fold(BigRat::zero(), |s, v| s + v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(ints(&[1, 0, 1]) + ints(&[0, 0, -1]), Poly::one());
        assert_eq!(Poly::zero() + ints(&[2, 3]), ints(&[2, 3]));
        assert_eq!(ints(&[0, 3]) + ints(&[2, 1]), ints(&[2, 4]));
        assert_eq!((ints(&[1, 0, 1]) + ints(&[0, 0, -1])).degree(), 0);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Poly::x() * Poly::x(), ints(&[0, 0, 1]));
        assert!((ints(&[1, 2]) * Poly::zero()).is_zero());
        assert_eq!(ints(&[1, 1]) * ints(&[-1, 1]), ints(&[-1, 0, 1]));
        assert_eq!(Poly::zero().degree(), -1);
    }

    #[test]
    fn eval_ladder_product_for_cubic() {
        // 3x(3x-1)(3x-2) = 27x^3 - 27x^2 + 6x
        let p = ints(&[0, 6, -27, 27]);
        assert_eq!(p.eval_int(1), rat(6, 1));
        assert_eq!(p.eval_int(2), rat(120, 1));
        assert_eq!(ints(&[7, 1, 1]).eval(&BigRat::zero()), rat(7, 1));
        assert_eq!(p.eval(&rat(1, 3)), BigRat::zero());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ints(&[0, 0, 1]).shift(-1), ints(&[1, -2, 1]));
        assert_eq!(ints(&[4, 0, 2]).shift(0), ints(&[4, 0, 2]));
        assert_eq!(Poly::x().shift(5), ints(&[5, 1]));
    }

    #[test]
    fn definite_sum_examples() {
        assert_eq!(Poly::one().definite_sum(1), Poly::x());
        let tri = Poly::x().definite_sum(1);
        assert_eq!(tri, Poly::from_coeffs(vec![rat(0, 1), rat(1, 2), rat(1, 2)]));

        // (3/4) M(M+1)(3M-2)(3M+1)
        let cubic = ints(&[0, 6, -27, 27]);
        let summed = cubic.definite_sum(1);
        let m = Poly::x();
        let closed = (&(&(&m * &ints(&[1, 1])) * &ints(&[-2, 3])) * &ints(&[1, 3]))
            .scale(&rat(3, 4));
        assert_eq!(summed, closed);
        assert_eq!(summed.eval_int(2), rat(126, 1));
    }

    #[test]
    fn definite_sum_from_zero_and_rational_coeffs() {
        let p = Poly::from_coeffs(vec![rat(1, 3), rat(-5, 7), rat(2, 11)]);
        let f = p.definite_sum(0);
        assert_eq!(f.eval_int(-1), BigRat::zero());
        for m in 0..12 {
            assert_eq!(f.eval_int(m), loop_sum(&p, 0, m));
        }
        assert_eq!(f.degree(), 3);
    }

    #[test]
    fn interpolate_recovers_polynomial() {
        let p = ints(&[0, 6, -27, 27]);
        let pts: Vec<_> = (1..=4).map(|i| (rat(i, 1), p.eval_int(i))).collect();
        assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(ints(&[0, 6, -27, 27]).to_string(), "27*x^3 - 27*x^2 + 6*x");
        assert_eq!(ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|cs| {
            Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn definite_sum_matches_loop(p in small_poly(), a in 0u64..8, offsets in prop::collection::vec(0i64..=50, 20)) {
            let f = p.definite_sum(a);
            let a = a as i64;
            prop_assert_eq!(f.eval_int(a - 1), BigRat::zero());
            for off in offsets {
                prop_assert_eq!(f.eval_int(a + off), loop_sum(&p, a, a + off));
            }
            if !p.is_zero() {
                prop_assert_eq!(f.degree(), p.degree() + 1);
            }
        }

        #[test]
        fn shift_round_trips(p in small_poly(), c in -30i64..30) {
            prop_assert_eq!(p.shift(c).shift(-c), p);
        }

        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn eval_parts_agrees_with_eval(p in small_poly(), n in -9i64..9, d in 1i64..9) {
            let x = rat(n, d);
            let (a, b) = p.eval_parts(&x);
            prop_assert_eq!(BigRat::new(a, b), p.eval(&x));
        }

        #[test]
        fn binomial_basis_matches_monomial(p in small_poly(), q in small_poly(), lower in 0u64..6) {
            let b = BinomialPoly::one().mul_poly(&p);
            prop_assert_eq!(b.to_poly(), p.clone());
            prop_assert_eq!(b.mul_poly(&q).to_poly(), &p * &q);
            let f = b.definite_sum(lower);
            prop_assert_eq!(f.to_poly(), p.definite_sum(lower));
            for m in 0..12u64 {
                prop_assert_eq!(f.eval_int(m), p.definite_sum(lower).eval_int(m as i64));
            }
        }
    }
}
