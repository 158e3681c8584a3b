//! Taylor series of `exp[r(A† - A)] ψ⁽⁰⁾` truncated at order `K`, assembled
//! per ladder level from exact power coefficients.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::boson::{BosonExpr, FockState, RatRadical};
use crate::engine::{DyckSumEngine, EngineError, Ladder, SignMode};
use crate::numeric::{bigint_parts, ldexp, rational_from_f64, sqrt_parts};
use crate::polynomial::Poly;

/// Amplitude of one level as a function of `r`: `√radicand · poly(r)`.
/// Every path sum reaching a level carries the same radical, so one
/// radicand serves the whole series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSeries {
    pub radicand: BigInt,
    pub poly: Poly,
}

impl LevelSeries {
    /// Exact `c_k / k!` as a scalar.
    pub fn coefficient(&self, k: usize) -> RatRadical {
        RatRadical::new(self.poly.coeff(k), self.radicand.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesResult {
    pub order: usize,
    pub sign_mode: SignMode,
    /// `δ₂ → [(k, c_k)]`, the undivided power coefficients.
    pub per_level: BTreeMap<usize, Vec<(usize, RatRadical)>>,
    pub assembled: BTreeMap<usize, LevelSeries>,
}

impl SeriesResult {
    /// Exact Taylor coefficients of the `δ₂ = 0` amplitude, `c_k / k!`.
    pub fn vev_taylor(&self) -> Vec<BigRational> {
        let Some(level) = self.assembled.get(&0) else {
            return vec![BigRational::zero(); self.order + 1];
        };
        assert!(level.radicand.is_one(), "vacuum level must be rational");
        (0..=self.order).map(|k| level.poly.coeff(k)).collect()
    }
}

/// Builds the series with a fresh engine for `A` on `vac`.
pub fn build_series(
    expr: &BosonExpr,
    vac: &FockState,
    order: usize,
    sign_mode: SignMode,
) -> Result<SeriesResult, EngineError> {
    let ladder = Ladder::from_operator(expr, vac, 0)?;
    let mut engine = DyckSumEngine::new(ladder);
    build_series_with(&mut engine, order, sign_mode)
}

/// Builds the series through `engine`, reusing any memoized powers.
pub fn build_series_with(
    engine: &mut DyckSumEngine,
    order: usize,
    sign_mode: SignMode,
) -> Result<SeriesResult, EngineError> {
    let mut per_level: BTreeMap<usize, Vec<(usize, RatRadical)>> = BTreeMap::new();
    for k in 0..=order {
        let power = engine.power_coefficients(k, sign_mode)?;
        for (d2, c) in power.coeffs {
            per_level.entry(d2).or_default().push((k, c));
        }
    }

    let mut factorial = vec![BigInt::one()];
    for k in 1..=order {
        let next = &factorial[k - 1] * BigInt::from(k);
        factorial.push(next);
    }

    let mut assembled = BTreeMap::new();
    for (&d2, terms) in &per_level {
        let base = engine.prefactor(d2)?;
        let unit = RatRadical::new(BigRational::one(), base.radicand().clone());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (k, c) in terms {
            let q = c
                .ratio(&unit)
                .expect("path sums on one level share a radical");
            coeffs[*k] = q / BigRational::from_integer(factorial[*k].clone());
        }
        assembled.insert(
            d2,
            LevelSeries {
                radicand: base.radicand().clone(),
                poly: Poly::from_coeffs(coeffs),
            },
        );
    }
    Ok(SeriesResult {
        order,
        sign_mode,
        per_level,
        assembled,
    })
}

/// Exact Taylor coefficients `c_k / k!` of the vacuum amplitude only,
/// `k = 0..=order`.
pub fn vacuum_series(engine: &mut DyckSumEngine, order: usize, sign_mode: SignMode) -> Result<Vec<BigRational>, EngineError> {
    let mut factorial = BigInt::one();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        if k > 0 {
            factorial *= k;
        }
        let c = engine.level_coefficient(k, 0, sign_mode)?;
        assert!(c.is_rational(), "vacuum level must be rational");
        out.push(c.rational() / BigRational::from_integer(factorial.clone()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericAmplitudes {
    pub r: f64,
    /// Bits of the reported floats. Series are summed exactly, so this only
    /// records the rounding of the final values.
    pub precision: u32,
    pub amplitudes: BTreeMap<usize, f64>,
    pub vev: f64,
    /// `δ₂ → [(K', value)]` for `K' ∈ {K-2, K-1, K}`.
    pub partial_sums: BTreeMap<usize, Vec<(usize, f64)>>,
}

fn level_value(level: &LevelSeries, poly: &Poly, r: &BigRational) -> f64 {
    let (n, d) = poly.eval_parts(r);
    if n.is_zero() {
        return 0.0;
    }
    let (nm, ne) = bigint_parts(&n);
    let (dm, de) = bigint_parts(&d);
    let (sm, se) = sqrt_parts(&level.radicand);
    ldexp(nm / dm * sm, ne - de + se)
}

/// Evaluates every level at `r` exactly, rounding only the final values.
pub fn evaluate_at(series: &SeriesResult, r: f64, precision: u32) -> NumericAmplitudes {
    assert!(r.is_finite() && r >= 0.0, "r must be finite and non-negative");
    let exact_r = rational_from_f64(r).expect("finite r");
    let mut amplitudes = BTreeMap::new();
    let mut partial_sums = BTreeMap::new();
    for (&d2, level) in &series.assembled {
        amplitudes.insert(d2, level_value(level, &level.poly, &exact_r));
        let lo = series.order.saturating_sub(2);
        let partials = (lo..=series.order)
            .map(|kk| (kk, level_value(level, &level.poly.truncate(kk + 1), &exact_r)))
            .collect();
        partial_sums.insert(d2, partials);
    }
    let vev = amplitudes.get(&0).copied().unwrap_or(0.0);
    NumericAmplitudes {
        r,
        precision,
        amplitudes,
        vev,
        partial_sums,
    }
}

/// `tanhⁿ(r) / cosh(r)`, the exact two-mode squeezed amplitude on `|n,n⟩`.
pub fn squeeze_reference(n: u32, r: f64) -> f64 {
    r.tanh().powi(n as i32) / r.cosh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::{BosonFactor, Monomial};

    fn expr(f: &[BosonFactor]) -> BosonExpr {
        BosonExpr::single(Monomial::new(f.to_vec()).unwrap())
    }

    fn squeezer() -> BosonExpr {
        expr(&[BosonFactor::annihilate(1, 1), BosonFactor::annihilate(2, 1)])
    }

    fn cubic() -> BosonExpr {
        expr(&[BosonFactor::annihilate(0, 3)])
    }

    fn int(n: i64) -> RatRadical {
        RatRadical::from_int(n)
    }

    #[test]
    fn low_order_contributions() {
        let s = build_series(&squeezer(), &FockState::vacuum(), 2, SignMode::Minus).unwrap();
        assert_eq!(s.per_level[&0], vec![(0, int(1)), (2, int(-1))]);
        assert_eq!(s.per_level[&1], vec![(1, int(1))]);
        assert_eq!(s.per_level[&2], vec![(2, int(2))]);

        let s = build_series(&cubic(), &FockState::vacuum(), 0, SignMode::Minus).unwrap();
        assert_eq!(s.per_level.len(), 1);
        assert_eq!(s.per_level[&0], vec![(0, int(1))]);

        let s = build_series(&cubic(), &FockState::vacuum(), 2, SignMode::Minus).unwrap();
        assert_eq!(s.per_level[&0], vec![(0, int(1)), (2, int(-6))]);
        assert_eq!(
            s.assembled[&0].poly,
            Poly::from_coeffs(vec![BigRational::one(), BigRational::zero(), BigRational::from_integer((-3).into())])
        );
    }

    #[test]
    fn reference_values() {
        assert_eq!(squeeze_reference(0, 0.0), 1.0);
        assert!((squeeze_reference(1, 1.0) - 0.493_554_347_564_573).abs() < 1e-14);
        assert!((squeeze_reference(33, 1.0) - 0.000_081_001).abs() < 5e-10);
    }

    #[test]
    fn zero_coupling_is_the_vacuum() {
        let s = build_series(&cubic(), &FockState::vacuum(), 12, SignMode::Minus).unwrap();
        let v = evaluate_at(&s, 0.0, 53);
        assert_eq!(v.vev, 1.0);
        assert!(v.amplitudes.iter().all(|(&d2, &a)| d2 == 0 || a == 0.0));
    }

    #[test]
    fn squeezing_converges_and_is_unitary() {
        let s = build_series(&squeezer(), &FockState::vacuum(), 80, SignMode::Minus).unwrap();
        for r in [0.1, 0.3, 0.5] {
            let v = evaluate_at(&s, r, 53);
            let norm: f64 = v.amplitudes.values().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-8, "r={r} norm={norm}");
            for n in 0..=10 {
                let expect = squeeze_reference(n, r);
                assert!((v.amplitudes[&(n as usize)] - expect).abs() <= 1e-12 * expect.max(1e-300) + 1e-15);
            }
        }
    }

    #[test]
    fn cubic_vacuum_series_is_even_and_alternating() {
        let s = build_series(&cubic(), &FockState::vacuum(), 16, SignMode::Minus).unwrap();
        for (k, c) in &s.per_level[&0] {
            assert_eq!(k % 2, 0);
            assert_eq!(c.signum(), if (k / 2) % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(s.vev_taylor().len(), 17);
        let mut engine = DyckSumEngine::new(Ladder::from_operator(&cubic(), &FockState::vacuum(), 0).unwrap());
        assert_eq!(vacuum_series(&mut engine, 16, SignMode::Minus).unwrap(), s.vev_taylor());
    }

    #[test]
    fn extending_the_order_reuses_powers() {
        let ladder = Ladder::from_operator(&cubic(), &FockState::vacuum(), 0).unwrap();
        let mut engine = DyckSumEngine::new(ladder);
        let short = build_series_with(&mut engine, 10, SignMode::Minus).unwrap();
        let before = engine.stats();
        let long = build_series_with(&mut engine, 12, SignMode::Minus).unwrap();
        let after = engine.stats();
        assert_eq!(after.memo_hits - before.memo_hits, 11);
        assert_eq!(after.memo_misses - before.memo_misses, 2);
        for (d2, level) in &short.assembled {
            assert_eq!(level.poly, long.assembled[d2].poly.truncate(11));
        }
    }

    #[test]
    fn partial_sums_report_the_last_three_orders() {
        let s = build_series(&squeezer(), &FockState::vacuum(), 6, SignMode::Minus).unwrap();
        let v = evaluate_at(&s, 0.5, 53);
        let orders: Vec<usize> = v.partial_sums[&0].iter().map(|p| p.0).collect();
        assert_eq!(orders, vec![4, 5, 6]);
        assert_eq!(v.partial_sums[&0][2].1, v.vev);
    }
}
