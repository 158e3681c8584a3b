//! Sums over Dyck paths of ladder-product weights, giving the coefficients of
//! `(A† ± A)^k ψ⁽⁰⁾` in the normalized ladder basis.
//!
//! A path from height 0 to `δ₂` crosses every edge `(h-1, h)` with `h ≤ δ₂`
//! once more upwards than downwards, so its weight factors as
//! `√(∏_{i≤δ₂} λᵢμᵢ)` times the product of `λₕμₕ` over its down-steps from
//! height `h`. The path sum of the second factor is the `j`-fold nested sum
//! `F_j(M)` with `j = (k-δ₂)/2` and every upper bound equal to
//! `M = (k+δ₂)/2`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};
use thiserror::Error;

use crate::boson::{
    lambda_mu_polynomial, lambda_mu_table, BosonError, BosonExpr, FockState, LadderPolynomial,
    LadderTable, RatRadical,
};
use crate::dyck::{enumerate_words, DyckError, PathSpec, Step};
use crate::polynomial::{BinomialPoly, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("ladder products are unknown beyond p={available}; height {needed} is required")]
    TowerExhausted { needed: usize, available: usize },
    #[error(transparent)]
    Path(#[from] DyckError),
    #[error(transparent)]
    Boson(#[from] BosonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignMode {
    Plus,
    Minus,
}

impl SignMode {
    /// Sign attached to a path with `lowerings` applications of `A`.
    pub fn sign(self, lowerings: usize) -> i32 {
        match self {
            SignMode::Minus if lowerings % 2 == 1 => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for SignMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMode::Plus => "plus",
            SignMode::Minus => "minus",
        })
    }
}

/// What is known about `λₚμₚ`: a polynomial, a table, or both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub poly: Option<LadderPolynomial>,
    pub table: Option<LadderTable>,
}

impl Ladder {
    pub fn from_poly(lp: LadderPolynomial) -> Self {
        Ladder {
            poly: Some(lp),
            table: None,
        }
    }

    pub fn from_table(table: LadderTable) -> Self {
        Ladder {
            poly: None,
            table: Some(table),
        }
    }

    /// Tabulates `λₚμₚ` for `A` on `vac` up to `p_max` (at least a few
    /// entries past the interpolation nodes) and interpolates a polynomial
    /// of degree `order(A)` when the tower is long enough.
    pub fn from_operator(expr: &BosonExpr, vac: &FockState, p_max: usize) -> Result<Self, EngineError> {
        let d = expr.order() as usize;
        let table = lambda_mu_table(expr, vac, p_max.max(d + 4))?;
        let poly = match lambda_mu_polynomial(&table, d) {
            Ok(lp) => Some(lp),
            Err(BosonError::InsufficientTower { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(Ladder {
            poly,
            table: Some(table),
        })
    }

    /// `λₚμₚ`, preferring the table.
    pub fn value(&self, p: usize) -> Option<BigRational> {
        if let Some(v) = self.table.as_ref().and_then(|t| t.get(p)) {
            return Some(v);
        }
        self.poly.as_ref().map(|lp| lp.eval(p))
    }

    /// First `p ≤ limit` with `λₚμₚ = 0`, from the table or the polynomial.
    pub fn termination_within(&self, limit: usize) -> Option<usize> {
        let from_table = self.table.as_ref().and_then(LadderTable::terminates_at);
        if let Some(t) = from_table.filter(|&t| t <= limit) {
            return Some(t);
        }
        let lp = self.poly.as_ref()?;
        (1..=limit).find(|&p| lp.eval(p).is_zero())
    }

    fn known_up_to(&self) -> usize {
        match (&self.poly, &self.table) {
            (Some(_), _) => usize::MAX,
            (None, Some(t)) if t.terminates_at().is_some() => usize::MAX,
            (None, Some(t)) => t.max_p(),
            (None, None) => 0,
        }
    }
}

/// `stages[j]` is the `j`-fold nested sum `F_j(M)`: `F_0 = 1`,
/// `F_j = Σ_{m=j}^{M} lp(m-j+1) F_{j-1}(m)`.
#[derive(Debug, Clone)]
pub struct NestedSumCache {
    stages: Vec<BinomialPoly>,
    source: LadderPolynomial,
    sum_calls: usize,
}

impl NestedSumCache {
    pub fn new(source: LadderPolynomial) -> Self {
        NestedSumCache {
            stages: vec![BinomialPoly::one()],
            source,
            sum_calls: 0,
        }
    }

    pub fn build(source: LadderPolynomial, j_max: usize) -> Self {
        let mut cache = Self::new(source);
        cache.extend_to(j_max);
        cache
    }

    pub fn extend_to(&mut self, j_max: usize) {
        while self.stages.len() <= j_max {
            let j = self.stages.len();
            let weight = self.source.poly.shift(1 - j as i64);
            let summand = self.stages.last().expect("stage 0 exists").mul_poly(&weight);
            self.stages.push(summand.definite_sum(j as u64));
            self.sum_calls += 1;
        }
    }

    /// Deepest stage built.
    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    /// Stage `j` in the monomial basis.
    pub fn stage(&self, j: usize) -> Option<Poly> {
        self.stages.get(j).map(BinomialPoly::to_poly)
    }

    pub fn stage_degree(&self, j: usize) -> Option<isize> {
        self.stages.get(j).map(BinomialPoly::degree)
    }

    pub fn source(&self) -> &LadderPolynomial {
        &self.source
    }

    /// Number of `definite_sum` evaluations performed so far.
    pub fn sum_calls(&self) -> usize {
        self.sum_calls
    }

    /// `F_j(M)`; the stage must already be built.
    pub fn eval(&self, j: usize, m: usize) -> BigRational {
        self.stages[j].eval_int(m as u64)
    }
}

/// Normalized-basis coefficients of `(A† ± A)^k ψ⁽⁰⁾`. Levels with a zero
/// coefficient are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerResult {
    pub k: usize,
    pub sign_mode: SignMode,
    pub coeffs: BTreeMap<usize, RatRadical>,
}

impl PowerResult {
    pub fn get(&self, delta2: usize) -> RatRadical {
        self.coeffs.get(&delta2).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub definite_sums: usize,
    pub memo_hits: usize,
    pub memo_misses: usize,
}

/// Evaluates powers for one ladder, memoizing results and reusing the
/// nested-sum stages across all `k` and `δ₂`.
#[derive(Debug, Clone)]
pub struct DyckSumEngine {
    ladder: Ladder,
    cache: Option<NestedSumCache>,
    prefactors: Vec<RatRadical>,
    memo: BTreeMap<(usize, SignMode), PowerResult>,
    hits: usize,
    misses: usize,
}

impl DyckSumEngine {
    pub fn new(ladder: Ladder) -> Self {
        let cache = ladder.poly.clone().map(NestedSumCache::new);
        DyckSumEngine {
            ladder,
            cache,
            prefactors: vec![RatRadical::one()],
            memo: BTreeMap::new(),
            hits: 0,
            misses: 0,
        }
    }

    pub fn from_poly(lp: LadderPolynomial) -> Self {
        Self::new(Ladder::from_poly(lp))
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn cache(&self) -> Option<&NestedSumCache> {
        self.cache.as_ref()
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            definite_sums: self.cache.as_ref().map_or(0, NestedSumCache::sum_calls),
            memo_hits: self.hits,
            memo_misses: self.misses,
        }
    }

    /// `√(∏_{i=1}^{δ₂} λᵢμᵢ)`.
    pub fn prefactor(&mut self, delta2: usize) -> Result<RatRadical, EngineError> {
        while self.prefactors.len() <= delta2 {
            let i = self.prefactors.len();
            let v = self.ladder.value(i).ok_or(EngineError::TowerExhausted {
                needed: i,
                available: i - 1,
            })?;
            let next = self.prefactors[i - 1].clone() * RatRadical::sqrt_of(&v);
            self.prefactors.push(next);
        }
        Ok(self.prefactors[delta2].clone())
    }

    pub fn power_coefficients(&mut self, k: usize, sign_mode: SignMode) -> Result<PowerResult, EngineError> {
        if let Some(r) = self.memo.get(&(k, sign_mode)) {
            self.hits += 1;
            return Ok(r.clone());
        }
        self.misses += 1;
        let result = self.compute(k, sign_mode)?;
        self.memo.insert((k, sign_mode), result.clone());
        Ok(result)
    }

    /// One level of `(A† ± A)^k ψ⁽⁰⁾`, without evaluating the others when
    /// the polynomial path applies.
    pub fn level_coefficient(&mut self, k: usize, delta2: usize, sign_mode: SignMode) -> Result<RatRadical, EngineError> {
        if delta2 > k || (k - delta2) % 2 == 1 {
            return Ok(RatRadical::zero());
        }
        let use_poly = self.cache.is_some() && self.ladder.termination_within(k).is_none();
        if !use_poly {
            return Ok(self.power_coefficients(k, sign_mode)?.get(delta2));
        }
        let j = (k - delta2) / 2;
        let cache = self.cache.as_mut().expect("polynomial mode");
        cache.extend_to(j);
        let mut nested = cache.eval(j, (k + delta2) / 2);
        if sign_mode.sign(j) < 0 {
            nested = -nested;
        }
        Ok(self.prefactor(delta2)?.scale(&nested))
    }

    fn compute(&mut self, k: usize, sign_mode: SignMode) -> Result<PowerResult, EngineError> {
        // Heights reached by level δ₂ never exceed (k+δ₂)/2 ≤ k.
        let table_needed = self.cache.is_none() || self.ladder.termination_within(k).is_some();
        let sums = if table_needed {
            if self.ladder.known_up_to() < k {
                return Err(EngineError::TowerExhausted {
                    needed: k,
                    available: self.ladder.known_up_to(),
                });
            }
            staircase_sums(k, |h| self.ladder.value(h).expect("known heights"))
        } else {
            let cache = self.cache.as_mut().expect("polynomial mode");
            cache.extend_to(k / 2);
            let cache = &*cache;
            (0..=k)
                .map(|d2| {
                    if (k - d2) % 2 == 1 {
                        return BigRational::zero();
                    }
                    cache.eval((k - d2) / 2, (k + d2) / 2)
                })
                .collect()
        };

        let mut coeffs = BTreeMap::new();
        for d2 in (k % 2..=k).step_by(2) {
            let nested = &sums[d2];
            if nested.is_zero() {
                continue;
            }
            let pre = self.prefactor(d2)?;
            if pre.is_zero() {
                continue;
            }
            let signed = if sign_mode.sign((k - d2) / 2) < 0 {
                -nested.clone()
            } else {
                nested.clone()
            };
            coeffs.insert(d2, pre.scale(&signed));
        }
        Ok(PowerResult {
            k,
            sign_mode,
            coeffs,
        })
    }
}

/// `sums[δ₂]` = Σ over paths of length `k` from 0 to `δ₂` of the product of
/// `weight(h)` over down-steps from `h`. Raising into a height with zero
/// weight is forbidden, which cuts the staircase at a finite tower's top.
pub fn staircase_sums(k: usize, weight: impl Fn(usize) -> BigRational) -> Vec<BigRational> {
    let weights: Vec<BigRational> = (0..=k).map(|h| if h == 0 { BigRational::zero() } else { weight(h) }).collect();
    let mut cur = vec![BigRational::zero(); k + 2];
    cur[0] = BigRational::one();
    for step in 0..k {
        let mut next = vec![BigRational::zero(); k + 2];
        for h in 0..=step.min(k) {
            if cur[h].is_zero() {
                continue;
            }
            if h < k && !weights[h + 1].is_zero() {
                next[h + 1] += &cur[h];
            }
            if h > 0 {
                next[h - 1] += &cur[h] * &weights[h];
            }
        }
        cur = next;
    }
    cur.truncate(k + 1);
    cur
}

/// Convenience wrapper: one-off coefficients from a ladder polynomial.
pub fn power_coefficients(lp: &LadderPolynomial, k: usize, sign_mode: SignMode) -> Result<PowerResult, EngineError> {
    DyckSumEngine::from_poly(lp.clone()).power_coefficients(k, sign_mode)
}

pub fn build_cache(lp: &LadderPolynomial, j_max: usize) -> NestedSumCache {
    NestedSumCache::build(lp.clone(), j_max)
}

/// Reference path sum by explicit enumeration; supports `δ₁ > 0`.
/// Up-steps into `h` contribute `λₕ`, down-steps from `h` contribute `μₕ`,
/// with `λₕ = μₕ = √(λₕμₕ)`.
pub fn enumeration_evaluate(
    table: &LadderTable,
    spec: PathSpec,
    sign_mode: SignMode,
) -> Result<RatRadical, EngineError> {
    if spec.is_empty() {
        return Err(DyckError::EmptySpec {
            k: spec.k,
            delta1: spec.delta1,
            delta2: spec.delta2,
        }
        .into());
    }
    let top = spec.delta1 + spec.k;
    let mut weights = vec![BigRational::zero()];
    for h in 1..=top {
        match table.get(h) {
            Some(v) => weights.push(v),
            None => {
                // Heights beyond the table are fine as long as no path needs them.
                let max_reached = (spec.k + spec.delta1 + spec.delta2) / 2;
                if h <= max_reached {
                    return Err(EngineError::TowerExhausted {
                        needed: max_reached,
                        available: table.max_p(),
                    });
                }
                break;
            }
        }
    }
    let mut total = RatRadical::zero();
    let mut crossings = vec![0usize; top + 1];
    for word in enumerate_words(spec) {
        crossings.iter_mut().for_each(|c| *c = 0);
        let mut h = spec.delta1;
        let mut lowerings = 0;
        for step in &word.steps {
            match step {
                Step::U => {
                    h += 1;
                    crossings[h] += 1;
                }
                Step::D => {
                    crossings[h] += 1;
                    h -= 1;
                    lowerings += 1;
                }
            }
        }
        let mut rational = BigRational::one();
        let mut odd = Vec::new();
        for (h, &c) in crossings.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let w = &weights[h];
            rational *= num::pow(w.clone(), c / 2);
            if c % 2 == 1 {
                odd.push(w.clone());
            }
        }
        if sign_mode.sign(lowerings) < 0 {
            rational = -rational;
        }
        let term = RatRadical::sqrt_of_product(odd.iter()).scale(&rational);
        total = total.checked_add(&term).map_err(BosonError::from)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::count_paths;
    use proptest::prelude::*;

    fn cubic_lp() -> LadderPolynomial {
        LadderPolynomial::new(Poly::from_ints(&[0, 6, -27, 27]))
    }

    fn rr_sqrt(n: i64) -> RatRadical {
        RatRadical::new(BigRational::one(), n.into())
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn cubic_table(p_max: usize) -> LadderTable {
        LadderTable::from_poly(&cubic_lp().poly, p_max)
    }

    #[test]
    fn stage_values_from_worked_examples() {
        let cache = build_cache(&cubic_lp(), 3);
        assert_eq!(cache.eval(1, 2), int(126));
        assert_eq!(cache.eval(2, 3), int(76356));
        assert_eq!(cache.eval(1, 1), int(6));
        let squeeze = build_cache(&LadderPolynomial::new(Poly::from_ints(&[0, 0, 1])), 1);
        assert_eq!(squeeze.eval(1, 1), int(1));
    }

    #[test]
    fn stage_closed_form() {
        let cache = build_cache(&cubic_lp(), 1);
        for m in 0..30i64 {
            let expect = BigRational::new((3 * m * (m + 1) * (3 * m - 2) * (3 * m + 1)).into(), 4.into());
            assert_eq!(cache.eval(1, m as usize), expect);
        }
    }

    #[test]
    fn worked_cubic_powers() {
        let mut e = DyckSumEngine::from_poly(cubic_lp());
        let k2 = e.power_coefficients(2, SignMode::Plus).unwrap();
        assert_eq!(k2.coeffs.len(), 2);
        assert_eq!(k2.get(0), RatRadical::from_int(6));
        assert_eq!(k2.get(2), rr_sqrt(720));
        assert_eq!(e.power_coefficients(3, SignMode::Plus).unwrap().get(1), rr_sqrt(6).scale(&int(126)));
        assert_eq!(e.power_coefficients(5, SignMode::Plus).unwrap().get(1), rr_sqrt(6).scale(&int(76356)));
        assert_eq!(e.power_coefficients(3, SignMode::Plus).unwrap().get(3), rr_sqrt(362880));
        let k0 = e.power_coefficients(0, SignMode::Minus).unwrap();
        assert_eq!(k0.coeffs, BTreeMap::from([(0, RatRadical::one())]));
    }

    #[test]
    fn minus_sign_follows_lowering_count() {
        let mut e = DyckSumEngine::from_poly(cubic_lp());
        for k in 0..=10 {
            let plus = e.power_coefficients(k, SignMode::Plus).unwrap();
            let minus = e.power_coefficients(k, SignMode::Minus).unwrap();
            for (d2, c) in &plus.coeffs {
                let expect = if ((k - d2) / 2) % 2 == 1 { -c } else { c.clone() };
                assert_eq!(minus.get(*d2), expect);
            }
        }
    }

    #[test]
    fn single_levels_match_full_powers() {
        let mut e = DyckSumEngine::from_poly(cubic_lp());
        let mut single = DyckSumEngine::from_poly(cubic_lp());
        for k in 0..=12 {
            let full = e.power_coefficients(k, SignMode::Minus).unwrap();
            for d2 in 0..=k + 1 {
                assert_eq!(single.level_coefficient(k, d2, SignMode::Minus).unwrap(), full.get(d2));
            }
        }
    }

    #[test]
    fn degree_law() {
        let cache = build_cache(&cubic_lp(), 12);
        for j in 0..=12 {
            assert_eq!(cache.stage(j).unwrap().degree(), 4 * j as isize);
        }
    }

    #[test]
    fn all_levels_reuse_one_cache() {
        let mut e = DyckSumEngine::from_poly(cubic_lp());
        e.power_coefficients(20, SignMode::Plus).unwrap();
        assert_eq!(e.stats().definite_sums, 10);
        e.power_coefficients(19, SignMode::Plus).unwrap();
        e.power_coefficients(18, SignMode::Minus).unwrap();
        assert_eq!(e.stats().definite_sums, 10);
        e.power_coefficients(20, SignMode::Plus).unwrap();
        assert_eq!(e.stats().memo_hits, 1);
    }

    #[test]
    fn counting_degeneration() {
        let mut e = DyckSumEngine::from_poly(LadderPolynomial::new(Poly::one()));
        for k in 0..=40 {
            let r = e.power_coefficients(k, SignMode::Plus).unwrap();
            for d2 in 0..=k {
                let expect = count_paths(PathSpec::new(k, 0, d2));
                assert_eq!(r.get(d2), RatRadical::from_int(expect), "k={k} d2={d2}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let t = cubic_table(10);
        assert_eq!(
            enumeration_evaluate(&t, PathSpec::new(2, 0, 0), SignMode::Plus).unwrap(),
            RatRadical::from_int(6)
        );
        // Independent brute force over all 2^8 step sequences.
        let lm = |h: i64| 3 * h * (3 * h - 1) * (3 * h - 2);
        let mut brute = 0i64;
        let mut paths = 0;
        for mask in 0u32..256 {
            let (mut h, mut w, mut ok) = (0i64, 1i64, true);
            for bit in 0..8 {
                if mask >> bit & 1 == 1 {
                    h += 1;
                } else {
                    w *= lm(h);
                    h -= 1;
                }
                ok &= h >= 0;
            }
            if ok && h == 0 {
                brute += w;
                paths += 1;
            }
        }
        assert_eq!(paths, 14);
        assert_eq!(
            enumeration_evaluate(&t, PathSpec::new(8, 0, 0), SignMode::Plus).unwrap(),
            RatRadical::from_int(brute)
        );
        assert!(matches!(
            enumeration_evaluate(&t, PathSpec::new(3, 0, 0), SignMode::Plus),
            Err(EngineError::Path(DyckError::EmptySpec { .. }))
        ));
    }

    #[test]
    fn engine_matches_enumeration() {
        let ladders = [
            Poly::from_ints(&[0, 6, -27, 27]),
            Poly::from_ints(&[0, 0, 1]),
            Poly::from_ints(&[0, 15, -1]),
            Poly::from_ints(&[3, -1, 2]),
        ];
        for poly in ladders {
            let table = LadderTable::new((1..=20).map(|p| poly.eval_int(p)).collect());
            let mut e = DyckSumEngine::from_poly(LadderPolynomial::new(poly.clone()));
            for k in 0..=12 {
                let r = e.power_coefficients(k, SignMode::Minus).unwrap();
                for d2 in (k % 2..=k).step_by(2) {
                    let en = enumeration_evaluate(&table, PathSpec::new(k, 0, d2), SignMode::Minus).unwrap();
                    assert_eq!(r.get(d2), en, "{poly} k={k} d2={d2}");
                }
            }
        }
    }

    #[test]
    fn finite_tower_uses_the_table() {
        // λμ = p(6-p) vanishes at p=6; tower of six states.
        let table = LadderTable::from_poly(&Poly::from_ints(&[0, 6, -1]), 30);
        assert_eq!(table.terminates_at(), Some(6));
        let mut e = DyckSumEngine::new(Ladder::from_table(table.clone()));
        for k in 0..=14 {
            let r = e.power_coefficients(k, SignMode::Plus).unwrap();
            assert!(r.coeffs.keys().all(|&d2| d2 <= 5));
            for d2 in (k % 2..=k.min(5)).step_by(2) {
                let en = enumeration_evaluate(&table, PathSpec::new(k, 0, d2), SignMode::Plus).unwrap();
                assert_eq!(r.get(d2), en, "k={k} d2={d2}");
            }
        }
    }

    #[test]
    fn polynomial_root_switches_to_the_staircase() {
        let poly = Poly::from_ints(&[0, 6, -1]);
        let table = LadderTable::from_poly(&poly, 30);
        let mut by_poly = DyckSumEngine::from_poly(LadderPolynomial::new(poly));
        let mut by_table = DyckSumEngine::new(Ladder::from_table(table));
        for k in 0..=14 {
            assert_eq!(
                by_poly.power_coefficients(k, SignMode::Minus).unwrap(),
                by_table.power_coefficients(k, SignMode::Minus).unwrap()
            );
        }
        assert_eq!(by_poly.stats().definite_sums, 2);
    }

    #[test]
    fn table_only_ladder_runs_out() {
        let mut e = DyckSumEngine::new(Ladder::from_table(cubic_table(4)));
        assert!(e.power_coefficients(4, SignMode::Plus).is_ok());
        assert_eq!(
            e.power_coefficients(6, SignMode::Plus),
            Err(EngineError::TowerExhausted { needed: 6, available: 4 })
        );
    }

    #[test]
    fn polynomial_and_table_modes_agree() {
        let lp = cubic_lp();
        let mut poly_mode = DyckSumEngine::from_poly(lp.clone());
        let mut table_mode = DyckSumEngine::new(Ladder::from_table(cubic_table(30)));
        for k in 0..=30 {
            assert_eq!(
                poly_mode.power_coefficients(k, SignMode::Plus).unwrap(),
                table_mode.power_coefficients(k, SignMode::Plus).unwrap()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_ladders_match_staircase(c0 in 0i64..5, c1 in 0i64..5, c2 in 1i64..5, k in 0usize..16) {
            let poly = Poly::from_ints(&[c0, c1, c2]);
            let mut e = DyckSumEngine::from_poly(LadderPolynomial::new(poly.clone()));
            let r = e.power_coefficients(k, SignMode::Plus).unwrap();
            let sums = staircase_sums(k, |h| poly.eval_int(h as i64));
            for d2 in (k % 2..=k).step_by(2) {
                let pre = e.prefactor(d2).unwrap();
                prop_assert_eq!(r.get(d2), pre.scale(&sums[d2]));
            }
        }
    }
}
