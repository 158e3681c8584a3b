use num::{BigRational, Zero};

use super::fock::{apply_expr, FockState, FockVector};
use super::{BosonError, BosonExpr};
use crate::polynomial::Poly;

/// `products[p-1] = λₚμₚ`. A zero entry at `p` ends the tower at height
/// `p-1`, and no entries follow it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderTable {
    products: Vec<BigRational>,
}

impl LadderTable {
    pub fn new(products: Vec<BigRational>) -> Self {
        LadderTable { products }
    }

    /// Tabulates `poly` at `p = 1..=p_max`, stopping after the first zero.
    pub fn from_poly(poly: &Poly, p_max: usize) -> Self {
        let mut products = Vec::with_capacity(p_max);
        for p in 1..=p_max {
            let v = poly.eval_int(p as i64);
            let stop = v.is_zero();
            products.push(v);
            if stop {
                break;
            }
        }
        LadderTable { products }
    }

    pub fn products(&self) -> &[BigRational] {
        &self.products
    }

    pub fn max_p(&self) -> usize {
        self.products.len()
    }

    /// `λₚμₚ` for `p ≥ 1`; entries past a termination read as zero.
    pub fn get(&self, p: usize) -> Option<BigRational> {
        if p == 0 {
            return None;
        }
        match self.products.get(p - 1) {
            Some(v) => Some(v.clone()),
            None if self.terminates_at().is_some() => Some(BigRational::zero()),
            None => None,
        }
    }

    /// First `p` with `λₚμₚ = 0`.
    pub fn terminates_at(&self) -> Option<usize> {
        self.products.iter().position(Zero::is_zero).map(|i| i + 1)
    }

    /// Whether `λₚμₚ` is known for every `p ≤ p_max`.
    pub fn covers(&self, p_max: usize) -> bool {
        p_max <= self.products.len() || self.terminates_at().is_some()
    }
}

/// `λₚμₚ` as a polynomial in `p`, checked against a table up to
/// `validated_up_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderPolynomial {
    pub poly: Poly,
    pub validated_up_to: usize,
}

impl LadderPolynomial {
    /// A user-supplied polynomial, trusted without a table.
    pub fn new(poly: Poly) -> Self {
        LadderPolynomial {
            poly,
            validated_up_to: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().max(0) as usize
    }

    pub fn eval(&self, p: usize) -> BigRational {
        self.poly.eval_int(p as i64)
    }
}

pub fn check_vacuum(expr: &BosonExpr, vac: &FockState) -> bool {
    apply_expr(expr, &FockVector::unit(vac.clone()))
        .map(|v| v.is_zero())
        .unwrap_or(false)
}

fn require_vacuum(expr: &BosonExpr, vac: &FockState) -> Result<(), BosonError> {
    if check_vacuum(expr, vac) {
        Ok(())
    } else {
        Err(BosonError::NotAVacuum {
            vac: vac.to_string(),
        })
    }
}

/// Unnormalized `ψ̃⁽⁰⁾..ψ̃⁽ᵖ⁾` from repeated `A†`; shorter if the tower ends.
pub fn ladder_states(
    expr: &BosonExpr,
    vac: &FockState,
    p_max: usize,
) -> Result<Vec<FockVector>, BosonError> {
    require_vacuum(expr, vac)?;
    let raise = expr.adjoint();
    let mut states = vec![FockVector::unit(vac.clone())];
    for _ in 0..p_max {
        let next = apply_expr(&raise, states.last().expect("nonempty"))?;
        if next.is_zero() {
            break;
        }
        states.push(next);
    }
    Ok(states)
}

/// `λₚμₚ` from `A A† ψ̃⁽ᵖ⁻¹⁾ = λₚμₚ ψ̃⁽ᵖ⁻¹⁾`, for `p = 1..=p_max`.
pub fn lambda_mu_table(
    expr: &BosonExpr,
    vac: &FockState,
    p_max: usize,
) -> Result<LadderTable, BosonError> {
    require_vacuum(expr, vac)?;
    let raise = expr.adjoint();
    let mut current = FockVector::unit(vac.clone());
    let mut products = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let up = apply_expr(&raise, &current)?;
        if up.is_zero() {
            products.push(BigRational::zero());
            break;
        }
        let back = apply_expr(expr, &up)?;
        let (s0, a0) = current.first().expect("ladder states are nonzero");
        let ratio = match back.get(s0) {
            Some(b) => b.ratio(a0).ok_or(BosonError::NotProportional { p })?,
            None => BigRational::zero(),
        };
        if back != current.scale_rational(&ratio) {
            return Err(BosonError::NotProportional { p });
        }
        products.push(ratio);
        current = up;
    }
    Ok(LadderTable::new(products))
}

/// Interpolates `λₚμₚ` at `p = 1..=d+1` and checks every further entry.
pub fn lambda_mu_polynomial(table: &LadderTable, d: usize) -> Result<LadderPolynomial, BosonError> {
    let needed = d + 1;
    let entries = table.products();
    if entries.len() < needed {
        return Err(BosonError::InsufficientTower {
            degree: d,
            needed,
            available: entries.len(),
        });
    }
    let points: Vec<_> = entries[..needed]
        .iter()
        .enumerate()
        .map(|(i, v)| (BigRational::from_integer((i as i64 + 1).into()), v.clone()))
        .collect();
    let poly = Poly::interpolate(&points);
    for (i, actual) in entries.iter().enumerate().skip(needed) {
        let p = i + 1;
        let predicted = poly.eval_int(p as i64);
        if &predicted != actual {
            return Err(BosonError::InterpolationMismatch {
                p,
                predicted: predicted.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(LadderPolynomial {
        poly,
        validated_up_to: entries.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::{BosonFactor, Monomial};
    use num::BigInt;
    use proptest::prelude::*;

    fn expr(terms: &[&[BosonFactor]]) -> BosonExpr {
        BosonExpr::new(terms.iter().map(|t| Monomial::new(t.to_vec()).unwrap()).collect()).unwrap()
    }

    fn ints(t: &LadderTable) -> Vec<i64> {
        t.products()
            .iter()
            .map(|q| i64::try_from(q.to_integer()).unwrap())
            .collect()
    }

    fn cubic() -> BosonExpr {
        expr(&[&[BosonFactor::annihilate(0, 3)]])
    }

    fn swap_pair() -> BosonExpr {
        expr(&[
            &[BosonFactor::create(0, 1), BosonFactor::annihilate(2, 1)],
            &[BosonFactor::create(1, 1), BosonFactor::annihilate(3, 1)],
        ])
    }

    #[test]
    fn vacuum_checks() {
        assert!(check_vacuum(&cubic(), &FockState::vacuum()));
        assert!(check_vacuum(&cubic(), &FockState::new(vec![1])));
        assert!(!check_vacuum(&cubic(), &FockState::new(vec![3])));
        let bs = expr(&[&[BosonFactor::annihilate(0, 1), BosonFactor::create(1, 1)]]);
        assert!(check_vacuum(&bs, &FockState::new(vec![0, 5])));
        assert_eq!(
            lambda_mu_table(&cubic(), &FockState::new(vec![3]), 2),
            Err(BosonError::NotAVacuum { vac: "|3>".into() })
        );
    }

    #[test]
    fn cubic_products() {
        let t = lambda_mu_table(&cubic(), &FockState::vacuum(), 8).unwrap();
        let expect: Vec<i64> = (1..=8).map(|p| 3 * p * (3 * p - 1) * (3 * p - 2)).collect();
        assert_eq!(ints(&t), expect);
        assert_eq!(&ints(&t)[..3], &[6, 120, 504]);
        let lp = lambda_mu_polynomial(&t, 3).unwrap();
        assert_eq!(lp.poly, Poly::from_ints(&[0, 6, -27, 27]));
        assert_eq!(lp.validated_up_to, 8);
    }

    #[test]
    fn number_swapping_pair() {
        for n in [2u64, 3, 5] {
            let vac = FockState::new(vec![n, n, 0, 0]);
            let t = lambda_mu_table(&swap_pair(), &vac, 2 * n as usize + 3).unwrap();
            let n = n as i64;
            let expect: Vec<i64> = (1..=2 * n + 1).map(|p| p * (2 * n - p + 1)).collect();
            assert_eq!(ints(&t), expect);
            assert_eq!(t.terminates_at(), Some(2 * n as usize + 1));
            let lp = lambda_mu_polynomial(&t, 2).unwrap();
            assert_eq!(lp.poly, Poly::from_ints(&[0, 2 * n + 1, -1]));
        }
        let t = LadderTable::new(vec![6, 10, 12].into_iter().map(|v| BigRational::from_integer(v.into())).collect());
        assert_eq!(lambda_mu_polynomial(&t, 2).unwrap().poly, Poly::from_ints(&[0, 7, -1]));
    }

    #[test]
    fn two_mode_squeezing() {
        let sq = expr(&[&[BosonFactor::annihilate(1, 1), BosonFactor::annihilate(2, 1)]]);
        let t = lambda_mu_table(&sq, &FockState::vacuum(), 6).unwrap();
        assert_eq!(ints(&t), vec![1, 4, 9, 16, 25, 36]);
        assert_eq!(lambda_mu_polynomial(&t, 2).unwrap().poly, Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn beam_splitter_tower_is_finite() {
        let bs = expr(&[&[BosonFactor::annihilate(0, 1), BosonFactor::create(1, 1)]]);
        let states = ladder_states(&bs, &FockState::new(vec![0, 2]), 5).unwrap();
        assert_eq!(states.len(), 3);
        let cubic_states = ladder_states(&cubic(), &FockState::vacuum(), 3).unwrap();
        for (p, s) in cubic_states.iter().enumerate() {
            assert_eq!(s.len(), 1);
            assert_eq!(s.first().unwrap().0, &FockState::new(vec![3 * p as u64]));
        }
        assert_eq!(ladder_states(&cubic(), &FockState::vacuum(), 0).unwrap().len(), 1);
    }

    #[test]
    fn tower_errors() {
        let t = LadderTable::new(vec![BigRational::from_integer(1.into())]);
        assert!(matches!(
            lambda_mu_polynomial(&t, 2),
            Err(BosonError::InsufficientTower { needed: 3, .. })
        ));
        let t = LadderTable::new([1, 4, 9, 17].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect());
        assert!(matches!(
            lambda_mu_polynomial(&t, 2),
            Err(BosonError::InterpolationMismatch { p: 4, .. })
        ));
    }

    #[test]
    fn out_of_class_operator_is_not_proportional() {
        // a0 + a0 a1 mixes orders; A A† is not a scalar on its tower.
        let bad = expr(&[&[BosonFactor::annihilate(0, 1)], &[BosonFactor::annihilate(0, 1), BosonFactor::annihilate(1, 1)]]);
        assert!(matches!(
            lambda_mu_table(&bad, &FockState::vacuum(), 3),
            Err(BosonError::NotProportional { .. })
        ));
    }

    fn norm_ratio_check(e: &BosonExpr, vac: &FockState, p_max: usize) {
        let t = lambda_mu_table(e, vac, p_max).unwrap();
        let states = ladder_states(e, vac, p_max).unwrap();
        for p in 1..states.len() {
            let ratio = states[p].norm_sq() / states[p - 1].norm_sq();
            assert_eq!(t.get(p).unwrap(), ratio, "p={p}");
            assert!(t.get(p).unwrap().is_integer());
        }
    }

    #[test]
    fn products_equal_norm_ratios() {
        norm_ratio_check(&cubic(), &FockState::vacuum(), 6);
        norm_ratio_check(&swap_pair(), &FockState::new(vec![3, 3]), 8);
        let tri = expr(&[&[BosonFactor::annihilate(0, 1), BosonFactor::create(1, 1), BosonFactor::create(2, 1)]]);
        norm_ratio_check(&tri, &FockState::new(vec![0, 3, 2]), 6);
    }

    proptest! {
        #[test]
        fn interpolation_extends_past_its_nodes(c0 in -20i64..20, c1 in -20i64..20, c2 in -20i64..20, c3 in 1i64..20) {
            let poly = Poly::from_ints(&[c0, c1, c2, c3]);
            let table = LadderTable::new((1..=7).map(|p| poly.eval_int(p)).collect());
            let lp = lambda_mu_polynomial(&table, 3).unwrap();
            prop_assert_eq!(lp.poly, poly);
            prop_assert_eq!(lp.validated_up_to, 7);
        }
    }
}
