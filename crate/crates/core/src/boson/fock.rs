use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use super::radical::{IncompatibleRadicals, RatRadical};
use super::{BosonExpr, BosonFactor, Monomial};

/// Occupation numbers by mode; trailing zeros are never stored, so equal
/// states compare equal regardless of how many modes were spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockState {
    occ: Vec<u64>,
}

impl FockState {
    pub fn new(mut occ: Vec<u64>) -> Self {
        while occ.last() == Some(&0) {
            occ.pop();
        }
        FockState { occ }
    }

    pub fn vacuum() -> Self {
        FockState::default()
    }

    pub fn get(&self, mode: usize) -> u64 {
        self.occ.get(mode).copied().unwrap_or(0)
    }

    pub fn occupations(&self) -> &[u64] {
        &self.occ
    }

    /// Occupations padded to at least `modes` entries.
    pub fn padded(&self, modes: usize) -> Vec<u64> {
        let mut v = self.occ.clone();
        if v.len() < modes {
            v.resize(modes, 0);
        }
        v
    }

    pub fn total_quanta(&self) -> u64 {
        self.occ.iter().sum()
    }

    pub fn max_occupation(&self) -> u64 {
        self.occ.iter().copied().max().unwrap_or(0)
    }

    fn set(&mut self, mode: usize, n: u64) {
        if mode >= self.occ.len() {
            if n == 0 {
                return;
            }
            self.occ.resize(mode + 1, 0);
        }
        self.occ[mode] = n;
        while self.occ.last() == Some(&0) {
            self.occ.pop();
        }
    }

    /// Applies one factor; `None` when it annihilates the state. The second
    /// component is the square of the amplitude picked up.
    fn apply_factor(&self, f: &BosonFactor) -> Option<(FockState, BigInt)> {
        let n = self.get(f.mode);
        let p = u64::from(f.power);
        let mut sq = BigInt::one();
        let next = if f.dagger {
            (n + 1..=n + p).for_each(|i| sq *= i);
            n + p
        } else {
            if n < p {
                return None;
            }
            (n - p + 1..=n).for_each(|i| sq *= i);
            n - p
        };
        let mut s = self.clone();
        s.set(f.mode, next);
        Some((s, sq))
    }

    /// `m|self⟩ = √sq |state⟩`, or `None` when annihilated.
    pub fn apply_monomial(&self, m: &Monomial) -> Option<(FockState, BigInt)> {
        let mut state = self.clone();
        let mut sq = BigInt::one();
        for f in m.factors().iter().rev() {
            let (s, q) = state.apply_factor(f)?;
            state = s;
            sq *= q;
        }
        Some((state, sq))
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = if self.occ.is_empty() {
            vec!["0".into()]
        } else {
            self.occ.iter().map(u64::to_string).collect()
        };
        write!(f, "|{}>", body.join(","))
    }
}

/// Sparse exact vector; zero amplitudes are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    amps: BTreeMap<FockState, RatRadical>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(state: FockState) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(state, RatRadical::one());
        FockVector { amps }
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn get(&self, s: &FockState) -> Option<&RatRadical> {
        self.amps.get(s)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, FockState, RatRadical> {
        self.amps.iter()
    }

    /// Lexicographically least basis state with its amplitude.
    pub fn first(&self) -> Option<(&FockState, &RatRadical)> {
        self.amps.iter().next()
    }

    pub fn add_term(&mut self, s: FockState, amp: RatRadical) -> Result<(), IncompatibleRadicals> {
        if amp.is_zero() {
            return Ok(());
        }
        match self.amps.entry(s) {
            btree_map::Entry::Vacant(e) => {
                e.insert(amp);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&amp)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FockVector) -> Result<FockVector, IncompatibleRadicals> {
        let mut out = self.clone();
        for (s, a) in other.iter() {
            out.add_term(s.clone(), a.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FockVector) -> Result<FockVector, IncompatibleRadicals> {
        self.checked_add(&other.scale_rational(&-BigRational::one()))
    }

    pub fn scale(&self, c: &RatRadical) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            amps: self.amps.iter().map(|(s, a)| (s.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> FockVector {
        if q.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            amps: self.amps.iter().map(|(s, a)| (s.clone(), a.scale(q))).collect(),
        }
    }

    /// `⟨self, other⟩` for real amplitudes.
    pub fn inner(&self, other: &FockVector) -> Result<RatRadical, IncompatibleRadicals> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = RatRadical::zero();
        for (s, a) in small.iter() {
            if let Some(b) = large.get(s) {
                acc = acc.checked_add(&(a * b))?;
            }
        }
        Ok(acc)
    }

    /// `⟨self, self⟩`, always rational.
    pub fn norm_sq(&self) -> BigRational {
        self.amps
            .values()
            .fold(BigRational::zero(), |acc, a| acc + a.square())
    }

    pub fn max_total_quanta(&self) -> u64 {
        self.amps.keys().map(FockState::total_quanta).max().unwrap_or(0)
    }

    pub fn max_occupation(&self) -> u64 {
        self.amps.keys().map(FockState::max_occupation).max().unwrap_or(0)
    }
}

impl FromIterator<(FockState, RatRadical)> for FockVector {
    /// Panics if two amplitudes on one state are incommensurable.
    fn from_iter<I: IntoIterator<Item = (FockState, RatRadical)>>(iter: I) -> Self {
        let mut v = FockVector::zero();
        for (s, a) in iter {
            v.add_term(s, a).expect("commensurable amplitudes");
        }
        v
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (s, a)) in self.amps.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a}){s}")?;
        }
        Ok(())
    }
}

pub fn apply_monomial(m: &Monomial, v: &FockVector) -> FockVector {
    // A monomial shifts every basis state by the same occupation vector, so
    // images never collide.
    let mut out = BTreeMap::new();
    for (s, a) in v.iter() {
        if let Some((t, sq)) = s.apply_monomial(m) {
            let factor = RatRadical::new(BigRational::one(), sq);
            out.insert(t, a * &factor);
        }
    }
    FockVector { amps: out }
}

pub fn apply_expr(expr: &BosonExpr, v: &FockVector) -> Result<FockVector, IncompatibleRadicals> {
    let mut terms = expr.terms().iter();
    let mut acc = apply_monomial(terms.next().expect("nonempty expression"), v);
    for m in terms {
        acc = acc.checked_add(&apply_monomial(m, v))?;
    }
    Ok(acc)
}
