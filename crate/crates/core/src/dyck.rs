//! Generalized Dyck paths: lattice paths of `k` unit steps `U = (1, 1)` and
//! `D = (1, -1)` from height `delta1` to height `delta2` that never drop
//! below the axis.
//!
//! Words are written right-to-left: the rightmost letter is the first step.
//! [`DyckWord`] stores its steps in the order they are taken and only uses
//! the right-to-left form for display and parsing.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyckError {
    #[error("no Dyck path of length {k} runs from height {delta1} to height {delta2}")]
    EmptySpec { k: usize, delta1: usize, delta2: usize },
    #[error("invalid step letter {0:?} (expected U or D)")]
    BadLetter(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathSpec {
    pub k: usize,
    pub delta1: usize,
    pub delta2: usize,
}

impl PathSpec {
    pub fn new(k: usize, delta1: usize, delta2: usize) -> Self {
        PathSpec { k, delta1, delta2 }
    }

    /// Number of up steps, if the spec is reachable at all.
    pub fn ups(&self) -> Option<usize> {
        let total = self.k + self.delta2;
        if total < self.delta1 || (total - self.delta1) % 2 != 0 {
            return None;
        }
        let ups = (total - self.delta1) / 2;
        (ups <= self.k).then_some(ups)
    }

    pub fn downs(&self) -> Option<usize> {
        self.ups().map(|u| self.k - u)
    }

    /// True when the parity and reach conditions leave no path.
    pub fn is_empty(&self) -> bool {
        self.ups().is_none()
    }

    fn empty_error(&self) -> DyckError {
        DyckError::EmptySpec {
            k: self.k,
            delta1: self.delta1,
            delta2: self.delta2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckWord {
    /// Steps in the order they are taken.
    pub steps: Vec<Step>,
    pub start_height: usize,
}

impl DyckWord {
    pub fn new(steps: Vec<Step>, start_height: usize) -> Self {
        DyckWord {
            steps,
            start_height,
        }
    }

    /// Parses the right-to-left written form, e.g. `"DU"`.
    pub fn from_written(written: &str, start_height: usize) -> Result<Self, DyckError> {
        let steps = written
            .chars()
            .rev()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                other => Err(DyckError::BadLetter(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(DyckWord::new(steps, start_height))
    }

    /// The written (right-to-left) form.
    pub fn written(&self) -> String {
        self.steps.iter().rev().map(|s| s.letter()).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights after each step (signed, so invalid words are visible).
    pub fn heights(&self) -> Vec<i64> {
        let mut h = self.start_height as i64;
        self.steps
            .iter()
            .map(|s| {
                h += s.delta();
                h
            })
            .collect()
    }

    pub fn end_height(&self) -> i64 {
        self.start_height as i64 + self.steps.iter().map(|s| s.delta()).sum::<i64>()
    }

    pub fn is_valid(&self) -> bool {
        is_valid(self)
    }

    /// Positions `i` where steps `i, i+1` form a peak `U D` reaching height
    /// at least 2, i.e. where the swap rule `d_h u_h -> u_{h-1} d_{h-1}`
    /// applies.
    pub fn swappable_peaks(&self) -> Vec<usize> {
        let heights = self.heights();
        (0..self.steps.len().saturating_sub(1))
            .filter(|&i| {
                self.steps[i] == Step::U && self.steps[i + 1] == Step::D && heights[i] >= 2
            })
            .collect()
    }

    /// Replaces the peak at `i` by a valley one level lower.
    pub fn swap_peak(&self, i: usize) -> DyckWord {
        let mut steps = self.steps.clone();
        steps[i] = Step::D;
        steps[i + 1] = Step::U;
        DyckWord::new(steps, self.start_height)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.written())
    }
}

impl FromStr for DyckWord {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DyckWord::from_written(s, 0)
    }
}

/// Running height never drops below zero.
pub fn is_valid(word: &DyckWord) -> bool {
    word.heights().iter().all(|&h| h >= 0)
}

pub fn binomial(n: usize, r: i64) -> BigInt {
    if r < 0 || r as usize > n {
        return BigInt::zero();
    }
    let r = (r as usize).min(n - r as usize);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Ballot-problem count
/// `C(k, (k + d2 - d1)/2) - C(k, (k - d2 - d1 - 2)/2)`, zero for empty specs.
pub fn count_paths(spec: PathSpec) -> BigInt {
    let Some(ups) = spec.ups() else {
        return BigInt::zero();
    };
    let (k, d1, d2) = (spec.k as i64, spec.delta1 as i64, spec.delta2 as i64);
    // the subtracted index has the same parity as `ups`
    binomial(spec.k, ups as i64) - binomial(spec.k, (k - d2 - d1 - 2).div_euclid(2))
}

/// The word with every up step first: `D^a U^b` written.
pub fn highest_word(spec: PathSpec) -> Result<DyckWord, DyckError> {
    let (ups, downs) = match (spec.ups(), spec.downs()) {
        (Some(u), Some(d)) => (u, d),
        _ => return Err(spec.empty_error()),
    };
    let steps = std::iter::repeat_n(Step::U, ups)
        .chain(std::iter::repeat_n(Step::D, downs))
        .collect();
    Ok(DyckWord::new(steps, spec.delta1))
}

/// The pointwise lowest path: descend as far as allowed, zig-zag on the
/// floor, then climb to the end height.
pub fn lowest_word(spec: PathSpec) -> Result<DyckWord, DyckError> {
    if spec.is_empty() {
        return Err(spec.empty_error());
    }
    let (k, d1, d2) = (spec.k, spec.delta1, spec.delta2);
    let floor = if d1 + d2 >= k { (d1 + d2 - k) / 2 } else { 0 };
    let zigzags = (k + 2 * floor - d1 - d2) / 2;
    let steps = std::iter::repeat_n(Step::D, d1 - floor)
        .chain((0..zigzags).flat_map(|_| [Step::U, Step::D]))
        .chain(std::iter::repeat_n(Step::U, d2 - floor))
        .collect();
    Ok(DyckWord::new(steps, d1))
}

/// Lazily yields every valid word of `spec` in lexicographic order of the
/// taken steps (`U < D`). Empty specs yield nothing.
pub fn enumerate_words(spec: PathSpec) -> DyckWords {
    DyckWords {
        spec,
        current: None,
        done: spec.is_empty(),
    }
}

pub struct DyckWords {
    spec: PathSpec,
    current: Option<Vec<Step>>,
    done: bool,
}

impl DyckWords {
    fn feasible(&self, height: i64, remaining: usize) -> bool {
        height >= 0 && (height - self.spec.delta2 as i64).unsigned_abs() as usize <= remaining
    }

    // Greedy U-first completion of `prefix` ending at `height`.
    fn complete(&self, prefix: &mut Vec<Step>, mut height: i64) {
        while prefix.len() < self.spec.k {
            let remaining = self.spec.k - prefix.len() - 1;
            let step = if self.feasible(height + 1, remaining) {
                Step::U
            } else {
                Step::D
            };
            height += step.delta();
            prefix.push(step);
        }
    }
}

impl Iterator for DyckWords {
    type Item = DyckWord;

    fn next(&mut self) -> Option<DyckWord> {
        if self.done {
            return None;
        }
        let start = self.spec.delta1 as i64;
        let next = match self.current.take() {
            None => {
                let mut steps = Vec::with_capacity(self.spec.k);
                self.complete(&mut steps, start);
                Some(steps)
            }
            Some(mut steps) => {
                // Rightmost U that can become D, then refill greedily.
                let mut found = None;
                let mut height = start + steps.iter().map(|s| s.delta()).sum::<i64>();
                while let Some(step) = steps.pop() {
                    height -= step.delta();
                    if step == Step::U {
                        let remaining = self.spec.k - steps.len() - 1;
                        if self.feasible(height - 1, remaining) {
                            steps.push(Step::D);
                            found = Some(height - 1);
                            break;
                        }
                    }
                }
                found.map(|h| {
                    self.complete(&mut steps, h);
                    steps
                })
            }
        };
        match next {
            Some(steps) => {
                self.current = Some(steps.clone());
                Some(DyckWord::new(steps, self.spec.delta1))
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// Number of paths summed over every end height reachable from zero.
pub fn total_paths_from_ground(k: usize) -> BigInt {
    (0..=k)
        .map(|d2| count_paths(PathSpec::new(k, 0, d2)))
        .fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn catalan_by_recurrence(n: usize) -> BigInt {
        let mut c = vec![BigInt::one()];
        for m in 0..n {
            let next = (0..=m).map(|i| &c[i] * &c[m - i]).fold(BigInt::zero(), |a, b| a + b);
            c.push(next);
        }
        c[n].clone()
    }

    #[test]
    fn counts_from_figures_and_examples() {
        assert_eq!(count_paths(PathSpec::new(6, 0, 2)), 9.into());
        assert_eq!(count_paths(PathSpec::new(8, 0, 0)), 14.into());
        assert_eq!(count_paths(PathSpec::new(8, 8, 8)), 70.into());
        assert_eq!(count_paths(PathSpec::new(400, 0, 0)), catalan_by_recurrence(200));
    }

    #[test]
    fn empty_specs_count_zero() {
        assert_eq!(count_paths(PathSpec::new(5, 0, 0)), BigInt::zero());
        assert_eq!(count_paths(PathSpec::new(2, 0, 4)), BigInt::zero());
        assert_eq!(count_paths(PathSpec::new(2, 5, 1)), BigInt::zero());
        assert_eq!(count_paths(PathSpec::new(0, 0, 0)), BigInt::one());
        assert_eq!(enumerate_words(PathSpec::new(3, 0, 0)).count(), 0);
    }

    #[test]
    fn extremal_words() {
        let hi = highest_word(PathSpec::new(14, 0, 0)).unwrap();
        assert_eq!(hi.written(), "DDDDDDDUUUUUUU");
        assert_eq!(highest_word(PathSpec::new(2, 0, 2)).unwrap().written(), "UU");
        assert_eq!(highest_word(PathSpec::new(2, 0, 0)).unwrap().written(), "DU");
        assert_eq!(lowest_word(PathSpec::new(2, 0, 0)).unwrap().written(), "DU");

        let lo = lowest_word(PathSpec::new(4, 0, 2)).unwrap();
        assert_eq!(lo.written(), "UUDU");
        assert_eq!(lo.heights(), vec![1, 0, 1, 2]);

        let lo = lowest_word(PathSpec::new(3, 1, 0)).unwrap();
        assert_eq!(lo.heights()[0], 0);
        assert!(lo.is_valid());

        assert!(highest_word(PathSpec::new(3, 0, 0)).is_err());
        assert!(lowest_word(PathSpec::new(2, 0, 4)).is_err());
    }

    #[test]
    fn validity() {
        assert!(DyckWord::from_written("DU", 0).unwrap().is_valid());
        assert!(!DyckWord::from_written("UD", 0).unwrap().is_valid());
        assert!(DyckWord::from_written("DDDDDDDUUUUUUU", 0).unwrap().is_valid());
        assert!(DyckWord::from_written("UD", 1).unwrap().is_valid());
    }

    #[test]
    fn enumerate_small_cases() {
        let words: Vec<_> = enumerate_words(PathSpec::new(6, 0, 2)).collect();
        assert_eq!(words.len(), 9);
        assert!(words.iter().all(|w| w.is_valid() && w.end_height() == 2));
        assert_eq!(words.iter().collect::<HashSet<_>>().len(), 9);

        let words: Vec<_> = enumerate_words(PathSpec::new(2, 0, 0)).collect();
        assert_eq!(words, vec![DyckWord::from_written("DU", 0).unwrap()]);

        assert_eq!(enumerate_words(PathSpec::new(10, 0, 0)).count(), 42);
        assert_eq!(catalan_by_recurrence(5), 42.into());
    }

    #[test]
    fn enumeration_matches_count_for_small_specs() {
        for k in 0..=14 {
            for d1 in 0..=k + 2 {
                for d2 in 0..=k + d1 + 1 {
                    let spec = PathSpec::new(k, d1, d2);
                    let words: Vec<_> = enumerate_words(spec).collect();
                    assert_eq!(BigInt::from(words.len()), count_paths(spec), "{spec:?}");
                    if let Some(ups) = spec.ups() {
                        for w in &words {
                            assert!(w.is_valid());
                            assert_eq!(w.steps.iter().filter(|s| **s == Step::U).count(), ups);
                            assert_eq!(w.end_height(), d2 as i64);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn confined_rectangle_is_binomial() {
        for k in 0..=20 {
            for d2 in 0..=k {
                assert_eq!(
                    count_paths(PathSpec::new(k, k - d2, d2)),
                    binomial(k, d2 as i64)
                );
            }
        }
    }

    #[test]
    fn ground_totals_are_central_binomials() {
        for k in 0..=20 {
            assert_eq!(total_paths_from_ground(k), binomial(k, (k / 2) as i64));
        }
    }

    #[test]
    fn extremal_words_bound_the_enumeration() {
        for k in 0..=12 {
            for d1 in 0..=4 {
                for d2 in 0..=k + d1 {
                    let spec = PathSpec::new(k, d1, d2);
                    if spec.is_empty() {
                        continue;
                    }
                    let words: Vec<_> = enumerate_words(spec).collect();
                    let hi = highest_word(spec).unwrap();
                    let lo = lowest_word(spec).unwrap();
                    assert!(words.contains(&hi) && words.contains(&lo), "{spec:?}");
                    let (hh, lh) = (hi.heights(), lo.heights());
                    for w in &words {
                        for (i, h) in w.heights().into_iter().enumerate() {
                            assert!(lh[i] <= h && h <= hh[i], "{spec:?} {w}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swap_rule_stays_inside_the_enumeration() {
        for k in 0..=10 {
            for d2 in 0..=k {
                let spec = PathSpec::new(k, 0, d2);
                let words: HashSet<_> = enumerate_words(spec).collect();
                for w in &words {
                    for i in w.swappable_peaks() {
                        assert!(words.contains(&w.swap_peak(i)), "{w} at {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn written_form_round_trips() {
        let w: DyckWord = "DDUDUU".parse().unwrap();
        assert_eq!(w.to_string(), "DDUDUU");
        assert_eq!(w.heights(), vec![1, 2, 1, 2, 1, 0]);
        assert!(matches!("DXU".parse::<DyckWord>(), Err(DyckError::BadLetter('X'))));
    }
}
