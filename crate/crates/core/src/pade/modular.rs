//! Exact solution of integer linear systems by elimination modulo many
//! 62-bit primes and Chinese remaindering (Garner's algorithm).
//!
//! For `A x = b` with integer entries the solver returns `det A` and the
//! Cramer numerators `y_j = det(A_j)`, so that `x_j = y_j / det A`. Enough
//! primes are used to exceed twice the Hadamard bound of `[A | b]`.

use std::sync::OnceLock;

use num::bigint::Sign;
use num::{BigInt, BigUint, One, Zero};

use crate::numeric::bigint_parts;

/// Arithmetic modulo an odd `p < 2^63` in Montgomery form, `R = 2^64`.
#[derive(Debug, Clone, Copy)]
pub struct Mont {
    pub p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Mont {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 63);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// `a · b · R⁻¹ mod p`.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    /// Montgomery-form power.
    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Montgomery-form inverse of a nonzero Montgomery-form value.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const PRIME_TOP: u64 = (1 << 62) - 1;

/// The first `count` primes below `2^62`, descending. Cached.
pub fn primes(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<std::sync::Mutex<Vec<u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    let mut list = cache.lock().expect("prime cache");
    let mut candidate = list.last().map_or(PRIME_TOP, |&p| p - 2);
    while list.len() < count {
        if is_prime_u64(candidate) {
            list.push(candidate);
        }
        candidate -= 2;
    }
    list[..count].to_vec()
}

/// An integer value prepared for fast reduction modulo word-sized primes.
#[derive(Debug, Clone)]
struct Limbs {
    negative: bool,
    digits: Vec<u64>,
}

impl Limbs {
    fn new(n: &BigInt) -> Self {
        Limbs {
            negative: n.sign() == Sign::Minus,
            digits: n.magnitude().to_u64_digits(),
        }
    }

    fn reduce(&self, p: u64) -> u64 {
        let r = self
            .digits
            .iter()
            .rev()
            .fold(0u64, |r, &d| ((((r as u128) << 64) | d as u128) % p as u128) as u64);
        if self.negative && r != 0 {
            p - r
        } else {
            r
        }
    }
}

/// A dense system whose entries are drawn from a shared pool of integers.
/// Pool indices let Toeplitz and Hankel systems reduce each distinct value
/// once per prime.
#[derive(Debug, Clone)]
pub struct PooledSystem {
    pub pool: Vec<BigInt>,
    /// `n × n` pool indices.
    pub matrix: Vec<Vec<usize>>,
    /// `n` pool indices.
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    pub det: BigInt,
    /// Cramer numerators: `x_j = numerators[j] / det`.
    pub numerators: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModularOutcome {
    Solved(IntegerSolution),
    /// The determinant vanished modulo every probe prime; `rank` is the
    /// largest rank seen.
    Singular { rank: usize },
}

/// Elimination mod one prime on Montgomery-form entries. Returns
/// `(det, det·x)` in standard form, or the rank when singular mod `p`.
fn solve_mod(system: &PooledSystem, reduced: &[u64], mont: &Mont) -> Result<(u64, Vec<u64>), usize> {
    let n = system.rhs.len();
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = system.matrix[i].iter().map(|&ix| reduced[ix]).collect();
            row.push(reduced[system.rhs[i]]);
            row
        })
        .collect();
    let mut det = mont.to_mont(1);
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        if pr != rank {
            rows.swap(pr, rank);
            det = mont.sub(0, det);
        }
        let piv = rows[rank][col];
        det = mont.mul(det, piv);
        let inv = mont.inv(piv);
        let pivot_row: Vec<u64> = rows[rank][col..].iter().map(|&v| mont.mul(v, inv)).collect();
        rows[rank][col..].copy_from_slice(&pivot_row);
        for r in 0..n {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let f = rows[r][col];
            let row = &mut rows[r];
            for (c, &pv) in (col..=n).zip(pivot_row.iter()) {
                row[c] = mont.sub(row[c], mont.mul(f, pv));
            }
        }
        rank += 1;
    }
    if rank < n {
        return Err(rank);
    }
    // Reduced row echelon: row i holds x_i in the last column.
    let det_std = mont.from_mont(det);
    let y = (0..n)
        .map(|i| mont.from_mont(mont.mul(rows[i][n], det)))
        .collect();
    Ok((det_std, y))
}

fn log2_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = bigint_parts(n);
    m.abs().log2() + e as f64
}

/// `log2` of the Hadamard bound of `[A | b]` by rows.
pub fn hadamard_log2(system: &PooledSystem) -> f64 {
    let logs: Vec<f64> = system.pool.iter().map(log2_abs).collect();
    system
        .matrix
        .iter()
        .zip(&system.rhs)
        .map(|(row, &b)| {
            let entries: Vec<f64> = row.iter().chain(std::iter::once(&b)).map(|&i| logs[i]).collect();
            let top = entries.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if top == f64::NEG_INFINITY {
                return 0.0;
            }
            let sum: f64 = entries.iter().map(|&l| (2.0 * (l - top)).exp2()).sum();
            top + 0.5 * sum.log2()
        })
        .sum()
}

const SINGULAR_PROBES: usize = 3;

/// Solves the system exactly. The determinant is declared zero only after
/// it vanishes modulo `SINGULAR_PROBES` distinct 62-bit primes.
pub fn solve(system: &PooledSystem) -> ModularOutcome {
    let n = system.rhs.len();
    if n == 0 {
        return ModularOutcome::Solved(IntegerSolution {
            det: BigInt::one(),
            numerators: Vec::new(),
        });
    }
    let pool: Vec<Limbs> = system.pool.iter().map(Limbs::new).collect();
    let needed_bits = hadamard_log2(system) + 4.0;
    // Each prime contributes just under 62 bits.
    let target = (needed_bits / 61.0).ceil() as usize + 1;

    let mut moduli = Vec::with_capacity(target);
    let mut residues: Vec<Vec<u64>> = vec![Vec::with_capacity(target); n + 1];
    let mut max_rank = 0;
    let mut failures = 0;
    let mut offset = 0;
    while moduli.len() < target {
        let batch = primes(offset + target - moduli.len() + SINGULAR_PROBES);
        for &p in &batch[offset..] {
            if moduli.len() >= target {
                break;
            }
            offset += 1;
            let mont = Mont::new(p);
            let reduced: Vec<u64> = pool.iter().map(|l| mont.to_mont(l.reduce(p))).collect();
            match solve_mod(system, &reduced, &mont) {
                Ok((det, y)) => {
                    moduli.push(p);
                    residues[0].push(det);
                    for (j, v) in y.into_iter().enumerate() {
                        residues[j + 1].push(v);
                    }
                }
                Err(rank) => {
                    max_rank = max_rank.max(rank);
                    failures += 1;
                    if moduli.is_empty() && failures >= SINGULAR_PROBES {
                        return ModularOutcome::Singular { rank: max_rank };
                    }
                }
            }
        }
    }

    let mut values = garner(&moduli, &residues).into_iter();
    let det = values.next().expect("determinant");
    ModularOutcome::Solved(IntegerSolution {
        det,
        numerators: values.collect(),
    })
}

/// Reconstructs each residue vector to the symmetric range of `∏ moduli`.
pub fn garner(moduli: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    let n = moduli.len();
    let v = residues.len();
    // digits[value][j]: mixed-radix digits.
    let mut digits = vec![vec![0u64; n]; v];
    for j in 0..n {
        let mj = moduli[j];
        let mont = Mont::new(mj);
        let mut acc = vec![0u64; v];
        let mut prod = mont.to_mont(1);
        for i in 0..j {
            let mi = moduli[i];
            let mi_red = if mi >= mj { mi - mj } else { mi };
            for (a, d) in acc.iter_mut().zip(digits.iter()) {
                let di = d[i];
                let di = if di >= mj { di - mj } else { di };
                *a = mont.add(*a, mont.mul(di, prod));
            }
            prod = mont.mul(prod, mont.to_mont(mi_red));
        }
        let inv = mont.from_mont(mont.inv(prod));
        let inv_m = mont.to_mont(inv);
        for (val, d) in digits.iter_mut().enumerate() {
            let r = residues[val][j];
            d[j] = mont.mul(mont.sub(r, acc[val]), inv_m);
        }
    }
    let modulus: BigUint = moduli.iter().fold(BigUint::one(), |m, &p| m * p);
    let half = &modulus >> 1usize;
    digits
        .into_iter()
        .map(|d| {
            let mut x = BigUint::zero();
            for j in (0..n).rev() {
                x *= moduli[j];
                x += d[j];
            }
            if x > half {
                BigInt::from_biguint(Sign::Minus, &modulus - x)
            } else {
                BigInt::from(x)
            }
        })
        .collect()
}
