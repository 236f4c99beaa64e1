//! Exact stationary distributions.
//!
//! Two solvers: Gaussian elimination over big rationals, and elimination
//! modulo word-sized primes followed by Chinese remaindering and rational
//! reconstruction. Either way the answer is accepted only after `πP = π` and
//! `Σπ = 1` have been checked in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RationalTransitionMatrix;
use crate::combinatorics::ReducedState;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    /// Rational elimination up to 120 states, modular beyond.
    #[default]
    Auto,
    Exact,
    Modular,
}

impl std::str::FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SolveMethod::Auto),
            "exact" => Ok(SolveMethod::Exact),
            "modular" => Ok(SolveMethod::Modular),
            _ => Err(Error::Parse(format!("unknown solver {s:?}"))),
        }
    }
}

/// `values[i]` is the mass of the state with factorial index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryDistribution {
    pub k: u32,
    pub values: Vec<BigRational>,
}

impl StationaryDistribution {
    pub fn get(&self, s: &ReducedState) -> &BigRational {
        &self.values[crate::combinatorics::factorial_index(s)]
    }

    /// Least common denominator of all values.
    pub fn lcd(&self) -> BigUint {
        let l = self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        l.to_biguint().expect("positive")
    }

    pub fn min(&self) -> &BigRational {
        self.values.iter().min().expect("non-empty")
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }
}

pub fn stationary(m: &RationalTransitionMatrix, method: SolveMethod) -> Result<StationaryDistribution> {
    let method = match method {
        SolveMethod::Auto if m.len() <= 120 => SolveMethod::Exact,
        SolveMethod::Auto => SolveMethod::Modular,
        other => other,
    };
    let values = match method {
        SolveMethod::Exact => solve_exact(m)?,
        _ => solve_modular(m)?,
    };
    let pi = StationaryDistribution { k: m.k, values };
    if !is_stationary(m, &pi) {
        return Err(Error::Precondition("solver output failed the exact stationarity check".into()));
    }
    Ok(pi)
}

/// `πP = π`, `Σπ = 1` and `π > 0`, all exact.
pub fn is_stationary(m: &RationalTransitionMatrix, pi: &StationaryDistribution) -> bool {
    if pi.values.len() != m.len() || !pi.total().is_one() || pi.values.iter().any(|v| !v.is_positive()) {
        return false;
    }
    let mut incoming = vec![BigRational::zero(); m.len()];
    for (from, row) in m.rows.iter().enumerate() {
        for t in row {
            incoming[t.to] += &pi.values[from] * &t.prob;
        }
    }
    incoming == pi.values
}

/// Columns of `Pᵀ - I` with the last equation replaced by `Σπ = 1`, as dense
/// rows.
fn system(m: &RationalTransitionMatrix) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for (from, row) in m.rows.iter().enumerate() {
        for t in row {
            a[t.to][from] += &t.prob;
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= BigRational::one();
    }
    a[n - 1] = vec![BigRational::one(); n];
    a
}

fn solve_exact(m: &RationalTransitionMatrix) -> Result<Vec<BigRational>> {
    let n = m.len();
    let mut a = system(m);
    let mut b = vec![BigRational::zero(); n];
    b[n - 1] = BigRational::one();
    for col in 0..n {
        // smallest non-zero numerator keeps entries short
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].numer().abs())
            .ok_or(Error::Singular { rank: col, expected: n })?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic for every `u64`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Solves the system modulo `p`; `None` when a denominator vanishes or the
/// reduced system is singular.
fn solve_mod_p(a: &[Vec<BigRational>], p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    let mut m = vec![0u64; n * (n + 1)];
    let w = n + 1;
    for (r, row) in a.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let den = to_mod(v.denom(), p);
            if den == 0 {
                return None;
            }
            m[r * w + c] = mul_mod(to_mod(v.numer(), p), pow_mod(den, p - 2, p), p);
        }
    }
    m[(n - 1) * w + n] = 1;
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for c in 0..w {
                m.swap(pivot * w + c, col * w + c);
            }
        }
        let inv = pow_mod(m[col * w + col], p - 2, p);
        for c in col..w {
            m[col * w + c] = mul_mod(m[col * w + c], inv, p);
        }
        let (head, tail) = m.split_at_mut((col + 1) * w);
        let prow = &head[col * w..];
        for r in 0..n - col - 1 {
            let row = &mut tail[r * w..(r + 1) * w];
            let f = row[col];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for c in col..w {
                if prow[c] != 0 {
                    row[c] = ((row[c] as u128 + nf as u128 * prow[c] as u128) % p as u128) as u64;
                }
            }
        }
    }
    let mut x = vec![0u64; n];
    for r in (0..n).rev() {
        let mut acc = m[r * w + n] as u128;
        for c in r + 1..n {
            acc += (p - m[r * w + c]) as u128 * x[c] as u128 % p as u128;
        }
        x[r] = (acc % p as u128) as u64;
    }
    Some(x)
}

/// Smallest `a/b ≡ x (mod m)` with `|a|, b ≤ sqrt(m/2)`.
fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Largest number of primes tried before giving up.
const MAX_PRIMES: usize = 64;

fn solve_modular(m: &RationalTransitionMatrix) -> Result<Vec<BigRational>> {
    let n = m.len();
    let a = system(m);
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); n];
    let mut used = 0;
    for p in primes() {
        let Some(x) = solve_mod_p(&a, p) else { continue };
        let pb = BigInt::from(p);
        let inv = pow_mod(to_mod(&modulus, p), p - 2, p);
        for (res, &xp) in residues.iter_mut().zip(&x) {
            let diff = (xp + p - to_mod(res, p)) % p;
            let t = mul_mod(diff, inv, p);
            *res += &modulus * BigInt::from(t);
        }
        modulus *= pb;
        used += 1;
        if used >= 2 {
            let candidate: Option<Vec<BigRational>> =
                residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
            if let Some(values) = candidate {
                let pi = StationaryDistribution { k: m.k, values };
                if is_stationary(m, &pi) {
                    return Ok(pi.values);
                }
            }
        }
        if used >= MAX_PRIMES {
            break;
        }
    }
    Err(Error::Singular { rank: 0, expected: n })
}
