//! Bernoulli numbers and polynomials, and the power-sum polynomial `S_k(x)`.
//!
//! Convention: `B_k = B_k(0)`, so `B_1 = -1/2`. The harmonic-number formula
//! for `B_k` produces exactly this sign, and `B_1(1) = +1/2`.

use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_i, binomial_rat, factorial, harmonic, rat, sign_pow, ExactRat};
use crate::poly::Polynomial;
use crate::stirling::{dual_r_stirling, eval_stirling_poly, r_stirling, stirling2};

/// Bernoulli numbers `B_0, B_1, ...`, grown on demand by the recurrence
/// `Σ_{i=0..k} C(k+1, i) B_i = 0` for `k >= 1`.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    numbers: Mutex<Vec<ExactRat>>,
}

static GLOBAL_CACHE: BernoulliCache = BernoulliCache::new();

impl BernoulliCache {
    pub const fn new() -> Self {
        BernoulliCache {
            numbers: Mutex::new(Vec::new()),
        }
    }

    pub fn get(&self, k: u32) -> ExactRat {
        let mut numbers = self.numbers.lock().unwrap_or_else(|e| e.into_inner());
        if numbers.is_empty() {
            numbers.push(ExactRat::one());
        }
        while numbers.len() <= k as usize {
            let m = numbers.len() as u32;
            let sum = numbers
                .iter()
                .enumerate()
                .fold(ExactRat::zero(), |acc, (i, b)| {
                    acc + rat(binomial_i(i64::from(m) + 1, i as u32)) * b
                });
            numbers.push(-sum / rat(m + 1));
        }
        numbers[k as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.numbers.lock().map(|n| n.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `B_k` with `B_1 = -1/2`, served from a process-wide cache.
pub fn bernoulli_number(k: u32) -> ExactRat {
    GLOBAL_CACHE.get(k)
}

/// `B_k(1)`, which differs from `B_k` only at `k = 1`.
pub fn bernoulli_at_one(k: u32) -> ExactRat {
    let b = bernoulli_number(k);
    if k == 1 {
        -b
    } else {
        b
    }
}

/// `B_k(x) = Σ_{i=0..k} C(k,i) B_i x^(k-i)`.
pub fn bernoulli_poly(k: u32) -> Polynomial {
    let coeffs = (0..=k)
        .map(|d| rat(binomial_i(i64::from(k), k - d)) * bernoulli_number(k - d))
        .collect();
    Polynomial::new(coeffs)
}

/// `S_k(x) = [B_{k+1}(x+1) - B_{k+1}(1)] / (k+1)`, the degree-`(k+1)`
/// polynomial with `S_k(n) = 1^k + ... + n^k` at positive integers.
pub fn powersum_poly(k: u32) -> Polynomial {
    let b = bernoulli_poly(k + 1).shift(&ExactRat::one());
    let shifted = &b - &Polynomial::constant(bernoulli_at_one(k + 1));
    shifted.scale(&(ExactRat::one() / rat(k + 1)))
}

fn require_positive(kp1: u32) -> Result<u32> {
    kp1.checked_sub(1)
        .ok_or_else(|| Error::Domain("Bernoulli index k+1 must be at least 1".into()))
}

/// `B_{k+1}(r)` for integer `r >= 0`, through the r-Stirling numbers:
/// `B_{k+1}(1) + (k+1) Σ_j (-1)^j j! C(r+j-1, j+1) {k j}_r`.
pub fn bernoulli_at_nonneg(kp1: u32, r: u32) -> Result<ExactRat> {
    let k = require_positive(kp1)?;
    let r_i = i64::from(r);
    let sum = (0..=k).fold(num_bigint::BigInt::zero(), |acc, j| {
        acc + sign_pow(j)
            * factorial(j)
            * binomial_i(r_i + i64::from(j) - 1, j + 1)
            * r_stirling(k, j, r)
    });
    Ok(bernoulli_at_one(kp1) + rat(sum * kp1))
}

/// `B_{k+1}(-r)` for integer `r >= 0`, through the dual numbers:
/// `B_{k+1}(1) - (k+1) Σ_j j! C(r+1, j+1) {k j}_{-r}`.
pub fn bernoulli_at_negative(kp1: u32, r: u32) -> Result<ExactRat> {
    let k = require_positive(kp1)?;
    let sum = (0..=k).fold(num_bigint::BigInt::zero(), |acc, j| {
        acc + factorial(j) * binomial_i(i64::from(r) + 1, j + 1) * dual_r_stirling(k, j, r)
    });
    Ok(bernoulli_at_one(kp1) - rat(sum * kp1))
}

/// `B_{k+1}(x)` for rational `x`, with `{k j}_x = R_{k,j}(x)` and the
/// binomial `C(x+j-1, j+1)` taken as a falling-factorial polynomial.
pub fn bernoulli_general(kp1: u32, x: &ExactRat) -> Result<ExactRat> {
    let k = require_positive(kp1)?;
    let mut sum = ExactRat::zero();
    for j in 0..=k {
        let upper = x + rat(j) - ExactRat::one();
        sum += rat(sign_pow(j) * factorial(j))
            * binomial_rat(&upper, j + 1)
            * eval_stirling_poly(k, j, x)?;
    }
    Ok(bernoulli_at_one(kp1) + sum * rat(kp1))
}

/// `B_k(x-1) = Σ_{j=0..k} (-1)^j j! H_{j+1} {k j}_x`.
pub fn bernoulli_shift_harmonic(k: u32, x: &ExactRat) -> Result<ExactRat> {
    let mut sum = ExactRat::zero();
    for j in 0..=k {
        sum += rat(sign_pow(j) * factorial(j)) * harmonic(j + 1) * eval_stirling_poly(k, j, x)?;
    }
    Ok(sum)
}

/// `B_k = Σ_{j=0..k} (-1)^j j! H_{j+1} {k+1 j+1}`.
pub fn bernoulli_number_harmonic(k: u32) -> ExactRat {
    (0..=k).fold(ExactRat::zero(), |acc, j| {
        acc + rat(sign_pow(j) * factorial(j) * stirling2(k + 1, j + 1)) * harmonic(j + 1)
    })
}
