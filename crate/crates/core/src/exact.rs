//! Exact integer and rational scalars shared by every other module.
//!
//! `ExactInt` is a plain [`BigInt`] and `ExactRat` a [`BigRational`]; the
//! latter reduces on every construction and operation, so two rationals are
//! equal exactly when their canonical `(numerator, denominator)` pairs are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// Lifts an integer into the rationals.
pub fn rat(n: impl Into<BigInt>) -> ExactRat {
    BigRational::from_integer(n.into())
}

/// Builds `num/den` in canonical form. Panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRat {
    BigRational::new(num.into(), den.into())
}

/// `(-1)^e` as an integer.
pub fn sign_pow(e: u32) -> ExactInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Divides `num` by `den`, panicking if the division leaves a remainder.
///
/// Every caller divides a quantity that is an integer by construction; a
/// nonzero remainder means the surrounding computation is wrong.
pub fn exact_div(num: &ExactInt, den: &ExactInt, what: &str) -> ExactInt {
    let (q, r) = num.div_rem(den);
    assert!(
        r.is_zero(),
        "internal consistency: {what}: {num} is not divisible by {den}"
    );
    q
}

pub fn factorial(k: u32) -> ExactInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Falling factorial `x (x-1) ... (x-k+1)` over the integers.
pub fn falling_factorial(x: &ExactInt, k: u32) -> ExactInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// Generalized binomial coefficient with an arbitrary integer upper index.
///
/// Computed as the falling factorial divided by `k!`, so negative upper
/// indices follow `C(-x, k) = (-1)^k C(x+k-1, k)` without a separate branch.
/// For `n >= 0` and `k > n` the product contains a zero factor.
pub fn binomial(n: &ExactInt, k: u32) -> ExactInt {
    exact_div(&falling_factorial(n, k), &factorial(k), "binomial")
}

/// Convenience wrapper over [`binomial`] for machine-sized upper indices.
pub fn binomial_i(n: i64, k: u32) -> ExactInt {
    binomial(&BigInt::from(n), k)
}

/// Binomial coefficient with a rational upper argument, `x^(k falling) / k!`.
pub fn binomial_rat(x: &ExactRat, k: u32) -> ExactRat {
    let num = (0..k).fold(ExactRat::one(), |acc, i| acc * (x - rat(i)));
    num / rat(factorial(k))
}

/// Harmonic number `H_j = 1 + 1/2 + ... + 1/j`, with `H_0 = 0`.
pub fn harmonic(j: u32) -> ExactRat {
    (1..=j).fold(ExactRat::zero(), |acc, i| acc + ratio(1, i))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rat(x: &ExactRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or a terminating decimal such as `-1.25` exactly.
pub fn parse_rat(s: &str) -> Option<ExactRat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{}{}", whole_digits, frac).parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(digits, scale);
        return Some(if negative { -value } else { value });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Integer `r^k` for a signed base, `0^0 = 1`.
pub fn int_pow(base: &ExactInt, k: u32) -> ExactInt {
    num_traits::pow(base.clone(), k as usize)
}

/// True when `x` is a nonnegative integer that fits the caller's bound.
pub fn as_small_nonneg(x: &ExactRat) -> Option<u32> {
    if x.is_integer() && !x.is_negative() {
        u32::try_from(x.numer()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(1), BigInt::one());
        let oracle: u64 = (1..=6).product();
        assert_eq!(oracle, 720);
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(pascal_row(5)[2], BigInt::from(10));
        assert_eq!(binomial_i(5, 2), BigInt::from(10));
        assert_eq!(binomial_i(3, 5), BigInt::zero());
        assert_eq!(binomial_i(-3, 2), BigInt::from(6));
        assert_eq!(binomial_i(-3, 2), binomial_i(4, 2));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for n in 0..=25 {
            let row = pascal_row(n);
            for k in 0..=30u32 {
                let expected = row.get(k as usize).cloned().unwrap_or_default();
                assert_eq!(binomial_i(n as i64, k), expected, "C({n},{k})");
            }
        }
    }

    #[test]
    fn negative_upper_index_relation() {
        for x in 1..=20i64 {
            for k in 0..=20u32 {
                let lhs = binomial_i(-x, k);
                let rhs = sign_pow(k) * binomial_i(x + k as i64 - 1, k);
                assert_eq!(lhs, rhs, "x={x} k={k}");
            }
        }
    }

    #[test]
    fn pascal_rule_over_signed_upper_index() {
        for n in -20..=20i64 {
            for k in 1..=20u32 {
                assert_eq!(
                    binomial_i(n, k),
                    binomial_i(n - 1, k - 1) + binomial_i(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn rational_binomial_agrees_on_integers() {
        for n in -10..=10i64 {
            for k in 0..=8 {
                assert_eq!(binomial_rat(&rat(n), k), rat(binomial_i(n, k)));
            }
        }
        // C(1/2, 2) = (1/2)(-1/2)/2
        assert_eq!(binomial_rat(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn harmonic_values() {
        let direct = |j: u32| {
            let mut num = 0u64;
            let den: u64 = (1..=j as u64).product();
            for i in 1..=j as u64 {
                num += den / i;
            }
            ratio(num, den)
        };
        assert_eq!(harmonic(0), ExactRat::zero());
        assert_eq!(direct(2), ratio(3, 2));
        assert_eq!(direct(3), ratio(11, 6));
        assert_eq!(harmonic(2), ratio(3, 2));
        assert_eq!(harmonic(3), ratio(11, 6));
        for j in 1..=50 {
            assert_eq!(harmonic(j) - harmonic(j - 1), ratio(1, j));
        }
    }

    #[test]
    fn rationals_are_canonical() {
        let a = ratio(6, -4);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(format_rat(&ratio(0, -5)), "0");
        assert!(!(-BigInt::zero()).is_negative());
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse_rat("-7/14"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("-1.25"), Some(ratio(-5, 4)));
        assert_eq!(parse_rat("0.5"), Some(ratio(1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(parse_rat("1."), None);
    }

    #[test]
    #[should_panic(expected = "internal consistency")]
    fn inexact_division_aborts() {
        exact_div(&BigInt::from(7), &BigInt::from(2), "test");
    }
}
