//! Stirling numbers of the second kind and their shifted relatives.
//!
//! Notation used throughout the crate:
//!
//! * `{k j}` is the ordinary Stirling number of the second kind.
//! * `{k j}_r` (r ≥ 0) is the r-Stirling number in compact indexing,
//!   `(1/j!) Σ_i (-1)^(j-i) C(j,i) (i+r)^k`.
//! * `{k j}_{-r}` is its dual (the non-central Stirling number),
//!   the same sum with `(i-r)^k`.
//! * `R_{k,j}(x) = Σ_i C(k,i) {k-i j} x^i` interpolates both families:
//!   `R_{k,j}(r) = {k j}_r` and `R_{k,j}(-r) = {k j}_{-r}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_i, exact_div, factorial, int_pow, rat, sign_pow, ExactInt, ExactRat};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    Ordinary,
    /// `{k j}_r`
    RShifted(u32),
    /// `{k j}_{-r}`
    Dual(u32),
}

impl StirlingKind {
    /// The signed shift `x` such that the numbers are `R_{k,j}(x)`.
    pub fn shift(self) -> i64 {
        match self {
            StirlingKind::Ordinary => 0,
            StirlingKind::RShifted(r) => i64::from(r),
            StirlingKind::Dual(r) => -i64::from(r),
        }
    }

    pub fn value(self, k: u32, j: u32) -> ExactInt {
        match self {
            StirlingKind::Ordinary => stirling2(k, j),
            StirlingKind::RShifted(r) => r_stirling(k, j, r),
            StirlingKind::Dual(r) => dual_r_stirling(k, j, r),
        }
    }
}

/// Triangular table `entries[k][j]`, `0 <= j <= k <= max_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    entries: Vec<Vec<ExactInt>>,
}

impl StirlingTable {
    /// Fills the triangle with the triangular recurrence
    /// `{k j}_x = (j + x) {k-1 j}_x + {k-1 j-1}_x`, which shares no code
    /// with the closed-form sums.
    pub fn build(kind: StirlingKind, max_k: u32) -> Self {
        let x = BigInt::from(kind.shift());
        let mut entries: Vec<Vec<ExactInt>> = vec![vec![BigInt::one()]];
        for k in 1..=max_k as usize {
            let prev = &entries[k - 1];
            let row: Vec<ExactInt> = (0..=k)
                .map(|j| {
                    let stay = prev
                        .get(j)
                        .map(|v| (&x + j) * v)
                        .unwrap_or_else(BigInt::zero);
                    let step = if j > 0 {
                        prev[j - 1].clone()
                    } else {
                        BigInt::zero()
                    };
                    stay + step
                })
                .collect();
            entries.push(row);
        }
        StirlingTable { kind, entries }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_k(&self) -> u32 {
        (self.entries.len() - 1) as u32
    }

    /// Entry `(k, j)`; zero when `j > k`, `None` when `k > max_k`.
    pub fn get(&self, k: u32, j: u32) -> Option<ExactInt> {
        let row = self.entries.get(k as usize)?;
        Some(row.get(j as usize).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.entries
    }
}

/// Ordinary Stirling numbers via `{k j} = j {k-1 j} + {k-1 j-1}`.
pub fn stirling2(k: u32, j: u32) -> ExactInt {
    if j > k {
        return BigInt::zero();
    }
    let j = j as usize;
    // row[i] holds {m i} for the current m, truncated at column j
    let mut row = vec![BigInt::zero(); j + 1];
    row[0] = BigInt::one();
    for m in 1..=k as usize {
        for i in (0..=j.min(m)).rev() {
            let carry = if i > 0 {
                row[i - 1].clone()
            } else {
                BigInt::zero()
            };
            row[i] = &row[i] * i + carry;
        }
    }
    row[j].clone()
}

fn alternating_sum(k: u32, j: u32, shift: i64) -> ExactInt {
    if j > k {
        return BigInt::zero();
    }
    let sum = (0..=j).fold(BigInt::zero(), |acc, i| {
        let base = BigInt::from(i64::from(i) + shift);
        acc + sign_pow(j - i) * binomial_i(i64::from(j), i) * int_pow(&base, k)
    });
    exact_div(&sum, &factorial(j), "Stirling alternating sum")
}

/// `{k j}_r = (1/j!) Σ_{i=0..j} (-1)^(j-i) C(j,i) (i+r)^k`; zero for `j > k`.
pub fn r_stirling(k: u32, j: u32, r: u32) -> ExactInt {
    alternating_sum(k, j, i64::from(r))
}

/// `{k j}_{-r} = (1/j!) Σ_{i=0..j} (-1)^(j-i) C(j,i) (i-r)^k`; zero for `j > k`.
pub fn dual_r_stirling(k: u32, j: u32, r: u32) -> ExactInt {
    alternating_sum(k, j, -i64::from(r))
}

/// `R_{k,j}(x) = Σ_{i=0..k-j} C(k,i) {k-i j} x^i`.
///
/// Degree `k - j`, leading coefficient `C(k,j)`, constant term `{k j}`.
pub fn stirling_poly(k: u32, j: u32) -> Result<Polynomial> {
    if j > k {
        return Err(Error::Domain(format!(
            "R_{{k,j}} needs j <= k, got k={k}, j={j}"
        )));
    }
    let coeffs = (0..=k - j)
        .map(|i| rat(binomial_i(i64::from(k), i) * stirling2(k - i, j)))
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// `R_{k,j}(x)` at a rational point.
pub fn eval_stirling_poly(k: u32, j: u32, x: &ExactRat) -> Result<ExactRat> {
    Ok(stirling_poly(k, j)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn ordinary_examples() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(5, 2), BigInt::from(15));
        assert_eq!(stirling2(2, 5), BigInt::zero());
        assert_eq!(stirling2(4, 0), BigInt::zero());
        // alternating-sum oracle at r = 0
        assert_eq!(r_stirling(3, 2, 0), BigInt::from(3));
        assert_eq!(r_stirling(5, 2, 0), BigInt::from(15));
    }

    #[test]
    fn r_stirling_examples() {
        assert_eq!(r_stirling(3, 0, 2), BigInt::from(8));
        assert_eq!(r_stirling(2, 1, 2), BigInt::from(5));
        assert_eq!(r_stirling(2, 1, 0), BigInt::from(1));
        assert_eq!(r_stirling(2, 3, 4), BigInt::zero());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_r_stirling(2, 1, 2), BigInt::from(-3));
        assert_eq!(dual_r_stirling(4, 2, 0), BigInt::from(7));
        assert_eq!(dual_r_stirling(2, 1, 1), BigInt::from(-1));
    }

    #[test]
    fn poly_examples() {
        for k in 0..6 {
            assert_eq!(stirling_poly(k, k).unwrap(), Polynomial::constant(rat(1)));
        }
        let r21 = stirling_poly(2, 1).unwrap();
        assert_eq!(r21, Polynomial::from_ints([1, 2]));
        assert_eq!(r21.eval(&rat(2)), rat(r_stirling(2, 1, 2)));
        assert_eq!(eval_stirling_poly(3, 1, &rat(1)).unwrap(), rat(7));
        assert_eq!(eval_stirling_poly(2, 1, &rat(0)).unwrap(), rat(1));
        assert_eq!(eval_stirling_poly(2, 1, &rat(-2)).unwrap(), rat(-3));
        assert_eq!(eval_stirling_poly(2, 1, &ratio(1, 2)).unwrap(), rat(2));
        assert!(matches!(stirling_poly(2, 3), Err(Error::Domain(_))));
        assert!(eval_stirling_poly(1, 2, &rat(0)).is_err());
    }

    #[test]
    fn poly_shape() {
        for k in 0..=12 {
            for j in 0..=k {
                let p = stirling_poly(k, j).unwrap();
                assert_eq!(p.degree(), Some((k - j) as usize));
                assert_eq!(p.leading_coeff(), rat(binomial_i(k.into(), j)));
                assert_eq!(p.coeff(0), rat(stirling2(k, j)));
            }
        }
    }

    #[test]
    fn alternating_sum_matches_weighted_sum() {
        for k in 0..=12 {
            for j in 0..=k {
                for r in 0..=8u32 {
                    let weighted = (0..=k - j).fold(BigInt::zero(), |acc, i| {
                        acc + binomial_i(k.into(), i)
                            * stirling2(k - i, j)
                            * int_pow(&BigInt::from(r), i)
                    });
                    assert_eq!(r_stirling(k, j, r), weighted, "k={k} j={j} r={r}");
                    let weighted_dual = (0..=k - j).fold(BigInt::zero(), |acc, i| {
                        acc + sign_pow(i)
                            * binomial_i(k.into(), i)
                            * stirling2(k - i, j)
                            * int_pow(&BigInt::from(r), i)
                    });
                    assert_eq!(dual_r_stirling(k, j, r), weighted_dual);
                }
            }
        }
    }

    #[test]
    fn duality() {
        for k in 0..=12u32 {
            for j in 0..=k {
                for r in 0..=12u32 {
                    let lhs = dual_r_stirling(k, j, r);
                    let sign = sign_pow(k - j);
                    if r >= j {
                        assert_eq!(lhs, sign * r_stirling(k, j, r - j));
                    } else {
                        let x = rat(i64::from(r) - i64::from(j));
                        let rhs = rat(sign) * eval_stirling_poly(k, j, &x).unwrap();
                        assert_eq!(rat(lhs), rhs, "k={k} j={j} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn poly_at_zero_and_one() {
        for k in 0..=12 {
            for j in 0..=k {
                assert_eq!(
                    eval_stirling_poly(k, j, &rat(0)).unwrap(),
                    rat(stirling2(k, j))
                );
                assert_eq!(
                    eval_stirling_poly(k, j, &rat(1)).unwrap(),
                    rat(stirling2(k + 1, j + 1))
                );
            }
        }
    }

    #[test]
    fn tables_match_closed_forms() {
        for kind in [
            StirlingKind::Ordinary,
            StirlingKind::RShifted(3),
            StirlingKind::Dual(2),
            StirlingKind::Dual(5),
        ] {
            let t = StirlingTable::build(kind, 12);
            assert_eq!(t.max_k(), 12);
            for k in 0..=12 {
                assert_eq!(t.get(k, k), Some(BigInt::one()));
                assert_eq!(t.get(k, 0), Some(int_pow(&BigInt::from(kind.shift()), k)));
                for j in 0..=k + 1 {
                    assert_eq!(t.get(k, j).unwrap(), kind.value(k, j), "{kind:?} {k} {j}");
                }
            }
            assert_eq!(t.get(13, 0), None);
        }
    }
}
