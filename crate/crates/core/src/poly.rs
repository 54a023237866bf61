//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact::{binomial_i, format_rat, rat, ExactRat};

/// Coefficients in ascending degree. Trailing zeros are always trimmed, so
/// the zero polynomial is the empty vector and derived equality is exact
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactRat>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<ExactRat>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<num_bigint::BigInt>,
    {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero(); k + 1];
        coeffs[k] = ExactRat::one();
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> ExactRat {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn leading_coeff(&self) -> ExactRat {
        self.coeffs.last().cloned().unwrap_or_else(ExactRat::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(x + c)`, expanded with the binomial theorem.
    pub fn shift(&self, c: &ExactRat) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![ExactRat::zero(); n];
        // powers[m] = c^m
        let mut powers = Vec::with_capacity(n);
        let mut pw = ExactRat::one();
        for _ in 0..n {
            powers.push(pw.clone());
            pw *= c;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (m, out_coeff) in out.iter_mut().enumerate().take(i + 1) {
                let b = rat(binomial_i(i as i64, m as u32));
                *out_coeff += a * b * &powers[i - m];
            }
        }
        Self::new(out)
    }

    /// Ascending coefficients rendered as canonical `p/q` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Descending-degree plain text, e.g. `x^2 - x + 1/6`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                f.write_str(&format_rat(&mag))?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::from_ints([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_ints([0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn shift_square_by_one() {
        let p = Polynomial::monomial(2).shift(&rat(1));
        assert_eq!(p, Polynomial::from_ints([1, 2, 1]));
        let q = Polynomial::from_ints([3, -1, 4]);
        assert_eq!(q.shift(&rat(0)), q);
    }

    #[test]
    fn shift_agrees_with_evaluation() {
        let p = Polynomial::new(vec![ratio(1, 3), rat(-2), ratio(5, 7), rat(1)]);
        let c = ratio(-3, 2);
        let shifted = p.shift(&c);
        for x in -4..=4 {
            let x = ratio(x, 3);
            assert_eq!(shifted.eval(&x), p.eval(&(&x + &c)));
        }
    }

    #[test]
    fn mul_and_additive_inverse() {
        assert_eq!(&Polynomial::x() * &Polynomial::x(), Polynomial::monomial(2));
        let p = Polynomial::new(vec![ratio(1, 2), rat(3), ratio(-2, 5)]);
        assert_eq!(&p + &p.scale(&rat(-1)), Polynomial::zero());
        assert_eq!(&p - &p, Polynomial::zero());
        assert_eq!(&p * &Polynomial::zero(), Polynomial::zero());
    }

    #[test]
    fn display_plain() {
        let p = Polynomial::new(vec![ratio(1, 6), rat(-1), rat(1)]);
        assert_eq!(p.to_string(), "x^2 - x + 1/6");
        assert_eq!(Polynomial::from_ints([0, -2]).to_string(), "-2*x");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
