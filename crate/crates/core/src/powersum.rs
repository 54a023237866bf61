//! Closed forms for `S_k(n) = 1^k + 2^k + ... + n^k`.
//!
//! Each formula is a direct transcription of its defining sum; none of them
//! calls another, so agreement between them is a real check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_i, factorial, harmonic, int_pow, rat, sign_pow, ExactInt, ExactRat};
use crate::stirling::{dual_r_stirling, r_stirling, stirling2};

/// Names a formula for `S_k(n)`; parameterized variants carry their `r` or `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    Brute,
    F1,
    F2,
    Th1(u32),
    Th2(u32),
    Reqn,
    Reqn1,
    NegN,
    Con1(u32),
    Con2(u32),
    Con3,
    Harmonic,
}

impl FormulaId {
    pub const NAMES: [&'static str; 12] = [
        "brute", "f1", "f2", "th1", "th2", "reqn", "reqn1", "negn", "con1", "con2", "con3",
        "harmonic",
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Brute => "brute",
            FormulaId::F1 => "f1",
            FormulaId::F2 => "f2",
            FormulaId::Th1(_) => "th1",
            FormulaId::Th2(_) => "th2",
            FormulaId::Reqn => "reqn",
            FormulaId::Reqn1 => "reqn1",
            FormulaId::NegN => "negn",
            FormulaId::Con1(_) => "con1",
            FormulaId::Con2(_) => "con2",
            FormulaId::Con3 => "con3",
            FormulaId::Harmonic => "harmonic",
        }
    }

    /// Builds an id from its name and optional `r`/`m` parameter.
    pub fn from_parts(name: &str, r: Option<u32>, m: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, flag: &str| {
            v.ok_or_else(|| Error::Domain(format!("formula {name} requires --{flag}")))
        };
        Ok(match name {
            "brute" => FormulaId::Brute,
            "f1" => FormulaId::F1,
            "f2" => FormulaId::F2,
            "th1" => FormulaId::Th1(need(r, "r")?),
            "th2" => FormulaId::Th2(need(r, "r")?),
            "reqn" => FormulaId::Reqn,
            "reqn1" => FormulaId::Reqn1,
            "negn" => FormulaId::NegN,
            "con1" => FormulaId::Con1(need(m, "m")?),
            "con2" => FormulaId::Con2(need(m, "m")?),
            "con3" => FormulaId::Con3,
            "harmonic" => FormulaId::Harmonic,
            other => return Err(Error::Domain(format!("unknown formula '{other}'"))),
        })
    }

    /// `S_k(n)` by this formula.
    pub fn evaluate(self, k: u32, n: u32) -> Result<ExactInt> {
        Ok(match self {
            FormulaId::Brute => powersum_brute(k, n),
            FormulaId::F1 => powersum_f1(k, n),
            FormulaId::F2 => powersum_f2(k, n),
            FormulaId::Th1(r) => powersum_th1(k, n, r),
            FormulaId::Th2(r) => powersum_th2(k, n, r),
            FormulaId::Reqn | FormulaId::Reqn1 | FormulaId::NegN => powersum_special(k, n, self)?,
            FormulaId::Con1(m) => powersum_con1(k, n, m),
            FormulaId::Con2(m) => powersum_con2(k, n, m)?,
            FormulaId::Con3 => powersum_con3(k, n),
            FormulaId::Harmonic => powersum_harmonic(k + 1, n)?,
        })
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaId::Th1(r) | FormulaId::Th2(r) => write!(f, "{}(r={r})", self.name()),
            FormulaId::Con1(m) | FormulaId::Con2(m) => write!(f, "{}(m={m})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

/// Parses `name`, `name(r=3)`, or `name(m=2)`.
impl FromStr for FormulaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((name, rest)) = s.split_once('(') else {
            return FormulaId::from_parts(s, None, None);
        };
        let arg = rest
            .strip_suffix(')')
            .and_then(|a| a.split_once('='))
            .ok_or_else(|| Error::Domain(format!("malformed formula '{s}'")))?;
        let value: u32 = arg
            .1
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("malformed parameter in '{s}'")))?;
        match arg.0.trim() {
            "r" => FormulaId::from_parts(name, Some(value), None),
            "m" => FormulaId::from_parts(name, None, Some(value)),
            other => Err(Error::Domain(format!("unknown parameter '{other}'"))),
        }
    }
}

fn kronecker0(k: u32) -> ExactInt {
    if k == 0 {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn c(n: i64, k: u32) -> ExactInt {
    binomial_i(n, k)
}

/// The oracle: `Σ_{i=1..n} i^k`.
pub fn powersum_brute(k: u32, n: u32) -> ExactInt {
    (1..=n).fold(BigInt::zero(), |acc, i| acc + int_pow(&BigInt::from(i), k))
}

/// `-δ_{k,0} + Σ_j j! C(n+1, j+1) {k j}`.
pub fn powersum_f1(k: u32, n: u32) -> ExactInt {
    let n = i64::from(n);
    (0..=k).fold(-kronecker0(k), |acc, j| {
        acc + factorial(j) * c(n + 1, j + 1) * stirling2(k, j)
    })
}

/// Coefficients `j! {k+1 j+1}` of `C(n, j+1)` in the second classical form.
pub fn f2_coefficients(k: u32) -> Vec<ExactInt> {
    (0..=k)
        .map(|j| factorial(j) * stirling2(k + 1, j + 1))
        .collect()
}

/// `Σ_j j! C(n, j+1) {k+1 j+1}`.
pub fn powersum_f2(k: u32, n: u32) -> ExactInt {
    let n = i64::from(n);
    (0..=k).fold(BigInt::zero(), |acc, j| {
        acc + factorial(j) * c(n, j + 1) * stirling2(k + 1, j + 1)
    })
}

/// `Σ_j j! [C(n+1-r, j+1) + (-1)^j C(r+j-1, j+1)] {k j}_r`, any `r >= 0`.
pub fn powersum_th1(k: u32, n: u32, r: u32) -> ExactInt {
    let (n, ri) = (i64::from(n), i64::from(r));
    (0..=k).fold(BigInt::zero(), |acc, j| {
        let ji = i64::from(j);
        let bracket = c(n + 1 - ri, j + 1) + sign_pow(j) * c(ri + ji - 1, j + 1);
        acc + factorial(j) * bracket * r_stirling(k, j, r)
    })
}

/// `Σ_j j! [C(n+1+r, j+1) - C(r+1, j+1)] {k j}_{-r}`, any `r >= 0`.
pub fn powersum_th2(k: u32, n: u32, r: u32) -> ExactInt {
    let (n, ri) = (i64::from(n), i64::from(r));
    (0..=k).fold(BigInt::zero(), |acc, j| {
        let bracket = c(n + 1 + ri, j + 1) - c(ri + 1, j + 1);
        acc + factorial(j) * bracket * dual_r_stirling(k, j, r)
    })
}

/// The three `r`-free specializations: `Reqn` (shift `n`), `Reqn1`
/// (shift `n+1`) and `NegN` (dual shift `-n`).
pub fn powersum_special(k: u32, n: u32, id: FormulaId) -> Result<ExactInt> {
    let ni = i64::from(n);
    Ok(match id {
        FormulaId::Reqn => (1..=k).fold(int_pow(&BigInt::from(n), k + 1), |acc, j| {
            let ji = i64::from(j);
            acc + sign_pow(j) * factorial(j) * c(ni + ji - 1, j + 1) * r_stirling(k, j, n)
        }),
        FormulaId::Reqn1 => (0..=k).fold(BigInt::zero(), |acc, j| {
            let ji = i64::from(j);
            acc + sign_pow(j) * factorial(j) * c(ni + ji, j + 1) * r_stirling(k, j, n + 1)
        }),
        FormulaId::NegN => {
            let inner = (0..=k).fold(-kronecker0(k), |acc, j| {
                acc + factorial(j) * c(ni + 1, j + 1) * dual_r_stirling(k, j, n)
            });
            sign_pow(k) * inner
        }
        other => {
            return Err(Error::Domain(format!(
                "{other} is not one of reqn, reqn1, negn"
            )))
        }
    })
}

/// `Σ_j (-1)^j j! [C(n+m+j-1, j+1) - C(m+j-1, j+1)] {k j}_{n+m}`.
pub fn powersum_con1(k: u32, n: u32, m: u32) -> ExactInt {
    let (ni, mi) = (i64::from(n), i64::from(m));
    (0..=k).fold(BigInt::zero(), |acc, j| {
        let ji = i64::from(j);
        let bracket = c(ni + mi + ji - 1, j + 1) - c(mi + ji - 1, j + 1);
        acc + sign_pow(j) * factorial(j) * bracket * r_stirling(k, j, n + m)
    })
}

/// `Σ_j j! [C(m+1, j+1) + (-1)^j C(n+j-m-1, j+1)] {k j}_{n-m}`, `m <= n`.
pub fn powersum_con2(k: u32, n: u32, m: u32) -> Result<ExactInt> {
    if m > n {
        return Err(Error::Domain(format!(
            "con2 needs m <= n so that the shift n-m is nonnegative (n={n}, m={m})"
        )));
    }
    let (ni, mi) = (i64::from(n), i64::from(m));
    Ok((0..=k).fold(BigInt::zero(), |acc, j| {
        let ji = i64::from(j);
        let bracket = c(mi + 1, j + 1) + sign_pow(j) * c(ni + ji - mi - 1, j + 1);
        acc + factorial(j) * bracket * r_stirling(k, j, n - m)
    }))
}

/// `Σ_j (-1)^(k-j) j! [C(n+k+1, j+1) - C(k+1, j+1)] {k j}_{k-j}`.
pub fn powersum_con3(k: u32, n: u32) -> ExactInt {
    let (ni, ki) = (i64::from(n), i64::from(k));
    (0..=k).fold(BigInt::zero(), |acc, j| {
        let bracket = c(ni + ki + 1, j + 1) - c(ki + 1, j + 1);
        acc + sign_pow(k - j) * factorial(j) * bracket * r_stirling(k, j, k - j)
    })
}

/// `Σ_j (-1)^(k-j) j! C(k+1, j) {k j}_{k-j}`, which equals 1 for every `k`.
pub fn con3_unit_identity(k: u32) -> ExactInt {
    (0..=k).fold(BigInt::zero(), |acc, j| {
        acc + sign_pow(k - j) * factorial(j) * c(i64::from(k) + 1, j) * r_stirling(k, j, k - j)
    })
}

/// `S_{k-1}(n) = (1/k) Σ_{j=0..k} (-1)^j j! H_{j+1} ({k j}_{n+2} - {k j}_2)`.
///
/// Note the index shift: this returns the power sum of exponent `k - 1`.
/// The sum is rational; dividing by `k` must leave an integer.
pub fn powersum_harmonic(k: u32, n: u32) -> Result<ExactInt> {
    if k == 0 {
        return Err(Error::Domain("harmonic formula needs k >= 1".into()));
    }
    let sum = (0..=k).fold(ExactRat::zero(), |acc, j| {
        let diff = r_stirling(k, j, n + 2) - r_stirling(k, j, 2);
        acc + rat(sign_pow(j) * factorial(j) * diff) * harmonic(j + 1)
    });
    let value = sum / rat(k);
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Internal(format!(
            "harmonic formula produced non-integer {value} for k={k}, n={n}"
        )))
    }
}

/// `S_k(r-1) = Σ_j (-1)^j j! C(r+j-1, j+1) {k j}_r`, so `S_0(-1) = -1` and
/// `S_k(-1) = 0` for `k >= 1` at `r = 0`.
pub fn powersum_r_minus1(k: u32, r: u32) -> ExactInt {
    let ri = i64::from(r);
    (0..=k).fold(BigInt::zero(), |acc, j| {
        let ji = i64::from(j);
        acc + sign_pow(j) * factorial(j) * c(ri + ji - 1, j + 1) * r_stirling(k, j, r)
    })
}

/// `S_k(n) = constant + Σ_j coeffs[j] · C(n + offset, j + 1)` with
/// `offset = 1 - r`, `constant = S_k(r-1)` and `coeffs[j] = j! {k j}_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialExpansion {
    pub k: u32,
    pub r: u32,
    #[serde(serialize_with = "ser_int")]
    pub constant: ExactInt,
    #[serde(serialize_with = "ser_ints")]
    pub coeffs: Vec<ExactInt>,
    pub offset: i64,
}

fn ser_int<S: serde::Serializer>(v: &ExactInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_ints<S: serde::Serializer>(v: &[ExactInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn expand_binomial_basis(k: u32, r: u32) -> BinomialExpansion {
    BinomialExpansion {
        k,
        r,
        constant: powersum_r_minus1(k, r),
        coeffs: (0..=k)
            .map(|j| factorial(j) * r_stirling(k, j, r))
            .collect(),
        offset: 1 - i64::from(r),
    }
}

impl BinomialExpansion {
    /// Pairs of `(coefficient, offset)` for the basis `C(n + offset, j + 1)`.
    pub fn terms(&self) -> Vec<(ExactInt, i64)> {
        self.coeffs
            .iter()
            .map(|c| (c.clone(), self.offset))
            .collect()
    }

    pub fn evaluate(&self, n: u32) -> ExactInt {
        let upper = i64::from(n) + self.offset;
        self.coeffs
            .iter()
            .enumerate()
            .fold(self.constant.clone(), |acc, (j, coeff)| {
                acc + coeff * c(upper, j as u32 + 1)
            })
    }

    fn upper(&self) -> String {
        match self.offset {
            0 => "n".to_string(),
            o if o > 0 => format!("n+{o}"),
            o => format!("n-{}", -o),
        }
    }

    /// `S_3(n) = 1*C(n,1) + 7*C(n,2) + 12*C(n,3) + 6*C(n,4)`; zero terms are
    /// dropped.
    pub fn to_plain(&self) -> String {
        let upper = self.upper();
        let mut parts = Vec::new();
        if !self.constant.is_zero() {
            parts.push(self.constant.to_string());
        }
        for (j, coeff) in self.coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                parts.push(format!("{coeff}*C({upper},{})", j + 1));
            }
        }
        format!("S_{}(n) = {}", self.k, join_signed(&parts))
    }

    /// LaTeX with `\binom`; unit coefficients are omitted.
    pub fn to_latex(&self) -> String {
        let upper = self.upper();
        let mut parts = Vec::new();
        if !self.constant.is_zero() {
            parts.push(self.constant.to_string());
        }
        for (j, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let binom = format!("\\binom{{{upper}}}{{{}}}", j + 1);
            parts.push(if coeff.is_one() {
                binom
            } else if *coeff == -BigInt::one() {
                format!("-{binom}")
            } else {
                format!("{coeff}{binom}")
            });
        }
        format!("S_{{{}}}(n) = {}", self.k, join_signed(&parts))
    }
}

fn join_signed(parts: &[String]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}
