//! Forward differences and the Newton–Gregory expansion.
//!
//! `Δp(x) = p(x+1) - p(x)`. A polynomial `p` of degree `d` satisfies
//! `p(x) = Σ_{j=0..d} C(x-a, j) · Δ^j p(a)` for every rational `a`; the
//! coefficient list returned by [`newton_gregory`] together with
//! [`binomial_basis_poly`] reconstructs `p` exactly.

use num_traits::One;

use crate::exact::{factorial, rat, ExactRat};
use crate::poly::Polynomial;

pub fn delta(p: &Polynomial) -> Polynomial {
    &p.shift(&ExactRat::one()) - p
}

/// `Δ^j p`. Stops early once the result reaches zero.
pub fn iterated_delta(p: &Polynomial, j: usize) -> Polynomial {
    let mut q = p.clone();
    for _ in 0..j {
        if q.is_zero() {
            break;
        }
        q = delta(&q);
    }
    q
}

/// `[Δ^0 p(a), Δ^1 p(a), ..., Δ^d p(a)]` where `d = deg p`.
///
/// The differences are taken symbolically and then evaluated at `a`.
/// The zero polynomial yields an empty list.
pub fn newton_gregory(p: &Polynomial, a: &ExactRat) -> Vec<ExactRat> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(d + 1);
    let mut q = p.clone();
    for _ in 0..=d {
        out.push(q.eval(a));
        q = delta(&q);
    }
    out
}

/// `C(x-a, j) = (x-a)(x-a-1)···(x-a-j+1) / j!` as a polynomial in `x`.
pub fn binomial_basis_poly(j: usize, a: &ExactRat) -> Polynomial {
    let mut p = Polynomial::constant(ExactRat::one());
    for i in 0..j {
        let root = a + rat(i as u64);
        p = &p * &Polynomial::new(vec![-root, ExactRat::one()]);
    }
    p.scale(&(ExactRat::one() / rat(factorial(j as u32))))
}

/// Sums `coeffs[j] · C(x-a, j)` back into the monomial basis.
pub fn from_newton_gregory(coeffs: &[ExactRat], a: &ExactRat) -> Polynomial {
    coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (j, c)| {
            &acc + &binomial_basis_poly(j, a).scale(c)
        })
}
