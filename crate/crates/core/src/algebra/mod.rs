//! The algebra generated by the tree series
//! `Y = Σ n^{n-1} q^n / n!` and `Z = Σ n^n q^n / n!`.
//!
//! `(1 - Y)(1 + Z) = 1` makes the algebra a ring of Laurent polynomials in
//! `X = 1 - Y`; [`LaurentPolyX`] is the canonical representation and
//! [`ZPoly`] the polynomial-in-`Z` view. [`identify_in_a`] recovers the
//! Laurent polynomial of a series from finitely many coefficients.

mod asymptotic;
mod laurent;
mod zpoly;

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use asymptotic::{
    gamma_half_over_sqrt_pi, inv_two_pow_gamma_half, leading_asymptotic, two_pow_neg_half,
    AsymptoticTerm, Radical, ScaledRational,
};
pub use laurent::LaurentPolyX;
pub use zpoly::ZPoly;

use crate::error::{Error, Result};
use crate::linalg::{solve_exact, LinearSystem};
use crate::rational::{binomial, factorial, from_bigint, int, pow_signed, Rational};
use crate::series::TruncatedSeries;

/// Surplus coefficients [`identify_in_a`] requires by default.
pub const DEFAULT_SLACK: usize = 5;

/// `Y = Σ n^{n-1} q^n / n!` to order `order`.
pub fn series_y(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            Rational::new(
                num_traits::pow(BigInt::from(n), n - 1),
                factorial(n as u64),
            )
        }
    })
}

/// `Z = Σ n^n q^n / n!` to order `order`.
pub fn series_z(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            Rational::new(num_traits::pow(BigInt::from(n), n), factorial(n as u64))
        }
    })
}

/// `A_n = Σ_{p+q=n, p,q≥1} n!/(p! q!) p^p q^q` for `n = 0..=max_n`
/// (`A_0 = 0`), by the defining convolution.
pub fn seq_a(max_n: usize) -> Vec<BigInt> {
    (0..=max_n as u64)
        .map(|n| {
            (1..n).fold(BigInt::zero(), |acc, p| {
                let q = n - p;
                acc + binomial(n, p)
                    * num_traits::pow(BigInt::from(p), p as usize)
                    * num_traits::pow(BigInt::from(q), q as usize)
            })
        })
        .collect()
}

/// `A_n = n! Σ_{k=0}^{n-2} n^k / k!`, the closed form of the same sequence.
pub fn seq_a_closed(n: u64) -> BigInt {
    if n < 2 {
        return BigInt::zero();
    }
    let nf = factorial(n);
    (0..=n - 2).fold(BigInt::zero(), |acc, k| {
        acc + &nf / factorial(k) * num_traits::pow(BigInt::from(n), k as usize)
    })
}

/// `Y^k` from the closed form `k n^{n-k-1} / (n-k)!` (zero below `q^k`).
pub fn ypower_closed(k: u32, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| ypower_coeff(k, n as u64))
}

/// `[q^n] Y^k`.
pub fn ypower_coeff(k: u32, n: u64) -> Rational {
    let k64 = k as u64;
    if k == 0 {
        return if n == 0 { Rational::one() } else { Rational::zero() };
    }
    if n < k64 {
        return Rational::zero();
    }
    let p = pow_signed(n as i64, n as i64 - k as i64 - 1).expect("n ≥ 1");
    p * int(k as i64) / from_bigint(factorial(n - k64))
}

/// `D^k Z` as a polynomial in `Z`, by iterating `DZ = Z(1+Z)^2`.
pub fn dkz_poly(k: u32) -> ZPoly {
    (0..k).fold(ZPoly::z(), |p, _| p.euler_d())
}

/// `D^k (Z^2)` as a polynomial in `Z`.
pub fn dkz2_poly(k: u32) -> ZPoly {
    (0..k).fold(ZPoly::z().pow(2), |p, _| p.euler_d())
}

/// The `i`-th series of the list `Z, Z^2, DZ, D(Z^2), D^2 Z, ...` (0-based).
pub fn z_basis_element(i: usize) -> ZPoly {
    if i.is_multiple_of(2) {
        dkz_poly((i / 2) as u32)
    } else {
        dkz2_poly((i / 2) as u32)
    }
}

/// `[q^n]` of the `i`-th basis series: `n^{n+s}/n!` or `n^s A_n / n!`.
fn z_basis_coeff(i: usize, n: u64) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let s = (i / 2) as u64;
    let nf = from_bigint(factorial(n));
    let ns = from_bigint(num_traits::pow(BigInt::from(n), s as usize));
    if i.is_multiple_of(2) {
        from_bigint(num_traits::pow(BigInt::from(n), n as usize)) * ns / nf
    } else {
        from_bigint(seq_a_closed(n)) * ns / nf
    }
}

/// Coefficients expressing `Z^k` over the first `k` basis series
/// `Z, Z^2, DZ, D(Z^2), ...`.
pub fn zpower_in_basis(k: u32) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::domain("Z^0 = 1 is not in the span of the basis series"));
    }
    let k = k as usize;
    let basis: Vec<ZPoly> = (0..k).map(z_basis_element).collect();
    let target = ZPoly::monomial(k, Rational::one());
    let rows = k + 1;
    let matrix = (0..rows)
        .map(|d| basis.iter().map(|b| b.coeff(d)).collect())
        .collect();
    let rhs = (0..rows).map(|d| target.coeff(d)).collect();
    let w = solve_exact(&LinearSystem::new(matrix, rhs)?)?;
    let back = basis
        .iter()
        .zip(&w)
        .fold(ZPoly::zero(), |acc, (b, c)| &acc + &b.scale(c));
    if back != target {
        return Err(Error::Inconsistent(format!("re-expansion of Z^{k} failed")));
    }
    Ok(w)
}

fn zpower_in_basis_cached(k: u32) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Option<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(Some(w)) = guard.get(k as usize) {
            return w.clone();
        }
    }
    let w = zpower_in_basis(k).expect("the basis is triangular in Z-degree");
    let mut guard = cache.lock().unwrap();
    if guard.len() <= k as usize {
        guard.resize(k as usize + 1, None);
    }
    guard[k as usize] = Some(w.clone());
    w
}

/// `[q^n] Z^k` through the basis expansion, with no series arithmetic.
pub fn zpower_coeff(k: u32, n: u64) -> Rational {
    if k == 0 {
        return if n == 0 { Rational::one() } else { Rational::zero() };
    }
    zpower_in_basis_cached(k)
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .fold(Rational::zero(), |acc, (i, w)| acc + w * z_basis_coeff(i, n))
}

/// Exact `[q^n] P` for any `n`, from closed forms only: negative `X`-powers
/// through the `Z`-basis, the rest through `[q^n] Y^k`.
pub fn coefficient_at(p: &LaurentPolyX, n: u64) -> Rational {
    let neg = LaurentPolyX::from_terms(p.terms().filter(|(j, _)| *j < 0).map(|(j, c)| (j, c.clone())));
    let pos = LaurentPolyX::from_terms(p.terms().filter(|(j, _)| *j >= 0).map(|(j, c)| (j, c.clone())));
    let mut acc = Rational::zero();
    if let Some(zp) = neg.to_zpoly() {
        for (i, c) in zp.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * zpower_coeff(i as u32, n);
            }
        }
    }
    if let Some(yp) = pos.to_ypoly() {
        for (k, c) in yp.iter().enumerate() {
            if !c.is_zero() {
                acc += c * ypower_coeff(k as u32, n);
            }
        }
    }
    acc
}

/// Result of a successful [`identify_in_a`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub element: LaurentPolyX,
    /// Coefficients matched beyond the ones used to solve.
    pub verified_orders: usize,
}

/// Find `P` with support in `[jmin, jmax]` whose series equals `f` through
/// its whole order.
///
/// The span of `X^jmin, ..., X^jmax` is `X^jmin` times the polynomials in
/// `Y` of degree `< u` (`u` = window size), so the first `u` coefficients
/// determine `P`; the remaining ones are checks. Fewer than `slack` checks
/// is reported as under-determined, any mismatch as inconsistent.
pub fn identify_in_a(
    f: &TruncatedSeries,
    jmin: i64,
    jmax: i64,
    slack: usize,
) -> Result<Identification> {
    if jmax < jmin {
        return Err(Error::domain(format!("empty window [{jmin}, {jmax}]")));
    }
    let u = (jmax - jmin + 1) as usize;
    let rows = f.order() + 1;
    if rows < u + slack {
        return Err(Error::Underdetermined {
            rank: rows.min(u),
            unknowns: u + slack,
        });
    }
    let order = f.order();
    let x = LaurentPolyX::x_pow(1).to_series(order);
    let mut basis = Vec::with_capacity(u);
    let mut cur = LaurentPolyX::x_pow(jmin).to_series(order);
    for _ in 0..u {
        let next = &cur * &x;
        basis.push(cur);
        cur = next;
    }
    let matrix = (0..u)
        .map(|n| basis.iter().map(|b| b.coeff(n).clone()).collect())
        .collect();
    let rhs = (0..u).map(|n| f.coeff(n).clone()).collect();
    let sol = solve_exact(&LinearSystem::new(matrix, rhs)?)?;
    for n in u..rows {
        let v = basis
            .iter()
            .zip(&sol)
            .fold(Rational::zero(), |acc, (b, c)| acc + b.coeff(n) * c);
        if &v != f.coeff(n) {
            return Err(Error::Inconsistent(format!(
                "no element with X-support in [{jmin}, {jmax}] matches: q^{n} coefficient is {} but the fit predicts {v}",
                f.coeff(n)
            )));
        }
    }
    let element = LaurentPolyX::from_terms((jmin..=jmax).zip(sol));
    Ok(Identification {
        element,
        verified_orders: rows - u,
    })
}
