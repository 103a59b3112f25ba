//! Truncated power series in one variable `q` with exact coefficients.
//!
//! Coefficients are stored in the plain convention `Σ c_n q^n`. Sequences
//! that live in the exponential convention (`Σ s_n q^n / n!`) go through
//! [`TruncatedSeries::from_egf`] and [`TruncatedSeries::egf_coeff`].

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, from_bigint, int, Rational};

/// Default truncation order for identity checks.
pub const DEFAULT_ORDER: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `q^k`, truncated at `order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = Rational::one();
        }
        s
    }

    /// Build from plain coefficients `c_0..=c_N`. An empty vector is rejected.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a series needs at least one coefficient"));
        }
        Ok(Self { coeffs })
    }

    /// Build from `c_n = f(n)` for `n = 0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// Build `Σ s_n q^n / n!` from the sequence `s_0..=s_N`.
    pub fn from_egf(seq: &[Rational]) -> Result<Self> {
        let coeffs = seq
            .iter()
            .enumerate()
            .map(|(n, s)| s / from_bigint(factorial(n as u64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Plain coefficient `c_n`; zero beyond the order is *not* implied, so
    /// indexing past the order panics.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `n! · c_n`, the exponential-convention view.
    pub fn egf_coeff(&self, n: usize) -> Rational {
        &self.coeffs[n] * from_bigint(factorial(n as u64))
    }

    /// `c_n / n!`.
    pub fn coeff_over_factorial(&self, n: usize) -> Rational {
        &self.coeffs[n] / from_bigint(factorial(n as u64))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Cut down to a smaller order (no-op if `order` is not smaller).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// The Euler operator `D = q d/dq`: `c_n ↦ n c_n`.
    pub fn euler_d(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        }
    }

    /// Exponential of a series with zero constant term, via `n e_n = Σ k a_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain(
                "exp of a series with nonzero constant term is not rational",
            ));
        }
        let order = self.order();
        let mut e = vec![Rational::zero(); order + 1];
        e[0] = Rational::one();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k as i64) * &e[n - k];
                }
            }
            e[n] = acc / int(n as i64);
        }
        Ok(Self { coeffs: e })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::domain("series with zero constant term is not invertible"));
        }
        let inv0 = c0.recip();
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -acc * &inv0;
        }
        Ok(Self { coeffs: out })
    }

    /// Divide by `q^k`; the first `k` coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::domain(format!(
                "cannot divide a series of order {} by q^{k}",
                self.order()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::domain(format!("series is not divisible by q^{k}")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
