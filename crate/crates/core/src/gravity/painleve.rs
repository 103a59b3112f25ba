//! The Painlevé I equation `u² + u''/6 = 2y` for the second derivative of
//! the free energy, solved as a formal series in `s = (2y)^{-1/2}`.
//!
//! In `s` every exponent is an integer: `u = Σ_g u_g s^{5g-1}` with
//! `u_0 = -1`, `u_1 = 1/12` and `u_g = (5-5g)(3-5g) e_g` for `g ≥ 2`, where
//! `e_g = ⟨τ_2^{3g-3}⟩_g / (3g-3)!`. Since `ds/dy = -s³`, `d/dy` acts as
//! `-s³ d/ds` and `u''` sends `s^k` to `k(k+2) s^{k+4}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{inv_two_pow_gamma_half, two_pow_neg_half, Radical, ScaledRational};
use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};

/// A finite Laurent polynomial in `s`; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PainleveSeries {
    coeffs: BTreeMap<i64, Rational>,
}

impl PainleveSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Terms with exponent at most `max`.
    pub fn truncate(&self, max: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=max).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Product keeping exponents at most `max`.
    pub fn mul_truncated(&self, rhs: &Self, max: i64) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                if i + j <= max {
                    out.add_term(i + j, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, c * k);
        }
        out
    }

    /// `d/dy` with `ds/dy = -s³`.
    pub fn d_dy(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            out.add_term(k + 2, c * int(-k));
        }
        out
    }
}

/// `u² + u''/6 - 2y` through exponent `max`.
pub fn residual(u: &PainleveSeries, max: i64) -> PainleveSeries {
    let square = u.mul_truncated(u, max);
    let second = u.d_dy().d_dy().scale(&frac(1, 6)).truncate(max);
    // 2y = s^{-2}
    square.add(&second).add(&PainleveSeries::monomial(-2, int(-1)))
}

/// Exponent of the genus-`g` term of `u`.
fn u_exponent(g: u32) -> i64 {
    5 * g as i64 - 1
}

/// `(5 - 5g)(3 - 5g)`, the factor between `u_g` and `e_g`.
fn u_factor(g: u32) -> Rational {
    let g = g as i64;
    int((5 - 5 * g) * (3 - 5 * g))
}

/// The formal solution through genus `g_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainleveSolution {
    pub g_max: u32,
    /// `u`, through the `s^{5 g_max - 1}` term.
    pub u: PainleveSeries,
    /// `e_g` for `g = 2..=g_max`, at index `g - 2`.
    e: Vec<Rational>,
}

impl PainleveSolution {
    /// `e_g = ⟨τ_2^{3g-3}⟩_g / (3g-3)!` for `2 ≤ g ≤ g_max`.
    pub fn e(&self, g: u32) -> Option<&Rational> {
        g.checked_sub(2).and_then(|i| self.e.get(i as usize))
    }

    /// `(g, e_g)` pairs.
    pub fn values(&self) -> Vec<(u32, Rational)> {
        (2..=self.g_max).zip(self.e.iter().cloned()).collect()
    }

    /// Highest exponent of `s` fully determined by the terms of `u` kept.
    pub fn checked_through(&self) -> i64 {
        5 * self.g_max as i64 + 2
    }

    /// The residual of the equation through [`Self::checked_through`].
    pub fn residual(&self) -> PainleveSeries {
        residual(&self.u, self.checked_through())
    }
}

/// Solves for `e_2, ..., e_{g_max}` order by order.
///
/// At each genus `G` the residual of the current truncation is expanded;
/// its `s^{5G-2}` coefficient is linear in `u_G` with slope `2u_0 = -2`,
/// every other exponent below `5G + 3` must already vanish.
pub fn painleve_solve(g_max: u32) -> Result<PainleveSolution> {
    if g_max < 2 {
        return Err(Error::domain(format!("painleve_solve needs g_max ≥ 2, got {g_max}")));
    }
    let mut u = PainleveSeries::monomial(u_exponent(0), int(-1));
    u.add_term(u_exponent(1), frac(1, 12));
    let mut e = Vec::new();
    for g in 2..=g_max {
        let target = u_exponent(g) - 1;
        let res = residual(&u, target);
        for (k, c) in res.terms() {
            if k != target {
                return Err(Error::Inconsistent(format!(
                    "Painlevé residual has s^{k} coefficient {c} before genus {g} is fixed"
                )));
            }
        }
        let u_g = res.coeff(target) / int(2);
        e.push(&u_g / u_factor(g));
        u.add_term(u_exponent(g), u_g);
    }
    let sol = PainleveSolution { g_max, u, e };
    let res = sol.residual();
    if let Some((k, c)) = res.terms().next() {
        return Err(Error::Inconsistent(format!("Painlevé residual has s^{k} coefficient {c}")));
    }
    Ok(sol)
}

/// A universal constant `b_g` in `h_{g,n;∅}/(2n+2g-2)! ~ e^n n^{5(g-1)/2 - 1} b_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GravityConstant {
    pub g: u32,
    pub b: ScaledRational,
}

/// `b_g = e_g / (2^{5(g-1)/2} Γ(5(g-1)/2))` for `g ≥ 2`; `b_0 = (2π)^{-1/2}`
/// and `b_1 = 1/48` are stored.
pub fn b_constant(g: u32) -> Result<GravityConstant> {
    let b = match g {
        0 => ScaledRational::new(Rational::one(), Radical::InvSqrt2Pi),
        1 => ScaledRational::rational(frac(1, 48)),
        _ => {
            let sol = painleve_solve(g)?;
            b_from_e(g, sol.e(g).expect("solved through g"))
        }
    };
    Ok(GravityConstant { g, b })
}

fn b_from_e(g: u32, e: &Rational) -> ScaledRational {
    inv_two_pow_gamma_half(5 * (g as u64 - 1)).scale(e)
}

/// Constants `b_0, ..., b_{g_max}` from one solve.
pub fn b_constants(g_max: u32) -> Result<Vec<GravityConstant>> {
    let mut out = vec![b_constant(0)?, b_constant(1)?];
    if g_max >= 2 {
        let sol = painleve_solve(g_max)?;
        for (g, e) in sol.values() {
            out.push(GravityConstant { g, b: b_from_e(g, &e) });
        }
    }
    out.truncate(g_max as usize + 1);
    Ok(out)
}

/// Coefficients `Γ(5(g-1)/2) b_g = e_g 2^{-5(g-1)/2}` of `y^{5(1-g)/2}` in
/// the free energy, for `g = 2..=g_max`.
pub fn free_energy_coeffs(g_max: u32) -> Result<Vec<(u32, ScaledRational)>> {
    let sol = painleve_solve(g_max)?;
    Ok(sol
        .values()
        .into_iter()
        .map(|(g, e)| (g, two_pow_neg_half(5 * (g as u64 - 1)).scale(&e)))
        .collect())
}
