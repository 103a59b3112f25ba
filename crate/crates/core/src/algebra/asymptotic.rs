//! Exact leading-term asymptotics of coefficients of elements of the algebra.
//!
//! Every element has coefficients growing like `c · e^n · n^(γ-1)` with a
//! half-integer `γ`. The constant `c` is rational up to one of a small set of
//! radical factors, tracked by [`Radical`].

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::laurent::LaurentPolyX;
use crate::error::{Error, Result};
use crate::rational::{double_factorial, factorial, int, ln_abs, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Radical {
    One,
    Sqrt2,
    /// `(2π)^{-1/2}`
    InvSqrt2Pi,
}

impl Radical {
    pub fn as_str(self) -> &'static str {
        match self {
            Radical::One => "1",
            Radical::Sqrt2 => "sqrt2",
            Radical::InvSqrt2Pi => "inv_sqrt_2pi",
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Radical::One => 1.0,
            Radical::Sqrt2 => std::f64::consts::SQRT_2,
            Radical::InvSqrt2Pi => 1.0 / (2.0 * std::f64::consts::PI).sqrt(),
        }
    }
}

/// A rational multiple of one radical marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledRational {
    pub value: Rational,
    pub radical: Radical,
}

impl ScaledRational {
    pub fn new(value: Rational, radical: Radical) -> Self {
        // A zero value carries no radical.
        let radical = if value.is_zero() { Radical::One } else { radical };
        Self { value, radical }
    }

    pub fn rational(value: Rational) -> Self {
        Self::new(value, Radical::One)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.value * k, self.radical)
    }

    /// Product, when it stays inside the marker set.
    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        use Radical::*;
        let v = &self.value * &rhs.value;
        match (self.radical, rhs.radical) {
            (One, r) | (r, One) => Some(Self::new(v, r)),
            (Sqrt2, Sqrt2) => Some(Self::new(v * int(2), One)),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        ln_abs(&self.value).exp() * crate::rational::signum(&self.value) as f64 * self.radical.to_f64()
    }

    /// Natural log of the absolute value; usable when the rational part is
    /// too large or small for `f64`.
    pub fn ln_abs(&self) -> f64 {
        ln_abs(&self.value) + self.radical.to_f64().ln()
    }
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radical {
            Radical::One => write!(f, "{}", self.value),
            Radical::Sqrt2 => write!(f, "{} * 2^(1/2)", self.value),
            Radical::InvSqrt2Pi => write!(f, "{} * (2*pi)^(-1/2)", self.value),
        }
    }
}

impl Serialize for ScaledRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ScaledRational", 2)?;
        s.serialize_field("value", &self.value.to_string())?;
        s.serialize_field("radical", self.radical.as_str())?;
        s.end()
    }
}

/// `coeff_n ~ constant · e^n · n^{gamma - 1}`, with `gamma = gamma2 / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticTerm {
    pub constant: ScaledRational,
    pub gamma2: i64,
}

impl AsymptoticTerm {
    pub fn gamma(&self) -> f64 {
        self.gamma2 as f64 / 2.0
    }

    /// `ln` of the predicted leading term at `n`, for float comparisons.
    pub fn ln_predicted(&self, n: u64) -> f64 {
        let n = n as f64;
        self.constant.ln_abs() + n + (self.gamma() - 1.0) * n.ln()
    }
}

impl Serialize for AsymptoticTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AsymptoticTerm", 3)?;
        s.serialize_field("constant", &self.constant.value.to_string())?;
        s.serialize_field("radical", self.constant.radical.as_str())?;
        s.serialize_field("gamma2", &self.gamma2)?;
        s.end()
    }
}

/// `1 / (2^{L/2} Γ(L/2))` for `L ≥ 1`, exactly.
///
/// Even `L`: `1 / ((L/2 - 1)! 2^{L/2})`. Odd `L`: `2^{L/2} Γ(L/2) = (L-2)!! √(2π)`.
pub fn inv_two_pow_gamma_half(l: u64) -> ScaledRational {
    assert!(l >= 1, "Γ(L/2) needs L ≥ 1");
    if l.is_multiple_of(2) {
        let h = l / 2;
        let den = factorial(h - 1) * num_traits::pow(num_bigint::BigInt::from(2), h as usize);
        ScaledRational::rational(Rational::new(One::one(), den))
    } else {
        let den = double_factorial(l as i64 - 2);
        ScaledRational::new(Rational::new(One::one(), den), Radical::InvSqrt2Pi)
    }
}

/// `2^{-L/2}` exactly, with the `√2` marker for odd `L`.
pub fn two_pow_neg_half(l: u64) -> ScaledRational {
    let den = num_traits::pow(num_bigint::BigInt::from(2), l.div_ceil(2) as usize);
    let v = Rational::new(One::one(), den);
    if l.is_multiple_of(2) {
        ScaledRational::rational(v)
    } else {
        ScaledRational::new(v, Radical::Sqrt2)
    }
}

/// Leading asymptotic term of the coefficients of `P`.
///
/// With lowest `X`-degree `-L < 0` the top `Z`-power `Z^L` dominates; with
/// no negative powers, `P` is a polynomial in `Y` and
/// `[q^n] Y^k ~ k e^n n^{-3/2} / √(2π)`.
pub fn leading_asymptotic(p: &LaurentPolyX) -> Result<AsymptoticTerm> {
    let lo = p
        .min_degree()
        .ok_or_else(|| Error::domain("the zero element has no asymptotic"))?;
    if lo < 0 {
        let l = (-lo) as u64;
        let constant = inv_two_pow_gamma_half(l).scale(&p.coeff(lo));
        return Ok(AsymptoticTerm {
            constant,
            gamma2: l as i64,
        });
    }
    let ypoly = p.to_ypoly().expect("no negative powers");
    let weight = ypoly
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (k, a)| acc + a * int(k as i64));
    if weight.is_zero() {
        return Err(Error::Unsupported(
            "leading Y-term cancels; a subleading expansion would be needed".into(),
        ));
    }
    Ok(AsymptoticTerm {
        constant: ScaledRational::new(weight, Radical::InvSqrt2Pi),
        gamma2: -1,
    })
}

/// `Γ(k + 1/2) / √π = (2k)! / (4^k k!)`, used to cross-check the
/// double-factorial route.
pub fn gamma_half_over_sqrt_pi(k: u64) -> Rational {
    let num = factorial(2 * k);
    let den = num_traits::pow(num_bigint::BigInt::from(4), k as usize) * factorial(k);
    Rational::new(num, den)
}
