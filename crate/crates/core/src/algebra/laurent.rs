use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::zpoly::ZPoly;
use super::{series_y, series_z};
use crate::error::{Error, Result};
use crate::rational::{binomial, from_bigint, int, parse, Rational};
use crate::series::TruncatedSeries;

/// An element `Σ a_j X^j` of the algebra, `X = 1 - Y`, `X^{-1} = 1 + Z`.
///
/// Zero coefficients are never stored, so the zero element has empty
/// support and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPolyX {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPolyX {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c · X^j`
    pub fn monomial(j: i64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(j, c);
        p
    }

    /// `X^j`
    pub fn x_pow(j: i64) -> Self {
        Self::monomial(j, Rational::one())
    }

    /// `Y = 1 - X`
    pub fn y() -> Self {
        &Self::one() - &Self::x_pow(1)
    }

    /// `Z = X^{-1} - 1`
    pub fn z() -> Self {
        &Self::x_pow(-1) - &Self::one()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (j, c) in terms {
            p.add_term(j, c);
        }
        p
    }

    fn add_term(&mut self, j: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(j).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: i64) -> Rational {
        self.coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(j, c)| (j, c * k)))
    }

    /// Integer power; negative powers are allowed only for monomials.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok((0..k).fold(Self::one(), |acc, _| &acc * self));
        }
        match self.coeffs.iter().collect::<Vec<_>>().as_slice() {
            [(&j, c)] => {
                let inv = c.recip();
                let c = num_traits::pow(inv, (-k) as usize);
                Ok(Self::monomial(j * k, c))
            }
            _ => Err(Error::domain("only monomials are invertible in Q[X, 1/X]")),
        }
    }

    /// `P(Z)` rewritten via `Z = X^{-1} - 1`.
    pub fn from_zpoly(p: &ZPoly) -> Self {
        let z = Self::z();
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &z) + &Self::monomial(0, c.clone()))
    }

    /// The polynomial-in-`Z` view; only exists when no positive power of `X`
    /// occurs (`X^{-L} = (1+Z)^L`).
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        if self.max_degree().is_some_and(|d| d > 0) {
            return None;
        }
        let one_plus_z = ZPoly::from_ints(&[1, 1]);
        Some(self.terms().fold(ZPoly::zero(), |acc, (j, c)| {
            &acc + &one_plus_z.pow((-j) as u32).scale(c)
        }))
    }

    /// The polynomial-in-`Y` view `Σ a'_k Y^k`; only exists when no negative
    /// power of `X` occurs.
    pub fn to_ypoly(&self) -> Option<Vec<Rational>> {
        if self.min_degree().is_some_and(|d| d < 0) {
            return None;
        }
        let top = self.max_degree().unwrap_or(0) as u64;
        let mut out = vec![Rational::zero(); top as usize + 1];
        for (j, a) in self.terms() {
            // (1 - Y)^j
            for k in 0..=j as u64 {
                let b = from_bigint(binomial(j as u64, k));
                let term = if k % 2 == 0 { b } else { -b };
                out[k as usize] += a * term;
            }
        }
        Some(out)
    }

    /// Exact truncated series of the element at the given order.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let Some(lo) = self.min_degree() else {
            return TruncatedSeries::zero(order);
        };
        let hi = self.max_degree().unwrap();
        let x = &TruncatedSeries::one(order) - &series_y(order);
        let x_inv = &TruncatedSeries::one(order) + &series_z(order);
        let mut acc = TruncatedSeries::zero(order);
        let mut add_powers = |base: &TruncatedSeries, range: &mut dyn Iterator<Item = i64>| {
            let mut power = TruncatedSeries::one(order);
            let mut step = 0;
            for j in range {
                while step < j.abs() {
                    power = &power * base;
                    step += 1;
                }
                let c = self.coeff(j);
                if !c.is_zero() {
                    acc = &acc + &power.scale(&c);
                }
            }
        };
        if hi >= 0 {
            add_powers(&x, &mut (lo.max(0)..=hi));
        }
        if lo < 0 {
            add_powers(&x_inv, &mut (lo..=hi.min(-1)).rev());
        }
        acc
    }

    /// Apply `D = q d/dq`: `D(X^j) = -j (X^{j-2} - X^{j-1})`.
    pub fn euler_d(&self) -> Self {
        let mut out = Self::zero();
        for (j, c) in self.terms() {
            let f = c * int(-j);
            out.add_term(j - 2, f.clone());
            out.add_term(j - 1, -f);
        }
        out
    }

    /// Parse `"j:c,j:c,..."`, e.g. `"-2:1,0:-1/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Self::zero();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (j, c) = item
                .split_once(':')
                .ok_or_else(|| Error::domain(format!("expected j:coefficient, got {item:?}")))?;
            let j: i64 = j
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad exponent {j:?}")))?;
            p.add_term(j, parse(c)?);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for LaurentPolyX {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (j, c) in self.terms() {
            map.serialize_entry(&j.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl Add for &LaurentPolyX {
    type Output = LaurentPolyX;
    fn add(self, rhs: &LaurentPolyX) -> LaurentPolyX {
        let mut out = self.clone();
        for (j, c) in rhs.terms() {
            out.add_term(j, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolyX {
    type Output = LaurentPolyX;
    fn sub(self, rhs: &LaurentPolyX) -> LaurentPolyX {
        let mut out = self.clone();
        for (j, c) in rhs.terms() {
            out.add_term(j, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolyX {
    type Output = LaurentPolyX;
    fn neg(self) -> LaurentPolyX {
        self.scale(&int(-1))
    }
}

impl Mul for &LaurentPolyX {
    type Output = LaurentPolyX;
    fn mul(self, rhs: &LaurentPolyX) -> LaurentPolyX {
        let mut out = LaurentPolyX::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}
