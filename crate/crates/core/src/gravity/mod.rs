//! Intersection numbers `⟨τ_{d_1} ... τ_{d_p}⟩_g` of ψ-classes, computed as
//! finite combinations of Hurwitz numbers, and the constants of 2D gravity.
//!
//! With `n = Σ b_i` and `c = n + p + 2g - 2`,
//!
//! `⟨τ_{d_1} ... τ_{d_p}⟩_g = Σ_{1 ≤ b_i ≤ d_i + 1} Π_i (-1)^{d_i+1-b_i} / ((d_i+1-b_i)! b_i^{b_i-1}) · |Aut b| h_{g,n;b} / c!`
//!
//! and the same combination of `|Aut b| H_{g;b} / Y^{|b|}` is the bracket
//! times `(1+Z)^{2g-2+p}`.

mod painleve;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use painleve::{
    b_constant, b_constants, free_energy_coeffs, painleve_solve, residual, GravityConstant, PainleveSeries,
    PainleveSolution,
};

use crate::algebra::{identify_in_a, leading_asymptotic, series_y, AsymptoticTerm, LaurentPolyX};
use crate::error::{Error, Result};
use crate::hseries::{fit_phi_from_oracle, h0_closed, normal_form_prefactor, DEFAULT_PHI_SLACK};
use crate::hurwitz::{hurwitz_connected_with, CoveringSpec, Partition};
use crate::rational::{binomial, factorial, from_bigint, int, Rational};
use crate::series::TruncatedSeries;

/// Surplus coefficients [`h_tau_series`] checks by default.
pub const DEFAULT_TAU_SLACK: usize = 5;

/// A bracket `⟨τ_{d_1} ... τ_{d_p}⟩_g`; the insertions are a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TauSpec {
    pub g: u32,
    ds: Vec<u32>,
}

impl TauSpec {
    pub fn new(g: u32, mut ds: Vec<u32>) -> Self {
        ds.sort_unstable();
        Self { g, ds }
    }

    /// `"0,0,2,2"`; empty for no insertions.
    pub fn parse(g: u32, s: &str) -> Result<Self> {
        let ds = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::domain(format!("bad insertion {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self::new(g, ds))
    }

    pub fn ds(&self) -> &[u32] {
        &self.ds
    }

    pub fn p(&self) -> u32 {
        self.ds.len() as u32
    }

    /// `Σ d_i = 3g - 3 + p`; brackets violating it are zero.
    pub fn dimension_ok(&self) -> bool {
        self.ds.iter().map(|&d| d as i64).sum::<i64>() == 3 * self.g as i64 - 3 + self.p() as i64
    }

    /// `2g - 2 + p`.
    pub fn euler_exponent(&self) -> i64 {
        2 * self.g as i64 - 2 + self.p() as i64
    }

    /// The moduli space exists only for `2g - 2 + p > 0`.
    pub fn is_stable(&self) -> bool {
        self.euler_exponent() > 0
    }

    fn check_stable(&self) -> Result<()> {
        if self.is_stable() {
            Ok(())
        } else {
            Err(Error::domain(format!("{self} is unstable: 2g - 2 + p ≤ 0")))
        }
    }

    /// Same genus with one insertion `d` added.
    pub fn with(&self, d: u32) -> Self {
        let mut ds = self.ds.clone();
        ds.push(d);
        Self::new(self.g, ds)
    }

    /// Same genus with the insertion at `index` removed.
    pub fn without(&self, index: usize) -> Self {
        let mut ds = self.ds.clone();
        ds.remove(index);
        Self { g: self.g, ds }
    }
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &d in &self.ds {
            *counts.entry(d).or_default() += 1;
        }
        let parts: Vec<String> = counts
            .iter()
            .map(|(d, k)| if *k == 1 { format!("tau_{d}") } else { format!("tau_{d}^{k}") })
            .collect();
        write!(f, "<{}>_{}", parts.join(" "), self.g)
    }
}

/// `(1/d!) Σ_b (-1)^{d+1-b} C(d, b-1) / (1 - bψ) = ψ^d + O(ψ^{d+1})`: the
/// pairs `(b, coefficient)` for `b = 1..=d+1`.
pub fn vanishing_combination(d: u32) -> Vec<(u32, Rational)> {
    let dfact = from_bigint(factorial(d as u64));
    (1..=d + 1)
        .map(|b| {
            let sign = if (d + 1 - b).is_multiple_of(2) { 1 } else { -1 };
            let c = from_bigint(binomial(d as u64, b as u64 - 1)) * int(sign) / &dfact;
            (b, c)
        })
        .collect()
}

/// Coefficients of `ψ^0, ..., ψ^order` in `Σ_b coeff / (1 - bψ)`.
pub fn vanishing_expansion(d: u32, order: usize) -> Vec<Rational> {
    let combo = vanishing_combination(d);
    (0..=order)
        .map(|j| {
            combo.iter().fold(Rational::zero(), |acc, (b, c)| {
                acc + c * from_bigint(num_traits::pow(BigInt::from(*b), j))
            })
        })
        .collect()
}

/// `(-1)^{d+1-b} / ((d+1-b)! b^{b-1})`.
fn insertion_weight(d: u32, b: u32) -> Rational {
    let sign = if (d + 1 - b).is_multiple_of(2) { 1 } else { -1 };
    let den = factorial((d + 1 - b) as u64) * num_traits::pow(BigInt::from(b), b as usize - 1);
    Rational::new(BigInt::from(sign), den)
}

/// The weight of each partition `b` in the bracket, summed over the ordered
/// tuples `(b_1, ..., b_p)` that sort to it, and multiplied by `|Aut b|`.
pub fn bracket_terms(spec: &TauSpec) -> Vec<(Partition, Rational)> {
    let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
    let mut tuple = vec![1u32; spec.ds.len()];
    loop {
        let w = spec
            .ds
            .iter()
            .zip(&tuple)
            .fold(Rational::one(), |w, (&d, &b)| w * insertion_weight(d, b));
        *acc.entry(Partition::new(tuple.clone())).or_insert_with(Rational::zero) += w;
        // odometer over 1 ≤ b_i ≤ d_i + 1
        let mut i = 0;
        while i < tuple.len() {
            if tuple[i] <= spec.ds[i] {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
        if i == tuple.len() {
            break;
        }
    }
    acc.into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(b, w)| {
            let aut = from_bigint(b.aut());
            (b, w * aut)
        })
        .collect()
}

fn with_location(e: Error, n: u32, c: u64) -> Error {
    match e {
        Error::Budget { what, estimate, budget } => Error::Budget {
            what: format!("{what} (oracle call n = {n}, c = {c})"),
            estimate,
            budget,
        },
        other => other,
    }
}

fn oracle_value(g: u32, n: u32, b: &Partition, max_nodes: u128) -> Result<Rational> {
    let spec = CoveringSpec::new(g, n, vec![b.clone()])?;
    let c = spec.c();
    hurwitz_connected_with(&spec, max_nodes).map(|o| o.value).map_err(|e| with_location(e, n, c))
}

/// The bracket from Hurwitz numbers with `n = |b|`, one oracle call per
/// partition `b`, run in parallel.
pub fn tau_bracket(spec: &TauSpec, max_nodes: u128) -> Result<Rational> {
    if !spec.dimension_ok() {
        return Ok(Rational::zero());
    }
    spec.check_stable()?;
    let terms = bracket_terms(spec);
    let values: Vec<Rational> = terms
        .par_iter()
        .map(|(b, w)| {
            let n = b.m();
            let h = oracle_value(spec.g, n, b, max_nodes)?;
            let c = n as u64 + spec.p() as u64 + 2 * spec.g as u64 - 2;
            Ok(w * h / from_bigint(factorial(c)))
        })
        .collect::<Result<_>>()?;
    Ok(values.into_iter().sum())
}

/// Where [`h_tau_series`] takes its Hurwitz numbers from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesSource {
    Oracle { max_nodes: u128 },
    /// The genus-zero closed form; only for `g = 0`.
    GenusZeroClosed,
}

impl SeriesSource {
    /// The closed form in genus zero, the oracle otherwise.
    pub fn default_for(g: u32, max_nodes: u128) -> Self {
        if g == 0 {
            SeriesSource::GenusZeroClosed
        } else {
            SeriesSource::Oracle { max_nodes }
        }
    }
}

/// The combination `Σ_b w_b |Aut b| H_{g;b} / Y^{|b|}` and its identification.
#[derive(Clone, Debug)]
pub struct TauSeries {
    pub spec: TauSpec,
    pub series: TruncatedSeries,
    pub element: LaurentPolyX,
    pub verified_orders: usize,
}

/// Default window: one step beyond `X^{-(2g-2+p)}` and `X^0` on each side.
pub fn default_tau_window(spec: &TauSpec) -> (i64, i64) {
    (-spec.euler_exponent() - 1, 1)
}

/// Builds the combination to `q^order` and identifies it over `window`.
///
/// Identification failure is an error: it would contradict the statement
/// that the combination lies in the algebra.
pub fn h_tau_series(spec: &TauSpec, order: usize, window: (i64, i64), source: SeriesSource) -> Result<TauSeries> {
    if !spec.dimension_ok() {
        return Ok(TauSeries {
            spec: spec.clone(),
            series: TruncatedSeries::zero(order),
            element: LaurentPolyX::zero(),
            verified_orders: order + 1,
        });
    }
    spec.check_stable()?;
    if spec.g != 0 && source == SeriesSource::GenusZeroClosed {
        return Err(Error::domain("the closed form covers genus zero only"));
    }
    let terms = bracket_terms(spec);
    // (Y/q)^{-1}
    let y_over_q_inv = series_y(order + 1).shift_down(1)?.inverse()?;
    let jobs: Vec<(usize, u32)> = terms
        .iter()
        .enumerate()
        .flat_map(|(i, (b, _))| (0..=order as u32).map(move |k| (i, b.m() + k)))
        .collect();
    let values: Vec<Rational> = jobs
        .par_iter()
        .map(|&(i, n)| {
            let b = &terms[i].0;
            let spec_n = CoveringSpec::new(spec.g, n, vec![b.clone()])?;
            let h = match source {
                SeriesSource::Oracle { max_nodes } => oracle_value(spec.g, n, b, max_nodes)?,
                SeriesSource::GenusZeroClosed => h0_closed(n, b)?,
            };
            Ok(h / from_bigint(factorial(spec_n.c())))
        })
        .collect::<Result<_>>()?;
    let mut total = TruncatedSeries::zero(order);
    for (i, (b, w)) in terms.iter().enumerate() {
        // H_{g;b} / q^{|b|}, then times (Y/q)^{-|b|}
        let shifted: Vec<Rational> = jobs
            .iter()
            .zip(&values)
            .filter(|((j, _), _)| *j == i)
            .map(|(_, v)| v.clone())
            .collect();
        let shifted = TruncatedSeries::from_coeffs(shifted)?;
        let term = &shifted * &y_over_q_inv.pow(b.m());
        total = &total + &term.scale(w);
    }
    let id = identify_in_a(&total, window.0, window.1, 0).map_err(|e| match e {
        Error::Inconsistent(msg) => Error::Inconsistent(format!("{spec}: combination not in the algebra: {msg}")),
        other => other,
    })?;
    Ok(TauSeries {
        spec: spec.clone(),
        series: total,
        element: id.element,
        verified_orders: id.verified_orders,
    })
}

/// [`h_tau_series`] over the default window with `slack` checked
/// coefficients.
pub fn h_tau_series_default(spec: &TauSpec, slack: usize, max_nodes: u128) -> Result<TauSeries> {
    let window = default_tau_window(spec);
    let order = (window.1 - window.0) as usize + slack;
    h_tau_series(spec, order, window, SeriesSource::default_for(spec.g, max_nodes))
}

/// The bracket through fitted normal forms: substituting
/// `H_{g;b} = prefactor · Y^{|b|} (1+Z)^{2g-2+p} φ_b(Z)` turns the
/// combination into `(1+Z)^{2g-2+p} Σ_b w_b |Aut b| prefactor φ_b(Z)`, whose
/// polynomial part must be a constant.
pub fn bracket_from_phi(spec: &TauSpec, max_nodes: u128) -> Result<Rational> {
    if !spec.dimension_ok() {
        return Ok(Rational::zero());
    }
    spec.check_stable()?;
    let terms = bracket_terms(spec);
    let fits = terms
        .par_iter()
        .map(|(b, w)| {
            let fit = fit_phi_from_oracle(spec.g, b, DEFAULT_PHI_SLACK, max_nodes)?;
            Ok(fit.phi.poly().scale(&(w * normal_form_prefactor(b))))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = fits.iter().fold(crate::algebra::ZPoly::zero(), |acc, p| &acc + p);
    match total.degree() {
        None => Ok(Rational::zero()),
        Some(0) => Ok(total.coeff(0)),
        Some(d) => Err(Error::Inconsistent(format!(
            "{spec}: fitted combination has degree {d} in Z, expected a constant"
        ))),
    }
}

/// Predicted asymptotic of `bracket · (1+Z)^{2g-2+p}`.
pub fn tau_asymptotic(spec: &TauSpec, bracket: &Rational) -> Result<AsymptoticTerm> {
    spec.check_stable()?;
    leading_asymptotic(&LaurentPolyX::x_pow(-spec.euler_exponent()).scale(bracket))
}

/// Both sides of the string and dilaton equations for one bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringDilatonReport {
    pub spec: TauSpec,
    pub value: Rational,
    /// `Σ_j ⟨... τ_{d_j - 1} ...⟩` when `spec` has a `τ_0` and the reduced
    /// bracket is stable.
    pub string: Option<Rational>,
    /// `(2g - 2 + p - 1) ⟨...⟩` when `spec` has a `τ_1` and the reduced
    /// bracket is stable.
    pub dilaton: Option<Rational>,
}

impl StringDilatonReport {
    pub fn holds(&self) -> bool {
        self.string.as_ref().is_none_or(|s| *s == self.value) && self.dilaton.as_ref().is_none_or(|d| *d == self.value)
    }
}

/// String: `⟨τ_0 Π τ_{d_i}⟩ = Σ_j ⟨τ_{d_j - 1} Π_{i≠j} τ_{d_i}⟩`.
/// Dilaton: `⟨τ_1 Π τ_{d_i}⟩ = (2g - 2 + p) ⟨Π τ_{d_i}⟩`, `p` counting the
/// remaining insertions. Each side comes from `bracket` separately.
pub fn string_dilaton_check(
    spec: &TauSpec,
    mut bracket: impl FnMut(&TauSpec) -> Result<Rational>,
) -> Result<StringDilatonReport> {
    let value = bracket(spec)?;
    let mut string = None;
    if let Some(i) = spec.ds.iter().position(|&d| d == 0) {
        let rest = spec.without(i);
        if rest.is_stable() {
            let mut sum = Rational::zero();
            for j in 0..rest.ds.len() {
                if rest.ds[j] > 0 {
                    let mut ds = rest.ds.clone();
                    ds[j] -= 1;
                    sum += bracket(&TauSpec::new(spec.g, ds))?;
                }
            }
            string = Some(sum);
        }
    }
    let mut dilaton = None;
    if let Some(i) = spec.ds.iter().position(|&d| d == 1) {
        let rest = spec.without(i);
        if rest.is_stable() {
            dilaton = Some(int(rest.euler_exponent()) * bracket(&rest)?);
        }
    }
    Ok(StringDilatonReport {
        spec: spec.clone(),
        value,
        string,
        dilaton,
    })
}

/// Stable brackets of genus `g` with `p` insertions satisfying the
/// dimension constraint.
pub fn dimension_admissible(g: u32, p: u32) -> Vec<TauSpec> {
    let total = 3 * g as i64 - 3 + p as i64;
    if total < 0 || 2 * g as i64 - 2 + (p as i64) <= 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn go(left: u32, slots: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in (0..=max.min(left)).rev() {
            cur.push(d);
            go(left - d, slots - 1, d, cur, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    go(total as u32, p, total as u32, &mut Vec::new(), &mut lists);
    for ds in lists {
        out.push(TauSpec::new(g, ds));
    }
    out
}

/// Brackets of `τ_0`, `τ_1`, `τ_2` insertions reduced by the string and
/// dilaton equations to `⟨τ_0^3⟩_0 = 1`, `⟨τ_1⟩_1 = 1/24` and the values
/// `⟨τ_2^{3g-3}⟩_g = (3g-3)! e_g` supplied for `g ≥ 2`.
pub struct StringDilatonReducer {
    e: HashMap<u32, Rational>,
    memo: HashMap<TauSpec, Rational>,
}

impl StringDilatonReducer {
    /// `e` holds `(g, e_g)` pairs for `g ≥ 2`.
    pub fn new(e: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        Self {
            e: e.into_iter().collect(),
            memo: HashMap::new(),
        }
    }

    pub fn bracket(&mut self, spec: &TauSpec) -> Result<Rational> {
        if !spec.dimension_ok() {
            return Ok(Rational::zero());
        }
        spec.check_stable()?;
        if let Some(v) = self.memo.get(spec) {
            return Ok(v.clone());
        }
        let value = self.reduce(spec)?;
        self.memo.insert(spec.clone(), value.clone());
        Ok(value)
    }

    fn reduce(&mut self, spec: &TauSpec) -> Result<Rational> {
        match (spec.g, spec.ds.as_slice()) {
            (0, [0, 0, 0]) => return Ok(Rational::one()),
            (1, [1]) => return Ok(Rational::new(BigInt::one(), BigInt::from(24))),
            _ => {}
        }
        if let Some(i) = spec.ds.iter().position(|&d| d == 0) {
            let rest = spec.without(i);
            let mut sum = Rational::zero();
            for j in 0..rest.ds.len() {
                if rest.ds[j] > 0 {
                    let mut ds = rest.ds.clone();
                    ds[j] -= 1;
                    sum += self.bracket(&TauSpec::new(spec.g, ds))?;
                }
            }
            return Ok(sum);
        }
        if let Some(i) = spec.ds.iter().position(|&d| d == 1) {
            let rest = spec.without(i);
            return Ok(int(rest.euler_exponent()) * self.bracket(&rest)?);
        }
        if spec.g >= 2 && spec.ds.iter().all(|&d| d == 2) {
            let e = self
                .e
                .get(&spec.g)
                .ok_or_else(|| Error::domain(format!("no e_{} supplied", spec.g)))?;
            return Ok(e * from_bigint(factorial(3 * spec.g as u64 - 3)));
        }
        Err(Error::Unsupported(format!("{spec} does not reduce to the supplied brackets")))
    }
}

/// Both sides of the `t_2^{3g-1}` coefficient of the KdV equation:
///
/// `⟨τ_0²τ_1τ_2^{3g-1}⟩_g/(3g-1)! = Σ_{g'+g''=g, g'≥1} ⟨τ_0²τ_2^{3g'-1}⟩_{g'}/(3g'-1)! · ⟨τ_0³τ_2^{3g''}⟩_{g''}/(3g'')! + (1/12) ⟨τ_0⁵τ_2^{3g-1}⟩_{g-1}/(3g-1)!`.
pub fn kdv_coefficient_sides(
    g: u32,
    mut bracket: impl FnMut(&TauSpec) -> Result<Rational>,
) -> Result<(Rational, Rational)> {
    if g == 0 {
        return Err(Error::domain("the KdV coefficient identity starts at g = 1"));
    }
    let spec = |g: u32, zeros: usize, ones: usize, twos: u32| {
        let mut ds = vec![0; zeros];
        ds.extend(std::iter::repeat_n(1, ones));
        ds.extend(std::iter::repeat_n(2, twos as usize));
        TauSpec::new(g, ds)
    };
    let fact = |k: u32| from_bigint(factorial(k as u64));
    let lhs = bracket(&spec(g, 2, 1, 3 * g - 1))? / fact(3 * g - 1);
    let mut rhs = Rational::zero();
    for g1 in 1..=g {
        let g2 = g - g1;
        let a = bracket(&spec(g1, 2, 0, 3 * g1 - 1))? / fact(3 * g1 - 1);
        let b = bracket(&spec(g2, 3, 0, 3 * g2))? / fact(3 * g2);
        rhs += a * b;
    }
    rhs += bracket(&spec(g - 1, 5, 0, 3 * g - 1))? / (fact(3 * g - 1) * int(12));
    Ok((lhs, rhs))
}

/// The `Z^{5g-5}` coefficient of `H_{g;∅}`, a polynomial in `Z` for `g ≥ 2`,
/// fitted from oracle values.
pub fn hg_empty_leading(g: u32, max_nodes: u128) -> Result<Rational> {
    match g {
        0 => return Err(Error::Unsupported("H_{0;∅} is given by the genus-zero closed form; it has no leading Z-term".into())),
        1 => return Err(Error::Unsupported("H_{1;∅} is not in the algebra".into())),
        _ => {}
    }
    let fit = fit_phi_from_oracle(g, &Partition::empty(), DEFAULT_PHI_SLACK, max_nodes)?;
    // (1+Z)^{2g-2} φ(Z): the top coefficient is φ's
    Ok(fit.phi.poly().coeff(3 * g as usize - 3))
}

#[cfg(test)]
mod tests;
