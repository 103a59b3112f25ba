//! Generating series `H_{g;μ_1,...,μ_k}(q) = Σ_n h_{g,n;μ_1,...,μ_k} q^n / c(n)!`.
//!
//! For one partition `μ = (b_1, ..., b_p)` of size `m` the series has the
//! normal form
//!
//! `H_{g;μ} = (1/|Aut μ|) Π b_i^{b_i}/b_i! · Y^m (1+Z)^{2g-2+p} φ(Z)`
//!
//! with a polynomial `φ` of degree at most `3g - 3 + p`. Here `φ` is never
//! integrated: [`fit_phi`] solves for its coefficients from oracle values,
//! and the surplus values check the normal form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{coefficient_at, identify_in_a, seq_a, Identification, LaurentPolyX, ZPoly, DEFAULT_SLACK};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_connected_with, CoveringSpec, Partition, DEFAULT_MAX_NODES};
use crate::linalg::{solve_exact, LinearSystem};
use crate::rational::{factorial, from_bigint, int, pow_signed, Rational};
use crate::series::TruncatedSeries;

/// Surplus data points [`fit_phi_from_oracle`] asks for beyond the unknowns.
pub const DEFAULT_PHI_SLACK: usize = 3;

/// Genus-zero closed form
/// `h_{0,n;μ} = (2n-2-r)!/|Aut μ| · Π b_i^{b_i}/b_i! · n^{n-r-3}/(n-p-r)!`,
/// valid for `n ≥ p + r`.
pub fn h0_closed(n: u32, mu: &Partition) -> Result<Rational> {
    let (p, r) = (mu.p(), mu.r());
    if n < p + r || n == 0 {
        return Err(Error::domain(format!("h0_closed needs n ≥ p + r = {}, got n = {n}", p + r)));
    }
    let n64 = n as i64;
    let top = 2 * n64 - 2 - r as i64;
    if top < 0 {
        return Err(Error::domain(format!("no simple branch points left for n = {n}, {mu}")));
    }
    let value = from_bigint(factorial(top as u64)) / from_bigint(mu.aut())
        * prefactor_product(mu)
        * pow_signed(n64, n64 - r as i64 - 3)?
        / from_bigint(factorial((n - p - r) as u64));
    Ok(value)
}

/// `Π b_i^{b_i} / b_i!`.
fn prefactor_product(mu: &Partition) -> Rational {
    mu.parts().iter().fold(Rational::one(), |acc, &b| {
        acc * from_bigint(num_traits::pow(BigInt::from(b), b as usize)) / from_bigint(factorial(b as u64))
    })
}

/// `(1/|Aut μ|) Π b_i^{b_i}/b_i!`.
pub fn normal_form_prefactor(mu: &Partition) -> Rational {
    prefactor_product(mu) / from_bigint(mu.aut())
}

/// `Σ h_{1,n;∅}/(2n)! q^n = (1/24) Σ (A_n/n) q^n/n!`. Not an element of the
/// algebra: the one exception among these series.
pub fn h1_empty_series(order: usize) -> TruncatedSeries {
    let a = seq_a(order);
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        from_bigint(a[n].clone()) / (int(24 * n as i64) * from_bigint(factorial(n as u64)))
    })
}

/// One marked sheet: `(1/24) Σ A_n q^n/n! = Z^2/24`.
pub fn h1_marked_series(order: usize) -> TruncatedSeries {
    let a = seq_a(order);
    TruncatedSeries::from_fn(order, |n| from_bigint(a[n].clone()) / (int(24) * from_bigint(factorial(n as u64))))
}

/// Largest degree of `φ` accepted for `(g, μ)`.
///
/// `max(3g - 3 + p, 0)`, except that genus zero with one or two parts gets
/// degree one: there `H_{0;μ}` still has the normal form but `φ` can be
/// linear (`μ = (1)` gives `φ = 1 + Z/2`).
pub fn phi_degree_bound(g: u32, mu: &Partition) -> usize {
    let p = mu.p() as i64;
    let stable = 3 * g as i64 - 3 + p;
    if g == 0 && (1..=2).contains(&p) {
        return 1;
    }
    stable.max(0) as usize
}

/// `2g - 2 + p`.
pub fn euler_exponent(g: u32, mu: &Partition) -> i64 {
    2 * g as i64 - 2 + mu.p() as i64
}

/// The polynomial `φ` of the normal form for `(g, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPolynomial {
    pub g: u32,
    pub mu: Partition,
    poly: ZPoly,
}

impl PhiPolynomial {
    pub fn new(g: u32, mu: Partition, poly: ZPoly) -> Result<Self> {
        let bound = phi_degree_bound(g, &mu);
        if poly.degree().is_some_and(|d| d > bound) {
            return Err(Error::domain(format!(
                "φ of degree {} exceeds the bound {bound} for g = {g}, μ = {mu}",
                poly.degree().unwrap()
            )));
        }
        Ok(Self { g, mu, poly })
    }

    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    /// `φ(0)`.
    pub fn constant_term(&self) -> Rational {
        self.poly.coeff(0)
    }

    /// The right-hand side of the normal form as an element of the algebra.
    pub fn element(&self) -> LaurentPolyX {
        normal_form_basis(self.g, &self.mu, self.poly.coeffs().len())
            .iter()
            .zip(self.poly.coeffs())
            .fold(LaurentPolyX::zero(), |acc, (e, c)| &acc + &e.scale(c))
    }
}

impl Serialize for PhiPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PhiPolynomial", 3)?;
        s.serialize_field("g", &self.g)?;
        s.serialize_field("mu", &self.mu)?;
        let coeffs: Vec<String> = self.poly.coeffs().iter().map(|c| c.to_string()).collect();
        s.serialize_field("coefficients", &coeffs)?;
        s.end()
    }
}

/// `prefactor · Y^m (1+Z)^{2g-2+p} Z^l` for `l < count`.
fn normal_form_basis(g: u32, mu: &Partition, count: usize) -> Vec<LaurentPolyX> {
    let y_m = LaurentPolyX::y().pow(mu.m() as i64).expect("non-negative power");
    let x_pow = LaurentPolyX::x_pow(-euler_exponent(g, mu));
    let head = (&y_m * &x_pow).scale(&normal_form_prefactor(mu));
    let z = LaurentPolyX::z();
    let mut out = Vec::with_capacity(count);
    let mut cur = head;
    for _ in 0..count {
        let next = &cur * &z;
        out.push(cur);
        cur = next;
    }
    out
}

/// Series of the normal form with the given `φ`.
pub fn kazarian_series(phi: &PhiPolynomial, order: usize) -> TruncatedSeries {
    phi.element().to_series(order)
}

/// Outcome of [`fit_phi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFit {
    pub phi: PhiPolynomial,
    /// Data points beyond the unknowns, all matched exactly.
    pub surplus: usize,
}

/// Solve for `φ` from values `(n, h_{g,n;μ})`.
pub fn fit_phi(g: u32, mu: &Partition, data: &[(u32, Rational)]) -> Result<PhiFit> {
    let unknowns = phi_degree_bound(g, mu) + 1;
    if data.len() < unknowns {
        return Err(Error::Underdetermined {
            rank: data.len(),
            unknowns,
        });
    }
    let basis = normal_form_basis(g, mu, unknowns);
    let mut matrix = Vec::with_capacity(data.len());
    let mut rhs = Vec::with_capacity(data.len());
    for (n, h) in data {
        let spec = CoveringSpec::new(g, *n, vec![mu.clone()])?;
        matrix.push(basis.iter().map(|e| coefficient_at(e, *n as u64)).collect());
        rhs.push(h / from_bigint(factorial(spec.c())));
    }
    let coeffs = solve_exact(&LinearSystem::new(matrix, rhs)?).map_err(|e| match e {
        Error::Inconsistent(_) => Error::Inconsistent(format!(
            "no φ of degree ≤ {} reproduces the data for g = {g}, μ = {mu}",
            unknowns - 1
        )),
        other => other,
    })?;
    Ok(PhiFit {
        phi: PhiPolynomial::new(g, mu.clone(), ZPoly::new(coeffs))?,
        surplus: data.len() - unknowns,
    })
}

/// Smallest `n` at which the normal form's stability condition
/// `2 - 2g - (n - r) < 0` holds and `μ` fits.
pub fn stable_n_min(g: u32, mu: &Partition) -> u32 {
    let stable = (mu.r() as i64 + 3 - 2 * g as i64).max(1) as u32;
    stable.max(mu.m()).max(1)
}

/// Oracle values `(n, h_{g,n;μ})` for consecutive `n` from `n_start`.
pub fn oracle_values(g: u32, mus: &[Partition], n_start: u32, count: usize, max_nodes: u128) -> Result<Vec<(u32, Rational)>> {
    (n_start..n_start + count as u32)
        .map(|n| {
            let spec = CoveringSpec::new(g, n, mus.to_vec())?;
            Ok((n, hurwitz_connected_with(&spec, max_nodes)?.value))
        })
        .collect()
}

/// [`fit_phi`] on oracle values from the stable range, with `slack` surplus
/// points.
pub fn fit_phi_from_oracle(g: u32, mu: &Partition, slack: usize, max_nodes: u128) -> Result<PhiFit> {
    let count = phi_degree_bound(g, mu) + 1 + slack;
    let data = oracle_values(g, std::slice::from_ref(mu), stable_n_min(g, mu), count, max_nodes)?;
    fit_phi(g, mu, &data)
}

/// `max(1, max_j m_j)`: the first sheet count at which every `μ_j` fits.
pub fn n_min(mus: &[Partition]) -> u32 {
    mus.iter().map(Partition::m).max().unwrap_or(0).max(1)
}

/// A default identification window for `H_{g;μ_1..μ_k}`.
///
/// For one partition the normal form has `X`-support in
/// `[-(5g - 5 + 2p), m]`; the window adds one power on each side. Several
/// partitions widen it by their total degeneracy.
pub fn default_window(g: u32, mus: &[Partition]) -> (i64, i64) {
    let p: i64 = mus.iter().map(|m| m.p() as i64).sum();
    let m: i64 = mus.iter().map(|m| m.m() as i64).sum();
    let r: i64 = mus.iter().map(|m| m.r() as i64).sum();
    let extra = if mus.len() > 1 { r } else { 0 };
    let low = -(5 * g as i64 - 5 + 2 * p).max(0) - extra;
    // a negative Euler exponent contributes positive powers of X
    let euler = 2 * g as i64 - 2 + p;
    (low - 1, m + 1 + extra + (-euler).max(0))
}

/// A generating series with the result of identifying it in the algebra.
#[derive(Clone, Debug)]
pub struct HSeries {
    pub g: u32,
    pub mus: Vec<Partition>,
    pub series: TruncatedSeries,
    pub window: (i64, i64),
    pub identification: std::result::Result<Identification, Error>,
}

/// `H_{g;μ_1..μ_k}` to the given order from oracle values, and its
/// identification over `window`.
pub fn h_series(g: u32, mus: &[Partition], order: usize, window: (i64, i64), max_nodes: u128) -> Result<HSeries> {
    let start = n_min(mus);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for n in start..=order as u32 {
        let Ok(spec) = CoveringSpec::new(g, n, mus.to_vec()) else {
            continue; // c(n) < 0: no such coverings
        };
        let h = hurwitz_connected_with(&spec, max_nodes)?.value;
        coeffs[n as usize] = h / from_bigint(factorial(spec.c()));
    }
    let series = TruncatedSeries::from_coeffs(coeffs)?;
    let identification = identify_in_a(&series, window.0, window.1, DEFAULT_SLACK);
    Ok(HSeries {
        g,
        mus: mus.to_vec(),
        series,
        window,
        identification,
    })
}

/// [`h_series`] with the default window and budget.
pub fn h_series_default(g: u32, mus: &[Partition], order: usize) -> Result<HSeries> {
    h_series(g, mus, order, default_window(g, mus), DEFAULT_MAX_NODES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{series_y, series_z};
    use crate::hurwitz::{hurwitz_connected, partitions_of};
    use crate::rational::frac;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn genus_zero_examples() {
        assert_eq!(h0_closed(3, &Partition::empty()).unwrap(), int(4));
        assert_eq!(h0_closed(3, &part(&[1, 1, 1])).unwrap(), int(4));
        assert_eq!(h0_closed(2, &Partition::empty()).unwrap(), frac(1, 2));
        assert!(h0_closed(2, &part(&[2, 2])).is_err());
        let oracle = hurwitz_connected(&CoveringSpec::new(0, 4, vec![part(&[2])]).unwrap()).unwrap();
        assert_eq!(h0_closed(4, &part(&[2])).unwrap(), oracle);
    }

    #[test]
    fn genus_zero_matches_oracle() {
        for m in 0..=4usize {
            for mu in partitions_of(m) {
                for n in 1..=6u32 {
                    let Ok(spec) = CoveringSpec::new(0, n, vec![mu.clone()]) else { continue };
                    let Ok(closed) = h0_closed(n, &mu) else { continue };
                    assert_eq!(hurwitz_connected(&spec).unwrap(), closed, "n = {n}, μ = {mu}");
                }
            }
        }
    }

    #[test]
    fn genus_one_empty() {
        let s = h1_empty_series(6);
        assert_eq!(*s.coeff(1), int(0));
        assert_eq!(*s.coeff(2), frac(1, 48));
        for n in 1..=5u32 {
            let h = hurwitz_connected(&CoveringSpec::new(1, n, vec![]).unwrap()).unwrap();
            assert_eq!(h, s.coeff(n as usize) * from_bigint(factorial(2 * n as u64)), "n = {n}");
        }
        assert!(matches!(identify_in_a(&h1_empty_series(20), -3, 3, 5), Err(Error::Inconsistent(_))));
        let z2 = series_z(20).pow(2).scale(&frac(1, 24));
        assert_eq!(h1_marked_series(20), z2);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(phi_degree_bound(0, &part(&[1])), 1);
        assert_eq!(phi_degree_bound(0, &part(&[2, 1])), 1);
        assert_eq!(phi_degree_bound(0, &part(&[1, 1, 1])), 0);
        assert_eq!(phi_degree_bound(0, &part(&[1, 1, 1, 1])), 1);
        assert_eq!(phi_degree_bound(1, &part(&[1])), 1);
        assert_eq!(phi_degree_bound(2, &Partition::empty()), 3);
        assert!(PhiPolynomial::new(0, part(&[1, 1, 1]), ZPoly::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn normal_form_series() {
        let phi = PhiPolynomial::new(0, part(&[1]), ZPoly::from_ints(&[1])).unwrap();
        // Y (1+Z)^{-1} = Y - Y^2
        let y = series_y(12);
        assert_eq!(kazarian_series(&phi, 12), &y - &y.pow(2));
        let zero = PhiPolynomial::new(3, part(&[2]), ZPoly::zero()).unwrap();
        assert!(kazarian_series(&zero, 10).is_zero());
    }

    #[test]
    fn genus_zero_one_part() {
        // H_{0;(b)} from the closed form gives φ = 1/b^2 + Z/(b^2 (b+1)).
        for b in 1..=3u32 {
            let fit = fit_phi_from_oracle(0, &part(&[b]), 3, DEFAULT_MAX_NODES).unwrap();
            let bb = (b * b) as i64;
            let expected = ZPoly::new(vec![frac(1, bb), frac(1, bb * (b as i64 + 1))]);
            assert_eq!(fit.phi.poly(), &expected, "b = {b}");
            assert_eq!(fit.surplus, 3);
        }
    }

    #[test]
    fn fitted_phi_matches_closed_forms() {
        for mu in [part(&[1, 1, 1]), part(&[2, 1]), part(&[1, 1]), part(&[2, 1, 1]), part(&[3, 1, 1])] {
            let fit = fit_phi_from_oracle(0, &mu, 2, DEFAULT_MAX_NODES).unwrap();
            let series = kazarian_series(&fit.phi, 10);
            for n in mu.m().max(1)..=10 {
                let Ok(closed) = h0_closed(n, &mu) else { continue };
                let c = 2 * n - 2 - mu.r();
                assert_eq!(*series.coeff(n as usize), closed / from_bigint(factorial(c as u64)), "μ = {mu}, n = {n}");
            }
            if mu.p() >= 3 {
                // φ(0) = m^{p-3}, the value of h0_closed at n = m
                assert_eq!(fit.phi.constant_term(), pow_signed(mu.m() as i64, mu.p() as i64 - 3).unwrap());
            }
        }
        let fit = fit_phi_from_oracle(0, &part(&[1, 1, 1]), 2, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(fit.phi.poly(), &ZPoly::from_ints(&[1]));
        let fit = fit_phi_from_oracle(0, &part(&[1, 1]), 2, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(fit.phi.poly(), &ZPoly::new(vec![frac(1, 2)]));
    }

    #[test]
    fn genus_one_fits() {
        let fit = fit_phi_from_oracle(1, &part(&[1]), 3, DEFAULT_MAX_NODES).unwrap();
        // H_{1;(1)} = Z^2/24 = Y (1+Z) · Z/24
        assert_eq!(fit.phi.poly(), &ZPoly::new(vec![int(0), frac(1, 24)]));
        assert_eq!(kazarian_series(&fit.phi, 15), h1_marked_series(15));
        let fit = fit_phi_from_oracle(1, &part(&[2]), 3, DEFAULT_MAX_NODES).unwrap();
        let series = kazarian_series(&fit.phi, 9);
        for n in 2..=9u32 {
            let spec = CoveringSpec::new(1, n, vec![part(&[2])]).unwrap();
            let h = hurwitz_connected(&spec).unwrap() / from_bigint(factorial(spec.c()));
            assert_eq!(*series.coeff(n as usize), h, "n = {n}");
        }
    }

    #[test]
    fn fit_errors() {
        let e = fit_phi(1, &part(&[1]), &[(1, int(0))]).unwrap_err();
        assert!(matches!(e, Error::Underdetermined { .. }));
        let data = [(3, int(1)), (4, int(1)), (5, int(1)), (6, int(1))];
        assert!(matches!(fit_phi(0, &part(&[1, 1, 1]), &data), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn series_membership() {
        let h = h_series_default(0, &[], 14).unwrap();
        let id = h.identification.unwrap();
        assert!(id.verified_orders >= 5);
        // n^{n-3}/n! = Y - 3Y^2/4 + Y^3/6
        let expected = LaurentPolyX::from_terms([(0, frac(5, 12)), (2, frac(-1, 4)), (3, frac(-1, 6))]);
        assert_eq!(id.element, expected);

        let h = h_series_default(1, &[], 14).unwrap();
        assert!(matches!(h.identification, Err(Error::Inconsistent(_))));
        let h = h_series_default(1, &[part(&[1])], 14).unwrap();
        let element = h.identification.unwrap().element;
        assert_eq!(element.to_series(14), series_z(14).pow(2).scale(&frac(1, 24)));
    }
}
