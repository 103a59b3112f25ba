//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule, and the
//! Frobenius count of factorizations of the identity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::perm::conjugacy_class_size;
use super::{partitions_of, Partition};
use crate::error::{Error, Result};
use crate::rational::{factorial, from_bigint, Rational};

/// Largest degree for which the character route runs unless raised.
pub const DEFAULT_CHARACTER_LIMIT: usize = 10;

/// Memoised `χ^λ(ρ)` evaluations.
#[derive(Default)]
pub struct CharacterTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ` at the class of cycle type `ρ` (both partitions of the same
    /// `n`; fixed points included in `ρ`).
    pub fn chi(&mut self, lambda: &Partition, rho: &Partition) -> Result<BigInt> {
        if lambda.m() != rho.m() {
            return Err(Error::domain(format!("{lambda} and {rho} have different sizes")));
        }
        Ok(self.eval(lambda.parts().to_vec(), rho.parts().to_vec()))
    }

    fn eval(&mut self, lambda: Vec<u32>, rho: Vec<u32>) -> BigInt {
        if rho.is_empty() {
            return BigInt::one();
        }
        let key = (lambda, rho);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (lambda, rho) = key;
        let r = rho[0] as i64;
        let len = lambda.len() as i64;
        let beta: Vec<i64> = lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l as i64 + len - 1 - i as i64)
            .collect();
        let mut total = BigInt::zero();
        for (i, &b) in beta.iter().enumerate() {
            let nb = b - r;
            if nb < 0 || beta.contains(&nb) {
                continue;
            }
            // Removing a rim hook: its height is the number of beta numbers
            // strictly between the new and old position.
            let height = beta.iter().filter(|&&x| nb < x && x < b).count();
            let mut next = beta.clone();
            next[i] = nb;
            let v = self.eval(from_beta(next), rho[1..].to_vec());
            if height % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert((lambda, rho), total.clone());
        total
    }

    /// Dimension of the irreducible representation `λ`.
    pub fn dimension(&mut self, lambda: &Partition) -> BigInt {
        let rho = vec![1; lambda.m() as usize];
        self.eval(lambda.parts().to_vec(), rho)
    }
}

fn from_beta(mut beta: Vec<i64>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len() as i64;
    beta.iter()
        .enumerate()
        .map(|(i, &b)| (b - (len - 1 - i as i64)) as u32)
        .filter(|&p| p > 0)
        .collect()
}

/// Number of tuples with factor `j` in the class of `classes[j]` (padded
/// with fixed points), `c` further transpositions and product the identity:
///
/// `Π|C_j| / n! · Σ_λ Π χ^λ(C_j) / dim(λ)^{m-2}`, `m` the number of factors.
pub fn count_identity_factorizations(
    n: usize,
    classes: &[Partition],
    c: u64,
    limit: usize,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    if n > limit {
        return Err(Error::Budget {
            what: format!("character table of S_{n} (limit n ≤ {limit})"),
            estimate: partitions_of(n).len() as u128,
            budget: partitions_of(limit).len() as u128,
        });
    }
    let mut factors: Vec<Partition> = Vec::new();
    for p in classes {
        let p = p.nontrivial();
        if p.m() as usize > n {
            return Err(Error::domain(format!("{p} does not fit in S_{n}")));
        }
        if p.r() > 0 {
            factors.push(p.padded(n));
        }
    }
    let transposition = (n >= 2).then(|| Partition::new(vec![2]).padded(n));
    if c > 0 && transposition.is_none() {
        return Ok(Rational::zero());
    }
    let m = factors.len() as i64 + c as i64;
    let mut table = CharacterTable::new();
    let mut sum = Rational::zero();
    for lambda in partitions_of(n) {
        let dim = from_bigint(table.dimension(&lambda));
        let mut term = Rational::one();
        for f in &factors {
            term *= from_bigint(table.chi(&lambda, f)?);
        }
        if let Some(t) = &transposition {
            term *= num_traits::pow(from_bigint(table.chi(&lambda, t)?), c as usize);
        }
        let e = m - 2;
        term = if e >= 0 {
            term / num_traits::pow(dim, e as usize)
        } else {
            term * num_traits::pow(dim, (-e) as usize)
        };
        sum += term;
    }
    let sizes = factors
        .iter()
        .fold(BigInt::one(), |acc, f| acc * conjugacy_class_size(f));
    let t_size = if n >= 2 { BigInt::from(n * (n - 1) / 2) } else { BigInt::zero() };
    let sizes = sizes * num_traits::pow(t_size, c as usize);
    Ok(sum * from_bigint(sizes) / from_bigint(factorial(n as u64)))
}
