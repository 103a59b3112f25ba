//! Counting marked ramified coverings of the sphere through their monodromy.
//!
//! A covering with `n` sheets, ramification types `μ_1, ..., μ_k` and `c`
//! further simple branch points corresponds to a tuple
//! `(σ_1, ..., σ_k, τ_1, ..., τ_c)` in `S_n` with product the identity,
//! `σ_j` of cycle type `μ_j` (parts equal to one become fixed points) and
//! `τ_i` transpositions; connected coverings give transitive tuples. The
//! parts of `μ_j` equal to one are *marked* fixed points of `σ_j`, so each
//! tuple carries the weight `Π_j C(fix(σ_j), a_1(μ_j))`. Dividing by `n!`
//! weights each isomorphism class by one over its automorphism count.

mod characters;
mod dfs;
mod perm;
mod transfer;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

pub use characters::{count_identity_factorizations, CharacterTable, DEFAULT_CHARACTER_LIMIT};
pub use dfs::{count_tuples_dfs, count_tuples_dfs_unreduced};
pub use perm::{class_elements, conjugacy_class_size, cycle_type, Permutation};
pub use transfer::{count_tuples, type_count_bound, work_estimate, Target};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, from_bigint, Rational};

/// Default limit on the transfer work estimate (type bound × transitions).
pub const DEFAULT_MAX_NODES: u128 = 1_000_000_000;

/// A partition `b_1 ≥ ... ≥ b_p`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&b| b > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `"3,1,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let b: u32 = item
                .parse()
                .map_err(|_| Error::domain(format!("bad part {item:?} in partition {s:?}")))?;
            if b == 0 {
                return Err(Error::domain("parts must be positive"));
            }
            parts.push(b);
        }
        Ok(Self::new(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Size `Σ b_i`.
    pub fn m(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn p(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Degeneracy `Σ (b_i - 1)`.
    pub fn r(&self) -> u32 {
        self.m() - self.p()
    }

    /// Number of parts equal to one.
    pub fn a1(&self) -> u32 {
        self.parts.iter().filter(|&&b| b == 1).count() as u32
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &b in self.parts.iter().rev() {
            match out.last_mut() {
                Some((x, c)) if *x == b => *c += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// `|Aut| = Π a_i!`.
    pub fn aut(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .fold(BigInt::one(), |acc, &(_, a)| acc * factorial(a as u64))
    }

    /// The parts that are at least two.
    pub fn nontrivial(&self) -> Self {
        Self {
            parts: self.parts.iter().copied().filter(|&b| b >= 2).collect(),
        }
    }

    /// Padded with ones to size `n` (`n ≥ m`).
    pub fn padded(&self, n: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, n.saturating_sub(self.m() as usize)));
        Self { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for b in (1..=max.min(rest)).rev() {
            cur.push(b);
            go(rest - b, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// A covering problem: genus, sheet count and ramification types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringSpec {
    pub g: u32,
    pub n: u32,
    pub mus: Vec<Partition>,
}

impl CoveringSpec {
    /// Requires `n ≥ 1`, every `m_j ≤ n` and `c ≥ 0`.
    pub fn new(g: u32, n: u32, mus: Vec<Partition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a covering needs at least one sheet"));
        }
        for mu in &mus {
            if mu.m() > n {
                return Err(Error::domain(format!("{mu} has size {} > n = {n}", mu.m())));
            }
        }
        let spec = Self { g, n, mus };
        let c = spec.simple_points_signed();
        if c < 0 {
            return Err(Error::domain(format!(
                "c(n) = 2n + 2g - 2 - Σr = {c} < 0 for g = {g}, n = {n}"
            )));
        }
        Ok(spec)
    }

    fn simple_points_signed(&self) -> i64 {
        let r: i64 = self.mus.iter().map(|m| m.r() as i64).sum();
        2 * self.n as i64 + 2 * self.g as i64 - 2 - r
    }

    /// `c(n) = 2n + 2g - 2 - Σ r_j`.
    pub fn c(&self) -> u64 {
        self.simple_points_signed() as u64
    }

    /// `Π_j C(fix(σ_j), a_1(μ_j))`: choices of marked fixed points.
    pub fn marking_weight(&self) -> BigInt {
        self.mus.iter().fold(BigInt::one(), |acc, mu| {
            let fix = (self.n - (mu.m() - mu.a1())) as u64;
            acc * binomial(fix, mu.a1() as u64)
        })
    }
}

/// A Hurwitz number with its raw ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub value: Rational,
    /// Unweighted tuple count.
    pub tuples: BigUint,
    pub marking_weight: BigInt,
    pub c: u64,
}

impl Serialize for OracleCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("OracleCount", 4)?;
        s.serialize_field("value", &self.value.to_string())?;
        s.serialize_field("tuples", &self.tuples.to_string())?;
        s.serialize_field("marking_weight", &self.marking_weight.to_string())?;
        s.serialize_field("c", &self.c)?;
        s.end()
    }
}

fn finish(spec: &CoveringSpec, tuples: BigUint) -> OracleCount {
    let w = spec.marking_weight();
    let value = from_bigint(BigInt::from(tuples.clone()) * &w) / from_bigint(factorial(spec.n as u64));
    OracleCount {
        value,
        tuples,
        marking_weight: w,
        c: spec.c(),
    }
}

/// Connected marked Hurwitz number `h_{g,n;μ_1,...,μ_k}`.
pub fn hurwitz_connected(spec: &CoveringSpec) -> Result<Rational> {
    Ok(hurwitz_connected_with(spec, DEFAULT_MAX_NODES)?.value)
}

pub fn hurwitz_connected_with(spec: &CoveringSpec, max_nodes: u128) -> Result<OracleCount> {
    let tuples = count_tuples(spec.n as usize, &spec.mus, spec.c(), Target::Connected, max_nodes)?;
    Ok(finish(spec, tuples))
}

/// The same count without the transitivity condition, by the Frobenius
/// character formula.
pub fn hurwitz_disconnected(spec: &CoveringSpec) -> Result<Rational> {
    hurwitz_disconnected_with(spec, DEFAULT_CHARACTER_LIMIT)
}

pub fn hurwitz_disconnected_with(spec: &CoveringSpec, limit: usize) -> Result<Rational> {
    let tuples = count_identity_factorizations(spec.n as usize, &spec.mus, spec.c(), limit)?;
    Ok(tuples * from_bigint(spec.marking_weight()) / from_bigint(factorial(spec.n as u64)))
}

/// Disconnected count by the transfer method, a second route for tests
/// beyond the character limit.
pub fn hurwitz_disconnected_transfer(spec: &CoveringSpec, max_nodes: u128) -> Result<OracleCount> {
    let tuples = count_tuples(spec.n as usize, &spec.mus, spec.c(), Target::Any, max_nodes)?;
    Ok(finish(spec, tuples))
}

/// Connected count by direct depth-first search; small degrees only.
pub fn hurwitz_connected_dfs(spec: &CoveringSpec, max_nodes: u128) -> Result<OracleCount> {
    let tuples = count_tuples_dfs(spec.n as usize, &spec.mus, spec.c(), Target::Connected, max_nodes)?;
    Ok(finish(spec, tuples))
}
