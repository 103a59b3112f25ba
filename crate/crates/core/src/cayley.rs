//! Labeled (Cayley) trees and the distance statistics between two marked
//! vertices.
//!
//! `m_{n,k}` is the sum of `l^k` and `p_{n,k}` the sum of `C(l, k)` over all
//! trees on `{1..n}` and ordered pairs `(a, b)`, `a ≠ b`, where `l` is the
//! length of the path from `a` to `b`. Both come from one histogram of path
//! lengths, accumulated over a Prüfer-sequence enumeration.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::binomial;

/// Largest vertex count enumerated unless a caller raises it.
pub const DEFAULT_TREE_LIMIT: usize = 8;

/// A tree on the vertices `1..=n`; edges are stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    /// Checks that the `n - 1` edges span `{1..n}` without a cycle.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a tree needs at least one vertex"));
        }
        if edges.len() != n - 1 {
            return Err(Error::domain(format!("{} edges for {n} vertices", edges.len())));
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(Error::domain(format!("bad edge ({u}, {v}) on {n} vertices")));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::domain(format!("edge ({u}, {v}) closes a cycle")));
            }
            parent[ru] = rv;
            norm.push((u.min(v), u.max(v)));
        }
        // n - 1 edges and no cycle: connected.
        Ok(Self { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Path length between two vertices.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.distances_from(a, &self.adjacency())[b]
    }

    fn distances_from(&self, a: usize, adj: &[Vec<usize>]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n + 1];
        let mut queue = std::collections::VecDeque::from([a]);
        dist[a] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// `hist[l]` += number of ordered pairs `(a, b)`, `a ≠ b`, at distance `l`.
    fn add_distance_histogram(&self, hist: &mut [u64]) {
        let adj = self.adjacency();
        for a in 1..=self.n {
            let dist = self.distances_from(a, &adj);
            for &d in &dist[1..] {
                if d > 0 {
                    hist[d] += 1;
                }
            }
        }
    }
}

/// Decode a Prüfer sequence over `{1..n}` of length `n - 2`.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<LabeledTree> {
    if n < 2 {
        return if seq.is_empty() && n == 1 {
            LabeledTree::new(1, Vec::new())
        } else {
            Err(Error::domain("a Prüfer sequence needs n ≥ 2"))
        };
    }
    if seq.len() != n - 2 || seq.iter().any(|&s| s == 0 || s > n) {
        return Err(Error::domain(format!("not a Prüfer sequence for n = {n}")));
    }
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut rest = (1..=n).filter(|&v| degree[v] == 1);
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((u, v));
    LabeledTree::new(n, edges)
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if n > limit {
        let count = (n as u128).pow(n.saturating_sub(2) as u32);
        return Err(Error::Budget {
            what: format!("enumeration of the {count} labeled trees on {n} vertices (limit n ≤ {limit})"),
            estimate: count,
            budget: (limit as u128).pow(limit.saturating_sub(2) as u32),
        });
    }
    Ok(())
}

/// Every labeled tree on `{1..n}` exactly once, in Prüfer-sequence order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    enumerate_trees_with_limit(n, DEFAULT_TREE_LIMIT)
}

pub fn enumerate_trees_with_limit(n: usize, limit: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    check_limit(n, limit)?;
    Ok(PruferSequences::new(n, Vec::new()).map(move |s| prufer_decode(n, &s).expect("valid sequence")))
}

/// Odometer over `{1..n}^{n-2}` with a fixed prefix.
struct PruferSequences {
    n: usize,
    fixed: usize,
    current: Option<Vec<usize>>,
}

impl PruferSequences {
    fn new(n: usize, prefix: Vec<usize>) -> Self {
        let len = n.saturating_sub(2);
        let fixed = prefix.len();
        let mut seq = prefix;
        seq.resize(len, 1);
        Self { n, fixed, current: Some(seq) }
    }
}

impl Iterator for PruferSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == self.fixed {
                break;
            }
            i -= 1;
            if next[i] < self.n {
                next[i] += 1;
                self.current = Some(next);
                break;
            }
            next[i] = 1;
        }
        Some(out)
    }
}

/// `hist[l]` = number of (tree, ordered pair) configurations at distance
/// `l`, summed over all trees on `{1..n}`.
pub fn distance_histogram(n: usize) -> Result<Vec<u64>> {
    distance_histogram_with_limit(n, DEFAULT_TREE_LIMIT)
}

pub fn distance_histogram_with_limit(n: usize, limit: usize) -> Result<Vec<u64>> {
    check_limit(n, limit)?;
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    if n < 4 {
        let mut hist = vec![0u64; n];
        for t in enumerate_trees_with_limit(n, limit)? {
            t.add_distance_histogram(&mut hist);
        }
        return Ok(hist);
    }
    // Blocks keyed by the first Prüfer symbol.
    Ok((1..=n)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n];
            for s in PruferSequences::new(n, vec![first]) {
                prufer_decode(n, &s).expect("valid sequence").add_distance_histogram(&mut hist);
            }
            hist
        })
        .reduce(|| vec![0u64; n], merge))
}

/// `p_{n,k} = Σ_T Σ_{a≠b} C(l_T(a,b), k)` by enumeration.
pub fn dendrology_p(n: usize, k: u32) -> Result<BigInt> {
    check_stat_args(n, k)?;
    Ok(p_from_histogram(&distance_histogram(n)?, k))
}

/// `m_{n,k} = Σ_T Σ_{a≠b} l_T(a,b)^k` by enumeration.
pub fn dendrology_m(n: usize, k: u32) -> Result<BigInt> {
    check_stat_args(n, k)?;
    Ok(m_from_histogram(&distance_histogram(n)?, k))
}

/// `m_{n,k} = Σ_j S(k, j) j! p_{n,j}`, from the `p` values alone.
pub fn dendrology_m_via_stirling(n: usize, k: u32) -> Result<BigInt> {
    check_stat_args(n, k)?;
    let hist = distance_histogram(n)?;
    Ok((1..=k).fold(BigInt::zero(), |acc, j| {
        acc + stirling2(k, j) * crate::rational::factorial(j as u64) * p_from_histogram(&hist, j)
    }))
}

fn check_stat_args(n: usize, k: u32) -> Result<()> {
    if n < 2 || k < 1 {
        return Err(Error::domain(format!("need n ≥ 2 and k ≥ 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

pub fn p_from_histogram(hist: &[u64], k: u32) -> BigInt {
    hist.iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (l, &c)| acc + binomial(l as u64, k as u64) * c)
}

pub fn m_from_histogram(hist: &[u64], k: u32) -> BigInt {
    hist.iter().enumerate().fold(BigInt::zero(), |acc, (l, &c)| {
        acc + num_traits::pow(BigInt::from(l), k as usize) * c
    })
}

/// Stirling numbers of the second kind `S(k, j)`.
pub fn stirling2(k: u32, j: u32) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for i in 1..=k as usize {
        let mut next = vec![BigInt::zero(); i + 1];
        for (t, v) in row.iter().enumerate() {
            next[t] += v * BigInt::from(t);
            next[t + 1] += v;
        }
        if i == 1 {
            next[0] = BigInt::zero();
        }
        row = next;
    }
    row.get(j as usize).cloned().unwrap_or_default()
}

/// Rooted labeled trees on `{1..n}`: each tree with a chosen root.
pub fn rooted_tree_count(n: usize) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_trees(n)?.count() * n))
}
