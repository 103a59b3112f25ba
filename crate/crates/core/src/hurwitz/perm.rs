use num_bigint::BigInt;

use super::Partition;
use crate::error::{Error, Result};
use crate::rational::factorial;

/// A permutation of `{0..n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("{image:?} is not a bijection")));
            }
        }
        Ok(Self { image })
    }

    /// The transposition of `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(a, b);
        p
    }

    /// Cycles given as lists of points, e.g. `[[0, 1, 2]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                image[x] = c[(i + 1) % c.len()];
            }
        }
        Self::from_image(image)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `(self · rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            image: rhs.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.n()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Self { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.image[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.image[x];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

/// Cycle type, fixed points included as parts equal to 1.
pub fn cycle_type(p: &Permutation) -> Partition {
    Partition::new(p.cycles().iter().map(|c| c.len() as u32).collect())
}

/// `n! / Π i^{a_i} a_i!` for a partition of `n` with multiplicities `a_i`.
pub fn conjugacy_class_size(lambda: &Partition) -> BigInt {
    let den = lambda
        .multiplicities()
        .iter()
        .fold(BigInt::from(1), |acc, &(part, a)| {
            acc * num_traits::pow(BigInt::from(part), a) * factorial(a as u64)
        });
    factorial(lambda.m() as u64) / den
}

/// Every permutation of `{0..n-1}` with the given cycle type, padded with
/// fixed points, each exactly once. Each cycle is generated starting at its
/// smallest point.
pub fn class_elements(n: usize, lambda: &Partition) -> Result<Vec<Permutation>> {
    let m = lambda.m() as usize;
    if m > n {
        return Err(Error::domain(format!("{lambda} does not fit in S_{n}")));
    }
    let mut lengths: Vec<usize> = lambda.parts().iter().map(|&b| b as usize).collect();
    lengths.extend(std::iter::repeat_n(1, n - m));
    lengths.sort_unstable();
    lengths.dedup();
    let mut remaining: Vec<(usize, usize)> = lengths
        .iter()
        .map(|&l| {
            let count = lambda.parts().iter().filter(|&&b| b as usize == l).count()
                + if l == 1 { n - m } else { 0 };
            (l, count)
        })
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    fill(&mut image, &mut remaining, &mut out);
    Ok(out)
}

fn fill(image: &mut Vec<usize>, remaining: &mut [(usize, usize)], out: &mut Vec<Permutation>) {
    let Some(x) = image.iter().position(|&v| v == usize::MAX) else {
        out.push(Permutation { image: image.clone() });
        return;
    };
    for li in 0..remaining.len() {
        let (len, count) = remaining[li];
        if count == 0 {
            continue;
        }
        remaining[li].1 -= 1;
        let mut cycle = vec![x];
        extend_cycle(image, &mut cycle, len, remaining, out);
        remaining[li].1 += 1;
    }
}

fn extend_cycle(
    image: &mut Vec<usize>,
    cycle: &mut Vec<usize>,
    len: usize,
    remaining: &mut [(usize, usize)],
    out: &mut Vec<Permutation>,
) {
    if cycle.len() == len {
        for (i, &p) in cycle.iter().enumerate() {
            image[p] = cycle[(i + 1) % len];
        }
        fill(image, remaining, out);
        for &p in cycle.iter() {
            image[p] = usize::MAX;
        }
        return;
    }
    let start = cycle[0];
    for y in start + 1..image.len() {
        if image[y] != usize::MAX || cycle.contains(&y) {
            continue;
        }
        cycle.push(y);
        extend_cycle(image, cycle, len, remaining, out);
        cycle.pop();
    }
}
