//! Direct depth-first enumeration of monodromy tuples.
//!
//! Exponential, kept as an independent check of the transfer count at small
//! degree. The first non-identity factor is fixed to one class
//! representative and the count scaled by the class size.

use num_bigint::BigUint;
use num_traits::Zero;

use super::perm::{class_elements, conjugacy_class_size, Permutation};
use super::transfer::Target;
use super::Partition;
use crate::error::{Error, Result};

struct Search<'a> {
    n: usize,
    target: Target,
    elements: &'a [Vec<Permutation>],
    c: usize,
    factors: Vec<Permutation>,
    nodes: u128,
    max_nodes: u128,
}

impl Search<'_> {
    fn transitive(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                x = parent[x];
            }
            x
        }
        for f in &self.factors {
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, f.apply(x)));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..self.n).all(|x| find(&mut parent, x) == root)
    }

    fn run(&mut self, product: &Permutation, step: usize, rest_r: usize) -> Result<u64> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Budget {
                what: format!("depth-first tuple search in S_{}", self.n),
                estimate: self.nodes,
                budget: self.max_nodes,
            });
        }
        // Cayley distance to the identity can drop by at most rest_r.
        if self.n - product.cycle_count() > rest_r {
            return Ok(0);
        }
        let total = self.elements.len() + self.c;
        if step == total {
            let ok = product.is_identity() && (self.target == Target::Any || self.transitive());
            return Ok(ok as u64);
        }
        let mut count = 0;
        if step < self.elements.len() {
            let all = self.elements;
            let r = self.n - all[step][0].cycle_count();
            for s in &all[step] {
                self.factors.push(s.clone());
                count += self.run(&product.compose(s), step + 1, rest_r - r)?;
                self.factors.pop();
            }
        } else {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    let t = Permutation::transposition(self.n, a, b);
                    self.factors.push(t.clone());
                    count += self.run(&product.compose(&t), step + 1, rest_r - 1)?;
                    self.factors.pop();
                }
            }
        }
        Ok(count)
    }
}

/// Same count as [`super::transfer::count_tuples`], by explicit search.
pub fn count_tuples_dfs(
    n: usize,
    classes: &[Partition],
    c: u64,
    target: Target,
    max_nodes: u128,
) -> Result<BigUint> {
    search(n, classes, c, target, max_nodes, true)
}

/// As [`count_tuples_dfs`] but enumerating the first class in full.
pub fn count_tuples_dfs_unreduced(
    n: usize,
    classes: &[Partition],
    c: u64,
    target: Target,
    max_nodes: u128,
) -> Result<BigUint> {
    search(n, classes, c, target, max_nodes, false)
}

fn search(
    n: usize,
    classes: &[Partition],
    c: u64,
    target: Target,
    max_nodes: u128,
    fix_first: bool,
) -> Result<BigUint> {
    let nontrivial: Vec<Partition> = classes
        .iter()
        .map(Partition::nontrivial)
        .filter(|p| p.r() > 0)
        .collect();
    let mut elements = Vec::new();
    let mut scale = BigUint::from(1u32);
    for (i, p) in nontrivial.iter().enumerate() {
        let all = class_elements(n, p)?;
        if i == 0 && fix_first {
            scale = conjugacy_class_size(&p.padded(n)).to_biguint().expect("positive");
            elements.push(vec![all[0].clone()]);
        } else {
            elements.push(all);
        }
    }
    let rest_r = nontrivial.iter().map(|p| p.r() as usize).sum::<usize>() + c as usize;
    let mut search = Search {
        n,
        target,
        elements: &elements,
        c: c as usize,
        factors: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    let count = search.run(&Permutation::identity(n), 0, rest_r)?;
    if count == 0 {
        return Ok(BigUint::zero());
    }
    Ok(scale * BigUint::from(count))
}
