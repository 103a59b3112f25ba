//! Tuple counting by transfer over conjugacy types.
//!
//! A partial product `π` together with the orbit partition of the group
//! generated so far is determined up to simultaneous conjugation by its
//! *type*: the multiset of orbits, each recorded as the cycle type of `π`
//! restricted to it. The number of ways to extend a prefix depends only on
//! this type, so prefixes are aggregated into a mass per type.
//!
//! Transposition steps are applied combinatorially: a transposition inside
//! one cycle of length `L` splits it into `t + (L - t)` in `L` ways (`L/2`
//! when `t = L - t`); one joining cycles of lengths `a` and `b` does so in
//! `a·b` ways, merging their orbits if they differ. Steps by other classes
//! act on an explicit representative.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::perm::{class_elements, conjugacy_class_size, Permutation};
use super::Partition;
use crate::error::{Error, Result};

/// Cycle lengths of one orbit, weakly decreasing.
type Block = Vec<u8>;
/// Blocks in sorted order; the canonical key of a type.
type State = Vec<Block>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Product identity and a transitive group.
    Connected,
    /// Product identity only.
    Any,
}

/// Number of types for degree `n`: multisets of partitions with total size
/// `n` (Euler transform of the partition numbers).
pub fn type_count_bound(n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for i in k..=n {
            p[i] += p[i - k];
        }
    }
    euler_transform(&p)
}

fn euler_transform(a: &[u128]) -> u128 {
    let n = a.len() - 1;
    // b_n = (1/n) Σ_{k=1}^n c_k b_{n-k}, c_k = Σ_{d | k} d a_d
    let c: Vec<u128> = (0..=n)
        .map(|k| (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * a[d]).sum())
        .collect();
    let mut b = vec![0u128; n + 1];
    b[0] = 1;
    for m in 1..=n {
        b[m] = (1..=m).map(|k| c[k] * b[m - k]).sum::<u128>() / m as u128;
    }
    b[n]
}

/// Up-front work estimate: type bound times transitions per type summed
/// over the steps.
pub fn work_estimate(n: usize, classes: &[Partition], c: u64) -> u128 {
    let types = type_count_bound(n);
    let nontrivial: Vec<&Partition> = classes.iter().filter(|p| p.r() > 0).collect();
    let per_type: u128 = nontrivial
        .iter()
        .skip(1)
        .map(|p| conjugacy_class_size(&p.padded(n)).to_u128().unwrap_or(u128::MAX))
        .fold(c as u128, u128::saturating_add);
    types.saturating_mul(per_type)
}

fn canonical(mut blocks: Vec<Block>) -> State {
    for b in &mut blocks {
        b.sort_unstable_by(|x, y| y.cmp(x));
    }
    blocks.sort_unstable();
    blocks
}

fn distance(state: &State) -> usize {
    state.iter().flatten().map(|&l| l as usize - 1).sum()
}

/// Whether `rest_r` more ramification (sum of `n - #cycles` over the
/// remaining factors) can still reach the target.
fn reachable(state: &State, rest_r: usize, target: Target, only_transpositions: bool) -> bool {
    let d = distance(state);
    let b = state.len();
    match (target, only_transpositions) {
        (Target::Connected, true) => rest_r >= d + 2 * (b - 1) && (rest_r - d).is_multiple_of(2),
        (Target::Any, true) => rest_r >= d && (rest_r - d).is_multiple_of(2),
        (Target::Connected, false) => rest_r >= d && rest_r >= b - 1,
        (Target::Any, false) => rest_r >= d,
    }
}

fn add(map: &mut HashMap<State, BigUint>, key: State, v: BigUint) {
    *map.entry(key).or_insert_with(BigUint::zero) += v;
}

fn merge(mut a: HashMap<State, BigUint>, b: HashMap<State, BigUint>) -> HashMap<State, BigUint> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        add(&mut a, k, v);
    }
    a
}

/// All types reachable from `state` by one transposition, with multiplicity.
fn transposition_moves(state: &State, mut emit: impl FnMut(State, u64)) {
    for (bi, block) in state.iter().enumerate() {
        let rest = |replacement: Block| {
            let mut s: Vec<Block> = state.clone();
            s[bi] = replacement;
            canonical(s)
        };
        let lengths = distinct_counts(block);
        for (i, &(l, ml)) in lengths.iter().enumerate() {
            let lu = l as u64;
            for t in 1..=l / 2 {
                let ways = if 2 * t == l { lu / 2 } else { lu } * ml as u64;
                let mut nb = block.clone();
                remove_one(&mut nb, l);
                nb.push(t);
                nb.push(l - t);
                emit(rest(nb), ways);
            }
            for &(l2, ml2) in &lengths[i..] {
                let pairs = if l2 == l {
                    (ml * ml.saturating_sub(1) / 2) as u64
                } else {
                    (ml * ml2) as u64
                };
                if pairs == 0 {
                    continue;
                }
                let mut nb = block.clone();
                remove_one(&mut nb, l);
                remove_one(&mut nb, l2);
                nb.push(l + l2);
                emit(rest(nb), pairs * lu * l2 as u64);
            }
        }
        for (bj, other) in state.iter().enumerate().skip(bi + 1) {
            for &(l, ml) in &distinct_counts(block) {
                for &(l2, ml2) in &distinct_counts(other) {
                    let mut nb = block.clone();
                    nb.extend_from_slice(other);
                    remove_one(&mut nb, l);
                    remove_one(&mut nb, l2);
                    nb.push(l + l2);
                    let mut s: Vec<Block> = state
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != bi && k != bj)
                        .map(|(_, b)| b.clone())
                        .collect();
                    s.push(nb);
                    emit(canonical(s), (ml * ml2) as u64 * l as u64 * l2 as u64);
                }
            }
        }
    }
}

fn distinct_counts(block: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &l in block {
        match out.last_mut() {
            Some((x, c)) if *x == l => *c += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

fn remove_one(block: &mut Block, l: u8) {
    let i = block.iter().position(|&x| x == l).expect("length present");
    block.swap_remove(i);
}

/// A permutation and orbit labelling realising `state`.
fn representative(state: &State) -> (Permutation, Vec<usize>) {
    let n: usize = state.iter().flatten().map(|&l| l as usize).sum();
    let mut image = vec![0; n];
    let mut orbit = vec![0; n];
    let mut next = 0;
    for (bi, block) in state.iter().enumerate() {
        for &l in block {
            let l = l as usize;
            for k in 0..l {
                image[next + k] = next + (k + 1) % l;
                orbit[next + k] = bi;
            }
            next += l;
        }
    }
    (Permutation::from_image(image).expect("built as a bijection"), orbit)
}

fn apply_element(pi: &Permutation, orbit: &[usize], s: &Permutation) -> State {
    let n = pi.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut first_of_orbit: HashMap<usize, usize> = HashMap::new();
    for (x, &o) in orbit.iter().enumerate() {
        let f = *first_of_orbit.entry(o).or_insert(x);
        let (a, b) = (find(&mut parent, x), find(&mut parent, f));
        parent[a] = b;
    }
    for x in 0..n {
        let (a, b) = (find(&mut parent, x), find(&mut parent, s.apply(x)));
        parent[a] = b;
    }
    let prod = pi.compose(s);
    let mut blocks: HashMap<usize, Block> = HashMap::new();
    for c in prod.cycles() {
        let root = find(&mut parent, c[0]);
        blocks.entry(root).or_default().push(c.len() as u8);
    }
    canonical(blocks.into_values().collect())
}

/// Number of tuples `(s_1, ..., s_k, t_1, ..., t_c)` in `S_n` with `s_j` of
/// cycle type `classes[j]` (parts ≥ 2, padded with fixed points), `t_i`
/// transpositions, product the identity and, for [`Target::Connected`], a
/// transitive generated group.
pub fn count_tuples(
    n: usize,
    classes: &[Partition],
    c: u64,
    target: Target,
    max_nodes: u128,
) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    if n > u8::MAX as usize {
        return Err(Error::domain(format!("degree {n} is too large")));
    }
    let all: Vec<Partition> = classes.iter().map(Partition::nontrivial).collect();
    for p in &all {
        if p.m() as usize > n {
            return Err(Error::domain(format!("{p} does not fit in S_{n}")));
        }
    }
    // The count does not depend on the order of the factors (braid moves
    // permute them bijectively), so transposition classes join the
    // combinatorial steps.
    let is_transposition = |p: &Partition| p.parts() == [2];
    let c = c + all.iter().filter(|p| is_transposition(p)).count() as u64;
    let classes: Vec<Partition> = all.into_iter().filter(|p| !is_transposition(p)).collect();
    let estimate = work_estimate(n, &classes, c);
    if estimate > max_nodes {
        return Err(Error::Budget {
            what: format!("transfer over conjugacy types in S_{n} with {c} transpositions"),
            estimate,
            budget: max_nodes,
        });
    }
    let nontrivial: Vec<&Partition> = classes.iter().filter(|p| p.r() > 0).collect();
    let mut rest_r: usize = nontrivial.iter().map(|p| p.r() as usize).sum::<usize>() + c as usize;

    let mut states: HashMap<State, BigUint> = HashMap::new();
    states.insert(canonical(vec![vec![1]; n]), BigUint::one());
    for (idx, class) in nontrivial.iter().enumerate() {
        rest_r -= class.r() as usize;
        if idx == 0 {
            // From the identity every class element gives the same type.
            let mut blocks: Vec<Block> = class.parts().iter().map(|&b| vec![b as u8]).collect();
            blocks.extend(std::iter::repeat_n(vec![1u8], n - class.m() as usize));
            let size = conjugacy_class_size(&class.padded(n)).to_biguint().expect("positive");
            states = HashMap::from([(canonical(blocks), size)]);
            states.retain(|s, _| reachable(s, rest_r, target, false));
            continue;
        }
        let elements = class_elements(n, class)?;
        let current: Vec<(State, BigUint)> = states.into_iter().collect();
        states = current
            .par_iter()
            .fold(HashMap::new, |mut acc, (state, mass)| {
                let (pi, orbit) = representative(state);
                for s in &elements {
                    let next = apply_element(&pi, &orbit, s);
                    if reachable(&next, rest_r, target, false) {
                        add(&mut acc, next, mass.clone());
                    }
                }
                acc
            })
            .reduce(HashMap::new, merge);
    }
    for _ in 0..c {
        rest_r -= 1;
        let current: Vec<(State, BigUint)> = states.into_iter().collect();
        states = current
            .par_iter()
            .fold(HashMap::new, |mut acc, (state, mass)| {
                transposition_moves(state, |next, ways| {
                    if reachable(&next, rest_r, target, true) {
                        add(&mut acc, next, mass * BigUint::from(ways));
                    }
                });
                acc
            })
            .reduce(HashMap::new, merge);
    }
    Ok(states
        .into_iter()
        .filter(|(s, _)| distance(s) == 0 && (target == Target::Any || s.len() == 1))
        .fold(BigUint::zero(), |acc, (_, m)| acc + m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_counts() {
        let expected = [1u128, 1, 3, 6, 14, 27, 58, 111, 223, 424, 817, 1527];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(type_count_bound(n), e, "n = {n}");
        }
        assert_eq!(type_count_bound(16), 31877);
    }

    #[test]
    fn transposition_moves_cover_all_pairs() {
        for state in [
            canonical(vec![vec![3, 2], vec![1], vec![2, 2, 1]]),
            canonical(vec![vec![1]; 5]),
            canonical(vec![vec![4, 4, 1]]),
        ] {
            let n: u64 = state.iter().flatten().map(|&l| l as u64).sum();
            let mut total = 0u64;
            transposition_moves(&state, |_, w| total += w);
            assert_eq!(total, n * (n - 1) / 2);
        }
    }

    #[test]
    fn transposition_moves_match_explicit_action() {
        let state = canonical(vec![vec![3, 1], vec![2, 2], vec![1]]);
        let (pi, orbit) = representative(&state);
        let n = pi.n();
        let mut explicit: HashMap<State, u64> = HashMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let next = apply_element(&pi, &orbit, &Permutation::transposition(n, a, b));
                *explicit.entry(next).or_default() += 1;
            }
        }
        let mut combinatorial: HashMap<State, u64> = HashMap::new();
        transposition_moves(&state, |s, w| *combinatorial.entry(s).or_default() += w);
        assert_eq!(explicit, combinatorial);
    }
}
