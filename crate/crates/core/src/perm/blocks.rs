//! Block systems of transitive actions.
//!
//! Small domains (at most [`EXHAUSTIVE_LIMIT`] points) are searched by testing
//! every candidate block through the first point; larger domains use the
//! union-find closure that grows the smallest block containing a seed set.

use std::collections::BTreeSet;

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

pub const EXHAUSTIVE_LIMIT: usize = 12;

/// A partition of a domain, each part sorted and parts ordered by minimum.
pub type Partition = Vec<Vec<usize>>;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest invariant partition of `0..n` with all of `seed` in one class.
fn minimal_partition(gens: &[Permutation], n: usize, seed: &[usize]) -> Partition {
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &s in &seed[1..] {
        if uf.union(seed[0], s) {
            queue.push((seed[0], s));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            let (x, y) = (g.apply(a), g.apply(b));
            if uf.union(x, y) {
                queue.push((x, y));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        classes[r].push(x);
    }
    classes.into_iter().filter(|c| !c.is_empty()).collect()
}

/// The orbit of a set under the group, if it forms a partition of `0..n`.
fn block_system_of(gens: &[Permutation], n: usize, block: &[usize]) -> Option<Partition> {
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    images.insert(block.to_vec());
    let mut frontier = vec![block.to_vec()];
    while let Some(b) = frontier.pop() {
        for g in gens {
            let mut img: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
            img.sort_unstable();
            if images.insert(img.clone()) {
                frontier.push(img);
            }
        }
    }
    let mut owner = vec![false; n];
    let mut covered = 0;
    for b in &images {
        for &x in b {
            if owner[x] {
                return None;
            }
            owner[x] = true;
            covered += 1;
        }
    }
    (covered == n).then(|| images.into_iter().collect())
}

struct LocalAction {
    domain: Vec<usize>,
    gens: Vec<Permutation>,
}

impl LocalAction {
    fn new(group: &PermGroup, domain: &[usize]) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if !group.is_transitive(domain)? {
            return Err(Error::NotTransitive);
        }
        let mut sorted = domain.to_vec();
        sorted.sort_unstable();
        let gens = group.induced_generators(&sorted)?;
        Ok(LocalAction { domain: sorted, gens })
    }

    fn n(&self) -> usize {
        self.domain.len()
    }

    fn globalize(&self, p: &Partition) -> Partition {
        let mut out: Partition = p
            .iter()
            .map(|b| {
                let mut v: Vec<usize> = b.iter().map(|&x| self.domain[x]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// Every block containing local point 0, including `{0}` and the whole domain,
    /// found by subset testing.
    fn blocks_exhaustive(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << (n - 1)) {
            let block: Vec<usize> = std::iter::once(0)
                .chain((1..n).filter(|&x| mask >> (x - 1) & 1 == 1))
                .collect();
            if !n.is_multiple_of(block.len()) {
                continue;
            }
            if block_system_of(&self.gens, n, &block).is_some() {
                out.push(block);
            }
        }
        out
    }

    /// Every block containing local point 0, grown by union-find closure.
    fn blocks_by_closure(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier = vec![vec![0usize]];
        while let Some(block) = frontier.pop() {
            let mut inside = vec![false; n];
            for &x in &block {
                inside[x] = true;
            }
            for beta in (0..n).filter(|&x| !inside[x]) {
                let mut seed = block.clone();
                seed.push(beta);
                let partition = minimal_partition(&self.gens, n, &seed);
                let grown = partition.into_iter().find(|c| c.contains(&0)).expect("0 lies in a class");
                if found.insert(grown.clone()) {
                    frontier.push(grown);
                }
            }
        }
        found.into_iter().collect()
    }

    fn minimal_blocks_by_closure(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for beta in 1..n {
            let partition = minimal_partition(&self.gens, n, &[0, beta]);
            let block = partition.into_iter().find(|c| c.contains(&0)).expect("0 lies in a class");
            if block.len() < n {
                found.insert(block);
            }
        }
        found.into_iter().collect()
    }

    fn system(&self, block: &[usize]) -> Partition {
        let n = self.n();
        let p = block_system_of(&self.gens, n, block).expect("block yields a block system");
        self.globalize(&p)
    }
}

fn keep_minimal(blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<usize>> = blocks.iter().map(|b| b.iter().copied().collect()).collect();
    blocks
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !sets
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.len() < sets[*i].len() && s.is_subset(&sets[*i]))
        })
        .map(|(_, b)| b.clone())
        .collect()
}

fn sorted_systems(mut systems: Vec<Partition>) -> Vec<Partition> {
    systems.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    systems.dedup();
    systems
}

impl PermGroup {
    /// All minimal nontrivial invariant partitions of a transitive domain.
    /// Empty iff the action is primitive.
    pub fn minimal_block_systems(&self, domain: &[usize]) -> Result<Vec<Partition>> {
        let local = LocalAction::new(self, domain)?;
        let n = local.n();
        if n <= 3 {
            return Ok(Vec::new());
        }
        let blocks = if n <= EXHAUSTIVE_LIMIT {
            let nontrivial = local.blocks_exhaustive().into_iter().filter(|b| b.len() > 1 && b.len() < n);
            keep_minimal(nontrivial.collect())
        } else {
            keep_minimal(local.minimal_blocks_by_closure())
        };
        Ok(sorted_systems(blocks.iter().map(|b| local.system(b)).collect()))
    }

    /// Every invariant partition of a transitive domain, both trivial ones included,
    /// ordered from finest to coarsest.
    pub fn block_systems(&self, domain: &[usize]) -> Result<Vec<Partition>> {
        let local = LocalAction::new(self, domain)?;
        let blocks = if local.n() <= EXHAUSTIVE_LIMIT {
            local.blocks_exhaustive()
        } else {
            local.blocks_by_closure()
        };
        Ok(sorted_systems(blocks.iter().map(|b| local.system(b)).collect()))
    }

    /// Same as [`PermGroup::block_systems`] but always by union-find closure;
    /// kept public so the two searches can be cross-checked.
    pub fn block_systems_by_closure(&self, domain: &[usize]) -> Result<Vec<Partition>> {
        let local = LocalAction::new(self, domain)?;
        let blocks = local.blocks_by_closure();
        Ok(sorted_systems(blocks.iter().map(|b| local.system(b)).collect()))
    }

    /// Exhaustive variant; panics on domains above 24 points.
    pub fn block_systems_exhaustive(&self, domain: &[usize]) -> Result<Vec<Partition>> {
        let local = LocalAction::new(self, domain)?;
        assert!(local.n() <= 24, "exhaustive block search is exponential");
        let blocks = local.blocks_exhaustive();
        Ok(sorted_systems(blocks.iter().map(|b| local.system(b)).collect()))
    }

    pub fn is_primitive(&self, domain: &[usize]) -> Result<bool> {
        let local = LocalAction::new(self, domain)?;
        if is_prime(local.n()) || local.n() == 1 {
            return Ok(true);
        }
        Ok(self.minimal_block_systems(domain)?.is_empty())
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn cyclic_four() {
        let c4 = g(4, &["(0 1 2 3)"]);
        assert_eq!(c4.minimal_block_systems(&[0, 1, 2, 3]).unwrap(), vec![vec![vec![0, 2], vec![1, 3]]]);
        assert!(!c4.is_primitive(&[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn symmetric_is_primitive() {
        let s4 = PermGroup::symmetric(4);
        assert!(s4.minimal_block_systems(&[0, 1, 2, 3]).unwrap().is_empty());
        assert!(s4.is_primitive(&[0, 1, 2, 3]).unwrap());
        assert!(g(2, &["(0 1)"]).is_primitive(&[0, 1]).unwrap());
    }

    #[test]
    fn cyclic_six_has_two_minimal_systems() {
        let c6 = g(6, &["(0 1 2 3 4 5)"]);
        let systems = c6.minimal_block_systems(&[0, 1, 2, 3, 4, 5]).unwrap();
        let mut sizes: Vec<usize> = systems.iter().map(|s| s[0].len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        // finest to coarsest: singletons, pairs, triples, whole
        assert_eq!(c6.block_systems(&[0, 1, 2, 3, 4, 5]).unwrap().len(), 4);
    }

    #[test]
    fn intransitive_is_an_error() {
        let v = g(4, &["(0 1)(2 3)"]);
        assert_eq!(v.is_primitive(&[0, 1, 2, 3]), Err(Error::NotTransitive));
        assert_eq!(v.minimal_block_systems(&[0, 1, 2, 3]), Err(Error::NotTransitive));
    }

    #[test]
    fn closure_and_exhaustive_agree_on_small_domains() {
        let cases = [
            g(8, &["(0 1 2 3 4 5 6 7)"]),
            g(8, &["(0 1 2 3)(4 5 6 7)", "(0 4)(1 5)(2 6)(3 7)"]),
            g(6, &["(0 1)(2 3)(4 5)", "(0 2 4)(1 3 5)"]),
            g(12, &["(0 1 2 3 4 5 6 7 8 9 10 11)", "(1 11)(2 10)(3 9)(4 8)(5 7)"]),
        ];
        for grp in &cases {
            let dom: Vec<usize> = (0..grp.degree()).collect();
            assert_eq!(grp.block_systems_exhaustive(&dom).unwrap(), grp.block_systems_by_closure(&dom).unwrap());
        }
    }

    #[test]
    fn sub_domain() {
        // C4 on {4,5,6,7}, fixing 0..3.
        let grp = g(8, &["(4 5 6 7)"]);
        assert_eq!(grp.minimal_block_systems(&[4, 5, 6, 7]).unwrap(), vec![vec![vec![4, 6], vec![5, 7]]]);
    }
}
