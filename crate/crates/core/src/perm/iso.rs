//! Abstract isomorphism of small permutation groups by generator-image
//! backtracking.

use std::collections::{BTreeMap, HashSet};

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

fn order_histogram(elements: &[Permutation]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for e in elements {
        *h.entry(e.order()).or_insert(0) += 1;
    }
    h
}

/// Greedy generating set, preferring elements of large order.
fn small_generating_set(group: &PermGroup, elements: &[Permutation]) -> Vec<Permutation> {
    let mut by_order: Vec<&Permutation> = elements.iter().collect();
    by_order.sort_by_key(|e| std::cmp::Reverse(e.order()));
    let target = group.order();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(group.degree());
    for e in by_order {
        if current.order() == target {
            break;
        }
        if !current.contains(e) {
            gens.push(e.clone());
            current = PermGroup::from_generators_unchecked(group.degree(), gens.clone());
        }
    }
    gens
}

struct Search<'a> {
    source: &'a PermGroup,
    gens: Vec<Permutation>,
    /// `product[e][i]` is the index of element `e` times generator `i`.
    product: Vec<Vec<usize>>,
    target_degree: usize,
}

impl<'a> Search<'a> {
    fn new(source: &'a PermGroup, gens: Vec<Permutation>, target_degree: usize) -> Self {
        let chain = source.chain();
        let n = source.order() as usize;
        let product = (0..n)
            .map(|e| {
                let pos = chain.positions(e);
                gens.iter()
                    .map(|a| {
                        chain
                            .index_of_map(|x| a.apply(chain.eval_positions(&pos, x)))
                            .expect("product lies in the group")
                    })
                    .collect()
            })
            .collect();
        Search { source, gens, product, target_degree }
    }

    /// Checks that sending the first `images.len()` generators to `images`
    /// extends to an injective homomorphism on the subgroup they generate.
    fn consistent(&self, images: &[Permutation]) -> bool {
        let n = self.source.order() as usize;
        let mut map: Vec<Option<Permutation>> = vec![None; n];
        let mut used: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(self.target_degree);
        used.insert(id.clone());
        map[0] = Some(id);
        let mut queue = vec![0usize];
        while let Some(e) = queue.pop() {
            let fe = map[e].clone().expect("queued elements are mapped");
            for (i, b) in images.iter().enumerate() {
                let next = self.product[e][i];
                let img = fe.then(b);
                match &map[next] {
                    Some(existing) => {
                        if *existing != img {
                            return false;
                        }
                    }
                    None => {
                        if !used.insert(img.clone()) {
                            return false;
                        }
                        map[next] = Some(img);
                        queue.push(next);
                    }
                }
            }
        }
        true
    }

    fn backtrack(&self, images: &mut Vec<Permutation>, candidates: &[Vec<Permutation>]) -> bool {
        let i = images.len();
        if i == self.gens.len() {
            return true;
        }
        for c in &candidates[i] {
            images.push(c.clone());
            if self.consistent(images) && self.backtrack(images, candidates) {
                return true;
            }
            images.pop();
        }
        false
    }
}

impl PermGroup {
    /// Decides abstract isomorphism for groups within the isomorphism cap.
    pub fn is_isomorphic_small(&self, other: &PermGroup, limits: &Limits) -> Result<bool> {
        for g in [self, other] {
            if g.order() > limits.isomorphism_order {
                return Err(Error::capacity("group order for isomorphism", g.order(), limits.isomorphism_order));
            }
        }
        if self.order() != other.order() {
            return Ok(false);
        }
        if self.order() == 1 {
            return Ok(true);
        }
        if self.is_abelian() != other.is_abelian() {
            return Ok(false);
        }
        let lim = Limits { max_order: limits.isomorphism_order, ..*limits };
        let a_elems = self.elements(&lim)?;
        let b_elems = other.elements(&lim)?;
        let hist = order_histogram(&a_elems);
        if hist != order_histogram(&b_elems) {
            return Ok(false);
        }
        if self.is_abelian() {
            // Finite abelian groups are determined by their element-order counts.
            return Ok(true);
        }
        let gens = small_generating_set(self, &a_elems);
        // The first image may be fixed up to conjugacy in the target.
        let reps: Vec<Permutation> =
            other.conjugacy_classes(&lim)?.into_iter().map(|c| c.representative).collect();
        let candidates: Vec<Vec<Permutation>> = gens
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let pool: &[Permutation] = if i == 0 { &reps } else { &b_elems };
                pool.iter().filter(|b| b.order() == a.order()).cloned().collect()
            })
            .collect();
        let search = Search::new(self, gens, other.degree());
        let mut images = Vec::new();
        Ok(search.backtrack(&mut images, &candidates))
    }
}
