//! Conjugacy classes, normal closures and minimal normal subgroups.

use super::blocks::is_prime;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A conjugacy class, identified by its smallest element index in the
/// group's stabilizer chain.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
}

impl PermGroup {
    /// Smallest normal subgroup of `self` containing every element of `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for (i, x) in elements.iter().enumerate() {
            if x.degree() != self.degree() || !self.contains(x) {
                return Err(Error::NotMember(format!("element {i} ({x}) is not in the group")));
            }
        }
        let mut gens: Vec<Permutation> = elements.iter().filter(|x| !x.is_identity()).cloned().collect();
        let mut closure = PermGroup::from_generators_unchecked(self.degree(), gens.clone());
        let mut k = 0;
        while k < gens.len() {
            let n = gens[k].clone();
            for g in self.generators() {
                let c = n.conjugate_by(g);
                if !closure.contains(&c) {
                    gens.push(c);
                    closure = PermGroup::from_generators_unchecked(self.degree(), gens.clone());
                }
            }
            k += 1;
        }
        Ok(closure)
    }

    /// Conjugacy classes, walked in the index space of the stabilizer chain.
    pub fn conjugacy_classes(&self, limits: &Limits) -> Result<Vec<ConjugacyClass>> {
        let n = self.check_enumerable(limits)?;
        let chain = self.chain();
        let conj: Vec<(Permutation, Permutation)> =
            self.generators().iter().map(|h| (h.inverse(), h.clone())).collect();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = vec![start];
            let mut size = 0;
            while let Some(e) = queue.pop() {
                size += 1;
                let pos = chain.positions(e);
                for (h_inv, h) in &conj {
                    let idx = chain
                        .index_of_map(|x| h.apply(chain.eval_positions(&pos, h_inv.apply(x))))
                        .expect("conjugate lies in the group");
                    if !seen[idx] {
                        seen[idx] = true;
                        queue.push(idx);
                    }
                }
            }
            let representative = chain.element(start);
            let element_order = representative.order();
            classes.push(ConjugacyClass { representative, size, element_order });
        }
        Ok(classes)
    }

    /// The inclusion-minimal normal closures of non-identity elements.
    ///
    /// Only classes of prime-order elements are closed: every minimal normal
    /// subgroup is the closure of any of its non-identity elements and
    /// contains one of prime order.
    pub fn minimal_normal_subgroups(&self, limits: &Limits) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes(limits)?;
        let mut closures: Vec<PermGroup> = Vec::new();
        for class in classes.iter().filter(|c| is_prime(c.element_order as usize)) {
            let n = self.normal_closure(std::slice::from_ref(&class.representative))?;
            if !closures.iter().any(|c| c.same_elements(&n)) {
                closures.push(n);
            }
        }
        let mut minimal: Vec<PermGroup> = closures
            .iter()
            .filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
            .cloned()
            .collect();
        minimal.sort_by_key(|n| n.order());
        Ok(minimal)
    }

    /// Every normal subgroup, from the joins of normal closures of classes.
    /// Ordered by increasing order; the trivial group comes first.
    pub fn normal_subgroups(&self, limits: &Limits) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes(limits)?;
        let mut found: Vec<PermGroup> = vec![PermGroup::trivial(self.degree())];
        let push = |found: &mut Vec<PermGroup>, n: PermGroup| {
            if !found.iter().any(|m| m.same_elements(&n)) {
                found.push(n);
                true
            } else {
                false
            }
        };
        let mut atoms = Vec::new();
        for class in classes.iter().skip(1) {
            let n = self.normal_closure(std::slice::from_ref(&class.representative))?;
            if !atoms.iter().any(|m: &PermGroup| m.same_elements(&n)) {
                atoms.push(n.clone());
            }
            push(&mut found, n);
        }
        let mut k = 1;
        while k < found.len() {
            for atom in &atoms {
                if atom.is_subgroup_of(&found[k]) {
                    continue;
                }
                let joined = found[k].join(atom);
                push(&mut found, joined);
            }
            k += 1;
        }
        found.sort_by_key(|n| n.order());
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, cycles).unwrap()
    }

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles(n, s).unwrap()
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.normal_closure(&[p(4, "(0 1)(2 3)")]).unwrap().order(), 4);
        assert_eq!(s4.normal_closure(&[p(4, "(0 1 2)")]).unwrap().order(), 12);
        assert!(s4.normal_closure(&[Permutation::identity(4)]).unwrap().is_trivial());
        let c4 = g(4, &["(0 1 2 3)"]);
        assert!(matches!(c4.normal_closure(&[p(4, "(0 1)")]), Err(Error::NotMember(_))));
    }

    #[test]
    fn class_sizes_of_s4() {
        let classes = PermGroup::symmetric(4).conjugacy_classes(&Limits::default()).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 24);
    }

    #[test]
    fn minimal_normal_examples() {
        let lim = Limits::default();
        let s4 = PermGroup::symmetric(4).minimal_normal_subgroups(&lim).unwrap();
        assert_eq!(s4.len(), 1);
        assert_eq!(s4[0].order(), 4);

        let klein = g(4, &["(0 1)(2 3)", "(0 2)(1 3)"]).minimal_normal_subgroups(&lim).unwrap();
        assert_eq!(klein.len(), 3);
        assert!(klein.iter().all(|n| n.order() == 2));

        assert!(PermGroup::trivial(3).minimal_normal_subgroups(&lim).unwrap().is_empty());
    }

    #[test]
    fn capacity_error_above_cap() {
        let lim = Limits::default().with_max_order(100);
        assert!(matches!(
            PermGroup::symmetric(5).minimal_normal_subgroups(&lim),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let all = PermGroup::symmetric(4).normal_subgroups(&Limits::default()).unwrap();
        let orders: Vec<u128> = all.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
