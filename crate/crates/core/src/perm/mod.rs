//! Permutation-group engine.

mod blocks;
mod chain;
mod group;
mod iso;
mod normal;
mod permutation;

pub(crate) use blocks::is_prime;
pub use blocks::{Partition, EXHAUSTIVE_LIMIT};
pub use chain::StabChain;
pub use group::{ActionRestriction, PermGroup};
pub use normal::ConjugacyClass;
pub use permutation::Permutation;

use crate::error::Result;
use crate::limits::Limits;

impl PermGroup {
    /// Every nontrivial normal subgroup is transitive on `domain`; checked on
    /// the minimal normal subgroups, since each nontrivial normal subgroup
    /// contains one and transitivity passes to overgroups.
    pub fn is_quasiprimitive(&self, domain: &[usize], limits: &Limits) -> Result<bool> {
        if !self.is_transitive(domain)? {
            return Err(crate::Error::NotTransitive);
        }
        for n in self.minimal_normal_subgroups(limits)? {
            if !n.is_transitive(domain)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasiprimitive_examples() {
        let lim = Limits::default();
        let a4 = PermGroup::from_cycles(4, &["(0 1 2)", "(1 2 3)"]).unwrap();
        assert!(a4.is_quasiprimitive(&[0, 1, 2, 3], &lim).unwrap());

        // S4 acting on the six 2-subsets {01,02,03,12,13,23}.
        let s4_pairs = PermGroup::from_cycles(6, &["(1 3)(2 4)", "(0 3 5 2)(1 4)"]).unwrap();
        assert_eq!(s4_pairs.order(), 24);
        assert!(!s4_pairs.is_quasiprimitive(&[0, 1, 2, 3, 4, 5], &lim).unwrap());

        let s5 = PermGroup::symmetric(5);
        assert!(s5.is_quasiprimitive(&[0, 1, 2, 3, 4], &lim).unwrap());
    }
}
