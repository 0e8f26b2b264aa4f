use std::sync::OnceLock;

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finitely generated permutation group of fixed degree.
///
/// The stabilizer chain is built on first use and cached; afterwards the
/// group is safe to share across threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

/// The action of a group on an invariant subset: the induced group on the
/// re-indexed subset and the kernel inside the parent.
#[derive(Clone, Debug)]
pub struct ActionRestriction {
    pub domain: Vec<usize>,
    pub induced: PermGroup,
    pub kernel: PermGroup,
}

impl PermGroup {
    /// Validates the generators. Identity generators are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation {
                    index,
                    reason: format!("degree {} differs from group degree {degree}", g.degree()),
                });
            }
        }
        Ok(Self::from_generators_unchecked(degree, generators))
    }

    /// Builds a group from raw image arrays, naming the offending generator on failure.
    pub fn from_images(degree: usize, images: Vec<Vec<usize>>) -> Result<Self> {
        let gens = images
            .into_iter()
            .enumerate()
            .map(|(index, im)| {
                if im.len() != degree {
                    return Err(Error::InvalidPermutation {
                        index,
                        reason: format!("length {} differs from group degree {degree}", im.len()),
                    });
                }
                Permutation::new(im).map_err(|e| match e {
                    Error::InvalidPermutation { reason, .. } => Error::InvalidPermutation { index, reason },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn from_cycles(degree: usize, cycles: &[&str]) -> Result<Self> {
        let gens = cycles
            .iter()
            .map(|c| Permutation::from_cycles(degree, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub(crate) fn from_generators_unchecked(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        PermGroup { degree, generators: gens, chain: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators_unchecked(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_images_unchecked(
                (0..degree).map(|x| (x + 1) % degree).collect(),
            ));
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images_unchecked(t));
        }
        Self::from_generators_unchecked(degree, gens)
    }

    pub fn cyclic(degree: usize) -> Self {
        let gens = if degree >= 2 {
            vec![Permutation::from_images_unchecked((0..degree).map(|x| (x + 1) % degree).collect())]
        } else {
            Vec::new()
        };
        Self::from_generators_unchecked(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Normality inside `parent`, tested by conjugating generators by generators.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent)
            && self
                .generators
                .iter()
                .all(|n| parent.generators.iter().all(|g| self.contains(&n.conjugate_by(g))))
    }

    /// The group generated by both generating sets.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::from_generators_unchecked(self.degree, gens)
    }

    pub(crate) fn check_enumerable(&self, limits: &Limits) -> Result<usize> {
        let order = self.order();
        if order > limits.max_order {
            return Err(Error::capacity("group order", order, limits.max_order));
        }
        Ok(order as usize)
    }

    /// All elements, in chain-index order.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<Permutation>> {
        let n = self.check_enumerable(limits)?;
        let chain = self.chain();
        Ok((0..n).map(|i| chain.element(i)).collect())
    }

    pub(crate) fn check_domain(&self, domain: &[usize]) -> Result<Vec<usize>> {
        let mut local = vec![usize::MAX; self.degree];
        for (k, &x) in domain.iter().enumerate() {
            if x >= self.degree {
                return Err(Error::NotInvariant(format!("point {x} exceeds degree {}", self.degree)));
            }
            if local[x] != usize::MAX {
                return Err(Error::NotInvariant(format!("point {x} listed twice")));
            }
            local[x] = k;
        }
        for (index, g) in self.generators.iter().enumerate() {
            for &x in domain {
                if local[g.apply(x)] == usize::MAX {
                    return Err(Error::NotInvariant(format!(
                        "generator {index} maps {x} to {} outside the domain",
                        g.apply(x)
                    )));
                }
            }
        }
        Ok(local)
    }

    /// Generators of the induced action on `domain`, re-indexed to `0..domain.len()`.
    pub fn induced_generators(&self, domain: &[usize]) -> Result<Vec<Permutation>> {
        let local = self.check_domain(domain)?;
        Ok(self
            .generators
            .iter()
            .map(|g| Permutation::from_images_unchecked(domain.iter().map(|&x| local[g.apply(x)]).collect()))
            .filter(|g| !g.is_identity())
            .collect())
    }

    pub fn induced(&self, domain: &[usize]) -> Result<PermGroup> {
        Ok(Self::from_generators_unchecked(domain.len(), self.induced_generators(domain)?))
    }

    /// The orbit of `x` under the whole group, in discovery order.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let y = g.apply(orbit[k]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Orbits on an invariant domain; each orbit sorted, orbits ordered by minimum.
    pub fn orbits(&self, domain: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.check_domain(domain)?;
        let mut sorted = domain.to_vec();
        sorted.sort_unstable();
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for x in sorted {
            if done[x] {
                continue;
            }
            let mut orbit = self.orbit(x);
            for &y in &orbit {
                done[y] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    pub fn is_transitive(&self, domain: &[usize]) -> Result<bool> {
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(self.orbits(domain)?.len() == 1)
    }

    /// True iff every point stabilizer acts trivially on the domain, i.e. the
    /// induced group has every orbit of size equal to its order.
    pub fn is_semiregular(&self, domain: &[usize]) -> Result<bool> {
        let induced = self.induced(domain)?;
        let order = induced.order();
        let all: Vec<usize> = (0..domain.len()).collect();
        Ok(induced.orbits(&all)?.iter().all(|o| o.len() as u128 == order))
    }

    pub fn is_regular(&self, domain: &[usize]) -> Result<bool> {
        Ok(self.is_transitive(domain)? && self.is_semiregular(domain)?)
    }

    /// Subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, points);
        let mut distinct = points.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let gens = chain.stabilizer_generators(distinct.len());
        let group = Self::from_generators_unchecked(self.degree, gens);
        debug_assert!(group.generators.iter().all(|g| g.fixes_all(points)));
        group
    }

    pub fn restrict_action(&self, domain: &[usize]) -> Result<ActionRestriction> {
        let induced = self.induced(domain)?;
        let kernel = self.pointwise_stabilizer(domain);
        Ok(ActionRestriction { domain: domain.to_vec(), induced, kernel })
    }
}

impl PartialEq for PermGroup {
    /// Equality of the generated groups, not of the generating sets.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.same_elements(other)
    }
}

impl Eq for PermGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn group_from_generators_examples() {
        assert_eq!(g(3, &["(0 1 2)"]).order(), 3);
        assert_eq!(g(4, &["(0 1)", "(0 1 2 3)"]).order(), 24);
        assert_eq!(PermGroup::new(2, vec![]).unwrap().order(), 1);
        assert_eq!(g(3, &["()"]).order(), 1);
    }

    #[test]
    fn malformed_generator_is_named() {
        let err = PermGroup::from_images(3, vec![vec![0, 1, 2], vec![1, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidPermutation { index: 1, .. }));
        let err = PermGroup::from_images(3, vec![vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidPermutation { index: 0, .. }));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(g(3, &["(0 1 2)"]).orbits(&[0, 1, 2]).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(PermGroup::trivial(3).orbits(&[0, 1, 2]).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            g(4, &["(0 1)(2 3)"]).orbits(&[0, 1, 2, 3]).unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert!(matches!(g(4, &["(0 1)(2 3)"]).orbits(&[0, 2]), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(g(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).order(), 20);
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(PermGroup::symmetric(6).order(), 720);
    }

    #[test]
    fn transitivity_examples() {
        let s4 = PermGroup::symmetric(4);
        assert!(s4.is_transitive(&[0, 1, 2, 3]).unwrap());
        assert!(!g(4, &["(0 1)(2 3)"]).is_transitive(&[0, 1, 2, 3]).unwrap());
        assert!(g(4, &["(1 2)"]).is_transitive(&[0]).unwrap());
        assert_eq!(s4.is_transitive(&[]), Err(Error::EmptyDomain));
    }

    #[test]
    fn semiregular_examples() {
        assert!(g(4, &["(0 1 2 3)"]).is_semiregular(&[0, 1, 2, 3]).unwrap());
        assert!(g(4, &["(0 1 2 3)"]).is_regular(&[0, 1, 2, 3]).unwrap());
        assert!(!PermGroup::symmetric(4).is_semiregular(&[0, 1, 2, 3]).unwrap());
        assert!(PermGroup::trivial(5).is_semiregular(&[0, 3, 4]).unwrap());
    }

    #[test]
    fn restrict_action_examples() {
        // Z3 on {0,1,2} times S3 on {3,4,5}.
        let grp = g(6, &["(0 1 2)", "(3 4)", "(3 4 5)"]);
        let r = grp.restrict_action(&[0, 1, 2]).unwrap();
        assert_eq!(r.kernel.order(), 6);
        assert_eq!(r.induced.order(), 3);
        assert_eq!(r.induced.order() * r.kernel.order(), grp.order());
        assert!(r.kernel.generators().iter().all(|k| k.fixes_all(&[0, 1, 2])));

        let full = grp.restrict_action(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(full.kernel.is_trivial());

        let t = PermGroup::trivial(4).restrict_action(&[1, 2]).unwrap();
        assert_eq!((t.induced.order(), t.kernel.order()), (1, 1));
    }

    #[test]
    fn normality() {
        let s4 = PermGroup::symmetric(4);
        let v4 = g(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert!(v4.is_normal_in(&s4));
        assert!(!g(4, &["(0 1)"]).is_normal_in(&s4));
    }
}
