//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Base points are the caller's prefix followed by the smallest point moved
//! by each new strong generator, so orders, transversals and element indices
//! are reproducible across runs.
//!
//! Every group element factors uniquely as `u_{k-1} * ... * u_1 * u_0` with
//! `u_l` a transversal element of level `l`. The tuple of transversal
//! positions, read as a mixed-radix number with level 0 most significant, is
//! the element's *index*. Indices let the engine walk all elements of a group
//! of order ~10^5 without materialising a single permutation.

use super::permutation::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    position: Vec<u32>,
    transversal: Vec<Permutation>,
    inverse_transversal: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            position: Vec::new(),
            transversal: Vec::new(),
            inverse_transversal: Vec::new(),
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.position = vec![NONE; degree];
        self.orbit.push(self.point);
        self.position[self.point] = 0;
        self.transversal.push(Permutation::identity(degree));
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.apply(x);
                if self.position[y] == NONE {
                    self.position[y] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    let u = self.transversal[k].then(s);
                    self.transversal.push(u);
                }
            }
            k += 1;
        }
        self.inverse_transversal = self.transversal.iter().map(Permutation::inverse).collect();
    }

    #[inline]
    fn position_of(&self, x: usize) -> Option<usize> {
        match self.position[x] {
            NONE => None,
            p => Some(p as usize),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose base starts with `prefix` (duplicates ignored).
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain { degree, levels: Vec::new() };
        let mut in_base = vec![false; degree];
        for &b in prefix {
            if !in_base[b] {
                in_base[b] = true;
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let b = g.smallest_moved_point().expect("non-identity generator moves a point");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                chain.levels[l].gens.push(g.clone());
                if g.apply(chain.levels[l].point) != chain.levels[l].point {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.recompute(degree);
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            match self.failing_schreier_generator(l) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.smallest_moved_point().expect("sift residue is not the identity");
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for m in (l + 1)..=j {
                        self.levels[m].gens.push(h.clone());
                        self.levels[m].recompute(self.degree);
                    }
                    i = j + 1;
                }
            }
        }
    }

    fn failing_schreier_generator(&self, l: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[l];
        for k in 0..level.orbit.len() {
            for s in &level.gens {
                let t = level.transversal[k].then(s);
                let p = level.position_of(t.apply(level.point)).expect("orbit is closed");
                let schreier = t.then(&level.inverse_transversal[p]);
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(&schreier, l + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for m in from..self.levels.len() {
            let level = &self.levels[m];
            match level.position_of(g.apply(level.point)) {
                None => return (g, m),
                Some(p) => g = g.then(&level.inverse_transversal[p]),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    /// Group order; saturates at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order_from(0)
    }

    /// Order of the stabilizer of the first `level` base points.
    pub fn order_from(&self, level: usize) -> u128 {
        self.levels[level.min(self.levels.len())..]
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Strong generators of the stabilizer of the first `level` base points.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_generators(0)
    }

    fn radices(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.iter().map(|l| l.orbit.len())
    }

    /// Transversal positions of the element with the given index.
    pub fn positions(&self, mut index: usize) -> Vec<usize> {
        let mut pos = vec![0; self.levels.len()];
        for (l, r) in self.radices().enumerate().collect::<Vec<_>>().into_iter().rev() {
            pos[l] = index % r;
            index /= r;
        }
        pos
    }

    fn index_from_positions(&self, pos: &[usize]) -> usize {
        self.radices().zip(pos).fold(0usize, |acc, (r, &p)| acc * r + p)
    }

    /// Image of `x` under the element with transversal positions `pos`.
    #[inline]
    pub fn eval_positions(&self, pos: &[usize], x: usize) -> usize {
        let mut y = x;
        for l in (0..self.levels.len()).rev() {
            y = self.levels[l].transversal[pos[l]].apply(y);
        }
        y
    }

    pub fn element(&self, index: usize) -> Permutation {
        let pos = self.positions(index);
        let images = (0..self.degree).map(|x| self.eval_positions(&pos, x)).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Index of a group element given by its point map. Only base images are
    /// read, so the answer is meaningful only for members of the group.
    pub fn index_of_map(&self, f: impl Fn(usize) -> usize) -> Option<usize> {
        let mut pos: Vec<usize> = Vec::with_capacity(self.levels.len());
        for l in 0..self.levels.len() {
            let mut y = f(self.levels[l].point);
            for (m, &p) in pos.iter().enumerate() {
                y = self.levels[m].inverse_transversal[p].apply(y);
            }
            pos.push(self.levels[l].position_of(y)?);
        }
        Some(self.index_from_positions(&pos))
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index_of_map(|x| g.apply(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles(n, s).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(StabChain::new(4, &[p(4, "(0 1)"), p(4, "(0 1 2 3)")]).order(), 24);
        assert_eq!(StabChain::new(5, &[p(5, "(0 1 2 3 4)"), p(5, "(1 2 4 3)")]).order(), 20);
        assert_eq!(StabChain::new(3, &[]).order(), 1);
        assert_eq!(StabChain::new(8, &[p(8, "(0 1 2 3 4 5 6 7)"), p(8, "(0 1)")]).order(), 40320);
    }

    #[test]
    fn base_prefix_gives_pointwise_stabilizer() {
        // S3 on {0,1,2} times S3 on {3,4,5}; fix 0,1,2 pointwise.
        let gens = [p(6, "(0 1)"), p(6, "(0 1 2)"), p(6, "(3 4)"), p(6, "(3 4 5)")];
        let chain = StabChain::with_base_prefix(6, &gens, &[0, 1, 2]);
        assert_eq!(&chain.base()[..3], &[0, 1, 2]);
        assert_eq!(chain.order(), 36);
        assert_eq!(chain.order_from(3), 6);
        assert!(chain.stabilizer_generators(3).iter().all(|g| g.fixes_all(&[0, 1, 2])));
    }

    #[test]
    fn membership() {
        let chain = StabChain::new(4, &[p(4, "(0 1 2)"), p(4, "(1 2 3)")]);
        assert_eq!(chain.order(), 12);
        assert!(chain.contains(&p(4, "(0 1)(2 3)")));
        assert!(!chain.contains(&p(4, "(0 1)")));
    }

    #[test]
    fn indices_enumerate_each_element_once() {
        let chain = StabChain::new(5, &[p(5, "(0 1 2 3 4)"), p(5, "(1 2 4 3)")]);
        let mut seen = std::collections::HashSet::new();
        for i in 0..chain.order() as usize {
            let g = chain.element(i);
            assert!(chain.contains(&g));
            assert_eq!(chain.index_of(&g), Some(i));
            assert!(seen.insert(g));
        }
        assert!(chain.element(0).is_identity());
    }
}
