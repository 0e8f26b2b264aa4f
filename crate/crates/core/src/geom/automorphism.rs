//! Type-preserving automorphisms by fiberwise backtracking.

use super::Pregeometry;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};

struct Search<'a> {
    geom: &'a Pregeometry,
    /// Neighbor counts per type; images must carry the same signature.
    signature: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(geom: &'a Pregeometry) -> Self {
        let signature = (0..geom.element_count())
            .map(|x| {
                let mut s = vec![0; geom.rank()];
                for y in geom.neighbors(x) {
                    s[geom.type_of(y)] += 1;
                }
                s
            })
            .collect();
        Search { geom, signature }
    }

    /// An automorphism fixing `0..level` and sending `level` to `target`.
    fn find(&self, level: usize, target: usize) -> Option<Permutation> {
        let n = self.geom.element_count();
        let mut map: Vec<usize> = (0..level).collect();
        let mut used = vec![false; n];
        used[..level].iter_mut().for_each(|u| *u = true);
        if !self.fits(&map, level, target) {
            return None;
        }
        map.push(target);
        used[target] = true;
        if self.extend(&mut map, &mut used) {
            Some(Permutation::new(map).expect("search builds a bijection"))
        } else {
            None
        }
    }

    fn fits(&self, map: &[usize], x: usize, y: usize) -> bool {
        self.signature[x] == self.signature[y]
            && map.iter().enumerate().all(|(z, &w)| self.geom.incident(x, z) == self.geom.incident(y, w))
    }

    fn extend(&self, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = map.len();
        if x == self.geom.element_count() {
            return true;
        }
        for y in self.geom.fiber(self.geom.type_of(x)) {
            if !used[y] && self.fits(map, x, y) {
                map.push(y);
                used[y] = true;
                if self.extend(map, used) {
                    return true;
                }
                used[y] = false;
                map.pop();
            }
        }
        false
    }
}

impl Pregeometry {
    /// The group of type-preserving incidence-preserving permutations of the
    /// elements, as a strong generating set built from the deepest point
    /// stabilizer upwards.
    pub fn automorphisms_bruteforce(&self, limits: &Limits) -> Result<PermGroup> {
        let n = self.element_count();
        if n > limits.automorphism_elements {
            return Err(Error::capacity("elements for automorphism search", n as u128, limits.automorphism_elements as u128));
        }
        let search = Search::new(self);
        let mut gens: Vec<Permutation> = Vec::new();
        for level in (0..n).rev() {
            let mut orbit = orbit_of(level, &gens, n);
            for target in self.fiber(self.type_of(level)).filter(|&t| t > level) {
                if orbit[target] {
                    continue;
                }
                if let Some(g) = search.find(level, target) {
                    gens.push(g);
                    orbit = orbit_of(level, &gens, n);
                }
            }
        }
        PermGroup::new(n, gens)
    }
}

fn orbit_of(x: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}
