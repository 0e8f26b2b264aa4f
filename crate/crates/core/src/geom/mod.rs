//! Pregeometries: typed element sets with a cross-type incidence relation.
//!
//! Element ids are dense, `0..n`, ordered by type and then by input order, so
//! each type fiber is a contiguous id range and a permutation group on the
//! elements lines up with the geometry without any translation table.

mod automorphism;
mod decompose;

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;

pub use decompose::TypePartition;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pregeometry {
    types: Vec<String>,
    element_types: Vec<usize>,
    fibers: Vec<Range<usize>>,
    /// Row-major `n x n` incidence matrix, without the diagonal.
    matrix: Vec<bool>,
}

impl Pregeometry {
    /// Builds a pregeometry whose elements are already ordered by type.
    ///
    /// `element_types[x]` is the index into `types` of element `x`.
    /// Incidence pairs are unordered; duplicates are ignored.
    pub fn new(
        types: Vec<String>,
        element_types: Vec<usize>,
        incidences: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for t in &types {
            if !seen.insert(t.as_str()) {
                return Err(Error::InvalidGeometry(format!("type label {t:?} listed twice")));
            }
        }
        let n = element_types.len();
        for (x, &t) in element_types.iter().enumerate() {
            if t >= types.len() {
                return Err(Error::InvalidGeometry(format!("element {x} has unknown type index {t}")));
            }
        }
        if element_types.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidGeometry(
                "elements must be ordered by type; use Pregeometry::from_labeled to reorder".into(),
            ));
        }
        let mut fibers = Vec::with_capacity(types.len());
        let mut start = 0;
        for (i, label) in types.iter().enumerate() {
            let end = start + element_types[start..].iter().take_while(|&&t| t == i).count();
            if end == start {
                return Err(Error::InvalidGeometry(format!("type {label:?} has no elements")));
            }
            fibers.push(start..end);
            start = end;
        }
        let mut matrix = vec![false; n * n];
        for (x, y) in incidences {
            if x >= n || y >= n {
                return Err(Error::InvalidGeometry(format!("incidence ({x}, {y}) names a missing element")));
            }
            if element_types[x] == element_types[y] {
                return Err(Error::InvalidGeometry(format!(
                    "elements {x} and {y} share type {:?} and cannot be incident",
                    types[element_types[x]]
                )));
            }
            matrix[x * n + y] = true;
            matrix[y * n + x] = true;
        }
        Ok(Pregeometry { types, element_types, fibers, matrix })
    }

    /// Builds a pregeometry from labelled elements in any order.
    ///
    /// `elements` holds `(id, type label)` pairs with ids exactly `0..n` in
    /// some order. Returns the geometry and the map from input id to
    /// canonical id.
    pub fn from_labeled(
        types: Vec<String>,
        elements: &[(usize, String)],
        incidences: &[(usize, usize)],
    ) -> Result<(Self, Vec<usize>)> {
        let index: HashMap<&str, usize> = types.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
        let n = elements.len();
        let mut type_of = vec![usize::MAX; n];
        for (id, label) in elements {
            if *id >= n {
                return Err(Error::InvalidGeometry(format!("element id {id} is not in 0..{n}")));
            }
            if type_of[*id] != usize::MAX {
                return Err(Error::InvalidGeometry(format!("element id {id} listed twice")));
            }
            type_of[*id] = *index.get(label.as_str()).ok_or_else(|| Error::UnknownType(label.clone()))?;
        }
        let mut order: Vec<usize> = elements.iter().map(|(id, _)| *id).collect();
        // stable: type first, then input order
        order.sort_by_key(|&id| type_of[id]);
        let mut relabel = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let element_types = order.iter().map(|&old| type_of[old]).collect();
        for &(x, y) in incidences {
            if x >= n || y >= n {
                return Err(Error::InvalidGeometry(format!("incidence ({x}, {y}) names a missing element")));
            }
        }
        let pairs = incidences.iter().map(|&(x, y)| (relabel[x], relabel[y]));
        Ok((Self::new(types, element_types, pairs)?, relabel))
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        let again = Pregeometry::new(self.types.clone(), self.element_types.clone(), self.incidences())?;
        if again != *self {
            return Err(Error::Internal("pregeometry failed revalidation".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn type_label(&self, i: usize) -> &str {
        &self.types[i]
    }

    pub fn type_index(&self, label: &str) -> Result<usize> {
        self.types
            .iter()
            .position(|t| t == label)
            .ok_or_else(|| Error::UnknownType(label.to_string()))
    }

    pub fn element_count(&self) -> usize {
        self.element_types.len()
    }

    pub fn type_of(&self, x: usize) -> usize {
        self.element_types[x]
    }

    pub fn element_types(&self) -> &[usize] {
        &self.element_types
    }

    pub fn fiber(&self, i: usize) -> Range<usize> {
        self.fibers[i].clone()
    }

    pub fn fiber_elements(&self, i: usize) -> Vec<usize> {
        self.fiber(i).collect()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(|r| r.len()).collect()
    }

    /// Elements whose types lie in `types`, in id order.
    pub fn elements_of_types(&self, types: &[usize]) -> Vec<usize> {
        let mut ts = types.to_vec();
        ts.sort_unstable();
        ts.dedup();
        ts.into_iter().flat_map(|t| self.fiber(t)).collect()
    }

    /// Incidence, reflexive on the diagonal.
    #[inline]
    pub fn incident(&self, x: usize, y: usize) -> bool {
        x == y || self.matrix[x * self.element_count() + y]
    }

    /// Cross-type incidences `(x, y)` with `x < y`, in lexicographic order.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let n = self.element_count();
        (0..n)
            .flat_map(|x| ((x + 1)..n).filter(move |&y| self.matrix[x * n + y]).map(move |y| (x, y)))
            .collect()
    }

    pub fn incidence_count(&self) -> usize {
        self.matrix.iter().filter(|&&b| b).count() / 2
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.element_count();
        (0..n).filter(move |&y| self.matrix[x * n + y])
    }

    /// Whether every element of type `i` is incident with every element of type `j`.
    pub fn fibers_completely_incident(&self, i: usize, j: usize) -> bool {
        self.fiber(i).all(|x| self.fiber(j).all(|y| self.incident(x, y)))
    }

    /// The `J`-truncation together with the map from new ids to old ids.
    pub fn truncation_with_map(&self, types: &[usize]) -> Result<(Pregeometry, Vec<usize>)> {
        if types.is_empty() {
            return Err(Error::InvalidGeometry("truncation to an empty type set".into()));
        }
        let mut ts = types.to_vec();
        ts.sort_unstable();
        ts.dedup();
        if let Some(&bad) = ts.iter().find(|&&t| t >= self.rank()) {
            return Err(Error::UnknownType(bad.to_string()));
        }
        let old: Vec<usize> = ts.iter().flat_map(|&t| self.fiber(t)).collect();
        let mut new_id = vec![usize::MAX; self.element_count()];
        for (k, &x) in old.iter().enumerate() {
            new_id[x] = k;
        }
        let labels = ts.iter().map(|&t| self.types[t].clone()).collect();
        let element_types = old
            .iter()
            .map(|&x| ts.binary_search(&self.type_of(x)).expect("type kept"))
            .collect();
        let pairs = self
            .incidences()
            .into_iter()
            .filter(|&(x, y)| new_id[x] != usize::MAX && new_id[y] != usize::MAX)
            .map(|(x, y)| (new_id[x], new_id[y]));
        Ok((Pregeometry::new(labels, element_types, pairs)?, old))
    }

    pub fn truncation(&self, types: &[usize]) -> Result<Pregeometry> {
        Ok(self.truncation_with_map(types)?.0)
    }

    /// Truncation by type labels.
    pub fn truncation_by_labels(&self, labels: &[&str]) -> Result<Pregeometry> {
        let idx = labels.iter().map(|l| self.type_index(l)).collect::<Result<Vec<_>>>()?;
        self.truncation(&idx)
    }

    fn bipartite_connected(&self, i: usize, j: usize) -> bool {
        let members: Vec<usize> = self.fiber(i).chain(self.fiber(j)).collect();
        let mut seen = vec![false; self.element_count()];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            let other = if self.type_of(x) == i { j } else { i };
            for y in self.fiber(other) {
                if !seen[y] && self.incident(x, y) {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == members.len()
    }

    /// Whether the incidence graph of every `{i, j}`-truncation is connected.
    pub fn rank2_truncations_connected(&self) -> Result<bool> {
        if self.rank() < 2 {
            return Err(Error::Precondition("rank-2 connectivity needs rank at least 2".into()));
        }
        Ok((0..self.rank()).all(|i| ((i + 1)..self.rank()).all(|j| self.bipartite_connected(i, j))))
    }

    pub fn is_complete_multipartite(&self) -> bool {
        (0..self.rank()).all(|i| ((i + 1)..self.rank()).all(|j| self.fibers_completely_incident(i, j)))
    }

    /// The complete multipartite pregeometry with `k` types of `m` elements,
    /// type labels `"1"` to `"k"`.
    pub fn gamma_km(k: usize, m: usize) -> Result<Pregeometry> {
        if k == 0 || m == 0 {
            return Err(Error::InvalidGeometry(format!("gamma_km needs k, m >= 1 (got k={k}, m={m})")));
        }
        let types = (1..=k).map(|i| i.to_string()).collect();
        let element_types: Vec<usize> = (0..k).flat_map(|i| std::iter::repeat_n(i, m)).collect();
        let n = k * m;
        let pairs = (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).filter(|&(x, y)| x / m != y / m);
        Pregeometry::new(types, element_types, pairs)
    }

    /// Disjoint union with complete incidence between the summands. Colliding
    /// type labels get the summand index (1 or 2) appended.
    pub fn direct_sum(&self, other: &Pregeometry) -> Pregeometry {
        let collide: BTreeSet<&str> = self
            .types
            .iter()
            .filter(|t| other.types.contains(t))
            .map(String::as_str)
            .collect();
        let mut taken: BTreeSet<String> = self
            .types
            .iter()
            .chain(other.types.iter())
            .filter(|t| !collide.contains(t.as_str()))
            .cloned()
            .collect();
        let mut rename = |label: &str, summand: usize| -> String {
            if !collide.contains(label) {
                return label.to_string();
            }
            let mut candidate = format!("{label}.{summand}");
            while taken.contains(&candidate) {
                candidate.push_str(&format!(".{summand}"));
            }
            taken.insert(candidate.clone());
            candidate
        };
        let mut types: Vec<String> = self.types.iter().map(|t| rename(t, 1)).collect();
        types.extend(other.types.iter().map(|t| rename(t, 2)));
        let offset_t = self.rank();
        let offset_x = self.element_count();
        let element_types = self
            .element_types
            .iter()
            .copied()
            .chain(other.element_types.iter().map(|t| t + offset_t))
            .collect();
        let mut pairs = self.incidences();
        pairs.extend(other.incidences().into_iter().map(|(x, y)| (x + offset_x, y + offset_x)));
        for x in 0..offset_x {
            for y in 0..other.element_count() {
                pairs.push((x, y + offset_x));
            }
        }
        Pregeometry::new(types, element_types, pairs).expect("direct sum of valid pregeometries is valid")
    }

    /// Number of types with more than one element.
    pub fn effective_rank(&self) -> usize {
        self.fibers.iter().filter(|r| r.len() >= 2).count()
    }

    /// Whether every flag lies in a chamber.
    pub fn is_geometry(&self) -> bool {
        if self.is_complete_multipartite() {
            return true;
        }
        let mut flag = Vec::with_capacity(self.rank());
        let mut used = vec![false; self.rank()];
        self.flags_extend(&mut flag, &mut used, 0)
    }

    fn flags_extend(&self, flag: &mut Vec<usize>, used: &mut [bool], next: usize) -> bool {
        let n = self.element_count();
        let extendable = |x: usize, flag: &[usize], used: &[bool]| {
            !used[self.type_of(x)] && flag.iter().all(|&z| self.incident(x, z))
        };
        if flag.len() < self.rank() && !(0..n).any(|x| extendable(x, flag, used)) {
            return false;
        }
        for x in next..n {
            if extendable(x, flag, used) {
                flag.push(x);
                used[self.type_of(x)] = true;
                let ok = self.flags_extend(flag, used, x + 1);
                used[self.type_of(x)] = false;
                flag.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Equality after matching types by label and elements by position in
    /// their fiber.
    pub fn equivalent_by_labels(&self, other: &Pregeometry) -> bool {
        if self.rank() != other.rank() || self.element_count() != other.element_count() {
            return false;
        }
        let mut map = vec![0; self.element_count()];
        for (i, label) in self.types.iter().enumerate() {
            let Ok(j) = other.type_index(label) else { return false };
            if self.fiber(i).len() != other.fiber(j).len() {
                return false;
            }
            for (x, y) in self.fiber(i).zip(other.fiber(j)) {
                map[x] = y;
            }
        }
        self.incidence_count() == other.incidence_count()
            && self.incidences().into_iter().all(|(x, y)| other.incident(map[x], map[y]))
    }
}
