//! Direct-sum decomposition of the type set.

use serde::{Deserialize, Serialize};

use super::Pregeometry;
use crate::error::{Error, Result};

/// A partition of the type indices `0..rank`. Parts are sorted and listed by
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypePartition {
    parts: Vec<Vec<usize>>,
}

impl TypePartition {
    pub fn new(rank: usize, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; rank];
        for part in &mut parts {
            if part.is_empty() {
                return Err(Error::InvalidGeometry("empty part in type partition".into()));
            }
            part.sort_unstable();
            for &t in part.iter() {
                if t >= rank || seen[t] {
                    return Err(Error::InvalidGeometry(format!("type {t} is out of range or repeated")));
                }
                seen[t] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidGeometry("type partition does not cover every type".into()));
        }
        parts.sort();
        Ok(TypePartition { parts })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }
}

impl Pregeometry {
    /// Connected components of the "not completely incident" graph on types.
    pub fn finest_decomposition(&self) -> TypePartition {
        let k = self.rank();
        let mut comp = vec![usize::MAX; k];
        let mut parts = Vec::new();
        for s in 0..k {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            comp[s] = id;
            let mut part = vec![s];
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for (j, c) in comp.iter_mut().enumerate() {
                    if *c == usize::MAX && !self.fibers_completely_incident(i, j) {
                        *c = id;
                        part.push(j);
                        stack.push(j);
                    }
                }
            }
            parts.push(part);
        }
        TypePartition::new(k, parts).expect("components partition the types")
    }

    pub fn is_indecomposable(&self) -> bool {
        self.finest_decomposition().is_trivial()
    }

    /// Whether `partition` is a direct-sum decomposition: types in different
    /// parts are completely incident.
    pub fn is_decomposition(&self, partition: &TypePartition) -> bool {
        let mut part_of = vec![0; self.rank()];
        for (p, part) in partition.parts().iter().enumerate() {
            for &t in part {
                part_of[t] = p;
            }
        }
        (0..self.rank()).all(|i| {
            ((i + 1)..self.rank()).all(|j| part_of[i] == part_of[j] || self.fibers_completely_incident(i, j))
        })
    }

    /// Rebuilds the pregeometry as the direct sum of its truncations to the
    /// parts of `partition`.
    pub fn reassemble(&self, partition: &TypePartition) -> Result<Pregeometry> {
        let mut pieces = partition.parts().iter().map(|p| self.truncation(p));
        let mut acc = pieces.next().ok_or_else(|| Error::InvalidGeometry("empty partition".into()))??;
        for piece in pieces {
            acc = acc.direct_sum(&piece?);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_multipartite_splits_fully() {
        let d = Pregeometry::gamma_km(3, 2).unwrap().finest_decomposition();
        assert_eq!(d.parts(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn fano_plus_point_set() {
        let fano = super::super::tests::fano();
        assert!(fano.is_indecomposable());
        let sum = fano.direct_sum(&Pregeometry::gamma_km(1, 3).unwrap());
        let d = sum.finest_decomposition();
        assert_eq!(d.parts(), &[vec![0, 1], vec![2]]);
        assert!(sum.is_decomposition(&d));
        assert!(!sum.is_decomposition(&TypePartition::new(3, vec![vec![0], vec![1, 2]]).unwrap()));
        assert!(sum.reassemble(&d).unwrap().equivalent_by_labels(&sum));
    }

    #[test]
    fn partition_validation() {
        assert!(TypePartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(TypePartition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(TypePartition::new(2, vec![vec![1], vec![0]]).unwrap().parts() == [vec![0], vec![1]]);
    }
}
