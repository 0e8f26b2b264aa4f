//! A permutation group bound to a pregeometry as type-preserving automorphisms.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Pregeometry;
use crate::limits::Limits;
use crate::perm::PermGroup;

/// The split of the type set by how the group acts on each fiber.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClasses {
    /// Types whose kernel is nontrivial.
    pub unfaithful: Vec<usize>,
    /// Faithful types on which the group is quasiprimitive.
    pub quasiprimitive: Vec<usize>,
    /// Faithful types on which the group is not quasiprimitive.
    pub non_quasiprimitive: Vec<usize>,
}

impl TypeClasses {
    /// `s = |I_unf ∪ I_nonqp|`.
    pub fn s(&self) -> usize {
        self.unfaithful.len() + self.non_quasiprimitive.len()
    }

    pub fn faithful(&self) -> Vec<usize> {
        let mut v = [self.quasiprimitive.clone(), self.non_quasiprimitive.clone()].concat();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug)]
pub struct BoundAction {
    geometry: Pregeometry,
    group: PermGroup,
    kernels: Vec<PermGroup>,
    minimal_normals: OnceLock<Vec<PermGroup>>,
}

impl BoundAction {
    /// Checks that every generator preserves types and incidence, then
    /// computes the kernel on each fiber.
    pub fn bind(geometry: Pregeometry, group: PermGroup) -> Result<Self> {
        let n = geometry.element_count();
        if group.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: group.degree() });
        }
        let incidences = geometry.incidences();
        for (index, g) in group.generators().iter().enumerate() {
            if let Some(x) = (0..n).find(|&x| geometry.type_of(g.apply(x)) != geometry.type_of(x)) {
                return Err(Error::TypeViolation { generator: index, element: x });
            }
            if let Some(&(x, y)) = incidences.iter().find(|&&(x, y)| !geometry.incident(g.apply(x), g.apply(y))) {
                return Err(Error::IncidenceViolation { generator: index, x, y });
            }
        }
        let kernels = (0..geometry.rank())
            .map(|i| group.pointwise_stabilizer(&geometry.fiber_elements(i)))
            .collect();
        Ok(BoundAction { geometry, group, kernels, minimal_normals: OnceLock::new() })
    }

    pub fn geometry(&self) -> &Pregeometry {
        &self.geometry
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.geometry.rank()
    }

    /// `T_i`, the pointwise stabilizer of fiber `i`.
    pub fn kernel(&self, i: usize) -> &PermGroup {
        &self.kernels[i]
    }

    pub fn kernels(&self) -> &[PermGroup] {
        &self.kernels
    }

    /// Kernel by type label.
    pub fn type_kernel(&self, label: &str) -> Result<&PermGroup> {
        Ok(&self.kernels[self.geometry.type_index(label)?])
    }

    /// Pointwise stabilizer of the union of the given fibers.
    pub fn kernel_on_types(&self, types: &[usize]) -> PermGroup {
        self.group.pointwise_stabilizer(&self.geometry.elements_of_types(types))
    }

    pub fn is_faithful_on(&self, i: usize) -> bool {
        self.kernels[i].is_trivial()
    }

    /// Why the pair falls outside the family, if it does.
    pub fn family_violation(&self) -> Option<String> {
        if self.rank() >= 2 && !self.geometry.rank2_truncations_connected().expect("rank checked") {
            return Some("some rank-2 truncation is disconnected".into());
        }
        (0..self.rank())
            .find(|&i| !self.group.is_transitive(&self.geometry.fiber_elements(i)).expect("fibers are invariant"))
            .map(|i| format!("group is intransitive on type {:?}", self.geometry.type_label(i)))
    }

    /// Connected rank-2 truncations (vacuous below rank 2) and a group
    /// transitive on every fiber.
    pub fn in_family_g(&self) -> bool {
        self.family_violation().is_none()
    }

    pub(crate) fn require_family(&self) -> Result<()> {
        match self.family_violation() {
            Some(reason) => Err(Error::Precondition(format!("pair is not in the family: {reason}"))),
            None => Ok(()),
        }
    }

    /// Minimal normal subgroups of the group, cached after the first
    /// successful computation.
    pub fn minimal_normal_subgroups(&self, limits: &Limits) -> Result<&[PermGroup]> {
        if let Some(v) = self.minimal_normals.get() {
            return Ok(v);
        }
        let v = self.group.minimal_normal_subgroups(limits)?;
        let _ = self.minimal_normals.set(v);
        Ok(self.minimal_normals.get().expect("just set"))
    }

    /// Quasiprimitivity on fiber `i`, through the minimal normal subgroups.
    pub fn is_quasiprimitive_on(&self, i: usize, limits: &Limits) -> Result<bool> {
        let fiber = self.geometry.fiber_elements(i);
        if !self.group.is_transitive(&fiber)? {
            return Err(Error::NotTransitive);
        }
        for n in self.minimal_normal_subgroups(limits)? {
            if !n.is_transitive(&fiber)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn classify_types(&self, limits: &Limits) -> Result<TypeClasses> {
        self.require_family()?;
        let mut classes = TypeClasses::default();
        for i in 0..self.rank() {
            if !self.is_faithful_on(i) {
                classes.unfaithful.push(i);
            } else if self.is_quasiprimitive_on(i, limits)? {
                classes.quasiprimitive.push(i);
            } else {
                classes.non_quasiprimitive.push(i);
            }
        }
        Ok(classes)
    }

    /// The induced group is primitive on every fiber; faithfulness is not required.
    pub fn is_fully_primitive(&self) -> Result<bool> {
        self.require_family()?;
        for i in 0..self.rank() {
            if !self.group.is_primitive(&self.geometry.fiber_elements(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Faithful and quasiprimitive on every fiber.
    pub fn is_fully_quasiprimitive(&self, limits: &Limits) -> Result<bool> {
        let classes = self.classify_types(limits)?;
        Ok(classes.quasiprimitive.len() == self.rank())
    }

    /// The truncation to `types` with the induced (faithful) group on it.
    pub fn restrict_to_types(&self, types: &[usize]) -> Result<BoundAction> {
        let (geometry, old) = self.geometry.truncation_with_map(types)?;
        let group = self.group.induced(&old)?;
        BoundAction::bind(geometry, group)
    }
}
