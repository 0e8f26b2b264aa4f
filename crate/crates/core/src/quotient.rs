//! Imprimitive and normal quotients, degeneracy and basicness.

use serde::{Deserialize, Serialize};

use crate::action::BoundAction;
use crate::error::{Error, Result};
use crate::geom::Pregeometry;
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};

/// A partition of the elements whose parts each lie inside one fiber.
///
/// Parts are sorted and ordered by (type, smallest element), which is also
/// the order of the quotient's element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeRefiningPartition {
    parts: Vec<Vec<usize>>,
}

impl TypeRefiningPartition {
    pub fn new(geometry: &Pregeometry, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = geometry.element_count();
        let mut seen = vec![false; n];
        for part in &mut parts {
            if part.is_empty() {
                return Err(Error::InvalidGeometry("empty part".into()));
            }
            part.sort_unstable();
            if part[0] >= n {
                return Err(Error::InvalidGeometry(format!("element {} is out of range", part[0])));
            }
            let t = geometry.type_of(part[0]);
            for &x in part.iter() {
                if x >= n || seen[x] {
                    return Err(Error::InvalidGeometry(format!("element {x} is out of range or in two parts")));
                }
                seen[x] = true;
                if geometry.type_of(x) != t {
                    return Err(Error::InvalidGeometry(format!("part containing {x} mixes types")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidGeometry(format!("element {x} is in no part")));
        }
        parts.sort_by_key(|p| (geometry.type_of(p[0]), p[0]));
        Ok(TypeRefiningPartition { parts })
    }

    pub fn singletons(geometry: &Pregeometry) -> Self {
        TypeRefiningPartition { parts: (0..geometry.element_count()).map(|x| vec![x]).collect() }
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

    pub fn is_singletons(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// Element id to part id.
    pub fn part_map(&self) -> Vec<usize> {
        let n = self.parts.iter().map(Vec::len).sum();
        let mut map = vec![0; n];
        for (p, part) in self.parts.iter().enumerate() {
            for &x in part {
                map[x] = p;
            }
        }
        map
    }
}

/// Incidence counts from type `from_type` into type `to_type` in a normal
/// quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityEntry {
    pub from_type: usize,
    pub to_type: usize,
    /// Number of elements of an incident part of type `to_type` incident
    /// with a given element of a part of type `from_type`, when the same for
    /// every incident part pair.
    pub k: Option<usize>,
    /// Number of parts of type `to_type` incident with a part of type `from_type`.
    pub part_degree: usize,
}

#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub partition: TypeRefiningPartition,
    pub part_map: Vec<usize>,
    pub quotient: BoundAction,
    /// Present for normal quotients.
    pub uniformity: Option<Vec<UniformityEntry>>,
}

impl Pregeometry {
    /// Some fiber is a singleton.
    pub fn is_primitive_degenerate(&self) -> bool {
        self.fiber_sizes().contains(&1)
    }

    /// At most one fiber has more than one element.
    pub fn is_normal_degenerate(&self) -> bool {
        self.effective_rank() <= 1
    }
}

fn check_invariant(group: &PermGroup, partition: &TypeRefiningPartition) -> Result<()> {
    let map = partition.part_map();
    for (index, g) in group.generators().iter().enumerate() {
        for part in partition.parts() {
            let target = map[g.apply(part[0])];
            if part.iter().any(|&x| map[g.apply(x)] != target) {
                return Err(Error::NotInvariant(format!("generator {index} splits the part containing {}", part[0])));
            }
        }
    }
    Ok(())
}

/// All G-invariant type-refining partitions, built from an independent
/// choice of block system on every fiber. With `preserve_effective_rank`,
/// partitions collapsing a fiber of size at least 2 to one part are dropped.
pub fn invariant_type_refining_partitions(
    a: &BoundAction,
    limits: &Limits,
    preserve_effective_rank: bool,
) -> Result<Vec<TypeRefiningPartition>> {
    let geom = a.geometry();
    let n = geom.element_count();
    if n > limits.partition_elements {
        return Err(Error::capacity("elements for partition enumeration", n as u128, limits.partition_elements as u128));
    }
    a.require_family()?;
    let mut per_type = Vec::with_capacity(geom.rank());
    let mut total: u128 = 1;
    for i in 0..geom.rank() {
        let fiber = geom.fiber_elements(i);
        let mut systems = a.group().block_systems(&fiber)?;
        if preserve_effective_rank && fiber.len() >= 2 {
            systems.retain(|s| s.len() >= 2);
        }
        total = total.saturating_mul(systems.len() as u128);
        if total > limits.partition_count as u128 {
            return Err(Error::capacity("invariant partitions", total, limits.partition_count as u128));
        }
        per_type.push(systems);
    }
    let mut out = vec![Vec::new()];
    for systems in &per_type {
        out = out
            .into_iter()
            .flat_map(|acc: Vec<Vec<usize>>| {
                systems.iter().map(move |s| [acc.clone(), s.clone()].concat())
            })
            .collect();
    }
    out.into_iter().map(|parts| TypeRefiningPartition::new(geom, parts)).collect()
}

/// The quotient by a G-invariant type-refining partition.
pub fn quotient_by(a: &BoundAction, partition: &TypeRefiningPartition) -> Result<QuotientResult> {
    let geom = a.geometry();
    let checked = TypeRefiningPartition::new(geom, partition.parts().to_vec())?;
    check_invariant(a.group(), &checked)?;
    let map = checked.part_map();
    let parts = checked.parts();
    let element_types: Vec<usize> = parts.iter().map(|p| geom.type_of(p[0])).collect();
    let incidences: Vec<(usize, usize)> = geom.incidences().into_iter().map(|(x, y)| (map[x], map[y])).collect();
    let quotient_geom = Pregeometry::new(geom.types().to_vec(), element_types, incidences)?;
    let gens: Vec<Permutation> = a
        .group()
        .generators()
        .iter()
        .map(|g| Permutation::new(parts.iter().map(|p| map[g.apply(p[0])]).collect()))
        .collect::<Result<_>>()?;
    let group = PermGroup::new(parts.len(), gens)?;
    let quotient = BoundAction::bind(quotient_geom, group)
        .map_err(|e| Error::Internal(format!("induced action on parts failed to bind: {e}")))?;
    if a.in_family_g() && !quotient.in_family_g() {
        return Err(Error::Internal("quotient of a pair in the family left the family".into()));
    }
    Ok(QuotientResult { partition: checked, part_map: map, quotient, uniformity: None })
}

/// The quotient by the orbits of a normal subgroup, with its k-table.
pub fn normal_quotient(a: &BoundAction, n: &PermGroup) -> Result<QuotientResult> {
    let g = a.group();
    if n.degree() != g.degree() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: n.degree() });
    }
    if let Some(i) = n.generators().iter().position(|x| !g.contains(x)) {
        return Err(Error::NotMember(format!("generator {i} of the subgroup")));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("conjugate of a generator leaves the subgroup".into()));
    }
    let geom = a.geometry();
    let all: Vec<usize> = (0..geom.element_count()).collect();
    let partition = TypeRefiningPartition::new(geom, n.orbits(&all)?)?;
    let mut result = quotient_by(a, &partition)?;
    result.uniformity = Some(uniformity_table(geom, &result)?);
    Ok(result)
}

fn uniformity_table(geom: &Pregeometry, result: &QuotientResult) -> Result<Vec<UniformityEntry>> {
    let parts = result.partition.parts();
    let qgeom = result.quotient.geometry();
    let rank = geom.rank();
    let mut table = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let mut k_values = Vec::new();
            let mut degrees = Vec::new();
            for p in qgeom.fiber(i) {
                degrees.push(qgeom.fiber(j).filter(|&q| qgeom.incident(p, q)).count());
                for q in qgeom.fiber(j).filter(|&q| qgeom.incident(p, q)) {
                    let counts: Vec<usize> = parts[p]
                        .iter()
                        .map(|&x| parts[q].iter().filter(|&&y| geom.incident(x, y)).count())
                        .collect();
                    if counts.iter().any(|&c| c != counts[0]) {
                        return Err(Error::Internal(format!(
                            "incidence count from part {p} into part {q} is not constant: {counts:?}"
                        )));
                    }
                    k_values.push(counts[0]);
                }
            }
            if k_values.is_empty() {
                continue;
            }
            if degrees.iter().any(|&d| d != degrees[0]) {
                return Err(Error::Internal(format!("parts of type {i} meet different numbers of type-{j} parts")));
            }
            let k = k_values.iter().all(|&v| v == k_values[0]).then_some(k_values[0]);
            table.push(UniformityEntry { from_type: i, to_type: j, k, part_degree: degrees[0] });
        }
    }
    Ok(table)
}

/// Not primitive-degenerate and primitive on every fiber.
pub fn is_primitive_basic(a: &BoundAction) -> Result<bool> {
    a.require_family()?;
    Ok(!a.geometry().is_primitive_degenerate() && a.is_fully_primitive()?)
}

/// The definition unwound: not degenerate, and every non-identity
/// invariant quotient is primitive-degenerate.
pub fn is_primitive_basic_direct(a: &BoundAction, limits: &Limits) -> Result<bool> {
    if a.geometry().is_primitive_degenerate() {
        a.require_family()?;
        return Ok(false);
    }
    for p in invariant_type_refining_partitions(a, limits, false)? {
        if !p.is_singletons() && !quotient_by(a, &p)?.quotient.geometry().is_primitive_degenerate() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minimal normal subgroup intransitive on at least two fibers.
pub fn normal_basic_witness(a: &BoundAction, limits: &Limits) -> Result<Option<PermGroup>> {
    a.require_family()?;
    let geom = a.geometry();
    for n in a.minimal_normal_subgroups(limits)? {
        let mut intransitive = 0;
        for i in 0..geom.rank() {
            if !n.is_transitive(&geom.fiber_elements(i))? {
                intransitive += 1;
            }
        }
        if intransitive >= 2 {
            return Ok(Some(n.clone()));
        }
    }
    Ok(None)
}

/// Not normal-degenerate, and every minimal normal subgroup is transitive
/// on all but at most one fiber.
pub fn is_normal_basic(a: &BoundAction, limits: &Limits) -> Result<bool> {
    a.require_family()?;
    if a.geometry().is_normal_degenerate() {
        return Ok(false);
    }
    Ok(normal_basic_witness(a, limits)?.is_none())
}

/// The definition unwound over every normal subgroup.
pub fn is_normal_basic_direct(a: &BoundAction, limits: &Limits) -> Result<bool> {
    a.require_family()?;
    if a.geometry().is_normal_degenerate() {
        return Ok(false);
    }
    for n in a.group().normal_subgroups(limits)? {
        if !n.is_trivial() && !normal_quotient(a, &n)?.quotient.geometry().is_normal_degenerate() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g22() -> BoundAction {
        BoundAction::bind(
            Pregeometry::gamma_km(2, 2).unwrap(),
            PermGroup::from_cycles(4, &["(0 1)", "(2 3)"]).unwrap(),
        )
        .unwrap()
    }

    fn g24_z4z4() -> BoundAction {
        BoundAction::bind(
            Pregeometry::gamma_km(2, 4).unwrap(),
            PermGroup::from_cycles(8, &["(0 1 2 3)", "(4 5 6 7)"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn partition_counts() {
        let lim = Limits::default();
        assert_eq!(invariant_type_refining_partitions(&g22(), &lim, false).unwrap().len(), 4);
        let all = invariant_type_refining_partitions(&g24_z4z4(), &lim, false).unwrap();
        assert_eq!(all.len(), 9);
        assert!(all.iter().any(|p| p.is_singletons()));
        assert_eq!(invariant_type_refining_partitions(&g24_z4z4(), &lim, true).unwrap().len(), 4);
    }

    #[test]
    fn partition_cap() {
        let lim = Limits { partition_count: 3, ..Limits::default() };
        assert!(matches!(
            invariant_type_refining_partitions(&g24_z4z4(), &lim, false),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn identity_and_full_quotients() {
        let a = g24_z4z4();
        let id = quotient_by(&a, &TypeRefiningPartition::singletons(a.geometry())).unwrap();
        assert_eq!(id.quotient.geometry(), a.geometry());
        let q = normal_quotient(&a, a.group()).unwrap();
        assert_eq!(q.quotient.geometry().fiber_sizes(), vec![1, 1]);
        assert!(q.quotient.geometry().is_normal_degenerate());
        let trivial = normal_quotient(&a, &PermGroup::trivial(8)).unwrap();
        assert_eq!(trivial.quotient.geometry(), a.geometry());
    }

    #[test]
    fn size_two_blocks() {
        let a = g24_z4z4();
        let n = PermGroup::from_cycles(8, &["(0 2)(1 3)"]).unwrap();
        let q = normal_quotient(&a, &n).unwrap();
        let qg = q.quotient.geometry();
        assert_eq!(qg.fiber_sizes(), vec![2, 4]);
        assert!(qg.is_complete_multipartite());
        assert!(q.quotient.in_family_g());
        let table = q.uniformity.unwrap();
        let e12 = table.iter().find(|e| e.from_type == 0).unwrap();
        let e21 = table.iter().find(|e| e.from_type == 1).unwrap();
        assert_eq!((e12.k, e12.part_degree), (Some(1), 4));
        assert_eq!((e21.k, e21.part_degree), (Some(2), 2));
    }

    #[test]
    fn non_invariant_partition() {
        let a = g24_z4z4();
        let p = TypeRefiningPartition::new(a.geometry(), vec![vec![0, 1], vec![2, 3], vec![4], vec![5], vec![6], vec![7]])
            .unwrap();
        assert!(matches!(quotient_by(&a, &p), Err(Error::NotInvariant(_))));
        let mixed = TypeRefiningPartition::new(a.geometry(), vec![vec![0, 4]]);
        assert!(mixed.is_err());
    }

    #[test]
    fn normal_quotient_errors() {
        let a = g24_z4z4();
        let outside = PermGroup::from_cycles(8, &["(0 1)"]).unwrap();
        assert!(matches!(normal_quotient(&a, &outside), Err(Error::NotMember(_))));
        let s = BoundAction::bind(Pregeometry::gamma_km(1, 3).unwrap(), PermGroup::symmetric(3)).unwrap();
        let not_normal = PermGroup::from_cycles(3, &["(0 1)"]).unwrap();
        assert!(matches!(normal_quotient(&s, &not_normal), Err(Error::NotNormal(_))));
    }

    #[test]
    fn degeneracy() {
        let g11 = Pregeometry::gamma_km(1, 1).unwrap();
        let g12 = Pregeometry::gamma_km(1, 2).unwrap();
        let a = g11.direct_sum(&Pregeometry::gamma_km(1, 5).unwrap());
        assert!(a.is_primitive_degenerate() && a.is_normal_degenerate());
        let b = g11.direct_sum(&g12).direct_sum(&g12);
        assert!(b.is_primitive_degenerate() && !b.is_normal_degenerate());
        let c = Pregeometry::gamma_km(2, 2).unwrap();
        assert!(!c.is_primitive_degenerate() && !c.is_normal_degenerate());
    }

    #[test]
    fn basicness() {
        let lim = Limits::default();
        let a = g24_z4z4();
        assert!(!is_primitive_basic(&a).unwrap());
        assert!(!is_primitive_basic_direct(&a, &lim).unwrap());
        assert!(!is_normal_basic(&a, &lim).unwrap());
        assert!(!is_normal_basic_direct(&a, &lim).unwrap());
        assert!(normal_basic_witness(&a, &lim).unwrap().is_some());

        let b = g22();
        assert!(is_primitive_basic(&b).unwrap());
        assert!(is_primitive_basic_direct(&b, &lim).unwrap());
        assert!(is_normal_basic(&b, &lim).unwrap());
        assert!(is_normal_basic_direct(&b, &lim).unwrap());
    }
}
