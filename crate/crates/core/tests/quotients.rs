mod common;

use std::collections::BTreeSet;

use common::*;
use pregeom::classify::{classify_normal_basic, full_report, verify_case, Case, Verdict};
use pregeom::gen::{gamma_km_product, normal_basic_battery, GeneratorSpec};
use pregeom::quotient::{
    invariant_type_refining_partitions, is_normal_basic, is_normal_basic_direct, is_primitive_basic,
    is_primitive_basic_direct, normal_quotient, quotient_by,
};
use pregeom::{BoundAction, Error, Limits, PermGroup, TypeRefiningPartition};

fn small_instances() -> Vec<(String, BoundAction)> {
    let lim = Limits::default();
    let mut out: Vec<(String, BoundAction)> = normal_basic_battery()
        .into_iter()
        .filter(|s| !s.name.ends_with("A5"))
        .map(|s| (s.id(), s.build(&lim).unwrap()))
        .collect();
    for (k, m, sym) in [(2, 4, false), (2, 3, true), (3, 2, true), (2, 2, false), (3, 3, false)] {
        out.push((format!("gamma_km({k},{m},{sym})"), gamma_km_product(k, m, sym).unwrap()));
    }
    out
}

#[test]
fn kernels_match_enumeration() {
    for (id, a) in small_instances() {
        let elements = elements_of(a.group());
        assert_eq!(a.group().order(), elements.len() as u128, "{id}");
        for i in 0..a.rank() {
            let fiber = a.geometry().fiber_elements(i);
            assert_eq!(a.kernel(i).order(), kernel_of(&elements, &fiber).len() as u128, "{id} type {i}");
        }
    }
}

#[test]
fn type_classes_match_normal_subgroup_scan() {
    let lim = Limits::default();
    for (id, a) in small_instances() {
        if a.group().order() > 200 {
            continue;
        }
        let elements = elements_of(a.group());
        let normal: Vec<BTreeSet<usize>> = all_subgroups(&elements)
            .into_iter()
            .filter(|h| h.len() > 1 && is_normal_set(&elements, h))
            .collect();
        let classes = a.classify_types(&lim).unwrap();
        for i in 0..a.rank() {
            let fiber = a.geometry().fiber_elements(i);
            let faithful = kernel_of(&elements, &fiber).len() == 1;
            let qp = normal.iter().all(|h| {
                let gens: Vec<Perm> = h.iter().map(|&j| elements[j].clone()).collect();
                orbits(&gens, &fiber).len() == 1
            });
            assert_eq!(!classes.unfaithful.contains(&i), faithful, "{id} type {i}");
            if faithful {
                assert_eq!(classes.quasiprimitive.contains(&i), qp, "{id} type {i}");
            }
        }
    }
}

#[test]
fn basicness_agrees_with_definitions() {
    let lim = Limits::default();
    for (id, a) in small_instances() {
        assert_eq!(is_primitive_basic(&a).unwrap(), is_primitive_basic_direct(&a, &lim).unwrap(), "{id}");
        assert_eq!(is_normal_basic(&a, &lim).unwrap(), is_normal_basic_direct(&a, &lim).unwrap(), "{id}");
    }
}

/// `Q / P` as a partition of the parts of `P`.
fn coarsen(p: &TypeRefiningPartition, q: &TypeRefiningPartition, on: &BoundAction) -> TypeRefiningPartition {
    let map = p.part_map();
    let parts: Vec<Vec<usize>> = q
        .parts()
        .iter()
        .map(|part| part.iter().map(|&x| map[x]).collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    TypeRefiningPartition::new(on.geometry(), parts).unwrap()
}

fn refines(p: &TypeRefiningPartition, q: &TypeRefiningPartition) -> bool {
    let qm = q.part_map();
    p.parts().iter().all(|part| part.iter().all(|&x| qm[x] == qm[part[0]]))
}

#[test]
fn quotients_compose() {
    let lim = Limits::default();
    let mut checked = 0;
    for (id, a) in small_instances() {
        if a.geometry().element_count() > 12 {
            continue;
        }
        let all = invariant_type_refining_partitions(&a, &lim, false).unwrap();
        for p in &all {
            let qp = quotient_by(&a, p).unwrap();
            for q in all.iter().filter(|q| refines(p, q)) {
                let direct = quotient_by(&a, q).unwrap();
                let staged = quotient_by(&qp.quotient, &coarsen(p, q, &qp.quotient)).unwrap();
                let (d, s) = (direct.quotient.geometry(), staged.quotient.geometry());
                assert_eq!(d.fiber_sizes(), s.fiber_sizes(), "{id}");
                assert_eq!(d.incidence_count(), s.incidence_count(), "{id}");
                assert_eq!(direct.quotient.group().order(), staged.quotient.group().order(), "{id}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn normal_quotient_rejects_bad_subgroups() {
    let a = gamma_km_product(2, 4, false).unwrap();
    let not_member = PermGroup::from_cycles(8, &["(0 1)"]).unwrap();
    assert!(matches!(normal_quotient(&a, &not_member), Err(Error::NotMember(_))));
    let wrong_degree = PermGroup::trivial(5);
    assert!(matches!(normal_quotient(&a, &wrong_degree), Err(Error::DegreeMismatch { .. })));
    let s = gamma_km_product(2, 3, true).unwrap();
    let not_normal = PermGroup::from_cycles(6, &["(0 1)"]).unwrap();
    assert!(matches!(normal_quotient(&s, &not_normal), Err(Error::NotNormal(_))));
    let bad = TypeRefiningPartition::new(a.geometry(), vec![vec![0, 1], vec![2, 3], vec![4, 5, 6, 7]]).unwrap();
    assert!(matches!(quotient_by(&a, &bad), Err(Error::NotInvariant(_))));
    assert!(TypeRefiningPartition::new(a.geometry(), vec![vec![0, 4], vec![1, 2, 3], vec![5, 6, 7]]).is_err());
}

#[test]
fn trivial_and_full_normal_quotients() {
    let a = gamma_km_product(2, 3, true).unwrap();
    let id = normal_quotient(&a, &PermGroup::trivial(6)).unwrap();
    assert_eq!(id.quotient.geometry().fiber_sizes(), vec![3, 3]);
    assert_eq!(id.quotient.group().order(), 36);
    let full = normal_quotient(&a, a.group()).unwrap();
    assert_eq!(full.quotient.geometry().fiber_sizes(), vec![1, 1]);
    assert!(full.quotient.group().is_trivial());
}

#[test]
fn reported_examples() {
    let lim = Limits::default();
    let fano = GeneratorSpec::new("fano_pair", &[]).build(&lim).unwrap();
    let r = full_report(&fano, &lim).unwrap();
    assert!(r.in_family);
    assert_eq!(r.verdict, Verdict::PrimitiveBasic);
    assert_eq!(r.normal_basic, Some(true));
    assert_eq!(r.case_tag, Some(Case::I));
    let classes = r.type_classes.unwrap();
    assert_eq!(classes.quasiprimitive, vec![0, 1]);
    assert_eq!(r.types, vec!["points", "lines"]);

    let s4 = GeneratorSpec::new("points_pairs_S4", &[]).build(&lim).unwrap();
    let (case, checks) = classify_normal_basic(&s4, &lim).unwrap();
    assert_eq!(case, Case::IV);
    assert_eq!(checks.iter().filter(|c| c.holds).count(), 1);
    assert!(verify_case(&s4, Case::I, &lim).unwrap().is_err());

    let neg = gamma_km_product(2, 4, false).unwrap();
    assert!(matches!(classify_normal_basic(&neg, &lim), Err(Error::Precondition(_))));
    let r = full_report(&neg, &lim).unwrap();
    assert_eq!(r.verdict, Verdict::NeitherBasic);
    assert!(r.witnesses.intransitive_normal.is_some());
}

#[test]
fn outside_the_family_is_reported_not_raised() {
    let lim = Limits::default();
    let geometry = pregeom::Pregeometry::new(vec!["a".into(), "b".into()], vec![0, 0, 1, 1], [(0, 2), (1, 3)]).unwrap();
    let group = PermGroup::from_cycles(4, &["(0 1)(2 3)"]).unwrap();
    let r = pregeom::classify::report_for(geometry, group, &lim).unwrap();
    assert_eq!(r.verdict, Verdict::NotInFamily);
    assert!(r.reason.is_some());
}
