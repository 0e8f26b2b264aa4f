//! Brute-force oracles sharing no code with the library algorithms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use pregeom::{BoundAction, PermGroup, Permutation};

pub type Perm = Vec<usize>;

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    // a first, then b
    a.iter().map(|&x| b[x]).collect()
}

pub fn invert(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Closure of the generators under composition, by breadth-first search.
pub fn enumerate(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out.sort();
    out
}

pub fn images(g: &PermGroup) -> Vec<Perm> {
    g.generators().iter().map(|p| p.images().to_vec()).collect()
}

pub fn elements_of(g: &PermGroup) -> Vec<Perm> {
    enumerate(g.degree(), &images(g))
}

/// Every subgroup, as a sorted set of indices into `elements`.
pub fn all_subgroups(elements: &[Perm]) -> Vec<BTreeSet<usize>> {
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let degree = elements[0].len();
    let close = |gens: &[Perm]| -> BTreeSet<usize> { enumerate(degree, gens).iter().map(|e| index[e]).collect() };
    let mut found: BTreeSet<BTreeSet<usize>> = elements.iter().map(|e| close(std::slice::from_ref(e))).collect();
    let cyclic: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subset(h) {
                    continue;
                }
                let gens: Vec<Perm> = h.union(c).map(|&i| elements[i].clone()).collect();
                let j = close(&gens);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    found.into_iter().collect()
}

pub fn is_normal_set(elements: &[Perm], h: &BTreeSet<usize>) -> bool {
    let set: HashSet<&Perm> = h.iter().map(|&i| &elements[i]).collect();
    elements.iter().all(|g| {
        let gi = invert(g);
        h.iter().all(|&i| set.contains(&compose(&compose(&gi, &elements[i]), g)))
    })
}

/// Inclusion-minimal nontrivial normal subgroups, as element sets.
pub fn minimal_normal_by_scan(elements: &[Perm]) -> BTreeSet<BTreeSet<Perm>> {
    let normal: Vec<BTreeSet<usize>> =
        all_subgroups(elements).into_iter().filter(|h| h.len() > 1 && is_normal_set(elements, h)).collect();
    normal
        .iter()
        .filter(|h| !normal.iter().any(|k| k.len() < h.len() && k.is_subset(h)))
        .map(|h| h.iter().map(|&i| elements[i].clone()).collect())
        .collect()
}

pub fn as_element_set(g: &PermGroup) -> BTreeSet<Perm> {
    elements_of(g).into_iter().collect()
}

/// All set partitions of `domain`.
pub fn set_partitions(domain: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = domain.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p.clone();
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

pub fn is_invariant_partition(gens: &[Perm], parts: &[Vec<usize>]) -> bool {
    let mut owner = HashMap::new();
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            owner.insert(x, i);
        }
    }
    gens.iter().all(|g| parts.iter().all(|p| p.iter().all(|&x| owner[&g[x]] == owner[&g[p[0]]])))
}

/// Invariant partitions of `domain`, each normalized to sorted parts in sorted order.
pub fn invariant_partitions(gens: &[Perm], domain: &[usize]) -> BTreeSet<Vec<Vec<usize>>> {
    set_partitions(domain)
        .into_iter()
        .filter(|p| is_invariant_partition(gens, p))
        .map(normalize)
        .collect()
}

pub fn normalize(mut p: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for part in &mut p {
        part.sort_unstable();
    }
    p.sort();
    p
}

pub fn primitive_by_partitions(gens: &[Perm], domain: &[usize]) -> bool {
    invariant_partitions(gens, domain).len() <= 2 || domain.len() <= 1
}

/// Orbits of the group generated by `gens` on `domain`, from scratch.
pub fn orbits(gens: &[Perm], domain: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x in domain {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x];
        seen.insert(x);
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let y = g[orbit[i]];
                if seen.insert(y) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Pointwise stabilizer of `points` inside an enumerated group.
pub fn kernel_of(elements: &[Perm], points: &[usize]) -> Vec<Perm> {
    elements.iter().filter(|g| points.iter().all(|&x| g[x] == x)).cloned().collect()
}

pub fn perm(images: Perm) -> Permutation {
    Permutation::new(images).unwrap()
}

/// Counts, for an incident part pair `(p, q)`, how many elements of `q`
/// each element of `p` is incident with.
pub fn incidence_counts(a: &BoundAction, p: &[usize], q: &[usize]) -> Vec<usize> {
    let g = a.geometry();
    p.iter().map(|&x| q.iter().filter(|&&y| g.incident(x, y)).count()).collect()
}

/// Small groups with their names, for the normal-subgroup scan.
pub fn small_named_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("S4", PermGroup::symmetric(4)),
        ("A4", PermGroup::from_cycles(4, &["(0 1 2)", "(1 2 3)"]).unwrap()),
        ("D8", PermGroup::from_cycles(4, &["(0 1 2 3)", "(0 2)"]).unwrap()),
        ("Z6", PermGroup::cyclic(6)),
        ("Z2^3", PermGroup::from_cycles(6, &["(0 1)", "(2 3)", "(4 5)"]).unwrap()),
        ("Z3xS3", PermGroup::from_cycles(6, &["(0 1 2)", "(3 4 5)", "(3 4)"]).unwrap()),
        ("F20", PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap()),
    ]
}
