use std::collections::HashMap;

use sha2::{Digest, Sha256};

use super::field::Field;
use crate::action::BoundAction;
use crate::error::{Error, Result};
use crate::geom::Pregeometry;
use crate::limits::Limits;
use crate::perm::{PermGroup, Permutation};
use crate::quotient::is_normal_basic;

const PSL32: &str = include_str!("../../data/psl32.json");
const PSL32_SHA256: &str = "b86543f49145d0987e283fe2c005b849016476cb8aaa9dcb43fd67c812cf0be7";

fn labels<S: ToString>(v: impl IntoIterator<Item = S>) -> Vec<String> {
    v.into_iter().map(|s| s.to_string()).collect()
}

/// Pregeometry with the given fiber sizes and complete incidence between
/// distinct types.
fn complete_multipartite(types: Vec<String>, sizes: &[usize]) -> Result<Pregeometry> {
    let element_types: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m)).collect();
    let n = element_types.len();
    let et = element_types.clone();
    let pairs = (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).filter(move |&(x, y)| et[x] != et[y]);
    Pregeometry::new(types, element_types, pairs.collect::<Vec<_>>())
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::new(images).expect("generator images form a permutation")
}

/// Elements of `Λ`: a field element or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(usize),
    Infinity,
}

impl Slope {
    pub fn label(self) -> String {
        match self {
            Slope::Finite(x) => x.to_string(),
            Slope::Infinity => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Slope::Infinity),
            t => t.parse().map(Slope::Finite).map_err(|_| Error::Parse(format!("bad slope {t:?}"))),
        }
    }
}

/// The affine group `{v -> h v + t}` on `F_q^2`, acting on the parallel
/// classes of lines through the origin with slopes in `lambda`.
pub fn gamma_lambda(p: usize, d: usize, lambda: &[Slope]) -> Result<BoundAction> {
    let field = Field::new(p, d)?;
    let q = field.order();
    let mut slopes = lambda.to_vec();
    slopes.sort();
    slopes.dedup();
    if !slopes.contains(&Slope::Finite(0)) || !slopes.contains(&Slope::Infinity) {
        return Err(Error::Precondition("the slope set must contain 0 and inf".into()));
    }
    if let Some(Slope::Finite(x)) = slopes.iter().find(|s| matches!(s, Slope::Finite(x) if *x >= q)) {
        return Err(Error::Precondition(format!("slope {x} is not an element of F_{q}")));
    }
    let k = slopes.len();
    let geometry = complete_multipartite(slopes.iter().map(|s| s.label()).collect(), &vec![q; k])?;
    // (h, t1, t2): the line with coordinate c in class λ goes to h c + (t2 - λ t1)
    let act = |h: usize, t1: usize, t2: usize| -> Permutation {
        let mut images = Vec::with_capacity(k * q);
        for (i, s) in slopes.iter().enumerate() {
            let shift = match *s {
                Slope::Finite(l) => field.sub(t2, field.mul(l, t1)),
                Slope::Infinity => t1,
            };
            images.extend((0..q).map(|c| i * q + field.add(field.mul(h, c), shift)));
        }
        perm(images)
    };
    let mut gens = Vec::new();
    for e in field.additive_basis() {
        gens.push(act(1, e, 0));
        gens.push(act(1, 0, e));
    }
    if q > 2 {
        gens.push(act(field.primitive_element(), 0, 0));
    }
    BoundAction::bind(geometry, PermGroup::new(k * q, gens)?)
}

/// Every slope: all field elements and infinity.
pub fn full_slopes(p: usize, d: usize) -> Result<Vec<Slope>> {
    let q = Field::new(p, d)?.order();
    Ok((0..q).map(Slope::Finite).chain([Slope::Infinity]).collect())
}

/// PSL(3,2) on the points and lines of the Fano plane.
pub fn fano_pair() -> Result<BoundAction> {
    let digest = Sha256::digest(PSL32.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != PSL32_SHA256 {
        return Err(Error::Internal("bundled PSL(3,2) generators fail their checksum".into()));
    }
    #[derive(serde::Deserialize)]
    struct Doc {
        degree: usize,
        generators: Vec<Vec<usize>>,
    }
    let Doc { degree, generators } = serde_json::from_str(PSL32)?;
    let group = PermGroup::from_images(degree, generators)?;
    let lines = (0..7).flat_map(|j| [j, (j + 1) % 7, (j + 3) % 7].map(|pt| (pt, 7 + j)));
    let geometry = Pregeometry::new(labels(["points", "lines"]), [vec![0; 7], vec![1; 7]].concat(), lines)?;
    BoundAction::bind(geometry, group)
}

/// S4 on four points and the six 2-subsets, with membership as incidence.
pub fn points_pairs_s4() -> Result<BoundAction> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| ((a + 1)..4).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| 4 + pairs.iter().position(|&pr| pr == (a.min(b), a.max(b))).expect("pair");
    let on_all = |g: &Permutation| {
        let mut images: Vec<usize> = (0..4).map(|x| g.apply(x)).collect();
        images.extend(pairs.iter().map(|&(a, b)| index(g.apply(a), g.apply(b))));
        perm(images)
    };
    let gens = [Permutation::from_cycles(4, "(0 1)")?, Permutation::from_cycles(4, "(0 1 2 3)")?]
        .iter()
        .map(on_all)
        .collect();
    let incidences: Vec<(usize, usize)> =
        pairs.iter().flat_map(|&(a, b)| [(a, index(a, b)), (b, index(a, b))]).collect();
    let geometry = Pregeometry::new(labels(["points", "pairs"]), [vec![0; 4], vec![1; 6]].concat(), incidences)?;
    BoundAction::bind(geometry, PermGroup::new(10, gens)?)
}

/// F20 = {x -> a x + b} on two copies of Z5 joined by inequality, and on
/// Z4 through the multiplier, completely incident with both.
pub fn f20_case_iia() -> Result<BoundAction> {
    // log base 2 of the units of Z5
    let log2 = |a: usize| [1, 2, 4, 3].iter().position(|&u| u == a).expect("unit");
    let affine = |a: usize, b: usize| {
        let mut images: Vec<usize> = (0..5).map(|x| (a * x + b) % 5).collect();
        images.extend((0..5).map(|x| 5 + (a * x + b) % 5));
        images.extend((0..4).map(|c| 10 + (c + log2(a)) % 4));
        perm(images)
    };
    let mut incidences: Vec<(usize, usize)> =
        (0..5).flat_map(|x| (0..5).filter(move |&y| y != x).map(move |y| (x, 5 + y))).collect();
    incidences.extend((0..10).flat_map(|x| (10..14).map(move |z| (x, z))));
    let geometry = Pregeometry::new(labels(["1", "2", "3"]), [vec![0; 5], vec![1; 5], vec![2; 4]].concat(), incidences)?;
    BoundAction::bind(geometry, PermGroup::new(14, vec![affine(1, 1), affine(2, 0)])?)
}

/// Named small groups acting on `0..n`: `Zn`, `Sn`, `An`, `Dn` (dihedral of
/// order `2n`) and `F20`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let bad = || Error::Parse(format!("unknown group {name:?}"));
    if name == "F20" {
        return PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]);
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n: usize = tail.parse().map_err(|_| bad())?;
    if n == 0 || n > 64 {
        return Err(bad());
    }
    match head {
        "Z" => Ok(PermGroup::cyclic(n)),
        "S" => Ok(PermGroup::symmetric(n)),
        "A" => {
            let gens = (2..n)
                .map(|i| Permutation::new((0..n).map(|x| if x == 0 { 1 } else if x == 1 { i } else if x == i { 0 } else { x }).collect()))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(n, gens)
        }
        "D" if n >= 3 => {
            let rotation = perm((0..n).map(|x| (x + 1) % n).collect());
            let reflection = perm((0..n).map(|x| (n - x) % n).collect());
            PermGroup::new(n, vec![rotation, reflection])
        }
        _ => Err(bad()),
    }
}

/// `T1 × T2` acting coordinatewise on the complete bipartite pregeometry
/// on the disjoint union of their domains.
pub fn construction_5_2(t1: &PermGroup, t2: &PermGroup, limits: &Limits) -> Result<BoundAction> {
    for (i, t) in [t1, t2].into_iter().enumerate() {
        let domain: Vec<usize> = (0..t.degree()).collect();
        if !t.is_transitive(&domain)? {
            return Err(Error::Precondition(format!("factor {} is not transitive", i + 1)));
        }
        if !t.is_quasiprimitive(&domain, limits)? {
            return Err(Error::Precondition(format!("factor {} is not quasiprimitive", i + 1)));
        }
    }
    let (n1, n2) = (t1.degree(), t2.degree());
    let geometry = complete_multipartite(labels(["1", "2"]), &[n1, n2])?;
    let mut gens: Vec<Permutation> = t1.generators().iter().map(|g| g.embed(n1 + n2, 0)).collect();
    gens.extend(t2.generators().iter().map(|g| g.embed(n1 + n2, n1)));
    let a = BoundAction::bind(geometry, PermGroup::new(n1 + n2, gens)?)?;
    if !is_normal_basic(&a, limits)? {
        return Err(Error::TheoremViolation("construction is not normal-basic".into()));
    }
    Ok(a)
}

/// Direct sum with the product group, each factor trivial on the other summand.
pub fn product_pair(a: &BoundAction, b: &BoundAction) -> Result<BoundAction> {
    if !a.in_family_g() || !b.in_family_g() {
        return Err(Error::Precondition("both pairs must lie in the family".into()));
    }
    let (na, nb) = (a.geometry().element_count(), b.geometry().element_count());
    let geometry = a.geometry().direct_sum(b.geometry());
    let mut gens: Vec<Permutation> = a.group().generators().iter().map(|g| g.embed(na + nb, 0)).collect();
    gens.extend(b.group().generators().iter().map(|g| g.embed(na + nb, na)));
    BoundAction::bind(geometry, PermGroup::new(na + nb, gens)?)
}

/// `Γ(k, m)` with the direct product of `k` copies of `Z_m` or `S_m`, each
/// acting on its own fiber.
pub fn gamma_km_product(k: usize, m: usize, symmetric: bool) -> Result<BoundAction> {
    let geometry = Pregeometry::gamma_km(k, m)?;
    let base = if symmetric { PermGroup::symmetric(m) } else { PermGroup::cyclic(m) };
    let gens = (0..k)
        .flat_map(|i| base.generators().iter().map(move |g| g.embed(k * m, i * m)))
        .collect();
    BoundAction::bind(geometry, PermGroup::new(k * m, gens)?)
}

/// A5 with its 60 elements and a lookup from element to index.
struct A5 {
    gens: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl A5 {
    fn new() -> Result<Self> {
        let gens = vec![Permutation::from_cycles(5, "(0 1 2 3 4)")?, Permutation::from_cycles(5, "(0 1 2)")?];
        let elements = PermGroup::new(5, gens.clone())?.elements(&Limits::default())?;
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(A5 { gens, elements, index })
    }

    /// Images of `z -> g^-1 z h` on the element indices.
    fn two_sided(&self, g: &Permutation, h: &Permutation) -> Vec<usize> {
        let g_inv = g.inverse();
        self.elements.iter().map(|z| self.index[&g_inv.then(z).then(h)]).collect()
    }
}

fn offset(images: Vec<usize>, by: usize) -> impl Iterator<Item = usize> {
    images.into_iter().map(move |x| x + by)
}

/// A5 × A5 on two 5-point factor actions and on A5 by `z -> g^-1 z h`.
pub fn line_i_a5() -> Result<BoundAction> {
    let a5 = A5::new()?;
    let id = Permutation::identity(5);
    let mut gens = Vec::new();
    for (left, g) in [true, false].into_iter().flat_map(|l| a5.gens.iter().map(move |g| (l, g))) {
        let (x, y) = if left { (g.clone(), id.clone()) } else { (id.clone(), g.clone()) };
        let images: Vec<usize> = x
            .images()
            .iter()
            .copied()
            .chain(offset(y.images().to_vec(), 5))
            .chain(offset(a5.two_sided(&x, &y), 10))
            .collect();
        gens.push(perm(images));
    }
    let geometry = complete_multipartite(labels(["1", "2", "3"]), &[5, 5, 60])?;
    BoundAction::bind(geometry, PermGroup::new(70, gens)?)
}

/// A5 × A5 × A5 with fiber `i` the elements of A5 and `(t1, t2, t3)`
/// acting by `z -> t_{i+1}^-1 z t_{i+2}`, indices mod 3.
pub fn line_ii_a5() -> Result<BoundAction> {
    let a5 = A5::new()?;
    let id = Permutation::identity(5);
    let mut gens = Vec::new();
    for factor in 0..3 {
        for g in &a5.gens {
            let t: Vec<Permutation> = (0..3).map(|j| if j == factor { g.clone() } else { id.clone() }).collect();
            let images: Vec<usize> = (0..3)
                .flat_map(|i| offset(a5.two_sided(&t[(i + 1) % 3], &t[(i + 2) % 3]), 60 * i))
                .collect();
            gens.push(perm(images));
        }
    }
    let geometry = complete_multipartite(labels(["1", "2", "3"]), &[60, 60, 60])?;
    BoundAction::bind(geometry, PermGroup::new(180, gens)?)
}

/// A5 × A5 on two 5-point factor actions and two copies of A5 under
/// `z -> g^-1 z h`, the copies joined by `z ∗ w` iff `z^-1 w` is conjugate
/// to the first non-identity element of A5.
pub fn case_iib_a5() -> Result<BoundAction> {
    let a5 = A5::new()?;
    let id = Permutation::identity(5);
    let c = a5.elements.iter().find(|e| !e.is_identity()).expect("A5 is nontrivial");
    let class: Vec<Permutation> = a5.elements.iter().map(|g| c.conjugate_by(g)).collect();
    let mut gens = Vec::new();
    for (left, g) in [true, false].into_iter().flat_map(|l| a5.gens.iter().map(move |g| (l, g))) {
        let (x, y) = if left { (g.clone(), id.clone()) } else { (id.clone(), g.clone()) };
        let coset = a5.two_sided(&x, &y);
        let images: Vec<usize> = x
            .images()
            .iter()
            .copied()
            .chain(offset(y.images().to_vec(), 5))
            .chain(offset(coset.clone(), 10))
            .chain(offset(coset, 70))
            .collect();
        gens.push(perm(images));
    }
    let types = labels(["1", "2", "3", "4"]);
    let element_types = [vec![0; 5], vec![1; 5], vec![2; 60], vec![3; 60]].concat();
    let mut incidences = Vec::new();
    for x in 0..10 {
        incidences.extend(((x / 5 + 1) * 5..130).map(|y| (x, y)));
    }
    for (i, z) in a5.elements.iter().enumerate() {
        let z_inv = z.inverse();
        for (j, w) in a5.elements.iter().enumerate() {
            if class.contains(&z_inv.then(w)) {
                incidences.push((10 + i, 70 + j));
            }
        }
    }
    let geometry = Pregeometry::new(types, element_types, incidences)?;
    BoundAction::bind(geometry, PermGroup::new(130, gens)?)
}
