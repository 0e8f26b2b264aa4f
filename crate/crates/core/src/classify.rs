//! The decomposition of primitive-basic pairs and the case split for
//! normal-basic pairs, with every structural claim checked on the instance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{BoundAction, TypeClasses};
use crate::error::{Error, Result};
use crate::geom::{Pregeometry, TypePartition};
use crate::limits::Limits;
use crate::perm::PermGroup;
use crate::quotient::{is_normal_basic, is_primitive_basic, normal_basic_witness, normal_quotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "not-in-G")]
    NotInFamily,
    #[serde(rename = "degenerate")]
    Degenerate,
    #[serde(rename = "primitive-basic")]
    PrimitiveBasic,
    #[serde(rename = "normal-basic")]
    NormalBasic,
    #[serde(rename = "neither-basic")]
    NeitherBasic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii-a")]
    IIa,
    #[serde(rename = "ii-b")]
    IIb,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::I, Case::IIa, Case::IIb, Case::III, Case::IV];

    /// The shape as stated in the final form of the normal-basic theorem.
    pub fn theorem_form(self) -> &'static str {
        match self {
            Case::I => "fully quasiprimitive: faithful and quasiprimitive on every type",
            Case::IIa => "G0 + Gamma(1,m), G0 fully quasiprimitive, G isomorphic to its image on G0",
            Case::IIb => "G0 + Gamma(1,m) + Gamma(1,m'), G0 fully quasiprimitive, G isomorphic to its image on G0",
            Case::III => "complete multipartite, faithful on at most one type",
            Case::IV => "rank k-1 truncation fully quasiprimitive; faithful but not quasiprimitive on the excluded subset of elements",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "i",
            Case::IIa => "ii-a",
            Case::IIb => "ii-b",
            Case::III => "iii",
            Case::IV => "iv",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Table1Line {
    #[serde(rename = "line-i")]
    LineI,
    #[serde(rename = "line-ii")]
    LineII,
    #[serde(rename = "line-iii")]
    LineIII,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Report {
    pub line: Table1Line,
    pub k: usize,
    /// Largest fiber size.
    pub m: usize,
    pub p: Option<u64>,
    pub d: Option<u32>,
    pub unfaithful: Vec<usize>,
    pub kernel_orders: Vec<u64>,
    pub kernels_nonabelian: bool,
    /// Order of the subgroup generated by all kernels.
    pub kernel_join_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCertificate {
    pub type_label: String,
    pub size: usize,
    pub faithful: bool,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionPart {
    pub types: Vec<usize>,
    pub indecomposable: bool,
    pub induced_order: u64,
    pub fibers: Vec<FiberCertificate>,
}

impl DecompositionPart {
    pub fn certified(&self) -> bool {
        self.indecomposable && self.fibers.iter().all(|f| f.faithful && f.primitive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub partition: TypePartition,
    pub parts: Vec<DecompositionPart>,
}

/// A normal subgroup shown by its generators, in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    pub order: u64,
    pub generators: Vec<String>,
    pub intransitive_types: Vec<usize>,
}

impl SubgroupWitness {
    fn new(geom: &Pregeometry, n: &PermGroup) -> Result<Self> {
        let mut intransitive_types = Vec::new();
        for i in 0..geom.rank() {
            if !n.is_transitive(&geom.fiber_elements(i))? {
                intransitive_types.push(i);
            }
        }
        Ok(SubgroupWitness {
            order: saturate(n.order()),
            generators: n.generators().iter().map(|g| g.to_cycles()).collect(),
            intransitive_types,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub kernel_orders: Vec<u64>,
    pub minimal_normal_orders: Vec<u64>,
    /// Unfaithful type pairs `(i, j)` with `T_i ∩ T_j = 1`.
    pub trivial_kernel_intersections: Vec<(usize, usize)>,
    /// For neither-basic pairs: a minimal normal subgroup intransitive on two fibers.
    pub intransitive_normal: Option<SubgroupWitness>,
    /// Fiber sizes of the normal quotient by `intransitive_normal`.
    pub witness_quotient_fibers: Option<Vec<usize>>,
    /// For case iv: a minimal normal subgroup intransitive on the non-quasiprimitive type.
    pub non_quasiprimitive: Option<SubgroupWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCheck {
    pub case: Case,
    pub holds: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub types: Vec<String>,
    pub fiber_sizes: Vec<usize>,
    pub group_order: u64,
    pub in_family: bool,
    pub is_geometry: bool,
    pub primitive_degenerate: bool,
    pub normal_degenerate: bool,
    pub primitive_basic: Option<bool>,
    pub normal_basic: Option<bool>,
    pub type_classes: Option<TypeClasses>,
    pub decomposition: Option<Decomposition>,
    pub case_tag: Option<Case>,
    pub theorem_form: Option<String>,
    pub case_checks: Vec<CaseCheck>,
    pub table1: Option<Table1Report>,
    pub witnesses: Witnesses,
}

/// Outcome of checking one case's structural claims: `Err` names the first
/// claim that fails.
pub type Check = std::result::Result<(), String>;

fn labels(geom: &Pregeometry, types: &[usize]) -> String {
    let v: Vec<&str> = types.iter().map(|&t| geom.type_label(t)).collect();
    format!("{v:?}")
}

fn certify_part(a: &BoundAction, types: &[usize]) -> Result<DecompositionPart> {
    let r = a.restrict_to_types(types)?;
    let geom = r.geometry();
    let mut fibers = Vec::with_capacity(geom.rank());
    for i in 0..geom.rank() {
        fibers.push(FiberCertificate {
            type_label: geom.type_label(i).to_string(),
            size: geom.fiber(i).len(),
            faithful: r.is_faithful_on(i),
            primitive: r.group().is_primitive(&geom.fiber_elements(i))?,
        });
    }
    Ok(DecompositionPart {
        types: types.to_vec(),
        indecomposable: geom.is_indecomposable(),
        induced_order: saturate(r.group().order()),
        fibers,
    })
}

/// The decomposition into indecomposable summands on which the induced
/// group is faithful and primitive on every type.
pub fn decompose_theorem11(a: &BoundAction) -> Result<Decomposition> {
    if !is_primitive_basic(a)? {
        return Err(Error::Precondition("pair is not primitive-basic".into()));
    }
    let partition = a.geometry().finest_decomposition();
    let mut parts = Vec::with_capacity(partition.len());
    for p in partition.parts() {
        let part = certify_part(a, p)?;
        if let Some(f) = part.fibers.iter().find(|f| !(f.faithful && f.primitive)) {
            return Err(Error::TheoremViolation(format!(
                "summand {} is not faithful and primitive on type {:?}",
                labels(a.geometry(), p),
                f.type_label
            )));
        }
        parts.push(part);
    }
    Ok(Decomposition { partition, parts })
}

/// All set partitions of `0..k` as restricted growth strings.
fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, k: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (t, &b) in rgs.iter().enumerate() {
                parts[b].push(t);
            }
            out.push(parts);
            return;
        }
        let next = rgs.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            rgs.push(b);
            go(i + 1, k, rgs, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, &mut Vec::new(), &mut out);
    out
}

/// Largest rank for the exhaustive uniqueness check.
pub const UNIQUENESS_MAX_RANK: usize = 6;

/// Every type partition that is a direct-sum decomposition into
/// indecomposable parts on which the induced group is faithful and
/// primitive on each type.
pub fn theorem11_candidates(a: &BoundAction) -> Result<Vec<TypePartition>> {
    let k = a.rank();
    if k > UNIQUENESS_MAX_RANK {
        return Err(Error::capacity("rank for partition enumeration", k as u128, UNIQUENESS_MAX_RANK as u128));
    }
    let mut found = Vec::new();
    for parts in set_partitions(k) {
        let partition = TypePartition::new(k, parts)?;
        if !a.geometry().is_decomposition(&partition) {
            continue;
        }
        let mut ok = true;
        for p in partition.parts() {
            if !certify_part(a, p)?.certified() {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(partition);
        }
    }
    Ok(found)
}

/// Group orders in reports; larger orders saturate.
fn saturate(n: u128) -> u64 {
    u64::try_from(n).unwrap_or(u64::MAX)
}

/// `(p, d)` with `n = p^d`, `d >= 1`.
pub(crate) fn prime_power(n: u128) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u128;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let (mut m, mut d) = (n, 0);
    while m % p == 0 {
        m /= p;
        d += 1;
    }
    (m == 1).then_some((p as u64, d))
}

/// `(p, d)` if the group is elementary abelian of order `p^d`.
pub fn elementary_abelian(g: &PermGroup) -> Option<(u64, u32)> {
    let (p, d) = prime_power(g.order())?;
    (g.is_abelian() && g.generators().iter().all(|x| x.order() == p)).then_some((p, d))
}

fn fail<T>(msg: impl Into<String>) -> Result<std::result::Result<T, String>> {
    Ok(Err(msg.into()))
}

fn others(k: usize, excluded: &[usize]) -> Vec<usize> {
    (0..k).filter(|t| !excluded.contains(t)).collect()
}

/// `(Γ_0, G^{Γ_0})` fully quasiprimitive and `G` faithful on `Γ_0`.
fn check_core(a: &BoundAction, core: &[usize], limits: &Limits) -> Result<Check> {
    if !a.kernel_on_types(core).is_trivial() {
        return fail(format!("G is not faithful on the truncation to {}", labels(a.geometry(), core)));
    }
    let r = a.restrict_to_types(core)?;
    if !r.is_fully_quasiprimitive(limits)? {
        return fail(format!("truncation to {} is not fully quasiprimitive", labels(a.geometry(), core)));
    }
    Ok(Ok(()))
}

fn check_summand(geom: &Pregeometry, t: usize) -> Check {
    match (0..geom.rank()).find(|&j| j != t && !geom.fibers_completely_incident(t, j)) {
        Some(j) => Err(format!(
            "type {:?} is not completely incident with type {:?}",
            geom.type_label(t),
            geom.type_label(j)
        )),
        None => Ok(()),
    }
}

/// Checks the structural claims of `case` on a normal-basic pair.
pub fn verify_case(a: &BoundAction, case: Case, limits: &Limits) -> Result<Check> {
    let classes = a.classify_types(limits)?;
    let geom = a.geometry();
    let k = a.rank();
    let unf = &classes.unfaithful;
    let nonqp = &classes.non_quasiprimitive;
    match case {
        Case::I => {
            if classes.s() != 0 {
                return fail("some type is unfaithful or not quasiprimitive");
            }
            Ok(Ok(()))
        }
        Case::IV => {
            if !unf.is_empty() {
                return fail("some type is unfaithful");
            }
            if nonqp.len() != 1 {
                return fail(format!("{} faithful non-quasiprimitive types, expected 1", nonqp.len()));
            }
            check_core(a, &others(k, nonqp), limits)
        }
        Case::IIa => {
            if k < 3 {
                return fail("rank below 3");
            }
            if unf.len() != 1 || !nonqp.is_empty() {
                return fail("needs exactly one unfaithful type and all others quasiprimitive");
            }
            if let Err(e) = check_summand(geom, unf[0]) {
                return fail(e);
            }
            check_core(a, &others(k, unf), limits)
        }
        Case::IIb => {
            if k < 4 {
                return fail("rank below 4");
            }
            if unf.len() != 2 || !nonqp.is_empty() {
                return fail("needs exactly two unfaithful types and all others quasiprimitive");
            }
            for &t in unf {
                if let Err(e) = check_summand(geom, t) {
                    return fail(e);
                }
            }
            if let Err(e) = check_core(a, &others(k, unf), limits)? {
                return fail(e);
            }
            let count = a.minimal_normal_subgroups(limits)?.len();
            if count != 2 {
                return fail(format!("{count} minimal normal subgroups, expected 2"));
            }
            Ok(Ok(()))
        }
        Case::III => {
            if !geom.is_complete_multipartite() {
                return fail("not complete multipartite");
            }
            let faithful = k - unf.len();
            if faithful > 1 {
                return fail(format!("faithful on {faithful} types"));
            }
            if k == 3 {
                let mut sizes = geom.fiber_sizes();
                sizes.sort_unstable();
                if !sizes[2].is_multiple_of(sizes[0]) || !sizes[2].is_multiple_of(sizes[1]) {
                    return fail(format!("fiber sizes {sizes:?} do not divide the largest"));
                }
            }
            if k >= 3 {
                return match table1_line(a, limits) {
                    Ok(_) => Ok(Ok(())),
                    Err(Error::TheoremViolation(e)) => fail(e),
                    Err(e) => Err(e),
                };
            }
            Ok(Ok(()))
        }
    }
}

/// The case the proof of the case split selects, from `s = |I_unf ∪ I_nonqp|`.
pub fn select_case(classes: &TypeClasses, k: usize) -> Case {
    match classes.s() {
        0 => Case::I,
        1 if classes.non_quasiprimitive.len() == 1 => Case::IV,
        1 if k == 2 => Case::III,
        1 => Case::IIa,
        2 if k <= 3 => Case::III,
        2 => Case::IIb,
        _ => Case::III,
    }
}

/// Runs every case's checks on the pair.
pub fn case_checks(a: &BoundAction, limits: &Limits) -> Result<Vec<CaseCheck>> {
    Case::ALL
        .iter()
        .map(|&case| {
            let r = verify_case(a, case, limits)?;
            Ok(CaseCheck { case, holds: r.is_ok(), reason: r.err() })
        })
        .collect()
}

/// Assigns the case of a normal-basic pair; exactly one case must verify.
pub fn classify_normal_basic(a: &BoundAction, limits: &Limits) -> Result<(Case, Vec<CaseCheck>)> {
    if !is_normal_basic(a, limits)? {
        return Err(Error::Precondition("pair is not normal-basic".into()));
    }
    let classes = a.classify_types(limits)?;
    let case = select_case(&classes, a.rank());
    let checks = case_checks(a, limits)?;
    let chosen = checks.iter().find(|c| c.case == case).expect("all cases checked");
    if !chosen.holds {
        return Err(Error::TheoremViolation(format!(
            "case {case} selected but fails: {}",
            chosen.reason.as_deref().unwrap_or("")
        )));
    }
    let holding: Vec<String> = checks.iter().filter(|c| c.holds).map(|c| c.case.to_string()).collect();
    if holding.len() != 1 {
        return Err(Error::TheoremViolation(format!("cases {} all hold", holding.join(", "))));
    }
    Ok((case, checks))
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::TheoremViolation(msg.into()))
}

/// Line of the complete multipartite table for rank at least 3, with the
/// regular-kernel consequences checked on the instance.
pub fn table1_line(a: &BoundAction, limits: &Limits) -> Result<Table1Report> {
    let geom = a.geometry();
    let k = a.rank();
    if k < 3 || !geom.is_complete_multipartite() {
        return Err(Error::Precondition("needs a complete multipartite pair of rank at least 3".into()));
    }
    let classes = a.classify_types(limits)?;
    let unf = classes.unfaithful.clone();
    if k - unf.len() > 1 {
        return Err(Error::Precondition("faithful on more than one type".into()));
    }
    if !is_normal_basic(a, limits)? {
        return Err(Error::Precondition("pair is not normal-basic".into()));
    }
    let kernels: Vec<&PermGroup> = unf.iter().map(|&i| a.kernel(i)).collect();
    let minimal = a.minimal_normal_subgroups(limits)?;
    for (&i, t) in unf.iter().zip(&kernels) {
        if !minimal.iter().any(|n| n.same_elements(t)) {
            return violation(format!("kernel on type {:?} is not a minimal normal subgroup", geom.type_label(i)));
        }
    }
    let iso_limits = Limits { isomorphism_order: limits.isomorphism_order.max(limits.max_order), ..*limits };
    for (x, &i) in unf.iter().enumerate() {
        for &j in &unf[x + 1..] {
            if !a.kernel_on_types(&[i, j]).is_trivial() {
                return violation(format!("T_{i} and T_{j} intersect nontrivially"));
            }
            for l in others(k, &[i, j]) {
                let fiber = geom.fiber_elements(l);
                for t in [i, j] {
                    let tk = a.kernel(t);
                    if !tk.is_regular(&fiber)? || tk.induced(&fiber)?.order() != tk.order() {
                        return violation(format!("T_{t} is not faithful and regular on type {l}"));
                    }
                }
            }
            if !a.kernel(i).is_isomorphic_small(a.kernel(j), &iso_limits)? {
                return violation(format!("T_{i} and T_{j} are not isomorphic"));
            }
        }
    }
    let sizes = geom.fiber_sizes();
    if unf.len() >= 3 && sizes.iter().any(|&s| s != sizes[0]) {
        return violation(format!("three unfaithful types but unequal fibers {sizes:?}"));
    }
    let join = kernels.iter().skip(1).fold(kernels[0].clone(), |acc, t| acc.join(t));
    let nonabelian = !kernels[0].is_abelian();
    let m = *sizes.iter().max().expect("rank at least 3");
    let mut report = Table1Report {
        line: Table1Line::LineIII,
        k,
        m,
        p: None,
        d: None,
        unfaithful: unf.clone(),
        kernel_orders: kernels.iter().map(|t| saturate(t.order())).collect(),
        kernels_nonabelian: nonabelian,
        kernel_join_order: saturate(join.order()),
    };
    if unf.len() == 2 {
        if k != 3 || classes.quasiprimitive.len() != 1 {
            return violation("two unfaithful types need rank 3 and one quasiprimitive type");
        }
        if !nonabelian {
            return violation("two unfaithful types with abelian kernels");
        }
        let q = classes.quasiprimitive[0];
        let t1 = kernels[0].order();
        if sizes[q] as u128 != t1 {
            return violation(format!("|X_{q}| = {} differs from |T| = {t1}", sizes[q]));
        }
        if unf.iter().any(|&i| !sizes[q].is_multiple_of(sizes[i])) {
            return violation("an unfaithful fiber size does not divide the faithful one");
        }
        report.line = Table1Line::LineI;
    } else if unf.len() == k && nonabelian {
        if k != 3 {
            return violation(format!("nonabelian kernels at rank {k}"));
        }
        let product: u128 = kernels.iter().map(|t| t.order()).product();
        if join.order() != product {
            return violation("kernels do not generate their direct product");
        }
        report.line = Table1Line::LineII;
    } else if unf.len() == k {
        let Some((p, d)) = elementary_abelian(kernels[0]) else {
            return violation("abelian kernel is not elementary abelian");
        };
        if kernels.iter().any(|t| elementary_abelian(t) != Some((p, d))) {
            return violation("kernels are not all elementary abelian of the same order");
        }
        let q = (p as u128).pow(d);
        if sizes.iter().any(|&s| s as u128 != q) {
            return violation(format!("fibers {sizes:?} are not all of size {q}"));
        }
        if k as u128 > q + 1 {
            return violation(format!("k = {k} exceeds p^d + 1 = {}", q + 1));
        }
        if elementary_abelian(&join) != Some((p, 2 * d)) {
            return violation("kernels do not generate an elementary abelian group of order p^(2d)");
        }
        report.p = Some(p);
        report.d = Some(d);
    } else {
        return violation(format!("{} unfaithful types at rank {k}", unf.len()));
    }
    Ok(report)
}

/// Everything known about the pair, without raising on valid input.
pub fn full_report(a: &BoundAction, limits: &Limits) -> Result<ClassificationReport> {
    let geom = a.geometry();
    let mut report = ClassificationReport {
        verdict: Verdict::NotInFamily,
        reason: None,
        types: geom.types().to_vec(),
        fiber_sizes: geom.fiber_sizes(),
        group_order: saturate(a.group().order()),
        in_family: a.in_family_g(),
        is_geometry: geom.is_geometry(),
        primitive_degenerate: geom.is_primitive_degenerate(),
        normal_degenerate: geom.is_normal_degenerate(),
        primitive_basic: None,
        normal_basic: None,
        type_classes: None,
        decomposition: None,
        case_tag: None,
        theorem_form: None,
        case_checks: Vec::new(),
        table1: None,
        witnesses: Witnesses { kernel_orders: a.kernels().iter().map(|t| saturate(t.order())).collect(), ..Witnesses::default() },
    };
    if let Some(reason) = a.family_violation() {
        report.reason = Some(reason);
        return Ok(report);
    }
    let classes = a.classify_types(limits)?;
    report.witnesses.minimal_normal_orders = a.minimal_normal_subgroups(limits)?.iter().map(|n| saturate(n.order())).collect();
    for (x, &i) in classes.unfaithful.iter().enumerate() {
        for &j in &classes.unfaithful[x + 1..] {
            if a.kernel_on_types(&[i, j]).is_trivial() {
                report.witnesses.trivial_kernel_intersections.push((i, j));
            }
        }
    }
    let primitive_basic = is_primitive_basic(a)?;
    let normal_basic = is_normal_basic(a, limits)?;
    report.primitive_basic = Some(primitive_basic);
    report.normal_basic = Some(normal_basic);
    report.type_classes = Some(classes.clone());
    if primitive_basic {
        report.decomposition = Some(decompose_theorem11(a)?);
    }
    if normal_basic {
        let (case, checks) = classify_normal_basic(a, limits)?;
        report.case_tag = Some(case);
        report.theorem_form = Some(case.theorem_form().to_string());
        report.case_checks = checks;
        if case == Case::III && a.rank() >= 3 {
            report.table1 = Some(table1_line(a, limits)?);
        }
        if case == Case::IV {
            let t = classes.non_quasiprimitive[0];
            let fiber = geom.fiber_elements(t);
            for n in a.minimal_normal_subgroups(limits)? {
                if !n.is_transitive(&fiber)? {
                    report.witnesses.non_quasiprimitive = Some(SubgroupWitness::new(geom, n)?);
                    break;
                }
            }
        }
    } else if let Some(n) = normal_basic_witness(a, limits)? {
        report.witnesses.witness_quotient_fibers =
            Some(normal_quotient(a, &n)?.quotient.geometry().fiber_sizes());
        report.witnesses.intransitive_normal = Some(SubgroupWitness::new(geom, &n)?);
    }
    report.verdict = if primitive_basic {
        Verdict::PrimitiveBasic
    } else if normal_basic {
        Verdict::NormalBasic
    } else if geom.is_normal_degenerate() {
        Verdict::Degenerate
    } else {
        Verdict::NeitherBasic
    };
    Ok(report)
}

/// Binds and reports; a failed binding becomes a not-in-family report.
pub fn report_for(geometry: Pregeometry, group: PermGroup, limits: &Limits) -> Result<ClassificationReport> {
    let types = geometry.types().to_vec();
    let fiber_sizes = geometry.fiber_sizes();
    let order = group.order();
    match BoundAction::bind(geometry, group) {
        Ok(a) => full_report(&a, limits),
        Err(e) => Ok(ClassificationReport {
            verdict: Verdict::NotInFamily,
            reason: Some(e.to_string()),
            types,
            fiber_sizes,
            group_order: saturate(order),
            in_family: false,
            is_geometry: false,
            primitive_degenerate: false,
            normal_degenerate: false,
            primitive_basic: None,
            normal_basic: None,
            type_classes: None,
            decomposition: None,
            case_tag: None,
            theorem_form: None,
            case_checks: Vec::new(),
            table1: None,
            witnesses: Witnesses::default(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn set_partition_counts() {
        let bell = [1, 1, 2, 5, 15, 52];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(k).len(), b);
        }
    }

    #[test]
    fn select_case_follows_s() {
        let c = |u: Vec<usize>, q: Vec<usize>, n: Vec<usize>| TypeClasses {
            unfaithful: u,
            quasiprimitive: q,
            non_quasiprimitive: n,
        };
        assert_eq!(select_case(&c(vec![], vec![0, 1], vec![]), 2), Case::I);
        assert_eq!(select_case(&c(vec![], vec![0], vec![1]), 2), Case::IV);
        assert_eq!(select_case(&c(vec![0], vec![1], vec![]), 2), Case::III);
        assert_eq!(select_case(&c(vec![2], vec![0, 1], vec![]), 3), Case::IIa);
        assert_eq!(select_case(&c(vec![0, 1], vec![2], vec![]), 3), Case::III);
        assert_eq!(select_case(&c(vec![2, 3], vec![0, 1], vec![]), 4), Case::IIb);
        assert_eq!(select_case(&c(vec![0, 1, 2], vec![], vec![]), 3), Case::III);
    }

    #[test]
    fn gamma22_swaps() {
        let lim = Limits::default();
        let a = BoundAction::bind(
            Pregeometry::gamma_km(2, 2).unwrap(),
            PermGroup::from_cycles(4, &["(0 1)", "(2 3)"]).unwrap(),
        )
        .unwrap();
        let d = decompose_theorem11(&a).unwrap();
        assert_eq!(d.partition.parts(), &[vec![0], vec![1]]);
        assert!(d.parts.iter().all(|p| p.induced_order == 2 && p.certified()));
        assert_eq!(theorem11_candidates(&a).unwrap(), vec![d.partition.clone()]);
        let (case, checks) = classify_normal_basic(&a, &lim).unwrap();
        assert_eq!(case, Case::III);
        assert_eq!(checks.iter().filter(|c| c.holds).count(), 1);
        let r = full_report(&a, &lim).unwrap();
        assert_eq!(r.verdict, Verdict::PrimitiveBasic);
        assert_eq!(r.case_tag, Some(Case::III));
    }

    #[test]
    fn invalid_binding_report() {
        let r = report_for(
            Pregeometry::gamma_km(2, 2).unwrap(),
            PermGroup::from_cycles(4, &["(0 2)"]).unwrap(),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::NotInFamily);
        assert!(r.reason.is_some());
    }

    #[test]
    fn neither_basic_has_witness() {
        let a = BoundAction::bind(
            Pregeometry::gamma_km(2, 4).unwrap(),
            PermGroup::from_cycles(8, &["(0 1 2 3)", "(4 5 6 7)"]).unwrap(),
        )
        .unwrap();
        let r = full_report(&a, &Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NeitherBasic);
        let w = r.witnesses.intransitive_normal.unwrap();
        assert!(w.intransitive_types.len() >= 2);
        assert!(r.decomposition.is_none() && r.case_tag.is_none());
    }
}
