//! Support varieties of induced modules: the parabolic route, the
//! Borel-de Siebenthal descent through closed subsystems of the dual root
//! system, and the congruence test deciding which candidates occur as `Phi_lambda`.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::characters::positive_system;
use crate::congruence::{dot_mod, solve_homogeneous};
use crate::error::{Error, Result};
use crate::orbits::{bala_carter_dim, levi_regular_dim, Normality, OrbitDescriptor, OrbitLabel};
use crate::rootsys::{CartanType, RootSystem, Series, Weight, Word};
use crate::subsystems::{
    basis_from_roots, cartan_type_of, conjugate_to_parabolic, is_parabolic_by_span, phi_lambda, ConjugationResult, RootMask, RootSet,
};
use crate::tables;

/// Solution spaces up to this size are searched exhaustively for a witness.
pub const WITNESS_SEARCH_LIMIT: u128 = 1_000_000;

/// Default cap on masks visited by orbit searches.
pub const DEFAULT_ORBIT_BUDGET: usize = 5_000_000;

/// Assumption flag attached to answers that rely on naturality of support
/// varieties for induced modules.
pub const NATURALITY: &str = "naturality of support varieties for induced modules";

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn reflect(sys: &RootSystem, b: usize, g: usize) -> usize {
    let (rb, rg) = (sys.root(b), sys.root(g));
    let p = 2 * sys.form_roots(rg, rb) / sys.form_roots(rb, rb);
    let v: Vec<i64> = rg.iter().zip(rb).map(|(x, y)| x - p * y).collect();
    sys.index_of(&v).expect("root system is closed under reflections")
}

/// The root subsystem generated by `basis`: its orbit under the reflections
/// in `basis`.
pub fn generated_subsystem(sys: &RootSystem, basis: &[usize]) -> RootMask {
    let mut mask = RootMask::from_indices(basis.iter().copied());
    let mut queue: VecDeque<usize> = basis.iter().copied().collect();
    while let Some(g) = queue.pop_front() {
        for &b in basis {
            let img = reflect(sys, b, g);
            if !mask.contains(img) {
                mask.insert(img);
                queue.push_back(img);
            }
        }
    }
    mask
}

fn components(sys: &RootSystem, basis: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = basis.to_vec();
    let mut out = Vec::new();
    while let Some(start) = left.pop() {
        let mut comp = vec![start];
        let mut q = 0;
        while q < comp.len() {
            let u = comp[q];
            let (linked, rest): (Vec<usize>, Vec<usize>) =
                left.iter().partition(|&&v| sys.form_roots(sys.root(u), sys.root(v)) != 0);
            comp.extend(linked);
            left = rest;
            q += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

fn root_name(sys: &RootSystem, b: usize) -> String {
    if b < sys.rank() {
        format!("a{}", b + 1)
    } else {
        let coords: Vec<String> = sys.root(b).iter().map(i64::to_string).collect();
        format!("({})", coords.join(","))
    }
}

/// The maximal closed subsystems of the subsystem with simple roots `basis`,
/// one step of the Borel-de Siebenthal construction on each component:
/// drop a node of highest-root coefficient 1, or adjoin the lowest root and
/// drop a node whose coefficient is prime.
fn maximal_steps(sys: &RootSystem, basis: &[usize]) -> Vec<(Vec<usize>, String)> {
    let mut out = Vec::new();
    for comp in components(sys, basis) {
        let ctype = basis_from_roots(sys, comp.clone()).map(|b| b.cartan_type.to_string()).unwrap_or_default();
        let (theta, coeffs) = positive_system(sys, &comp)
            .into_iter()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .expect("nonempty component");
        let lowest = sys.neg(sys.index_of(&theta).expect("highest root is a root"));
        for (k, &node) in comp.iter().enumerate() {
            let rest = basis.iter().copied().filter(|&b| b != node);
            if coeffs[k] == 1 {
                out.push((rest.collect(), format!("{ctype}: drop {}", root_name(sys, node))));
            } else if is_prime(coeffs[k]) {
                let mut next: Vec<usize> = rest.collect();
                next.push(lowest);
                next.sort_unstable();
                out.push((next, format!("{ctype}: adjoin lowest root, drop {} (coefficient {})", root_name(sys, node), coeffs[k])));
            }
        }
    }
    out
}

/// A maximal closed subsystem from the extended Dynkin diagram.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalSubsystem {
    /// Root indices of the system passed in.
    pub basis: Vec<usize>,
    pub cartan_type: CartanType,
    pub step: String,
}

/// Maximal closed subsystems up to type, in the order the diagram yields them.
pub fn borel_de_siebenthal_maximals(r: &RootSystem) -> Vec<MaximalSubsystem> {
    let simple: Vec<usize> = (0..r.rank()).collect();
    let mut out: Vec<MaximalSubsystem> = Vec::new();
    for (basis, step) in maximal_steps(r, &simple) {
        let cartan_type = basis_from_roots(r, basis.clone()).map(|b| b.cartan_type).unwrap_or_else(|_| CartanType::empty());
        if !out.iter().any(|m| m.cartan_type == cartan_type) {
            out.push(MaximalSubsystem { basis, cartan_type, step });
        }
    }
    out
}

/// A closed subsystem of `Phi^vee` reached by repeated Borel-de Siebenthal steps.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateSubsystem {
    /// Roots of `Phi` whose coroots form a simple system of the candidate.
    pub basis: Vec<usize>,
    /// All roots of `Phi` in the candidate.
    pub roots: RootSet,
    /// Type as a subsystem of `Phi`.
    pub cartan_type: CartanType,
    /// Type of the coroots as a subsystem of `Phi^vee`.
    pub dual_type: CartanType,
    pub provenance: Vec<String>,
}

/// The dual system with the map from its roots to the roots of `Phi`.
struct DualView {
    dual: RootSystem,
    to_phi: Vec<usize>,
}

impl DualView {
    fn new(r: &RootSystem) -> Self {
        let dual = r.dual();
        let lookup: std::collections::HashMap<&[i64], usize> = (0..r.num_roots()).map(|i| (r.coroot(i), i)).collect();
        let to_phi = (0..dual.num_roots()).map(|k| lookup[dual.root(k)]).collect();
        DualView { dual, to_phi }
    }
}

/// Every proper nonempty closed subsystem of `Phi^vee` reachable from the
/// full system by Borel-de Siebenthal steps, deduplicated as root sets. Up to
/// conjugacy this is every closed subsystem.
pub fn closed_subsystem_candidates(r: &RootSystem, cap: usize) -> Result<Vec<CandidateSubsystem>> {
    let view = DualView::new(r);
    let sys = &view.dual;
    let start: Vec<usize> = (0..sys.rank()).collect();
    let mut seen: HashSet<RootMask> = HashSet::from([generated_subsystem(sys, &start)]);
    let mut queue: VecDeque<(Vec<usize>, Vec<String>)> = VecDeque::from([(start, Vec::new())]);
    let mut out = Vec::new();
    while let Some((basis, path)) = queue.pop_front() {
        for (next, step) in maximal_steps(sys, &basis) {
            if next.is_empty() {
                continue;
            }
            let mask = generated_subsystem(sys, &next);
            if !seen.insert(mask) {
                continue;
            }
            if seen.len() > cap {
                return Err(Error::Budget(format!("more than {cap} closed subsystems")));
            }
            let mut provenance = path.clone();
            provenance.push(step);
            let mut roots: RootSet = mask.iter().map(|k| view.to_phi[k]).collect();
            roots.sort_unstable();
            let basis_phi: Vec<usize> = next.iter().map(|&k| view.to_phi[k]).collect();
            out.push(CandidateSubsystem {
                cartan_type: cartan_type_of(r, &roots)?,
                dual_type: basis_from_roots(sys, next.clone())?.cartan_type,
                basis: basis_phi,
                roots,
                provenance: provenance.clone(),
            });
            queue.push_back((next, provenance));
        }
    }
    Ok(out)
}

/// Whether a root subsystem occurs as `Phi_lambda` for some weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Realizability {
    /// `Phi_lambda` equals the candidate for this dominant weight.
    Witness { lambda: Weight },
    /// Every weight whose `Phi_lambda` contains the candidate also has this
    /// root: its coroot functional lies in the span of the candidate's modulo `l`.
    Forced { root: usize, coroot: Vec<i64> },
    /// No single root is forced, yet an exhaustive search of the solutions
    /// found none avoiding all other roots.
    Excluded { solutions: u128 },
    /// The solution space is too large to search.
    Undetermined { solutions: u128 },
}

/// Decides whether the subsystem generated by `basis` (roots of `Phi`) is
/// `Phi_lambda` for some `lambda`, working with `c_i = <lambda + rho, alpha_i^vee>`
/// modulo `l`.
pub fn realizable_as_phi_lambda(r: &RootSystem, basis: &[usize], l: i64) -> Result<Realizability> {
    if l < 2 {
        return Err(Error::Domain(format!("l must be at least 2, got {l}")));
    }
    if let Some(&b) = basis.iter().find(|&&b| b >= r.num_roots()) {
        return Err(Error::Domain(format!("root index {b} out of range")));
    }
    let n = r.rank();
    let s = generated_subsystem(r, basis);
    let rows: Vec<Vec<i64>> = basis.iter().map(|&b| r.coroot(b).to_vec()).collect();
    let solutions = solve_homogeneous(&rows, n, l)?;
    let others: Vec<usize> = r.positive_roots().filter(|&g| !s.contains(g)).collect();
    if let Some(&g) = others.iter().find(|&&g| solutions.annihilated_by(r.coroot(g))) {
        return Ok(Realizability::Forced { root: g, coroot: r.coroot(g).to_vec() });
    }
    let size = solutions.size();
    if size > WITNESS_SEARCH_LIMIT {
        return Ok(Realizability::Undetermined { solutions: size });
    }
    let found = solutions.find(|c| others.iter().all(|&g| dot_mod(r.coroot(g), c, l) != 0));
    Ok(match found {
        Some(c) => {
            let lambda: Weight = c.iter().map(|&x| if x == 0 { l - 1 } else { x - 1 }).collect();
            debug_assert_eq!(RootMask::from_indices(phi_lambda(r, &lambda, l)), s);
            Realizability::Witness { lambda }
        }
        None => Realizability::Excluded { solutions: size },
    })
}

/// `min_{w in W} |w(S) ∩ T|`, or how far the orbit search got.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinIntersection {
    Value { min: usize, orbit_size: usize },
    Undetermined { explored: usize, weyl_order: u128 },
}

impl MinIntersection {
    pub fn value(&self) -> Option<usize> {
        match self {
            MinIntersection::Value { min, .. } => Some(*min),
            MinIntersection::Undetermined { .. } => None,
        }
    }
}

/// The `W`-orbit of the root set `s` (not of the group), or `Err(explored)`
/// once it exceeds `budget` masks.
pub fn subset_orbit(r: &RootSystem, s: &[usize], budget: usize) -> std::result::Result<Vec<RootMask>, usize> {
    let start = RootMask::from_indices(s.iter().copied());
    let mut seen: HashSet<RootMask> = HashSet::from([start]);
    let mut orbit = vec![start];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..r.rank() {
                let img = m.map(r.simple_perm(i));
                if seen.insert(img) {
                    next.push(img);
                }
            }
        }
        if seen.len() > budget {
            return Err(seen.len());
        }
        orbit.extend_from_slice(&next);
        frontier = next;
    }
    Ok(orbit)
}

fn min_over_orbit(r: &RootSystem, orbit: &std::result::Result<Vec<RootMask>, usize>, t: &[usize]) -> MinIntersection {
    let target = RootMask::from_indices(t.iter().copied());
    match orbit {
        Ok(masks) => MinIntersection::Value {
            min: masks.iter().map(|m| m.intersection_count(&target)).min().unwrap_or(0),
            orbit_size: masks.len(),
        },
        Err(explored) => MinIntersection::Undetermined { explored: *explored, weyl_order: r.weyl_group_order() },
    }
}

/// `min_{w in W} |w(S) ∩ T|` by enumerating the orbit of `S`.
pub fn min_intersection(r: &RootSystem, s: &[usize], t: &[usize], budget: usize) -> MinIntersection {
    min_over_orbit(r, &subset_orbit(r, s, budget), t)
}

/// `min_intersection` against one standard Levi subsystem of each class,
/// classes told apart by type and by the dimension of `G . x_J`.
#[derive(Clone, Debug, Serialize)]
pub struct LeviIntersection {
    /// 1-based simple indices.
    pub j: Vec<usize>,
    pub cartan_type: CartanType,
    /// `dim G . x_J`.
    pub orbit_dim: u64,
    pub min: MinIntersection,
}

pub fn levi_min_intersections(r: &RootSystem, s: &[usize], budget: usize) -> Result<Vec<LeviIntersection>> {
    let n = r.rank();
    let orbit = subset_orbit(r, s, budget);
    let mut out: Vec<LeviIntersection> = Vec::new();
    for mask in 1u32..(1 << n) {
        let j: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let roots = r.parabolic_roots(&j);
        let cartan_type = cartan_type_of(r, &roots)?;
        let orbit_dim = levi_regular_dim(r, &j);
        if out.iter().any(|e| e.cartan_type == cartan_type && e.orbit_dim == orbit_dim) {
            continue;
        }
        let min = min_over_orbit(r, &orbit, &roots);
        out.push(LeviIntersection { j: j.iter().map(|i| i + 1).collect(), cartan_type, orbit_dim, min });
    }
    out.sort_by_key(|e| (e.orbit_dim, e.cartan_type.to_string()));
    Ok(out)
}

/// The largest `G . x_J` over Levi classes with `min |w(S) ∩ Phi_J| = 0`,
/// `None` if any class was left undetermined.
pub fn largest_unconstricted(levis: &[LeviIntersection]) -> Option<&LeviIntersection> {
    if levis.iter().any(|e| e.min.value().is_none()) {
        return None;
    }
    levis.iter().filter(|e| e.min.value() == Some(0)).max_by_key(|e| e.orbit_dim)
}

/// A row of the bad-`l` answers: the orbit whose closure is the support
/// variety when `Phi_lambda` has the given type.
struct BadLRow {
    series: Series,
    rank: usize,
    /// The row applies when one of these divides `l`.
    divisors: &'static [i64],
    phi_lambda: &'static str,
    orbit: &'static str,
}

const BAD_L_ROWS: &[BadLRow] = &[
    BadLRow { series: Series::E, rank: 6, divisors: &[3], phi_lambda: "A2^3", orbit: "A2+A1" },
    BadLRow { series: Series::F, rank: 4, divisors: &[3], phi_lambda: "A2^2", orbit: "A1+Ã2" },
    BadLRow { series: Series::E, rank: 7, divisors: &[3], phi_lambda: "A5xA2", orbit: "2A2+A1" },
    BadLRow { series: Series::E, rank: 7, divisors: &[3], phi_lambda: "A2^3", orbit: "A5+A1" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A2^3xA1", orbit: "E8(b6)" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A8", orbit: "2A2+2A1" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A5xA2", orbit: "E6(a3)+A1" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A2^3", orbit: "E6+A1" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "E6xA2", orbit: "2A2+A1" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A2^4", orbit: "D6" },
    BadLRow { series: Series::E, rank: 8, divisors: &[3, 5], phi_lambda: "A4^2", orbit: "A4+A3" },
];

/// Constrictor inequalities `|w(Phi_lambda) ∩ Phi_J| > threshold` for all `w`,
/// with `G . x_J` the orbit named by `levi`.
struct ConstrictorRow {
    series: Series,
    rank: usize,
    phi_lambda: &'static str,
    levi: &'static str,
    threshold: usize,
}

const CONSTRICTOR_ROWS: &[ConstrictorRow] = &[
    ConstrictorRow { series: Series::E, rank: 7, phi_lambda: "A5xA2", levi: "A3", threshold: 0 },
    ConstrictorRow { series: Series::E, rank: 7, phi_lambda: "A2^3", levi: "A5'", threshold: 0 },
    ConstrictorRow { series: Series::E, rank: 7, phi_lambda: "A2^3", levi: "D5+A1", threshold: 2 },
    ConstrictorRow { series: Series::E, rank: 8, phi_lambda: "A5xA2", levi: "E6", threshold: 6 },
    ConstrictorRow { series: Series::E, rank: 8, phi_lambda: "A5xA2", levi: "D6", threshold: 4 },
];

fn bad_l_row(r: &RootSystem, l: i64, t: &CartanType) -> Option<&'static BadLRow> {
    BAD_L_ROWS.iter().find(|row| {
        row.series == r.series()
            && row.rank == r.rank()
            && row.divisors.iter().any(|d| l % d == 0)
            && row.phi_lambda.parse::<CartanType>().is_ok_and(|x| &x == t)
    })
}

/// True when `l` is one of the bad cases handled by the descent.
pub fn is_bad_l_case(series: Series, rank: usize, l: i64) -> bool {
    l > 1
        && l % 2 == 1
        && match (series, rank) {
            (Series::E, 6 | 7) | (Series::F, 4) => l % 3 == 0,
            (Series::E, 8) => l % 3 == 0 || l % 5 == 0,
            _ => false,
        }
}

/// The tabulated orbit with its computed dimension and the lower bound check.
#[derive(Clone, Debug, Serialize)]
pub struct TabulatedOrbit {
    pub orbit: OrbitDescriptor,
    /// `|Phi| - |Phi_lambda|`, a lower bound for the support dimension.
    pub lower_bound: u64,
    pub consistent_with_lower_bound: bool,
}

fn tabulated_orbit(r: &RootSystem, label: &str, phi_lambda_len: usize) -> Result<TabulatedOrbit> {
    let dim = bala_carter_dim(r, label)?;
    let lower_bound = (r.num_roots() - phi_lambda_len) as u64;
    Ok(TabulatedOrbit {
        orbit: OrbitDescriptor {
            label: OrbitLabel::BalaCarter(label.to_string()),
            dim,
            normal: Normality::Open,
            very_even: false,
        },
        lower_bound,
        consistent_with_lower_bound: dim >= lower_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateVerdict {
    pub candidate: CandidateSubsystem,
    pub verdict: Realizability,
}

#[derive(Clone, Debug, Serialize)]
pub struct BadLEntry {
    pub phi_lambda_type: CartanType,
    pub dual_type: CartanType,
    pub witness: Weight,
    pub provenance: Vec<String>,
    pub tabulated: Option<TabulatedOrbit>,
    /// Minimal intersections with each Levi class.
    pub levi_intersections: Vec<LeviIntersection>,
    /// Dimension of the largest `G . x_J` whose Levi avoids some conjugate
    /// of `Phi_lambda`.
    pub largest_unconstricted_dim: Option<u64>,
    pub assumptions: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BadLClassification {
    pub series: Series,
    pub rank: usize,
    pub l: i64,
    pub candidates_examined: usize,
    /// Types of `Phi_lambda` not conjugate to any `Phi_J`, one per type.
    pub entries: Vec<BadLEntry>,
    /// Non-parabolic candidates that cannot be `Phi_lambda`, one per type.
    pub eliminated: Vec<CandidateVerdict>,
    /// Non-parabolic candidates left open by the search budgets.
    pub undetermined: Vec<CandidateVerdict>,
}

/// Classifies the `Phi_lambda` not conjugate to a standard parabolic
/// subsystem: descend through closed subsystems of `Phi^vee`, discard those
/// cut out by their own span (exactly the ones conjugate to some `Phi_J`),
/// decide realizability modulo `l`, and confirm each realizable survivor by
/// an orbit search.
pub fn classify_bad_l(r: &RootSystem, l: i64, budget: usize, long_run: bool) -> Result<BadLClassification> {
    if r.is_dual() || !is_bad_l_case(r.series(), r.rank(), l) {
        return Err(Error::Domain(format!("{}{} with l = {l} is not a bad case", r.series().letter(), r.rank())));
    }
    if r.rank() >= 7 && !long_run {
        return Err(Error::Budget(format!("{} needs the long-run option", r.cartan_type())));
    }
    let candidates = closed_subsystem_candidates(r, 1_000_000)?;
    let candidates_examined = candidates.len();
    let mut entries: Vec<BadLEntry> = Vec::new();
    let mut eliminated: Vec<CandidateVerdict> = Vec::new();
    let mut undetermined: Vec<CandidateVerdict> = Vec::new();
    for cand in candidates {
        if cand.basis.iter().all(|&b| b < r.rank()) {
            continue;
        }
        if is_parabolic_by_span(r, &cand.roots) {
            continue;
        }
        let verdict = realizable_as_phi_lambda(r, &cand.basis, l)?;
        match verdict {
            Realizability::Witness { lambda } => {
                if entries.iter().any(|e| e.phi_lambda_type == cand.cartan_type && e.dual_type == cand.dual_type) {
                    continue;
                }
                // Second route: the orbit search must not reach a standard parabolic.
                match conjugate_to_parabolic(r, &cand.roots, budget)? {
                    ConjugationResult::NotConjugate { .. } => {}
                    ConjugationResult::Found(c) => {
                        return Err(Error::Data(format!(
                            "{} is not cut out by its span but is conjugate to J = {:?}",
                            cand.cartan_type, c.j
                        )))
                    }
                    ConjugationResult::Exhausted { explored } => {
                        undetermined.push(CandidateVerdict {
                            candidate: cand,
                            verdict: Realizability::Undetermined { solutions: explored as u128 },
                        });
                        continue;
                    }
                }
                let tabulated = bad_l_row(r, l, &cand.cartan_type)
                    .map(|row| tabulated_orbit(r, row.orbit, cand.roots.len()))
                    .transpose()?;
                let levi_intersections = levi_min_intersections(r, &cand.roots, budget)?;
                let largest_unconstricted_dim = largest_unconstricted(&levi_intersections).map(|e| e.orbit_dim);
                entries.push(BadLEntry {
                    phi_lambda_type: cand.cartan_type.clone(),
                    dual_type: cand.dual_type.clone(),
                    witness: lambda,
                    provenance: cand.provenance.clone(),
                    tabulated,
                    levi_intersections,
                    largest_unconstricted_dim,
                    assumptions: vec![NATURALITY],
                });
            }
            Realizability::Forced { .. } | Realizability::Excluded { .. } => {
                if !eliminated.iter().any(|e| e.candidate.dual_type == cand.dual_type && e.candidate.cartan_type == cand.cartan_type) {
                    eliminated.push(CandidateVerdict { candidate: cand, verdict });
                }
            }
            Realizability::Undetermined { .. } => undetermined.push(CandidateVerdict { candidate: cand, verdict }),
        }
    }
    // A type may be realizable for one conjugacy class and not another.
    eliminated.retain(|e| !entries.iter().any(|x| x.phi_lambda_type == e.candidate.cartan_type && x.dual_type == e.candidate.dual_type));
    entries.sort_by_key(|e| std::cmp::Reverse(e.phi_lambda_type.num_roots()));
    Ok(BadLClassification { series: r.series(), rank: r.rank(), l, candidates_examined, entries, eliminated, undetermined })
}

/// How the support variety was determined.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportRoute {
    /// `w(Phi_lambda) = Phi_J`; the support is `G . u_J`.
    Parabolic { word: Word, j: Vec<usize> },
    /// Looked up among the bad-`l` answers by the type of `Phi_lambda`.
    BadLTable { orbit: String },
    /// Neither applies.
    Unresolved { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportResult {
    pub lambda: Weight,
    pub l: i64,
    pub phi_lambda: RootSet,
    pub phi_lambda_type: CartanType,
    pub route: SupportRoute,
    pub orbit: Option<OrbitDescriptor>,
    /// `|Phi| - |Phi_lambda|`.
    pub lower_bound: u64,
    pub consistent_with_lower_bound: Option<bool>,
    pub assumptions: Vec<&'static str>,
    /// The Weyl module `Delta(lambda)` has the same support.
    pub same_for_weyl_module: bool,
}

/// Support variety of the induced module `nabla(lambda)` restricted to the
/// small quantum group.
pub fn support_variety_nabla(r: &RootSystem, lambda: &[i64], l: i64, budget: usize) -> Result<SupportResult> {
    if lambda.len() != r.rank() || lambda.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("{lambda:?} is not a dominant weight for {}", r.cartan_type())));
    }
    if l < 2 {
        return Err(Error::Domain(format!("l must be at least 2, got {l}")));
    }
    let s = phi_lambda(r, lambda, l);
    let phi_lambda_type = cartan_type_of(r, &s)?;
    let lower_bound = (r.num_roots() - s.len()) as u64;
    let mut result = SupportResult {
        lambda: lambda.to_vec(),
        l,
        phi_lambda: s.clone(),
        phi_lambda_type: phi_lambda_type.clone(),
        route: SupportRoute::Unresolved { reason: String::new() },
        orbit: None,
        lower_bound,
        consistent_with_lower_bound: None,
        assumptions: Vec::new(),
        same_for_weyl_module: true,
    };
    match conjugate_to_parabolic(r, &s, budget)? {
        ConjugationResult::Found(c) => {
            let j: Vec<usize> = c.j.iter().map(|i| i + 1).collect();
            let label = tables::appendix()
                .conj
                .iter()
                .find(|row| row.series == r.series() && row.rank == r.rank() && row.j == j && !r.is_dual())
                .map(|row| OrbitLabel::BalaCarter(row.orbit.clone()))
                .unwrap_or(OrbitLabel::Induced { levi_j: j.clone() });
            result.orbit = Some(OrbitDescriptor { label, dim: lower_bound, normal: Normality::Open, very_even: false });
            result.consistent_with_lower_bound = Some(true);
            result.route = SupportRoute::Parabolic { word: c.word, j };
        }
        ConjugationResult::NotConjugate { .. } => match bad_l_row(r, l, &phi_lambda_type) {
            Some(row) => {
                let t = tabulated_orbit(r, row.orbit, s.len())?;
                result.orbit = Some(t.orbit);
                result.consistent_with_lower_bound = Some(t.consistent_with_lower_bound);
                result.assumptions.push(NATURALITY);
                result.route = SupportRoute::BadLTable { orbit: row.orbit.to_string() };
            }
            None => {
                result.route = SupportRoute::Unresolved {
                    reason: format!("Phi_lambda of type {phi_lambda_type} is not conjugate to a standard parabolic and has no tabulated answer"),
                }
            }
        },
        ConjugationResult::Exhausted { explored } => {
            result.route = SupportRoute::Unresolved { reason: format!("conjugacy search stopped after {explored} root sets") };
        }
    }
    Ok(result)
}

/// One tabulated constrictor inequality evaluated on a realized `Phi_lambda`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstrictorCheck {
    pub phi_lambda_type: CartanType,
    pub levi: &'static str,
    /// 1-based simple indices of the chosen Levi subsystem.
    pub j: Vec<usize>,
    pub threshold: usize,
    pub min: MinIntersection,
    pub holds: Option<bool>,
}

/// Evaluates the tabulated constrictor inequalities for the entries of a
/// classification.
pub fn constrictor_checks(r: &RootSystem, classification: &BadLClassification, budget: usize) -> Result<Vec<ConstrictorCheck>> {
    let n = r.rank();
    let mut out = Vec::new();
    for row in CONSTRICTOR_ROWS.iter().filter(|row| row.series == r.series() && row.rank == r.rank()) {
        let t: CartanType = row.phi_lambda.parse()?;
        let Some(entry) = classification.entries.iter().find(|e| e.phi_lambda_type == t) else {
            continue;
        };
        let s = phi_lambda(r, &entry.witness, classification.l);
        let levi_type: CartanType = row.levi.trim_end_matches('\'').parse()?;
        let want_dim = bala_carter_dim(r, row.levi)?;
        let j = (1u32..(1 << n))
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<usize>>())
            .find(|j| {
                cartan_type_of(r, &r.parabolic_roots(j)).is_ok_and(|x| x == levi_type) && levi_regular_dim(r, j) == want_dim
            })
            .ok_or_else(|| Error::Data(format!("no Levi subsystem for {}", row.levi)))?;
        let min = min_intersection(r, &s, &r.parabolic_roots(&j), budget);
        let holds = min.value().map(|v| v > row.threshold);
        out.push(ConstrictorCheck {
            phi_lambda_type: t,
            levi: row.levi,
            j: j.iter().map(|i| i + 1).collect(),
            threshold: row.threshold,
            min,
            holds,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: Series, n: usize) -> RootSystem {
        RootSystem::build(s, n).unwrap()
    }

    fn types(list: &[MaximalSubsystem]) -> Vec<String> {
        list.iter().map(|m| m.cartan_type.to_string()).collect()
    }

    #[test]
    fn maximal_subsystems() {
        assert_eq!(types(&borel_de_siebenthal_maximals(&build(Series::E, 6))), ["D5", "A5xA1", "A2^3".parse::<CartanType>().unwrap().to_string().as_str()]);
        assert_eq!(types(&borel_de_siebenthal_maximals(&build(Series::F, 4))), ["C3xA1", "A2xA2", "B4"]);
        assert_eq!(types(&borel_de_siebenthal_maximals(&build(Series::E, 8))), ["D8", "A8", "A4xA4", "E6xA2", "E7xA1"]);
    }

    #[test]
    fn parabolic_witness() {
        let r = build(Series::A, 3);
        assert_eq!(realizable_as_phi_lambda(&r, &[0], 5).unwrap(), Realizability::Witness { lambda: vec![4, 0, 0] });
        let min = min_intersection(&r, &r.parabolic_roots(&[0]), &(0..r.num_roots()).collect::<Vec<_>>(), 100);
        assert_eq!(min.value(), Some(2));
    }

    #[test]
    fn orbit_scan_matches_group_sweep() {
        let r = build(Series::F, 4);
        let s = phi_lambda(&r, &[8, 8, 2, 8], 9);
        let group = r.weyl_group_elements(2000).unwrap();
        let w0 = r.longest_element(&[0, 1, 2, 3]);
        let s_w0: Vec<usize> = s.iter().map(|&b| w0.apply(b)).collect();
        for j in [vec![0, 1], vec![1, 2], vec![0, 2, 3], vec![1, 2, 3]] {
            let t = r.parabolic_roots(&j);
            let tm = RootMask::from_indices(t.iter().copied());
            let sweep = group
                .iter()
                .map(|w| RootMask::from_indices(s.iter().map(|&b| w.apply(b))).intersection_count(&tm))
                .min()
                .unwrap();
            assert_eq!(min_intersection(&r, &s, &t, 100_000).value(), Some(sweep), "J = {j:?}");
            assert_eq!(min_intersection(&r, &s_w0, &t, 100_000).value(), Some(sweep));
        }
        assert!(matches!(min_intersection(&r, &s, &[], 3), MinIntersection::Undetermined { .. }));
    }

    #[test]
    fn e6_bad_l() {
        let r = build(Series::E, 6);
        let c = classify_bad_l(&r, 9, DEFAULT_ORBIT_BUDGET, false).unwrap();
        assert_eq!(c.entries.len(), 1);
        let e = &c.entries[0];
        assert_eq!(e.phi_lambda_type.to_string(), "A2xA2xA2");
        assert_eq!(e.witness, vec![8, 8, 8, 2, 8, 8]);
        let tab = e.tabulated.as_ref().unwrap();
        assert_eq!((tab.orbit.dim, tab.lower_bound, tab.consistent_with_lower_bound), (46, 54, false));
        assert_eq!(e.largest_unconstricted_dim, Some(54));
        assert!(c.undetermined.is_empty());
        assert!(classify_bad_l(&build(Series::E, 7), 9, DEFAULT_ORBIT_BUDGET, false).is_err());
        assert!(classify_bad_l(&r, 7, DEFAULT_ORBIT_BUDGET, true).is_err());
    }

    #[test]
    fn regular_weight_support() {
        let r = build(Series::B, 2);
        let s = support_variety_nabla(&r, &[0, 0], 7, 1000).unwrap();
        assert!(s.phi_lambda.is_empty());
        assert_eq!(s.orbit.unwrap().dim, 8);
        assert!(support_variety_nabla(&r, &[-1, 0], 7, 1000).is_err());
    }
}
