//! Weight combinatorics of the exterior algebra on `u_J^*`.
//!
//! Weights are in fundamental-weight coordinates throughout. The weights of
//! `Λ^i` are the sums of `i` distinct roots of `Phi^+ \ Phi_J^+`; a hit is such
//! a sum `gamma` that is `J`-dominant and congruent to `-w_{0,J}(w.0)` modulo
//! `l X`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Series, Weight, WeylElement};
use crate::subsystems::{natural_conjugation, type_a_element, type_a_permutation};

/// Default cap on the number of free roots for [`brute_force_steinberg`].
pub const MAX_BRUTE_ROOTS: usize = 26;
/// Default work budget for [`constrained_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 4_000_000_000;

const MAXR: usize = 8;
/// Largest half of `E[0]` tabulated in memory by [`constrained_search`].
const MAX_TABLE_BITS: usize = 22;
type Packed = [i64; MAXR];

fn pack(v: &[i64]) -> Packed {
    let mut p = [0; MAXR];
    p[..v.len()].copy_from_slice(v);
    p
}

fn add(a: &mut Packed, b: &Packed, sign: i64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += sign * y;
    }
}

/// A `J`-dominant weight `gamma = -w_{0,J}(w.0) + l nu` of `Λ^degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SteinbergHit {
    pub nu: Weight,
    pub degree: usize,
    /// Number of root subsets realizing `gamma` in this degree.
    pub multiplicity: u64,
}

/// `-w_{0,J}(w.0)`.
pub fn neg_w0j_wdot0(r: &RootSystem, w: &WeylElement, j: &[usize]) -> Weight {
    let wdot0 = r.act_dot(w, &vec![0; r.rank()]);
    r.act_weight(&r.longest_element(j), &wdot0).into_iter().map(|x| -x).collect()
}

/// True iff `<w.0, alpha^vee> = l - 1` for every `alpha` in `J` (0-based).
pub fn j_steinberg_check(r: &RootSystem, w: &WeylElement, j: &[usize], l: i64) -> bool {
    let wdot0 = r.act_dot(w, &vec![0; r.rank()]);
    j.iter().all(|&i| wdot0[i] == l - 1)
}

/// `Phi^+ \ Phi_J^+` as root indices.
pub fn free_roots(r: &RootSystem, j: &[usize]) -> Vec<usize> {
    let pj = r.parabolic_positive(j);
    r.positive_roots().filter(|b| pj.binary_search(b).is_err()).collect()
}

/// The partition of `Phi^+ \ Phi_J^+` by the value of `delta^vee = sum_{J} alpha^vee`.
#[derive(Clone, Debug, Serialize)]
pub struct EtDecomposition {
    /// 0-based simple indices.
    pub j: Vec<usize>,
    /// Coefficients of `delta^vee` on fundamental-weight coordinates.
    pub delta: Vec<i64>,
    /// `t -> E[t]`, root indices.
    pub e_sets: BTreeMap<i64, Vec<usize>>,
    pub wdot0: Weight,
    pub neg_w0j: Weight,
    /// `<-w_{0,J}(w.0), delta^vee>`.
    pub target: i64,
    /// Sum of `E[>0]`.
    pub lambda_max: Weight,
    pub lambda_delta: i64,
}

impl EtDecomposition {
    pub fn pair(&self, lambda: &[i64]) -> i64 {
        lambda.iter().zip(&self.delta).map(|(a, b)| a * b).sum()
    }

    /// `<lambda_max, delta^vee> - (l-1)|J|`, assuming the target identity holds.
    pub fn deficit(&self) -> i64 {
        self.lambda_delta - self.target
    }

    fn collect(&self, pred: impl Fn(i64) -> bool) -> Vec<usize> {
        self.e_sets.iter().filter(|(t, _)| pred(**t)).flat_map(|(_, v)| v.iter().copied()).collect()
    }

    pub fn positive(&self) -> Vec<usize> {
        self.collect(|t| t > 0)
    }

    pub fn negative(&self) -> Vec<usize> {
        self.collect(|t| t < 0)
    }

    pub fn zero(&self) -> Vec<usize> {
        self.collect(|t| t == 0)
    }
}

pub fn e_decomposition(r: &RootSystem, j: &[usize], w: &WeylElement, _l: i64) -> EtDecomposition {
    let n = r.rank();
    let delta: Vec<i64> = (0..n).map(|i| i64::from(j.contains(&i))).collect();
    let wdot0 = r.act_dot(w, &vec![0; n]);
    let neg_w0j = neg_w0j_wdot0(r, w, j);
    let pair = |v: &[i64]| -> i64 { v.iter().zip(&delta).map(|(a, b)| a * b).sum() };
    let mut e_sets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut lambda_max = vec![0; n];
    for b in free_roots(r, j) {
        let wt = r.root_weight(b);
        let t = pair(&wt);
        e_sets.entry(t).or_default().push(b);
        if t > 0 {
            lambda_max.iter_mut().zip(&wt).for_each(|(x, y)| *x += y);
        }
    }
    let target = pair(&neg_w0j);
    let lambda_delta = pair(&lambda_max);
    EtDecomposition { j: j.to_vec(), delta, e_sets, wdot0, neg_w0j, target, lambda_max, lambda_delta }
}

type HitMap = HashMap<(Weight, usize), u64>;

fn record(map: &mut HitMap, gamma: &Packed, target: &Packed, n: usize, l: i64, degree: usize) {
    let nu: Weight = (0..n).map(|i| (gamma[i] - target[i]) / l).collect();
    *map.entry((nu, degree)).or_insert(0) += 1;
}

fn is_hit(gamma: &Packed, target: &Packed, n: usize, l: i64, j: &[usize]) -> bool {
    j.iter().all(|&i| gamma[i] >= 0) && (0..n).all(|i| (gamma[i] - target[i]) % l == 0)
}

fn finish(map: HitMap) -> Vec<SteinbergHit> {
    let mut hits: Vec<SteinbergHit> =
        map.into_iter().map(|((nu, degree), multiplicity)| SteinbergHit { nu, degree, multiplicity }).collect();
    hits.sort();
    hits
}

fn merge(mut a: HitMap, b: HitMap) -> HitMap {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Every `J`-dominant subset sum of `Phi^+ \ Phi_J^+` congruent to
/// `-w_{0,J}(w.0)` modulo `l X`, by Gray-code enumeration.
pub fn brute_force_steinberg(
    r: &RootSystem,
    j: &[usize],
    w: &WeylElement,
    l: i64,
    max_roots: usize,
) -> Result<Vec<SteinbergHit>> {
    let n = r.rank();
    let free = free_roots(r, j);
    let k = free.len();
    if k > max_roots.min(40) {
        return Err(Error::Budget(format!("{k} free roots (2^{k} subsets) exceed the cap of {max_roots}")));
    }
    let vecs: Vec<Packed> = free.iter().map(|&b| pack(&r.root_weight(b))).collect();
    let target = pack(&neg_w0j_wdot0(r, w, j));
    let hi = k.min(10);
    let lo = k - hi;
    let map = (0u64..1 << hi)
        .into_par_iter()
        .fold(HitMap::new, |mut map, chunk| {
            let mut sum = [0; MAXR];
            let mut count = chunk.count_ones() as usize;
            for b in 0..hi {
                if chunk >> b & 1 == 1 {
                    add(&mut sum, &vecs[lo + b], 1);
                }
            }
            let mut state = 0u64;
            for g in 0u64..1 << lo {
                if g > 0 {
                    let bit = g.trailing_zeros() as usize;
                    state ^= 1 << bit;
                    if state >> bit & 1 == 1 {
                        add(&mut sum, &vecs[bit], 1);
                        count += 1;
                    } else {
                        add(&mut sum, &vecs[bit], -1);
                        count -= 1;
                    }
                }
                if is_hit(&sum, &target, n, l, j) {
                    record(&mut map, &sum, &target, n, l, count);
                }
            }
            map
        })
        .reduce(HitMap::new, merge);
    Ok(finish(map))
}

/// Subset sums of `roots` with their sizes.
fn subset_sums(vecs: &[Packed]) -> Vec<(Packed, u32)> {
    let mut out = vec![([0; MAXR], 0u32)];
    for v in vecs {
        let ext: Vec<(Packed, u32)> = out
            .iter()
            .map(|(s, c)| {
                let mut s = *s;
                add(&mut s, v, 1);
                (s, c + 1)
            })
            .collect();
        out.extend(ext);
    }
    out
}

/// Subsets of `vals` (all positive) with total exactly `total`, as index lists.
fn exact_sums(vals: &[i64], total: i64) -> Vec<Vec<usize>> {
    fn go(vals: &[i64], start: usize, left: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
        }
        for i in start..vals.len() {
            if vals[i] <= left {
                cur.push(i);
                go(vals, i + 1, left - vals[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(vals, 0, total, &mut Vec::new(), &mut out);
    out
}

/// A choice of `a ⊆ E[>0]` and `b ⊆ E[<0]`: the weight `lambda - a + b` and
/// its degree `|E[>0]| - |a| + |b|`.
#[derive(Clone, Debug)]
struct Shift {
    base: Packed,
    degree: usize,
}

/// Number of subsets of `vals` (all positive) with each total `0..=max`.
fn count_sums(vals: &[i64], max: i64) -> Vec<u64> {
    let mut c = vec![0u64; max as usize + 1];
    c[0] = 1;
    for &v in vals {
        for t in (v..=max).rev() {
            c[t as usize] = c[t as usize].saturating_add(c[(t - v) as usize]);
        }
    }
    c
}

fn delta_values(r: &RootSystem, e: &EtDecomposition) -> (Vec<usize>, Vec<i64>, Vec<usize>, Vec<i64>) {
    let pos = e.positive();
    let neg = e.negative();
    let pos_vals = pos.iter().map(|&b| e.pair(&r.root_weight(b))).collect();
    let neg_vals = neg.iter().map(|&b| -e.pair(&r.root_weight(b))).collect();
    (pos, pos_vals, neg, neg_vals)
}

/// Number of `(a, b)` with `<a, delta> - <b, delta> = deficit`.
fn count_shifts(r: &RootSystem, e: &EtDecomposition, deficit: i64) -> u64 {
    let (_, pos_vals, _, neg_vals) = delta_values(r, e);
    let ca = count_sums(&pos_vals, deficit);
    let cb = count_sums(&neg_vals, deficit);
    (0..=deficit as usize).map(|da| ca[da].saturating_mul(cb[deficit as usize - da])).fold(0, u64::saturating_add)
}

/// All `(a, b)` with `<a, delta> - <b, delta> = deficit`.
fn shifts(r: &RootSystem, e: &EtDecomposition, deficit: i64) -> Vec<Shift> {
    let (pos, pos_vals, neg, neg_vals) = delta_values(r, e);
    let wt = |b: usize| pack(&r.root_weight(b));
    let lambda = pack(&e.lambda_max);
    let mut out = Vec::new();
    for da in 0..=deficit {
        let bs = exact_sums(&neg_vals, deficit - da);
        if bs.is_empty() {
            continue;
        }
        for a in exact_sums(&pos_vals, da) {
            for b in &bs {
                let mut base = lambda;
                a.iter().for_each(|&i| add(&mut base, &wt(pos[i]), -1));
                b.iter().for_each(|&i| add(&mut base, &wt(neg[i]), 1));
                out.push(Shift { base, degree: pos.len() - a.len() + b.len() });
            }
        }
    }
    out
}

/// The search over `x = lambda - a + b + z` with `a ⊆ E[>0]`, `b ⊆ E[<0]`,
/// `z ⊆ E[0]`.
///
/// Every level `<x, delta^vee> = target + l k` with `k >= 0` not exceeding
/// `<lambda_max, delta^vee>` is searched, which makes the result complete. The
/// sums over `E[0]` are matched by residue modulo `l` from two halves.
pub fn constrained_search(
    r: &RootSystem,
    j: &[usize],
    w: &WeylElement,
    l: i64,
    budget: u64,
) -> Result<Vec<SteinbergHit>> {
    let n = r.rank();
    let e = e_decomposition(r, j, w, l);
    let target = pack(&e.neg_w0j);
    let zero: Vec<Packed> = e.zero().iter().map(|&b| pack(&r.root_weight(b))).collect();
    let (h1, h2) = zero.split_at((zero.len() / 2).min(MAX_TABLE_BITS));
    let deficits: Vec<i64> = (0..).map(|k| e.deficit() - l * k).take_while(|d| *d >= 0).collect();
    let pairs = deficits.iter().map(|&d| count_shifts(r, &e, d)).fold(0, u64::saturating_add);
    let work = (1u64 << h1.len()).saturating_add(pairs.saturating_mul(1u64.checked_shl(h2.len() as u32).unwrap_or(u64::MAX)));
    if h2.len() >= 64 || work > budget {
        return Err(Error::Budget(format!(
            "constrained search needs about {work} steps ({} shifts, |E[0]| = {}), budget {budget}",
            pairs,
            zero.len()
        )));
    }
    let residue = |v: &Packed| -> Packed {
        let mut k = [0; MAXR];
        for i in 0..n {
            k[i] = v[i].rem_euclid(l);
        }
        k
    };
    let mut table: HashMap<Packed, Vec<(Packed, u32)>> = HashMap::new();
    for (s, c) in subset_sums(h1) {
        table.entry(residue(&s)).or_default().push((s, c));
    }
    let second = subset_sums(h2);
    let all: Vec<Shift> = deficits.iter().flat_map(|&d| shifts(r, &e, d)).collect();
    let map = all
        .par_iter()
        .fold(HitMap::new, |mut map, shift| {
            for (s2, c2) in &second {
                let mut need = target;
                add(&mut need, &shift.base, -1);
                add(&mut need, s2, -1);
                if let Some(entries) = table.get(&residue(&need)) {
                    for (s1, c1) in entries {
                        let mut x = shift.base;
                        add(&mut x, s1, 1);
                        add(&mut x, s2, 1);
                        if is_hit(&x, &target, n, l, j) {
                            record(&mut map, &x, &target, n, l, shift.degree + (*c1 + *c2) as usize);
                        }
                    }
                }
            }
            map
        })
        .reduce(HitMap::new, merge);
    Ok(finish(map))
}

/// Bounds `lo <= <x, alpha^vee> <= hi` over all `x = lambda - a + b + z` at the
/// level `<x, delta^vee> = (l-1)|J|`, for each `alpha` in `Π \ J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XBound {
    /// 0-based simple index.
    pub alpha: usize,
    pub lo: i64,
    pub hi: i64,
    /// `<-w_{0,J}(w.0), alpha^vee>`.
    pub value: i64,
    /// The range of `<z, alpha^vee>` alone.
    pub z_lo: i64,
    pub z_hi: i64,
}

impl XBound {
    /// Values of `<nu, alpha^vee>` compatible with the bounds.
    pub fn allowed_nu(&self, l: i64) -> Vec<i64> {
        let first = (self.lo - self.value).div_euclid(l);
        (first..=(self.hi - self.value).div_euclid(l) + 1)
            .filter(|k| (self.lo..=self.hi).contains(&(self.value + l * k)))
            .collect()
    }
}

/// Extremes of `sign * <subset, alpha^vee>` over subsets of each `delta` total.
fn extreme_by_total(r: &RootSystem, roots: &[usize], vals: &[i64], alpha: usize, max: i64, sign: i64) -> Vec<Option<i64>> {
    let mut best: Vec<Option<i64>> = vec![None; max as usize + 1];
    best[0] = Some(0);
    for (&b, &v) in roots.iter().zip(vals) {
        let c = sign * r.root_weight(b)[alpha];
        for t in (v..=max).rev() {
            if let Some(prev) = best[(t - v) as usize] {
                let cand = prev + c;
                let slot = &mut best[t as usize];
                *slot = Some(slot.map_or(cand, |x| x.max(cand)));
            }
        }
    }
    best
}

pub fn x_bounds(r: &RootSystem, j: &[usize], w: &WeylElement, l: i64) -> Vec<XBound> {
    let e = e_decomposition(r, j, w, l);
    let d = e.deficit();
    let (pos, pos_vals, neg, neg_vals) = delta_values(r, &e);
    let zero: Vec<Weight> = e.zero().iter().map(|&b| r.root_weight(b)).collect();
    (0..r.rank())
        .filter(|i| !j.contains(i))
        .map(|i| {
            let z_lo: i64 = zero.iter().map(|z| z[i].min(0)).sum();
            let z_hi: i64 = zero.iter().map(|z| z[i].max(0)).sum();
            // Largest value of `sign * <-a + b, alpha_i^vee>` at deficit `d`.
            let extreme = |sign: i64| -> Option<i64> {
                if d < 0 {
                    return None;
                }
                let a = extreme_by_total(r, &pos, &pos_vals, i, d, -sign);
                let b = extreme_by_total(r, &neg, &neg_vals, i, d, sign);
                (0..=d as usize).filter_map(|da| Some(a[da]? + b[d as usize - da]?)).max()
            };
            let lam = e.lambda_max[i];
            let hi = extreme(1).map_or(lam, |x| lam + x) + z_hi;
            let lo = extreme(-1).map_or(lam, |x| lam - x) + z_lo;
            XBound { alpha: i, lo, hi, value: e.neg_w0j[i], z_lo, z_hi }
        })
        .collect()
}

/// The type-A element of the natural conjugation and its `J` (0-based).
pub fn type_a_w(r: &RootSystem, l: i64) -> Result<(WeylElement, Vec<usize>)> {
    if r.series() != Series::A {
        return Err(Error::UnsupportedType(format!("{} is not of type A", r.cartan_type())));
    }
    let c = natural_conjugation(r, l)?;
    Ok((c.w, c.j))
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    pub t: usize,
    pub length: usize,
    pub expected_length: usize,
    pub dot_ok: bool,
}

/// Checks of `w.0 = w sigma^t . 0 + l varpi_{t(m+1)}` and
/// `l(w sigma^t) = l(w) + (m+1) t (l-t)` for `0 <= t < l`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub n: usize,
    pub l: usize,
    pub length_w: usize,
    /// True when the identities hold with `sigma^{-1}` in place of `sigma`.
    pub inverse_sigma: bool,
    pub rows: Vec<SigmaRow>,
}

impl SigmaReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.dot_ok && r.length == r.expected_length)
    }
}

pub fn type_a_sigma_checks(r: &RootSystem, l: usize) -> Result<SigmaReport> {
    let n = r.rank();
    if r.series() != Series::A || !(n + 1).is_multiple_of(l) {
        return Err(Error::Domain(format!("sigma checks need type A_n with l | n+1 (n = {n}, l = {l})")));
    }
    let blocks = (n + 1) / l;
    let perm = type_a_permutation(n, l);
    let w = type_a_element(r, &perm)?;
    let wdot0 = r.act_dot(&w, &vec![0; n]);
    let length_w = w.length(r);
    let run = |inverse: bool| -> Result<Vec<SigmaRow>> {
        let step = |i: usize| -> usize {
            // `i` is 1-based; cycles (1..l)(l+1..2l)...
            let base = (i - 1) / l * l;
            let k = (i - 1) % l;
            base + if inverse { (k + l - 1) % l } else { (k + 1) % l } + 1
        };
        let mut rows = Vec::new();
        let mut sig: Vec<usize> = (1..=n + 1).collect();
        for t in 0..l {
            let composed: Vec<usize> = sig.iter().map(|&i| perm[i - 1]).collect();
            let ws = type_a_element(r, &composed)?;
            let mut rhs = r.act_dot(&ws, &vec![0; n]);
            if t > 0 {
                rhs[t * blocks - 1] += l as i64;
            }
            rows.push(SigmaRow {
                t,
                length: ws.length(r),
                expected_length: length_w + blocks * t * (l - t),
                dot_ok: rhs == wdot0,
            });
            sig = sig.iter().map(|&i| step(i)).collect();
        }
        Ok(rows)
    };
    let rows = run(false)?;
    let mut report = SigmaReport { n, l, length_w, inverse_sigma: false, rows };
    if !report.holds() {
        let alt = run(true)?;
        if alt.iter().all(|r| r.dot_ok && r.length == r.expected_length) {
            report.rows = alt;
            report.inverse_sigma = true;
        }
    }
    Ok(report)
}

/// All `nu` with `(n+1) nu` a sum of distinct positive roots of `A_n`.
pub fn l_equals_h_type_a(n: usize) -> Result<Vec<Weight>> {
    if !(1..=5).contains(&n) {
        return Err(Error::Budget(format!("enumeration is limited to 1 <= n <= 5, got {n}")));
    }
    let r = RootSystem::build(Series::A, n)?;
    let l = (n + 1) as i64;
    let vecs: Vec<Packed> = r.positive_roots().map(|b| pack(&r.root_weight(b))).collect();
    let mut out: Vec<Weight> = subset_sums(&vecs)
        .into_iter()
        .filter(|(s, _)| s[..n].iter().all(|x| x % l == 0))
        .map(|(s, _)| s[..n].iter().map(|x| x / l).collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Sum of the positive roots whose expansion involves `alpha_i` (0-based).
pub fn roots_containing_sum(r: &RootSystem, i: usize) -> Weight {
    let mut s = vec![0; r.rank()];
    for b in r.positive_roots().filter(|&b| r.root(b)[i] != 0) {
        s.iter_mut().zip(r.root_weight(b)).for_each(|(x, y)| *x += y);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripleRoot {
    Clean,
    /// `l sigma = gamma_1 + gamma_2 + gamma_3`, root indices.
    Witness { sigma: usize, gammas: [usize; 3] },
}

/// Searches `Phi^+ \ Phi_J^+` for `l sigma = gamma_1 + gamma_2 + gamma_3`
/// with distinct `gamma_i`.
pub fn triple_root_check(r: &RootSystem, j: &[usize], l: i64) -> TripleRoot {
    let free = free_roots(r, j);
    let index: HashMap<&[i64], usize> = free.iter().map(|&b| (r.root(b), b)).collect();
    let n = r.rank();
    for &s in &free {
        let target: Vec<i64> = r.root(s).iter().map(|x| l * x).collect();
        for (p, &g1) in free.iter().enumerate() {
            for &g2 in &free[p + 1..] {
                let rest: Vec<i64> = (0..n).map(|k| target[k] - r.root(g1)[k] - r.root(g2)[k]).collect();
                if let Some(&g3) = index.get(rest.as_slice()) {
                    if g3 > g2 {
                        return TripleRoot::Witness { sigma: s, gammas: [g1, g2, g3] };
                    }
                }
            }
        }
    }
    TripleRoot::Clean
}

/// The functional `delta_X` for a classical series together with the checks
/// that make it work: its maximum over the weights of `Λ` equals its value on
/// `-w_{0,J}(w.0)`, and it is positive on the fundamental weights of `J`.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaX {
    pub series: Series,
    pub n: usize,
    pub l: i64,
    /// 0-based simple indices.
    pub j: Vec<usize>,
    /// `delta_X` in the epsilon basis.
    pub eps: Vec<i64>,
    /// `2 <varpi_i, delta_X>`.
    pub doubled_on_fundamental: Vec<i64>,
    /// Block data `(m, r1, r2, q)`; `q` is the rank of the tail.
    pub blocks: (usize, usize, usize, usize),
    /// Maximum of `<lambda, delta_X>` summed root by root.
    pub max_direct: i64,
    /// `2|X[2]| + |X[1]|`, when no root pairs above 2.
    pub max_counted: Option<i64>,
    /// Maximum by enumerating subsets, when at most 16 roots are free.
    pub max_brute: Option<i64>,
    pub max_closed_form: i64,
    pub target: i64,
    pub target_closed_form: i64,
    pub positive_on_j: bool,
}

impl DeltaX {
    pub fn holds(&self) -> bool {
        self.max_direct == self.target
            && self.max_closed_form == self.max_direct
            && self.target_closed_form == self.target
            && self.max_counted.is_none_or(|m| m == self.max_direct)
            && self.max_brute.is_none_or(|m| m == self.max_direct)
            && self.positive_on_j
    }
}

fn eps_simple(series: Series, n: usize, i: usize) -> Vec<i64> {
    let dim = if series == Series::A { n + 1 } else { n };
    let mut v = vec![0; dim];
    if series == Series::A || i + 1 < n {
        v[i] = 1;
        v[i + 1] = -1;
        return v;
    }
    match series {
        Series::B => v[n - 1] = 1,
        Series::C => v[n - 1] = 2,
        _ => {
            v[n - 2] = 1;
            v[n - 1] = 1;
        }
    }
    v
}

fn eps_fundamental_doubled(series: Series, n: usize, i: usize) -> Vec<i64> {
    let dim = if series == Series::A { n + 1 } else { n };
    let mut v = vec![0; dim];
    match (series, n - 1 - i) {
        (Series::B, 0) | (Series::D, 0) => v.iter_mut().for_each(|x| *x = 1),
        (Series::D, 1) => {
            v.iter_mut().for_each(|x| *x = 1);
            v[n - 1] = -1;
        }
        _ => v[..=i].iter_mut().for_each(|x| *x = 2),
    }
    v
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let root = find(p, p[x]);
        p[x] = root;
    }
    p[x]
}

/// Builds `delta_X` from the natural conjugation for `(series, n, l)`.
pub fn delta_x(series: Series, n: usize, l: i64) -> Result<DeltaX> {
    if !matches!(series, Series::A | Series::B | Series::C | Series::D) {
        return Err(Error::UnsupportedType(format!("delta_X is defined for classical series, got {series:?}")));
    }
    let r = RootSystem::build(series, n)?;
    if l >= r.coxeter_number() {
        return Err(Error::Domain(format!("delta_X needs l < h = {}", r.coxeter_number())));
    }
    let c = natural_conjugation(&r, l)?;
    let j = c.j.clone();
    let dim = if series == Series::A { n + 1 } else { n };
    let mut parent: Vec<usize> = (0..dim).collect();
    for &i in &j {
        let support: Vec<usize> = eps_simple(series, n, i).iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, _)| k).collect();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let tail_class = match series {
        Series::A => None,
        Series::B | Series::C => j.contains(&(n - 1)).then(|| find(&mut parent, n - 1)),
        _ => Some(find(&mut parent, n - 1)),
    };
    let d_tail_rooted = series == Series::D && j.contains(&(n - 1)) && j.contains(&(n - 2));
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..dim {
        let root = find(&mut parent, k);
        classes.entry(root).or_default().push(k);
    }
    if series == Series::D && !d_tail_rooted && classes[&tail_class.unwrap()].len() > 1 {
        return Err(Error::Domain("unexpected layout of J in type D".into()));
    }
    let mut eps = vec![0i64; dim];
    for &i in &j {
        let in_tail = tail_class.is_some_and(|t| {
            let s = eps_simple(series, n, i);
            let k = s.iter().position(|x| *x != 0).unwrap();
            find(&mut parent, k) == t
        });
        if !in_tail {
            eps.iter_mut().zip(eps_simple(series, n, i)).for_each(|(x, y)| *x += y);
        }
    }
    let mut q = 0;
    if let Some(t) = tail_class {
        let members = &classes[&t];
        q = members.len();
        if q >= 2 || series != Series::D {
            eps[members[0]] += 1;
        }
    }
    let sizes: Vec<usize> = classes.iter().filter(|(k, _)| Some(**k) != tail_class).map(|(_, v)| v.len()).collect();
    let top = sizes.iter().copied().max().unwrap_or(1);
    let m = top - 1;
    let r1 = sizes.iter().filter(|&&s| s == top).count();
    let r2 = sizes.iter().filter(|&&s| s + 1 == top).count();
    if r1 + r2 != sizes.len() {
        return Err(Error::Domain(format!("block sizes {sizes:?} are not two consecutive values")));
    }

    let doubled_on_fundamental: Vec<i64> =
        (0..n).map(|i| eps_fundamental_doubled(series, n, i).iter().zip(&eps).map(|(a, b)| a * b).sum()).collect();
    let pair_doubled = |weight: &[i64]| -> i64 { weight.iter().zip(&doubled_on_fundamental).map(|(a, b)| a * b).sum() };
    let halve = |x: i64| -> Result<i64> {
        if x % 2 != 0 {
            return Err(Error::Domain(format!("half-integral pairing {x}/2")));
        }
        Ok(x / 2)
    };
    let free = free_roots(&r, &j);
    let mut values = Vec::with_capacity(free.len());
    for &b in &free {
        values.push(halve(pair_doubled(&r.root_weight(b)))?);
    }
    let max_direct: i64 = values.iter().filter(|v| **v > 0).sum();
    let max_counted = values.iter().all(|v| *v <= 2).then(|| {
        let count = |t: i64| values.iter().filter(|v| **v == t).count() as i64;
        2 * count(2) + count(1)
    });
    let max_brute = (free.len() <= 16).then(|| {
        (0u32..1 << free.len())
            .map(|s| (0..free.len()).filter(|k| s >> k & 1 == 1).map(|k| values[k]).sum::<i64>())
            .max()
            .unwrap_or(0)
    });
    let target = halve(pair_doubled(&neg_w0j_wdot0(&r, &c.w, &j)))?;

    let (m_, r1_, r2_, q_, l_) = (m as i64, r1 as i64, r2 as i64, q as i64, l);
    let core = r1_ * m_ + r2_ * (m_ - 1);
    let blocks = r1_ + r2_;
    let (max_closed_form, target_closed_form) = match series {
        Series::A => ((blocks - 1) * core, (l_ - 1) * j.len() as i64),
        Series::B => (2 * blocks * core + (2 * q_ - 1) * blocks, halve(2 * (l_ - 1) * core + (l_ - 1) * (2 * q_ - 1))?),
        Series::C => (2 * blocks * core + 2 * q_ * blocks, (l_ - 1) * core + (l_ - 1) * q_),
        _ => (2 * blocks * core + 2 * (q_ - 1) * blocks, (l_ - 1) * core + (l_ - 1) * (q_ - 1)),
    };
    let positive_on_j = j.iter().all(|&i| doubled_on_fundamental[i] > 0);
    Ok(DeltaX {
        series,
        n,
        l,
        j,
        eps,
        doubled_on_fundamental,
        blocks: (m, r1, r2, q),
        max_direct,
        max_counted,
        max_brute,
        max_closed_form,
        target,
        target_closed_form,
        positive_on_j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsystems::standard_conjugation;

    fn setup(s: Series, n: usize, l: i64) -> (RootSystem, WeylElement, Vec<usize>) {
        let r = RootSystem::build(s, n).unwrap();
        let c = standard_conjugation(&r, l).unwrap();
        (r, c.w, c.j)
    }

    #[test]
    fn steinberg_checks() {
        let (r, w, j) = setup(Series::G, 2, 5);
        assert_eq!(r.act_dot(&w, &[0, 0]), vec![4, -3]);
        assert!(j_steinberg_check(&r, &w, &j, 5));
        let (r, w, j) = setup(Series::F, 4, 11);
        assert_eq!(r.act_dot(&w, &[0; 4]), vec![0, -6, 10, -6]);
        assert!(j_steinberg_check(&r, &w, &j, 11));
        assert!(j_steinberg_check(&r, &r.identity(), &[], 7));
    }

    #[test]
    fn g2_decomposition() {
        let (r, w, j) = setup(Series::G, 2, 5);
        let e = e_decomposition(&r, &j, &w, 5);
        let z = e.zero();
        assert_eq!(z.len(), 1);
        assert_eq!(r.root(z[0]), &[3, 2]);
        assert_eq!(r.root_weight(z[0]), vec![0, 1]);
        assert_eq!(e.target, 4);
    }

    #[test]
    fn small_brute_force() {
        let (r, w, j) = setup(Series::G, 2, 5);
        let hits = brute_force_steinberg(&r, &j, &w, 5, MAX_BRUTE_ROOTS).unwrap();
        assert_eq!(hits, vec![SteinbergHit { nu: vec![0, 0], degree: 2, multiplicity: 1 }]);
        let a2 = RootSystem::build(Series::A, 2).unwrap();
        let hits = brute_force_steinberg(&a2, &[], &a2.identity(), 3, MAX_BRUTE_ROOTS).unwrap();
        let got: Vec<(Weight, usize)> = hits.into_iter().map(|h| (h.nu, h.degree)).collect();
        assert_eq!(got, vec![(vec![0, 0], 0), (vec![0, 1], 2), (vec![1, 0], 2)]);
        assert!(brute_force_steinberg(&a2, &[], &a2.identity(), 3, 2).is_err());
    }

    #[test]
    fn constrained_matches_brute_force_g2_f4() {
        for (s, n, l) in [(Series::G, 2, 5), (Series::F, 4, 9), (Series::F, 4, 11)] {
            let (r, w, j) = setup(s, n, l);
            let a = brute_force_steinberg(&r, &j, &w, l, MAX_BRUTE_ROOTS).unwrap();
            let b = constrained_search(&r, &j, &w, l, DEFAULT_SEARCH_BUDGET).unwrap();
            assert_eq!(a, b, "{s:?}{n} l={l}");
        }
    }

    #[test]
    fn triple_root_b2() {
        let b2 = RootSystem::build(Series::B, 2).unwrap();
        match triple_root_check(&b2, &[], 3) {
            TripleRoot::Witness { sigma, gammas } => {
                let sum: Vec<i64> = (0..2).map(|k| gammas.iter().map(|&g| b2.root(g)[k]).sum()).collect();
                assert_eq!(sum, b2.root(sigma).iter().map(|x| 3 * x).collect::<Vec<_>>());
            }
            TripleRoot::Clean => panic!("expected a witness"),
        }
        assert_eq!(triple_root_check(&b2, &[], 5), TripleRoot::Clean);
    }

    #[test]
    fn l_equals_h() {
        assert_eq!(l_equals_h_type_a(2).unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        let r = RootSystem::build(Series::A, 4).unwrap();
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 5;
            assert_eq!(roots_containing_sum(&r, i), e);
        }
    }

    #[test]
    fn sigma_checks() {
        for (n, l) in [(2, 3), (5, 3), (4, 5), (8, 3)] {
            let r = RootSystem::build(Series::A, n).unwrap();
            let rep = type_a_sigma_checks(&r, l).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
        let r = RootSystem::build(Series::A, 2).unwrap();
        assert_eq!(type_a_w(&r, 3).unwrap().0.length(&r), 0);
    }

    #[test]
    fn delta_x_small() {
        for (s, n, l) in [(Series::A, 4, 3), (Series::B, 4, 5), (Series::C, 4, 5), (Series::D, 5, 5)] {
            let d = delta_x(s, n, l).unwrap();
            assert!(d.holds(), "{d:?}");
        }
    }
}
