//! The subsystems `Phi_{lambda,l}`, their simple systems and Cartan types, and
//! conjugation of a subsystem onto a standard parabolic `Phi_J`.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{cartan_matrix, CartanType, RootSystem, Series, Weight, WeylElement, Word};

/// Sorted list of root indices.
pub type RootSet = Vec<usize>;

pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A subset of the roots of a system with at most 256 roots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMask([u64; 4]);

impl RootMask {
    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut m = RootMask::default();
        for i in idx {
            m.insert(i);
        }
        m
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection_count(&self, other: &RootMask) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn to_set(&self) -> RootSet {
        self.iter().collect()
    }

    /// Image under a permutation of root indices.
    pub fn map(&self, perm: &[u32]) -> RootMask {
        RootMask::from_indices(self.iter().map(|i| perm[i] as usize))
    }
}

/// `{alpha : <lambda + rho, alpha^vee> = 0 mod l}`.
pub fn phi_lambda(r: &RootSystem, lambda: &[i64], l: i64) -> RootSet {
    let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
    (0..r.num_roots()).filter(|&b| r.pair(&shifted, b).rem_euclid(l) == 0).collect()
}

pub fn phi0(r: &RootSystem, l: i64) -> RootSet {
    phi_lambda(r, &vec![0; r.rank()], l)
}

/// Closed under addition within `Phi`.
pub fn is_closed(r: &RootSystem, s: &[usize]) -> bool {
    let mask = RootMask::from_indices(s.iter().copied());
    for &a in s {
        for &b in s {
            let sum: Vec<i64> = r.root(a).iter().zip(r.root(b)).map(|(x, y)| x + y).collect();
            if let Some(c) = r.index_of(&sum) {
                if !mask.contains(c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Echelon rows of the span of `vectors`, fraction-free.
fn echelon(vectors: impl IntoIterator<Item = Vec<i64>>) -> Vec<(usize, Vec<i128>)> {
    let mut rows: Vec<(usize, Vec<i128>)> = Vec::new();
    for v in vectors {
        if let Some(row) = reduce(&rows, v.into_iter().map(i128::from).collect()) {
            rows.push(row);
        }
    }
    rows
}

/// Reduces `v` against the echelon rows; the pivot and remainder if nonzero.
fn reduce(rows: &[(usize, Vec<i128>)], mut v: Vec<i128>) -> Option<(usize, Vec<i128>)> {
    for (p, row) in rows {
        if v[*p] != 0 {
            let (a, b) = (row[*p], v[*p]);
            v.iter_mut().zip(row).for_each(|(x, y)| *x = a * *x - b * y);
            let g = v.iter().fold(0i128, |g, &x| num_integer::Integer::gcd(&g, &x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
    }
    v.iter().position(|&x| x != 0).map(|p| (p, v))
}

/// True iff `s = Phi ∩ span(s)`, the condition for a root subsystem to be
/// `W`-conjugate to some standard `Phi_J`.
pub fn is_parabolic_by_span(r: &RootSystem, s: &[usize]) -> bool {
    let mask = RootMask::from_indices(s.iter().copied());
    let rows = echelon(s.iter().map(|&b| r.root(b).to_vec()));
    r.positive_roots()
        .filter(|&g| !mask.contains(g))
        .all(|g| reduce(&rows, r.root(g).iter().map(|&x| i128::from(x)).collect()).is_some())
}

fn reflect_root(r: &RootSystem, beta: usize, gamma: usize) -> usize {
    let c = r.pair(&r.root_weight(gamma), beta);
    let v: Vec<i64> = r.root(gamma).iter().zip(r.root(beta)).map(|(g, b)| g - c * b).collect();
    r.index_of(&v).expect("reflection of a root is a root")
}

/// Symmetric and stable under its own reflections, i.e. a root subsystem.
pub fn is_root_subsystem(r: &RootSystem, s: &[usize]) -> bool {
    let mask = RootMask::from_indices(s.iter().copied());
    s.iter().all(|&b| mask.contains(r.neg(b)))
        && s.iter().all(|&b| s.iter().all(|&g| mask.contains(reflect_root(r, b, g))))
}

/// A simple system of a root subsystem together with its Cartan data.
#[derive(Clone, Debug, Serialize)]
pub struct SubsystemBasis {
    pub roots: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_type: CartanType,
}

/// Induced Cartan matrix `a_ij = <beta_j, beta_i^vee>`.
pub fn induced_cartan(r: &RootSystem, basis: &[usize]) -> Vec<Vec<i64>> {
    let weights: Vec<Weight> = basis.iter().map(|&b| r.root_weight(b)).collect();
    basis.iter().map(|&bi| weights.iter().map(|wj| r.pair(wj, bi)).collect()).collect()
}

pub fn basis_from_roots(r: &RootSystem, roots: Vec<usize>) -> Result<SubsystemBasis> {
    let cartan = induced_cartan(r, &roots);
    let cartan_type = classify_cartan(&cartan)?;
    Ok(SubsystemBasis { roots, cartan, cartan_type })
}

/// Indecomposable elements of `S ∩ Phi^+`.
pub fn simple_system(r: &RootSystem, s: &[usize]) -> Result<SubsystemBasis> {
    if !is_root_subsystem(r, s) {
        return Err(Error::Domain("root set is not a root subsystem".into()));
    }
    let pos: Vec<usize> = s.iter().copied().filter(|&b| r.is_positive(b)).collect();
    let mask = RootMask::from_indices(pos.iter().copied());
    let basis: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&b| {
            !pos.iter().any(|&g| {
                let diff: Vec<i64> = r.root(b).iter().zip(r.root(g)).map(|(x, y)| x - y).collect();
                r.index_of(&diff).is_some_and(|c| mask.contains(c))
            })
        })
        .collect();
    basis_from_roots(r, basis)
}

pub fn cartan_type_of(r: &RootSystem, s: &[usize]) -> Result<CartanType> {
    Ok(simple_system(r, s)?.cartan_type)
}

fn standard_candidates(k: usize) -> Vec<(Series, usize)> {
    let mut v = vec![(Series::A, k)];
    if k >= 2 {
        v.push((Series::B, k));
    }
    if k >= 3 {
        v.push((Series::C, k));
    }
    if k >= 4 {
        v.push((Series::D, k));
    }
    if (6..=8).contains(&k) {
        v.push((Series::E, k));
    }
    if k == 4 {
        v.push((Series::F, 4));
    }
    if k == 2 {
        v.push((Series::G, 2));
    }
    v
}

fn isomorphic(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    fn extend(a: &[Vec<i64>], b: &[Vec<i64>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let u = map.len();
        if u == a.len() {
            return true;
        }
        for v in 0..b.len() {
            if used[v] || a[u][u] != b[v][v] {
                continue;
            }
            if map.iter().enumerate().all(|(x, &y)| a[u][x] == b[v][y] && a[x][u] == b[y][v]) {
                used[v] = true;
                map.push(v);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Identifies the Cartan type of a (generalized) Cartan matrix of finite type.
pub fn classify_cartan(c: &[Vec<i64>]) -> Result<CartanType> {
    let k = c.len();
    let mut comp = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut q = 0;
        while q < members.len() {
            let u = members[q];
            for v in 0..k {
                if comp[v] == usize::MAX && (c[u][v] != 0 || c[v][u] != 0) {
                    comp[v] = id;
                    members.push(v);
                }
            }
            q += 1;
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut out = Vec::new();
    for members in comps {
        let sub: Vec<Vec<i64>> = members.iter().map(|&i| members.iter().map(|&j| c[i][j]).collect()).collect();
        let n = members.len();
        let found = standard_candidates(n)
            .into_iter()
            .find(|&(s, rk)| isomorphic(&sub, &cartan_matrix(s, rk)))
            .ok_or_else(|| Error::Domain("Cartan matrix is not of finite type".into()))?;
        out.push(found);
    }
    Ok(CartanType::new(out))
}

/// Outcome of a conjugation search.
#[derive(Clone, Debug)]
pub enum ConjugationResult {
    Found(Conjugation),
    NotConjugate { orbit_size: usize },
    Exhausted { explored: usize },
}

#[derive(Clone, Debug)]
pub struct Conjugation {
    pub w: WeylElement,
    /// Reduced word of `w` (1-based letters, leftmost letter applied last).
    pub word: Word,
    /// 0-based simple indices of `J`.
    pub j: Vec<usize>,
    /// True when `word` is the lexicographically least reduced word among
    /// all minimal-length solutions; false for the best-first fallback.
    pub canonical: bool,
}

impl ConjugationResult {
    pub fn found(&self) -> Option<&Conjugation> {
        match self {
            ConjugationResult::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// True iff `w(S ∩ Phi^+) = Phi_J^+`.
pub fn verify_conjugation(r: &RootSystem, w: &WeylElement, s: &[usize], j: &[usize]) -> bool {
    let mut image: Vec<usize> = s.iter().filter(|&&b| r.is_positive(b)).map(|&b| w.apply(b)).collect();
    image.sort_unstable();
    image == r.parabolic_positive(j)
}

/// Simple indices `J` when `mask` is exactly a standard parabolic `Phi_J`.
fn standard_parabolic(r: &RootSystem, mask: &RootMask, sizes: &mut HashMap<u32, usize>) -> Option<Vec<usize>> {
    let j: Vec<usize> = (0..r.rank()).filter(|&i| mask.contains(i)).collect();
    let key: u32 = j.iter().map(|&i| 1u32 << i).sum();
    let size = *sizes.entry(key).or_insert_with(|| 2 * r.parabolic_positive(&j).len());
    (size == mask.count()).then_some(j)
}

/// Searches for `w` and `J ⊆ Π` with `w(S^+) = Phi_J^+`.
///
/// Breadth-first search over the `W`-orbit of `S`; among all elements of
/// minimal length the lexicographically least reduced word is returned. If the
/// orbit exceeds `budget`, a best-first search on root heights is tried and any
/// hit is reported as non-canonical.
pub fn conjugate_to_parabolic(r: &RootSystem, s: &[usize], budget: usize) -> Result<ConjugationResult> {
    conjugate_where(r, s, budget, None)
}

/// As [`conjugate_to_parabolic`] but only accepts the given `J`.
pub fn conjugate_to_given(r: &RootSystem, s: &[usize], j: &[usize], budget: usize) -> Result<ConjugationResult> {
    conjugate_where(r, s, budget, Some(j))
}

fn conjugate_where(r: &RootSystem, s: &[usize], budget: usize, target: Option<&[usize]>) -> Result<ConjugationResult> {
    if budget == 0 {
        return Err(Error::Domain("budget must be positive".into()));
    }
    if !is_root_subsystem(r, s) {
        return Err(Error::Domain("root set is not a root subsystem".into()));
    }
    let target_mask = target.map(|j| RootMask::from_indices(r.parabolic_roots(j)));
    let mut sizes = HashMap::new();
    let mut is_success = |m: &RootMask| -> Option<Vec<usize>> {
        match &target_mask {
            Some(t) => (m == t).then(|| target.unwrap().to_vec()),
            None => standard_parabolic(r, m, &mut sizes),
        }
    };

    let start = RootMask::from_indices(s.iter().copied());
    let mut level: HashMap<RootMask, u32> = HashMap::new();
    level.insert(start, 0);
    let mut frontier = vec![start];
    let mut depth = 0u32;
    loop {
        let hits: Vec<RootMask> = frontier.iter().copied().filter(|m| is_success(m).is_some()).collect();
        if !hits.is_empty() {
            return Ok(ConjugationResult::Found(extract_canonical(r, s, &level, hits, depth)));
        }
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..r.rank() {
                let img = m.map(r.simple_perm(i));
                if let std::collections::hash_map::Entry::Vacant(e) = level.entry(img) {
                    e.insert(depth + 1);
                    next.push(img);
                }
            }
        }
        if next.is_empty() {
            return Ok(ConjugationResult::NotConjugate { orbit_size: level.len() });
        }
        if level.len() > budget {
            drop(level);
            return best_first(r, s, budget, &mut is_success);
        }
        next.sort_unstable();
        frontier = next;
        depth += 1;
    }
}

fn extract_canonical(
    r: &RootSystem,
    s: &[usize],
    level: &HashMap<RootMask, u32>,
    hits: Vec<RootMask>,
    depth: u32,
) -> Conjugation {
    let mut current: HashSet<RootMask> = hits.into_iter().collect();
    let mut word = Vec::new();
    for t in 0..depth {
        let want = depth - t - 1;
        for i in 0..r.rank() {
            let next: HashSet<RootMask> = current
                .iter()
                .map(|m| m.map(r.simple_perm(i)))
                .filter(|m| level.get(m) == Some(&want))
                .collect();
            if !next.is_empty() {
                word.push(i + 1);
                current = next;
                break;
            }
        }
    }
    let w = r.word_to_element(&word).expect("valid letters");
    let mut j: Vec<usize> = simple_system(r, s).expect("checked above").roots.iter().map(|&b| w.apply(b)).collect();
    j.sort_unstable();
    Conjugation { w, word, j, canonical: true }
}

fn best_first(
    r: &RootSystem,
    s: &[usize],
    budget: usize,
    is_success: &mut dyn FnMut(&RootMask) -> Option<Vec<usize>>,
) -> Result<ConjugationResult> {
    let score = |m: &RootMask| -> i64 {
        m.iter()
            .map(|b| {
                let h = r.height(b);
                if h > 0 {
                    h - 1
                } else {
                    2 * h.abs() + 1
                }
            })
            .sum()
    };
    let start = RootMask::from_indices(s.iter().copied());
    let mut parent: HashMap<RootMask, Option<(RootMask, usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((score(&start), start)));
    while let Some(Reverse((_, m))) = heap.pop() {
        if is_success(&m).is_some() {
            let mut letters = Vec::new();
            let mut cur = m;
            while let Some(Some((p, i))) = parent.get(&cur) {
                letters.push(*i + 1);
                cur = *p;
            }
            // letters = [i_k, ..., i_1]; w = s_{i_k} ... s_{i_1}.
            let w = fix_positivity(r, s, r.word_to_element(&letters)?);
            let word = w.reduced_word(r);
            let mut j: Vec<usize> = simple_system(r, s)?.roots.iter().map(|&b| w.apply(b)).collect();
            j.sort_unstable();
            return Ok(ConjugationResult::Found(Conjugation { w, word, j, canonical: false }));
        }
        if parent.len() > budget {
            return Ok(ConjugationResult::Exhausted { explored: parent.len() });
        }
        for i in 0..r.rank() {
            let img = m.map(r.simple_perm(i));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(img) {
                e.insert(Some((m, i)));
                heap.push(Reverse((score(&img), img)));
            }
        }
    }
    Ok(ConjugationResult::NotConjugate { orbit_size: parent.len() })
}

/// Given `w` with `w(S) = Phi_J` as sets, returns `u w` with `u ∈ W_J` such
/// that positive roots of `S` go to positive roots.
fn fix_positivity(r: &RootSystem, s: &[usize], w: WeylElement) -> WeylElement {
    let pos: Vec<usize> = s.iter().copied().filter(|&b| r.is_positive(b)).collect();
    let mut w = w;
    loop {
        let img_simple: Vec<usize> = (0..r.rank())
            .filter(|&i| pos.iter().any(|&b| w.apply(b) == r.neg(i)))
            .collect();
        match img_simple.first() {
            Some(&i) => w = w.mul_simple_left(r, i),
            None => return w,
        }
    }
}

/// Checks `w(Phi_lambda) = Phi_{w . lambda}`.
pub fn action_invariance_check(r: &RootSystem, w: &WeylElement, lambda: &[i64], l: i64) -> bool {
    let mut lhs: Vec<usize> = phi_lambda(r, lambda, l).iter().map(|&b| w.apply(b)).collect();
    lhs.sort_unstable();
    lhs == phi_lambda(r, &r.act_dot(w, lambda), l)
}

/// Predicted type of `Phi_0` and `dim N(Phi_0)` for the classical series.
pub fn classical_phi0_prediction(series: Series, n: usize, l: i64) -> Result<(CartanType, usize)> {
    if l <= 1 || l % 2 == 0 {
        return Err(Error::Domain(format!("l = {l} must be odd and greater than 1")));
    }
    let ni = n as i64;
    let (h, nroots) = match series {
        Series::A => (ni + 1, ni * (ni + 1)),
        Series::B | Series::C => (2 * ni, 2 * ni * ni),
        Series::D => (2 * ni - 2, 2 * ni * (ni - 1)),
        _ => return Err(Error::UnsupportedType(format!("{}{n} is not classical", series.letter()))),
    };
    if l >= h {
        return Ok((CartanType::empty(), nroots as usize));
    }
    let base = match series {
        Series::A | Series::B => h - 1,
        _ => h + 1,
    };
    let (m, s) = (base / l, base % l);
    let a = |k: i64, times: i64| std::iter::repeat_n((Series::A, k as usize), times.max(0) as usize);
    let (comps, dim): (Vec<(Series, usize)>, i64) = match series {
        Series::A => (
            a(m, s + 1).chain(a(m - 1, l - s - 1)).collect(),
            ni * (ni + 1) - m * (l * m + 2 * s - l + 2),
        ),
        Series::B if s % 2 == 0 => (
            a(m, s / 2).chain(a(m - 1, (l - s - 1) / 2)).chain([(Series::B, ((m + 1) / 2) as usize)]).collect(),
            2 * ni * ni - (m * (l * m + 2 * s - l + 3) + 1) / 2,
        ),
        Series::B => (
            a(m, (s + 1) / 2).chain(a(m - 1, (l - s - 2) / 2)).chain([(Series::B, (m / 2) as usize)]).collect(),
            2 * ni * ni - m * (l * m + 2 * s - l + 3) / 2,
        ),
        Series::C if s % 2 == 0 => (
            a(m, s / 2).chain(a(m - 1, (l - s - 1) / 2)).chain([(Series::C, ((m - 1) / 2) as usize)]).collect(),
            2 * ni * ni - (m * (l * m + 2 * s - l - 1) + 1) / 2,
        ),
        Series::C => (
            a(m, (s - 1) / 2).chain(a(m - 1, (l - s) / 2)).chain([(Series::C, (m / 2) as usize)]).collect(),
            2 * ni * ni - m * (l * m + 2 * s - l - 1) / 2,
        ),
        Series::D if s % 2 == 0 => {
            let comps = if m == 1 {
                a(1, s / 2).collect()
            } else {
                a(m, s / 2).chain(a(m - 1, (l - s - 1) / 2)).chain([(Series::D, ((m + 1) / 2) as usize)]).collect()
            };
            (comps, 2 * ni * ni - 2 * ni - (m * (l * m + 2 * s - l + 1) - 1) / 2)
        }
        Series::D => (
            a(m, (s - 1) / 2).chain(a(m - 1, (l - s) / 2)).chain([(Series::D, ((m + 2) / 2) as usize)]).collect(),
            2 * ni * ni - 2 * ni - m * (l * m + 2 * s - l + 1) / 2,
        ),
        _ => unreachable!(),
    };
    Ok((CartanType::new(comps), dim as usize))
}

/// Converts an epsilon-basis vector (doubled for `B`) to fundamental-weight
/// coordinates.
fn eps_to_weight(series: Series, n: usize, x: &[i64]) -> Weight {
    let mut v: Weight = (0..n - 1).map(|i| x[i] - x[i + 1]).collect();
    match series {
        Series::A => v.push(x[n - 1] - x[n]),
        Series::B => {
            // x holds doubled coordinates
            let mut w: Weight = v.iter().map(|t| t / 2).collect();
            w.push(x[n - 1]);
            return w;
        }
        Series::C => v.push(x[n - 1]),
        Series::D => v.push(x[n - 2] + x[n - 1]),
        _ => unreachable!(),
    }
    v
}

/// Word `w` with `v = w rho` for a regular `v` in the `W`-orbit of `rho`.
fn word_to_rho(r: &RootSystem, v: &[i64]) -> Result<Word> {
    let mut v = v.to_vec();
    let mut letters = Vec::new();
    while let Some(i) = (0..r.rank()).find(|&i| v[i] < 0) {
        r.reflect_weight(i, &mut v);
        letters.push(i + 1);
    }
    if v != r.rho() {
        return Err(Error::Domain("vector is not in the W-orbit of rho".into()));
    }
    Ok(letters)
}

/// The type-A element defined by `w(i) = t_i(m+1) + s_i + 1` (for `t_i <= s`)
/// or `t_i m + s_i + s + 2`, where `i - 1 = s_i l + t_i` and `n = lm + s`.
pub fn type_a_permutation(n: usize, l: usize) -> Vec<usize> {
    let (m, s) = (n / l, n % l);
    (1..=n + 1)
        .map(|i| {
            let (si, ti) = ((i - 1) / l, (i - 1) % l);
            if ti <= s {
                ti * (m + 1) + si + 1
            } else {
                ti * m + si + s + 2
            }
        })
        .collect()
}

/// The Weyl element of `A_n` acting on `epsilon_i` by a permutation (1-based).
pub fn type_a_element(r: &RootSystem, perm: &[usize]) -> Result<WeylElement> {
    let n = r.rank();
    let rho_eps: Vec<i64> = (0..=n as i64).rev().collect();
    let mut v = vec![0i64; n + 1];
    for (i, &p) in perm.iter().enumerate() {
        v[p - 1] = rho_eps[i];
    }
    let word = word_to_rho(r, &eps_to_weight(Series::A, n, &v))?;
    r.word_to_element(&word)
}

/// Explicit `(w, J)` with `w(Phi_0^+) = Phi_J^+` for the classical series,
/// built by arranging `w rho` in the epsilon basis so that each congruence
/// class of coordinates forms a consecutive descending run with step `l`.
pub fn natural_conjugation(r: &RootSystem, l: i64) -> Result<Conjugation> {
    let n = r.rank();
    let series = r.series();
    if r.is_dual() {
        return Err(Error::Domain("natural conjugation needs the standard labelling".into()));
    }
    let v: Vec<i64> = match series {
        Series::A => {
            let perm = type_a_permutation(n, l as usize);
            let w = type_a_element(r, &perm)?;
            return finish_conjugation(r, w, l);
        }
        Series::B | Series::C | Series::D => {
            // Values of rho in the epsilon basis (doubled for B).
            let (vals, modulus): (Vec<i64>, i64) = match series {
                Series::B => ((0..n as i64).map(|i| 2 * i + 1).collect(), l),
                Series::C => ((1..=n as i64).collect(), l),
                _ => ((0..n as i64).collect(), l),
            };
            let step = if series == Series::B { 2 * l } else { l };
            let mut blocks: Vec<Vec<i64>> = Vec::new();
            let mut tail: Vec<i64> = Vec::new();
            let mut classes: Vec<i64> = Vec::new();
            for &x in &vals {
                let res = x.rem_euclid(modulus);
                if res == 0 {
                    tail.push(x);
                    continue;
                }
                let key = res.min(modulus - res);
                if !classes.contains(&key) {
                    classes.push(key);
                }
            }
            for key in classes {
                let mut block: Vec<i64> = vals
                    .iter()
                    .filter_map(|&x| {
                        let res = x.rem_euclid(modulus);
                        if res == key {
                            Some(x)
                        } else if res == modulus - key {
                            Some(-x)
                        } else {
                            None
                        }
                    })
                    .collect();
                block.sort_unstable_by(|a, b| b.cmp(a));
                debug_assert!(block.windows(2).all(|p| p[0] - p[1] == step));
                blocks.push(block);
            }
            blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(b[0].cmp(&a[0])));
            tail.sort_unstable_by(|a, b| b.cmp(a));
            let mut v: Vec<i64> = blocks.concat();
            v.extend(tail);
            v
        }
        _ => return Err(Error::UnsupportedType("natural conjugation is for classical types".into())),
    };
    let weight = eps_to_weight(series, n, &v);
    // In type D the coordinate 0 of rho absorbs the parity of sign changes.
    let word = word_to_rho(r, &weight)?;
    let w = r.word_to_element(&word)?;
    finish_conjugation(r, w, l)
}

/// The conjugation used throughout for `Phi_0`: the tabulated word for the
/// exceptional types, the natural construction for the classical ones.
pub fn standard_conjugation(r: &RootSystem, l: i64) -> Result<Conjugation> {
    let n = r.rank();
    match r.series() {
        Series::A | Series::B | Series::C | Series::D => natural_conjugation(r, l),
        s => {
            if let Some(word) = crate::tables::appendix().conj_row(s, n, l).and_then(|row| row.word.clone()) {
                let w = r.word_to_element(&word)?;
                return finish_conjugation(r, w, l);
            }
            if phi0(r, l).is_empty() {
                return Ok(Conjugation { w: r.identity(), word: Vec::new(), j: Vec::new(), canonical: true });
            }
            match conjugate_to_parabolic(r, &phi0(r, l), DEFAULT_BUDGET)? {
                ConjugationResult::Found(c) => Ok(c),
                ConjugationResult::NotConjugate { .. } => {
                    Err(Error::Domain(format!("Phi_0 for l = {l} is not conjugate to a parabolic subsystem")))
                }
                ConjugationResult::Exhausted { explored } => {
                    Err(Error::Budget(format!("conjugation search explored {explored} states")))
                }
            }
        }
    }
}

fn finish_conjugation(r: &RootSystem, w: WeylElement, l: i64) -> Result<Conjugation> {
    let wdot = r.act_dot(&w, &vec![0; r.rank()]);
    let j: Vec<usize> = (0..r.rank()).filter(|&i| (wdot[i] + 1).rem_euclid(l) == 0).collect();
    let s = phi0(r, l);
    if !verify_conjugation(r, &w, &s, &j) {
        return Err(Error::Domain("natural conjugation failed verification".into()));
    }
    let word = w.reduced_word(r);
    Ok(Conjugation { w, word, j, canonical: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: Series, n: usize) -> RootSystem {
        RootSystem::build(s, n).unwrap()
    }

    #[test]
    fn phi0_examples() {
        let f4 = build(Series::F, 4);
        assert!(phi0(&f4, 13).is_empty());
        let p9 = phi0(&f4, 9);
        assert_eq!(p9.len(), 2);
        assert_eq!(cartan_type_of(&f4, &p9).unwrap().to_string(), "A1");
        let p3 = phi0(&f4, 3);
        let b = simple_system(&f4, &p3).unwrap();
        assert_eq!(b.roots.len(), 4);
        assert_eq!(b.cartan_type.to_string(), "A2xA2");
        let a4 = build(Series::A, 4);
        assert_eq!(cartan_type_of(&a4, &phi0(&a4, 3)).unwrap().to_string(), "A1xA1");
    }

    #[test]
    fn simple_system_of_everything_is_pi() {
        for (s, n) in [(Series::B, 3), (Series::E, 6), (Series::G, 2)] {
            let r = build(s, n);
            let all: Vec<usize> = (0..r.num_roots()).collect();
            let b = simple_system(&r, &all).unwrap();
            assert_eq!(b.roots, (0..n).collect::<Vec<_>>());
            assert_eq!(b.cartan_type, r.cartan_type());
        }
    }

    #[test]
    fn simple_system_rejects_non_subsystems() {
        let a2 = build(Series::A, 2);
        assert!(simple_system(&a2, &[0]).is_err());
        assert!(simple_system(&a2, &[0, 1, 3, 4]).is_err());
    }

    #[test]
    fn classify_all_standard_types() {
        for (s, n) in [(Series::B, 4), (Series::C, 5), (Series::D, 6), (Series::E, 7), (Series::F, 4), (Series::G, 2)] {
            let mut c = cartan_matrix(s, n);
            // relabel by reversing the node order
            c.reverse();
            for row in c.iter_mut() {
                row.reverse();
            }
            assert_eq!(classify_cartan(&c).unwrap(), CartanType::new([(s, n)]));
        }
    }

    #[test]
    fn conjugation_examples() {
        let f4 = build(Series::F, 4);
        let res = conjugate_to_parabolic(&f4, &phi0(&f4, 5), DEFAULT_BUDGET).unwrap();
        let c = res.found().expect("F4 l=5 conjugates");
        assert_eq!(c.j, vec![0, 2, 3]);
        assert!(c.canonical);
        assert_eq!(c.word.len(), c.w.length(&f4));
        assert!(verify_conjugation(&f4, &c.w, &phi0(&f4, 5), &c.j));
        assert!(matches!(
            conjugate_to_parabolic(&f4, &phi0(&f4, 3), DEFAULT_BUDGET).unwrap(),
            ConjugationResult::NotConjugate { .. }
        ));
        let empty = conjugate_to_parabolic(&f4, &[], DEFAULT_BUDGET).unwrap();
        let c = empty.found().unwrap();
        assert!(c.j.is_empty() && c.w.is_identity());
    }

    #[test]
    fn span_test_agrees_with_search() {
        for (series, n, l) in [(Series::F, 4, 3), (Series::F, 4, 5), (Series::E, 6, 3), (Series::E, 6, 9), (Series::G, 2, 3), (Series::B, 3, 3)] {
            let r = build(series, n);
            let s = phi0(&r, l);
            let found = conjugate_to_parabolic(&r, &s, DEFAULT_BUDGET).unwrap().found().is_some();
            assert_eq!(is_parabolic_by_span(&r, &s), found, "{series:?}{n} l={l}");
        }
    }

    #[test]
    fn paper_word_against_wrong_j() {
        let f4 = build(Series::F, 4);
        let w = f4.word_to_element(&[2, 3, 4, 2, 3, 2, 1, 2, 3, 1, 2, 3]).unwrap();
        let s = phi0(&f4, 5);
        assert!(verify_conjugation(&f4, &w, &s, &[0, 2, 3]));
        assert!(!verify_conjugation(&f4, &w, &s, &[2]));
    }

    #[test]
    fn conjugate_to_given_j() {
        let e6 = build(Series::E, 6);
        let s = phi0(&e6, 9);
        let c = conjugate_to_given(&e6, &s, &[3], DEFAULT_BUDGET).unwrap();
        let c = c.found().unwrap();
        assert_eq!(c.j, vec![3]);
        assert!(verify_conjugation(&e6, &c.w, &s, &[3]));
    }

    #[test]
    fn predictions_small_cases() {
        let (t, d) = classical_phi0_prediction(Series::A, 4, 3).unwrap();
        assert_eq!((t.to_string().as_str(), d), ("A1xA1", 16));
        let (t, d) = classical_phi0_prediction(Series::A, 3, 5).unwrap();
        assert!(t.is_empty());
        assert_eq!(d, 12);
        assert!(classical_phi0_prediction(Series::B, 4, 4).is_err());
    }

    #[test]
    fn natural_conjugations_verify() {
        for (s, lo) in [(Series::A, 1), (Series::B, 2), (Series::C, 2), (Series::D, 4)] {
            for n in lo.max(2)..=7 {
                let r = build(s, n);
                for l in (3..=2 * n as i64 + 1).step_by(2) {
                    let c = natural_conjugation(&r, l).unwrap_or_else(|e| panic!("{s:?}{n} l={l}: {e}"));
                    assert!(verify_conjugation(&r, &c.w, &phi0(&r, l), &c.j));
                }
            }
        }
    }

    #[test]
    fn best_first_fallback_finds_a_solution() {
        let e6 = build(Series::E, 6);
        let s = phi0(&e6, 7);
        match conjugate_to_parabolic(&e6, &s, 60).unwrap() {
            ConjugationResult::Found(c) => {
                assert!(!c.canonical);
                assert!(verify_conjugation(&e6, &c.w, &s, &c.j));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invariance_with_longest_element() {
        for (s, n) in [(Series::B, 3), (Series::D, 4), (Series::G, 2)] {
            let r = build(s, n);
            let all: Vec<usize> = (0..n).collect();
            let w0 = r.longest_element(&all);
            assert!(action_invariance_check(&r, &w0, &vec![0; n], 5));
        }
    }
}
