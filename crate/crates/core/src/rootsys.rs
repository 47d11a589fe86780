//! Irreducible root systems in Bourbaki numbering, weights in the
//! fundamental-weight basis, and Weyl group elements stored as permutations
//! of the root set.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates of a weight with respect to the fundamental weights.
pub type Weight = Vec<i64>;

/// A Weyl-group word; `[i1, .., ik]` means `s_{i1} ... s_{ik}` (1-based).
pub type Word = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A (possibly reducible) Cartan type, kept in canonical form: low-rank
/// coincidences are normalized away and components are sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CartanType {
    components: Vec<(Series, usize)>,
}

impl CartanType {
    pub fn empty() -> Self {
        CartanType::default()
    }

    pub fn new(components: impl IntoIterator<Item = (Series, usize)>) -> Self {
        let mut out = Vec::new();
        for (s, r) in components {
            match (s, r) {
                (_, 0) => {}
                (Series::A, r) => out.push((Series::A, r)),
                (Series::B | Series::C, 1) => out.push((Series::A, 1)),
                (Series::C, 2) => out.push((Series::B, 2)),
                (Series::D, 1) => {}
                (Series::D, 2) => {
                    out.push((Series::A, 1));
                    out.push((Series::A, 1));
                }
                (Series::D, 3) => out.push((Series::A, 3)),
                other => out.push(other),
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        CartanType { components: out }
    }

    pub fn irreducible(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{}{}", series.letter(), rank)));
        }
        Ok(CartanType { components: vec![(series, rank)] })
    }

    pub fn components(&self) -> &[(Series, usize)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Number of roots (positive and negative).
    pub fn num_roots(&self) -> usize {
        self.components.iter().map(|&(s, n)| 2 * num_positive_roots(s, n)).sum()
    }

    pub fn as_irreducible(&self) -> Option<(Series, usize)> {
        match self.components.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> =
            self.components.iter().map(|(s, r)| format!("{}{}", s.letter(), r)).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `E6`, `A2xA1`, `A2^3xA1`, `A1+A1` and `empty`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "empty" || s == "0" {
            return Ok(CartanType::empty());
        }
        let mut comps = Vec::new();
        for piece in s.split(['x', 'X', '+', '*']) {
            let piece = piece.trim();
            let bad = || Error::Parse(format!("bad Cartan type component `{piece}`"));
            let mut chars = piece.chars();
            let series = chars.next().and_then(Series::from_letter).ok_or_else(bad)?;
            let rest: String = chars.collect();
            let (rank, mult) = match rest.split_once('^') {
                Some((r, m)) => (r.parse::<usize>().map_err(|_| bad())?, m.parse::<usize>().map_err(|_| bad())?),
                None => (rest.parse::<usize>().map_err(|_| bad())?, 1),
            };
            for _ in 0..mult {
                comps.push((series, rank));
            }
        }
        Ok(CartanType::new(comps))
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn num_positive_roots(series: Series, n: usize) -> usize {
    match series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
        Series::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Series::F => 24,
        Series::G => 6,
    }
}

/// Bourbaki Cartan matrix with `c[i][j] = <alpha_j, alpha_i^vee>` (0-based).
pub fn cartan_matrix(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }
    match series {
        Series::B => c[n - 1][n - 2] = -2,
        Series::C => c[n - 2][n - 1] = -2,
        Series::F => c[2][1] = -2,
        Series::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// Symmetrizer: `(alpha_i, alpha_j) = d_i c_ij`, short roots have `d = 1`.
fn symmetrizer(series: Series, n: usize) -> Vec<i64> {
    match series {
        Series::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Series::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Series::F => vec![2, 2, 1, 1],
        Series::G => vec![1, 3],
        _ => vec![1; n],
    }
}

/// Primes dividing some coefficient of the highest root.
pub fn bad_primes(series: Series, n: usize) -> &'static [i64] {
    match (series, n) {
        (Series::A, _) => &[],
        (Series::B | Series::C | Series::D, _) => &[2],
        (Series::E, 8) => &[2, 3, 5],
        (Series::E | Series::F | Series::G, _) => &[2, 3],
    }
}

/// Which of the two standing hypotheses on `l` hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LConditions {
    /// `l` odd, `l > 1`, not a bad prime, and `3 ∤ l` for `G2`.
    pub basic: bool,
    /// `basic`, and additionally `l > 3` in types `B` and `C`.
    pub strong: bool,
    /// No bad prime divides `l`.
    pub good: bool,
}

pub fn l_conditions(series: Series, n: usize, l: i64) -> LConditions {
    let bad = bad_primes(series, n);
    let basic = l > 1
        && l % 2 == 1
        && !bad.contains(&l)
        && !(series == Series::G && l % 3 == 0);
    let strong = basic && !(matches!(series, Series::B | Series::C) && l <= 3);
    let good = bad.iter().all(|p| l % p != 0);
    LConditions { basic, strong, good }
}

/// An irreducible root system with all positive and negative roots listed.
///
/// Roots are indexed `0..2N`: positive roots first (sorted by height, the
/// simple roots occupying `0..n` in Bourbaki order), and `neg(i) = (i+N) mod 2N`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    series: Series,
    n: usize,
    dual: bool,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    root_d: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    npos: usize,
    simple_perm: Vec<Vec<u32>>,
}

impl RootSystem {
    pub fn build(series: Series, n: usize) -> Result<Self> {
        CartanType::irreducible(series, n)?;
        Ok(Self::from_cartan(series, n, cartan_matrix(series, n), symmetrizer(series, n), false))
    }

    pub fn from_type(t: &CartanType) -> Result<Self> {
        let (s, n) = t
            .as_irreducible()
            .ok_or_else(|| Error::UnsupportedType(format!("{t} is not irreducible")))?;
        Self::build(s, n)
    }

    /// The dual root system, built from the transposed Cartan matrix. Its
    /// simple roots are the simple coroots `alpha_i^vee` in the same order, so
    /// for `F4` and `G2` the labels are reversed relative to Bourbaki.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        let dmax = *self.d.iter().max().unwrap();
        let d = self.d.iter().map(|&x| dmax / x).collect();
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        Self::from_cartan(series, n, cartan, d, !self.dual)
    }

    fn from_cartan(series: Series, n: usize, cartan: Vec<Vec<i64>>, d: Vec<i64>, dual: bool) -> Self {
        // Positive roots by increasing height using root strings.
        let mut pos: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: HashMap<Vec<i64>, usize> = pos.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut level: Vec<Vec<i64>> = pos.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for beta in &level {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), usize::MAX);
                            next.push(up);
                        }
                    }
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            pos.extend(next.iter().cloned());
            level = next;
        }
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i64>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

        // (beta, beta) / 2 = sum_ij b_i b_j d_i c_ij / 2, normalized so short = 1.
        let norm = |v: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += v[i] * v[j] * d[i] * cartan[i][j];
                }
            }
            s / 2
        };
        let root_d: Vec<i64> = roots.iter().map(|v| norm(v)).collect();
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .zip(&root_d)
            .map(|(v, &db)| (0..n).map(|j| v[j] * d[j] / db).collect())
            .collect();

        let mut rs = RootSystem {
            series,
            n,
            dual,
            cartan,
            d,
            roots,
            coroots,
            root_d,
            index,
            npos,
            simple_perm: Vec::new(),
        };
        rs.simple_perm = (0..n)
            .map(|i| {
                (0..2 * npos)
                    .map(|b| {
                        let c = rs.pair_root(b, i);
                        let mut v = rs.roots[b].clone();
                        v[i] -= c;
                        rs.index[&v] as u32
                    })
                    .collect()
            })
            .collect();
        rs
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn cartan_type(&self) -> CartanType {
        CartanType::new([(self.series, self.n)])
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.n as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.series, self.n) {
            (Series::A, _) => fact(n + 1),
            (Series::B | Series::C, _) => (1u128 << n) * fact(n),
            (Series::D, _) => (1u128 << (n - 1)) * fact(n),
            (Series::E, 6) => 51_840,
            (Series::E, 7) => 2_903_040,
            (Series::E, _) => 696_729_600,
            (Series::F, _) => 1_152,
            (Series::G, _) => 12,
        }
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.npos
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// Coordinates of `beta^vee` in the basis of simple coroots.
    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn root_length(&self, i: usize) -> i64 {
        self.root_d[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn neg(&self, i: usize) -> usize {
        (i + self.npos) % (2 * self.npos)
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.npos
    }

    /// Highest root (of maximal height).
    pub fn highest_root(&self) -> usize {
        self.npos - 1
    }

    /// Highest short root `alpha_0`.
    pub fn highest_short_root(&self) -> usize {
        (0..self.npos).rev().find(|&i| self.root_d[i] == 1).unwrap()
    }

    /// Coxeter number, computed as `<rho, alpha_0^vee> + 1`.
    pub fn coxeter_number(&self) -> i64 {
        self.coroots[self.highest_short_root()].iter().sum::<i64>() + 1
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.n]
    }

    /// `<lambda, beta^vee>` for a weight in fundamental-weight coordinates.
    pub fn pair(&self, lambda: &[i64], beta: usize) -> i64 {
        lambda.iter().zip(&self.coroots[beta]).map(|(a, b)| a * b).sum()
    }

    /// `<beta, alpha_i^vee>` for a root index and a simple index.
    pub fn pair_root(&self, beta: usize, i: usize) -> i64 {
        (0..self.n).map(|j| self.roots[beta][j] * self.cartan[i][j]).sum()
    }

    /// Converts a root-lattice vector (simple-root coordinates) to
    /// fundamental-weight coordinates.
    pub fn root_lattice_to_weight(&self, v: &[i64]) -> Weight {
        (0..self.n).map(|i| (0..self.n).map(|j| v[j] * self.cartan[i][j]).sum()).collect()
    }

    pub fn root_weight(&self, beta: usize) -> Weight {
        self.root_lattice_to_weight(&self.roots[beta])
    }

    /// Symmetric form `(u, v)` on root-lattice vectors, short roots of norm 2.
    pub fn form_roots(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += u[i] * v[j] * self.d[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Simple reflection on a weight.
    pub fn reflect_weight(&self, i: usize, lambda: &mut [i64]) {
        let c = lambda[i];
        for (j, x) in lambda.iter_mut().enumerate() {
            *x -= c * self.cartan[j][i];
        }
    }

    pub fn simple_perm(&self, i: usize) -> &[u32] {
        &self.simple_perm[i]
    }

    pub fn identity(&self) -> WeylElement {
        let perm: Vec<u32> = (0..self.num_roots() as u32).collect();
        WeylElement { inv: perm.clone(), perm }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let perm = self.simple_perm[i].clone();
        WeylElement { inv: perm.clone(), perm }
    }

    /// `s_{i1} s_{i2} ... s_{ik}` for a 1-based word.
    pub fn word_to_element(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i == 0 || i > self.n {
                return Err(Error::Domain(format!("simple index {i} out of range 1..{}", self.n)));
            }
            w = w.mul_simple_right(self, i - 1);
        }
        Ok(w)
    }

    /// `w lambda` (linear action).
    pub fn act_weight(&self, w: &WeylElement, lambda: &[i64]) -> Weight {
        (0..self.n).map(|i| self.pair(lambda, w.inv[i] as usize)).collect()
    }

    /// `w . lambda = w(lambda + rho) - rho`.
    pub fn act_dot(&self, w: &WeylElement, lambda: &[i64]) -> Weight {
        let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
        self.act_weight(w, &shifted).into_iter().map(|x| x - 1).collect()
    }

    /// `w_{0,J}` for `J` given by 0-based simple indices.
    pub fn longest_element(&self, j: &[usize]) -> WeylElement {
        let mut w = self.identity();
        loop {
            match j.iter().find(|&&k| w.perm[k] < self.npos as u32) {
                Some(&k) => w = w.mul_simple_right(self, k),
                None => return w,
            }
        }
    }

    /// Positive roots of the standard parabolic subsystem `Phi_J^+`.
    pub fn parabolic_positive(&self, j: &[usize]) -> Vec<usize> {
        (0..self.npos)
            .filter(|&b| self.roots[b].iter().enumerate().all(|(k, &c)| c == 0 || j.contains(&k)))
            .collect()
    }

    /// `Phi_J` (both signs), sorted.
    pub fn parabolic_roots(&self, j: &[usize]) -> Vec<usize> {
        let pos = self.parabolic_positive(j);
        let mut all: Vec<usize> = pos.iter().copied().chain(pos.iter().map(|&b| self.neg(b))).collect();
        all.sort_unstable();
        all
    }

    /// Enumerates every element of `W`; only sensible for small groups.
    pub fn weyl_group_elements(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        let id = self.identity();
        seen.insert(id.perm.clone(), 0);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for i in 0..self.n {
                let x = out[k].mul_simple_right(self, i);
                if !seen.contains_key(&x.perm) {
                    if out.len() >= cap {
                        return Err(Error::Budget(format!("Weyl group larger than {cap}")));
                    }
                    seen.insert(x.perm.clone(), out.len());
                    out.push(x);
                }
            }
            k += 1;
        }
        Ok(out)
    }
}

/// A Weyl group element acting on root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u32>,
    inv: Vec<u32>,
}

impl WeylElement {
    pub fn apply(&self, beta: usize) -> usize {
        self.perm[beta] as usize
    }

    pub fn apply_inverse(&self, beta: usize) -> usize {
        self.inv[beta] as usize
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { perm: self.inv.clone(), inv: self.perm.clone() }
    }

    /// `(self * other)(beta) = self(other(beta))`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let perm: Vec<u32> = other.perm.iter().map(|&b| self.perm[b as usize]).collect();
        let inv: Vec<u32> = self.inv.iter().map(|&b| other.inv[b as usize]).collect();
        WeylElement { perm, inv }
    }

    pub fn mul_simple_right(&self, r: &RootSystem, i: usize) -> WeylElement {
        let s = &r.simple_perm[i];
        let perm: Vec<u32> = s.iter().map(|&b| self.perm[b as usize]).collect();
        let inv: Vec<u32> = self.inv.iter().map(|&b| s[b as usize]).collect();
        WeylElement { perm, inv }
    }

    pub fn mul_simple_left(&self, r: &RootSystem, i: usize) -> WeylElement {
        let s = &r.simple_perm[i];
        let perm: Vec<u32> = self.perm.iter().map(|&b| s[b as usize]).collect();
        let inv: Vec<u32> = s.iter().map(|&b| self.inv[b as usize]).collect();
        WeylElement { perm, inv }
    }

    pub fn length(&self, r: &RootSystem) -> usize {
        let np = r.num_positive() as u32;
        self.perm[..np as usize].iter().filter(|&&b| b >= np).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &b)| i as u32 == b)
    }

    /// Lexicographically least reduced word (1-based letters).
    pub fn reduced_word(&self, r: &RootSystem) -> Word {
        let np = r.num_positive() as u32;
        let mut w = self.clone();
        let mut word = Vec::new();
        // Left descents of w are the i with w^{-1}(alpha_i) < 0.
        while let Some(i) = (0..r.rank()).find(|&i| w.inv[i] >= np) {
            word.push(i + 1);
            w = w.mul_simple_left(r, i);
        }
        word
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<(Series, usize)> {
        let mut v = Vec::new();
        for n in 1..=6 {
            v.push((Series::A, n));
        }
        for n in 2..=5 {
            v.push((Series::B, n));
            v.push((Series::C, n));
        }
        for n in 4..=6 {
            v.push((Series::D, n));
        }
        v.extend([(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)]);
        v
    }

    #[test]
    fn positive_root_counts() {
        for (s, n) in all_types() {
            let r = RootSystem::build(s, n).unwrap();
            assert_eq!(r.num_positive(), num_positive_roots(s, n), "{s:?}{n}");
        }
        assert_eq!(RootSystem::build(Series::F, 4).unwrap().num_roots(), 48);
        assert_eq!(RootSystem::build(Series::E, 8).unwrap().num_roots(), 240);
        assert_eq!(RootSystem::build(Series::G, 2).unwrap().num_roots(), 12);
    }

    #[test]
    fn coxeter_numbers() {
        let expect = [
            ((Series::A, 2), 3),
            ((Series::B, 3), 6),
            ((Series::C, 4), 8),
            ((Series::D, 5), 8),
            ((Series::E, 6), 12),
            ((Series::E, 7), 18),
            ((Series::E, 8), 30),
            ((Series::F, 4), 12),
            ((Series::G, 2), 6),
        ];
        for ((s, n), h) in expect {
            assert_eq!(RootSystem::build(s, n).unwrap().coxeter_number(), h);
        }
    }

    #[test]
    fn highest_roots() {
        let e8 = RootSystem::build(Series::E, 8).unwrap();
        assert_eq!(e8.root(e8.highest_root()), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = RootSystem::build(Series::F, 4).unwrap();
        assert_eq!(f4.root(f4.highest_root()), &[2, 3, 4, 2]);
        assert_eq!(f4.root(f4.highest_short_root()), &[1, 2, 3, 2]);
        let g2 = RootSystem::build(Series::G, 2).unwrap();
        assert_eq!(g2.root(g2.highest_root()), &[3, 2]);
        assert_eq!(g2.root(g2.highest_short_root()), &[2, 1]);
    }

    #[test]
    fn simple_pairings_are_cartan_entries() {
        for (s, n) in all_types() {
            let r = RootSystem::build(s, n).unwrap();
            for i in 0..n {
                let w = r.root_weight(i);
                for j in 0..n {
                    assert_eq!(r.pair(&w, j), r.cartan_matrix()[j][i]);
                }
                assert_eq!(r.pair(&r.rho(), i), 1);
            }
        }
    }

    #[test]
    fn form_matches_symmetrized_pairing() {
        // <lambda, alpha> = d_alpha <lambda, alpha^vee>
        for (s, n) in all_types() {
            let r = RootSystem::build(s, n).unwrap();
            for b in 0..r.num_roots() {
                for a in 0..r.num_positive() {
                    let lhs = r.form_roots(r.root(b), r.root(a));
                    let rhs = r.root_length(a) * r.pair(&r.root_weight(b), a);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn g2_dot_action() {
        let g2 = RootSystem::build(Series::G, 2).unwrap();
        let w = g2.word_to_element(&[2, 1]).unwrap();
        assert_eq!(g2.act_dot(&w, &[0, 0]), vec![4, -3]);
        let s1 = g2.simple_reflection(0);
        assert_eq!(g2.act_dot(&s1, &[0, 0]), g2.root_weight(0).iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn longest_elements() {
        let a2 = RootSystem::build(Series::A, 2).unwrap();
        let w0 = a2.longest_element(&[0, 1]);
        assert_eq!(w0.length(&a2), 3);
        assert!(w0.mul(&w0).is_identity());
        let f4 = RootSystem::build(Series::F, 4).unwrap();
        let w = f4.longest_element(&[2]);
        assert_eq!(w.length(&f4), 1);
        assert_eq!(w.apply(2), f4.neg(2));
        for (s, n) in all_types() {
            let r = RootSystem::build(s, n).unwrap();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(r.longest_element(&all).length(&r), r.num_positive());
        }
    }

    #[test]
    fn words_and_lengths() {
        let f4 = RootSystem::build(Series::F, 4).unwrap();
        let w = f4.word_to_element(&[2, 3, 4, 2, 3, 2, 1, 2, 3, 1, 2, 3]).unwrap();
        // twelve letters but not reduced
        assert_eq!(w.length(&f4), 8);
        let rw = w.reduced_word(&f4);
        assert_eq!(rw.len(), 8);
        assert_eq!(f4.word_to_element(&rw).unwrap(), w);
        assert!(f4.word_to_element(&[3, 3]).unwrap().is_identity());
        assert!(f4.word_to_element(&[]).unwrap().is_identity());
        assert!(f4.word_to_element(&[5]).is_err());
    }

    #[test]
    fn weyl_group_orders() {
        let cases = [((Series::A, 3), 24), ((Series::B, 3), 48), ((Series::G, 2), 12), ((Series::F, 4), 1152)];
        for ((s, n), ord) in cases {
            let r = RootSystem::build(s, n).unwrap();
            assert_eq!(r.weyl_group_elements(10_000).unwrap().len(), ord);
        }
    }

    #[test]
    fn dual_systems() {
        let b3 = RootSystem::build(Series::B, 3).unwrap();
        let c3 = b3.dual();
        assert_eq!(c3.series(), Series::C);
        for b in 0..b3.num_roots() {
            assert!(c3.index_of(b3.coroot(b)).is_some());
        }
        let f4 = RootSystem::build(Series::F, 4).unwrap();
        let f4d = f4.dual();
        assert_eq!(f4d.root(f4d.highest_root()), &[2, 4, 3, 2]);
        assert_eq!(f4d.coxeter_number(), 12);
    }

    #[test]
    fn cartan_type_normalization_and_parsing() {
        assert_eq!(CartanType::new([(Series::C, 2)]).to_string(), "B2");
        assert_eq!(CartanType::new([(Series::D, 3)]).to_string(), "A3");
        assert_eq!(CartanType::new([(Series::A, 1), (Series::A, 2)]).to_string(), "A2xA1");
        assert_eq!("A2^3".parse::<CartanType>().unwrap().to_string(), "A2xA2xA2");
        assert_eq!("A1xE6".parse::<CartanType>().unwrap(), "E6xA1".parse().unwrap());
        assert!("Q3".parse::<CartanType>().is_err());
        assert_eq!("empty".parse::<CartanType>().unwrap(), CartanType::empty());
    }

    #[test]
    fn assumption_flags() {
        assert!(l_conditions(Series::F, 4, 9).basic);
        assert!(!l_conditions(Series::F, 4, 9).good);
        assert!(!l_conditions(Series::F, 4, 3).basic);
        assert!(!l_conditions(Series::G, 2, 9).basic);
        assert!(l_conditions(Series::B, 3, 3).basic);
        assert!(!l_conditions(Series::B, 3, 3).strong);
    }
}
