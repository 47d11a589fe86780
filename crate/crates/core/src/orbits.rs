//! Partitions and nilpotent orbits of the classical Lie algebras, and the
//! tabulated orbits of the exceptional ones.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Series};
use crate::subsystems::{classify_cartan, phi0};
use crate::tables;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, a: u32) -> usize {
        self.0.iter().filter(|&&p| p == a).count()
    }

    /// The conjugate partition.
    pub fn dual(&self) -> Partition {
        let first = self.part(0);
        Partition((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32).collect())
    }

    /// Partial sums `eta_1 + ... + eta_i` for `i = 1..=len`.
    fn prefix_sums(&self, len: usize) -> Vec<u32> {
        (0..len)
            .scan(0, |acc, i| {
                *acc += self.part(i);
                Some(*acc)
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `5,5,3`, `(5,5,3)` and exponent notation such as `5^2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::Parse(format!("bad partition entry `{tok}`"));
            let (a, k) = match tok.split_once('^') {
                Some((a, k)) => (a.parse::<u32>().map_err(|_| bad())?, k.parse::<usize>().map_err(|_| bad())?),
                None => (tok.parse::<u32>().map_err(|_| bad())?, 1),
            };
            parts.extend(std::iter::repeat_n(a, k));
        }
        Ok(Partition::new(parts))
    }
}

/// Which parity rule a partition must obey.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Epsilon {
    /// `P_1(N)`: even parts have even multiplicity (orthogonal).
    Plus,
    /// `P_{-1}(N)`: odd parts have even multiplicity, `N` even (symplectic).
    Minus,
}

impl Epsilon {
    pub fn flip(self) -> Self {
        match self {
            Epsilon::Plus => Epsilon::Minus,
            Epsilon::Minus => Epsilon::Plus,
        }
    }

    /// The class of nilpotent orbits of a classical series.
    pub fn of_series(series: Series) -> Result<Self> {
        match series {
            Series::B | Series::D => Ok(Epsilon::Plus),
            Series::C => Ok(Epsilon::Minus),
            s => Err(Error::UnsupportedType(format!("no epsilon class for series {}", s.letter()))),
        }
    }

    pub fn admits(self, eta: &Partition) -> bool {
        let bad_parity = match self {
            Epsilon::Plus => 0,
            Epsilon::Minus => 1,
        };
        if self == Epsilon::Minus && eta.total() % 2 == 1 {
            return false;
        }
        let mut i = 0;
        while i < eta.len() {
            let a = eta.part(i);
            let k = eta.multiplicity(a);
            if a % 2 == bad_parity && k % 2 == 1 {
                return false;
            }
            i += k;
        }
        true
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `eta ⊴ sigma` in the dominance order.
pub fn dominance_leq(eta: &Partition, sigma: &Partition) -> Result<bool> {
    if eta.total() != sigma.total() {
        return Err(Error::Domain(format!("{eta} and {sigma} have different totals")));
    }
    let len = eta.len().max(sigma.len());
    Ok(eta.prefix_sums(len).iter().zip(sigma.prefix_sums(len)).all(|(a, b)| *a <= b))
}

fn leq(eta: &Partition, sigma: &Partition) -> bool {
    dominance_leq(eta, sigma).unwrap_or(false)
}

/// The largest partition of the class below `eta` in the dominance order.
///
/// Repeatedly lowers the last copy of the largest offending part by one and
/// raises the first part that is at least two smaller.
pub fn collapse(eta: &Partition, eps: Epsilon) -> Result<Partition> {
    if eps == Epsilon::Minus && eta.total() % 2 == 1 {
        return Err(Error::Domain(format!("{eta} has odd total; no symplectic partition lies below it")));
    }
    let bad_parity = match eps {
        Epsilon::Plus => 0,
        Epsilon::Minus => 1,
    };
    let mut parts = eta.parts().to_vec();
    loop {
        let p = Partition::new(parts.clone());
        let offender = p.parts().iter().copied().find(|&a| a % 2 == bad_parity && p.multiplicity(a) % 2 == 1);
        let Some(q) = offender else { return Ok(p) };
        parts = p.parts().to_vec();
        let last = parts.iter().rposition(|&a| a == q).expect("offender occurs");
        parts[last] -= 1;
        match parts.iter().position(|&a| a + 1 < q) {
            Some(k) => parts[k] += 1,
            None => parts.push(1),
        }
    }
}

/// The collapse by its definition: the maximum of the valid partitions below
/// `eta`. Errors if that set has no unique maximum.
pub fn brute_force_collapse(eta: &Partition, eps: Epsilon) -> Result<Partition> {
    let below: Vec<Partition> = partitions(eta.total()).into_iter().filter(|p| eps.admits(p) && leq(p, eta)).collect();
    below
        .iter()
        .find(|m| below.iter().all(|p| leq(p, m)))
        .cloned()
        .ok_or_else(|| Error::Domain(format!("no unique maximal partition below {eta}")))
}

/// The Richardson partition of the Levi subalgebra with the given block
/// sizes in `sl_{n+1}`.
pub fn richardson_partition_a(n: usize, blocks: &[u32]) -> Result<Partition> {
    let sum: u32 = blocks.iter().sum();
    if sum as usize != n + 1 {
        return Err(Error::Domain(format!("blocks sum to {sum}, expected {}", n + 1)));
    }
    Ok(Partition::new(blocks.to_vec()).dual())
}

/// `(l^{m'}, s')` with `N = m' l + s'`, collapsed for the series.
pub fn sigma_partition(series: Series, n_total: u32, l: u32) -> Result<Partition> {
    let eps = Epsilon::of_series(series)?;
    let parity_ok = match series {
        Series::B => n_total % 2 == 1,
        _ => n_total.is_multiple_of(2),
    };
    if !parity_ok || l < 2 {
        return Err(Error::Domain(format!("N = {n_total} does not fit series {} (l = {l})", series.letter())));
    }
    let mut parts = vec![l; (n_total / l) as usize];
    parts.push(n_total % l);
    collapse(&Partition::new(parts), eps)
}

/// `N` for the natural representation of a classical series of rank `n`.
pub fn natural_dimension(series: Series, n: usize) -> Result<u32> {
    match series {
        Series::A => Ok(n as u32 + 1),
        Series::B => Ok(2 * n as u32 + 1),
        Series::C | Series::D => Ok(2 * n as u32),
        s => Err(Error::UnsupportedType(format!("series {} has no natural representation here", s.letter()))),
    }
}

/// Dimension of the nilpotent orbit with partition `eta`.
pub fn orbit_dim_classical(eta: &Partition, series: Series) -> Result<u64> {
    let total = eta.total() as i64;
    let dual_sq: i64 = eta.dual().parts().iter().map(|&c| (c as i64).pow(2)).sum();
    let odd = eta.parts().iter().filter(|&&p| p % 2 == 1).count() as i64;
    let check = |eps: Epsilon| -> Result<()> {
        if eps.admits(eta) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{eta} is not a valid partition for series {}", series.letter())))
        }
    };
    let twice = match series {
        Series::A => return Ok((total * total - dual_sq) as u64),
        Series::B => {
            check(Epsilon::Plus)?;
            if total % 2 == 0 {
                return Err(Error::Domain(format!("{eta} has even total for type B")));
            }
            let n = (total - 1) / 2;
            2 * (2 * n * n + n) - dual_sq + odd
        }
        Series::C => {
            check(Epsilon::Minus)?;
            let n = total / 2;
            2 * (2 * n * n + n) - dual_sq - odd
        }
        Series::D => {
            check(Epsilon::Plus)?;
            if total % 2 == 1 {
                return Err(Error::Domain(format!("{eta} has odd total for type D")));
            }
            let n = total / 2;
            2 * (2 * n * n - n) - dual_sq + odd
        }
        s => return Err(Error::UnsupportedType(format!("series {} is not classical", s.letter()))),
    };
    Ok((twice / 2) as u64)
}

/// Outcome of the Kraft–Procesi test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalityVerdict {
    Normal,
    /// A minimal degeneration `eta` whose reduced pair is the forbidden one.
    BadPair { eta: Partition, reduced_eta: Partition, reduced_sigma: Partition },
    Undetermined { reason: String },
}

/// Valid partitions `eta` with `eta ◁ sigma` and nothing valid strictly between.
pub fn minimal_degenerations(sigma: &Partition, eps: Epsilon) -> Vec<Partition> {
    let below: Vec<Partition> =
        partitions(sigma.total()).into_iter().filter(|p| p != sigma && eps.admits(p) && leq(p, sigma)).collect();
    below.iter().filter(|eta| !below.iter().any(|t| t != *eta && leq(eta, t))).cloned().collect()
}

fn drop_first_column(p: &Partition) -> Partition {
    Partition::new(p.parts().iter().map(|&a| a - 1).collect())
}

/// Removes common leading rows (forming a valid partition) and common
/// leading columns (each flipping the class) until neither applies.
pub fn reduce_pair(eta: &Partition, sigma: &Partition, eps: Epsilon) -> (Partition, Partition, Epsilon) {
    let (mut eta, mut sigma, mut eps) = (eta.clone(), sigma.clone(), eps);
    loop {
        let common = (0..eta.len().min(sigma.len())).take_while(|&i| eta.part(i) == sigma.part(i)).count();
        let rows = (1..=common).rev().find(|&r| eps.admits(&Partition(eta.parts()[..r].to_vec())));
        if let Some(r) = rows {
            eta = Partition(eta.parts()[r..].to_vec());
            sigma = Partition(sigma.parts()[r..].to_vec());
            continue;
        }
        if !eta.is_empty() && eta.len() == sigma.len() {
            eta = drop_first_column(&eta);
            sigma = drop_first_column(&sigma);
            eps = eps.flip();
            continue;
        }
        return (eta, sigma, eps);
    }
}

/// True for `((2m-1, 2m-1, 1, 1), (2m, 2m))` in `P_1(4m)`.
pub fn is_forbidden_pair(eta: &Partition, sigma: &Partition, eps: Epsilon) -> bool {
    let [a, b] = sigma.parts() else { return false };
    let m2 = *a;
    eps == Epsilon::Plus && a == b && m2 % 2 == 0 && m2 > 0 && eta.parts() == [m2 - 1, m2 - 1, 1, 1]
}

/// Largest `N` for which the degeneration enumeration is attempted.
pub const MAX_NORMALITY_N: u32 = 60;

/// Kraft–Procesi: the closure of the orbit of `sigma` is normal in
/// codimension two unless some minimal degeneration reduces to the
/// forbidden pair.
pub fn normality_check(sigma: &Partition, eps: Epsilon) -> NormalityVerdict {
    if !eps.admits(sigma) {
        return NormalityVerdict::Undetermined { reason: format!("{sigma} is not a valid partition for {eps:?}") };
    }
    if sigma.total() > MAX_NORMALITY_N {
        return NormalityVerdict::Undetermined { reason: format!("N = {} exceeds {MAX_NORMALITY_N}", sigma.total()) };
    }
    for eta in minimal_degenerations(sigma, eps) {
        let (re, rs, reps) = reduce_pair(&eta, sigma, eps);
        if is_forbidden_pair(&re, &rs, reps) {
            return NormalityVerdict::BadPair { eta, reduced_eta: re, reduced_sigma: rs };
        }
    }
    NormalityVerdict::Normal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normality {
    Yes,
    No,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OrbitLabel {
    Partition(Partition),
    BalaCarter(String),
    /// Richardson orbit of the parabolic with Levi `Phi_J` (1-based `J`).
    Induced { levi_j: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDescriptor {
    pub label: OrbitLabel,
    pub dim: u64,
    pub normal: Normality,
    /// Type D partition with only even parts (two orbits share it).
    pub very_even: bool,
}

/// The orbit with closure `N(Phi_0)` for the classical series.
pub fn classical_orbit(series: Series, n: usize, l: u32) -> Result<OrbitDescriptor> {
    let n_total = natural_dimension(series, n)?;
    let (partition, normal) = match series {
        Series::A => {
            // Residue classes of rho's coordinates 0..n modulo l.
            let blocks: Vec<u32> =
                (0..l).map(|r| (0..n_total).filter(|v| v % l == r).count() as u32).filter(|&c| c > 0).collect();
            (richardson_partition_a(n, &blocks)?, Normality::Yes)
        }
        _ => {
            let sigma = sigma_partition(series, n_total, l)?;
            let normal = match normality_check(&sigma, Epsilon::of_series(series)?) {
                NormalityVerdict::Normal => Normality::Yes,
                NormalityVerdict::BadPair { .. } => Normality::No,
                NormalityVerdict::Undetermined { .. } => Normality::Open,
            };
            (sigma, normal)
        }
    };
    let very_even = series == Series::D && partition.parts().iter().all(|p| p % 2 == 0);
    Ok(OrbitDescriptor { dim: orbit_dim_classical(&partition, series)?, label: OrbitLabel::Partition(partition), normal, very_even })
}

/// `|Phi| - |Phi_0|`, the dimension of `N(Phi_0)`.
pub fn nphi0_dim(series: Series, n: usize, l: i64) -> Result<u64> {
    let r = RootSystem::build(series, n)?;
    Ok((r.num_roots() - phi0(&r, l).len()) as u64)
}

/// The tabulated orbit for an exceptional type.
pub fn exceptional_orbit(series: Series, rank: usize, l: i64) -> Result<OrbitDescriptor> {
    let row = tables::appendix()
        .conj_row(series, rank, l)
        .ok_or_else(|| Error::Data(format!("no table row for {}{rank} at l = {l}", series.letter())))?;
    let open = series == Series::E && rank == 8 && (l == 7 || l == 9);
    Ok(OrbitDescriptor {
        label: OrbitLabel::BalaCarter(row.orbit.clone()),
        dim: row.dim as u64,
        normal: if open { Normality::Open } else { Normality::Yes },
        very_even: false,
    })
}

/// One summand of a Bala-Carter label such as `E6(a3)` or `2A2`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LabelPart {
    series: Series,
    rank: usize,
    /// Short-root component (`Ã2` in `F4`).
    short: bool,
    /// `Some(('a', i))` for `X(a_i)`.
    distinguished: Option<(char, usize)>,
}

fn parse_label(label: &str) -> Result<(Vec<LabelPart>, usize)> {
    let bad = || Error::Parse(format!("bad Bala-Carter label `{label}`"));
    let mut s = label.trim();
    let primes = s.len() - s.trim_end_matches('\'').len();
    s = s.trim_end_matches('\'');
    if s.starts_with('(') && s.ends_with(')') && !s[1..].contains('(') {
        s = &s[1..s.len() - 1];
    }
    if s == "0" {
        return Ok((Vec::new(), primes));
    }
    let mut parts = Vec::new();
    for comp in s.split(['+', '×']) {
        let comp = comp.trim();
        let mult_len = comp.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let mult: usize = if mult_len == 0 { 1 } else { comp[..mult_len].parse().map_err(|_| bad())? };
        let mut rest = &comp[mult_len..];
        let first = rest.chars().next().ok_or_else(bad)?;
        rest = &rest[first.len_utf8()..];
        let mut short = first == 'Ã';
        let letter = if short { 'A' } else { first };
        if let Some(r) = rest.strip_prefix('~') {
            short = true;
            rest = r;
        }
        let series = Series::from_letter(letter).ok_or_else(bad)?;
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let rank: usize = rest[..digits].parse().map_err(|_| bad())?;
        rest = &rest[digits..];
        let distinguished = if rest.is_empty() {
            None
        } else {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let kind = inner.chars().next().filter(|c| *c == 'a' || *c == 'b').ok_or_else(bad)?;
            Some((kind, inner[1..].parse().map_err(|_| bad())?))
        };
        for _ in 0..mult {
            parts.push(LabelPart { series, rank, short, distinguished });
        }
    }
    Ok((parts, primes))
}

/// Connected components of `I ⊆ Π` in the Dynkin diagram.
fn diagram_components(r: &RootSystem, i_set: &[usize]) -> Vec<Vec<usize>> {
    let c = r.cartan_matrix();
    let mut seen = vec![false; r.rank()];
    let mut out = Vec::new();
    for &start in i_set {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut q = 0;
        while q < comp.len() {
            let u = comp[q];
            for &v in i_set {
                if !seen[v] && c[u][v] != 0 {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            q += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn part_of_component(r: &RootSystem, comp: &[usize]) -> Result<(Series, usize, bool)> {
    let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| r.cartan_matrix()[i][j]).collect()).collect();
    let t = classify_cartan(&sub)?;
    let (series, rank) = t.as_irreducible().expect("connected component");
    let lengths: Vec<i64> = comp.iter().map(|&i| r.root_length(i)).collect();
    let long = (0..r.num_roots()).map(|b| r.root_length(b)).max().unwrap_or(1);
    let short = long > 1 && lengths.iter().all(|&x| x == 1);
    Ok((series, rank, short))
}

/// `alpha(h)` for every positive root, where `h` is the element of the
/// coroot span of `comp` with `alpha_i(h) = values[i]` on `comp`.
fn grading(r: &RootSystem, comp: &[usize], values: &[i64]) -> Vec<Rational64> {
    let k = comp.len();
    let m: Vec<Vec<Rational64>> = (0..k)
        .map(|a| (0..k).map(|b| Rational64::from(r.pair_root(comp[a], comp[b]))).collect())
        .collect();
    // Solve m x = values by Gauss-Jordan elimination.
    let mut aug: Vec<Vec<Rational64>> = m
        .into_iter()
        .zip(values)
        .map(|(mut row, &v)| {
            row.push(Rational64::from(v));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&i| aug[i][col] != Rational64::from(0)).expect("Cartan matrix is invertible");
        aug.swap(col, piv);
        let p = aug[col][col];
        aug[col].iter_mut().for_each(|x| *x /= p);
        for i in 0..k {
            if i != col && aug[i][col] != Rational64::from(0) {
                let f = aug[i][col];
                let pivot_row = aug[col].clone();
                aug[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    let x: Vec<Rational64> = aug.iter().map(|row| row[k]).collect();
    r.positive_roots()
        .map(|b| comp.iter().zip(&x).map(|(&j, xj)| xj * Rational64::from(r.pair_root(b, j))).sum())
        .collect()
}

/// `dim O` from the positive-root values of the neutral element `h` of an
/// sl2-triple through `e`: `dim g^e = dim g_0 + dim g_1`.
fn dim_from_grading(r: &RootSystem, h: &[Rational64]) -> u64 {
    let zero = h.iter().filter(|v| **v == Rational64::from(0)).count() * 2;
    let one = h.iter().filter(|v| **v == Rational64::from(1) || **v == Rational64::from(-1)).count();
    (r.num_roots() - zero - one) as u64
}

/// Values `0` on `j_prime`, `2` elsewhere, when this parabolic of `comp` is
/// distinguished (`dim l_0 = dim l_2`).
fn distinguished_values(r: &RootSystem, comp: &[usize], j_prime: &[usize]) -> Option<Vec<i64>> {
    let values: Vec<i64> = comp.iter().map(|i| if j_prime.contains(i) { 0 } else { 2 }).collect();
    let h = grading(r, comp, &values);
    let in_levi = r.parabolic_positive(comp);
    let zero = in_levi.iter().filter(|&&b| h[b] == Rational64::from(0)).count();
    let two = in_levi.iter().filter(|&&b| h[b] == Rational64::from(2)).count();
    (comp.len() + 2 * zero == two).then_some(values)
}

/// Dimension of `G . x_J`, the orbit of a regular nilpotent of the Levi
/// subalgebra with simple roots `J`.
pub fn levi_regular_dim(r: &RootSystem, j: &[usize]) -> u64 {
    let mut h = vec![Rational64::from(0); r.num_positive()];
    for comp in diagram_components(r, j) {
        let g = grading(r, &comp, &vec![2; comp.len()]);
        h.iter_mut().zip(&g).for_each(|(a, b)| *a += b);
    }
    dim_from_grading(r, &h)
}

/// Dimension of the nilpotent orbit with the given Bala-Carter label.
///
/// The label is realised on a standard Levi subsystem; for `X(a_i)` and
/// `X(b_i)` the distinguished parabolics with `i` nodes of weight zero are
/// ranked by the resulting dimension (`a` the largest, `b` the next), and
/// primes choose between non-conjugate Levi subsystems of one type in the same
/// way.
pub fn bala_carter_dim(r: &RootSystem, label: &str) -> Result<u64> {
    let (parts, primes) = parse_label(label)?;
    if parts.is_empty() {
        return Ok(0);
    }
    let n = r.rank();
    let mut dims: Vec<u64> = Vec::new();
    let mut rank_of: Option<usize> = None;
    for mask in 1u32..(1 << n) {
        let i_set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let comps = diagram_components(r, &i_set);
        if comps.len() != parts.len() {
            continue;
        }
        // Pair components with label parts.
        let mut order: Vec<Option<usize>> = vec![None; parts.len()];
        let mut used = vec![false; comps.len()];
        for (pi, part) in parts.iter().enumerate() {
            for (ci, comp) in comps.iter().enumerate() {
                if !used[ci] && part_of_component(r, comp)? == (part.series, part.rank, part.short) {
                    used[ci] = true;
                    order[pi] = Some(ci);
                    break;
                }
            }
        }
        if order.iter().any(Option::is_none) {
            continue;
        }
        // Every choice of distinguished parabolic in every decorated part.
        let mut choices: Vec<Vec<(Vec<usize>, Vec<i64>)>> = Vec::new();
        for (pi, part) in parts.iter().enumerate() {
            let comp = comps[order[pi].unwrap()].clone();
            let size = part.distinguished.map_or(0, |(_, i)| i);
            if let Some((kind, _)) = part.distinguished {
                let want = if kind == 'a' { 0 } else { 1 };
                rank_of = Some(rank_of.map_or(want, |w: usize| w.max(want)));
            }
            let k = comp.len();
            let mut opts = Vec::new();
            for sub in 0u32..(1 << k) {
                if sub.count_ones() as usize != size {
                    continue;
                }
                let jp: Vec<usize> = (0..k).filter(|&t| sub & (1 << t) != 0).map(|t| comp[t]).collect();
                if let Some(v) = distinguished_values(r, &comp, &jp) {
                    opts.push((comp.clone(), v));
                }
            }
            choices.push(opts);
        }
        let mut stack: Vec<(usize, Vec<Rational64>)> = vec![(0, vec![Rational64::from(0); r.num_positive()])];
        while let Some((depth, h)) = stack.pop() {
            if depth == choices.len() {
                let d = dim_from_grading(r, &h);
                if !dims.contains(&d) {
                    dims.push(d);
                }
                continue;
            }
            for (comp, values) in &choices[depth] {
                let g = grading(r, comp, values);
                stack.push((depth + 1, h.iter().zip(&g).map(|(a, b)| a + b).collect()));
            }
        }
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let index = match (rank_of, primes) {
        (Some(_), p) if p > 0 => return Err(Error::Domain(format!("cannot combine primes and a distinguished part in `{label}`"))),
        (Some(i), _) => i,
        (None, 0) if dims.len() > 1 => return Err(Error::Domain(format!("`{label}` names more than one orbit; add a prime"))),
        (None, p) => p.saturating_sub(1),
    };
    dims.get(index)
        .copied()
        .ok_or_else(|| Error::Domain(format!("no orbit `{label}` in {}", r.cartan_type())))
}
