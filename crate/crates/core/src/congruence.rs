//! Integer Smith normal form and homogeneous linear congruences.

use crate::error::{Error, Result};

/// `u * a * v = diag` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, positive.
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn checked(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Budget("integer overflow in Smith normal form".into()))
}

/// Row operation `row_a <- p row_a + q row_b`, `row_b <- r row_a + s row_b`.
fn combine_rows(m: &mut [Vec<i64>], a: usize, b: usize, (p, q, r, s): (i64, i64, i64, i64)) -> Result<()> {
    for k in 0..m[a].len() {
        let (x, y) = (i128::from(m[a][k]), i128::from(m[b][k]));
        m[a][k] = checked(i128::from(p) * x + i128::from(q) * y)?;
        m[b][k] = checked(i128::from(r) * x + i128::from(s) * y)?;
    }
    Ok(())
}

fn combine_cols(m: &mut [Vec<i64>], a: usize, b: usize, (p, q, r, s): (i64, i64, i64, i64)) -> Result<()> {
    for row in m.iter_mut() {
        let (x, y) = (i128::from(row[a]), i128::from(row[b]));
        row[a] = checked(i128::from(p) * x + i128::from(q) * y)?;
        row[b] = checked(i128::from(r) * x + i128::from(s) * y)?;
    }
    Ok(())
}

/// `(g, x, y)` with `g = gcd(a, b) = x a + y b`, `g >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    // Keeps the pivot in place when it already divides, so elimination terminates.
    if a != 0 && b % a == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Smith normal form of an `m x n` integer matrix.
pub fn smith_normal_form(a: &[Vec<i64>]) -> Result<SmithForm> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(m);
    // Columns of `v` are tracked as rows of `vt`.
    let mut vt = identity(n);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs())
        else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        vt.swap(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d[i][t] != 0 {
                    let (g, x, y) = ext_gcd(d[t][t], d[i][t]);
                    let (a1, b1) = (d[t][t] / g, d[i][t] / g);
                    let ops = (x, y, -b1, a1);
                    combine_rows(&mut d, t, i, ops)?;
                    combine_rows(&mut u, t, i, ops)?;
                    changed = true;
                }
            }
            for j in t + 1..n {
                if d[t][j] != 0 {
                    let (g, x, y) = ext_gcd(d[t][t], d[t][j]);
                    let (a1, b1) = (d[t][t] / g, d[t][j] / g);
                    let ops = (x, y, -b1, a1);
                    combine_cols(&mut d, t, j, ops)?;
                    combine_rows(&mut vt, t, j, ops)?;
                    changed = true;
                }
            }
            if !changed {
                // Enforce divisibility into the remaining block.
                let p = d[t][t];
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        combine_rows(&mut d, t, i, (1, 1, 0, 1))?;
                        combine_rows(&mut u, t, i, (1, 1, 0, 1))?;
                    }
                    None => break,
                }
            }
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
        diag.push(d[t][t]);
    }
    let v = (0..n).map(|i| (0..n).map(|j| vt[j][i]).collect()).collect();
    Ok(SmithForm { diag, u, v })
}

/// The solutions of `a c ≡ 0 (mod l)` in `(Z/l)^n`, as a direct sum of
/// cyclic groups generated by `generators[i]` of order `orders[i]`.
#[derive(Clone, Debug)]
pub struct SolutionGroup {
    pub modulus: i64,
    pub generators: Vec<Vec<i64>>,
    pub orders: Vec<i64>,
}

impl SolutionGroup {
    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// True iff `f . c ≡ 0` for every solution `c`.
    pub fn annihilated_by(&self, f: &[i64]) -> bool {
        self.generators.iter().all(|g| dot_mod(f, g, self.modulus) == 0)
    }

    /// Calls `visit` on every solution, reduced to `0..l`, until it returns true.
    pub fn find(&self, mut visit: impl FnMut(&[i64]) -> bool) -> Option<Vec<i64>> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut counter = vec![0i64; self.orders.len()];
        let mut current = vec![0i64; n];
        loop {
            if visit(&current) {
                return Some(current);
            }
            let mut k = 0;
            loop {
                if k == counter.len() {
                    return None;
                }
                counter[k] += 1;
                let l = self.modulus;
                current.iter_mut().zip(&self.generators[k]).for_each(|(c, g)| *c = (*c + g).rem_euclid(l));
                if counter[k] < self.orders[k] {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn dot_mod(f: &[i64], c: &[i64], l: i64) -> i64 {
    f.iter().zip(c).map(|(a, b)| (i128::from(*a) * i128::from(*b)).rem_euclid(i128::from(l))).sum::<i128>().rem_euclid(i128::from(l))
        as i64
}

fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// Solves the homogeneous system `a c ≡ 0 (mod l)` for `c ∈ (Z/l)^n`.
pub fn solve_homogeneous(a: &[Vec<i64>], n: usize, l: i64) -> Result<SolutionGroup> {
    if l < 1 {
        return Err(Error::Domain(format!("modulus must be positive, got {l}")));
    }
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("rows must have one entry per unknown".into()));
    }
    let snf = smith_normal_form(a)?;
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for j in 0..n {
        let col: Vec<i64> = snf.v.iter().map(|row| row[j]).collect();
        let (step, order) = match snf.diag.get(j) {
            Some(&dj) => {
                let g = gcd(dj, l);
                (l / g, g)
            }
            None => (1, l),
        };
        if order > 1 {
            generators.push(col.iter().map(|x| (x * step).rem_euclid(l)).collect());
            orders.push(order);
        }
    }
    Ok(SolutionGroup { modulus: l, generators, orders })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn smith_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn congruence_counts() {
        // 2x + 4y ≡ 0 (mod 6): brute force count.
        let a = vec![vec![2, 4]];
        let g = solve_homogeneous(&a, 2, 6).unwrap();
        let brute = (0..6).flat_map(|x| (0..6).map(move |y| (x, y))).filter(|(x, y)| (2 * x + 4 * y) % 6 == 0).count();
        assert_eq!(g.size(), brute as u128);
        let mut seen = 0;
        g.find(|c| {
            assert_eq!(dot_mod(&a[0], c, 6), 0);
            seen += 1;
            false
        });
        assert_eq!(seen, brute);
        assert!(!g.annihilated_by(&[1, 2]));
        assert!(!g.annihilated_by(&[3, 0]));
        assert!(g.annihilated_by(&[4, 2]));
    }

    #[test]
    fn smith_repeated_pivot() {
        let a = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![2, 2, 1, 0], vec![-2, -4, -3, -2]];
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diag, vec![1, 1, 2, 2]);
        let d = mul(&mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }
}
