//! Independent oracles shared by the integration tests. Nothing here calls
//! into the lattice, region or projection code under test.

#![allow(dead_code)]

use arrlab::rational::{int, Rational};
use num_traits::{Signed, Zero};

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| ints(r)).collect()
}

/// Rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Is `{x : s_i n_i · x > 0 for s_i ≠ 0, n_i · x = 0 for s_i = 0}` nonempty?
/// Equalities are substituted away, then strict homogeneous Fourier–Motzkin.
pub fn sign_vector_feasible(normals: &[Vec<Rational>], signs: &[i8]) -> bool {
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    let mut strict: Vec<Vec<Rational>> = Vec::new();
    for (n, &s) in normals.iter().zip(signs) {
        match s {
            0 => eqs.push(n.clone()),
            1 => strict.push(n.clone()),
            _ => strict.push(n.iter().map(|x| -x).collect()),
        }
    }
    let d = normals.first().map_or(0, Vec::len);
    // Substitute each equality: pick a variable with nonzero coefficient and
    // eliminate it from every other row.
    while let Some(e) = eqs.pop() {
        let Some(k) = (0..d).find(|&k| !e[k].is_zero()) else { continue };
        let sub = |row: &mut Vec<Rational>| {
            if !row[k].is_zero() {
                let f = &row[k] / &e[k];
                for j in 0..d {
                    let t = &f * &e[j];
                    row[j] -= t;
                }
            }
        };
        eqs.iter_mut().for_each(sub);
        strict.iter_mut().for_each(sub);
    }
    strict_fm(strict, d)
}

fn strict_fm(mut rows: Vec<Vec<Rational>>, d: usize) -> bool {
    for k in 0..d {
        let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| r[k].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r[k].is_negative());
        let mut next = zero;
        if !pos.is_empty() && !neg.is_empty() {
            for p in &pos {
                for n in &neg {
                    let row: Vec<Rational> = (0..d).map(|j| &p[j] / &p[k] + &n[j] / &(-&n[k])).collect();
                    next.push(row);
                }
            }
        }
        rows = next;
        if rows.len() > 20_000 {
            panic!("Fourier-Motzkin blow-up");
        }
    }
    // Only constant rows remain: 0 > 0 is false.
    rows.is_empty()
}

/// All feasible sign vectors with entries in `{+1, -1}` (regions) or in
/// `{+1, 0, -1}` (all faces), by brute force.
pub fn brute_force_cells(normals: &[Vec<Rational>], with_zero: bool) -> Vec<Vec<i8>> {
    let m = normals.len();
    let choices: &[i8] = if with_zero { &[1, 0, -1] } else { &[1, -1] };
    let mut out = Vec::new();
    let mut signs = vec![0i8; m];
    let total = choices.len().pow(m as u32);
    for mut code in 0..total {
        for s in signs.iter_mut() {
            *s = choices[code % choices.len()];
            code /= choices.len();
        }
        if sign_vector_feasible(normals, &signs) {
            out.push(signs.clone());
        }
    }
    out
}

/// Poset-rank characteristic polynomial by Whitney's subset expansion
/// `Σ_S (−1)^{|S|} t^{r − rank S}`, coefficients indexed by power.
pub fn whitney_charpoly(normals: &[Vec<Rational>]) -> Vec<i64> {
    let m = normals.len();
    let r = rank(normals);
    let mut c = vec![0i64; r + 1];
    for mask in 0u32..(1 << m) {
        let rows: Vec<Vec<Rational>> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| normals[i].clone()).collect();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        c[r - rank(&rows)] += sign;
    }
    c
}

/// Seeded generator of random integer data (SplitMix64), independent of the
/// crate's RNG choices.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn int_vec(&mut self, d: usize, bound: i64) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..d).map(|_| self.range(-bound, bound)).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
