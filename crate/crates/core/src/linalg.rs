//! Small dense linear algebra over exact rationals.
//!
//! Matrices are row lists (`Vec<Vec<Rational>>`). Sizes here are tiny
//! (ambient dimension rarely above 6), so nothing is blocked or sparse.

use num_traits::{One, Zero};

use crate::rational::{dot, Rational};

/// Reduced row-echelon form of the row span of `rows`.
///
/// Returns the nonzero rows of the RREF together with the pivot column of
/// each. The RREF of a row space is unique, which makes it a canonical key
/// for subspaces.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).0.len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the
/// row span.
pub fn reduce(basis: &[Vec<Rational>], pivots: &[usize], v: &[Rational]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        if !out[c].is_zero() {
            let f = out[c].clone();
            for (o, b) in out.iter_mut().zip(row) {
                *o -= &f * b;
            }
        }
    }
    out
}

pub fn in_span(basis: &[Vec<Rational>], pivots: &[usize], v: &[Rational]) -> bool {
    reduce(basis, pivots, v).iter().all(Zero::is_zero)
}

/// Basis of `{y : row · y = 0 for every row}`, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Pairwise orthogonal (not normalized) basis of the row span, via exact
/// Gram–Schmidt. Zero vectors produced by dependent rows are dropped.
pub fn orthogonal_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for v in rows {
        let mut w = v.clone();
        for (b, nb) in out.iter().zip(&norms) {
            let c = dot(&w, b) / nb;
            if !c.is_zero() {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &c * bi;
                }
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            norms.push(dot(&w, &w));
            out.push(w);
        }
    }
    out
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

/// Numerical rank of a row set by Gaussian elimination with partial
/// pivoting. Entries below `tol` times the largest row norm count as zero.
pub fn numeric_rank(rows: &[&[f64]], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let scale = m.iter().map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let eps = tol * scale;
    let mut rank = 0;
    for c in 0..ncols {
        if rank == m.len() {
            break;
        }
        let (p, best) = (rank..m.len()).map(|i| (i, m[i][c].abs())).fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= eps {
            continue;
        }
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in &mut m[rank + 1..] {
            let f = row[c] / pivot[c];
            if f != 0.0 {
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
