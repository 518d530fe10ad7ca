//! Exact projection by active-set enumeration. Exponential in the number of
//! constraints; meant as an oracle for small cones.

use num_traits::{Signed, Zero};

use super::{Cone, ConeError};
use crate::linalg;
use crate::rational::{dot, Rational};

/// Projection computed over the rationals, in the cone's rational frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactProjection {
    pub point: Vec<Rational>,
    pub residual: Vec<Rational>,
    /// Lagrange multipliers of the accepted active set (all `>= 0`).
    pub multipliers: Vec<(usize, Rational)>,
    pub tight_set: Vec<usize>,
    pub face_dim: usize,
}

/// Projects `z` onto the cone under the cone's metric `Q`.
///
/// For each linearly independent subset `S` of constraints (by size, then
/// lexicographically) solve the equality-constrained problem
/// `y = z + Q⁻¹ A_Sᵀ λ`, `A_S y = 0`, and accept the first `S` whose `y`
/// is feasible and whose `λ` is nonnegative. Those are the KKT conditions,
/// so the accepted `y` is the unique projection.
pub fn project_point_exact(cone: &Cone, z: &[Rational]) -> Result<ExactProjection, ConeError> {
    let d = cone.dim();
    if z.len() != d {
        return Err(ConeError::PointDimension { expected: d, found: z.len() });
    }
    let normals = cone.exact_normals();
    let metric = cone.metric();
    let m = normals.len();
    let scaled: Vec<Vec<Rational>> = normals.iter().map(|a| a.iter().zip(metric).map(|(x, q)| x / q).collect()).collect();

    for size in 0..=m.min(d) {
        for subset in Combinations::new(m, size) {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
            if linalg::rank(&rows, d) < size {
                continue;
            }
            // M λ = -A_S z with M_ij = a_i · Q⁻¹ a_j.
            let gram: Vec<Vec<Rational>> = subset.iter().map(|&i| subset.iter().map(|&j| dot(&normals[i], &scaled[j])).collect()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| -dot(&normals[i], z)).collect();
            let Some(lambda) = linalg::solve(&gram, &rhs) else { continue };
            if lambda.iter().any(Signed::is_negative) {
                continue;
            }
            let mut y = z.to_vec();
            for (l, &i) in lambda.iter().zip(&subset) {
                for (yk, ak) in y.iter_mut().zip(&scaled[i]) {
                    *yk += l * ak;
                }
            }
            if normals.iter().any(|a| dot(a, &y).is_negative()) {
                continue;
            }
            let tight_set: Vec<usize> = (0..m).filter(|&i| dot(&normals[i], &y).is_zero()).collect();
            let tight_rows: Vec<Vec<Rational>> = tight_set.iter().map(|&i| normals[i].clone()).collect();
            let face_dim = d - linalg::rank(&tight_rows, d);
            let residual = z.iter().zip(&y).map(|(a, b)| a - b).collect();
            return Ok(ExactProjection { point: y, residual, multipliers: subset.into_iter().zip(lambda).collect(), tight_set, face_dim });
        }
    }
    // A nonempty closed convex set always has a projection, and some optimal
    // active set is linearly independent, so the loop above returns.
    unreachable!("no KKT active set found for a nonempty cone")
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
