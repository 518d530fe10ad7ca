//! Floating-point projection onto a cone via the Moreau split.
//!
//! `π_C(z) = z − π_{C°}(z)`, and `π_{C°}(z)` is the nonnegative least
//! squares fit of `z` by the polar generators `g_i = −a_i`. The fit uses a
//! Lawson–Hanson active set working entirely on the constraint Gram matrix,
//! so each sample costs `m` dot products in the ambient dimension plus
//! `m × m` bookkeeping.

use super::{dot_f, Cone, ConeError, Mask, DEFAULT_TOL};

/// Outcome of projecting one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// `π_C(z)`.
    pub point: Vec<f64>,
    /// `z − π_C(z)`, which lies in the polar cone.
    pub residual: Vec<f64>,
    /// Constraints active at the projection.
    pub tight_set: Vec<usize>,
    /// Dimension of the face whose relative interior contains the projection.
    pub face_dim: usize,
}

pub fn project_point(cone: &Cone, z: &[f64]) -> Result<ProjectionResult, ConeError> {
    project_point_with_tol(cone, z, DEFAULT_TOL)
}

pub fn project_point_with_tol(cone: &Cone, z: &[f64], tol: f64) -> Result<ProjectionResult, ConeError> {
    if z.len() != cone.dim() {
        return Err(ConeError::PointDimension { expected: cone.dim(), found: z.len() });
    }
    let mut p = Projector::new(cone);
    p.project(z)?;
    let mask = p.tight_mask(tol);
    let tight_set = (0..cone.len()).filter(|i| mask >> i & 1 == 1).collect();
    Ok(ProjectionResult {
        point: p.point().to_vec(),
        residual: z.iter().zip(p.point()).map(|(a, b)| a - b).collect(),
        tight_set,
        face_dim: p.face_dim(mask),
    })
}

/// Dimension `k` of the face the projection of `z` lands in.
pub fn classify_projection(cone: &Cone, z: &[f64], tol: f64) -> Result<usize, ConeError> {
    project_point_with_tol(cone, z, tol).map(|r| r.face_dim)
}

/// Reusable workspace for projecting many points onto one cone.
pub struct Projector<'a> {
    cone: &'a Cone,
    m: usize,
    gram: Vec<f64>,
    az: Vec<f64>,
    lambda: Vec<f64>,
    s: Vec<f64>,
    passive: Vec<bool>,
    blocked: Vec<bool>,
    active: Vec<usize>,
    chol: Vec<f64>,
    rhs: Vec<f64>,
    y: Vec<f64>,
}

impl<'a> Projector<'a> {
    pub fn new(cone: &'a Cone) -> Projector<'a> {
        let m = cone.len();
        let mut gram = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                gram[i * m + j] = dot_f(cone.normal(i), cone.normal(j));
            }
        }
        Projector {
            cone,
            m,
            gram,
            az: vec![0.0; m],
            lambda: vec![0.0; m],
            s: vec![0.0; m],
            passive: vec![false; m],
            blocked: vec![false; m],
            active: Vec::with_capacity(m),
            chol: vec![0.0; m * m],
            rhs: vec![0.0; m],
            y: vec![0.0; cone.dim()],
        }
    }

    /// Projects `z` (float frame). The result is available via [`Projector::point`].
    pub fn project(&mut self, z: &[f64]) -> Result<(), ConeError> {
        let m = self.m;
        let mut inside = true;
        for i in 0..m {
            self.az[i] = dot_f(self.cone.normal(i), z);
            inside &= self.az[i] >= 0.0;
        }
        self.y.copy_from_slice(z);
        if inside {
            return Ok(());
        }

        // NNLS over the polar generators g_i = -a_i:
        //   minimize |z - G λ|,  λ >= 0
        // with G^T z = -az and G^T G = gram.
        self.lambda.fill(0.0);
        self.passive.fill(false);
        self.blocked.fill(false);
        self.active.clear();
        let znorm = dot_f(z, z).sqrt();
        let cap = 50 * m.max(1);
        let mut iterations = 0;

        loop {
            // Dual vector w_i = g_i · (z - G λ).
            let mut pick: Option<(usize, f64)> = None;
            for i in 0..m {
                if self.passive[i] || self.blocked[i] {
                    continue;
                }
                let mut w = -self.az[i];
                for &j in &self.active {
                    w -= self.lambda[j] * self.gram[i * m + j];
                }
                let thresh = 1e-13 * self.cone.normal_norm(i) * (1.0 + znorm);
                if w <= thresh {
                    continue;
                }
                // Largest gradient first; smallest index once we may be cycling.
                let better = match pick {
                    None => true,
                    Some((_, best)) => iterations <= m && w > best,
                };
                if better {
                    pick = Some((i, w));
                }
            }
            let Some((j, _)) = pick else { break };
            iterations += 1;
            if iterations > cap {
                return Err(ConeError::ConvergenceFailure { iterations });
            }

            self.passive[j] = true;
            self.active.push(j);
            let mut first = true;
            loop {
                let solved = self.solve_passive();
                if !solved || (first && self.s[j] <= 0.0) {
                    // Numerically dependent or non-improving column: drop it
                    // and keep the previous solution.
                    self.passive[j] = false;
                    self.active.retain(|&i| i != j);
                    self.lambda[j] = 0.0;
                    self.blocked[j] = true;
                    break;
                }
                first = false;
                if self.active.iter().all(|&i| self.s[i] > 0.0) {
                    for &i in &self.active {
                        self.lambda[i] = self.s[i];
                    }
                    self.blocked.fill(false);
                    break;
                }
                let mut alpha = f64::INFINITY;
                for &i in &self.active {
                    if self.s[i] <= 0.0 {
                        let l = self.lambda[i];
                        alpha = alpha.min(l / (l - self.s[i]));
                    }
                }
                for &i in &self.active {
                    self.lambda[i] += alpha * (self.s[i] - self.lambda[i]);
                }
                let lambda = &mut self.lambda;
                let passive = &mut self.passive;
                self.active.retain(|&i| {
                    if lambda[i] <= 1e-15 {
                        lambda[i] = 0.0;
                        passive[i] = false;
                        false
                    } else {
                        true
                    }
                });
                iterations += 1;
                if iterations > cap {
                    return Err(ConeError::ConvergenceFailure { iterations });
                }
                if self.active.is_empty() {
                    break;
                }
            }
        }

        for &i in &self.active {
            let l = self.lambda[i];
            for (yk, ak) in self.y.iter_mut().zip(self.cone.normal(i)) {
                *yk += l * ak;
            }
        }
        Ok(())
    }

    /// Unconstrained least squares on the passive set via Cholesky of the
    /// passive Gram block. Writes `s`; returns false if the block is not
    /// numerically positive definite.
    fn solve_passive(&mut self) -> bool {
        let m = self.m;
        let p = self.active.len();
        for (r, &i) in self.active.iter().enumerate() {
            for (c, &j) in self.active.iter().enumerate() {
                self.chol[r * p + c] = self.gram[i * m + j];
            }
            self.rhs[r] = -self.az[i];
        }
        for c in 0..p {
            let mut diag = self.chol[c * p + c];
            for k in 0..c {
                diag -= self.chol[c * p + k] * self.chol[c * p + k];
            }
            let scale = self.gram[self.active[c] * m + self.active[c]];
            if diag <= 1e-12 * scale {
                return false;
            }
            let diag = diag.sqrt();
            self.chol[c * p + c] = diag;
            for r in c + 1..p {
                let mut v = self.chol[r * p + c];
                for k in 0..c {
                    v -= self.chol[r * p + k] * self.chol[c * p + k];
                }
                self.chol[r * p + c] = v / diag;
            }
        }
        for r in 0..p {
            let mut v = self.rhs[r];
            for k in 0..r {
                v -= self.chol[r * p + k] * self.rhs[k];
            }
            self.rhs[r] = v / self.chol[r * p + r];
        }
        for r in (0..p).rev() {
            let mut v = self.rhs[r];
            for k in r + 1..p {
                v -= self.chol[k * p + r] * self.rhs[k];
            }
            self.rhs[r] = v / self.chol[r * p + r];
        }
        for (r, &i) in self.active.iter().enumerate() {
            self.s[i] = self.rhs[r];
        }
        true
    }

    /// The last projected point.
    pub fn point(&self) -> &[f64] {
        &self.y
    }

    /// Constraints with `|a_i · y| <= tol (1 + |y|) |a_i|`.
    pub fn tight_mask(&self, tol: f64) -> Mask {
        let scale = tol * (1.0 + dot_f(&self.y, &self.y).sqrt());
        let mut mask = 0;
        for i in 0..self.m {
            if dot_f(self.cone.normal(i), &self.y).abs() <= scale * self.cone.normal_norm(i) {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn face_dim(&self, mask: Mask) -> usize {
        self.cone.face_dim_of_mask(mask)
    }
}
