//! Polyhedral cones `{y : a_i · y >= 0}`, orthogonal projection onto them,
//! and projection volumes.
//!
//! A cone keeps its inward normals twice: exactly, in a rational frame, and
//! as floats in an orthonormal frame. The rational frame may carry a
//! diagonal metric (squared lengths of an orthogonal but unnormalized
//! basis), which is what essentialized arrangements produce. Float
//! coordinates are `u_j = w_j · sqrt(q_j)` for rational coordinates `w` and
//! metric entries `q`.

mod exact;
mod io;
mod project;
mod sampling;
mod volume;

use num_traits::One;
use thiserror::Error;

use crate::arrangement::regions_of_normals;
use crate::linalg;
use crate::rational::{self, dot, Rational, Sign};

pub use exact::{project_point_exact, ExactProjection};
pub use io::{ConeFile, ConeFileError};
pub use project::{classify_projection, project_point, project_point_with_tol, ProjectionResult, Projector};
pub use sampling::{fill_direction, DirectionStream, CHUNK_SIZE};
pub use volume::{
    estimate_volumes_mc, estimate_volumes_mc_with, exact_volumes_rank2, mask_histogram, normal_cone_solid_angle, Rank2Profile,
    SolidAngleEstimate, VolumeEstimate,
};

/// Relative tolerance for tightness and rank decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Cones with at most this many constraints get an exact rank table over
/// all subsets of constraints.
const EXACT_RANK_TABLE_MAX: usize = 12;

/// Bitmask over constraints; limits sampled cones to 64 constraints.
pub type Mask = u64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("constraint {index} has {found} entries, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("constraint {index} has a zero normal")]
    ZeroNormal { index: usize },
    #[error("cone has empty interior")]
    NotFullDimensional,
    #[error("witness point is not strictly inside the cone")]
    BadWitness,
    #[error("active-set iteration did not converge after {iterations} steps")]
    ConvergenceFailure { iterations: usize },
    #[error("cone normals span rank {rank}; exact volumes need rank at most 2")]
    NotRank2 { rank: usize },
    #[error("{0} constraints exceed the 64 supported by sampling")]
    TooManyConstraints(usize),
    #[error("at least one sample is required")]
    NoSamples,
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
}

#[derive(Debug, Clone)]
enum RankTable {
    Exact(Vec<u8>),
    Numeric,
}

/// A full-dimensional polyhedral cone given by inward normals.
#[derive(Debug, Clone)]
pub struct Cone {
    dim: usize,
    exact: Vec<Vec<Rational>>,
    metric: Vec<Rational>,
    scale: Vec<f64>,
    normals: Vec<Vec<f64>>,
    norms: Vec<f64>,
    witness: Vec<Rational>,
    ranks: RankTable,
}

impl Cone {
    /// Builds a cone from exact inward normals.
    ///
    /// `metric` defaults to the identity. Without a witness, one is found by
    /// enumerating the chambers cut out by the normals.
    pub fn from_exact(
        inward: Vec<Vec<Rational>>,
        metric: Option<Vec<Rational>>,
        witness: Option<Vec<Rational>>,
    ) -> Result<Cone, ConeError> {
        let dim = match (&metric, inward.first(), &witness) {
            (Some(q), _, _) => q.len(),
            (None, Some(a), _) => a.len(),
            (None, None, Some(w)) => w.len(),
            (None, None, None) => 0,
        };
        Cone::with_dim(dim, inward, metric, witness)
    }

    /// Like [`Cone::from_exact`] with an explicit ambient dimension, which
    /// matters when there are no constraints.
    pub fn with_dim(
        dim: usize,
        inward: Vec<Vec<Rational>>,
        metric: Option<Vec<Rational>>,
        witness: Option<Vec<Rational>>,
    ) -> Result<Cone, ConeError> {
        for (index, a) in inward.iter().enumerate() {
            if a.len() != dim {
                return Err(ConeError::DimensionMismatch { index, expected: dim, found: a.len() });
            }
            if rational::is_zero_vec(a) {
                return Err(ConeError::ZeroNormal { index });
            }
        }
        let metric = metric.unwrap_or_else(|| vec![Rational::one(); dim]);
        let witness = match witness {
            Some(w) => {
                if w.len() != dim || inward.iter().any(|a| Sign::of(&dot(a, &w)) != Sign::Plus) {
                    return Err(ConeError::BadWitness);
                }
                w
            }
            None => regions_of_normals(&inward, dim)
                .into_iter()
                .find(|w| inward.iter().all(|a| Sign::of(&dot(a, w)) == Sign::Plus))
                .ok_or(ConeError::NotFullDimensional)?,
        };
        let scale: Vec<f64> = metric.iter().map(|q| rational::to_f64(q).sqrt()).collect();
        let normals: Vec<Vec<f64>> = inward.iter().map(|a| a.iter().zip(&scale).map(|(x, s)| rational::to_f64(x) / s).collect()).collect();
        let norms = normals.iter().map(|a| a.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
        let ranks =
            if inward.len() <= EXACT_RANK_TABLE_MAX { RankTable::Exact(exact_rank_table(&inward, dim)) } else { RankTable::Numeric };
        Ok(Cone { dim, exact: inward, metric, scale, normals, norms, witness, ranks })
    }

    /// Cone from float-free integer normals in the standard frame.
    pub fn from_integers(inward: &[Vec<i64>], dim: usize) -> Result<Cone, ConeError> {
        let exact = inward.iter().map(|a| a.iter().map(|&x| rational::int(x)).collect()).collect();
        Cone::with_dim(dim, exact, None, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    pub fn exact_normals(&self) -> &[Vec<Rational>] {
        &self.exact
    }

    pub fn metric(&self) -> &[Rational] {
        &self.metric
    }

    /// True when the rational frame is orthonormal.
    pub fn has_standard_metric(&self) -> bool {
        self.metric.iter().all(One::is_one)
    }

    /// Inward normal `i` in the orthonormal float frame.
    pub fn normal(&self, i: usize) -> &[f64] {
        &self.normals[i]
    }

    pub fn normal_norm(&self, i: usize) -> f64 {
        self.norms[i]
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    /// Rational-frame point to float-frame coordinates.
    pub fn to_float_frame(&self, w: &[Rational]) -> Vec<f64> {
        w.iter().zip(&self.scale).map(|(x, s)| rational::to_f64(x) * s).collect()
    }

    /// Float-frame coordinates back to rational-frame coordinates (as floats).
    pub fn from_float_frame(&self, u: &[f64]) -> Vec<f64> {
        u.iter().zip(&self.scale).map(|(x, s)| x / s).collect()
    }

    /// Rank of the normals selected by `mask`.
    pub fn rank_of_mask(&self, mask: Mask) -> usize {
        match &self.ranks {
            RankTable::Exact(t) => t[mask as usize] as usize,
            RankTable::Numeric => {
                let rows: Vec<&[f64]> = (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.normals[i].as_slice()).collect();
                linalg::numeric_rank(&rows, DEFAULT_TOL)
            }
        }
    }

    /// Dimension of the face whose span is cut out by the constraints in `mask`.
    pub fn face_dim_of_mask(&self, mask: Mask) -> usize {
        self.dim - self.rank_of_mask(mask)
    }

    /// Exact rank of the whole normal set.
    pub fn normal_rank(&self) -> usize {
        linalg::rank(&self.exact, self.dim)
    }

    pub fn contains(&self, u: &[f64], tol: f64) -> bool {
        let scale = 1.0 + u.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.normals.iter().zip(&self.norms).all(|(a, n)| dot_f(a, u) >= -tol * scale * n)
    }

    pub(crate) fn check_sampling_size(&self) -> Result<(), ConeError> {
        if self.len() > 64 {
            Err(ConeError::TooManyConstraints(self.len()))
        } else {
            Ok(())
        }
    }
}

pub(crate) fn dot_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Ranks of all `2^m` constraint subsets, built one element at a time:
/// adding normal `i` to a subset raises the rank iff it leaves the span.
fn exact_rank_table(normals: &[Vec<Rational>], dim: usize) -> Vec<u8> {
    let m = normals.len();
    let mut table = vec![0u8; 1 << m];
    for mask in 1usize..(1 << m) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let rows: Vec<Vec<Rational>> = (0..m).filter(|i| rest >> i & 1 == 1).map(|i| normals[i].clone()).collect();
        let (basis, pivots) = linalg::rref(&rows, dim);
        let grows = !linalg::in_span(&basis, &pivots, &normals[top]);
        table[mask] = table[rest] + u8::from(grows);
    }
    debug_assert!(table.iter().all(|&r| (r as usize) <= dim));
    table
}
