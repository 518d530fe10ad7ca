//! Central hyperplane arrangements with exact rational normals.

mod cells;
mod io;

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg;
use crate::rational::{self, Rational};

pub use cells::{enumerate_faces, enumerate_regions, region_cone, regions_of_normals, Face, Region, SignVector};
pub use io::{ArrangementFile, Entry};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("hyperplane {index} has a zero normal")]
    ZeroNormal { index: usize },
    #[error("hyperplane {index} has {found} entries, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("hyperplane {index} has a nonzero offset; only central arrangements are supported")]
    Affine { index: usize },
    #[error("sign vector {0} is not a region of this arrangement")]
    NotARegion(String),
    #[error("arrangement is not essential (rank {rank} < dimension {dim})")]
    NotEssential { rank: usize, dim: usize },
    #[error("malformed arrangement: {0}")]
    Parse(String),
}

/// A linear hyperplane `{y : normal · y = 0}`.
///
/// The normal is stored in canonical form: its first nonzero entry is `1`,
/// so two hyperplanes are equal iff their normals are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
}

impl Hyperplane {
    /// Canonicalizes a nonzero normal. Returns the hyperplane and whether the
    /// input had to be negated to reach canonical form.
    pub fn new(raw: &[Rational]) -> Option<(Hyperplane, bool)> {
        let lead = raw.iter().find(|x| !x.is_zero())?.clone();
        let flipped = lead.is_negative();
        let normal = raw.iter().map(|x| x / &lead).collect();
        Some((Hyperplane { normal }, flipped))
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }
}

/// A finite central arrangement in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    rank: usize,
}

impl Arrangement {
    /// Builds an arrangement from raw normals: rejects zero vectors and
    /// length mismatches, rescales to canonical form and drops scalar
    /// duplicates (first occurrence wins, order otherwise preserved).
    pub fn canonicalize(raw_normals: &[Vec<Rational>], dim: usize) -> Result<Arrangement, ArrangementError> {
        let mut seen = HashSet::new();
        let mut hyperplanes = Vec::new();
        for (index, raw) in raw_normals.iter().enumerate() {
            if raw.len() != dim {
                return Err(ArrangementError::DimensionMismatch { index, expected: dim, found: raw.len() });
            }
            let (h, _) = Hyperplane::new(raw).ok_or(ArrangementError::ZeroNormal { index })?;
            if seen.insert(h.clone()) {
                hyperplanes.push(h);
            }
        }
        let rows: Vec<Vec<Rational>> = hyperplanes.iter().map(|h| h.normal.clone()).collect();
        let rank = linalg::rank(&rows, dim);
        Ok(Arrangement { dim, hyperplanes, rank })
    }

    /// Convenience constructor from integer normals.
    pub fn from_integers(normals: &[Vec<i64>], dim: usize) -> Result<Arrangement, ArrangementError> {
        let raw: Vec<Vec<Rational>> = normals.iter().map(|v| v.iter().map(|&x| rational::int(x)).collect()).collect();
        Arrangement::canonicalize(&raw, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn is_essential(&self) -> bool {
        self.rank == self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normals(&self) -> Vec<Vec<Rational>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.hyperplanes[i].normal
    }

    /// Restricts the arrangement to the orthogonal complement `V` of its
    /// intersection, expressed in coordinates of an exact orthogonal basis
    /// of `V`.
    pub fn essentialize(&self) -> Essentialization {
        if self.is_essential() {
            let basis =
                (0..self.dim).map(|i| (0..self.dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
            return Essentialization { arrangement: self.clone(), basis, flips: vec![false; self.len()], ambient_dim: self.dim };
        }
        let basis = linalg::orthogonal_basis(&self.normals());
        let mut hyperplanes = Vec::with_capacity(self.len());
        let mut flips = Vec::with_capacity(self.len());
        for h in &self.hyperplanes {
            let coords: Vec<Rational> = basis.iter().map(|b| rational::dot(&h.normal, b)).collect();
            // h.normal lies in V, so its coordinates cannot all vanish.
            let (restricted, flipped) = Hyperplane::new(&coords).expect("normal lies in its own span");
            hyperplanes.push(restricted);
            flips.push(flipped);
        }
        let arrangement = Arrangement { dim: basis.len(), hyperplanes, rank: self.rank };
        Essentialization { arrangement, basis, flips, ambient_dim: self.dim }
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arrangement in R^{} of {} hyperplanes, rank {}", self.dim, self.len(), self.rank)
    }
}

/// Result of [`Arrangement::essentialize`].
///
/// Hyperplane `i` of the restricted arrangement is `H_i ∩ V`. Its canonical
/// normal may point the opposite way from the original, which `flips`
/// records so that sign vectors can be translated in both directions.
#[derive(Debug, Clone)]
pub struct Essentialization {
    pub arrangement: Arrangement,
    /// Pairwise orthogonal rational vectors of `R^d` spanning `V`.
    pub basis: Vec<Vec<Rational>>,
    pub flips: Vec<bool>,
    pub ambient_dim: usize,
}

impl Essentialization {
    /// `d - r`: projection volume index `k` in `V` is index `k + shift` in `R^d`.
    pub fn index_shift(&self) -> usize {
        self.ambient_dim - self.arrangement.dim()
    }

    pub fn was_essential(&self) -> bool {
        self.index_shift() == 0
    }

    /// Squared lengths of the basis vectors; the Euclidean metric of `R^d`
    /// restricted to `V` is diagonal with these entries.
    pub fn metric(&self) -> Vec<Rational> {
        self.basis.iter().map(|b| rational::dot(b, b)).collect()
    }

    /// Maps a sign vector of the restricted arrangement to the original one.
    pub fn lift_signs(&self, s: &SignVector) -> SignVector {
        SignVector::new(s.signs().iter().zip(&self.flips).map(|(&x, &flip)| if flip { x.negate() } else { x }).collect())
    }

    /// Inverse of [`Essentialization::lift_signs`].
    pub fn restrict_signs(&self, s: &SignVector) -> SignVector {
        self.lift_signs(s)
    }

    /// Embeds a point given in basis coordinates into `R^d`.
    pub fn lift_point(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (yi, bi) in y.iter_mut().zip(b) {
                *yi += c * bi;
            }
        }
        y
    }
}
