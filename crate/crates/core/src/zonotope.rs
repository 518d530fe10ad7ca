//! Zonotopes of essential central arrangements: vertices, face numbers and
//! angle sums, all exact.
//!
//! The zonotope is the Minkowski sum of the segments `[-η_i, η_i]`. Its
//! vertices are `Σ σ_i η_i` over the region sign vectors `σ`, and its face
//! lattice is the order dual of the arrangement's face poset, so face
//! numbers and angle sums can be read off the intersection lattice alone.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arrangement::{enumerate_faces, Arrangement, Region, SignVector};
use crate::lattice::{IntersectionLattice, LatticeError};
use crate::rational::{self, Rational, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZonotopeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("arrangement is not essential (rank {rank} < dimension {dim})")]
    NotEssential { rank: usize, dim: usize },
    #[error("angle sum {index} came out negative ({value}); the lattice is inconsistent")]
    NegativeAngleSum { index: usize, value: String },
}

/// Vertices of the zonotope, keyed by region.
#[derive(Debug, Clone)]
pub struct ZonotopeModel {
    generators: Vec<Vec<Rational>>,
    vertices: Vec<(SignVector, Vec<Rational>)>,
    /// Rays (one-dimensional faces) of the arrangement with exact witnesses;
    /// the extreme rays of every region cone are among them.
    rays: Vec<(SignVector, Vec<Rational>)>,
    dim: usize,
}

impl ZonotopeModel {
    /// One vertex `Σ σ_i η_i` per region.
    pub fn new(arr: &Arrangement, regions: &[Region]) -> Result<ZonotopeModel, ZonotopeError> {
        if !arr.is_essential() {
            return Err(ZonotopeError::NotEssential { rank: arr.rank(), dim: arr.dim() });
        }
        let generators = arr.normals();
        let vertices = regions.iter().map(|r| (r.signs.clone(), vertex_of(&generators, &r.signs, arr.dim()))).collect();
        let rays = enumerate_faces(arr).into_iter().filter(|f| f.dim == 1).map(|f| (f.cell, f.witness)).collect();
        Ok(ZonotopeModel { generators, vertices, rays, dim: arr.dim() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn vertices(&self) -> &[(SignVector, Vec<Rational>)] {
        &self.vertices
    }

    pub fn vertex(&self, region: &SignVector) -> Option<&[Rational]> {
        self.vertices.iter().find(|(s, _)| s == region).map(|(_, v)| v.as_slice())
    }

    /// Extreme rays of the closed region cone, as exact points.
    pub fn region_rays(&self, region: &SignVector) -> Vec<Vec<Rational>> {
        self.rays.iter().filter(|(s, _)| s.conforms_to(region)).map(|(_, w)| w.clone()).collect()
    }
}

fn vertex_of(generators: &[Vec<Rational>], signs: &SignVector, dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (g, s) in generators.iter().zip(signs.signs()) {
        match s {
            Sign::Plus => v.iter_mut().zip(g).for_each(|(vi, gi)| *vi += gi),
            Sign::Minus => v.iter_mut().zip(g).for_each(|(vi, gi)| *vi -= gi),
            Sign::Zero => {}
        }
    }
    v
}

/// Face numbers and angle sums of a zonotope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleProfile {
    /// `f_0 ..= f_d`, with `f_d = 1`.
    pub f: Vec<i64>,
    /// `α_0 ..= α_d`, with `α_d = 1`.
    pub alpha: Vec<Rational>,
}

/// Face numbers `f_0 ..= f_R` of any zonotope of the arrangement, where `R`
/// is the lattice rank:
/// `f_k = Σ_{ρ(x) = k} Σ_{y ≥ x} (−1)^{ρ(y) − ρ(x)} μ(x, y)`.
///
/// Works on truncated lattices too, which gives the face numbers of a
/// generic projection.
pub fn f_vector(lat: &IntersectionLattice) -> Result<Vec<i64>, ZonotopeError> {
    lat.require_essential()?;
    let mut f = vec![0i64; lat.rank() + 1];
    for x in 0..lat.len() {
        let rx = lat.rank_of(x);
        let s: i64 = (0..lat.len())
            .filter(|&y| lat.leq(x, y))
            .map(|y| if (lat.rank_of(y) - rx).is_multiple_of(2) { lat.mobius(x, y) } else { -lat.mobius(x, y) })
            .sum();
        f[rx] += s;
    }
    Ok(f)
}

/// Angle sums from equiprojectivity: `α_k = ½(f_k(Z) − f_k(Z′))` where `Z′`
/// is a generic projection, whose lattice is the truncation, and
/// `f_{d−1}(Z′)` is taken as zero.
pub fn angle_sums_perles_shephard(lat: &IntersectionLattice) -> Result<Vec<Rational>, ZonotopeError> {
    let f = f_vector(lat)?;
    let d = lat.rank();
    if d == 0 {
        return Ok(vec![rational::int(1)]);
    }
    let mut f_proj = f_vector(&lat.truncate()?)?;
    f_proj[d - 1] = 0;
    let mut alpha: Vec<Rational> = (0..d).map(|k| rational::frac(f[k] - f_proj[k], 2)).collect();
    alpha.push(rational::int(1));
    check_nonnegative(&alpha)?;
    Ok(alpha)
}

/// Angle sums as absolute coefficients of the order-dual characteristic
/// polynomial: `α_i = |Σ_{ρ(x) = i} μ(x, 1̂)|`.
pub fn angle_sums_dual(lat: &IntersectionLattice) -> Result<Vec<Rational>, ZonotopeError> {
    let dual = lat.dual_characteristic_polynomial()?;
    let alpha: Vec<Rational> = dual.coefficients().iter().map(|c| c.abs()).collect();
    check_nonnegative(&alpha)?;
    Ok(alpha)
}

fn check_nonnegative(alpha: &[Rational]) -> Result<(), ZonotopeError> {
    match alpha.iter().position(|a| a.is_negative()) {
        Some(index) => Err(ZonotopeError::NegativeAngleSum { index, value: rational::format(&alpha[index]) }),
        None => Ok(()),
    }
}

/// `(α_0 from the projection formula, |μ(0̂, 1̂)|)`; the two agree.
pub fn vertex_lemma_check(lat: &IntersectionLattice) -> Result<(Rational, Rational), ZonotopeError> {
    let alpha = angle_sums_perles_shephard(lat)?;
    let mu = rational::int(lat.mobius(lat.bottom(), lat.top()).abs());
    Ok((alpha[0].clone(), mu))
}

/// Face numbers and (projection-formula) angle sums together.
pub fn angle_profile(lat: &IntersectionLattice) -> Result<AngleProfile, ZonotopeError> {
    Ok(AngleProfile { f: f_vector(lat)?, alpha: angle_sums_perles_shephard(lat)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::enumerate_regions;
    use crate::rational::{frac, int};

    fn arr(normals: &[Vec<i64>], d: usize) -> Arrangement {
        Arrangement::from_integers(normals, d).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn vertices_of_three_lines_and_square() {
        let tl = arr(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2);
        let z = ZonotopeModel::new(&tl, &enumerate_regions(&tl)).unwrap();
        assert_eq!(z.vertex(&"+++".parse().unwrap()).unwrap(), ints(&[2, 2]).as_slice());
        for (s, v) in z.vertices() {
            let neg: Vec<Rational> = v.iter().map(|x| -x.clone()).collect();
            assert_eq!(z.vertex(&s.negate()).unwrap(), neg.as_slice());
        }

        let b2 = arr(&[vec![1, 0], vec![0, 1]], 2);
        let z = ZonotopeModel::new(&b2, &enumerate_regions(&b2)).unwrap();
        let mut vs: Vec<Vec<Rational>> = z.vertices().iter().map(|(_, v)| v.clone()).collect();
        vs.sort();
        assert_eq!(vs, vec![ints(&[-1, -1]), ints(&[-1, 1]), ints(&[1, -1]), ints(&[1, 1])]);
    }

    #[test]
    fn rejects_non_essential() {
        let braid = arr(&[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], 3);
        assert!(matches!(ZonotopeModel::new(&braid, &enumerate_regions(&braid)), Err(ZonotopeError::NotEssential { .. })));
        let lat = IntersectionLattice::build(&braid);
        assert!(f_vector(&lat).is_err());
    }

    #[test]
    fn face_numbers() {
        let lat = |n: &[Vec<i64>], d| IntersectionLattice::build(&arr(n, d));
        assert_eq!(f_vector(&lat(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2)).unwrap(), vec![6, 6, 1]);
        assert_eq!(f_vector(&lat(&[vec![1, 0], vec![0, 1]], 2)).unwrap(), vec![4, 4, 1]);
        assert_eq!(f_vector(&lat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3)).unwrap(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn angle_sums_agree() {
        let cases: Vec<(Vec<Vec<i64>>, usize, Vec<Rational>)> = vec![
            (vec![vec![1, 0], vec![0, 1], vec![1, 1]], 2, ints(&[2, 3, 1])),
            (vec![vec![1, 0], vec![0, 1]], 2, ints(&[1, 2, 1])),
            (vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3, ints(&[1, 3, 3, 1])),
            (vec![vec![1]], 1, ints(&[1, 1])),
        ];
        for (normals, d, want) in cases {
            let lat = IntersectionLattice::build(&arr(&normals, d));
            assert_eq!(angle_sums_perles_shephard(&lat).unwrap(), want);
            assert_eq!(angle_sums_dual(&lat).unwrap(), want);
            let (a0, mu) = vertex_lemma_check(&lat).unwrap();
            assert_eq!(a0, mu);
        }
    }

    #[test]
    fn facet_angle_sum_is_half_facet_count() {
        let lat = IntersectionLattice::build(&arr(&[vec![1, 2, 0], vec![0, 1, -1], vec![1, 0, 1], vec![2, -1, 1]], 3));
        let p = angle_profile(&lat).unwrap();
        assert_eq!(p.alpha[2], frac(p.f[2], 2));
        assert_eq!(p.alpha[3], int(1));
    }
}
