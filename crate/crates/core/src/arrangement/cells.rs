//! Regions and faces of a central arrangement as sign vectors.
//!
//! Chambers are found by incremental insertion: hyperplanes are added one
//! at a time and a chamber is split exactly when the new hyperplane meets
//! it. Whether `H_j` meets a chamber is decided by recursing into the
//! restriction of the earlier hyperplanes to `H_j`: the chambers of that
//! restriction are precisely the pieces `C ∩ H_j` of the chambers `C` that
//! get cut. Every chamber carries an exact rational interior point.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::{Arrangement, ArrangementError, Hyperplane};
use crate::cone::Cone;
use crate::lattice::IntersectionLattice;
use crate::linalg;
use crate::rational::{self, dot, Rational, Sign};

/// A covector: one sign per hyperplane, in arrangement order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> SignVector {
        SignVector(signs)
    }

    /// Signs of `point` against every normal.
    pub fn of_point(normals: &[Vec<Rational>], point: &[Rational]) -> SignVector {
        SignVector(normals.iter().map(|n| Sign::of(&dot(n, point))).collect())
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    pub fn zero_set(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &s)| s == Sign::Zero).map(|(i, _)| i).collect()
    }

    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.negate()).collect())
    }

    /// `self` is a face of `other`: every nonzero sign of `self` agrees.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == Sign::Zero || a == b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| ArrangementError::Parse(format!("bad sign {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

/// A chamber together with an exact interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub signs: SignVector,
    pub witness: Vec<Rational>,
}

/// A relatively open cell of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub cell: SignVector,
    /// Hyperplanes containing the face; their intersection is its linear span.
    pub zero_set: Vec<usize>,
    pub dim: usize,
    /// Exact point in the relative interior.
    pub witness: Vec<Rational>,
}

/// Witness points, one per chamber, of the arrangement cut out by `normals`
/// in `R^dim`. Normals may repeat or be parallel; zero normals are ignored.
pub fn regions_of_normals(normals: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut distinct: Vec<Vec<Rational>> = Vec::new();
    for n in normals {
        if let Some((h, _)) = Hyperplane::new(n) {
            if !distinct.contains(&h.normal) {
                distinct.push(h.normal);
            }
        }
    }
    chamber_witnesses(&distinct, dim)
}

fn chamber_witnesses(normals: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut cells: Vec<Vec<Rational>> = vec![vec![Rational::zero(); dim]];
    for (j, h) in normals.iter().enumerate() {
        let prev = &normals[..j];
        let basis = linalg::nullspace(std::slice::from_ref(h), dim);
        let restricted: Vec<Vec<Rational>> = prev.iter().map(|p| basis.iter().map(|b| dot(p, b)).collect()).collect();

        let mut cut: HashMap<SignVector, Vec<Rational>> = HashMap::new();
        for w in regions_of_normals(&restricted, basis.len()) {
            let mut y = vec![Rational::zero(); dim];
            for (c, b) in w.iter().zip(&basis) {
                for (yi, bi) in y.iter_mut().zip(b) {
                    *yi += c * bi;
                }
            }
            cut.insert(SignVector::of_point(prev, &y), y);
        }

        let mut next = Vec::with_capacity(cells.len() + cut.len());
        for w in cells {
            let s = SignVector::of_point(prev, &w);
            match cut.get(&s) {
                Some(y) => {
                    let eps = push_off_distance(prev, h, y);
                    for sign in [1, -1] {
                        let step = &eps * rational::int(sign);
                        let p: Vec<Rational> = y.iter().zip(h).map(|(yi, hi)| yi + &step * hi).collect();
                        next.push(rational::primitive_integer(&p));
                    }
                }
                None => next.push(w),
            }
        }
        cells = next;
    }
    cells
}

/// Largest convenient `eps` such that `y ± eps·h` keeps the signs `y` has
/// against every earlier normal.
fn push_off_distance(prev: &[Vec<Rational>], h: &[Rational], y: &[Rational]) -> Rational {
    let mut eps = rational::int(1);
    for p in prev {
        let ph = dot(p, h);
        if !ph.is_zero() {
            let bound = dot(p, y).abs() / (ph.abs() * rational::int(2));
            if bound < eps {
                eps = bound;
            }
        }
    }
    eps
}

/// All chambers, sorted by sign string (`+ < 0 < -`).
pub fn enumerate_regions(arr: &Arrangement) -> Vec<Region> {
    let normals = arr.normals();
    let mut regions: Vec<Region> = chamber_witnesses(&normals, arr.dim())
        .into_iter()
        .map(|w| Region { signs: SignVector::of_point(&normals, &w), witness: w })
        .collect();
    regions.sort_by(|a, b| a.signs.cmp(&b.signs));
    regions
}

/// All faces, sorted by dimension and then by sign string.
///
/// Each flat `x` contributes the chambers of the restriction of the
/// arrangement to `x`; those are exactly the faces whose span is `x`.
pub fn enumerate_faces(arr: &Arrangement) -> Vec<Face> {
    let lattice = IntersectionLattice::build(arr);
    let normals = arr.normals();
    let mut faces = Vec::new();
    for flat in lattice.flats() {
        let basis = linalg::nullspace(flat.basis(), arr.dim());
        let outside: Vec<usize> = (0..arr.len()).filter(|i| !flat.contains_hyperplane(*i)).collect();
        let restricted: Vec<Vec<Rational>> = outside.iter().map(|&i| basis.iter().map(|b| dot(&normals[i], b)).collect()).collect();
        for w in regions_of_normals(&restricted, basis.len()) {
            let mut y = vec![Rational::zero(); arr.dim()];
            for (c, b) in w.iter().zip(&basis) {
                for (yi, bi) in y.iter_mut().zip(b) {
                    *yi += c * bi;
                }
            }
            let y = rational::primitive_integer(&y);
            faces.push(Face {
                cell: SignVector::of_point(&normals, &y),
                zero_set: flat.hyperplanes().to_vec(),
                dim: flat.dim(),
                witness: y,
            });
        }
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.cell.cmp(&b.cell)));
    faces
}

/// The closed cone `{y : s_i η_i · y >= 0}` of a region.
pub fn region_cone(arr: &Arrangement, region: &SignVector) -> Result<Cone, ArrangementError> {
    let not_region = || ArrangementError::NotARegion(region.to_string());
    if region.len() != arr.len() || !region.is_full() {
        return Err(not_region());
    }
    let found = enumerate_regions(arr).into_iter().find(|r| &r.signs == region).ok_or_else(not_region)?;
    let inward: Vec<Vec<Rational>> = arr
        .normals()
        .into_iter()
        .zip(region.signs())
        .map(|(n, s)| if *s == Sign::Minus { n.into_iter().map(|x| -x).collect() } else { n })
        .collect();
    Cone::from_exact(inward, None, Some(found.witness)).map_err(|e| ArrangementError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(normals: &[Vec<i64>], d: usize) -> Arrangement {
        Arrangement::from_integers(normals, d).unwrap()
    }

    fn three_lines() -> Arrangement {
        arr(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2)
    }

    #[test]
    fn region_counts() {
        assert_eq!(enumerate_regions(&three_lines()).len(), 6);
        let b3 = arr(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        let regions = enumerate_regions(&b3);
        assert_eq!(regions.len(), 8);
        assert_eq!(regions[0].signs.to_string(), "+++");
        assert_eq!(regions[7].signs.to_string(), "---");
        let braid = arr(&[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], 3);
        assert_eq!(enumerate_regions(&braid).len(), 6);
    }

    #[test]
    fn witnesses_reproduce_signs() {
        let a = arr(&[vec![1, 2, 0], vec![0, 1, -1], vec![1, 0, 1], vec![2, -1, 1]], 3);
        let normals = a.normals();
        for r in enumerate_regions(&a) {
            assert!(r.signs.is_full());
            assert_eq!(SignVector::of_point(&normals, &r.witness), r.signs);
        }
        for f in enumerate_faces(&a) {
            assert_eq!(SignVector::of_point(&normals, &f.witness), f.cell);
            assert_eq!(f.cell.zero_set(), f.zero_set);
        }
    }

    #[test]
    fn face_counts() {
        let faces = enumerate_faces(&three_lines());
        assert_eq!(faces.len(), 13);
        let by_dim = |k| faces.iter().filter(|f| f.dim == k).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (1, 6, 6));

        assert_eq!(enumerate_faces(&arr(&[vec![1, 0], vec![0, 1]], 2)).len(), 9);
        assert_eq!(enumerate_faces(&arr(&[vec![1]], 1)).len(), 3);
    }

    #[test]
    fn empty_arrangement_has_one_region() {
        let e = arr(&[], 2);
        let regions = enumerate_regions(&e);
        assert_eq!(regions.len(), 1);
        assert!(regions[0].signs.is_empty());
    }

    #[test]
    fn sign_vector_parse_and_order() {
        let a: SignVector = "+0-".parse().unwrap();
        assert_eq!(a.to_string(), "+0-");
        assert!("+x".parse::<SignVector>().is_err());
        let b: SignVector = "++-".parse().unwrap();
        assert!(b < a);
        assert!(a.conforms_to(&"+--".parse().unwrap()));
    }

    #[test]
    fn region_cone_rejects_non_regions() {
        let tl = three_lines();
        assert!(region_cone(&tl, &"++0".parse().unwrap()).is_err());
        // x > 0, y < 0 forces nothing on x + y, but x < 0, y < 0, x + y > 0 is empty.
        assert!(region_cone(&tl, &"--+".parse().unwrap()).is_err());
        let c = region_cone(&tl, &"+++".parse().unwrap()).unwrap();
        assert_eq!(c.len(), 3);
    }
}
