//! Intersection lattice `L(A)`, its Möbius function and characteristic
//! polynomials.
//!
//! Flats are ordered by reverse inclusion, so the bottom element is the
//! whole space and the top is the common intersection of all hyperplanes.
//! The lattice is graded by codimension.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice is not essential (rank {rank}, ambient dimension {dim})")]
    NotEssential { rank: usize, dim: usize },
    #[error("flat {0} is not in the lattice")]
    FlatNotFound(usize),
    #[error("operation needs a lattice of rank at least 1")]
    RankZero,
}

/// An element of `L(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    id: usize,
    /// RREF basis of the span of the normals of the hyperplanes containing
    /// this flat; canonical, so flat equality is basis equality.
    basis: Vec<Vec<Rational>>,
    dim: usize,
    hyperplanes: Vec<usize>,
}

impl Flat {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Dimension of the flat as a subspace of the ambient space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Indices of hyperplanes containing the flat, ascending.
    pub fn hyperplanes(&self) -> &[usize] {
        &self.hyperplanes
    }

    pub fn contains_hyperplane(&self, i: usize) -> bool {
        self.hyperplanes.binary_search(&i).is_ok()
    }
}

/// Characteristic polynomial, coefficients indexed by power of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coefficients: Vec<Rational>,
}

impl CharPoly {
    pub fn new(coefficients: Vec<Rational>) -> CharPoly {
        CharPoly { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Coefficient of `t^power`; zero outside the stored range.
    pub fn coefficient(&self, power: i64) -> Rational {
        if power < 0 {
            return Rational::zero();
        }
        self.coefficients.get(power as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn highest_first(&self) -> Vec<Rational> {
        self.coefficients.iter().rev().cloned().collect()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Leading coefficient one and signs strictly alternating downwards.
    pub fn alternates(&self) -> bool {
        let d = self.degree();
        self.coefficients.last().is_some_and(One::is_one)
            && self.coefficients.iter().enumerate().all(|(p, c)| {
                let want_positive = (d - p).is_multiple_of(2);
                if want_positive {
                    c.is_positive()
                } else {
                    c.is_negative()
                }
            })
    }

    pub fn abs_sum(&self) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, c| acc + c.abs())
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if mag.is_one() && p > 0 { String::new() } else { rational::format(&mag) };
            match p {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The intersection lattice with its order relation and full Möbius table.
///
/// Flat ids are positions in [`IntersectionLattice::flats`], sorted by rank
/// and then by hyperplane set, so id 0 is the bottom and the last id is the
/// top.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    flats: Vec<Flat>,
    ranks: Vec<usize>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<i64>>,
    truncated: bool,
}

impl IntersectionLattice {
    /// Breadth-first closure: start from the whole space and intersect
    /// known flats with single hyperplanes, deduplicating by RREF.
    pub fn build(arr: &Arrangement) -> IntersectionLattice {
        let d = arr.dim();
        let normals = arr.normals();
        let mut seen: HashMap<Vec<Vec<Rational>>, ()> = HashMap::new();
        let mut levels: Vec<Vec<Flat>> = vec![vec![Flat { id: 0, basis: Vec::new(), dim: d, hyperplanes: Vec::new() }]];
        seen.insert(Vec::new(), ());
        loop {
            let mut next: Vec<Flat> = Vec::new();
            for x in levels.last().unwrap() {
                for (i, n) in normals.iter().enumerate() {
                    if x.contains_hyperplane(i) {
                        continue;
                    }
                    let mut rows = x.basis.clone();
                    rows.push(n.clone());
                    let (basis, pivots) = linalg::rref(&rows, d);
                    if seen.contains_key(&basis) {
                        continue;
                    }
                    let hyperplanes = (0..normals.len()).filter(|&j| linalg::in_span(&basis, &pivots, &normals[j])).collect();
                    seen.insert(basis.clone(), ());
                    next.push(Flat { id: 0, dim: d - basis.len(), basis, hyperplanes });
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| a.hyperplanes.cmp(&b.hyperplanes));
            levels.push(next);
        }
        let mut flats: Vec<Flat> = levels.into_iter().flatten().collect();
        for (id, f) in flats.iter_mut().enumerate() {
            f.id = id;
        }
        let ranks = flats.iter().map(|f| d - f.dim).collect();
        IntersectionLattice::assemble(d, flats, ranks, false)
    }

    fn assemble(ambient_dim: usize, flats: Vec<Flat>, ranks: Vec<usize>, truncated: bool) -> IntersectionLattice {
        let n = flats.len();
        let leq: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| is_subset(&flats[i].hyperplanes, &flats[j].hyperplanes)).collect()).collect();
        // Ids are rank-sorted, so every z with x <= z < y has id below y.
        let mut mobius = vec![vec![0i64; n]; n];
        for x in 0..n {
            mobius[x][x] = 1;
            for y in x + 1..n {
                if !leq[x][y] {
                    continue;
                }
                let s: i64 = (x..y).filter(|&z| leq[x][z] && leq[z][y]).map(|z| mobius[x][z]).sum();
                mobius[x][y] = -s;
            }
        }
        IntersectionLattice { ambient_dim, flats, ranks, leq, mobius, truncated }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> Result<&Flat, LatticeError> {
        self.flats.get(id).ok_or(LatticeError::FlatNotFound(id))
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// `ρ(x)`, the codimension (overridden for truncated lattices).
    pub fn rank_of(&self, id: usize) -> usize {
        self.ranks[id]
    }

    /// Rank of the lattice, i.e. of the arrangement.
    pub fn rank(&self) -> usize {
        self.ranks[self.top()]
    }

    /// `dim x` measured inside the lattice's own ambient space.
    pub fn dim_of(&self, id: usize) -> usize {
        self.ambient_dim - self.ranks[id]
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// `μ(x, y)`; zero when `x` is not below `y`.
    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        self.mobius[x][y]
    }

    /// `μ(x) = μ(0̂, x)`.
    pub fn mobius_from_bottom(&self, x: usize) -> i64 {
        self.mobius[0][x]
    }

    /// Pairs `(x, y)` with `y` covering `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.leq[x][y] && self.ranks[y] == self.ranks[x] + 1 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Id of the flat with exactly this hyperplane set.
    pub fn find(&self, hyperplanes: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.hyperplanes == hyperplanes)
    }

    /// The flat spanned by the intersection of the given hyperplanes: the
    /// lowest flat whose hyperplane set contains them all.
    pub fn closure(&self, hyperplanes: &[usize]) -> usize {
        self.flats
            .iter()
            .filter(|f| is_subset(hyperplanes, &f.hyperplanes))
            .min_by_key(|f| self.ranks[f.id])
            .map(|f| f.id)
            .unwrap_or_else(|| self.top())
    }

    /// Poset-rank form `Σ μ(x) t^{r − ρ(x)}`, of degree `r`.
    pub fn characteristic_polynomial(&self) -> CharPoly {
        let r = self.rank();
        let mut c = vec![Rational::zero(); r + 1];
        for x in 0..self.len() {
            c[r - self.ranks[x]] += rational::int(self.mobius[0][x]);
        }
        CharPoly::new(c)
    }

    /// `(−1)^r χ(−1)`, the number of regions.
    pub fn region_count(&self) -> Rational {
        let v = self.characteristic_polynomial().eval(&rational::int(-1));
        if self.rank().is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    /// Characteristic polynomial of the order dual: the coefficient of
    /// `t^i` is `Σ_{ρ(x) = i} μ(x, 1̂)`.
    pub fn dual_characteristic_polynomial(&self) -> Result<CharPoly, LatticeError> {
        self.require_essential()?;
        let top = self.top();
        let mut c = vec![Rational::zero(); self.rank() + 1];
        for x in 0..self.len() {
            c[self.ranks[x]] += rational::int(self.mobius[x][top]);
        }
        Ok(CharPoly::new(c))
    }

    /// Removes all coatoms; the former top drops to rank `r − 1`. Models
    /// the lattice of a generic projection of the arrangement to one
    /// dimension lower.
    pub fn truncate(&self) -> Result<IntersectionLattice, LatticeError> {
        self.require_essential()?;
        let r = self.rank();
        if r == 0 {
            return Err(LatticeError::RankZero);
        }
        let top = self.top();
        let keep: Vec<usize> = (0..self.len()).filter(|&x| x == top || self.ranks[x] + 1 < r).collect();
        let ranks = keep.iter().map(|&x| if x == top { r - 1 } else { self.ranks[x] }).collect();
        Ok(self.sublattice(&keep, ranks, r - 1, true))
    }

    /// The interval `[0̂, x]`: the lattice of the hyperplanes containing
    /// `x`, viewed in the orthogonal complement of `x`.
    pub fn lower_interval(&self, x: usize) -> Result<IntersectionLattice, LatticeError> {
        if x >= self.len() {
            return Err(LatticeError::FlatNotFound(x));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&y| self.leq[y][x]).collect();
        let ranks = keep.iter().map(|&y| self.ranks[y]).collect();
        Ok(self.sublattice(&keep, ranks, self.ranks[x], self.truncated))
    }

    fn sublattice(&self, keep: &[usize], ranks: Vec<usize>, ambient_dim: usize, truncated: bool) -> IntersectionLattice {
        let flats = keep.iter().enumerate().map(|(id, &x)| Flat { id, ..self.flats[x].clone() }).collect();
        IntersectionLattice::assemble(ambient_dim, flats, ranks, truncated)
    }

    pub(crate) fn require_essential(&self) -> Result<(), LatticeError> {
        if self.is_essential() {
            Ok(())
        } else {
            Err(LatticeError::NotEssential { rank: self.rank(), dim: self.ambient_dim })
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}
