//! Projection volumes `ν_k`: the fraction of directions whose projection
//! onto a cone lands in the relative interior of a `k`-dimensional face.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::project::Projector;
use super::sampling::{chunks, DirectionStream};
use super::{dot_f, Cone, ConeError, Mask, DEFAULT_TOL};
use crate::arrangement::SignVector;
use crate::rational;
use crate::zonotope::ZonotopeModel;

/// Monte Carlo estimate of `ν_0 ..= ν_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub nu: Vec<f64>,
    pub counts: Vec<u64>,
    pub samples: u64,
    /// Binomial standard errors `sqrt(ν̂(1 − ν̂)/n)`.
    pub stderr: Vec<f64>,
    pub seed: u64,
}

impl VolumeEstimate {
    pub fn from_counts(counts: Vec<u64>, samples: u64, seed: u64) -> VolumeEstimate {
        let n = samples as f64;
        let nu: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
        let stderr = nu.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
        VolumeEstimate { nu, counts, samples, stderr, seed }
    }
}

/// Histogram of tight-constraint masks over `n` sampled directions.
///
/// Deterministic in `(seed, stream, n)` whatever the thread count: chunks
/// are independent and counts are merged by exact integer addition.
pub fn mask_histogram(cone: &Cone, n: u64, seed: u64, stream: u64, tol: f64) -> Result<BTreeMap<Mask, u64>, ConeError> {
    cone.check_sampling_size()?;
    let d = cone.dim();
    chunks(n)
        .map(|(chunk, count)| {
            let mut projector = Projector::new(cone);
            let mut dirs = DirectionStream::new(seed, stream, chunk);
            let mut z = vec![0.0; d];
            let mut hist = BTreeMap::new();
            for _ in 0..count {
                dirs.next_into(&mut z);
                projector.project(&z)?;
                *hist.entry(projector.tight_mask(tol)).or_insert(0u64) += 1;
            }
            Ok(hist)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })
}

/// `estimate_volumes_mc_with` on stream 0 with the default tolerance.
pub fn estimate_volumes_mc(cone: &Cone, n: u64, seed: u64) -> Result<VolumeEstimate, ConeError> {
    estimate_volumes_mc_with(cone, n, seed, 0, DEFAULT_TOL)
}

pub fn estimate_volumes_mc_with(cone: &Cone, n: u64, seed: u64, stream: u64, tol: f64) -> Result<VolumeEstimate, ConeError> {
    if n == 0 {
        return Err(ConeError::NoSamples);
    }
    let hist = mask_histogram(cone, n, seed, stream, tol)?;
    let mut counts = vec![0u64; cone.dim() + 1];
    for (mask, c) in hist {
        counts[cone.face_dim_of_mask(mask)] += c;
    }
    Ok(VolumeEstimate::from_counts(counts, n, seed))
}

/// Closed-form projection volumes of a cone whose normals span rank ≤ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Profile {
    /// `ν_0 ..= ν_d`.
    pub nu: Vec<f64>,
    /// Volume attributed to each face, keyed by its tight mask.
    pub faces: Vec<(Mask, f64)>,
    /// Angle fraction of the cone's pointed part (of the full circle).
    pub alpha: f64,
}

/// A pointed planar cone of angle fraction `α` has `ν₂ = α`, `ν₁ = ½`
/// (a quarter for each boundary ray) and `ν₀ = ½ − α`. A lineality space of
/// dimension `ℓ` shifts every index up by `ℓ`.
pub fn exact_volumes_rank2(cone: &Cone) -> Result<Rank2Profile, ConeError> {
    let rank = cone.normal_rank();
    let m = cone.len();
    let all: Mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let (faces, alpha) = match rank {
        0 => (vec![(0, 1.0)], 1.0),
        1 => (vec![(0, 0.5), (all, 0.5)], 0.5),
        2 => {
            let (rays, theta) = extreme_rays_2d(cone)?;
            let alpha = theta / std::f64::consts::TAU;
            (vec![(0, alpha), (rays[0], 0.25), (rays[1], 0.25), (all, 0.5 - alpha)], alpha)
        }
        r => return Err(ConeError::NotRank2 { rank: r }),
    };
    let mut nu = vec![0.0; cone.dim() + 1];
    for &(mask, v) in &faces {
        nu[cone.face_dim_of_mask(mask)] += v;
    }
    Ok(Rank2Profile { nu, faces, alpha })
}

/// Tight masks of the two extreme rays and the opening angle, computed in
/// the plane spanned by the normals.
fn extreme_rays_2d(cone: &Cone) -> Result<([Mask; 2], f64), ConeError> {
    const TOL: f64 = 1e-9;
    let m = cone.len();
    let d = cone.dim();
    let unit = |v: &[f64]| {
        let n = dot_f(v, v).sqrt();
        v.iter().map(|x| x / n).collect::<Vec<f64>>()
    };
    let e1 = unit(cone.normal(0));
    let e2 = (1..m)
        .find_map(|i| {
            let a = cone.normal(i);
            let c = dot_f(a, &e1);
            let r: Vec<f64> = (0..d).map(|k| a[k] - c * e1[k]).collect();
            (dot_f(&r, &r).sqrt() > TOL * cone.normal_norm(i)).then(|| unit(&r))
        })
        .ok_or(ConeError::NotRank2 { rank: 1 })?;
    let planar: Vec<[f64; 2]> = (0..m).map(|i| [dot_f(cone.normal(i), &e1), dot_f(cone.normal(i), &e2)]).collect();
    let norm2 = |v: &[f64; 2]| (v[0] * v[0] + v[1] * v[1]).sqrt();

    let mut rays: Vec<[f64; 2]> = Vec::new();
    for a in &planar {
        let n = norm2(a);
        for s in [1.0, -1.0] {
            let r = [-a[1] * s / n, a[0] * s / n];
            if planar.iter().all(|b| b[0] * r[0] + b[1] * r[1] >= -TOL * norm2(b)) {
                rays.push(r);
            }
        }
    }
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (u, v) = (rays[i], rays[j]);
            let theta = (u[0] * v[1] - u[1] * v[0]).abs().atan2(u[0] * v[0] + u[1] * v[1]);
            if best.is_none_or(|(_, _, t)| theta > t) {
                best = Some((i, j, theta));
            }
        }
    }
    let (i, j, theta) = best.ok_or(ConeError::NotFullDimensional)?;
    let mask_of = |r: &[f64; 2]| -> Mask {
        planar.iter().enumerate().filter(|(_, b)| (b[0] * r[0] + b[1] * r[1]).abs() <= TOL * norm2(b)).fold(0, |acc, (k, _)| acc | 1 << k)
    };
    Ok(([mask_of(&rays[i]), mask_of(&rays[j])], theta))
}

/// Monte Carlo estimate of a single solid-angle fraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolidAngleEstimate {
    pub fraction: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Fraction of directions inside the normal cone `cone{−s_i η_i}` of a
/// region, which is the normal cone of the matching zonotope vertex.
///
/// Membership is tested against the region's extreme rays `ρ`
/// (`u·ρ <= 0` for all of them), independently of the projection code.
pub fn normal_cone_solid_angle(zono: &ZonotopeModel, region: &SignVector, n: u64, seed: u64) -> Result<SolidAngleEstimate, ConeError> {
    if n == 0 {
        return Err(ConeError::NoSamples);
    }
    let d = zono.dim();
    let rays: Vec<Vec<f64>> = zono
        .region_rays(region)
        .iter()
        .map(|r| {
            let v: Vec<f64> = r.iter().map(rational::to_f64).collect();
            let n = dot_f(&v, &v).sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
        .collect();
    let hits: u64 = chunks(n)
        .map(|(chunk, count)| {
            let mut dirs = DirectionStream::new(seed, 0, chunk);
            let mut u = vec![0.0; d];
            let mut hits = 0u64;
            for _ in 0..count {
                dirs.next_into(&mut u);
                if rays.iter().all(|r| dot_f(r, &u) <= 0.0) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let fraction = hits as f64 / n as f64;
    Ok(SolidAngleEstimate { fraction, stderr: (fraction * (1.0 - fraction) / n as f64).sqrt(), hits, samples: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_regions, Arrangement};

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn rank2_closed_forms() {
        let quadrant = Cone::from_integers(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        let p = exact_volumes_rank2(&quadrant).unwrap();
        assert!(approx(p.nu[0], 0.25) && approx(p.nu[1], 0.5) && approx(p.nu[2], 0.25));

        let half = Cone::from_integers(&[vec![1, 0]], 2).unwrap();
        let p = exact_volumes_rank2(&half).unwrap();
        assert_eq!(p.nu, vec![0.0, 0.5, 0.5]);

        let octant = Cone::from_integers(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3).unwrap();
        assert_eq!(exact_volumes_rank2(&octant).unwrap_err(), ConeError::NotRank2 { rank: 3 });
    }

    #[test]
    fn rank2_with_lineality_shifts_indices() {
        // Quadrant times a line in R^3.
        let c = Cone::from_integers(&[vec![1, 0, 0], vec![0, 1, 0]], 3).unwrap();
        let p = exact_volumes_rank2(&c).unwrap();
        assert!(approx(p.nu[1], 0.25) && approx(p.nu[2], 0.5) && approx(p.nu[3], 0.25));
        assert_eq!(p.nu[0], 0.0);
    }

    #[test]
    fn mc_sums_to_one_and_is_seeded() {
        let c = Cone::from_integers(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]], 3).unwrap();
        let a = estimate_volumes_mc(&c, 20_000, 5).unwrap();
        let b = estimate_volumes_mc(&c, 20_000, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 20_000);
        assert!(a.nu.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert_eq!(estimate_volumes_mc(&c, 0, 1).unwrap_err(), ConeError::NoSamples);
    }

    #[test]
    fn normal_cone_of_quadrant() {
        let b2 = Arrangement::from_integers(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        let z = ZonotopeModel::new(&b2, &enumerate_regions(&b2)).unwrap();
        let e = normal_cone_solid_angle(&z, &"++".parse().unwrap(), 100_000, 1).unwrap();
        assert!((e.fraction - 0.25).abs() < 4.0 * e.stderr);
    }
}
