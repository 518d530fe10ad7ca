//! Named arrangement families.
//!
//! Spec strings: `boolean:D`, `braid:N`, `threelines`,
//! `random:m=M,d=D,seed=S,range=R` (or positionally `random:M,D,S,R`;
//! `range` defaults to 5).

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::arrangement::{Arrangement, Hyperplane};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Coordinate hyperplanes of `R^d`.
    Boolean { d: usize },
    /// `x_i = x_j` for `i < j` in `R^n`.
    Braid { n: usize },
    /// `x = 0`, `y = 0`, `x + y = 0` in the plane.
    ThreeLines,
    /// `m` distinct integer normals with entries in `[-range, range]`,
    /// redrawn until the rank is `min(m, d)`.
    Random { m: usize, d: usize, seed: u64, range: i64 },
}

const MAX_DRAWS: usize = 10_000;

pub fn generate(spec: &GeneratorSpec) -> Result<Arrangement, VerifyError> {
    let bad = |msg: &str| VerifyError::BadSpec(format!("{spec}: {msg}"));
    match *spec {
        GeneratorSpec::Boolean { d } => {
            if d == 0 {
                return Err(bad("dimension must be positive"));
            }
            let normals: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
            Ok(Arrangement::from_integers(&normals, d)?)
        }
        GeneratorSpec::Braid { n } => {
            if n < 2 {
                return Err(bad("need at least two coordinates"));
            }
            let mut normals = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[j] = -1;
                    normals.push(v);
                }
            }
            Ok(Arrangement::from_integers(&normals, n)?)
        }
        GeneratorSpec::ThreeLines => Ok(Arrangement::from_integers(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2)?),
        GeneratorSpec::Random { m, d, seed, range } => {
            if m == 0 || d == 0 || range < 1 {
                return Err(bad("m, d and range must be positive"));
            }
            // Distinct lines through lattice points of the box.
            let width = (2 * range + 1) as f64;
            if (m as f64) > (width.powi(d as i32) - 1.0) / 2.0 {
                return Err(bad("range too small for that many distinct hyperplanes"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let want_rank = m.min(d);
            for _ in 0..MAX_DRAWS {
                let mut normals: Vec<Vec<i64>> = Vec::with_capacity(m);
                let mut seen: Vec<Hyperplane> = Vec::with_capacity(m);
                while normals.len() < m {
                    let v: Vec<i64> = (0..d).map(|_| uniform_in(&mut rng, range)).collect();
                    let q: Vec<_> = v.iter().map(|&x| rational::int(x)).collect();
                    let Some((h, _)) = Hyperplane::new(&q) else { continue };
                    if !seen.contains(&h) {
                        seen.push(h);
                        normals.push(v);
                    }
                }
                let arr = Arrangement::from_integers(&normals, d)?;
                if arr.rank() == want_rank {
                    return Ok(arr);
                }
            }
            Err(bad("could not draw a full-rank arrangement"))
        }
    }
}

/// Uniform integer in `[-range, range]` by rejection.
fn uniform_in(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    let width = (2 * range + 1) as u64;
    let zone = u64::MAX - u64::MAX % width;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % width) as i64 - range;
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Boolean { d } => write!(f, "boolean:{d}"),
            GeneratorSpec::Braid { n } => write!(f, "braid:{n}"),
            GeneratorSpec::ThreeLines => write!(f, "threelines"),
            GeneratorSpec::Random { m, d, seed, range } => write!(f, "random:m={m},d={d},seed={seed},range={range}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || VerifyError::BadSpec(s.to_string());
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let num = |p: &str| p.trim().parse::<usize>().map_err(|_| bad());
        match family {
            "boolean" => Ok(GeneratorSpec::Boolean { d: num(params)? }),
            "braid" => Ok(GeneratorSpec::Braid { n: num(params)? }),
            "threelines" if params.is_empty() => Ok(GeneratorSpec::ThreeLines),
            "random" => {
                let (mut m, mut d, mut seed, mut range) = (None, None, None, Some(5i64));
                for (pos, part) in params.split(',').enumerate() {
                    let (key, value) = match part.split_once('=') {
                        Some((k, v)) => (k.trim(), v.trim()),
                        None => (["m", "d", "seed", "range"].get(pos).copied().ok_or_else(bad)?, part.trim()),
                    };
                    match key {
                        "m" => m = Some(num(value)?),
                        "d" => d = Some(num(value)?),
                        "seed" => seed = Some(value.parse::<u64>().map_err(|_| bad())?),
                        "range" => range = Some(value.parse::<i64>().map_err(|_| bad())?),
                        _ => return Err(bad()),
                    }
                }
                Ok(GeneratorSpec::Random {
                    m: m.ok_or_else(bad)?,
                    d: d.ok_or_else(bad)?,
                    seed: seed.ok_or_else(bad)?,
                    range: range.ok_or_else(bad)?,
                })
            }
            _ => Err(bad()),
        }
    }
}
