//! Reproducible uniform directions on the sphere.
//!
//! Sample `i` of stream `s` under seed `seed` is a pure function of
//! `(seed, s, i)`: samples are grouped in chunks of [`CHUNK_SIZE`], and
//! chunk `c` draws from ChaCha8 keyed by `(seed, s)` on stream `c`. Any
//! split of the chunks across threads therefore sees the same numbers.
//!
//! Gaussian deviates use the Box–Muller transform on pairs of 53-bit
//! uniforms `u = (x >> 11) · 2⁻⁵³`:
//! `r = sqrt(−2 ln(1 − u₁))`, `(r cos 2πu₂, r sin 2πu₂)`.
//! Each sample consumes exactly `ceil(d / 2)` pairs; an odd dimension drops
//! the last sine. The vector is then normalized.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CHUNK_SIZE: u64 = 4096;

/// Sequential reader of one chunk's directions.
pub struct DirectionStream {
    rng: ChaCha8Rng,
}

impl DirectionStream {
    pub fn new(seed: u64, stream: u64, chunk: u64) -> DirectionStream {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&stream.to_le_bytes());
        key[16..24].copy_from_slice(b"arrlab\0\0");
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(chunk);
        DirectionStream { rng }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Writes the next unit direction into `out`.
    pub fn next_into(&mut self, out: &mut [f64]) {
        let d = out.len();
        let mut k = 0;
        while k < d {
            let u1 = self.uniform();
            let u2 = self.uniform();
            let r = (-2.0 * (1.0 - u1).ln()).sqrt();
            let theta = std::f64::consts::TAU * u2;
            out[k] = r * theta.cos();
            if k + 1 < d {
                out[k + 1] = r * theta.sin();
            }
            k += 2;
        }
        let norm = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            out.iter_mut().for_each(|x| *x /= norm);
        } else if d > 0 {
            out.fill(0.0);
            out[0] = 1.0;
        }
    }
}

/// Direction number `index` of `(seed, stream)`, computed from scratch.
pub fn fill_direction(seed: u64, stream: u64, index: u64, out: &mut [f64]) {
    let mut s = DirectionStream::new(seed, stream, index / CHUNK_SIZE);
    for _ in 0..index % CHUNK_SIZE {
        s.next_into(out);
    }
    s.next_into(out);
}

/// `(chunk index, samples in chunk)` for every chunk covering `n` samples.
pub(crate) fn chunks(n: u64) -> impl rayon::iter::ParallelIterator<Item = (u64, u64)> {
    use rayon::prelude::*;
    let nchunks = n.div_ceil(CHUNK_SIZE);
    (0..nchunks).into_par_iter().map(move |c| (c, CHUNK_SIZE.min(n - c * CHUNK_SIZE)))
}
