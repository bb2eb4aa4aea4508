//! Seeded instance generator.
//!
//! All randomness comes from SplitMix64 (state = seed, increment
//! `0x9E3779B97F4A7C15`, output mix constants `0xBF58476D1CE4E5B9` and
//! `0x94D049BB133111EB`). A draw from `1..=k` is `1 + next % k`; every value
//! below is drawn in the order listed, so other implementations can
//! reproduce the instances exactly.
//!
//! - `uniform`: per item `w = draw(wmax)`, then `p = draw(pmax)`.
//! - `clustered`: first `min(4, wmax)` centers `draw(wmax)`; per item a
//!   center `centers[next % K]`, `w = clamp(center − s + next % (2s+1))`
//!   with `s = max(1, wmax/16)`, and
//!   `p = clamp(⌊w·pmax/wmax⌋ − s' + next % (2s'+1))` with
//!   `s' = max(1, pmax/10)`, both clamped to `[1, max]`.
//! - `hard-equal-weights`: first `min(3, wmax)` weights `draw(wmax)`; per
//!   item `w = weights[next % K]`, then `p = draw(pmax)`.
//!
//! The capacity is `⌊t_frac · Σw⌋`.

use clap::ValueEnum;
use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::io::InstanceFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Dist {
    Uniform,
    Clustered,
    HardEqualWeights,
}

impl Dist {
    pub const ALL: [Dist; 3] = [Dist::Uniform, Dist::Clustered, Dist::HardEqualWeights];
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub wmax: u64,
    pub pmax: u64,
    pub t_frac: f64,
    pub seed: u64,
    pub dist: Dist,
}

/// The generator's random source.
pub struct Draws(SplitMix64);

impl Draws {
    pub fn new(seed: u64) -> Draws {
        Draws(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw from `1..=k`.
    pub fn draw(&mut self, k: u64) -> u64 {
        1 + self.next_u64() % k
    }

    /// Draw from `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }

    /// Draw from `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn clamp(v: i128, max: u64) -> u64 {
    v.clamp(1, max as i128) as u64
}

pub fn generate(params: &GenParams) -> InstanceFile {
    assert!(params.wmax >= 1 && params.pmax >= 1, "wmax and pmax must be positive");
    let GenParams { n, wmax, pmax, .. } = *params;
    let mut rng = Draws::new(params.seed);
    let mut items = Vec::with_capacity(n);
    match params.dist {
        Dist::Uniform => {
            for _ in 0..n {
                let w = rng.draw(wmax);
                let p = rng.draw(pmax);
                items.push((w, p));
            }
        }
        Dist::Clustered => {
            let centers: Vec<u64> = (0..wmax.min(4)).map(|_| rng.draw(wmax)).collect();
            let s = (wmax / 16).max(1);
            let sp = (pmax / 10).max(1);
            for _ in 0..n {
                let c = centers[(rng.next_u64() % centers.len() as u64) as usize];
                let w = clamp(c as i128 - s as i128 + (rng.next_u64() % (2 * s + 1)) as i128, wmax);
                let base = (w as u128 * pmax as u128 / wmax as u128) as i128;
                let p = clamp(base - sp as i128 + (rng.next_u64() % (2 * sp + 1)) as i128, pmax);
                items.push((w, p));
            }
        }
        Dist::HardEqualWeights => {
            let weights: Vec<u64> = (0..wmax.min(3)).map(|_| rng.draw(wmax)).collect();
            for _ in 0..n {
                let w = weights[(rng.next_u64() % weights.len() as u64) as usize];
                let p = rng.draw(pmax);
                items.push((w, p));
            }
        }
    }
    let total: u64 = items.iter().map(|&(w, _)| w).sum();
    let capacity = (params.t_frac * total as f64).floor().max(0.0) as u64;
    InstanceFile::new(capacity, items)
}
