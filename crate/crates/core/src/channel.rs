//! Channel realizations: one row 2-vector per receiver per slot.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::Error;

pub type Vec2 = [Complex64; 2];

/// Norm below which a channel vector counts as zero.
pub const DEGENERATE_NORM: f64 = 1e-12;
/// Extra draws attempted for a degenerate vector before giving up.
pub const MAX_REDRAWS: usize = 8;

/// `H(t)` (to receiver 1) and `G(t)` (to receiver 2) for every slot.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    h: Vec<Vec2>,
    g: Vec<Vec2>,
}

impl ChannelRealization {
    pub fn new(h: Vec<Vec2>, g: Vec<Vec2>) -> Result<Self, Error> {
        if h.len() != g.len() {
            return Err(Error::DegenerateChannel(format!(
                "{} slots for receiver 1 but {} for receiver 2",
                h.len(),
                g.len()
            )));
        }
        for (t, (hv, gv)) in h.iter().zip(&g).enumerate() {
            for (rx, v) in [(1, hv), (2, gv)] {
                if norm(v) < DEGENERATE_NORM {
                    return Err(Error::DegenerateChannel(format!(
                        "receiver {rx} channel at slot {} is zero",
                        t + 1
                    )));
                }
            }
        }
        Ok(ChannelRealization { h, g })
    }

    pub fn slots(&self) -> usize {
        self.h.len()
    }

    /// Channel of receiver `rx` (0 or 1) at slot `t` (0-based).
    pub fn get(&self, rx: usize, t: usize) -> Vec2 {
        if rx == 0 {
            self.h[t]
        } else {
            self.g[t]
        }
    }

    pub fn h(&self) -> &[Vec2] {
        &self.h
    }

    pub fn g(&self) -> &[Vec2] {
        &self.g
    }

    /// Same draw with the receivers exchanged.
    pub fn swapped(&self) -> ChannelRealization {
        ChannelRealization {
            h: self.g.clone(),
            g: self.h.clone(),
        }
    }

    /// Overwrites one complex entry; used to probe which channels a transmit
    /// rule depends on.
    pub fn with_entry(&self, rx: usize, t: usize, antenna: usize, value: Complex64) -> Self {
        let mut out = self.clone();
        if rx == 0 {
            out.h[t][antenna] = value;
        } else {
            out.g[t][antenna] = value;
        }
        out
    }
}

pub fn norm(v: &Vec2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn draw_vector(rng: &mut ChaCha20Rng) -> Result<Vec2, Error> {
    for _ in 0..=MAX_REDRAWS {
        let v = [gaussian(rng), gaussian(rng)];
        if norm(&v) >= DEGENERATE_NORM {
            return Ok(v);
        }
    }
    Err(Error::DegenerateChannel(format!(
        "channel vector still zero after {MAX_REDRAWS} redraws"
    )))
}

/// `n_slots` i.i.d. slots of unit-variance circularly-symmetric complex
/// Gaussian entries. Deterministic in `seed`.
pub fn draw_channels(seed: u64, n_slots: usize) -> Result<ChannelRealization, Error> {
    if n_slots == 0 {
        return Err(Error::InvalidConfig("need at least one slot".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut h = Vec::with_capacity(n_slots);
    let mut g = Vec::with_capacity(n_slots);
    for _ in 0..n_slots {
        h.push(draw_vector(&mut rng)?);
        g.push(draw_vector(&mut rng)?);
    }
    ChannelRealization::new(h, g)
}

/// SplitMix64 finalizer; derives independent per-trial seeds from one base seed.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
