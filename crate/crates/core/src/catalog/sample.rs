//! Deterministic, domain-respecting parameter sampling.
//!
//! Points come from ChaCha8 seeded with `seed` mixed with the FNV-1a hash of the
//! identity id, so every `(id, seed)` pair maps to the same point on every
//! platform.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{get, Sampler};
use crate::error::{QcfError, Result};
use crate::qseries::{Complex, ParameterPoint, Precision, Sym};

/// Minimum distance from every domain boundary and pole for sampled points.
pub const SAMPLE_MARGIN: f64 = 1e-3;
pub const SAMPLE_ATTEMPTS: usize = 1000;

const Q_RANGE: (f64, f64) = (0.05, 0.5);
const FREE_RANGE: (f64, f64) = (0.05, 0.7);

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Random source handed to custom samplers.
pub struct Draw {
    rng: ChaCha8Rng,
    pub prec: Precision,
    pub seed: u64,
}

impl Draw {
    fn new(id: &str, seed: u64, prec: Precision) -> Self {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(fnv1a(id) ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            prec,
            seed,
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn phase(&mut self) -> f64 {
        self.rng.gen_range(0.0..TAU)
    }

    pub fn polar(&mut self, lo: f64, hi: f64) -> Complex {
        let r = self.uniform(lo, hi);
        let t = self.phase();
        Complex::from_polar_f64(r, t, self.prec)
    }

    /// `|q|` in `[0.05, 0.5]` with random phase.
    pub fn q(&mut self) -> Complex {
        self.polar(Q_RANGE.0, Q_RANGE.1)
    }

    /// Real `q` in `[0.05, 0.5]`.
    pub fn real_q(&mut self) -> Complex {
        let r = self.uniform(Q_RANGE.0, Q_RANGE.1);
        Complex::from_f64(r, self.prec)
    }

    /// A non-q parameter: modulus in `[0.05, 0.7]`, random phase.
    pub fn free(&mut self) -> Complex {
        self.polar(FREE_RANGE.0, FREE_RANGE.1)
    }

    /// `e^{i theta}` with modulus one to working precision.
    pub fn unit(&mut self, theta: f64) -> Complex {
        let u = Complex::from_polar_f64(1.0, theta, self.prec);
        let r = Complex::new(u.abs_big(), u.zero_like().im().clone(), self.prec);
        &u / &r
    }

    pub fn generic(&mut self, params: &[Sym], real_q: bool) -> ParameterPoint {
        let mut p = ParameterPoint::new();
        for s in params {
            let v = match s {
                Sym::Q | Sym::X if real_q => self.real_q(),
                Sym::Q | Sym::X => self.q(),
                _ => self.free(),
            };
            p.set(*s, v);
        }
        p
    }
}

/// Sample at the default precision.
pub fn sample_point(id: &str, seed: u64) -> Result<ParameterPoint> {
    sample_point_with(id, seed, Precision::DEFAULT)
}

/// Deterministic point for `(id, seed)` inside the record's domain, with every
/// inequality and pole exclusion satisfied by at least [`SAMPLE_MARGIN`].
pub fn sample_point_with(id: &str, seed: u64, prec: Precision) -> Result<ParameterPoint> {
    let rec = get(id)?;
    let mut d = Draw::new(id, seed, prec);
    for _ in 0..SAMPLE_ATTEMPTS {
        let p = match rec.sampler {
            Sampler::Complex => d.generic(rec.params, false),
            Sampler::RealQ => d.generic(rec.params, true),
            Sampler::Custom(f) => match f(&mut d) {
                Ok(p) => p,
                Err(QcfError::Domain(_)) => continue,
                Err(e) => return Err(e),
            },
        };
        match rec.in_domain(&p, SAMPLE_MARGIN) {
            Ok(true) => return Ok(p),
            Ok(false) | Err(QcfError::Domain(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(QcfError::SamplingExhausted {
        id: id.to_string(),
        attempts: SAMPLE_ATTEMPTS,
    })
}
