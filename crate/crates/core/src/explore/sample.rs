//! Seeded sampling from the product measure.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Coordinate `i` of a draw is set when a uniform integer
//! in `[0, b)` falls below `a`, where `p_i = a/b` in lowest terms; both
//! parts must fit in `u64`, otherwise a uniform `f64` in `[0, 1)` is
//! compared with `p_i` rounded to `f64`. Coordinates are drawn in order
//! `1..=d`.
//!
//! Random weight vectors use the same generator: per coordinate a
//! denominator `b` uniform in `[2, max_denominator]`, then a numerator
//! uniform in `[1, b)` (or `[ceil(b/2), b)` when biases must be at least
//! `1/2`).

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cube::{CubePoint, SetFamily};
use crate::error::{Error, Result};
use crate::rational::{ratio, to_f64};
use crate::weights::WeightVector;

#[derive(Debug, Clone, Copy)]
enum Bias {
    Exact { num: u64, den: u64 },
    Float(f64),
}

impl Bias {
    fn draw(self, rng: &mut ChaCha8Rng) -> bool {
        match self {
            Bias::Exact { num, den } => rng.random_range(0..den) < num,
            Bias::Float(p) => rng.random::<f64>() < p,
        }
    }
}

/// A stream of independent draws from `μ_p`.
#[derive(Debug, Clone)]
pub struct PointSampler {
    biases: Vec<Bias>,
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(w: &WeightVector, seed: u64) -> Self {
        Self::from_rng(w, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn from_rng(w: &WeightVector, rng: ChaCha8Rng) -> Self {
        let biases = w
            .ps()
            .iter()
            .map(|p| match (p.numer().to_u64(), p.denom().to_u64()) {
                (Some(num), Some(den)) => Bias::Exact { num, den },
                _ => Bias::Float(to_f64(p)),
            })
            .collect();
        Self { biases, rng }
    }

    pub fn next_point(&mut self) -> CubePoint {
        let mut mask = 0u32;
        for (i, bias) in self.biases.iter().enumerate() {
            if bias.draw(&mut self.rng) {
                mask |= 1 << i;
            }
        }
        CubePoint::from_mask(mask)
    }
}

impl Iterator for PointSampler {
    type Item = CubePoint;

    fn next(&mut self) -> Option<CubePoint> {
        Some(self.next_point())
    }
}

/// The first draw of [`PointSampler`] for `seed`.
pub fn sample_point(w: &WeightVector, seed: u64) -> CubePoint {
    PointSampler::new(w, seed).next_point()
}

/// Which biases a random weight vector may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRange {
    /// `0 < p_i < 1`.
    Interior,
    /// `1/2 ≤ p_i < 1`.
    UpperHalf,
}

/// `count` random rational weight vectors on `dim` coordinates.
pub fn random_weights(
    dim: usize,
    count: usize,
    range: WeightRange,
    max_denominator: i64,
    seed: u64,
) -> Result<Vec<WeightVector>> {
    if max_denominator < 2 {
        return Err(Error::InvalidArgument("max denominator must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = (0..dim)
                .map(|_| {
                    let b = rng.random_range(2..=max_denominator);
                    let low = match range {
                        WeightRange::Interior => 1,
                        WeightRange::UpperHalf => (b + 1) / 2,
                    };
                    ratio(rng.random_range(low..b), b)
                })
                .collect();
            WeightVector::new(p)
        })
        .collect()
}

/// Sample mean of the membership indicator with its binomial standard
/// error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub draws: u64,
}

pub fn monte_carlo_measure(
    family: &SetFamily,
    w: &WeightVector,
    draws: u64,
    seed: u64,
) -> Result<McEstimate> {
    if family.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: w.dim(),
        });
    }
    if draws == 0 {
        return Err(Error::InvalidArgument("at least one draw is required".into()));
    }
    let mut sampler = PointSampler::new(w, seed);
    let hits = (0..draws)
        .filter(|_| family.contains(sampler.next_point()))
        .count() as u64;
    let n = draws as f64;
    let estimate = hits as f64 / n;
    Ok(McEstimate {
        estimate,
        stderr: (estimate * (1.0 - estimate) / n).sqrt(),
        hits,
        draws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::family_measure;

    fn w(text: &str) -> WeightVector {
        WeightVector::parse(text).unwrap()
    }

    #[test]
    fn deterministic_biases() {
        for seed in 0..20 {
            assert_eq!(sample_point(&w("1,1"), seed), CubePoint::from_elements(&[1, 2]));
            assert_eq!(sample_point(&w("0,0"), seed), CubePoint::EMPTY);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let weights = w("1/3,1/2,5/7");
        let a: Vec<CubePoint> = PointSampler::new(&weights, 9).take(50).collect();
        let b: Vec<CubePoint> = PointSampler::new(&weights, 9).take(50).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bit_frequencies_within_three_sigma() {
        let weights = w("1/2,1/2,1/2");
        let n = 100_000u32;
        let mut counts = [0u32; 3];
        for x in PointSampler::new(&weights, 1).take(n as usize) {
            for (i, c) in counts.iter_mut().enumerate() {
                *c += u32::from(x.contains(i + 1));
            }
        }
        let sigma = (0.25 / n as f64).sqrt();
        for c in counts {
            assert!((c as f64 / n as f64 - 0.5).abs() < 3.0 * sigma);
        }
    }

    #[test]
    fn random_weight_ranges() {
        let upper = random_weights(4, 30, WeightRange::UpperHalf, 12, 1).unwrap();
        assert!(upper.iter().all(|w| w.require_at_least_half().is_ok() && w.require_interior().is_ok()));
        let inner = random_weights(4, 30, WeightRange::Interior, 12, 1).unwrap();
        assert!(inner.iter().all(|w| w.require_interior().is_ok()));
        assert_eq!(inner, random_weights(4, 30, WeightRange::Interior, 12, 1).unwrap());
        assert!(random_weights(4, 1, WeightRange::Interior, 1, 1).is_err());
    }

    #[test]
    fn monte_carlo_examples() {
        let weights = w("2/3,3/4");
        let full = SetFamily::full(2).unwrap();
        let est = monte_carlo_measure(&full, &weights, 1000, 3).unwrap();
        assert_eq!((est.estimate, est.stderr), (1.0, 0.0));
        let est = monte_carlo_measure(&SetFamily::empty(2).unwrap(), &weights, 1000, 3).unwrap();
        assert_eq!(est.estimate, 0.0);

        let f = SetFamily::from_masks(2, &[0b00, 0b01, 0b11]).unwrap();
        let exact = to_f64(&family_measure(&f, &weights).unwrap());
        assert_eq!(exact, 0.75);
        let est = monte_carlo_measure(&f, &weights, 100_000, 11).unwrap();
        assert!((est.estimate - exact).abs() < 3.0 * est.stderr);

        assert!(monte_carlo_measure(&f, &weights, 0, 1).is_err());
    }
}
