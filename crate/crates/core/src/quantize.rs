// SPDX-License-Identifier: Apache-2.0

//! b-bit DAC model for the p-bit input.
//!
//! Symmetric mid-rise uniform quantizer with `2^b` levels spanning the
//! global full-scale range `[−S, S]`. The step is `Δ = 2S/2^b` and the
//! levels sit at odd multiples of `Δ/2`, so there is no zero level and a
//! 1-bit DAC reduces to `±S/2`. Inputs beyond the range saturate at the
//! outermost level.
//!
//! The quantizer acts on the raw local field `h_i + Σ_j J_ij σ_j`; the
//! annealing gain `I₀(t)` is applied afterwards.

use alloc::format;

use crate::ising::IsingModel;
use crate::{Error, Result};

pub const MIN_BITS: u32 = 1;
pub const MAX_BITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantizer {
    bits: u32,
    full_scale: f64,
    step: f64,
}

impl Quantizer {
    pub fn new(bits: u32, full_scale: f64) -> Result<Self> {
        if !(MIN_BITS..=MAX_BITS).contains(&bits) {
            return Err(Error::param("bits", format!("must be in 1..=12, got {bits}")));
        }
        if !(full_scale > 0.0 && full_scale.is_finite()) {
            return Err(Error::param(
                "full_scale",
                format!("must be positive and finite, got {full_scale}"),
            ));
        }
        Ok(Quantizer {
            bits,
            full_scale,
            step: 2.0 * full_scale / f64::from(1u32 << bits),
        })
    }

    /// Full scale `S = max_i (|h_i| + Σ_j |J_ij|)`: no reachable field
    /// saturates the DAC.
    pub fn for_model(bits: u32, model: &IsingModel) -> Result<Self> {
        let s = model.max_abs_field();
        if s <= 0.0 {
            return Err(Error::DegenerateModel);
        }
        Self::new(bits, s)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn full_scale(&self) -> f64 {
        self.full_scale
    }

    pub fn levels(&self) -> u32 {
        1 << self.bits
    }

    /// Step size `Δ`.
    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    pub fn quantize(&self, field: f64) -> f64 {
        let half = 0.5 * self.step;
        let level = (libm::floor(field / self.step) + 0.5) * self.step;
        level.clamp(-self.full_scale + half, self.full_scale - half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_bit_levels() {
        let q = Quantizer::new(1, 2.0).unwrap();
        assert_eq!(q.levels(), 2);
        assert_eq!(q.quantize(0.7), 1.0);
        assert_eq!(q.quantize(-0.7), -1.0);
        assert_eq!(q.quantize(100.0), 1.0);
        assert_eq!(q.quantize(-100.0), -1.0);
    }

    #[test]
    fn twelve_bit_half_step_error() {
        let q = Quantizer::new(12, 2.0).unwrap();
        let delta = 4.0 / 4096.0;
        assert_eq!(q.step(), delta);
        assert!((q.quantize(0.5) - 0.5).abs() <= delta / 2.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Quantizer::new(0, 1.0).is_err());
        assert!(Quantizer::new(13, 1.0).is_err());
        assert!(Quantizer::new(4, 0.0).is_err());
        assert!(Quantizer::new(4, f64::INFINITY).is_err());
    }

    #[test]
    fn level_count_is_exact() {
        for bits in 1..=8u32 {
            let q = Quantizer::new(bits, 3.0).unwrap();
            let mut seen = std::vec::Vec::new();
            let probes = 20_000;
            for k in 0..=probes {
                let x = -4.0 + 8.0 * k as f64 / probes as f64;
                let y = q.quantize(x);
                if !seen.contains(&y) {
                    seen.push(y);
                }
            }
            assert_eq!(seen.len() as u32, q.levels(), "bits = {bits}");
        }
    }

    proptest! {
        #[test]
        fn monotone(bits in 1u32..=12, s in 0.1f64..100.0, a in -200.0f64..200.0, b in -200.0f64..200.0) {
            let q = Quantizer::new(bits, s).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(q.quantize(lo) <= q.quantize(hi));
        }

        #[test]
        fn bounded_error_and_range(bits in 1u32..=12, s in 0.1f64..100.0, frac in -1.0f64..1.0) {
            let q = Quantizer::new(bits, s).unwrap();
            let half = q.step() / 2.0;
            let x = frac * (s - half);
            let y = q.quantize(x);
            prop_assert!((y - x).abs() <= half * (1.0 + 1e-12));
            prop_assert!(y >= -s + half - 1e-12 && y <= s - half + 1e-12);
        }

        #[test]
        fn idempotent(bits in 1u32..=12, s in 0.1f64..100.0, x in -200.0f64..200.0) {
            let q = Quantizer::new(bits, s).unwrap();
            let y = q.quantize(x);
            prop_assert_eq!(q.quantize(y), y);
        }
    }
}
