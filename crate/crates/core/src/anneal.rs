// SPDX-License-Identifier: Apache-2.0

//! Linear ramp of the pseudo inverse temperature `I₀(t)`.

use alloc::format;

use crate::{Error, Result};

/// Default starting gain, in units of `1/σ`.
pub const I0_MIN_PER_SIGMA: f64 = 0.1;
/// Default final gain, in units of `1/σ`.
pub const I0_MAX_PER_SIGMA: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule {
    i0_min: f64,
    i0_max: f64,
    t_total: f64,
}

/// Gain returned by [`AnnealSchedule::sample`]; `clamped` is set when the
/// query time fell outside `[0, t_total]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSample {
    pub value: f64,
    pub clamped: bool,
}

impl AnnealSchedule {
    pub fn new(i0_min: f64, i0_max: f64, t_total: f64) -> Result<Self> {
        if !(i0_min > 0.0 && i0_min <= i0_max && i0_max.is_finite()) {
            return Err(Error::param(
                "i0",
                format!("need 0 < i0_min <= i0_max, got {i0_min}..{i0_max}"),
            ));
        }
        if !(t_total > 0.0 && t_total.is_finite()) {
            return Err(Error::param("t_total", format!("must be positive, got {t_total}")));
        }
        Ok(AnnealSchedule {
            i0_min,
            i0_max,
            t_total,
        })
    }

    /// Ramp from `min_per_sigma/σ` to `max_per_sigma/σ`.
    pub fn scaled(sigma: f64, min_per_sigma: f64, max_per_sigma: f64, t_total: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::DegenerateModel);
        }
        Self::new(min_per_sigma / sigma, max_per_sigma / sigma, t_total)
    }

    /// The default `0.1/σ → 10/σ` ramp.
    pub fn standard(sigma: f64, t_total: f64) -> Result<Self> {
        Self::scaled(sigma, I0_MIN_PER_SIGMA, I0_MAX_PER_SIGMA, t_total)
    }

    /// A flat schedule holding `i0` for the whole run.
    pub fn constant(i0: f64, t_total: f64) -> Result<Self> {
        Self::new(i0, i0, t_total)
    }

    pub fn i0_min(&self) -> f64 {
        self.i0_min
    }

    pub fn i0_max(&self) -> f64 {
        self.i0_max
    }

    pub fn t_total(&self) -> f64 {
        self.t_total
    }

    /// `i0_min + (i0_max − i0_min)·t/t_total`, with `t` clamped to the run.
    pub fn sample(&self, t: f64) -> GainSample {
        let clamped = !(0.0..=self.t_total).contains(&t);
        let t = t.clamp(0.0, self.t_total);
        GainSample {
            value: self.i0_min + (self.i0_max - self.i0_min) * (t / self.t_total),
            clamped,
        }
    }

    #[inline]
    pub fn i0(&self, t: f64) -> f64 {
        self.sample(t).value
    }
}
