// SPDX-License-Identifier: Apache-2.0

//! Abstract hardware cost: physical p-bits and input DACs.
//!
//! `C_HW = α·N_p + β·(b/b_ref)·N_DAC` with `N_p = ⌈N/c⌉` and one DAC per
//! physical p-bit. The normalized cost divides by the cost of the dedicated,
//! full-resolution design `(c = 1, b = 12)` using `α = β = 1`, which gives
//! `(N_p/N)·(1 + b/12)/2`.

use alloc::format;

use crate::{Error, Result};

/// Reference DAC resolution.
pub const B_REF: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    pub alpha: f64,
    pub beta: f64,
}

impl CostParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::param(
                "alpha/beta",
                format!("weights must be positive, got {alpha}, {beta}"),
            ));
        }
        Ok(CostParams { alpha, beta })
    }

    pub fn b_ref(&self) -> u32 {
        B_REF
    }
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams { alpha: 1.0, beta: 1.0 }
    }
}

/// `⌈n/c⌉` for a rational reuse factor `c ≥ 1`.
pub fn physical_pbits(n: usize, c: f64) -> usize {
    let exact = n as f64 / c;
    let rounded = libm::round(exact);
    // Guard against c = 800/3-style inputs landing a hair above an integer.
    if libm::fabs(exact - rounded) <= 1e-9 * exact.max(1.0) {
        rounded as usize
    } else {
        libm::ceil(exact) as usize
    }
}

/// `α·N_p + β·(b/12)·N_p`.
pub fn hw_cost(n: usize, c: f64, bits: u32, params: &CostParams) -> Result<f64> {
    check(c, bits)?;
    let np = physical_pbits(n, c) as f64;
    Ok(params.alpha * np + params.beta * (f64::from(bits) / f64::from(B_REF)) * np)
}

/// Cost relative to the `(c = 1, b = 12)` design with unit weights.
pub fn normalized_cost(n: usize, c: f64, bits: u32) -> Result<f64> {
    let p = CostParams::default();
    Ok(hw_cost(n, c, bits, &p)? / hw_cost(n, 1.0, B_REF, &p)?)
}

/// Delay-to-update ratio `d/τ`.
pub fn d_tau_ratio(d_ns: f64, tau_ns: f64) -> Result<f64> {
    if tau_ns.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
        return Err(Error::param("tau", format!("must be positive, got {tau_ns}")));
    }
    Ok(d_ns / tau_ns)
}

fn check(c: f64, bits: u32) -> Result<()> {
    if !(c >= 1.0 && c.is_finite()) {
        return Err(Error::param("c", format!("reuse factor must be >= 1, got {c}")));
    }
    if !(1..=B_REF).contains(&bits) {
        return Err(Error::param("bits", format!("must be in 1..=12, got {bits}")));
    }
    Ok(())
}
