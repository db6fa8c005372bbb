// SPDX-License-Identifier: Apache-2.0

//! The p-bit update rule and the primitive random draws used by every policy.
//!
//! All randomness goes through the helpers here so the draw sequence of a
//! run is fixed: one 64-bit word per uniform, top 53 bits as the mantissa.

use rand::Rng;

/// Products `i0·field` are clamped to this magnitude before `tanh`.
/// `tanh(30)` already equals 1 in double precision.
pub const TANH_CLAMP: f64 = 30.0;

/// Uniform on `[0, 1)` from a single 64-bit draw.
#[inline]
pub fn unit_draw<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform on `[−1, 1)`.
#[inline]
pub fn signed_unit_draw<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    2.0 * unit_draw(rng) - 1.0
}

/// Exponential waiting time with the given rate, by inversion.
#[inline]
pub fn exp_draw<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    // 1 − u lies in (0, 1], so the log is finite.
    -libm::log(1.0 - unit_draw(rng)) / rate
}

/// Uniform index in `[0, n)`.
#[inline]
pub fn index_draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.random_range(0..n)
}

/// `sgn(u + tanh(i0·field))` for `u` uniform on `[−1, 1)`.
///
/// Returns +1 when the sum is nonnegative, which gives
/// `P(+1) = (1 + tanh(i0·field)) / 2` exactly for that range of `u`.
#[inline]
pub fn pbit_sample(field: f64, i0: f64, u: f64) -> i8 {
    let x = (i0 * field).clamp(-TANH_CLAMP, TANH_CLAMP);
    if u + libm::tanh(x) >= 0.0 {
        1
    } else {
        -1
    }
}

/// Probability that [`pbit_sample`] returns +1.
pub fn pbit_up_probability(field: f64, i0: f64) -> f64 {
    0.5 * (1.0 + libm::tanh((i0 * field).clamp(-TANH_CLAMP, TANH_CLAMP)))
}
