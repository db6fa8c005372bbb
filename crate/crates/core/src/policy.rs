// SPDX-License-Identifier: Apache-2.0

//! Update policies: which spins sample, and when.
//!
//! | policy | timing | selection per tick/event |
//! |---|---|---|
//! | `gillespie` | continuous, total rate `N/(τc)` | one uniform spin per event |
//! | `tick-random` | ticks of `τ` | each spin with probability `1/c` |
//! | `tick-block-random` | ticks of `τ` | `⌈N/c⌉` contiguous spins from a random start |
//! | `tick-block-random-stride` | ticks of `τ` | `⌈N/c⌉` spins `s, s+r, s+2r, …` with `gcd(r, N) = 1` |
//! | `tick-sequential` | ticks of `τ` | full in-place sweep, no delay |
//!
//! Synchronous policies decide every selected spin from one frozen visible
//! state and queue the results `d` later. The p-bit draws within a tick are
//! made in ascending spin index.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::anneal::AnnealSchedule;
use crate::cost::physical_pbits;
use crate::engine::DelayLine;
use crate::ising::IsingModel;
use crate::pbit::{exp_draw, index_draw, pbit_sample, signed_unit_draw, unit_draw};
use crate::quantize::Quantizer;
use crate::Error;

/// Redraw budget when searching for a stride coprime with `N`.
pub const STRIDE_RETRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Policy {
    Gillespie,
    TickRandom,
    TickBlockRandom,
    TickBlockRandomStride,
    TickSequential,
}

impl Policy {
    pub const ALL: [Policy; 5] = [
        Policy::Gillespie,
        Policy::TickRandom,
        Policy::TickBlockRandom,
        Policy::TickBlockRandomStride,
        Policy::TickSequential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Gillespie => "gillespie",
            Policy::TickRandom => "tick-random",
            Policy::TickBlockRandom => "tick-block-random",
            Policy::TickBlockRandomStride => "tick-block-random-stride",
            Policy::TickSequential => "tick-sequential",
        }
    }

    /// Tick-driven policies that queue their decisions through the delay
    /// line (the sequential baseline writes in place instead).
    pub fn is_clocked(self) -> bool {
        matches!(
            self,
            Policy::TickRandom | Policy::TickBlockRandom | Policy::TickBlockRandomStride
        )
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Policy::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::param("policy", alloc::format!("unknown policy `{s}`")))
    }
}

/// Spins chosen to sample at one tick.
#[derive(Debug, Clone, PartialEq)]
pub struct TickSelection {
    pub tick_time: f64,
    pub indices: Vec<usize>,
    /// Stride used by the stride policy.
    pub stride: Option<usize>,
}

/// Independent Bernoulli mask with inclusion probability `1/c`.
/// Draws one uniform per spin in index order.
pub fn tick_random_select<R: Rng + ?Sized>(n: usize, c: f64, tick_time: f64, rng: &mut R) -> TickSelection {
    let p = 1.0 / c;
    let indices = (0..n).filter(|_| unit_draw(rng) < p).collect();
    TickSelection {
        tick_time,
        indices,
        stride: None,
    }
}

/// `{(s + j) mod n : j < ⌈n/c⌉}`.
pub fn block_indices(n: usize, c: f64, start: usize) -> Vec<usize> {
    let u = physical_pbits(n, c).min(n);
    (0..u).map(|j| (start + j) % n).collect()
}

/// `{(s + j·r) mod n : j < ⌈n/c⌉}`.
pub fn stride_indices(n: usize, c: f64, start: usize, stride: usize) -> Vec<usize> {
    let u = physical_pbits(n, c).min(n);
    (0..u).map(|j| (start + j * stride) % n).collect()
}

/// Contiguous block from a uniform start. Draws the start only.
pub fn tick_block_select<R: Rng + ?Sized>(n: usize, c: f64, tick_time: f64, rng: &mut R) -> TickSelection {
    let start = index_draw(rng, n);
    TickSelection {
        tick_time,
        indices: block_indices(n, c, start),
        stride: None,
    }
}

/// Strided block: uniform start, then a stride drawn uniformly from
/// `[1, n−1]` and redrawn until coprime with `n`. After
/// [`STRIDE_RETRIES`] failed draws the stride falls back to 1.
pub fn tick_block_stride_select<R: Rng + ?Sized>(n: usize, c: f64, tick_time: f64, rng: &mut R) -> TickSelection {
    let start = index_draw(rng, n);
    let stride = coprime_stride(n, rng);
    TickSelection {
        tick_time,
        indices: stride_indices(n, c, start, stride),
        stride: Some(stride),
    }
}

fn coprime_stride<R: Rng + ?Sized>(n: usize, rng: &mut R) -> usize {
    if n < 3 {
        return 1;
    }
    for _ in 0..STRIDE_RETRIES {
        let r = 1 + index_draw(rng, n - 1);
        if gcd(r, n) == 1 {
            return r;
        }
    }
    1
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dispatches to the selection rule of a clocked policy.
pub fn select<R: Rng + ?Sized>(policy: Policy, n: usize, c: f64, tick_time: f64, rng: &mut R) -> TickSelection {
    match policy {
        Policy::TickRandom => tick_random_select(n, c, tick_time, rng),
        Policy::TickBlockRandom => tick_block_select(n, c, tick_time, rng),
        Policy::TickBlockRandomStride => tick_block_stride_select(n, c, tick_time, rng),
        Policy::Gillespie | Policy::TickSequential => TickSelection {
            tick_time,
            indices: (0..n).collect(),
            stride: None,
        },
    }
}

/// Turns a local field into a p-bit decision: quantize the raw field,
/// scale by `I₀(t)`, sample.
#[derive(Debug, Clone, Copy)]
pub struct Decider<'m> {
    model: &'m IsingModel,
    quantizer: Quantizer,
    schedule: AnnealSchedule,
}

impl<'m> Decider<'m> {
    pub fn new(model: &'m IsingModel, quantizer: Quantizer, schedule: AnnealSchedule) -> Self {
        Decider {
            model,
            quantizer,
            schedule,
        }
    }

    /// Quantized input field of spin `i` on `spins`.
    #[inline]
    pub fn field(&self, spins: &[i8], i: usize) -> f64 {
        self.quantizer.quantize(self.model.field_on(spins, i))
    }

    #[inline]
    pub fn decide(&self, spins: &[i8], i: usize, t: f64, u: f64) -> i8 {
        pbit_sample(self.field(spins, i), self.schedule.i0(t), u)
    }
}

/// Decides every selected spin from the visible state at the tick and
/// queues the results at `tick + d`. One p-bit draw per selected spin, in
/// ascending index order.
pub fn tick_decisions<R: Rng + ?Sized>(
    line: &mut DelayLine<'_>,
    decider: &Decider<'_>,
    selection: &TickSelection,
    d_ns: f64,
    rng: &mut R,
) {
    let mut order = selection.indices.clone();
    order.sort_unstable();
    let t = selection.tick_time;
    let decisions: Vec<(usize, i8)> = order
        .into_iter()
        .map(|i| (i, decider.decide(line.visible(), i, t, signed_unit_draw(rng))))
        .collect();
    for (i, v) in decisions {
        line.schedule(i, v, t + d_ns);
    }
}

/// One Gillespie event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GillespieEvent {
    pub time: f64,
    pub spin: usize,
    pub decision: i8,
    pub apply_at: f64,
    /// Whether pending applies landed before this event read the state.
    pub landed: bool,
}

/// Advances to the next event of a Poisson process with total rate `rate`.
///
/// Draws the exponential waiting time first; if the event would fall past
/// `horizon` nothing else is drawn and `None` is returned. Otherwise lands
/// due applies, picks a spin uniformly, decides it at the event time and
/// queues the decision at `time + d`.
#[allow(clippy::too_many_arguments)]
pub fn gillespie_step<R: Rng + ?Sized>(
    line: &mut DelayLine<'_>,
    decider: &Decider<'_>,
    now: f64,
    rate: f64,
    d_ns: f64,
    horizon: f64,
    rng: &mut R,
) -> Option<GillespieEvent> {
    let time = now + exp_draw(rng, rate);
    if time > horizon {
        return None;
    }
    let landed = line.advance_to(time);
    let spin = index_draw(rng, line.visible().len());
    let decision = decider.decide(line.visible(), spin, time, signed_unit_draw(rng));
    let apply_at = time + d_ns;
    line.schedule(spin, decision, apply_at);
    Some(GillespieEvent {
        time,
        spin,
        decision,
        apply_at,
        landed,
    })
}

/// One in-place sweep `i = 0..N−1`: each spin reads the current state
/// (including this sweep's earlier writes) and is written immediately.
/// The whole sweep uses `I₀(tick_time)`.
pub fn sequential_sweep<R: Rng + ?Sized>(line: &mut DelayLine<'_>, decider: &Decider<'_>, tick_time: f64, rng: &mut R) {
    for i in 0..line.visible().len() {
        let v = decider.decide(line.visible(), i, tick_time, signed_unit_draw(rng));
        line.write_now(i, v, tick_time);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::SpinState;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn policy_names_round_trip() {
        for p in Policy::ALL {
            assert_eq!(p.name().parse::<Policy>().unwrap(), p);
        }
        assert!("tick-blocky".parse::<Policy>().is_err());
    }

    #[test]
    fn block_wraps_around() {
        assert_eq!(block_indices(10, 3.0, 8), vec![8, 9, 0, 1]);
        assert_eq!(block_indices(10, 1.0, 4), vec![4, 5, 6, 7, 8, 9, 0, 1, 2, 3]);
        assert_eq!(block_indices(800, 3.0, 0).len(), 267);
    }

    #[test]
    fn stride_formula() {
        assert_eq!(stride_indices(10, 5.0, 0, 3), vec![0, 3]);
        let mut all = stride_indices(10, 1.0, 7, 3);
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn tick_random_with_unit_c_selects_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(tick_random_select(37, 1.0, 0.0, &mut rng).indices.len(), 37);
        }
    }

    #[test]
    fn stride_always_coprime() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2usize, 3, 10, 12, 800, 1000, 2000] {
            for _ in 0..200 {
                let sel = tick_block_stride_select(n, 3.0, 0.0, &mut rng);
                assert_eq!(gcd(sel.stride.unwrap(), n), 1);
            }
        }
    }

    #[test]
    fn sequential_writes_are_visible_to_later_spins() {
        // Strong ferromagnetic chain at high gain: each spin copies its
        // left neighbour's fresh value.
        let model = IsingModel::new(3, &[(0, 1, 2.0), (1, 2, 1.0)], vec![50.0, 0.0, 0.0]).unwrap();
        let q = Quantizer::new(12, model.max_abs_field()).unwrap();
        let decider = Decider::new(&model, q, AnnealSchedule::constant(10.0, 10.0).unwrap());
        let init = SpinState::new(vec![-1, -1, -1]).unwrap();
        let mut line = DelayLine::new(&model, &init).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        sequential_sweep(&mut line, &decider, 0.0, &mut rng);
        assert_eq!(line.visible(), &[1, 1, 1]);
    }

    #[test]
    fn tick_decisions_read_one_frozen_state() {
        // Same setup, but queued: spin 1 still sees spin 0 = −1.
        let model = IsingModel::new(3, &[(0, 1, 2.0), (1, 2, 1.0)], vec![50.0, 0.0, 0.0]).unwrap();
        let q = Quantizer::new(12, model.max_abs_field()).unwrap();
        let decider = Decider::new(&model, q, AnnealSchedule::constant(10.0, 10.0).unwrap());
        let init = SpinState::new(vec![-1, -1, -1]).unwrap();
        let mut line = DelayLine::new(&model, &init).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sel = select(Policy::TickRandom, 3, 1.0, 0.0, &mut rng);
        tick_decisions(&mut line, &decider, &sel, 5.0, &mut rng);
        assert_eq!(line.visible(), &[-1, -1, -1]);
        line.advance_to(5.0);
        assert_eq!(line.visible(), &[1, -1, -1]);
    }

    #[test]
    fn gillespie_delay_is_added() {
        let model = IsingModel::new(2, &[(0, 1, 1.0)], vec![0.0; 2]).unwrap();
        let q = Quantizer::new(12, 1.0).unwrap();
        let decider = Decider::new(&model, q, AnnealSchedule::constant(1.0, 100.0).unwrap());
        let init = SpinState::uniform(2, 1).unwrap();
        let mut line = DelayLine::new(&model, &init).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ev = gillespie_step(&mut line, &decider, 12.3, 1.0, 5.0, 1e9, &mut rng).unwrap();
        assert!((ev.apply_at - ev.time - 5.0).abs() < 1e-12);
        assert!(ev.time > 12.3);
        assert!(gillespie_step(&mut line, &decider, 0.0, 1.0, 5.0, 0.0, &mut rng).is_none());
    }
}
