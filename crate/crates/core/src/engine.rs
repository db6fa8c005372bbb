// SPDX-License-Identifier: Apache-2.0

//! Simulation time, delayed updates and run orchestration.
//!
//! Every update decision becomes a [`PendingApply`] that lands `d` ns after
//! the decision. Other spins only see a new value once it has landed, which
//! is how stale reads arise. Timing rules shared by all policies:
//!
//! * applies land before reads at the same timestamp; ties between applies
//!   are broken by creation order;
//! * applies with `apply_at <= t_total` land, later ones are dropped;
//! * the final cut and energy are taken on the visible state at `t_total`.
//!
//! RNG draw order for a run: one uniform per spin for the initial state (in
//! index order), then the per-tick or per-event draws documented on each
//! policy.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::anneal::{AnnealSchedule, I0_MAX_PER_SIGMA, I0_MIN_PER_SIGMA};
use crate::cost;
use crate::gset::{BenchmarkEntry, WeightedGraph};
use crate::ising::{IsingModel, SpinState};
use crate::policy::{self, Decider, Policy};
use crate::quantize::Quantizer;
use crate::{Error, Result};

/// Default apply delay in ns.
pub const DEFAULT_DELAY_NS: f64 = 5.0;
/// Default total annealing time in ns.
pub const DEFAULT_TIME_NS: f64 = 500.0;
/// Default cap on recorded energy-trace points.
pub const DEFAULT_SAMPLE_CAP: usize = 2000;

/// A decided spin value waiting to become visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendingApply {
    pub spin: usize,
    pub new_value: i8,
    pub apply_at: f64,
    pub seq: u64,
}

impl Eq for PendingApply {}

impl Ord for PendingApply {
    fn cmp(&self, other: &Self) -> Ordering {
        self.apply_at
            .total_cmp(&other.apply_at)
            .then(self.seq.cmp(&other.seq))
    }
}

impl PartialOrd for PendingApply {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A landed update, as kept in the apply log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppliedUpdate {
    pub spin: usize,
    pub value: i8,
    pub at: f64,
}

/// Visible spin state plus the queue of pending applies.
///
/// Time only moves forward: [`advance_to`](Self::advance_to) lands every
/// pending apply up to the given time. The line also keeps the running
/// energy and the energy trace (one point per landed batch).
#[derive(Debug, Clone)]
pub struct DelayLine<'m> {
    model: &'m IsingModel,
    visible: Vec<i8>,
    pending: BinaryHeap<Reverse<PendingApply>>,
    next_seq: u64,
    now: f64,
    energy: f64,
    applied: u64,
    log: Option<Vec<AppliedUpdate>>,
    trace: Vec<(f64, f64)>,
}

impl<'m> DelayLine<'m> {
    pub fn new(model: &'m IsingModel, initial: &SpinState) -> Result<Self> {
        if initial.len() != model.n() {
            return Err(Error::Dimension {
                expected: model.n(),
                actual: initial.len(),
            });
        }
        let visible = initial.as_slice().to_vec();
        let energy = model.energy_on(&visible);
        Ok(DelayLine {
            model,
            visible,
            pending: BinaryHeap::new(),
            next_seq: 0,
            now: 0.0,
            energy,
            applied: 0,
            log: None,
            trace: alloc::vec![(0.0, energy)],
        })
    }

    /// Keep every landed update in an apply log.
    pub fn with_log(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    pub fn model(&self) -> &'m IsingModel {
        self.model
    }

    /// Spins as currently visible.
    pub fn visible(&self) -> &[i8] {
        &self.visible
    }

    pub fn now(&self) -> f64 {
        self.now
    }

    /// Running energy of the visible state.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn applied(&self) -> u64 {
        self.applied
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    pub fn trace(&self) -> &[(f64, f64)] {
        &self.trace
    }

    /// Queues `spin := value` to land at `apply_at`.
    pub fn schedule(&mut self, spin: usize, value: i8, apply_at: f64) -> PendingApply {
        let p = PendingApply {
            spin,
            new_value: value,
            apply_at,
            seq: self.next_seq,
        };
        self.next_seq += 1;
        self.pending.push(Reverse(p));
        p
    }

    /// Writes a value immediately at time `t`, bypassing the queue.
    pub fn write_now(&mut self, spin: usize, value: i8, t: f64) {
        self.land(spin, value, t);
        self.now = self.now.max(t);
    }

    /// Lands every pending apply with `apply_at <= t`. If any landed, one
    /// trace point is recorded at the time of the last of them. Returns
    /// whether a batch landed.
    pub fn advance_to(&mut self, t: f64) -> bool {
        let mut last = None;
        while let Some(Reverse(p)) = self.pending.peek().copied() {
            if p.apply_at > t {
                break;
            }
            self.pending.pop();
            self.land(p.spin, p.new_value, p.apply_at);
            last = Some(p.apply_at);
        }
        self.now = self.now.max(t);
        match last {
            Some(at) => {
                self.mark(at);
                true
            }
            None => false,
        }
    }

    /// Records `(t, energy)` on the trace. A point at the same time as the
    /// previous one replaces it.
    pub fn mark(&mut self, t: f64) {
        match self.trace.last_mut() {
            Some(last) if last.0 >= t => last.1 = self.energy,
            _ => self.trace.push((t, self.energy)),
        }
    }

    /// The state visible at `t >= now()`, without advancing the line.
    pub fn visible_at(&self, t: f64) -> Result<SpinState> {
        if t < self.now {
            return Err(Error::param(
                "t",
                format!("query time {t} precedes the current time {}", self.now),
            ));
        }
        let mut spins = self.visible.clone();
        let mut due: Vec<PendingApply> = self
            .pending
            .iter()
            .map(|r| r.0)
            .filter(|p| p.apply_at <= t)
            .collect();
        due.sort();
        for p in due {
            spins[p.spin] = p.new_value;
        }
        let mut s = SpinState::new(spins)?;
        s.clock = t;
        Ok(s)
    }

    fn land(&mut self, spin: usize, value: i8, at: f64) {
        let old = self.visible[spin];
        if old != value {
            self.energy += 2.0 * f64::from(old) * self.model.field_on(&self.visible, spin);
            self.visible[spin] = value;
        }
        self.applied += 1;
        if let Some(log) = self.log.as_mut() {
            log.push(AppliedUpdate { spin, value, at });
        }
    }

    fn into_parts(self) -> LineParts {
        (self.visible, self.applied, self.log, self.trace)
    }
}

/// Final spins, applied count, apply log and trace.
type LineParts = (Vec<i8>, u64, Option<Vec<AppliedUpdate>>, Vec<(f64, f64)>);

/// `λ_spin = 1/(τ·c)`, the update rate of one logical spin.
pub fn spin_rate(tau_ns: f64, c: f64) -> f64 {
    1.0 / (tau_ns * c)
}

/// One operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub policy: Policy,
    pub tau_ns: f64,
    /// Time-multiplexing reuse factor, `c >= 1`.
    pub c: f64,
    pub bits: u32,
    pub d_ns: f64,
    pub t_total_ns: f64,
    pub seed: u64,
    pub sample_cap: usize,
    /// Starting gain in units of `1/σ`.
    pub i0_min_per_sigma: f64,
    /// Final gain in units of `1/σ`.
    pub i0_max_per_sigma: f64,
}

impl RunConfig {
    /// Defaults: `d = 5 ns`, `t = 500 ns`, `b = 12`, `c = 1`, standard ramp.
    pub fn new(policy: Policy, tau_ns: f64) -> Self {
        RunConfig {
            policy,
            tau_ns,
            c: 1.0,
            bits: crate::cost::B_REF,
            d_ns: DEFAULT_DELAY_NS,
            t_total_ns: DEFAULT_TIME_NS,
            seed: 0,
            sample_cap: DEFAULT_SAMPLE_CAP,
            i0_min_per_sigma: I0_MIN_PER_SIGMA,
            i0_max_per_sigma: I0_MAX_PER_SIGMA,
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }

    pub fn with_delay(mut self, d_ns: f64) -> Self {
        self.d_ns = d_ns;
        self
    }

    pub fn with_time(mut self, t_total_ns: f64) -> Self {
        self.t_total_ns = t_total_ns;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Holds `I₀` fixed at `i0_per_sigma / σ` for the whole run.
    pub fn with_constant_gain(mut self, i0_per_sigma: f64) -> Self {
        self.i0_min_per_sigma = i0_per_sigma;
        self.i0_max_per_sigma = i0_per_sigma;
        self
    }

    /// Range checks on every field. Zero total time is accepted and yields
    /// a run with no updates.
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_ns > 0.0 && self.tau_ns.is_finite()) {
            return Err(Error::param("tau", format!("must be positive, got {}", self.tau_ns)));
        }
        if !(self.c >= 1.0 && self.c.is_finite()) {
            return Err(Error::param("c", format!("must be >= 1, got {}", self.c)));
        }
        if !(1..=12).contains(&self.bits) {
            return Err(Error::param("bits", format!("must be in 1..=12, got {}", self.bits)));
        }
        if !(self.d_ns >= 0.0 && self.d_ns.is_finite()) {
            return Err(Error::param("d", format!("must be >= 0, got {}", self.d_ns)));
        }
        if !(self.t_total_ns >= 0.0 && self.t_total_ns.is_finite()) {
            return Err(Error::param(
                "time",
                format!("must be >= 0, got {}", self.t_total_ns),
            ));
        }
        if self.sample_cap < 2 {
            return Err(Error::param("sample_cap", "must be at least 2"));
        }
        if !(self.i0_min_per_sigma > 0.0 && self.i0_min_per_sigma <= self.i0_max_per_sigma) {
            return Err(Error::param("i0", "need 0 < i0_min <= i0_max"));
        }
        if self.policy == Policy::TickSequential && self.c != 1.0 {
            return Err(Error::param(
                "c",
                format!("tick-sequential runs one sweep per tick and needs c = 1, got {}", self.c),
            ));
        }
        Ok(())
    }

    /// Clocked synchronous designs tick at `Δt = τ` and land results on the
    /// next tick, so they need `d = τ`.
    pub fn check_clocking(&self) -> Result<()> {
        if self.policy.is_clocked() && self.d_ns != self.tau_ns {
            return Err(Error::param(
                "d",
                format!(
                    "{} is clocked with d = tau, got d = {} and tau = {}",
                    self.policy, self.d_ns, self.tau_ns
                ),
            ));
        }
        Ok(())
    }
}

/// Everything a run produces before it is scored against a benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub initial_state: SpinState,
    pub final_state: SpinState,
    pub final_energy: f64,
    pub applied_updates: u64,
    /// `(t, H)` points, downsampled to the configured cap.
    pub energy_trace: Vec<(f64, f64)>,
    /// Landed updates in landing order; empty unless requested.
    pub apply_log: Vec<AppliedUpdate>,
}

/// Scored result of one run on a benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub graph: String,
    pub config: RunConfig,
    pub seed: u64,
    pub final_cut: i64,
    pub normalized_cut: f64,
    pub final_energy: f64,
    pub energy_trace: Vec<(f64, f64)>,
    pub applied_updates: u64,
    pub pbits_physical: usize,
    pub cost_norm: f64,
    pub d_tau_ratio: f64,
}

/// Runs one annealing simulation on a benchmark instance.
///
/// `model` must be the Ising form of `graph`, and `entry` must describe the
/// same graph.
pub fn run(
    model: &IsingModel,
    graph: &WeightedGraph,
    config: &RunConfig,
    entry: &BenchmarkEntry,
) -> Result<RunResult> {
    if model.n() != graph.n() {
        return Err(Error::Dimension {
            expected: graph.n(),
            actual: model.n(),
        });
    }
    entry.validate(graph)?;
    let outcome = simulate(model, config, false, |_, _| {})?;
    let final_cut = graph.cut_on(outcome.final_state.as_slice());
    Ok(RunResult {
        graph: entry.name.clone(),
        config: config.clone(),
        seed: config.seed,
        final_cut,
        normalized_cut: entry.normalized_cut(final_cut)?,
        final_energy: outcome.final_energy,
        energy_trace: outcome.energy_trace,
        applied_updates: outcome.applied_updates,
        pbits_physical: cost::physical_pbits(model.n(), config.c),
        cost_norm: cost::normalized_cost(model.n(), config.c, config.bits)?,
        d_tau_ratio: cost::d_tau_ratio(config.d_ns, config.tau_ns)?,
    })
}

/// Runs a simulation on a bare model and keeps the apply log.
pub fn run_detailed(model: &IsingModel, config: &RunConfig) -> Result<RunOutcome> {
    simulate(model, config, true, |_, _| {})
}

/// Runs a simulation, calling `observe(t, spins)` each time a trace point
/// is recorded (after every tick or sweep, and after every landed batch).
pub fn run_observed<F>(model: &IsingModel, config: &RunConfig, observe: F) -> Result<RunOutcome>
where
    F: FnMut(f64, &[i8]),
{
    simulate(model, config, false, observe)
}

fn simulate<F>(model: &IsingModel, config: &RunConfig, keep_log: bool, mut observe: F) -> Result<RunOutcome>
where
    F: FnMut(f64, &[i8]),
{
    config.validate()?;
    let sigma = model.coupling_sigma()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let initial = SpinState::random(model.n(), &mut rng);
    let mut line = DelayLine::new(model, &initial)?;
    if keep_log {
        line = line.with_log();
    }

    let t_total = config.t_total_ns;
    if t_total > 0.0 {
        let schedule = AnnealSchedule::scaled(
            sigma,
            config.i0_min_per_sigma,
            config.i0_max_per_sigma,
            t_total,
        )?;
        let decider = Decider::new(model, Quantizer::for_model(config.bits, model)?, schedule);
        drive(&mut line, &decider, config, &mut rng, &mut observe);
    }

    let (visible, applied, log, trace) = line.into_parts();
    let final_energy = model.energy_on(&visible);
    let mut final_state = SpinState::new(visible)?;
    final_state.clock = t_total;
    Ok(RunOutcome {
        initial_state: initial,
        final_state,
        final_energy,
        applied_updates: applied,
        energy_trace: downsample(trace, config.sample_cap),
        apply_log: log.unwrap_or_default(),
    })
}

fn drive<F>(line: &mut DelayLine<'_>, decider: &Decider<'_>, config: &RunConfig, rng: &mut ChaCha8Rng, observe: &mut F)
where
    F: FnMut(f64, &[i8]),
{
    let n = line.model().n();
    let t_total = config.t_total_ns;
    let tau = config.tau_ns;

    let mut notify = |line: &DelayLine<'_>| {
        if let Some(&(t, _)) = line.trace().last() {
            observe(t, line.visible());
        }
    };

    match config.policy {
        Policy::Gillespie => {
            let rate = n as f64 * spin_rate(tau, config.c);
            let mut now = 0.0;
            while let Some(event) = policy::gillespie_step(line, decider, now, rate, config.d_ns, t_total, rng) {
                now = event.time;
                if event.landed {
                    notify(line);
                }
            }
        }
        Policy::TickSequential => {
            for k in 0.. {
                let t = k as f64 * tau;
                if t >= t_total {
                    break;
                }
                policy::sequential_sweep(line, decider, t, rng);
                line.mark(((k + 1) as f64 * tau).min(t_total));
                notify(line);
            }
        }
        Policy::TickRandom | Policy::TickBlockRandom | Policy::TickBlockRandomStride => {
            for k in 0.. {
                let t = k as f64 * tau;
                if t >= t_total {
                    break;
                }
                if line.advance_to(t) {
                    notify(line);
                }
                let selection = policy::select(config.policy, n, config.c, t, rng);
                policy::tick_decisions(line, decider, &selection, config.d_ns, rng);
            }
        }
    }

    if line.advance_to(t_total) {
        notify(line);
    }
}

/// Uniform thinning to at most `cap` points, keeping both ends.
fn downsample(trace: Vec<(f64, f64)>, cap: usize) -> Vec<(f64, f64)> {
    let len = trace.len();
    if len <= cap {
        return trace;
    }
    (0..cap).map(|k| trace[k * (len - 1) / (cap - 1)]).collect()
}
