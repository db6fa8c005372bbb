// SPDX-License-Identifier: Apache-2.0

//! Simulation core for parallel probabilistic-bit (p-bit) Ising annealing.
//!
//! The crate is `no_std` and only needs `alloc`. It contains the Ising model
//! and p-bit update rule, the DAC input quantizer, the annealing schedule,
//! the five update policies, the delayed-apply event engine, the abstract
//! hardware cost model, trace metrics and brute-force oracles for small
//! instances. File IO, sweeps and the command line live in `pbit-harness`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod anneal;
pub mod cost;
pub mod engine;
mod error;
pub mod gset;
pub mod ising;
pub mod metrics;
pub mod oracle;
pub mod pbit;
pub mod policy;
pub mod quantize;

pub use anneal::AnnealSchedule;
pub use cost::{d_tau_ratio, hw_cost, normalized_cost, physical_pbits, CostParams, B_REF};
pub use engine::{run, run_detailed, run_observed, spin_rate, AppliedUpdate, DelayLine, PendingApply, RunConfig, RunOutcome, RunResult};
pub use error::Error;
pub use gset::{lookup, normalized_cut, parse_gset, registry, BenchmarkEntry, WeightedGraph};
pub use ising::{energy, local_field, IsingModel, SpinState};
pub use metrics::{aggregate_mean_cut, landscape_bins, oscillation_score, CostPoint, LandscapeBin};
pub use oracle::{brute_force_boltzmann, brute_force_maxcut};
pub use pbit::pbit_sample;
pub use policy::{Policy, TickSelection};
pub use quantize::Quantizer;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
