// SPDX-License-Identifier: Apache-2.0

//! Trace and result analysis: oscillation score, instance-averaged cut and
//! landscape binning.

use alloc::format;
use alloc::vec::Vec;

use crate::policy::Policy;
use crate::{Error, Result};

/// Minimum number of trace points inside the scoring window.
pub const MIN_WINDOW_POINTS: usize = 10;
/// Default number of landscape bins.
pub const DEFAULT_BINS: usize = 40;

/// Population standard deviation of the energy over the last
/// `window_fraction` of the trace points.
///
/// Large values flag the collective switching seen when too many strongly
/// coupled spins update together.
pub fn oscillation_score(trace: &[(f64, f64)], window_fraction: f64) -> Result<f64> {
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::param(
            "window_fraction",
            format!("must be in (0, 1], got {window_fraction}"),
        ));
    }
    let take = libm::ceil(trace.len() as f64 * window_fraction) as usize;
    if take < MIN_WINDOW_POINTS {
        return Err(Error::InsufficientData(format!(
            "window holds {take} trace points, need at least {MIN_WINDOW_POINTS}"
        )));
    }
    let window = &trace[trace.len() - take..];
    let mean = window.iter().map(|p| p.1).sum::<f64>() / take as f64;
    let var = window.iter().map(|p| (p.1 - mean) * (p.1 - mean)).sum::<f64>() / take as f64;
    Ok(libm::sqrt(var))
}

/// Mean over instances of the per-instance mean over repeats.
pub fn aggregate_mean_cut<G: AsRef<[f64]>>(per_instance: &[G]) -> Result<f64> {
    let first = per_instance
        .first()
        .ok_or_else(|| Error::InsufficientData("no instances".into()))?
        .as_ref()
        .len();
    if first == 0 {
        return Err(Error::InsufficientData("instance without repeats".into()));
    }
    let mut total = 0.0;
    for (k, g) in per_instance.iter().enumerate() {
        let g = g.as_ref();
        if g.len() != first {
            return Err(Error::InsufficientData(format!(
                "instance {k} has {} repeats, expected {first}",
                g.len()
            )));
        }
        total += g.iter().sum::<f64>() / g.len() as f64;
    }
    Ok(total / per_instance.len() as f64)
}

/// One point of the performance–cost landscape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostPoint {
    pub cost_norm: f64,
    pub cut_norm: f64,
    pub policy: Policy,
    pub tau_ns: f64,
    pub c: f64,
    pub bits: u32,
}

impl CostPoint {
    pub fn new(cost_norm: f64, cut_norm: f64, policy: Policy, tau_ns: f64, c: f64, bits: u32) -> Self {
        CostPoint {
            cost_norm,
            cut_norm,
            policy,
            tau_ns,
            c,
            bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeBin {
    pub center: f64,
    pub median: f64,
    pub max: f64,
    pub count: usize,
}

/// Equal-width bins over `[min cost, max cost]`; one row per non-empty bin
/// in ascending cost order.
pub fn landscape_bins(points: &[CostPoint], n_bins: usize) -> Vec<LandscapeBin> {
    if points.is_empty() || n_bins == 0 {
        return Vec::new();
    }
    let lo = points.iter().map(|p| p.cost_norm).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.cost_norm).fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / n_bins as f64;

    let mut buckets: Vec<Vec<f64>> = alloc::vec![Vec::new(); n_bins];
    for p in points {
        let k = if width > 0.0 {
            (libm::floor((p.cost_norm - lo) / width) as usize).min(n_bins - 1)
        } else {
            0
        };
        buckets[k].push(p.cut_norm);
    }

    buckets
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(k, mut cuts)| {
            cuts.sort_by(f64::total_cmp);
            let center = if width > 0.0 {
                lo + (k as f64 + 0.5) * width
            } else {
                lo
            };
            LandscapeBin {
                center,
                median: median_sorted(&cuts),
                max: cuts[cuts.len() - 1],
                count: cuts.len(),
            }
        })
        .collect()
}

fn median_sorted(v: &[f64]) -> f64 {
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}
