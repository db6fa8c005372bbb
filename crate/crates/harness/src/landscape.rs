// SPDX-License-Identifier: Apache-2.0

//! Performance versus cost landscape from sweep records.
//!
//! Records are grouped by operating point `(policy, tau, c, b, d, time)`.
//! Each point's cut is the instance-averaged mean over repeats and its cost
//! is the mean `cost_norm` over its records. Points are then binned per
//! policy group.

use std::collections::BTreeMap;
use std::io::Write;

use pbit_core::{aggregate_mean_cut, landscape_bins, CostPoint, LandscapeBin, Policy};

use crate::error::{HarnessError, Result};
use crate::record::{fixed, Record};

pub const HEADER: &str = "bin_center_cost,median_cut_norm,max_cut_norm,policy_filter";

/// Policy groups in output order.
pub const GROUPS: [&str; 4] = ["all", "async", "structured-sync", "random-sync"];

/// Whether `policy` belongs to group `name`. The sequential baseline only
/// appears under `all`.
pub fn in_group(name: &str, policy: Policy) -> bool {
    match name {
        "all" => true,
        "async" => policy == Policy::Gillespie,
        "structured-sync" => matches!(policy, Policy::TickBlockRandom | Policy::TickBlockRandomStride),
        "random-sync" => policy == Policy::TickRandom,
        _ => false,
    }
}

type SettingKey = (Policy, u64, u64, u32, u64, u64);
/// Costs of every record plus normalized cuts per instance.
type Accum<'a> = (Vec<f64>, BTreeMap<&'a str, Vec<f64>>);

/// One landscape point per operating point, in a stable order.
pub fn cost_points(records: &[Record]) -> Result<Vec<CostPoint>> {
    if records.is_empty() {
        return Err(HarnessError::Usage("landscape input has no records".into()));
    }
    let mut settings: BTreeMap<SettingKey, Accum<'_>> = BTreeMap::new();
    for r in records {
        let policy: Policy = r
            .policy
            .parse()
            .map_err(|_| HarnessError::Schema(format!("run {}: unknown policy `{}`", r.run_id, r.policy)))?;
        let key = (
            policy,
            r.tau_ns.to_bits(),
            r.c.to_bits(),
            r.b,
            r.d_ns.to_bits(),
            r.time_ns.to_bits(),
        );
        let (costs, per_instance) = settings.entry(key).or_default();
        costs.push(r.cost_norm);
        per_instance.entry(r.graph.as_str()).or_default().push(r.normalized_cut);
    }

    settings
        .into_iter()
        .map(|((policy, tau, c, b, _, _), (costs, per_instance))| {
            let cuts: Vec<&Vec<f64>> = per_instance.values().collect();
            let cut = aggregate_mean_cut(&cuts).map_err(|e| {
                HarnessError::Usage(format!(
                    "{policy} tau={} c={} b={b}: {e}",
                    f64::from_bits(tau),
                    f64::from_bits(c)
                ))
            })?;
            let cost = costs.iter().sum::<f64>() / costs.len() as f64;
            Ok(CostPoint::new(cost, cut, policy, f64::from_bits(tau), f64::from_bits(c), b))
        })
        .collect()
}

/// Binned rows per group; groups without points are left out.
pub fn landscape(records: &[Record], n_bins: usize) -> Result<Vec<(&'static str, Vec<LandscapeBin>)>> {
    if n_bins == 0 {
        return Err(HarnessError::Usage("bins must be at least 1".into()));
    }
    let points = cost_points(records)?;
    Ok(GROUPS
        .iter()
        .filter_map(|&g| {
            let members: Vec<CostPoint> = points.iter().copied().filter(|p| in_group(g, p.policy)).collect();
            (!members.is_empty()).then(|| (g, landscape_bins(&members, n_bins)))
        })
        .collect())
}

pub fn write_landscape<W: Write>(mut out: W, groups: &[(&str, Vec<LandscapeBin>)]) -> Result<()> {
    let mut text = format!("{HEADER}\n");
    for (name, bins) in groups {
        for b in bins {
            text.push_str(&format!("{},{},{},{name}\n", fixed(b.center), fixed(b.median), fixed(b.max)));
        }
    }
    out.write_all(text.as_bytes()).map_err(|source| HarnessError::Io {
        path: "<output>".into(),
        source,
    })
}
