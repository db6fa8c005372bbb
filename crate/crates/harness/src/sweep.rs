// SPDX-License-Identifier: Apache-2.0

//! Cartesian sweeps over operating points.
//!
//! A spec file is line-oriented `key = value` text with comma-separated
//! lists and `#` comments:
//!
//! ```text
//! instances = G1, G11
//! policies  = gillespie, tick-random
//! tau       = 5, 10
//! c         = 1
//! b         = 12
//! time      = 500
//! d         = tau      # or a number in ns
//! repeats   = 5
//! seed      = 1000
//! ```
//!
//! `[name]` lines open a section. Sections inherit every top-level key and
//! may override any of them except `seed`. When a file has sections only
//! the sections are run, in file order.
//!
//! Points are enumerated section by section, then instance, policy, tau,
//! c, b, time and repeat. Point `k` (counting skipped points too) gets
//! `run_id = k` and `seed = base_seed + k`.

use std::fmt;
use std::path::Path;

use pbit_core::{RunConfig, RunResult};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::graphs::InstanceCache;
use crate::record::Record;

/// Recipes shipped with the binary, selectable by name with `--spec`.
pub const RECIPES: [(&str, &str); 5] = [
    ("fig2_oscillation", include_str!("../recipes/fig2_oscillation.sweep")),
    ("fig3_delay", include_str!("../recipes/fig3_delay.sweep")),
    ("fig5_dac", include_str!("../recipes/fig5_dac.sweep")),
    ("table2", include_str!("../recipes/table2.sweep")),
    ("seq_baseline", include_str!("../recipes/seq_baseline.sweep")),
];

pub fn recipe(name: &str) -> Option<&'static str> {
    RECIPES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Loads a spec from a file path, falling back to a recipe name.
pub fn load_spec(path_or_recipe: &str) -> Result<SweepSpec> {
    let path = Path::new(path_or_recipe);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        return SweepSpec::parse(&text);
    }
    match recipe(path_or_recipe) {
        Some(text) => SweepSpec::parse(text),
        None => Err(HarnessError::Usage(format!(
            "`{path_or_recipe}` is neither a spec file nor a recipe (recipes: {})",
            RECIPES.map(|(n, _)| n).join(", ")
        ))),
    }
}

/// Delay setting: a fixed value or "same as tau".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Delay {
    Fixed(f64),
    Tau,
}

impl Delay {
    pub fn resolve(self, tau_ns: f64) -> f64 {
        match self {
            Delay::Fixed(d) => d,
            Delay::Tau => tau_ns,
        }
    }
}

/// What to do with points the policy cannot run as configured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnIncompatible {
    Error,
    Skip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSection {
    pub name: String,
    pub instances: Vec<String>,
    pub policies: Vec<pbit_core::Policy>,
    pub taus_ns: Vec<f64>,
    pub cs: Vec<f64>,
    pub bits: Vec<u32>,
    pub times_ns: Vec<f64>,
    pub delay: Delay,
    pub repeats: usize,
    pub allow_unclocked: bool,
    pub on_incompatible: OnIncompatible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base_seed: u64,
    pub sections: Vec<SweepSection>,
}

/// One enumerated point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub run_id: u64,
    pub section: String,
    pub instance: String,
    pub config: RunConfig,
    /// Why the point is not run, when skipped.
    pub skipped: Option<String>,
}

impl fmt::Display for SweepPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        write!(
            f,
            "graph={} policy={} tau={} c={} b={} d={} time={} seed={}",
            self.instance, c.policy, c.tau_ns, c.c, c.bits, c.d_ns, c.t_total_ns, c.seed
        )
    }
}

/// Raw `key = value` settings with the line each came from.
#[derive(Debug, Clone, Default)]
struct Settings {
    entries: Vec<(String, String, usize)>,
}

impl Settings {
    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }
}

const KEYS: [&str; 11] = [
    "instances",
    "policies",
    "tau",
    "c",
    "b",
    "time",
    "d",
    "repeats",
    "seed",
    "allow_unclocked",
    "on_incompatible",
];

impl SweepSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut top = Settings::default();
        let mut sections: Vec<(String, usize, Settings)> = Vec::new();

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .ok_or_else(|| spec_err(line, format!("malformed section header `{content}`")))?;
                if sections.iter().any(|(n, _, _)| n == name) {
                    return Err(spec_err(line, format!("duplicate section `{name}`")));
                }
                sections.push((name.to_string(), line, Settings::default()));
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| spec_err(line, format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(spec_err(line, format!("unknown key `{key}`")));
            }
            let target = match sections.last_mut() {
                Some((_, _, s)) => {
                    if key == "seed" {
                        return Err(spec_err(line, "`seed` can only be set at top level"));
                    }
                    s
                }
                None => &mut top,
            };
            if target.entries.iter().any(|(k, _, _)| k == key) {
                return Err(spec_err(line, format!("`{key}` set twice")));
            }
            target.entries.push((key.to_string(), value.trim().to_string(), line));
        }

        let base_seed = match top.get("seed") {
            Some((v, line)) => parse_one(v, "seed", line)?,
            None => 0,
        };
        let sections = if sections.is_empty() {
            vec![build_section("main", 1, &top, &Settings::default())?]
        } else {
            sections
                .iter()
                .map(|(name, line, own)| build_section(name, *line, &top, own))
                .collect::<Result<_>>()?
        };
        Ok(SweepSpec { base_seed, sections })
    }

    /// Every point in enumeration order, with skip reasons filled in.
    /// Incompatible points are an error unless their section says `skip`.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let mut out = Vec::new();
        let mut k: u64 = 0;
        for sec in &self.sections {
            for inst in &sec.instances {
                for &policy in &sec.policies {
                    for &tau in &sec.taus_ns {
                        for &c in &sec.cs {
                            for &b in &sec.bits {
                                for &time in &sec.times_ns {
                                    for _ in 0..sec.repeats {
                                        let config = RunConfig::new(policy, tau)
                                            .with_c(c)
                                            .with_bits(b)
                                            .with_delay(sec.delay.resolve(tau))
                                            .with_time(time)
                                            .with_seed(self.base_seed.wrapping_add(k));
                                        let mut point = SweepPoint {
                                            run_id: k,
                                            section: sec.name.clone(),
                                            instance: inst.clone(),
                                            config,
                                            skipped: None,
                                        };
                                        if let Some(reason) = incompatibility(&point.config, sec.allow_unclocked) {
                                            match sec.on_incompatible {
                                                OnIncompatible::Skip => point.skipped = Some(reason),
                                                OnIncompatible::Error => {
                                                    return Err(HarnessError::Usage(format!(
                                                        "section [{}] point {point}: {reason}",
                                                        sec.name
                                                    )))
                                                }
                                            }
                                        }
                                        out.push(point);
                                        k += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Instance names used anywhere in the spec, first appearance first.
    pub fn instance_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for inst in self.sections.iter().flat_map(|s| &s.instances) {
            if !names.contains(inst) {
                names.push(inst.clone());
            }
        }
        names
    }
}

fn incompatibility(config: &RunConfig, allow_unclocked: bool) -> Option<String> {
    if let Err(e) = config.validate() {
        return Some(e.to_string());
    }
    if !allow_unclocked {
        if let Err(e) = config.check_clocking() {
            return Some(format!("{e} (set allow_unclocked to override)"));
        }
    }
    None
}

fn build_section(name: &str, header_line: usize, top: &Settings, own: &Settings) -> Result<SweepSection> {
    let get = |key: &str| own.get(key).or_else(|| top.get(key));
    let required = |key: &str| {
        get(key).ok_or_else(|| spec_err(header_line, format!("section [{name}] is missing `{key}`")))
    };

    let (v, line) = required("instances")?;
    let instances: Vec<String> = split_list(v, "instances", line)?
        .into_iter()
        .map(|s| {
            pbit_core::lookup(s)
                .map(|e| e.name)
                .map_err(|_| spec_err(line, format!("unknown benchmark `{s}`")))
        })
        .collect::<Result<_>>()?;

    let (v, line) = required("policies")?;
    let policies = split_list(v, "policies", line)?
        .into_iter()
        .map(|s| s.parse().map_err(|e: pbit_core::Error| spec_err(line, e.to_string())))
        .collect::<Result<_>>()?;

    let (v, line) = required("tau")?;
    let taus_ns = parse_list(v, "tau", line)?;
    let cs = match get("c") {
        Some((v, line)) => parse_list(v, "c", line)?,
        None => vec![1.0],
    };
    let bits = match get("b") {
        Some((v, line)) => parse_list(v, "b", line)?,
        None => vec![pbit_core::B_REF],
    };
    let times_ns = match get("time") {
        Some((v, line)) => parse_list(v, "time", line)?,
        None => vec![pbit_core::engine::DEFAULT_TIME_NS],
    };
    let delay = match get("d") {
        Some(("tau", _)) => Delay::Tau,
        Some((v, line)) => Delay::Fixed(parse_one(v, "d", line)?),
        None => Delay::Fixed(pbit_core::engine::DEFAULT_DELAY_NS),
    };
    let repeats = match get("repeats") {
        Some((v, line)) => {
            let r: usize = parse_one(v, "repeats", line)?;
            if r == 0 {
                return Err(spec_err(line, "repeats must be at least 1"));
            }
            r
        }
        None => 1,
    };
    let allow_unclocked = match get("allow_unclocked") {
        Some((v, line)) => parse_one(v, "allow_unclocked", line)?,
        None => false,
    };
    let on_incompatible = match get("on_incompatible") {
        Some(("error", _)) | None => OnIncompatible::Error,
        Some(("skip", _)) => OnIncompatible::Skip,
        Some((v, line)) => return Err(spec_err(line, format!("on_incompatible must be error or skip, got `{v}`"))),
    };

    Ok(SweepSection {
        name: name.to_string(),
        instances,
        policies,
        taus_ns,
        cs,
        bits,
        times_ns,
        delay,
        repeats,
        allow_unclocked,
        on_incompatible,
    })
}

fn spec_err(line: usize, reason: impl Into<String>) -> HarnessError {
    HarnessError::Spec {
        line,
        reason: reason.into(),
    }
}

fn split_list<'a>(value: &'a str, key: &str, line: usize) -> Result<Vec<&'a str>> {
    let items: Vec<&str> = value.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(spec_err(line, format!("`{key}` has an empty list item")));
    }
    Ok(items)
}

fn parse_one<T: std::str::FromStr>(value: &str, key: &str, line: usize) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| spec_err(line, format!("bad value `{value}` for `{key}`")))
}

fn parse_list<T: std::str::FromStr>(value: &str, key: &str, line: usize) -> Result<Vec<T>> {
    split_list(value, key, line)?
        .into_iter()
        .map(|s| parse_one(s, key, line))
        .collect()
}

/// Records and (optionally) energy traces from an executed sweep.
#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    pub records: Vec<Record>,
    pub traces: Vec<(u64, Vec<(f64, f64)>)>,
}

/// Runs every non-skipped point on a pool of `jobs` workers and returns
/// the results in enumeration order. The first failing point in that
/// order aborts the sweep.
pub fn execute(points: &[SweepPoint], cache: &InstanceCache, jobs: usize, keep_traces: bool) -> Result<SweepOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;

    let results: Vec<Option<Result<RunResult>>> = pool.install(|| {
        points
            .par_iter()
            .map(|p| p.skipped.is_none().then(|| run_point(p, cache)))
            .collect()
    });

    let mut out = SweepOutput::default();
    for (point, result) in points.iter().zip(results) {
        let Some(result) = result else { continue };
        let result = result.map_err(|source| HarnessError::RunFailed {
            run_id: point.run_id,
            config: point.to_string(),
            source: Box::new(source),
        })?;
        out.records.push(Record::from_result(point.run_id, &result));
        if keep_traces {
            out.traces.push((point.run_id, result.energy_trace));
        }
    }
    Ok(out)
}

fn run_point(point: &SweepPoint, cache: &InstanceCache) -> Result<RunResult> {
    let inst = cache
        .get(&point.instance)
        .ok_or_else(|| HarnessError::UnknownBenchmark(point.instance.clone()))?;
    Ok(pbit_core::run(&inst.model, &inst.graph, &point.config, &inst.entry)?)
}
