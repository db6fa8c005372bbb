// SPDX-License-Identifier: Apache-2.0

mod common;

use std::path::Path;
use std::process::{Command, Output};

use pbit_harness::record::read_csv;

fn pbit(dir: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pbit"));
    cmd.args(args).env_remove(pbit_harness::GRAPH_DIR_ENV);
    if let Some(d) = dir {
        cmd.env(pbit_harness::GRAPH_DIR_ENV, d);
    }
    cmd.output().expect("spawn pbit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn graph_dir(names: &[&str]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    common::write_stand_ins(dir.path(), names, 99);
    dir
}

const RUN_G1: [&str; 15] = [
    "run", "--graph", "G1", "--policy", "tick-random", "--tau", "5", "--c", "3", "--b", "10", "--time", "500",
    "--seed", "7",
];

#[test]
fn graphs_lists_the_registry() {
    let o = pbit(None, &["graphs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"G34 2000 4000 1384"));
    assert_eq!(lines[0], "G1 800 19176 11624");
    assert_eq!(lines[9], "G47 1000 9990 6657");
}

#[test]
fn run_prints_one_deterministic_record() {
    let dir = graph_dir(&["G1"]);
    let a = pbit(Some(dir.path()), &RUN_G1);
    assert!(a.status.success(), "{}", stderr(&a));
    let b = pbit(Some(dir.path()), &RUN_G1);
    assert_eq!(a.stdout, b.stdout);

    let recs = read_csv(a.stdout.as_slice()).unwrap();
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert_eq!((r.graph.as_str(), r.policy.as_str(), r.seed), ("G1", "tick-random", 7));
    assert_eq!(r.pbits_physical, 267);
    // 267 physical p-bits for 800 spins.
    assert!((r.cost_norm - 267.0 / 800.0 * (1.0 + 10.0 / 12.0) / 2.0).abs() < 1e-6);
    assert_eq!(r.d_tau_ratio, 1.0);
    assert!(r.normalized_cut > 0.0);
}

#[test]
fn graph_dir_flag_beats_environment() {
    let dir = graph_dir(&["G1"]);
    let empty = tempfile::tempdir().unwrap();
    let mut args: Vec<&str> = RUN_G1.to_vec();
    let d = dir.path().to_str().unwrap();
    args.extend(["--graph-dir", d]);
    let o = pbit(Some(empty.path()), &args);
    assert!(o.status.success(), "{}", stderr(&o));

    let missing = pbit(Some(empty.path()), &RUN_G1);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("not found"));
}

#[test]
fn unknown_graph_exits_2() {
    let o = pbit(None, &["run", "--graph", "G99", "--policy", "gillespie", "--tau", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown benchmark"));
}

#[test]
fn clocked_policy_with_mismatched_delay_exits_2() {
    let dir = graph_dir(&["G11"]);
    let args = ["run", "--graph", "G11", "--policy", "tick-block-random", "--tau", "10", "--d", "5"];
    let o = pbit(Some(dir.path()), &args);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let mut forced = args.to_vec();
    forced.push("--allow-unclocked");
    let o = pbit(Some(dir.path()), &forced);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn bad_flags_exit_2() {
    let o = pbit(None, &["run", "--graph", "G1", "--policy", "warp", "--tau", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pbit(None, &["sweep", "--spec", "no_such_recipe"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pbit(None, &["sweep", "--graph", "G1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_run_is_one_object() {
    let dir = graph_dir(&["G11"]);
    let o = pbit(
        Some(dir.path()),
        &["run", "--graph", "G11", "--policy", "gillespie", "--tau", "10", "--time", "100", "--format", "json"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graph"], "G11");
    assert_eq!(v["d_tau_ratio"], 0.5);
    assert_eq!(v["pbits_physical"], 800);
}

#[test]
fn cartesian_sweep_has_twelve_records_in_order() {
    let dir = graph_dir(&["G11"]);
    let spec = dir.path().join("s.sweep");
    std::fs::write(
        &spec,
        "instances = G11\npolicies = gillespie, tick-random\ntau = 5\nc = 1\nb = 12, 4\nrepeats = 3\ntime = 50\nseed = 10\n",
    )
    .unwrap();
    let out = dir.path().join("out.csv");
    let o = pbit(
        Some(dir.path()),
        &["sweep", "--spec", spec.to_str().unwrap(), "--jobs", "3", "--out", out.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let recs = read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(recs.len(), 12);
    for (k, r) in recs.iter().enumerate() {
        assert_eq!(r.run_id, k as u64);
        assert_eq!(r.seed, 10 + k as u64);
    }
    assert_eq!(recs[0].policy, "gillespie");
    assert_eq!(recs[6].policy, "tick-random");
    assert_eq!((recs[0].b, recs[3].b), (12, 4));
}

#[test]
fn sweep_from_flags_matches_equivalent_spec() {
    let dir = graph_dir(&["G11", "G1"]);
    let spec = dir.path().join("s.sweep");
    std::fs::write(
        &spec,
        "instances = G11, G1\npolicies = tick-block-random-stride\ntau = 5\nd = tau\nc = 2, 3\ntime = 40\nrepeats = 2\nseed = 4\n",
    )
    .unwrap();
    let from_spec = pbit(Some(dir.path()), &["sweep", "--spec", spec.to_str().unwrap()]);
    let from_flags = pbit(
        Some(dir.path()),
        &[
            "sweep", "--graph", "G11,G1", "--policy", "tick-block-random-stride", "--tau", "5", "--d", "tau", "--c",
            "2,3", "--time", "40", "--repeats", "2", "--seed", "4",
        ],
    );
    assert!(from_spec.status.success(), "{}", stderr(&from_spec));
    assert_eq!(from_spec.stdout, from_flags.stdout);
    assert_eq!(read_csv(from_spec.stdout.as_slice()).unwrap().len(), 8);
}

#[test]
fn trace_output_has_points_for_every_run() {
    let dir = graph_dir(&["G11"]);
    let traces = dir.path().join("t.csv");
    let o = pbit(
        Some(dir.path()),
        &[
            "sweep", "--graph", "G11", "--policy", "tick-random", "--tau", "5", "--d", "tau", "--c", "1,3", "--time",
            "100", "--trace-out", traces.to_str().unwrap(),
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&traces).unwrap();
    assert_eq!(text.lines().next(), Some("run_id,t_ns,energy"));
    assert!(text.lines().any(|l| l.starts_with("0,")));
    assert!(text.lines().any(|l| l.starts_with("1,")));
}

#[test]
fn landscape_reads_sweep_output() {
    let dir = graph_dir(&["G11"]);
    let sweep = dir.path().join("r.csv");
    let o = pbit(
        Some(dir.path()),
        &[
            "sweep", "--graph", "G11", "--policy", "gillespie", "--tau", "5,10", "--b", "4,12", "--time", "50",
            "--repeats", "2", "--out", sweep.to_str().unwrap(),
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = pbit(None, &["landscape", sweep.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bin_center_cost,median_cut_norm,max_cut_norm,policy_filter"));
    let rows: Vec<&str> = lines.collect();
    let all: Vec<&str> = rows.iter().filter(|r| r.ends_with(",all")).copied().collect();
    let asy: Vec<&str> = rows.iter().filter(|r| r.ends_with(",async")).copied().collect();
    assert!(!all.is_empty() && all.len() <= 40);
    assert_eq!(
        all.iter().map(|r| r.rsplit_once(',').unwrap().0).collect::<Vec<_>>(),
        asy.iter().map(|r| r.rsplit_once(',').unwrap().0).collect::<Vec<_>>()
    );
}

#[test]
fn landscape_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, pbit_harness::record::csv_header() + "\n").unwrap();
    let o = pbit(None, &["landscape", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let partial = dir.path().join("partial.csv");
    std::fs::write(&partial, "run_id,graph,policy,tau_ns\n0,G1,gillespie,5\n").unwrap();
    let o = pbit(None, &["landscape", partial.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`c`"), "{}", stderr(&o));
}
