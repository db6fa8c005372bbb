// SPDX-License-Identifier: Apache-2.0

//! Synthetic stand-ins with the registry's `(n, m)` and weight style.
//!
//! G11 and G34 are toroidal grids with ±1 weights; the others are uniform
//! random graphs. G6, G18 and G39 carry ±1 weights, the rest unit weights.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;

use pbit_core::{lookup, registry, WeightedGraph};
use pbit_harness::graphs::write_gset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn signed(name: &str) -> bool {
    matches!(name, "G6" | "G11" | "G18" | "G34" | "G39")
}

fn torus(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            edges.push((v, r * cols + (c + 1) % cols));
            edges.push((v, ((r + 1) % rows) * cols + c));
        }
    }
    edges
}

pub fn stand_in(name: &str, seed: u64) -> WeightedGraph {
    let entry = lookup(name).expect("registry name");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = match name {
        "G11" => torus(20, 40),
        "G34" => torus(40, 50),
        _ => {
            let mut set = BTreeSet::new();
            while set.len() < entry.m {
                let i = rng.random_range(0..entry.n);
                let j = rng.random_range(0..entry.n);
                if i != j {
                    set.insert((i.min(j), i.max(j)));
                }
            }
            set.into_iter().collect()
        }
    };
    assert_eq!(pairs.len(), entry.m);
    let sign = signed(name);
    let edges = pairs
        .into_iter()
        .map(|(i, j)| {
            let w = if sign && rng.random_bool(0.5) { -1 } else { 1 };
            (i, j, w)
        });
    WeightedGraph::new(entry.n, edges).expect("valid stand-in")
}

/// Writes `<name>.txt` stand-ins for the given names.
pub fn write_stand_ins(dir: &Path, names: &[&str], seed: u64) {
    for (k, name) in names.iter().enumerate() {
        let g = stand_in(name, seed.wrapping_add(k as u64));
        std::fs::write(dir.join(format!("{name}.txt")), write_gset(&g)).unwrap();
    }
}

pub fn write_all_stand_ins(dir: &Path, seed: u64) {
    let names: Vec<String> = registry().into_iter().map(|e| e.name).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    write_stand_ins(dir, &refs, seed);
}
