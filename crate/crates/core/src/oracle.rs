// SPDX-License-Identifier: Apache-2.0

//! Exhaustive oracles for small instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::gset::WeightedGraph;
use crate::ising::{IsingModel, SpinState};
use crate::{Error, Result};

pub const MAXCUT_LIMIT: usize = 24;
pub const BOLTZMANN_LIMIT: usize = 20;

/// Maximum cut by enumeration of the `2^(n−1)` partitions with vertex 0
/// fixed on the +1 side. Walks the partitions in Gray-code order so each
/// step flips one vertex.
pub fn brute_force_maxcut(graph: &WeightedGraph) -> Result<(i64, SpinState)> {
    let n = graph.n();
    if n > MAXCUT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: MAXCUT_LIMIT,
        });
    }
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(i, j, w) in graph.edges() {
        adj[i].push((j, w));
        adj[j].push((i, w));
    }

    let mut spins = vec![1i8; n];
    let mut cut = 0i64;
    let mut best = (0i64, spins.clone());
    let free = n.saturating_sub(1);
    for step in 1u64..(1u64 << free) {
        // Vertex flipped between Gray codes step−1 and step.
        let v = 1 + step.trailing_zeros() as usize;
        for &(u, w) in &adj[v] {
            // Edge goes from uncut to cut when the endpoints currently agree.
            cut += if spins[u] == spins[v] { w } else { -w };
        }
        spins[v] = -spins[v];
        if cut > best.0 {
            best = (cut, spins.clone());
        }
    }
    Ok((best.0, SpinState::new(best.1)?))
}

/// Index of a spin configuration: bit `k` set iff spin `k` is +1.
pub fn state_index(spins: &[i8]) -> usize {
    spins
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 0)
        .fold(0usize, |acc, (k, _)| acc | (1 << k))
}

/// Spins for a [`state_index`].
pub fn index_state(index: usize, n: usize) -> Vec<i8> {
    (0..n).map(|k| if index >> k & 1 == 1 { 1 } else { -1 }).collect()
}

/// Stationary distribution of single-site p-bit updates at fixed gain `i0`,
/// indexed by [`state_index`].
///
/// The p-bit conditional gives odds `P(+1)/P(−1) = e^{2·i0·s_i}`, and
/// flipping spin `i` from −1 to +1 changes the energy by `−2·s_i`, so
/// detailed balance holds for `P(σ) ∝ exp(−i0·H(σ))`.
pub fn brute_force_boltzmann(model: &IsingModel, i0: f64) -> Result<Vec<f64>> {
    let n = model.n();
    if n > BOLTZMANN_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BOLTZMANN_LIMIT,
        });
    }
    let energies: Vec<f64> = (0..1usize << n)
        .map(|s| model.energy_on(&index_state(s, n)))
        .collect();
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies
        .iter()
        .map(|&e| libm::exp(-i0 * (e - e_min)))
        .collect();
    let z: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / z).collect())
}
