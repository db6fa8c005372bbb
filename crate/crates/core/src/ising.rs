// SPDX-License-Identifier: Apache-2.0

//! Ising model with sparse symmetric couplings, and the ±1 spin vector.
//!
//! Energy convention: `H(σ) = −½ σᵀJσ − hᵀσ`. The local field of spin `i`
//! is `s_i = h_i + Σ_j J_ij σ_j`, so flipping spin `i` changes the energy by
//! `2·σ_i·s_i` (σ_i taken before the flip).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::{Error, Result};

/// Sparse symmetric Ising model.
///
/// Couplings are stored in compressed rows with both `(i, j)` and `(j, i)`
/// present, so a row scan yields every neighbour of a spin.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<f64>,
    biases: Vec<f64>,
    sigma: f64,
}

impl IsingModel {
    /// Builds a model from unordered coupling pairs. Each pair may appear
    /// once, in either orientation; self-couplings are rejected.
    pub fn new(n: usize, couplings: &[(usize, usize, f64)], biases: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModel(format!("need at least 2 spins, got {n}")));
        }
        if biases.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: biases.len(),
            });
        }
        if let Some(b) = biases.iter().find(|b| !b.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite bias {b}")));
        }

        let mut degree = vec![0usize; n];
        for &(i, j, w) in couplings {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), n });
            }
            if i == j {
                return Err(Error::InvalidModel(format!("diagonal coupling at ({i}, {i})")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidModel(format!("non-finite coupling at ({i}, {j})")));
            }
            degree[i] += 1;
            degree[j] += 1;
        }

        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        for d in &degree {
            row_ptr.push(row_ptr.last().copied().unwrap_or(0) + d);
        }
        let nnz = row_ptr[n];
        let mut cols = vec![0usize; nnz];
        let mut weights = vec![0.0f64; nnz];
        let mut fill = row_ptr[..n].to_vec();
        for &(i, j, w) in couplings {
            cols[fill[i]] = j;
            weights[fill[i]] = w;
            fill[i] += 1;
            cols[fill[j]] = i;
            weights[fill[j]] = w;
            fill[j] += 1;
        }

        // Sort each row by column so duplicates are adjacent and scans are
        // cache friendly.
        for i in 0..n {
            let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
            let mut row: Vec<(usize, f64)> = cols[lo..hi]
                .iter()
                .copied()
                .zip(weights[lo..hi].iter().copied())
                .collect();
            row.sort_by_key(|&(c, _)| c);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidModel(format!("duplicate coupling ({i}, {})", w[0].0)));
            }
            for (k, (c, w)) in row.into_iter().enumerate() {
                cols[lo + k] = c;
                weights[lo + k] = w;
            }
        }

        let mut model = IsingModel {
            n,
            row_ptr,
            cols,
            weights,
            biases,
            sigma: 0.0,
        };
        model.sigma = model.dense_sigma();
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// Number of stored unordered coupling pairs.
    pub fn coupling_count(&self) -> usize {
        self.cols.len() / 2
    }

    /// Neighbours of spin `i` as `(j, J_ij)`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.cols[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    /// Every coupling once, as `(i, j, J_ij)` with `i < j`.
    pub fn couplings(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| j > i)
                .map(move |(j, w)| (i, j, w))
        })
    }

    /// Coupling scale `σ = √((N−1)·Var(J))`.
    ///
    /// The variance runs over all N² entries of the dense coupling matrix,
    /// structural zeros and the zero diagonal included, which makes σ a
    /// single scalar for the whole instance rather than a per-row value.
    pub fn coupling_sigma(&self) -> Result<f64> {
        if self.sigma > 0.0 {
            Ok(self.sigma)
        } else {
            Err(Error::DegenerateModel)
        }
    }

    fn dense_sigma(&self) -> f64 {
        let entries = (self.n as f64) * (self.n as f64);
        let (s1, s2) = self
            .weights
            .iter()
            .fold((0.0f64, 0.0f64), |(a, b), &w| (a + w, b + w * w));
        let mean = s1 / entries;
        let var = (s2 / entries - mean * mean).max(0.0);
        libm::sqrt((self.n as f64 - 1.0) * var)
    }

    /// Largest possible |local field|: `max_i (|h_i| + Σ_j |J_ij|)`.
    pub fn max_abs_field(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                libm::fabs(self.biases[i]) + self.neighbors(i).map(|(_, w)| libm::fabs(w)).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Local field on a raw spin slice without bounds checks on length.
    #[inline]
    pub(crate) fn field_on(&self, spins: &[i8], i: usize) -> f64 {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        let mut s = self.biases[i];
        for k in lo..hi {
            s += self.weights[k] * f64::from(spins[self.cols[k]]);
        }
        s
    }

    pub(crate) fn energy_on(&self, spins: &[i8]) -> f64 {
        let mut pair = 0.0;
        let mut bias = 0.0;
        for i in 0..self.n {
            let si = f64::from(spins[i]);
            let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
            let mut acc = 0.0;
            for k in lo..hi {
                if self.cols[k] > i {
                    acc += self.weights[k] * f64::from(spins[self.cols[k]]);
                }
            }
            pair += si * acc;
            bias += self.biases[i] * si;
        }
        -pair - bias
    }

    fn check_len(&self, state: &SpinState) -> Result<()> {
        if state.len() == self.n {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.n,
                actual: state.len(),
            })
        }
    }
}

/// `H(σ) = −½ σᵀJσ − hᵀσ`.
pub fn energy(model: &IsingModel, state: &SpinState) -> Result<f64> {
    model.check_len(state)?;
    Ok(model.energy_on(state.as_slice()))
}

/// `s_i = h_i + Σ_j J_ij σ_j`.
pub fn local_field(model: &IsingModel, state: &SpinState, i: usize) -> Result<f64> {
    model.check_len(state)?;
    if i >= model.n {
        return Err(Error::IndexOutOfRange { index: i, n: model.n });
    }
    Ok(model.field_on(state.as_slice(), i))
}

/// Vector of ±1 spins tagged with the simulation time it describes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    values: Vec<i8>,
    /// Simulation time in ns.
    pub clock: f64,
}

impl SpinState {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::param("spin", format!("spin values must be ±1, got {v}")));
        }
        Ok(SpinState { values, clock: 0.0 })
    }

    pub fn uniform(n: usize, value: i8) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Independent fair ±1 spins, one uniform draw per spin in index order
    /// (`u < 0.5` maps to +1).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let values = (0..n)
            .map(|_| if crate::pbit::unit_draw(rng) < 0.5 { 1 } else { -1 })
            .collect();
        SpinState { values, clock: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.values[i]
    }

    /// Sets spin `i`; any nonnegative value maps to +1, negative to −1.
    pub fn set(&mut self, i: usize, value: i8) {
        self.values[i] = if value >= 0 { 1 } else { -1 };
    }

    pub fn flip(&mut self, i: usize) {
        self.values[i] = -self.values[i];
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i8> {
        self.values
    }
}
