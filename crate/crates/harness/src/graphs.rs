// SPDX-License-Identifier: Apache-2.0

//! Loading G-set instance files from disk.
//!
//! Files are looked up by registry name in the graph directory, trying
//! `<name>`, `<name>.txt`, `<name>.rud` and `<name>.gset` (and lowercase
//! variants). Loaded graphs are checked against the registry's `(n, m)`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pbit_core::{gset, BenchmarkEntry, IsingModel, WeightedGraph};

use crate::error::{HarnessError, Result};

/// Environment variable consulted when no directory is given explicitly.
pub const GRAPH_DIR_ENV: &str = "PBIT_GRAPH_DIR";

const EXTENSIONS: [&str; 4] = ["", ".txt", ".rud", ".gset"];

/// A registry instance loaded from disk.
#[derive(Debug)]
pub struct Instance {
    pub entry: BenchmarkEntry,
    pub graph: WeightedGraph,
    pub model: IsingModel,
    pub path: PathBuf,
}

/// Resolves the graph directory: explicit argument first, then
/// `PBIT_GRAPH_DIR`, then the working directory.
pub fn resolve_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(GRAPH_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Finds the file holding instance `name` in `dir`.
pub fn locate(dir: &Path, name: &str) -> Option<PathBuf> {
    let lower = name.to_ascii_lowercase();
    [name, lower.as_str()]
        .iter()
        .flat_map(|stem| EXTENSIONS.iter().map(move |ext| dir.join(format!("{stem}{ext}"))))
        .find(|p| p.is_file())
}

/// Loads and validates one registry instance.
pub fn load_instance(dir: &Path, name: &str) -> Result<Instance> {
    let entry = gset::lookup(name).map_err(|_| HarnessError::UnknownBenchmark(name.to_string()))?;
    let path = locate(dir, &entry.name).ok_or_else(|| HarnessError::GraphNotFound {
        name: entry.name.clone(),
        dirs: dir.display().to_string(),
    })?;
    let text = std::fs::read_to_string(&path).map_err(|source| HarnessError::Io {
        path: path.clone(),
        source,
    })?;
    let graph = gset::parse_gset(&text).map_err(|source| HarnessError::Graph {
        path: path.clone(),
        source,
    })?;
    entry.validate(&graph).map_err(|source| HarnessError::Graph {
        path: path.clone(),
        source,
    })?;
    let model = graph.to_ising()?;
    Ok(Instance {
        entry,
        graph,
        model,
        path,
    })
}

/// Instances shared by a sweep, loaded once each.
#[derive(Debug, Default)]
pub struct InstanceCache {
    loaded: BTreeMap<String, Arc<Instance>>,
}

impl InstanceCache {
    pub fn load_all<S: AsRef<str>>(dir: &Path, names: &[S]) -> Result<Self> {
        let mut loaded = BTreeMap::new();
        for name in names {
            let inst = load_instance(dir, name.as_ref())?;
            loaded.insert(inst.entry.name.clone(), Arc::new(inst));
        }
        Ok(InstanceCache { loaded })
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Instance>> {
        self.loaded
            .get(name)
            .or_else(|| self.loaded.values().find(|i| i.entry.name.eq_ignore_ascii_case(name)))
    }
}

/// Writes a graph in G-set text format.
pub fn write_gset(graph: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.m());
    for &(i, j, w) in graph.edges() {
        out.push_str(&format!("{} {} {}\n", i + 1, j + 1, w));
    }
    out
}
