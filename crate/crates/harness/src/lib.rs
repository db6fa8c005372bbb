// SPDX-License-Identifier: Apache-2.0

//! File formats, sweeps and the `pbit` command line built on `pbit-core`.

pub mod error;
pub mod graphs;
pub mod landscape;
pub mod record;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use graphs::{load_instance, resolve_dir, Instance, InstanceCache, GRAPH_DIR_ENV};
pub use record::{read_csv, write_csv, write_json, Record};
pub use sweep::{execute, load_spec, SweepOutput, SweepPoint, SweepSpec};
