//! Shared fixtures for the criterion benchmarks in `benches/`.

use geodual_core::classify::{realize_group, surface_from_subgroup, SubgroupRecord};
use geodual_core::FlagSurface;

/// The surface of the trivial subgroup of `H_d`, with `|H_d|` flags.
pub fn regular_surface(d: usize) -> FlagSurface {
    let g = realize_group(d, 10_000).expect("finite geodesic group");
    surface_from_subgroup(&g, &SubgroupRecord::trivial()).expect("valid surface")
}
