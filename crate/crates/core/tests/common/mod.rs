//! Helpers shared by the integration tests.

#![allow(dead_code)]

pub mod naive;
pub mod oracle;

use std::sync::Arc;

use modreg::limits::Limits;
use modreg::theorems::{generate_catalog, CatalogSpec, InstanceCatalog};
use modreg::{build_module, build_ring, FiniteModule, FiniteRing, ModuleDescription, RingDescription};

pub fn ring(d: &RingDescription) -> Arc<FiniteRing> {
    Arc::new(build_ring(d).expect("ring builds"))
}

pub fn zmod(n: u64) -> Arc<FiniteRing> {
    ring(&RingDescription::zmod(n))
}

pub fn module(r: &Arc<FiniteRing>, d: &ModuleDescription) -> FiniteModule {
    build_module(r, d).expect("module builds")
}

/// `Z/2 + Z/4` with the integer action of `Z/8`.
pub fn z2_plus_z4() -> FiniteModule {
    module(
        &zmod(8),
        &ModuleDescription::ActionMatrices {
            invariant_factors: vec![2, 4],
            action: vec![vec![vec![1, 0], vec![0, 1]]],
        },
    )
}

/// `Z/2 + Z/2` over `Z/2`.
pub fn f2_plane() -> FiniteModule {
    module(
        &zmod(2),
        &ModuleDescription::ActionMatrices {
            invariant_factors: vec![2, 2],
            action: vec![vec![vec![1, 0], vec![0, 1]]],
        },
    )
}

pub fn default_catalog() -> InstanceCatalog {
    generate_catalog(&CatalogSpec::default_catalog(), &Limits::default()).expect("catalog builds")
}

/// Path of a file under `tests/fixtures`.
pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
