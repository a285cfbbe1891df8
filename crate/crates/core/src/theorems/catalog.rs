use std::sync::Arc;

use super::Instance;
use crate::error::Result;
use crate::limits::Limits;
use crate::module::{build_module_with, FiniteModule, ModuleDescription};
use crate::ring::{build_ring_with, FiniteRing, RingDescription};

/// Recipe for an instance catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogSpec {
    pub rings: Vec<RingDescription>,
    /// Modules larger than this are left out.
    pub max_module_order: usize,
    /// Whether to add direct sums of two cyclic quotients.
    pub direct_sums: bool,
}

impl CatalogSpec {
    /// No rings at all.
    pub fn empty() -> Self {
        CatalogSpec {
            rings: Vec::new(),
            max_module_order: 64,
            direct_sums: true,
        }
    }

    /// Rings `Z/n` for `2 <= n <= 12`, the field with four elements, `Z/2[x]/(x^2)`,
    /// `Z/2 x Z/2`, `Z/2 x Z/4` and 2x2 upper triangular matrices over `Z/2`.
    pub fn default_catalog() -> Self {
        let mut rings: Vec<RingDescription> = (2..=12).map(RingDescription::zmod).collect();
        rings.extend([
            RingDescription::poly_quotient(2, vec![1, 1, 1]),
            RingDescription::poly_quotient(2, vec![0, 0, 1]),
            RingDescription::product(vec![RingDescription::zmod(2), RingDescription::zmod(2)]),
            RingDescription::product(vec![RingDescription::zmod(2), RingDescription::zmod(4)]),
            RingDescription::upper_triangular(2, 2),
        ]);
        CatalogSpec {
            rings,
            max_module_order: 64,
            direct_sums: true,
        }
    }
}

/// One ring of a catalog together with its modules.
#[derive(Debug, Clone)]
pub struct CatalogRing {
    pub description: RingDescription,
    pub ring: Arc<FiniteRing>,
    pub modules: Vec<(ModuleDescription, FiniteModule)>,
}

/// Rings with their modules, in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct InstanceCatalog {
    pub rings: Vec<CatalogRing>,
}

impl InstanceCatalog {
    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn module_count(&self) -> usize {
        self.rings.iter().map(|r| r.modules.len()).sum()
    }

    /// For each ring, a ring-only instance followed by one instance per module.
    pub fn instances(&self, limits: &Limits) -> Vec<Instance> {
        let mut out = Vec::new();
        for r in &self.rings {
            out.push(Instance::from_parts(r.description.clone(), r.ring.clone(), None, limits));
            for (d, m) in &r.modules {
                out.push(Instance::from_parts(
                    r.description.clone(),
                    r.ring.clone(),
                    Some((d.clone(), m.clone())),
                    limits,
                ));
            }
        }
        out
    }
}

fn push_unique(modules: &mut Vec<(ModuleDescription, FiniteModule)>, d: ModuleDescription, m: FiniteModule) -> bool {
    if modules.iter().any(|(_, x)| *x == m) {
        return false;
    }
    modules.push((d, m));
    true
}

/// Builds every ring of the recipe and its modules: the regular module, `R/I`
/// for every right ideal `I`, and direct sums of two nonzero cyclic quotients,
/// keeping only modules within the size bound and dropping structural duplicates.
pub fn generate_catalog(spec: &CatalogSpec, limits: &Limits) -> Result<InstanceCatalog> {
    let mut rings = Vec::new();
    for desc in &spec.rings {
        let ring = Arc::new(build_ring_with(desc, limits)?);
        let mut modules = Vec::new();
        let regular = FiniteModule::regular(&ring, limits)?;
        if regular.order() <= spec.max_module_order {
            push_unique(&mut modules, ModuleDescription::Regular, regular.clone());
        }
        let mut quotients = Vec::new();
        for ideal in regular.all_submodules(limits)? {
            if regular.order() / ideal.len() > spec.max_module_order {
                continue;
            }
            let d = ModuleDescription::CyclicQuotient {
                ideal_generators: ideal.generators().iter().map(|&g| ring.coeffs(g)).collect(),
            };
            let m = build_module_with(&ring, &d, limits)?;
            if !m.is_trivial() {
                quotients.push(d.clone());
            }
            push_unique(&mut modules, d, m);
        }
        if spec.direct_sums {
            for (i, a) in quotients.iter().enumerate() {
                for b in &quotients[i..] {
                    let d = ModuleDescription::DirectSum {
                        summands: vec![a.clone(), b.clone()],
                    };
                    let size = |q: &ModuleDescription| build_module_with(&ring, q, limits).map(|m| m.order());
                    if size(a)? * size(b)? > spec.max_module_order {
                        continue;
                    }
                    let m = build_module_with(&ring, &d, limits)?;
                    push_unique(&mut modules, d, m);
                }
            }
        }
        rings.push(CatalogRing {
            description: desc.clone(),
            ring,
            modules,
        });
    }
    Ok(InstanceCatalog { rings })
}
