use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{registry, verify_theorem, Instance, InstanceCatalog, Outcome, Scope, TheoremVerdict};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::ModuleDescription;
use crate::ring::RingDescription;

/// Self-contained description of one (theorem, instance) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reproduction {
    pub theorem: String,
    pub ring: RingDescription,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDescription>,
}

impl Reproduction {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("reproduction serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("bad reproduction file: {e}")))
    }

    /// Rebuilds the instance and re-runs the theorem.
    pub fn replay(&self, limits: &Limits) -> Result<TheoremVerdict> {
        let inst = match &self.module {
            Some(m) => Instance::with_module(&self.ring, m, limits)?,
            None => Instance::ring(&self.ring, limits)?,
        };
        verify_theorem(&self.theorem, &inst)
    }
}

/// One checked pair.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub verdict: TheoremVerdict,
    pub reproduction: Reproduction,
}

/// Outcome counts for one theorem.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub resource_limit: usize,
}

impl SweepSummary {
    fn add(&mut self, o: &Outcome) {
        match o {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Skipped(_) => self.skipped += 1,
            Outcome::ResourceLimit(_) => self.resource_limit += 1,
        }
    }
}

/// All verdicts of a sweep in catalog order, then registry order.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    /// Per-theorem counts, keyed by id.
    pub fn summary(&self) -> BTreeMap<&'static str, SweepSummary> {
        let mut out: BTreeMap<&'static str, SweepSummary> = BTreeMap::new();
        for e in &self.entries {
            out.entry(e.verdict.theorem).or_default().add(&e.verdict.outcome);
        }
        out
    }

    pub fn totals(&self) -> SweepSummary {
        let mut t = SweepSummary::default();
        for e in &self.entries {
            t.add(&e.verdict.outcome);
        }
        t
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepEntry> {
        self.entries.iter().filter(|e| e.verdict.outcome == Outcome::Fail)
    }
}

fn check(id: &'static str, inst: &Instance) -> SweepEntry {
    let verdict = verify_theorem(id, inst).unwrap_or_else(|e| TheoremVerdict {
        theorem: id,
        instance: inst.label(),
        clauses: Vec::new(),
        outcome: Outcome::Fail,
        counterexample: Some(format!("evaluation error: {e}")),
        note: None,
        elapsed: Default::default(),
    });
    SweepEntry {
        verdict,
        reproduction: Reproduction {
            theorem: id.to_string(),
            ring: inst.ring_description.clone(),
            module: inst.module.as_ref().map(|m| m.description.clone()),
        },
    }
}

/// Runs every selected theorem on every instance of matching scope.
///
/// `theorems` empty means all. `jobs` bounds the worker threads; the report
/// is identical for every value.
pub fn sweep(catalog: &InstanceCatalog, theorems: &[&str], jobs: usize, limits: &Limits) -> Result<SweepReport> {
    let selected: Vec<&'static super::Theorem> = if theorems.is_empty() {
        registry::THEOREMS.iter().collect()
    } else {
        theorems
            .iter()
            .map(|id| {
                registry::theorem(id).ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "unknown theorem '{id}'; valid ids: {}",
                        registry::theorem_ids().join(", ")
                    ))
                })
            })
            .collect::<Result<_>>()?
    };
    let instances = catalog.instances(limits);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let per_instance: Vec<Vec<SweepEntry>> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                let scope = if inst.module.is_some() { Scope::Module } else { Scope::Ring };
                selected
                    .iter()
                    .filter(|t| t.scope == scope)
                    .map(|t| check(t.id, inst))
                    .collect()
            })
            .collect()
    });
    Ok(SweepReport {
        entries: per_instance.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{generate_catalog, CatalogSpec};
    use super::*;

    #[test]
    fn empty_catalog_empty_report() {
        let c = InstanceCatalog::default();
        let r = sweep(&c, &[], 2, &Limits::default()).unwrap();
        assert!(r.entries.is_empty());
    }

    #[test]
    fn noncommutative_only_skips_thm_we() {
        let spec = CatalogSpec {
            rings: vec![RingDescription::upper_triangular(2, 2)],
            max_module_order: 16,
            direct_sums: false,
        };
        let c = generate_catalog(&spec, &Limits::default()).unwrap();
        let r = sweep(&c, &["THM-WE"], 1, &Limits::default()).unwrap();
        assert!(!r.entries.is_empty());
        assert!(r.entries.iter().all(|e| matches!(e.verdict.outcome, Outcome::Skipped(_))));
    }

    #[test]
    fn reproduction_round_trips() {
        let rep = Reproduction {
            theorem: "THM-WE".into(),
            ring: RingDescription::zmod(8),
            module: Some(ModuleDescription::DirectSum {
                summands: vec![
                    ModuleDescription::CyclicQuotient {
                        ideal_generators: vec![vec![2]],
                    },
                    ModuleDescription::Regular,
                ],
            }),
        };
        let back = Reproduction::from_toml(&rep.to_toml()).unwrap();
        assert_eq!(back, rep);
        assert!(back.replay(&Limits::default()).unwrap().passed());
    }
}
