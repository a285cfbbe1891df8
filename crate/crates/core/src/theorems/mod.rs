//! Executable theorem statements checked instance by instance.
//!
//! Each registered theorem evaluates a list of named clauses on a ring or a
//! module and then checks the relations between them (equivalences,
//! implications, implication chains or plain assertions). A verdict confirms
//! the statement on one instance or refutes it; nothing is proved.

mod catalog;
mod registry;
mod sweep;

use std::sync::Arc;
use std::time::{Duration, Instant};

pub use catalog::{generate_catalog, CatalogRing, CatalogSpec, InstanceCatalog};
pub use registry::{theorem, theorem_ids, THEOREMS};
pub use sweep::{sweep, Reproduction, SweepEntry, SweepReport, SweepSummary};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{build_module_with, FiniteModule, ModuleDescription};
use crate::props::ModuleAnalysis;
use crate::ring::{build_ring_with, FiniteRing, RingDescription};

/// Justification for discharging finite generation and finite presentation.
pub const FINITENESS_NOTE: &str = "every finite module over a finite ring is finitely generated; \
it is also finitely presented, since the kernel of a finite free cover R^n -> M is a finite \
module and hence finitely generated";

/// What a theorem quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Ring,
    Module,
}

/// Instance filters. A theorem is skipped on instances that violate one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    Commutative,
    Nontrivial,
    Multiplication,
    Duo,
    StronglyFRegular,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::Commutative => "commutative ring",
            Hypothesis::Nontrivial => "nontrivial module",
            Hypothesis::Multiplication => "multiplication module",
            Hypothesis::Duo => "duo module",
            Hypothesis::StronglyFRegular => "strongly F-regular module",
        }
    }
}

/// How clauses must relate for a pass. Indices refer to the clause list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// All listed clauses have the same truth value.
    Equiv(Vec<usize>),
    /// The first clause implies the second.
    Implies(usize, usize),
    /// Each clause implies the next one.
    Chain(Vec<usize>),
    /// The clause is true.
    Holds(usize),
}

/// A named clause and its truth value on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub label: String,
    pub value: bool,
}

/// Clauses plus the relations a passing instance must satisfy.
#[derive(Debug, Clone, Default)]
pub struct Evaluation {
    pub clauses: Vec<Clause>,
    pub relations: Vec<Relation>,
}

impl Evaluation {
    pub fn new() -> Self {
        Evaluation::default()
    }

    /// Appends a clause and returns its index.
    pub fn clause(&mut self, label: impl Into<String>, value: bool) -> usize {
        self.clauses.push(Clause {
            label: label.into(),
            value,
        });
        self.clauses.len() - 1
    }

    pub fn relate(&mut self, r: Relation) {
        self.relations.push(r);
    }

    /// Appends clauses that must all be equivalent.
    pub fn equivalent(labels_values: Vec<(String, bool)>) -> Self {
        let mut e = Evaluation::new();
        let idx = labels_values.into_iter().map(|(l, v)| e.clause(l, v)).collect();
        e.relate(Relation::Equiv(idx));
        e
    }

    /// First violated relation, described in words.
    pub fn violation(&self) -> Option<String> {
        let c = |i: usize| &self.clauses[i];
        let show = |i: usize| format!("'{}'={}", c(i).label, c(i).value);
        for r in &self.relations {
            match r {
                Relation::Equiv(ix) => {
                    if let Some(&j) = ix.iter().find(|&&j| c(j).value != c(ix[0]).value) {
                        return Some(format!("equivalence broken: {} but {}", show(ix[0]), show(j)));
                    }
                }
                Relation::Implies(a, b) => {
                    if c(*a).value && !c(*b).value {
                        return Some(format!("implication broken: {} but {}", show(*a), show(*b)));
                    }
                }
                Relation::Chain(ix) => {
                    if let Some(w) = ix.windows(2).find(|w| c(w[0]).value && !c(w[1]).value) {
                        return Some(format!("chain broken: {} but {}", show(w[0]), show(w[1])));
                    }
                }
                Relation::Holds(a) => {
                    if !c(*a).value {
                        return Some(format!("assertion broken: {}", show(*a)));
                    }
                }
            }
        }
        None
    }
}

/// Outcome of checking one theorem on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped(String),
    ResourceLimit(String),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped(_) => "skipped",
            Outcome::ResourceLimit(_) => "resource_limit",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Outcome::Skipped(r) | Outcome::ResourceLimit(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub theorem: &'static str,
    pub instance: String,
    pub clauses: Vec<Clause>,
    pub outcome: Outcome,
    /// Why the instance refutes the statement.
    pub counterexample: Option<String>,
    /// How global hypotheses were discharged, when relevant.
    pub note: Option<&'static str>,
    pub elapsed: Duration,
}

impl TheoremVerdict {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// A registered statement.
pub struct Theorem {
    pub id: &'static str,
    pub scope: Scope,
    pub hypotheses: &'static [Hypothesis],
    /// Whether finite generation or presentation is assumed.
    pub finiteness: bool,
    pub(crate) eval: fn(&Instance) -> Result<Evaluation>,
}

impl std::fmt::Debug for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theorem").field("id", &self.id).finish()
    }
}

/// A module together with the description it was built from.
pub struct ModuleInstance {
    pub description: ModuleDescription,
    pub analysis: ModuleAnalysis,
}

/// A ring, optionally with a module over it.
pub struct Instance {
    pub ring_description: RingDescription,
    pub ring: Arc<FiniteRing>,
    pub module: Option<ModuleInstance>,
    pub limits: Limits,
}

impl Instance {
    pub fn ring(desc: &RingDescription, limits: &Limits) -> Result<Self> {
        Ok(Instance {
            ring_description: desc.clone(),
            ring: Arc::new(build_ring_with(desc, limits)?),
            module: None,
            limits: *limits,
        })
    }

    pub fn with_module(ring_desc: &RingDescription, module_desc: &ModuleDescription, limits: &Limits) -> Result<Self> {
        let mut inst = Instance::ring(ring_desc, limits)?;
        let m = build_module_with(&inst.ring, module_desc, limits)?;
        inst.module = Some(ModuleInstance {
            description: module_desc.clone(),
            analysis: ModuleAnalysis::new(m, *limits),
        });
        Ok(inst)
    }

    /// Wraps an already built module.
    pub fn from_parts(
        ring_description: RingDescription,
        ring: Arc<FiniteRing>,
        module: Option<(ModuleDescription, FiniteModule)>,
        limits: &Limits,
    ) -> Self {
        Instance {
            ring_description,
            ring,
            module: module.map(|(description, m)| ModuleInstance {
                description,
                analysis: ModuleAnalysis::new(m, *limits),
            }),
            limits: *limits,
        }
    }

    pub fn label(&self) -> String {
        match &self.module {
            Some(m) => format!("{} :: {}", self.ring_description.label(), m.description.label()),
            None => self.ring_description.label(),
        }
    }

    /// The module analysis, or an error for ring-only instances.
    pub fn analysis(&self) -> Result<&ModuleAnalysis> {
        self.module
            .as_ref()
            .map(|m| &m.analysis)
            .ok_or_else(|| Error::InvalidParameter("theorem needs a module".into()))
    }
}

fn skip_reason(th: &Theorem, inst: &Instance) -> Result<Option<String>> {
    use crate::props::ModProp;
    if th.scope == Scope::Module && inst.module.is_none() {
        return Ok(Some("no module supplied".into()));
    }
    for &h in th.hypotheses {
        let ok = match h {
            Hypothesis::Commutative => inst.ring.is_commutative(),
            Hypothesis::Nontrivial => !inst.analysis()?.module().is_trivial(),
            Hypothesis::Multiplication => inst.analysis()?.holds(ModProp::Multiplication)?,
            Hypothesis::Duo => inst.analysis()?.holds(ModProp::Duo)?,
            Hypothesis::StronglyFRegular => inst.analysis()?.holds(ModProp::StronglyFRegular)?,
        };
        if !ok {
            return Ok(Some(format!("hypothesis not met: {}", h.name())));
        }
    }
    Ok(None)
}

/// Checks one theorem on one instance.
///
/// Hypothesis violations yield [`Outcome::Skipped`] and exceeded caps yield
/// [`Outcome::ResourceLimit`]; any other error is returned.
pub fn verify_theorem(id: &str, inst: &Instance) -> Result<TheoremVerdict> {
    let th = theorem(id).ok_or_else(|| {
        Error::InvalidParameter(format!("unknown theorem '{id}'; valid ids: {}", theorem_ids().join(", ")))
    })?;
    let start = Instant::now();
    let mut verdict = TheoremVerdict {
        theorem: th.id,
        instance: inst.label(),
        clauses: Vec::new(),
        outcome: Outcome::Pass,
        counterexample: None,
        note: th.finiteness.then_some(FINITENESS_NOTE),
        elapsed: Duration::ZERO,
    };
    let evaluated = skip_reason(th, inst).and_then(|skip| match skip {
        Some(reason) => Ok(Err(reason)),
        None => (th.eval)(inst).map(Ok),
    });
    match evaluated {
        Ok(Err(reason)) => verdict.outcome = Outcome::Skipped(reason),
        Ok(Ok(eval)) => {
            verdict.counterexample = eval.violation();
            verdict.outcome = if verdict.counterexample.is_some() {
                Outcome::Fail
            } else {
                Outcome::Pass
            };
            verdict.clauses = eval.clauses;
        }
        Err(Error::ResourceLimit(msg)) => verdict.outcome = Outcome::ResourceLimit(msg),
        Err(e) => return Err(e),
    }
    verdict.elapsed = start.elapsed();
    Ok(verdict)
}
