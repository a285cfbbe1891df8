use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use super::{evaluate_ring_property, module_props, ModProp, RingProp, Verdict};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::hom::{end_ring, EndoRing};
use crate::limits::Limits;
use crate::module::{is_isomorphic, FiniteModule, ModElem, Submodule};
use crate::ring::{FiniteRing, RingElem};

/// A module together with lazily computed, shared data used by several
/// property procedures: scalar images and kernels, cyclic submodules, the
/// submodule lattice and the endomorphism ring.
///
/// All caches are write-once, so an analysis can be shared across threads.
pub struct ModuleAnalysis {
    module: FiniteModule,
    limits: Limits,
    images: OnceLock<Vec<ElemSet>>,
    kernels: OnceLock<Vec<ElemSet>>,
    cyclics: OnceLock<Vec<ElemSet>>,
    lattice: OnceLock<Result<Vec<Submodule>>>,
    endo: OnceLock<Result<EndoRing>>,
    cyclic_subs: OnceLock<Result<Vec<ModuleAnalysis>>>,
    all_subs: OnceLock<Result<Vec<ModuleAnalysis>>>,
    endo_props: Mutex<HashMap<RingProp, Result<Verdict>>>,
    verdicts: Mutex<HashMap<ModProp, Result<Verdict>>>,
}

impl ModuleAnalysis {
    pub fn new(module: FiniteModule, limits: Limits) -> Self {
        ModuleAnalysis {
            module,
            limits,
            images: OnceLock::new(),
            kernels: OnceLock::new(),
            cyclics: OnceLock::new(),
            lattice: OnceLock::new(),
            endo: OnceLock::new(),
            cyclic_subs: OnceLock::new(),
            all_subs: OnceLock::new(),
            endo_props: Mutex::new(HashMap::new()),
            verdicts: Mutex::new(HashMap::new()),
        }
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.module.ring()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `Ma` as an element set.
    pub fn image(&self, a: RingElem) -> &ElemSet {
        &self
            .images
            .get_or_init(|| self.ring().elements().map(|a| self.module.raw_scalar_image(a)).collect())[a]
    }

    /// `l_M(a)` as an element set.
    pub fn kernel(&self, a: RingElem) -> &ElemSet {
        &self
            .kernels
            .get_or_init(|| self.ring().elements().map(|a| self.module.raw_scalar_kernel(a)).collect())[a]
    }

    /// `mR` as an element set.
    pub fn cyclic(&self, m: ModElem) -> &ElemSet {
        &self.cyclics.get_or_init(|| {
            self.module
                .elements()
                .map(|m| self.module.cyclic_submodule(m).set().clone())
                .collect()
        })[m]
    }

    pub fn lattice(&self) -> Result<&[Submodule]> {
        self.lattice
            .get_or_init(|| self.module.all_submodules(&self.limits))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn end_ring(&self) -> Result<&EndoRing> {
        self.endo
            .get_or_init(|| end_ring(&self.module, &self.limits))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// A ring property of `End_R(M)`.
    pub fn end_ring_property(&self, prop: RingProp) -> Result<Verdict> {
        if let Some(v) = self.endo_props.lock().expect("cache poisoned").get(&prop) {
            return v.clone();
        }
        let v = self
            .end_ring()
            .and_then(|s| evaluate_ring_property(s.ring(), prop, &self.limits));
        self.endo_props
            .lock()
            .expect("cache poisoned")
            .insert(prop, v.clone());
        v
    }

    /// Evaluates a property, caching the verdict.
    pub fn evaluate(&self, prop: ModProp) -> Result<Verdict> {
        if let Some(v) = self.verdicts.lock().expect("cache poisoned").get(&prop) {
            return v.clone();
        }
        let start = Instant::now();
        let v = module_props::decide(self, prop).map(|cx| {
            let mut v = Verdict::decided(prop.name(), cx);
            v.elapsed = start.elapsed();
            v
        });
        self.verdicts
            .lock()
            .expect("cache poisoned")
            .insert(prop, v.clone());
        v
    }

    pub fn holds(&self, prop: ModProp) -> Result<bool> {
        Ok(self.evaluate(prop)?.holds)
    }

    /// `N` as a submodule with an additive generating set.
    pub fn submodule(&self, set: &ElemSet) -> Submodule {
        Submodule::new(set.clone(), self.module.radix().greedy_generators(set))
    }

    /// Decides `M/N ≅ K` for submodules `N`, `K`.
    pub fn quotient_isomorphic_to(&self, n: &ElemSet, k: &ElemSet) -> Result<bool> {
        if self.module.order() != n.len() * k.len() {
            return Ok(false);
        }
        let q = self.module.quotient(&self.submodule(n), &self.limits)?.module;
        let ks = self.module.present_submodule(&self.submodule(k), &self.limits)?.module;
        Ok(is_isomorphic(&q, &ks, &self.limits)?.holds)
    }

    /// Analyses of the distinct cyclic submodules, each presented as a module.
    pub fn cyclic_submodules(&self) -> Result<&[ModuleAnalysis]> {
        self.cyclic_subs
            .get_or_init(|| {
                let subs: Vec<Submodule> = self.module.cyclic_submodules();
                subs.iter().map(|n| self.present(n)).collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Analyses of every submodule, each presented as a module.
    pub fn all_submodules(&self) -> Result<&[ModuleAnalysis]> {
        self.all_subs
            .get_or_init(|| {
                let lattice = self.lattice()?;
                lattice.iter().map(|n| self.present(n)).collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    fn present(&self, n: &Submodule) -> Result<ModuleAnalysis> {
        let p = self.module.present_submodule(n, &self.limits)?;
        Ok(ModuleAnalysis::new(p.module, self.limits))
    }

    /// Whether `R/Ann_R(M)` is a regular ring.
    pub fn annihilator_quotient_regular(&self) -> Result<bool> {
        let ring = self.ring();
        let ann = self.module.annihilator();
        let (q, _) = ring.quotient_ring(&ann, &self.limits)?;
        Ok(evaluate_ring_property(&Arc::new(q), RingProp::Regular, &self.limits)?.holds)
    }

    pub(crate) fn require_commutative(&self) -> Result<()> {
        if self.ring().is_commutative() {
            Ok(())
        } else {
            Err(Error::NotCommutative)
        }
    }
}
