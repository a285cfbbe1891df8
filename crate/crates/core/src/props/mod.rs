//! Named ring and module properties as total decision procedures.
//!
//! Every property is decided by exhaustive evaluation. A `false` verdict
//! carries the first counterexample in enumeration order; the trivial module
//! satisfies every module property.

mod context;
mod module_props;
mod ring_props;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

pub use context::ModuleAnalysis;
pub use module_props::{revalidate_module, s_module_reduced_witness};
pub use ring_props::{
    evaluate_ring_property, left_annihilators_stable, nilpotent_witness, principal_split_failure,
    revalidate_ring, right_annihilators_stable,
};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{FiniteModule, ModElem};
use crate::ring::{FiniteRing, RingElem};

/// Ring properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingProp {
    Reduced,
    Reversible,
    Ifp,
    Regular,
    UnitRegular,
    StronglyRegular,
    MorphicRight,
    LeftPInjective,
    Abelian,
}

impl RingProp {
    pub const ALL: [RingProp; 9] = [
        RingProp::Reduced,
        RingProp::Reversible,
        RingProp::Ifp,
        RingProp::Regular,
        RingProp::UnitRegular,
        RingProp::StronglyRegular,
        RingProp::MorphicRight,
        RingProp::LeftPInjective,
        RingProp::Abelian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RingProp::Reduced => "reduced",
            RingProp::Reversible => "reversible",
            RingProp::Ifp => "ifp",
            RingProp::Regular => "regular",
            RingProp::UnitRegular => "unit_regular",
            RingProp::StronglyRegular => "strongly_regular",
            RingProp::MorphicRight => "morphic_right",
            RingProp::LeftPInjective => "left_p_injective",
            RingProp::Abelian => "abelian",
        }
    }
}

impl fmt::Display for RingProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingProp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        RingProp::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown ring property '{s}'")))
    }
}

/// Module properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModProp {
    Reduced,
    Symmetric,
    Ifp,
    Rigid,
    AnnihilatorStable,
    /// Also known as weakly JT-regular.
    CoReduced,
    WeaklyMorphic,
    Morphic,
    WeaklyEndoregular,
    Endoregular,
    AbelianEndoregular,
    Duo,
    Multiplication,
    JtRegular,
    FRegular,
    StronglyFRegular,
    AlmostLocallySimple,
    ZRegular,
    KLocalRetractable,
    PInjectiveOverS,
    Simple,
}

impl ModProp {
    pub const ALL: [ModProp; 21] = [
        ModProp::Reduced,
        ModProp::Symmetric,
        ModProp::Ifp,
        ModProp::Rigid,
        ModProp::AnnihilatorStable,
        ModProp::CoReduced,
        ModProp::WeaklyMorphic,
        ModProp::Morphic,
        ModProp::WeaklyEndoregular,
        ModProp::Endoregular,
        ModProp::AbelianEndoregular,
        ModProp::Duo,
        ModProp::Multiplication,
        ModProp::JtRegular,
        ModProp::FRegular,
        ModProp::StronglyFRegular,
        ModProp::AlmostLocallySimple,
        ModProp::ZRegular,
        ModProp::KLocalRetractable,
        ModProp::PInjectiveOverS,
        ModProp::Simple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModProp::Reduced => "reduced",
            ModProp::Symmetric => "symmetric",
            ModProp::Ifp => "ifp",
            ModProp::Rigid => "rigid",
            ModProp::AnnihilatorStable => "annihilator_stable",
            ModProp::CoReduced => "co_reduced",
            ModProp::WeaklyMorphic => "weakly_morphic",
            ModProp::Morphic => "morphic",
            ModProp::WeaklyEndoregular => "weakly_endoregular",
            ModProp::Endoregular => "endoregular",
            ModProp::AbelianEndoregular => "abelian_endoregular",
            ModProp::Duo => "duo",
            ModProp::Multiplication => "multiplication",
            ModProp::JtRegular => "jt_regular",
            ModProp::FRegular => "f_regular",
            ModProp::StronglyFRegular => "strongly_f_regular",
            ModProp::AlmostLocallySimple => "almost_locally_simple",
            ModProp::ZRegular => "z_regular",
            ModProp::KLocalRetractable => "k_local_retractable",
            ModProp::PInjectiveOverS => "p_injective_over_s",
            ModProp::Simple => "simple",
        }
    }

    /// Properties only defined over commutative rings.
    pub fn requires_commutative(self) -> bool {
        matches!(
            self,
            ModProp::WeaklyMorphic
                | ModProp::WeaklyEndoregular
                | ModProp::CoReduced
                | ModProp::FRegular
                | ModProp::JtRegular
                | ModProp::Multiplication
                | ModProp::AlmostLocallySimple
        )
    }
}

impl fmt::Display for ModProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModProp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        if key == "weakly_jt_regular" {
            return Ok(ModProp::CoReduced);
        }
        ModProp::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown module property '{s}'")))
    }
}

/// One component of a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessValue {
    Ring(RingElem),
    Module(ModElem),
    /// An R-linear map given by its matrix.
    Hom(Vec<Vec<u64>>),
    /// A set of module elements (for example a submodule).
    Elements(Vec<ModElem>),
    Count(u64),
}

/// Named witness components in a fixed order, e.g. `m`, `a`, `r`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub items: Vec<(&'static str, WitnessValue)>,
}

impl Witness {
    pub fn new() -> Self {
        Witness::default()
    }

    pub fn ring(mut self, name: &'static str, x: RingElem) -> Self {
        self.items.push((name, WitnessValue::Ring(x)));
        self
    }

    pub fn module(mut self, name: &'static str, m: ModElem) -> Self {
        self.items.push((name, WitnessValue::Module(m)));
        self
    }

    pub fn hom(mut self, name: &'static str, matrix: Vec<Vec<u64>>) -> Self {
        self.items.push((name, WitnessValue::Hom(matrix)));
        self
    }

    pub fn elements(mut self, name: &'static str, elems: Vec<ModElem>) -> Self {
        self.items.push((name, WitnessValue::Elements(elems)));
        self
    }

    pub fn count(mut self, name: &'static str, n: u64) -> Self {
        self.items.push((name, WitnessValue::Count(n)));
        self
    }

    pub fn get(&self, name: &str) -> Option<&WitnessValue> {
        self.items.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn ring_elem(&self, name: &str) -> Option<RingElem> {
        match self.get(name) {
            Some(WitnessValue::Ring(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn module_elem(&self, name: &str) -> Option<ModElem> {
        match self.get(name) {
            Some(WitnessValue::Module(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn hom_matrix(&self, name: &str) -> Option<&[Vec<u64>]> {
        match self.get(name) {
            Some(WitnessValue::Hom(h)) => Some(h),
            _ => None,
        }
    }

    /// Human-readable rendering, e.g. `m=(0,1), a=2`.
    pub fn render(&self, ring: &FiniteRing, module: Option<&FiniteModule>) -> String {
        self.items
            .iter()
            .map(|(name, v)| format!("{name}={}", render_value(v, ring, module)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub(crate) fn render_value(v: &WitnessValue, ring: &FiniteRing, module: Option<&FiniteModule>) -> String {
    let elem = |m: ModElem| match module {
        Some(md) => md.format_element(m),
        None => m.to_string(),
    };
    match v {
        WitnessValue::Ring(x) => ring.format_element(*x),
        WitnessValue::Module(m) => elem(*m),
        WitnessValue::Hom(h) => format!(
            "[{}]",
            h.iter()
                .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("; ")
        ),
        WitnessValue::Elements(es) => format!("{{{}}}", es.iter().map(|&m| elem(m)).collect::<Vec<_>>().join(", ")),
        WitnessValue::Count(n) => n.to_string(),
    }
}

/// Result of evaluating one property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
}

impl Verdict {
    pub(crate) fn decided(property: &'static str, counterexample: Option<Witness>) -> Self {
        Verdict {
            property,
            holds: counterexample.is_none(),
            witness: counterexample,
            elapsed: Duration::ZERO,
        }
    }
}

/// Evaluates a module property on a fresh analysis context.
pub fn evaluate_module_property(m: &FiniteModule, prop: ModProp, limits: &Limits) -> Result<Verdict> {
    ModuleAnalysis::new(m.clone(), *limits).evaluate(prop)
}

/// Convenience wrapper taking a shared ring handle.
pub fn evaluate_ring(ring: &Arc<FiniteRing>, prop: RingProp) -> Result<Verdict> {
    evaluate_ring_property(ring, prop, &Limits::default())
}
