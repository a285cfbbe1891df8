//! Exhaustive decision procedures for finite rings and finite modules.
//!
//! Rings and modules are given by small recipes ([`RingDescription`],
//! [`ModuleDescription`]) and materialised as explicit tables. On top of that
//! sit homomorphism and endomorphism computations ([`hom`]), named properties
//! with counterexample witnesses ([`props`]), a registry of theorems checked
//! as biconditionals over instance catalogs ([`theorems`]) and the `modreg`
//! command line ([`cli`]).
//!
//! ```
//! use modreg::{build_ring, RingDescription, RingProp};
//! use modreg::props::evaluate_ring;
//! use std::sync::Arc;
//!
//! let z4 = Arc::new(build_ring(&RingDescription::zmod(4)).unwrap());
//! assert!(evaluate_ring(&z4, RingProp::MorphicRight).unwrap().holds);
//! assert!(!evaluate_ring(&z4, RingProp::Regular).unwrap().holds);
//! ```

pub mod abelian;
pub mod bitset;
pub mod cli;
pub mod error;
pub mod hom;
pub mod limits;
pub mod module;
pub mod props;
pub mod ring;
pub mod theorems;

pub use error::{Error, Result};
pub use limits::Limits;
pub use module::{build_module, build_module_with, FiniteModule, ModuleDescription};
pub use props::{ModProp, RingProp, Verdict, Witness, WitnessValue};
pub use ring::{build_ring, build_ring_with, FiniteRing, RingDescription};
