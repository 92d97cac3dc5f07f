pub mod braid;
pub mod error;
pub mod free;
pub mod group;
pub mod iet;
pub mod matrix;
pub mod perm;
pub mod pl;
pub mod product;
pub mod suite;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{commutator, conjugate, derived_witness, power, GeneratorSet, Group, GroupWord, Witness, WitnessMode};
pub use suite::{list_families, FamilySuite, Registry, SuiteConfig, SuiteReport};
pub use verify::{verify_ccc, verify_czc, CheckEntry, VerificationReport};
