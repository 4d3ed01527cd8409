//! Families of gcd-closed sets that violate condition G yet still exhibit
//! divisibility, the two fixed LCM examples, and a search harness over all
//! gcd-closed sets within given bounds.

mod family;
mod fixed;
mod search;

pub use family::{gcd_side_witness, lcm_side_witness, FamilyInstance, FamilyWitness, WitnessCase};
pub use fixed::{reproduce, reproduce_fixed_examples, FixedExample, Mismatch, ReproCase, ReproReport};
pub use search::{enumerate_gcd_closed, search, Finding, FindingStructure, GcdClosedSets, GtdFilter, SearchParams};
