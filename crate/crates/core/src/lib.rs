//! Finite Coxeter groups, non-crossing partition lattices, dual braid
//! monoids and the simplicial complexes built from them.

pub mod chain_algebra;
pub mod complex_builder;
pub mod coxeter;
pub mod element;
pub mod error;
pub mod monoid;
pub mod nc_lattice;
pub mod poset;
pub mod report;
pub mod simplicial;
pub mod verify;

pub use chain_algebra::{homology, smith_normal_form, HomologyGroup, HomologySummary, IntegerMatrix};
pub use complex_builder::{build_k, build_x_plus, PositiveComplex, QuotientComplexK};
pub use coxeter::{make_system, CoxeterSystem, Family, SystemDescriptor};
pub use element::{ElementShape, GroupElement};
pub use error::{Error, Result};
pub use monoid::{DualMonoid, GroupForm, Letter, NormalForm, PositiveWord};
pub use nc_lattice::{build_nc, NCLattice};
pub use poset::FinitePoset;
pub use report::VerificationReport;
pub use simplicial::{order_complex, AbstractComplex};
