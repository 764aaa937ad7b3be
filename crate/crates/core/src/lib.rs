//! Finite Heyting algebras, their lattices of nuclei, the free Boolean
//! extension built from closed and open nuclei, and clopen subobjects of
//! finite spectral presheaves.

pub mod completion;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod format;
pub mod heyting;
pub mod lattice;
pub mod nuclei;
pub mod presheaf;
pub mod verify;

pub use error::{Error, Result};
pub use heyting::FiniteHeytingAlgebra;
pub use lattice::FiniteLattice;
pub use nuclei::{enumerate_nuclei, NucleiConfig, Nucleus, NucleusLattice};
