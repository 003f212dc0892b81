//! Finite groups given by Cayley tables, their linear characters, the
//! transfer, Heisenberg representations and exact determinants of induced
//! representations.
//!
//! Roots of unity are exact elements of `Q/Z` ([`QmodZ`]) throughout.

pub mod abelian;
pub mod character;
pub mod group;
pub mod heisenberg;
pub mod induced;
pub mod io;
pub mod report;
pub mod suite;
pub mod transfer;

pub use abelian::AbelianDecomposition;
pub use character::{Bicharacter, LinearCharacter, QmodZ};
pub use group::{Elem, FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup};
pub use heisenberg::{HeisenbergError, HeisenbergPair};
pub use induced::{DetCase, DetReport, DeterminantFormula, InducedError, InducedRep};
pub use report::CheckReport;
pub use transfer::{Transfer, TransferError};
