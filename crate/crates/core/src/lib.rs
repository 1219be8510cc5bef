//! Bases of lines, compressed order-ideal enumeration and structural checks
//! for finite modular lattices.

pub mod algebra;
pub mod analysis;
pub mod bol;
pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod pls;
pub mod poset;
pub mod rebuild;
pub mod wildcard;

pub use lattice::{is_isomorphic, JoinIrreducible, Lattice, LatticeError, PrimeQuotient};
pub use pls::{Pls, PlsCycle, PlsError, Splitting};
pub use poset::{Poset, PosetError};
