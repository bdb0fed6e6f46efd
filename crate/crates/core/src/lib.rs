//! Mutation of exchange matrices and diagrams of finite-type cluster
//! algebras, reflection group presentations read off any seed, coset
//! enumeration to certify them, and companion bases in root systems.

pub mod companion;
pub mod coset;
pub mod diagram;
pub mod dynkin;
pub mod error;
pub mod exchange;
pub mod group;
mod linalg;
pub mod presentation;
pub mod roots;
pub mod signed;

pub use diagram::{ChordlessCycle, Diagram, MutationClass};
pub use dynkin::DynkinType;
pub use error::{Error, Result};
pub use exchange::{find_symmetriser, ExchangeMatrix, QuasiCartanMatrix};
pub use group::{group_order, verify_mutation_isomorphism, weyl_order, Strategy};
pub use presentation::{full_presentation, reduced_presentation, Presentation, Word};
pub use roots::{build_root_system, RootSystem, RootVector};
pub use signed::{local_switch, signed_graph, SignedGraph};
