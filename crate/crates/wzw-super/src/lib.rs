//! Truncated fermionic Fock space for the supersymmetric WZW model: the CAR algebra,
//! current algebras, the supercharge and its square, minimal coupling to a gauge
//! potential, and the dressing of the current algebra by cochains of a Grassmannian
//! connection `B`.
//!
//! Operator identities are only exact on states of low excitation level; callers pick
//! a level `L` and the cutoff must cover `L` plus the mode span of the identity.

mod currents;
mod diffop;
mod dressed;
mod error;
mod fock;
mod operator;
mod structure;

pub use currents::{
    bosonic_current, coupled_hamiltonian, coupled_supercharge, equivariance_rhs, hamiltonian,
    k_current, supercharge, CouplingData, Currents, GaugePotential,
};
pub use diffop::{Atom, DiffOp, DiffTerm, FieldFunction, FieldState, Monomial};
pub use dressed::{
    dressed_vacuum_check, dressing_radius, BracketEntry, BracketTable, DressedAlgebra, Dressing,
    LoopBasis, VacuumReport,
};
pub use error::WzwError;
pub use fock::{
    build_fock, build_fock_with_capacity, family_log2, normal_order_pair, BosonicRealization,
    FockSpace, Mode, OrderedPair, DEFAULT_CAPACITY_LOG2,
};
pub use operator::FockOperator;
pub use structure::{GroupTag, StructureConstants};

pub type Result<T> = std::result::Result<T, WzwError>;
