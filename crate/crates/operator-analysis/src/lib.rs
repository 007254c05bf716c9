//! Schatten-class diagnostics for operators on a mode window.

mod blocks;
mod dixmier;
mod error;
mod fit;
mod retract;
mod schatten;
mod tameness;

pub use blocks::{block_decompose, BlockDecomposition};
pub use dixmier::{dixmier_scan, DixmierPoint};
pub use error::AnalysisError;
pub use fit::{decay_exponent, singular_values_desc};
pub use retract::{offdiag_decay_unitary, up_retract, window_exponential, RetractOutcome};
pub use schatten::{
    column_norm_law, divergence_witness, epsilon_commutator_law, schatten_norm, LawComparison,
    NormMethod, SchattenReport,
};
pub use tameness::{commutator_norm, sobolev_critical_loop, tameness_probe};

pub type Result<T> = std::result::Result<T, AnalysisError>;
