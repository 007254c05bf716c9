//! Graded trace calculus on a mode window: the connection `B` of a point of the
//! restricted Grassmannian, trace-polynomial cochains in `B`, exact Lie
//! derivatives along the gauge action, and the Palais coboundary.
//!
//! Cochains expand into [`TraceWordSum`]s; an [`Evaluator`] fixed at one `B`
//! turns those into numbers. Lie derivatives act on the symbolic words, so
//! coboundaries of any order are exact up to floating-point rounding.

mod checks;
mod cochain;
mod error;
mod evaluator;
mod forms;
mod grassmann;
mod operator;
mod words;

pub use checks::{
    calibrate_phi, normalization_audit, phi_gradient_residual, recursion_check, NormalizationAudit,
    PhiCalibration, RatioStats, RecursionReport, PHI_SPREAD_BOUND,
};
pub use cochain::{
    cocycle_via_coboundary, normalized_cocycle, C0Form, Coboundary, Cochain, CocycleP, Combination,
    EtaF, EtaP, PhiPotential, TildeC, TildeEta, TildeEtaCoboundaryReduced, TraceFunction, C0, C2F,
};
pub use error::CocycleError;
pub use evaluator::{CochainValueRecord, Evaluator};
pub use forms::{conditional_trace, d_operator, graded_trace, mode_reflection, ModuleParity};
pub use grassmann::{
    gauge_action_finite_difference, gauge_action_on_b, grassmann_point, GrassmannConnection,
};
pub use operator::Operator;
pub use words::{b_power, word, LieElement, Slot, TraceWordSum, Word};

pub type Result<T> = std::result::Result<T, CocycleError>;
