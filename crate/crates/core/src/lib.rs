//! Leggett-Garg temporal correlations and parameter-estimation figures of
//! merit for noisy parity measurements on a spin-j system.
//!
//! The pipeline: [`SpinSystem`] supplies `Jx`, `Jz` and `U(θ) = exp(−iθJx)`;
//! [`NoisyDichotomicMeasurement`] builds the observable `A` and POVM `E±`;
//! [`correlation`] evaluates `C(θ)` and `K_LG(θ) = 3C(θ) − C(3θ)`;
//! [`estimation`] turns those into classical and quantum Fisher information;
//! [`scan`], [`output`] and [`figures`] run sweeps and write tables.

pub mod correlation;
pub mod error;
pub mod estimation;
pub mod figures;
pub mod linalg;
pub mod measurement;
pub mod optimize;
pub mod output;
pub mod scan;
pub mod spin;

pub use correlation::{
    correlation, correlation_derivatives, correlation_direct, correlation_two_time,
    klg_equal_interval, klg_four_time, max_violation, violates_lgi, CorrelationDerivatives,
    Correlator, Violation,
};
pub use error::{Error, Result};
pub use estimation::{
    estimation_report, fisher_from_correlation, fisher_from_probabilities, outcome_probabilities,
    qfi, qfi_unitary, EstimationRecord, Estimator,
};
pub use figures::{reproduce_figure, Figure};
pub use linalg::{
    eigh, trace_product, CMatrix, DensityMatrix, HermitianOperator, SpectralDecomposition,
};
pub use measurement::{
    b_from_sigma, prepare_states, sigma_from_b, Block, NoisyDichotomicMeasurement, PartitionSpec,
    PreparedState, Sign,
};
pub use output::{render_svg_lineplot, write_table, Format};
pub use scan::{phase_map, scan_b, scan_theta, Grid, RunConfig, ScanTable};
pub use spin::SpinSystem;
