//! Exact pure-dephasing dynamics of two qubits sharing a bosonic bath, with
//! a thermal preparation that leaves the bath correlated with the qubit state.
//!
//! Modules, bottom up:
//! - [`state`]: amplitudes, density matrices, concurrence and l1 coherence.
//! - [`quadrature`]: composite Gauss–Legendre integration.
//! - [`kernels`]: decay, phase and thermal-weight integrals of the continuum bath.
//! - [`dynamics`]: dressing factors, reduced density matrix, time series.
//! - [`oracle`]: finite-mode baths, exact sums and a truncated-Fock brute force.
//! - [`exec`]: sequential or rayon-parallel batch evaluation.

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod oracle;
pub mod quadrature;
pub mod state;

pub use dynamics::{
    closed_form_concurrence, closed_form_concurrence_anti, coherence_functions, correlation_ratio, density_matrix,
    partition_zprime, series, CoherenceFunctions, EvolutionMode, SeriesRow,
};
pub use error::{DecoError, Result};
pub use exec::Execution;
pub use kernels::{KernelWeight, ModelParams, QuadratureConfig};
pub use state::{concurrence, l1_coherence, pure_state_density, validate, Amplitudes, DensityMatrix4};
