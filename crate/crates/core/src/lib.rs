//! Exact simulation of linear optical networks.
//!
//! Bosonic transition amplitudes between Fock states are permanents of
//! submatrices of the network unitary; fermionic ones are determinants.
//! Single-mode expectations need neither and cost O(d^2). This crate
//! computes all three, together with the Fock-space bookkeeping, the real
//! orthogonal-symplectic picture of the network, and exact sampling from
//! the resulting output distributions.
//!
//! ```
//! use linoptics_core::{output_distribution, OccupationVector, UnitaryMatrix};
//!
//! let bs = UnitaryMatrix::beamsplitter_50_50();
//! let dist = output_distribution(&bs, &OccupationVector::new(vec![1, 1])).unwrap();
//! // the two photons always leave together
//! assert!(dist.probabilities[1] < 1e-30);
//! ```

pub mod bosonic;
pub mod config;
pub mod error;
pub mod fermionic;
pub mod fock;
pub mod io;
pub mod matrix;
pub mod permanent;
pub mod sampling;
pub mod transforms;

pub use bosonic::{
    mean_photon_numbers, output_distribution, output_distribution_with_cap, symmetric_power_matrix,
    symmetric_power_matrix_with_cap, transition_amplitude, OutputDistribution,
    SymmetricPowerMatrix, TransitionAmplitude, NORMALIZATION_TOL,
};
pub use config::{OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use fermionic::{
    fermion_amplitude, fermion_distribution, fermion_distribution_with_cap,
    fermion_mode_probabilities, fermion_mode_probability, FermionState,
};
pub use fock::{
    enumerate_basis, normalization_gamma, normalization_gamma_f64, occupation_to_sequence,
    sequence_to_occupation, FockBasis, ModeSequence, OccupationVector, Statistics,
    DEFAULT_BASIS_CAP,
};
pub use matrix::{relative_error, ComplexMatrix, RealMatrix};
pub use num_complex::Complex64;
pub use permanent::{
    determinant, expand_submatrix, permanent, permanent_glynn, permanent_naive, permanent_ryser,
    MultiplicitySpec,
};
pub use sampling::{chi_square_gof, sample, GofResult, SampleRun};
pub use transforms::{
    check_orthogonal, check_symplectic, random_haar_unitary, realify, realify_matrix,
    symplectic_form, validate_unitary, FormCheck, UnitaryMatrix, DERIVED_TOL, UNITARITY_TOL,
};
