//! Number-conserving fermionic linear networks.
//!
//! Amplitudes are determinants of the submatrix of U with rows at the
//! occupied output modes and columns at the occupied input modes, both in
//! ascending mode order. Fixing that order absorbs all Jordan-Wigner sign
//! bookkeeping into the determinant.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bosonic::OutputDistribution;
use crate::error::{Error, Result};
use crate::fock::{FockBasis, OccupationVector, DEFAULT_BASIS_CAP};
use crate::permanent::{determinant, select};
use crate::transforms::UnitaryMatrix;

/// Occupation vector with every entry 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FermionState(OccupationVector);

impl FermionState {
    pub fn new(occ: OccupationVector) -> Result<Self> {
        if let Some((mode, &r)) = occ.iter().enumerate().find(|&(_, &r)| r > 1) {
            return Err(Error::NotFermionic {
                mode,
                occupation: r,
            });
        }
        Ok(Self(occ))
    }

    pub fn occupations(&self) -> &OccupationVector {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.modes()
    }

    pub fn particles(&self) -> usize {
        self.0.total()
    }

    /// Occupied modes, ascending.
    pub fn occupied(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r == 1)
            .map(|(k, _)| k)
            .collect()
    }
}

impl TryFrom<OccupationVector> for FermionState {
    type Error = Error;

    fn try_from(occ: OccupationVector) -> Result<Self> {
        Self::new(occ)
    }
}

fn check_state(u: &UnitaryMatrix, state: &FermionState) -> Result<()> {
    if state.modes() != u.modes() {
        return Err(Error::DimensionMismatch {
            expected: u.modes(),
            found: state.modes(),
        });
    }
    Ok(())
}

pub fn fermion_amplitude(
    u: &UnitaryMatrix,
    input: &FermionState,
    output: &FermionState,
) -> Result<Complex64> {
    check_state(u, input)?;
    check_state(u, output)?;
    if input.particles() != output.particles() {
        return Err(Error::ParticleMismatch {
            input: input.particles(),
            output: output.particles(),
        });
    }
    determinant(&select(u.matrix(), &output.occupied(), &input.occupied()))
}

pub fn fermion_distribution(u: &UnitaryMatrix, input: &FermionState) -> Result<OutputDistribution> {
    fermion_distribution_with_cap(u, input, DEFAULT_BASIS_CAP)
}

/// Distribution over the C(d, n) fermionic basis, in canonical order.
pub fn fermion_distribution_with_cap(
    u: &UnitaryMatrix,
    input: &FermionState,
    cap: usize,
) -> Result<OutputDistribution> {
    check_state(u, input)?;
    let basis = FockBasis::fermionic(u.modes(), input.particles(), cap)?;
    let cols = input.occupied();
    let amplitudes = basis
        .states()
        .par_iter()
        .map(|out| {
            let rows: Vec<usize> = out
                .iter()
                .enumerate()
                .filter(|&(_, &r)| r == 1)
                .map(|(k, _)| k)
                .collect();
            determinant(&select(u.matrix(), &rows, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OutputDistribution::from_amplitudes(
        input.occupations().clone(),
        basis,
        amplitudes,
    ))
}

/// Probability that mode `k` (0-based) is found occupied:
/// `sum_j |U_kj|^2 x_j`.
pub fn fermion_mode_probability(u: &UnitaryMatrix, input: &FermionState, k: usize) -> Result<f64> {
    check_state(u, input)?;
    if k >= u.modes() {
        return Err(Error::ModeOutOfRange {
            index: k,
            modes: u.modes(),
        });
    }
    Ok(input
        .occupied()
        .into_iter()
        .map(|j| u.entry(k, j).norm_sqr())
        .sum())
}

/// [`fermion_mode_probability`] for every mode.
pub fn fermion_mode_probabilities(u: &UnitaryMatrix, input: &FermionState) -> Result<Vec<f64>> {
    (0..u.modes())
        .map(|k| fermion_mode_probability(u, input, k))
        .collect()
}
