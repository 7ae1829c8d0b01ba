//! Transition amplitudes between bosonic Fock states.
//!
//! For a network U and Fock states `in`, `out` with the same particle
//! number, the amplitude is
//!
//! ```text
//! <out| U |in> = per(U[out, in]) / sqrt(Γ_out Γ_in)
//! ```
//!
//! where `U[out, in]` repeats row k of U `out_k` times and column l `in_l`
//! times. The vacuum is taken to be invariant, so no global phase appears.
//! Every amplitude costs one permanent; per-mode mean photon numbers on the
//! other hand need only `|U_kj|^2` and cost O(d^2).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{normalization_gamma_f64, FockBasis, OccupationVector, DEFAULT_BASIS_CAP};
use crate::matrix::ComplexMatrix;
use crate::permanent::{expand_submatrix, permanent, MultiplicitySpec};
use crate::transforms::UnitaryMatrix;

/// Default tolerance on `|sum p - 1|`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionAmplitude {
    pub value: Complex64,
    pub input: OccupationVector,
    pub output: OccupationVector,
}

impl TransitionAmplitude {
    pub fn probability(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Probabilities (and amplitudes) for every outcome of a basis, in the
/// basis' canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputDistribution {
    pub input: OccupationVector,
    pub basis: FockBasis,
    pub amplitudes: Vec<Complex64>,
    /// Raw `|amplitude|^2`, before any clamping.
    pub probabilities: Vec<f64>,
}

impl OutputDistribution {
    pub fn from_amplitudes(
        input: OccupationVector,
        basis: FockBasis,
        amplitudes: Vec<Complex64>,
    ) -> Self {
        let probabilities = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        Self {
            input,
            basis,
            amplitudes,
            probabilities,
        }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let total = self.total();
        if (total - 1.0).abs() > tol || total.is_nan() {
            return Err(Error::Unnormalized { total });
        }
        Ok(())
    }

    /// Probabilities with rounding negatives clamped to zero, for output.
    pub fn clamped_probabilities(&self) -> Vec<f64> {
        self.probabilities.iter().map(|&p| p.max(0.0)).collect()
    }

    pub fn probability_of(&self, state: &OccupationVector) -> Result<f64> {
        Ok(self.probabilities[self.basis.index_of(state)?])
    }

    /// `sum_outcomes p(outcome) * outcome_k` for each mode k.
    pub fn first_moments(&self) -> Vec<f64> {
        let mut moments = vec![0.0; self.basis.modes()];
        for (state, p) in self.basis.states().iter().zip(&self.probabilities) {
            for (m, &r) in moments.iter_mut().zip(state.iter()) {
                *m += p * r as f64;
            }
        }
        moments
    }
}

/// Unitary of the induced action on the n-particle space, indexed by the
/// canonical bosonic basis (row = output state, column = input state).
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPowerMatrix {
    pub basis: FockBasis,
    pub matrix: ComplexMatrix,
}

impl SymmetricPowerMatrix {
    pub fn modes(&self) -> usize {
        self.basis.modes()
    }

    pub fn photons(&self) -> usize {
        self.basis.photons()
    }

    /// Evolves a state vector given in basis coordinates.
    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            state.len(),
            self.basis.len(),
            "state length must match basis size"
        );
        self.matrix
            .row_major()
            .iter()
            .map(|row| row.iter().zip(state).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn check_state(u: &UnitaryMatrix, state: &OccupationVector) -> Result<()> {
    if state.modes() != u.modes() {
        return Err(Error::DimensionMismatch {
            expected: u.modes(),
            found: state.modes(),
        });
    }
    Ok(())
}

pub fn transition_amplitude(
    u: &UnitaryMatrix,
    input: &OccupationVector,
    output: &OccupationVector,
) -> Result<TransitionAmplitude> {
    Ok(TransitionAmplitude {
        value: amplitude_value(u, input, output)?,
        input: input.clone(),
        output: output.clone(),
    })
}

fn amplitude_value(
    u: &UnitaryMatrix,
    input: &OccupationVector,
    output: &OccupationVector,
) -> Result<Complex64> {
    check_state(u, input)?;
    check_state(u, output)?;
    if input.total() != output.total() {
        return Err(Error::ParticleMismatch {
            input: input.total(),
            output: output.total(),
        });
    }
    let spec = MultiplicitySpec::new(output.clone(), input.clone())?;
    let sub = expand_submatrix(u.matrix(), &spec)?;
    let norm = (normalization_gamma_f64(output) * normalization_gamma_f64(input)).sqrt();
    Ok(permanent(&sub)? / norm)
}

pub fn output_distribution(
    u: &UnitaryMatrix,
    input: &OccupationVector,
) -> Result<OutputDistribution> {
    output_distribution_with_cap(u, input, DEFAULT_BASIS_CAP)
}

/// Full output distribution; outcomes are evaluated in parallel and land in
/// their canonical slots.
pub fn output_distribution_with_cap(
    u: &UnitaryMatrix,
    input: &OccupationVector,
    cap: usize,
) -> Result<OutputDistribution> {
    check_state(u, input)?;
    let basis = FockBasis::bosonic(u.modes(), input.total(), cap)?;
    let amplitudes = basis
        .states()
        .par_iter()
        .map(|out| amplitude_value(u, input, out))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutputDistribution::from_amplitudes(
        input.clone(),
        basis,
        amplitudes,
    ))
}

pub fn symmetric_power_matrix(u: &UnitaryMatrix, n: usize) -> Result<SymmetricPowerMatrix> {
    symmetric_power_matrix_with_cap(u, n, DEFAULT_BASIS_CAP)
}

pub fn symmetric_power_matrix_with_cap(
    u: &UnitaryMatrix,
    n: usize,
    cap: usize,
) -> Result<SymmetricPowerMatrix> {
    let basis = FockBasis::bosonic(u.modes(), n, cap)?;
    // dense D x D storage must fit the cap as well
    if basis
        .len()
        .checked_mul(basis.len())
        .is_none_or(|sq| sq > cap)
    {
        return Err(Error::BasisTooLarge {
            modes: u.modes(),
            photons: n,
            cap,
        });
    }
    let states = basis.states();
    let rows = states
        .par_iter()
        .map(|out| {
            states
                .iter()
                .map(|inp| amplitude_value(u, inp, out))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = ComplexMatrix::from_rows(&rows)?;
    Ok(SymmetricPowerMatrix { basis, matrix })
}

/// `<N'_k> = sum_j |U_kj|^2 r_j` for a Fock input.
pub fn mean_photon_numbers(u: &UnitaryMatrix, input: &OccupationVector) -> Result<Vec<f64>> {
    check_state(u, input)?;
    let d = u.modes();
    Ok((0..d)
        .map(|k| {
            (0..d)
                .map(|j| u.entry(k, j).norm_sqr() * input[j] as f64)
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::permanent::permanent_naive;
    use crate::transforms::random_haar_unitary;

    fn occ(v: &[usize]) -> OccupationVector {
        OccupationVector::new(v.to_vec())
    }

    #[test]
    fn identity_network() {
        let u = UnitaryMatrix::identity(3);
        let basis = enumerate_basis(3, 3).unwrap();
        for a in basis.states() {
            for b in basis.states() {
                let amp = transition_amplitude(&u, a, b).unwrap().value;
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((amp - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        let dist = output_distribution(&u, &occ(&[0, 2, 1])).unwrap();
        assert_eq!(dist.probability_of(&occ(&[0, 2, 1])).unwrap(), 1.0);
        assert_eq!(dist.total(), 1.0);
    }

    #[test]
    fn hong_ou_mandel() {
        let bs = UnitaryMatrix::beamsplitter_50_50();
        let coincidence = transition_amplitude(&bs, &occ(&[1, 1]), &occ(&[1, 1])).unwrap();
        assert!(coincidence.value.norm() < 1e-15);
        let bunched = transition_amplitude(&bs, &occ(&[1, 1]), &occ(&[2, 0])).unwrap();
        assert!(
            (bunched.value - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15
        );
        assert!((bunched.probability() - 0.5).abs() < 1e-15);

        let dist = output_distribution(&bs, &occ(&[1, 1])).unwrap();
        let p = dist.clamped_probabilities();
        assert!((p[0] - 0.5).abs() < 1e-15);
        assert!(p[1] < 1e-30);
        assert!((p[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn full_occupation_amplitude_is_permanent() {
        let u = random_haar_unitary(4, 2).unwrap();
        let ones = occ(&[1, 1, 1, 1]);
        let amp = transition_amplitude(&u, &ones, &ones).unwrap().value;
        assert!((amp - permanent_naive(u.matrix()).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn amplitude_errors() {
        let u = UnitaryMatrix::identity(2);
        assert!(matches!(
            transition_amplitude(&u, &occ(&[1, 1]), &occ(&[1, 0])),
            Err(Error::ParticleMismatch {
                input: 2,
                output: 1
            })
        ));
        assert!(matches!(
            transition_amplitude(&u, &occ(&[1, 1, 0]), &occ(&[1, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
        assert!(matches!(
            mean_photon_numbers(&u, &occ(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            output_distribution_with_cap(&UnitaryMatrix::identity(5), &occ(&[3, 0, 0, 0, 0]), 10),
            Err(Error::BasisTooLarge { cap: 10, .. })
        ));
    }

    #[test]
    fn random_distribution_sums_to_one() {
        let u = random_haar_unitary(4, 17).unwrap();
        let dist = output_distribution(&u, &occ(&[1, 1, 0, 0])).unwrap();
        assert_eq!(dist.len(), 10);
        dist.check_normalized(NORMALIZATION_TOL).unwrap();
        // every amplitude is bounded by one
        assert!(dist.amplitudes.iter().all(|a| a.norm() <= 1.0 + 1e-9));
    }

    #[test]
    fn symmetric_power_examples() {
        let u = random_haar_unitary(3, 23).unwrap();
        let p1 = symmetric_power_matrix(&u, 1).unwrap();
        assert!(p1.matrix.max_abs_diff(u.matrix()) < 1e-15);

        let id = symmetric_power_matrix(&UnitaryMatrix::identity(3), 3).unwrap();
        assert_eq!(id.matrix.rows(), 10);
        assert!(id.matrix.max_abs_diff(&ComplexMatrix::identity(10)) < 1e-15);

        let v = random_haar_unitary(3, 24).unwrap();
        let pu = symmetric_power_matrix(&u, 2).unwrap();
        let pv = symmetric_power_matrix(&v, 2).unwrap();
        let puv = symmetric_power_matrix(&u.compose(&v, 1e-9).unwrap(), 2).unwrap();
        assert!(pu.matrix.unitarity_deviation() <= 1e-9);
        assert!(puv.matrix.max_abs_diff(&pu.matrix.matmul(&pv.matrix)) <= 1e-9);
    }

    #[test]
    fn symmetric_power_respects_dense_cap() {
        let u = UnitaryMatrix::identity(4);
        // 35 states, 1225 dense entries
        assert!(symmetric_power_matrix_with_cap(&u, 4, 1000).is_err());
        assert!(symmetric_power_matrix_with_cap(&u, 4, 1225).is_ok());
    }

    #[test]
    fn apply_evolves_basis_vectors() {
        let u = random_haar_unitary(3, 8).unwrap();
        let p = symmetric_power_matrix(&u, 2).unwrap();
        let input = occ(&[1, 0, 1]);
        let j = p.basis.index_of(&input).unwrap();
        let mut e = vec![Complex64::new(0.0, 0.0); p.basis.len()];
        e[j] = Complex64::new(1.0, 0.0);
        let evolved = p.apply(&e);
        let dist = output_distribution(&u, &input).unwrap();
        for (a, b) in evolved.iter().zip(&dist.amplitudes) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn mean_photon_number_examples() {
        let input = occ(&[0, 3, 1]);
        let means = mean_photon_numbers(&UnitaryMatrix::identity(3), &input).unwrap();
        assert_eq!(means, vec![0.0, 3.0, 1.0]);

        let bs = UnitaryMatrix::beamsplitter_50_50();
        let means = mean_photon_numbers(&bs, &occ(&[2, 0])).unwrap();
        let brute = output_distribution(&bs, &occ(&[2, 0]))
            .unwrap()
            .first_moments();
        for k in 0..2 {
            assert!((means[k] - 1.0).abs() < 1e-15);
            assert!((brute[k] - 1.0).abs() < 1e-15);
        }

        let u = random_haar_unitary(4, 31).unwrap();
        let input = occ(&[1, 1, 0, 0]);
        let means = mean_photon_numbers(&u, &input).unwrap();
        let brute = output_distribution(&u, &input).unwrap().first_moments();
        for k in 0..4 {
            assert!((means[k] - brute[k]).abs() < 1e-9);
        }
        assert!((means.iter().sum::<f64>() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn global_phase_scales_amplitudes() {
        let u = random_haar_unitary(3, 4).unwrap();
        let phi = 0.83;
        let up = u.with_phase(phi);
        let input = occ(&[2, 0, 1]);
        let a = output_distribution(&u, &input).unwrap();
        let b = output_distribution(&up, &input).unwrap();
        let factor = Complex64::from_polar(1.0, 3.0 * phi);
        for i in 0..a.len() {
            assert!((a.amplitudes[i] * factor - b.amplitudes[i]).norm() < 1e-12);
            assert!((a.probabilities[i] - b.probabilities[i]).abs() < 1e-10);
        }
    }
}
