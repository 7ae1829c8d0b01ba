//! d-mode unitaries and their real 2d-dimensional embeddings.
//!
//! Writing `z_k = x_k + i x_{k+d}`, the map `z -> U z` becomes a real linear
//! map on `(x_1..x_d, x_{d+1}..x_{2d})` with block form
//! `[[Re U, -Im U], [Im U, Re U]]`. The image of U(d) is exactly the set of
//! matrices that are both orthogonal and symplectic with respect to
//! `J = [[0, 1], [-1, 0]]` (blocks of size d, all q's before all p's).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, RealMatrix};

/// Default tolerance for accepting a matrix as unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Default tolerance for properties derived from a validated unitary.
pub const DERIVED_TOL: f64 = 1e-9;

/// A d x d complex matrix that passed [`validate_unitary`].
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
    deviation: f64,
}

impl UnitaryMatrix {
    pub fn modes(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `max |(U^dagger U - I)_ij|` measured at validation time.
    pub fn deviation(&self) -> f64 {
        self.deviation
    }

    pub fn identity(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d),
            deviation: 0.0,
        }
    }

    /// The balanced 2-mode beamsplitter `(1/sqrt 2) [[1, 1], [1, -1]]`.
    pub fn beamsplitter_50_50() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).expect("finite");
        validate_unitary(&m, UNITARITY_TOL).expect("beamsplitter is unitary")
    }

    /// Product `self * other`. Revalidated at `tol`.
    pub fn compose(&self, other: &UnitaryMatrix, tol: f64) -> Result<Self> {
        validate_unitary(&self.matrix.matmul(&other.matrix), tol)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            deviation: self.deviation,
        }
    }

    /// `e^{i phi} U`.
    pub fn with_phase(&self, phi: f64) -> Self {
        Self {
            matrix: self.matrix.scale(Complex64::from_polar(1.0, phi)),
            deviation: self.deviation,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }
}

/// Accepts `m` when `max |(M^dagger M - I)_ij| <= tol`.
pub fn validate_unitary(m: &ComplexMatrix, tol: f64) -> Result<UnitaryMatrix> {
    m.require_square()?;
    let deviation = m.unitarity_deviation();
    if deviation > tol || deviation.is_nan() {
        return Err(Error::NotUnitary {
            deviation,
            tolerance: tol,
        });
    }
    Ok(UnitaryMatrix {
        matrix: m.clone(),
        deviation,
    })
}

/// Haar-random U(d), deterministic in `seed`.
///
/// QR-factorizes a matrix of i.i.d. standard complex Gaussians and fixes the
/// column phases so the triangular factor has a positive real diagonal.
pub fn random_haar_unitary(d: usize, seed: u64) -> Result<UnitaryMatrix> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    random_haar_unitary_with(d, &mut rng)
}

pub fn random_haar_unitary_with<R: rand::Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::ZeroModes);
    }
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid sigma");
    let gauss = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(normal.sample(rng), normal.sample(rng))
    });
    let qr = gauss.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        // pairs with conj(phase) on row j of r, leaving |r_jj| on the diagonal
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    validate_unitary(&ComplexMatrix::from_dmatrix(q)?, UNITARITY_TOL)
}

/// Real 2d x 2d matrix `[[Re U, -Im U], [Im U, Re U]]`.
pub fn realify(u: &UnitaryMatrix) -> RealMatrix {
    realify_matrix(u.matrix()).expect("unitary matrices are square")
}

/// [`realify`] for any square complex matrix.
pub fn realify_matrix(m: &ComplexMatrix) -> Result<RealMatrix> {
    let d = m.require_square()?;
    let out = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
        let z = m[(r % d, c % d)];
        match (r < d, c < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    RealMatrix::from_dmatrix(out)
}

/// `J = [[0_d, 1_d], [-1_d, 0_d]]`.
pub fn symplectic_form(d: usize) -> RealMatrix {
    let out = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
        if r < d && c == r + d {
            1.0
        } else if r >= d && c + d == r {
            -1.0
        } else {
            0.0
        }
    });
    RealMatrix::from_dmatrix(out).expect("finite")
}

/// Outcome of a form-preservation check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormCheck {
    pub passed: bool,
    pub deviation: f64,
}

/// Checks `A^T J A = J`.
pub fn check_symplectic(a: &RealMatrix, tol: f64) -> Result<FormCheck> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.rows().is_multiple_of(2) {
        return Err(Error::OddDimension(a.rows()));
    }
    let j = symplectic_form(a.rows() / 2);
    let deviation = a.transpose().matmul(&j).matmul(a).max_abs_diff(&j);
    Ok(FormCheck {
        passed: deviation <= tol,
        deviation,
    })
}

/// Checks `A^T A = I`.
pub fn check_orthogonal(a: &RealMatrix, tol: f64) -> Result<FormCheck> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a
        .transpose()
        .matmul(a)
        .max_abs_diff(&RealMatrix::identity(a.rows()));
    Ok(FormCheck {
        passed: deviation <= tol,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squeeze(s: f64) -> RealMatrix {
        RealMatrix::diagonal(&[s, 1.0 / s]).unwrap()
    }

    #[test]
    fn validate_examples() {
        for d in 1..5 {
            assert_eq!(
                validate_unitary(&ComplexMatrix::identity(d), UNITARITY_TOL)
                    .unwrap()
                    .deviation(),
                0.0
            );
        }
        let bs = UnitaryMatrix::beamsplitter_50_50();
        assert!(bs.deviation() <= 1e-15);
        let bad = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap();
        match validate_unitary(&bad, UNITARITY_TOL) {
            Err(Error::NotUnitary { deviation, .. }) => assert_eq!(deviation, 3.0),
            other => panic!("expected rejection, got {other:?}"),
        }
        assert!(matches!(
            validate_unitary(&ComplexMatrix::zeros(2, 3), UNITARITY_TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn haar_is_deterministic_and_unitary() {
        let a = random_haar_unitary(3, 42).unwrap();
        let b = random_haar_unitary(3, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_haar_unitary(3, 43).unwrap());
        for d in 1..=8 {
            for seed in 0..10 {
                let u = random_haar_unitary(d, seed).unwrap();
                assert!(u.deviation() <= UNITARITY_TOL);
            }
        }
        assert!(matches!(random_haar_unitary(0, 1), Err(Error::ZeroModes)));
    }

    #[test]
    fn haar_first_entry_mean_modulus() {
        // E|U_00|^2 = 1/d for Haar measure
        let draws = 10_000;
        let mean: f64 = (0..draws)
            .map(|s| random_haar_unitary(4, s).unwrap().entry(0, 0).norm_sqr())
            .sum::<f64>()
            / draws as f64;
        assert!((mean - 0.25).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn haar_diagonal_phases_are_uniform() {
        // Without the phase fix the diagonal of Householder QR is biased.
        let draws = 4000;
        let mean: Complex64 = (0..draws)
            .map(|s| random_haar_unitary(3, 1_000_000 + s).unwrap().entry(0, 0))
            .sum::<Complex64>()
            / draws as f64;
        assert!(mean.norm() < 0.05, "mean = {mean}");
    }

    #[test]
    fn realify_examples() {
        assert_eq!(
            realify(&UnitaryMatrix::identity(3)),
            RealMatrix::identity(6)
        );
        let i = ComplexMatrix::from_rows(&[vec![Complex64::new(0.0, 1.0)]]).unwrap();
        let r = realify(&validate_unitary(&i, UNITARITY_TOL).unwrap());
        // multiplication by i is the quarter turn [[0, -1], [1, 0]] = J^T = -J
        assert_eq!(
            r,
            RealMatrix::from_row_major(2, 2, vec![0.0, -1.0, 1.0, 0.0]).unwrap()
        );
        assert_eq!(r, symplectic_form(1).neg());
        let r = realify(&random_haar_unitary(3, 5).unwrap());
        assert!(check_symplectic(&r, DERIVED_TOL).unwrap().passed);
        assert!(check_orthogonal(&r, DERIVED_TOL).unwrap().passed);
    }

    #[test]
    fn realify_matches_complex_action() {
        let u = random_haar_unitary(3, 9).unwrap();
        let z = [
            Complex64::new(0.3, -1.0),
            Complex64::new(2.0, 0.5),
            Complex64::new(-0.7, 0.1),
        ];
        let x: Vec<f64> = z
            .iter()
            .map(|c| c.re)
            .chain(z.iter().map(|c| c.im))
            .collect();
        let r = realify(&u);
        for k in 0..3 {
            let zk: Complex64 = (0..3).map(|j| u.entry(k, j) * z[j]).sum();
            let xk: f64 = (0..6).map(|j| r[(k, j)] * x[j]).sum();
            let yk: f64 = (0..6).map(|j| r[(k + 3, j)] * x[j]).sum();
            assert!((zk.re - xk).abs() < 1e-14 && (zk.im - yk).abs() < 1e-14);
        }
    }

    #[test]
    fn symplectic_examples() {
        for d in 1..4 {
            let c = check_symplectic(&RealMatrix::identity(2 * d), 1e-12).unwrap();
            assert!(c.passed);
            assert_eq!(c.deviation, 0.0);
        }
        assert!(check_symplectic(&squeeze(2.0), 1e-12).unwrap().passed);
        let scaled = check_symplectic(&RealMatrix::diagonal(&[2.0, 2.0]).unwrap(), 1e-12).unwrap();
        assert!(!scaled.passed);
        assert_eq!(scaled.deviation, 3.0);
        assert!(matches!(
            check_symplectic(&RealMatrix::identity(3), 1e-12),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn orthogonal_examples() {
        let t: f64 = 0.7;
        let rot =
            RealMatrix::from_row_major(2, 2, vec![t.cos(), -t.sin(), t.sin(), t.cos()]).unwrap();
        assert!(check_orthogonal(&rot, 1e-12).unwrap().passed);
        assert!(!check_orthogonal(&squeeze(2.0), 1e-12).unwrap().passed);
        let r = realify(&random_haar_unitary(4, 11).unwrap());
        assert!(check_orthogonal(&r, DERIVED_TOL).unwrap().passed);
    }

    #[test]
    fn form_squares_to_minus_identity() {
        for d in 1..6 {
            let j = symplectic_form(d);
            assert_eq!(j.matmul(&j), RealMatrix::identity(2 * d).neg());
        }
    }

    #[test]
    fn realify_is_a_homomorphism() {
        for seed in 0..20 {
            let u = random_haar_unitary(4, seed).unwrap();
            let v = random_haar_unitary(4, seed + 100).unwrap();
            let uv = u.compose(&v, 1e-9).unwrap();
            let lhs = realify(&uv);
            let rhs = realify(&u).matmul(&realify(&v));
            assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        }
    }

    #[test]
    fn symplectic_group_closure() {
        // mix of squeezes and realified unitaries in d = 2
        let sq = RealMatrix::diagonal(&[3.0, 0.5, 1.0 / 3.0, 2.0]).unwrap();
        let u = realify(&random_haar_unitary(2, 7).unwrap());
        let samples = [
            sq.clone(),
            u.clone(),
            sq.matmul(&u),
            u.matmul(&sq).matmul(&u),
        ];
        for a in &samples {
            assert!(check_symplectic(a, 1e-9).unwrap().passed);
            let inv = a.try_inverse().unwrap();
            assert!(check_symplectic(&inv, 1e-9).unwrap().passed);
            for b in &samples {
                assert!(check_symplectic(&a.matmul(b), 1e-9).unwrap().passed);
            }
        }
    }
}
