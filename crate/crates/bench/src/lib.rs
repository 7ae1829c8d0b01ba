//! Shared fixtures for the criterion benches.

use linoptics_core::{random_haar_unitary, ComplexMatrix, OccupationVector, UnitaryMatrix};

/// Leading n x n block of a Haar unitary on `n + 2` modes; a generic dense
/// complex matrix with entries of size ~ 1/sqrt(n).
pub fn dense_block(n: usize, seed: u64) -> ComplexMatrix {
    let u = random_haar_unitary(n + 2, seed).expect("d >= 1");
    let rows: Vec<Vec<_>> = (0..n)
        .map(|r| (0..n).map(|c| u.entry(r, c)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).expect("finite")
}

/// `n` photons, one in each of the first `n` of `d` modes.
pub fn collision_free_input(d: usize, n: usize) -> OccupationVector {
    OccupationVector::new((0..d).map(|k| usize::from(k < n)).collect())
}

pub fn network(d: usize) -> UnitaryMatrix {
    random_haar_unitary(d, 0xB05).expect("d >= 1")
}
