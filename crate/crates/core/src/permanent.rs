//! Permanent and determinant kernels.
//!
//! `permanent_naive` sums over all n! permutations and is kept as the oracle
//! for the faster kernels. `permanent_ryser` is the production kernel:
//! inclusion-exclusion over column subsets, visited in Gray-code order so
//! each step adds or removes a single column from the running row sums,
//! O(2^n n) in total. `permanent_glynn` is an alternative O(2^(n-1) n)
//! kernel behind the same contract.
//!
//! Rounding error in the exponential kernels grows roughly like 2^n eps,
//! which is why they refuse n > [`RYSER_MAX`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::matrix::ComplexMatrix;

/// Largest size accepted by [`permanent_naive`].
pub const NAIVE_MAX: usize = 10;
/// Largest size accepted by [`permanent_ryser`] and [`permanent_glynn`].
pub const RYSER_MAX: usize = 30;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Repetition counts for rows and columns of a source matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySpec {
    pub rows: OccupationVector,
    pub cols: OccupationVector,
}

impl MultiplicitySpec {
    pub fn new(rows: OccupationVector, cols: OccupationVector) -> Result<Self> {
        let (r, c) = (rows.total(), cols.total());
        if r != c {
            return Err(Error::UnbalancedMultiplicities { rows: r, cols: c });
        }
        Ok(Self { rows, cols })
    }

    /// Side length of the expanded square matrix.
    pub fn size(&self) -> usize {
        self.rows.total()
    }
}

/// Permanent by direct enumeration of all permutations (Heap's algorithm).
pub fn permanent_naive(m: &ComplexMatrix) -> Result<Complex64> {
    let n = m.require_square()?;
    if n > NAIVE_MAX {
        return Err(Error::PermanentTooLarge {
            kernel: "naive",
            n,
            limit: NAIVE_MAX,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let term = |p: &[usize]| {
        p.iter()
            .enumerate()
            .map(|(i, &j)| m[(i, j)])
            .product::<Complex64>()
    };
    let mut total = term(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += term(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Ryser's formula with Gray-code subset updates.
///
/// per(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij
pub fn permanent_ryser(m: &ComplexMatrix) -> Result<Complex64> {
    let n = m.require_square()?;
    if n > RYSER_MAX {
        return Err(Error::PermanentTooLarge {
            kernel: "ryser",
            n,
            limit: RYSER_MAX,
        });
    }
    if n == 0 {
        return Ok(ONE);
    }
    let mut row_sums = vec![ZERO; n];
    let mut total = ZERO;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        let col = m.column_slice(j);
        if gray & (1 << j) != 0 {
            row_sums.iter_mut().zip(col).for_each(|(s, a)| *s += a);
        } else {
            row_sums.iter_mut().zip(col).for_each(|(s, a)| *s -= a);
        }
        let prod: Complex64 = row_sums.iter().product();
        if gray.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(if n % 2 == 1 { -total } else { total })
}

/// Glynn's formula with Gray-code sign flips.
///
/// per(A) = 2^(1-n) sum_delta (prod_k delta_k) prod_j sum_i delta_i a_ij,
/// with delta_0 fixed to +1.
pub fn permanent_glynn(m: &ComplexMatrix) -> Result<Complex64> {
    let n = m.require_square()?;
    if n > RYSER_MAX {
        return Err(Error::PermanentTooLarge {
            kernel: "glynn",
            n,
            limit: RYSER_MAX,
        });
    }
    if n == 0 {
        return Ok(ONE);
    }
    let rows = m.row_major();
    // col_sums[j] = sum_i delta_i a_ij, all deltas start at +1
    let mut col_sums: Vec<Complex64> = (0..n).map(|j| rows.iter().map(|r| r[j]).sum()).collect();
    let mut total: Complex64 = col_sums.iter().product();
    let mut sign = 1.0;
    for k in 1u64..(1u64 << (n - 1)) {
        let bit = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        let row = &rows[bit + 1];
        let factor = if gray & (1 << bit) != 0 { -2.0 } else { 2.0 };
        col_sums
            .iter_mut()
            .zip(row)
            .for_each(|(s, a)| *s += a * factor);
        sign = -sign;
        total += col_sums.iter().product::<Complex64>() * sign;
    }
    Ok(total / (1u64 << (n - 1)) as f64)
}

/// Default permanent kernel.
pub fn permanent(m: &ComplexMatrix) -> Result<Complex64> {
    permanent_ryser(m)
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex64> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(ONE);
    }
    Ok(m.as_dmatrix().clone().determinant())
}

/// Square matrix with row k of `m` repeated `spec.rows[k]` times and column
/// l repeated `spec.cols[l]` times, both emitted in ascending source index.
pub fn expand_submatrix(m: &ComplexMatrix, spec: &MultiplicitySpec) -> Result<ComplexMatrix> {
    if spec.rows.modes() != m.rows() {
        return Err(Error::MultiplicityLength {
            expected: m.rows(),
            found: spec.rows.modes(),
        });
    }
    if spec.cols.modes() != m.cols() {
        return Err(Error::MultiplicityLength {
            expected: m.cols(),
            found: spec.cols.modes(),
        });
    }
    let row_idx = repeated_indices(&spec.rows);
    let col_idx = repeated_indices(&spec.cols);
    if row_idx.len() != col_idx.len() {
        return Err(Error::UnbalancedMultiplicities {
            rows: row_idx.len(),
            cols: col_idx.len(),
        });
    }
    Ok(select(m, &row_idx, &col_idx))
}

/// Submatrix picking the given rows and columns, in the given order.
pub(crate) fn select(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
    let entries = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| m[(r, c)]))
        .collect();
    ComplexMatrix::from_row_major(rows.len(), cols.len(), entries)
        .expect("entries of a finite matrix")
}

fn repeated_indices(occ: &OccupationVector) -> Vec<usize> {
    occ.iter()
        .enumerate()
        .flat_map(|(k, &r)| std::iter::repeat_n(k, r))
        .collect()
}
