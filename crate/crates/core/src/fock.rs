//! Fock states of n indistinguishable particles in d modes.
//!
//! A state is labelled either by its occupation vector `(r_1, ..., r_d)` or
//! by the nondecreasing sequence of occupied mode labels `(j_1, ..., j_n)`.
//! Occupation vectors are the primary representation; [`ModeSequence`] is a
//! view over the same set.
//!
//! Bases are enumerated in lexicographically *decreasing* order of
//! occupation vectors, so `(n, 0, ..., 0)` comes first and `(0, ..., 0, n)`
//! last. Equivalently, mode sequences are in ascending lexicographic order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default upper bound on the number of states a basis may hold.
pub const DEFAULT_BASIS_CAP: usize = 1_000_000;

/// Occupation numbers `(r_1, ..., r_d)`, one per mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationVector(Vec<usize>);

impl OccupationVector {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    /// The state with `n` particles in mode `mode` and none elsewhere.
    pub fn single_mode(modes: usize, mode: usize, n: usize) -> Self {
        let mut v = vec![0; modes];
        v[mode] = n;
        Self(v)
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    /// Total particle number.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    /// True when no mode holds more than one particle.
    pub fn is_collision_free(&self) -> bool {
        self.0.iter().all(|&r| r <= 1)
    }
}

impl From<Vec<usize>> for OccupationVector {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for OccupationVector {
    type Output = usize;

    fn index(&self, k: usize) -> &usize {
        &self.0[k]
    }
}

/// Renders as `|r1,r2,...,rd⟩`.
impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("⟩")
    }
}

/// Accepts `|r1,...,rd⟩`, `|r1,...,rd>` or a bare `r1,...,rd`.
impl FromStr for OccupationVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('|').unwrap_or(s);
        let inner = inner
            .strip_suffix('⟩')
            .or_else(|| inner.strip_suffix('>'))
            .unwrap_or(inner);
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty state {s:?}")));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad occupation {:?} in {s:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Nondecreasing sequence of 1-based mode labels `1 <= j_1 <= ... <= j_n <= d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeSequence(Vec<usize>);

impl ModeSequence {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::DecreasingSequence);
        }
        Ok(Self(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// r_k = number of times label k appears in `seq`.
pub fn sequence_to_occupation(seq: &ModeSequence, modes: usize) -> Result<OccupationVector> {
    let mut occ = vec![0; modes];
    for &j in &seq.0 {
        if j == 0 || j > modes {
            return Err(Error::ModeOutOfRange { index: j, modes });
        }
        occ[j - 1] += 1;
    }
    Ok(OccupationVector(occ))
}

pub fn occupation_to_sequence(occ: &OccupationVector) -> ModeSequence {
    ModeSequence(
        occ.iter()
            .enumerate()
            .flat_map(|(k, &r)| std::iter::repeat_n(k + 1, r))
            .collect(),
    )
}

/// Exact Γ = r_1! r_2! ... r_d!, available for up to 20 particles.
pub fn normalization_gamma(occ: &OccupationVector) -> Result<u64> {
    let n = occ.total();
    if n > 20 {
        return Err(Error::GammaOverflow { photons: n });
    }
    // each r_k! divides n! <= 20! < 2^63
    Ok(occ
        .iter()
        .map(|&r| (1..=r as u64).product::<u64>())
        .product())
}

/// Γ in floating point. Exact below 2^53; beyond that the relative error is
/// a few ulps per factor.
pub fn normalization_gamma_f64(occ: &OccupationVector) -> f64 {
    occ.iter()
        .map(|&r| (1..=r).map(|x| x as f64).product::<f64>())
        .product()
}

/// Particle statistics of a basis. Fermionic bases only contain 0/1
/// occupations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

/// Number of states with `photons` particles in `modes` modes.
///
/// Returns `None` if the count does not fit in a `u128`.
pub fn basis_size(modes: usize, photons: usize, statistics: Statistics) -> Option<u128> {
    match statistics {
        Statistics::Bose if modes == 0 => Some(u128::from(photons == 0)),
        Statistics::Bose => binomial(modes + photons - 1, photons),
        Statistics::Fermi if photons > modes => Some(0),
        Statistics::Fermi => binomial(modes, photons),
    }
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Ordered list of all basis states for given (d, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    modes: usize,
    photons: usize,
    statistics: Statistics,
    states: Vec<OccupationVector>,
}

/// Bosonic basis with the default cap.
pub fn enumerate_basis(modes: usize, photons: usize) -> Result<FockBasis> {
    FockBasis::new(modes, photons, Statistics::Bose, DEFAULT_BASIS_CAP)
}

impl FockBasis {
    pub fn new(modes: usize, photons: usize, statistics: Statistics, cap: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::ZeroModes);
        }
        let size = basis_size(modes, photons, statistics)
            .filter(|&s| s <= cap as u128)
            .ok_or(Error::BasisTooLarge {
                modes,
                photons,
                cap,
            })?;
        let max_occ = match statistics {
            Statistics::Bose => photons,
            Statistics::Fermi => 1,
        };
        let mut states = Vec::with_capacity(size as usize);
        let mut current = vec![0; modes];
        fill(&mut states, &mut current, 0, photons, max_occ);
        debug_assert_eq!(states.len() as u128, size);
        Ok(Self {
            modes,
            photons,
            statistics,
            states,
        })
    }

    pub fn bosonic(modes: usize, photons: usize, cap: usize) -> Result<Self> {
        Self::new(modes, photons, Statistics::Bose, cap)
    }

    pub fn fermionic(modes: usize, photons: usize, cap: usize) -> Result<Self> {
        Self::new(modes, photons, Statistics::Fermi, cap)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state_at(&self, index: usize) -> Option<&OccupationVector> {
        self.states.get(index)
    }

    /// Position of `occ` in the canonical order, computed by ranking rather
    /// than search.
    pub fn index_of(&self, occ: &OccupationVector) -> Result<usize> {
        if occ.modes() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: occ.modes(),
            });
        }
        if occ.total() != self.photons {
            return Err(Error::ParticleMismatch {
                input: self.photons,
                output: occ.total(),
            });
        }
        if self.statistics == Statistics::Fermi {
            if let Some((mode, &r)) = occ.iter().enumerate().find(|&(_, &r)| r > 1) {
                return Err(Error::NotFermionic {
                    mode,
                    occupation: r,
                });
            }
        }
        let max_occ = match self.statistics {
            Statistics::Bose => self.photons,
            Statistics::Fermi => 1,
        };
        let mut index: u128 = 0;
        let mut remaining = self.photons;
        for (k, &r) in occ.iter().enumerate().take(self.modes - 1) {
            let rest = self.modes - k - 1;
            // states sharing the prefix but with a larger value at position k
            for v in (r + 1)..=remaining.min(max_occ) {
                index += basis_size(rest, remaining - v, self.statistics).unwrap_or(0);
            }
            remaining -= r;
        }
        Ok(index as usize)
    }
}

fn fill(
    out: &mut Vec<OccupationVector>,
    current: &mut [usize],
    pos: usize,
    remaining: usize,
    max_occ: usize,
) {
    let last = current.len() - 1;
    if pos == last {
        if remaining <= max_occ {
            current[pos] = remaining;
            out.push(OccupationVector(current.to_vec()));
        }
        return;
    }
    for v in (0..=remaining.min(max_occ)).rev() {
        current[pos] = v;
        fill(out, current, pos + 1, remaining - v, max_occ);
    }
    current[pos] = 0;
}
