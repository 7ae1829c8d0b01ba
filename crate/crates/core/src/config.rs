use crate::error::{Error, Result};
use crate::fock::DEFAULT_BASIS_CAP;
use crate::permanent::RYSER_MAX;
use crate::transforms::UNITARITY_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Knobs shared by every command-line invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub unitarity_tol: f64,
    pub basis_cap: usize,
    pub permanent_limit: usize,
    /// 0 lets the thread pool decide.
    pub threads: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            unitarity_tol: UNITARITY_TOL,
            basis_cap: DEFAULT_BASIS_CAP,
            permanent_limit: RYSER_MAX,
            threads: 0,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.unitarity_tol > 0.0 && self.unitarity_tol.is_finite()) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.unitarity_tol
            )));
        }
        if self.basis_cap == 0 {
            return Err(Error::Config("basis cap must be at least 1".into()));
        }
        if self.permanent_limit == 0 || self.permanent_limit > RYSER_MAX {
            return Err(Error::Config(format!(
                "permanent limit must be in 1..={RYSER_MAX}, got {}",
                self.permanent_limit
            )));
        }
        Ok(())
    }
}
