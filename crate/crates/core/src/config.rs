//! Search limits and seeds, optionally loaded from a config file by the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::MAX_DENSE_N;

pub const DEFAULT_ENS_GUARD: usize = 10;
pub const DEFAULT_UNRESTRICTED_GUARD: usize = 6;
pub const DEFAULT_TIE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest `n` materialised densely.
    pub dense_limit: usize,
    /// Largest `n` for the exhaustive `e(n, s)` search.
    pub ens_guard: usize,
    /// Largest `n` for the search that does not assume shiftedness.
    pub unrestricted_guard: usize,
    /// Maximum number of tied extremal families kept.
    pub tie_cap: usize,
    pub sample_seed: u64,
    /// Must be set to raise `ens_guard` above its default.
    pub allow_large: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dense_limit: MAX_DENSE_N,
            ens_guard: DEFAULT_ENS_GUARD,
            unrestricted_guard: DEFAULT_UNRESTRICTED_GUARD,
            tie_cap: DEFAULT_TIE_CAP,
            sample_seed: 0,
            allow_large: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.dense_limit > MAX_DENSE_N {
            return Err(Error::DenseLimit { n: self.dense_limit, limit: MAX_DENSE_N });
        }
        if self.ens_guard > DEFAULT_ENS_GUARD && !self.allow_large {
            return Err(Error::InvalidParams(format!(
                "ens_guard {} exceeds {DEFAULT_ENS_GUARD}; set allow_large to acknowledge",
                self.ens_guard
            )));
        }
        if self.ens_guard > self.dense_limit {
            return Err(Error::DenseLimit { n: self.ens_guard, limit: self.dense_limit });
        }
        if self.tie_cap == 0 {
            return Err(Error::InvalidParams("tie_cap must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn check_guard(&self, n: usize) -> Result<()> {
        self.validate()?;
        if n > self.ens_guard {
            return Err(Error::GuardExceeded { n, guard: self.ens_guard });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raising_guard_needs_acknowledgement() {
        let mut c = Config { ens_guard: 11, ..Config::default() };
        assert!(c.validate().is_err());
        c.allow_large = true;
        assert!(c.validate().is_ok());
        assert!(Config { dense_limit: 30, ..Config::default() }.validate().is_err());
        assert!(Config::default().check_guard(11).is_err());
    }
}
