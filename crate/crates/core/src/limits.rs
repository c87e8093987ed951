//! Size guards for constructions whose output can grow combinatorially.

use crate::error::{Error, Result};

/// Environment variable mirroring the `--max-arrows` CLI flag.
pub const MAX_ARROWS_ENV: &str = "CATSQ_MAX_ARROWS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_arrows: usize,
    /// Cap on the number of elements of any finite set produced by the
    /// presheaf engine (limits, colimits, Kan extension values).
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 4096,
            max_arrows: 65536,
            max_elements: 1 << 20,
        }
    }
}

impl Limits {
    /// Defaults, with `max_arrows` overridden by `CATSQ_MAX_ARROWS` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_ARROWS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_arrows = n;
        }
        limits
    }

    pub(crate) fn check_objects(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_objects {
            return Err(Error::SizeGuardExceeded {
                what: format!("{what} object count"),
                limit: self.max_objects,
            });
        }
        Ok(())
    }

    pub(crate) fn check_arrows(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_arrows {
            return Err(Error::SizeGuardExceeded {
                what: format!("{what} arrow count"),
                limit: self.max_arrows,
            });
        }
        Ok(())
    }

    /// Errors when `c` exceeds the object or arrow cap.
    pub fn check_category(&self, what: &str, c: &crate::fincat::FinCat) -> Result<()> {
        self.check_objects(what, c.num_objects())?;
        self.check_arrows(what, c.num_arrows())
    }

    pub(crate) fn check_elements(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_elements {
            return Err(Error::SizeGuardExceeded {
                what: format!("{what} element count"),
                limit: self.max_elements,
            });
        }
        Ok(())
    }
}
