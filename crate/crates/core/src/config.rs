//! Resource caps shared by every algorithm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest group order that may be enumerated element by element.
    pub element_cap: usize,
    /// Largest group order for full subgroup-lattice enumeration.
    pub subgroup_cap: usize,
    /// Largest number of conjugacy classes for normal-subgroup enumeration.
    pub class_cap: usize,
    /// Largest permutation degree (also bounds quotient indices).
    pub degree_cap: usize,
    /// Largest module dimension handed to the MeatAxe.
    pub chop_cap: usize,
    /// Largest group order for regular-module construction.
    pub regular_module_cap: usize,
    /// Random algebra elements tried per module before giving up.
    pub retry_budget: usize,
    /// Default step bound for series iteration.
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 200_000,
            subgroup_cap: 400,
            class_cap: 24,
            degree_cap: 10_000,
            chop_cap: 512,
            regular_module_cap: 400,
            retry_budget: 64,
            max_steps: 64,
        }
    }
}

impl Limits {
    /// Applies `GROUPLEN_*` environment overrides on top of `self`.
    pub fn with_env(mut self) -> Result<Self> {
        let fields: [(&str, &mut usize); 8] = [
            ("GROUPLEN_ELEMENT_CAP", &mut self.element_cap),
            ("GROUPLEN_SUBGROUP_CAP", &mut self.subgroup_cap),
            ("GROUPLEN_CLASS_CAP", &mut self.class_cap),
            ("GROUPLEN_DEGREE_CAP", &mut self.degree_cap),
            ("GROUPLEN_CHOP_CAP", &mut self.chop_cap),
            ("GROUPLEN_REGULAR_MODULE_CAP", &mut self.regular_module_cap),
            ("GROUPLEN_RETRY_BUDGET", &mut self.retry_budget),
            ("GROUPLEN_MAX_STEPS", &mut self.max_steps),
        ];
        for (key, slot) in fields {
            if let Ok(v) = std::env::var(key) {
                *slot = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("{key}={v} is not an integer")))?;
            }
        }
        Ok(self)
    }

    pub(crate) fn check(&self, cap: &'static str, limit: usize, value: usize) -> Result<()> {
        if value > limit {
            Err(Error::CapExceeded { cap, limit, value })
        } else {
            Ok(())
        }
    }
}
