//! Run configuration: budgets, defaults and conventions shared by every
//! command. Loaded from a JSON file and overridden by command-line flags.

use serde::{Deserialize, Serialize};

use crate::conjugacy::Budget;
use crate::error::{Error, Result};
use crate::fixtures::So6Budget;
use crate::wd::Convention;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Degree bound of the representation family.
    pub degree: usize,
    /// Trial points for generic intertwiner searches.
    pub trials: usize,
    /// Weight-data candidates examined by the counterexample search.
    pub candidates: usize,
    /// Cap on enumerated elements of a finite image.
    pub elements: usize,
    /// Default truncation order for log modules.
    pub order: usize,
    pub convention: ConventionName,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionName {
    #[default]
    Arithmetic,
    Geometric,
}

impl From<ConventionName> for Convention {
    fn from(c: ConventionName) -> Convention {
        match c {
            ConventionName::Arithmetic => Convention::Arithmetic,
            ConventionName::Geometric => Convention::Geometric,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        let b = Budget::default();
        let s = So6Budget::default();
        Config {
            degree: b.degree,
            trials: b.trials,
            candidates: s.candidates,
            elements: s.elements,
            order: 8,
            convention: ConventionName::Arithmetic,
            seed: b.seed,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config> {
        let c: Config = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "config: line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        c.validate()?;
        Ok(c)
    }

    /// All bounds must be positive.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("degree", self.degree),
            ("trials", self.trials),
            ("candidates", self.candidates),
            ("elements", self.elements),
            ("order", self.order),
        ] {
            if v == 0 {
                return Err(Error::InvalidInput(format!(
                    "config: {name} must be positive"
                )));
            }
        }
        Ok(())
    }

    pub fn budget(&self) -> Budget {
        Budget {
            degree: self.degree,
            trials: self.trials,
            seed: self.seed,
        }
    }

    pub fn so6_budget(&self) -> So6Budget {
        So6Budget {
            candidates: self.candidates,
            elements: self.elements,
            degree: 2,
            search: self.budget(),
        }
    }

    pub fn convention(&self) -> Convention {
        self.convention.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let c = Config::from_json(r#"{"degree": 2, "convention": "geometric"}"#).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(c.trials, Config::default().trials);
        assert_eq!(c.convention(), Convention::Geometric);
    }

    #[test]
    fn rejects_unknown_keys_and_zero_bounds() {
        assert!(Config::from_json(r#"{"degre": 2}"#)
            .unwrap_err()
            .to_string()
            .contains("degre"));
        assert!(Config::from_json(r#"{"order": 0}"#)
            .unwrap_err()
            .to_string()
            .contains("order"));
    }
}
