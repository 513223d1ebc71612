use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::VerifyError;

const DEFAULT: &str = include_str!("../verify.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSection {
    pub max_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceSection {
    pub min_completed_pairs: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub search: SearchSection,
    pub equivalence: EquivalenceSection,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        toml::from_str(DEFAULT).expect("bundled verify.toml parses")
    }
}

impl VerifyConfig {
    pub fn load(path: &Path) -> Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VerifyError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| VerifyError::Config(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_defaults() {
        let c = VerifyConfig::default();
        assert_eq!(c.search.max_states, 10_000_000);
        assert!(c.equivalence.min_completed_pairs >= 1);
    }
}
