use serde::Serialize;

use crate::subcat::DEFAULT_BRUTE_FORCE_CAP;

/// The algebras every check is run on: the linear quivers `A_1..A_5`, three
/// linear Kupisch series with relations, and two cyclic ones.
pub const CONFIGURED_INSTANCES: &[&str] = &[
    "linA:1",
    "linA:2",
    "linA:3",
    "linA:4",
    "linA:5",
    "nakayama:linear:2,2,1",
    "nakayama:linear:2,2,2,1",
    "nakayama:linear:3,3,2,1",
    "nakayama:cyclic:3,3",
    "nakayama:cyclic:2,2,2",
];

/// Number of random join representations drawn per lattice when validating
/// canonical join representations.
pub const DEFAULT_CJR_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Prime field for oracle computations.
    pub field: u32,
    /// Seed for every random choice.
    pub seed: u64,
    /// Subset sweeps are refused above this many indecomposables.
    pub max_indecs: usize,
    pub cjr_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            field: 2,
            seed: 0,
            max_indecs: DEFAULT_BRUTE_FORCE_CAP,
            cjr_samples: DEFAULT_CJR_SAMPLES,
        }
    }
}
