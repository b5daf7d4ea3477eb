//! Resource bounds shared by the enumeration-heavy operations.
//!
//! Every bound has a default and may be overridden from the environment
//! (`FSGKIT_<NAME>`, e.g. `FSGKIT_CLASS_BOUND=2000000`).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest field size `q = p^f` accepted by `FieldSpec::new`.
    pub max_field_size: u64,
    /// Groups up to this order have their elements listed outright.
    pub exhaustive_enumeration: u64,
    /// Hard ceiling for class computations, histograms and simplicity tests.
    pub class_bound: u64,
    /// Ceiling on `|G|` for the automorphism backtracking search.
    pub automorphism_bound: u64,
    /// Ceiling on the number of automorphisms collected by that search.
    pub automorphism_count: u64,
    /// Ceiling on `|G|` for character tables.
    pub character_bound: u64,
    /// Ceiling on the number of projective points in an explicit action.
    pub projective_points: u64,
    /// Ceiling on truncation orders for q-series.
    pub series_terms: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_field_size: 1 << 20,
            exhaustive_enumeration: 100_000,
            class_bound: 1_000_000,
            automorphism_bound: 64,
            automorphism_count: 1_000_000,
            character_bound: 200,
            projective_points: 5000,
            series_terms: 10_000,
        }
    }
}

impl Limits {
    /// Defaults, with any `FSGKIT_*` environment variables applied on top.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        let fields: [(&str, &mut u64); 8] = [
            ("FSGKIT_MAX_FIELD_SIZE", &mut limits.max_field_size),
            ("FSGKIT_EXHAUSTIVE_ENUMERATION", &mut limits.exhaustive_enumeration),
            ("FSGKIT_CLASS_BOUND", &mut limits.class_bound),
            ("FSGKIT_AUTOMORPHISM_BOUND", &mut limits.automorphism_bound),
            ("FSGKIT_AUTOMORPHISM_COUNT", &mut limits.automorphism_count),
            ("FSGKIT_CHARACTER_BOUND", &mut limits.character_bound),
            ("FSGKIT_PROJECTIVE_POINTS", &mut limits.projective_points),
            ("FSGKIT_SERIES_TERMS", &mut limits.series_terms),
        ];
        for (name, slot) in fields {
            if let Some(v) = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        }
        limits
    }
}
