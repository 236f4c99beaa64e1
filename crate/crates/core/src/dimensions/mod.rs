//! `d^{(k)}_λ`, the number of strong marked tableaux of shape `𝔠(λ)` and unit
//! weight, computed two independent ways.

pub mod appendix;
pub mod raising;
pub mod table;
pub mod tableaux;

use num_bigint::BigUint;

use crate::combinatorics::KBoundedPartition;

pub use appendix::{
    composition_sum, naive_triangle_expansion, triangle_expand_intervals, triangle_expand_intervals_unpruned,
    triangle_expand_inversions, triangle_vanishes, verify_long_column, LongColumnLemma,
};
pub use raising::{evaluate, h_coefficient, operator_index_set, raising_apply, strong_dim_raising, IntVector, OperatorSet};
pub use table::{DimensionTable, TABLE_FORMAT};
pub use tableaux::strong_dim_tableaux;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimensionEngine {
    #[default]
    Tableaux,
    Raising,
}

impl std::str::FromStr for DimensionEngine {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "tableaux" => Ok(DimensionEngine::Tableaux),
            "raising" => Ok(DimensionEngine::Raising),
            _ => Err(crate::error::Error::Parse(format!("unknown engine {s:?}"))),
        }
    }
}

pub fn strong_dim(b: &KBoundedPartition, engine: DimensionEngine) -> BigUint {
    match engine {
        DimensionEngine::Tableaux => strong_dim_tableaux(b),
        DimensionEngine::Raising => strong_dim_raising(b),
    }
}
