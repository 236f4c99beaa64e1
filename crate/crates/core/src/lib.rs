//! Combinatorics of `(k+1)`-cores and `k`-bounded partitions, the `k`-analog
//! of the Plancherel growth process on them, and its multispecies TASEP
//! description.

pub mod chain;
pub mod combinatorics;
pub mod dimensions;
pub mod error;
pub mod partition;
pub mod posets;
pub mod report;
pub mod simulate;
pub mod suites;
pub mod tasep;

pub use combinatorics::{
    bounded_to_core, complement, core_to_bounded, enumerate_reduced_states, expand, factorial_index, k_conjugate,
    rectangle, rectangle_area, reduce, CorePartition, KBoundedPartition, RectangleLedger, ReducedState,
};
pub use error::{Error, Result};
pub use partition::Partition;
