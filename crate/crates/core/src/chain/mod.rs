//! The finite `k!`-state chain: exact rates, stationary distribution, and
//! the claims checked against it.

pub mod export;
pub mod matrix;
pub mod plancherel;
pub mod solve;
pub mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serializer;

pub use export::{write_pi_csv, ChainExport, CHAIN_FORMAT};
pub use matrix::{RationalTransitionMatrix, Transition};
pub use plancherel::{k_plancherel, verify_normalization, verify_stationarity_identity};
pub use solve::{is_stationary, stationary, SolveMethod, StationaryDistribution};

use crate::dimensions::DimensionEngine;
use crate::error::Result;

/// `num/den`, with `den = 1` written out.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// A built and solved chain.
#[derive(Clone, Debug)]
pub struct ChainAnalysis {
    pub matrix: RationalTransitionMatrix,
    pub pi: StationaryDistribution,
}

impl ChainAnalysis {
    pub fn new(k: u32, engine: DimensionEngine, method: SolveMethod) -> Result<Self> {
        let matrix = RationalTransitionMatrix::build(k, engine);
        let pi = stationary(&matrix, method)?;
        Ok(ChainAnalysis { matrix, pi })
    }

    /// Built once per `k` with the default engine and solver.
    pub fn shared(k: u32) -> Result<Arc<ChainAnalysis>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ChainAnalysis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().unwrap().get(&k) {
            return Ok(a.clone());
        }
        let built = Arc::new(ChainAnalysis::new(k, DimensionEngine::default(), SolveMethod::default())?);
        Ok(cache.lock().unwrap().entry(k).or_insert(built).clone())
    }

    pub fn k(&self) -> u32 {
        self.matrix.k
    }

    /// `ρ_i` for `i = 1..=k`: stationary rate of moves that complete and
    /// remove `□_i`.
    pub fn rho(&self) -> Vec<BigRational> {
        let k = self.k() as usize;
        let mut rho = vec![BigRational::zero(); k];
        for (from, row) in self.matrix.rows.iter().enumerate() {
            for t in row {
                if let Some(i) = t.rectangle {
                    rho[i as usize - 1] += &self.pi.values[from] * &t.prob;
                }
            }
        }
        rho
    }
}
