//! The exact transition matrix on `𝓡_k`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{enumerate_reduced_states, factorial_index, reduce, ReducedState};
use crate::dimensions::{strong_dim, DimensionEngine};
use crate::posets::weak_covers_by_column;

/// A move out of a state: one box in `column`, then removal of `□_rectangle`
/// if one formed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub to: usize,
    pub column: u32,
    pub rectangle: Option<u32>,
    #[serde(serialize_with = "crate::chain::ser_rational")]
    pub prob: BigRational,
}

/// Rows are indexed by factorial index.
#[derive(Clone, Debug)]
pub struct RationalTransitionMatrix {
    pub k: u32,
    pub states: Vec<ReducedState>,
    pub rows: Vec<Vec<Transition>>,
    /// `d^{(k)}` of each state.
    pub dims: Vec<BigUint>,
}

impl RationalTransitionMatrix {
    /// `P(λ, reduce(Λ)) = d_Λ / ((|λ| + 1) d_λ)` for every weak cover `Λ`.
    pub fn build(k: u32, engine: DimensionEngine) -> Self {
        let states = enumerate_reduced_states(k);
        debug_assert!(states.iter().enumerate().all(|(i, s)| factorial_index(s) == i));
        let built: Vec<(BigUint, Vec<Transition>)> = states
            .par_iter()
            .map(|s| {
                let d = strong_dim(s.bounded(), engine);
                let scale = BigInt::from(d.clone()) * BigInt::from(s.size() + 1);
                let row = weak_covers_by_column(s.bounded())
                    .into_iter()
                    .map(|(column, big)| {
                        let (target, ledger) = reduce(&big);
                        let rectangle = (1..=k).find(|&i| ledger.counts[i as usize - 1] > 0);
                        let num = BigInt::from(strong_dim(&big, engine));
                        Transition {
                            to: factorial_index(&target),
                            column,
                            rectangle,
                            prob: BigRational::new(num, scale.clone()),
                        }
                    })
                    .collect();
                (d, row)
            })
            .collect();
        let (dims, rows) = built.into_iter().unzip();
        RationalTransitionMatrix { k, states, rows, dims }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &ReducedState) -> usize {
        factorial_index(s)
    }

    /// `P(from, to)`, zero when there is no move.
    pub fn entry(&self, from: usize, to: usize) -> BigRational {
        self.rows[from].iter().filter(|t| t.to == to).fold(BigRational::zero(), |acc, t| acc + &t.prob)
    }

    pub fn row_sum(&self, from: usize) -> BigRational {
        self.rows[from].iter().fold(BigRational::zero(), |acc, t| acc + &t.prob)
    }

    /// The move adding a box in `column`, if that box is addable.
    pub fn by_column(&self, from: usize, column: u32) -> Option<&Transition> {
        self.rows[from].iter().find(|t| t.column == column)
    }

    pub fn transition_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}
