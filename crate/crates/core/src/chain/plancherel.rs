//! The `k`-Plancherel measure `λ ↦ w_λ d_λ / n!` on `k`-bounded partitions of
//! `n`, and its invariance under one step of the growth process.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::format_rational;
use crate::combinatorics::KBoundedPartition;
use crate::dimensions::{strong_dim, DimensionEngine};
use crate::partition::Partition;
use crate::posets::{enumerate_bounded, weak_dim, weak_down_covers_bounded};
use crate::report::{ClaimKind, Finding};

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn k_plancherel(k: u32, n: u64) -> Vec<(KBoundedPartition, BigRational)> {
    let total = BigInt::from(factorial(n));
    enumerate_bounded(k, n)
        .into_iter()
        .map(|b| {
            let mass = weak_dim(&b) * strong_dim(&b, DimensionEngine::Tableaux);
            (b, BigRational::new(BigInt::from(mass), total.clone()))
        })
        .collect()
}

/// `Σ_{λ ∈ P_k(n)} w_λ d_λ = n!`.
pub fn verify_normalization(k: u32, n: u64) -> Finding {
    let sum: BigUint =
        enumerate_bounded(k, n).iter().map(|b| weak_dim(b) * strong_dim(b, DimensionEngine::Tableaux)).sum();
    let want = factorial(n);
    Finding::from_witness(
        "Σ w_λ d_λ = n!",
        ClaimKind::Theorem,
        Some(k),
        format!("n={n}: {sum}"),
        (sum != want).then(|| format!("expected {want}")),
    )
}

/// `𝐏_k(λ) = Σ_{μ → λ} 𝐏_k(μ) d_λ / (n d_μ)` on `P_k(n)`.
pub fn verify_stationarity_identity(k: u32, n: u64) -> Finding {
    let below: HashMap<Partition, BigRational> =
        k_plancherel(k, n.saturating_sub(1)).into_iter().map(|(b, p)| (b.partition().clone(), p)).collect();
    let mut witness = None;
    let here = k_plancherel(k, n);
    if n > 0 {
        for (lambda, mass) in &here {
            let d_lambda = BigInt::from(strong_dim(lambda, DimensionEngine::Tableaux));
            let mut inflow = BigRational::zero();
            for mu in weak_down_covers_bounded(lambda) {
                let d_mu = BigInt::from(strong_dim(&mu, DimensionEngine::Tableaux));
                let rate = BigRational::new(d_lambda.clone(), d_mu * BigInt::from(n));
                inflow += &below[mu.partition()] * rate;
            }
            if inflow != *mass {
                witness = Some(format!("{lambda}: inflow {} vs {}", format_rational(&inflow), format_rational(mass)));
                break;
            }
        }
    }
    let total = here.iter().fold(BigRational::zero(), |acc, (_, p)| acc + p);
    if witness.is_none() && !total.is_one() {
        witness = Some(format!("measure sums to {}", format_rational(&total)));
    }
    Finding::from_witness(
        "k-Plancherel one-step invariance",
        ClaimKind::Theorem,
        Some(k),
        format!("n={n}, {} partitions", here.len()),
        witness,
    )
}
