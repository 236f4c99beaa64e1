//! Counting strong marked tableaux of weight `(1^n)`.
//!
//! With unit weights the content condition on markings is vacuous, so a strong
//! cover contributes one marking per connected component of its skew shape and
//! `D(κ) = Σ_{τ ⇒ κ} components(κ/τ) · D(τ)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{bounded_to_core, CorePartition, KBoundedPartition};
use crate::partition::Partition;
use crate::posets::core_level;

type Level = Arc<HashMap<Partition, BigUint>>;

struct Levels {
    levels: RwLock<Vec<Level>>,
    extend: Mutex<()>,
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<Levels>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<Levels>>>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

fn levels_for(k: u32) -> Arc<Levels> {
    if let Some(l) = registry().read().unwrap().get(&k) {
        return l.clone();
    }
    registry()
        .write()
        .unwrap()
        .entry(k)
        .or_insert_with(|| {
            let mut base = HashMap::new();
            base.insert(Partition::empty(), BigUint::one());
            Arc::new(Levels { levels: RwLock::new(vec![Arc::new(base)]), extend: Mutex::new(()) })
        })
        .clone()
}

/// Strong tableau counts for every core of bounded size `m`, keyed by the
/// core's shape.
pub fn tableau_level(k: u32, m: u64) -> Level {
    let levels = levels_for(k);
    if let Some(l) = levels.levels.read().unwrap().get(m as usize) {
        return l.clone();
    }
    let _guard = levels.extend.lock().unwrap();
    loop {
        let (have, prev) = {
            let v = levels.levels.read().unwrap();
            (v.len() as u64, v.last().unwrap().clone())
        };
        if have > m {
            break;
        }
        let below = core_level(k, have - 1);
        let here = core_level(k, have);
        let computed: HashMap<Partition, BigUint> = here
            .par_iter()
            .map(|kappa| (kappa.partition().clone(), count_into(kappa, &below, &prev)))
            .collect();
        levels.levels.write().unwrap().push(Arc::new(computed));
    }
    let level = levels.levels.read().unwrap()[m as usize].clone();
    level
}

fn count_into(kappa: &CorePartition, below: &[CorePartition], prev: &HashMap<Partition, BigUint>) -> BigUint {
    let outer = kappa.partition();
    let mut total = BigUint::zero();
    for tau in below {
        let inner = tau.partition();
        if inner.largest() > outer.largest() || !inner.is_contained_in(outer) {
            continue;
        }
        let components = crate::posets::SkewShape { outer: outer.clone(), inner: inner.clone() }.components();
        total += &prev[inner] * BigUint::from(components);
    }
    total
}

/// `d^{(k)}_λ` as the number of strong marked tableaux of shape `𝔠(λ)` and
/// weight `(1^n)`.
pub fn strong_dim_tableaux(b: &KBoundedPartition) -> BigUint {
    let core = bounded_to_core(b);
    tableau_level(b.k(), b.size())[core.partition()].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(parts: &[u32], k: u32) -> KBoundedPartition {
        KBoundedPartition::from_parts(parts, k).unwrap()
    }

    #[test]
    fn small_tableau_counts() {
        assert_eq!(strong_dim_tableaux(&KBoundedPartition::empty(3)), BigUint::one());
        assert_eq!(strong_dim_tableaux(&b(&[1], 3)), BigUint::one());
        assert_eq!(strong_dim_tableaux(&b(&[2, 1, 1], 3)), 6u32.into());
        assert_eq!(strong_dim_tableaux(&b(&[2, 2], 3)), 2u32.into());
        assert_eq!(strong_dim_tableaux(&b(&[2, 1], 3)), 2u32.into());
    }

    #[test]
    fn large_k_gives_standard_tableaux() {
        for p in crate::posets::enumerate_bounded(7, 7) {
            assert_eq!(strong_dim_tableaux(&p), crate::partition::hook_length_dimension(p.partition()));
        }
    }
}
