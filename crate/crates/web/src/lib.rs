//! Browser bindings. Each export returns a JSON string; the page in `www/`
//! draws from it.

use kcore::chain::{format_rational, ChainAnalysis};
use kcore::simulate::{boundary, compare_to_limit, reconstruct_core, LimitCurve, Simulator, TransitionTable};
use kcore::tasep::{alpha, alpha_inv, jumps, CyclicState};
use kcore::{KBoundedPartition, Partition, ReducedState};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Chains above this size take too long for a page.
pub const MAX_K: u32 = 5;
/// Steps per simulation request.
pub const MAX_STEPS: u64 = 2_000_000;
/// Vertices sent back per boundary.
const DRAWN_VERTICES: usize = 2000;

fn check_k(k: u32) -> Result<(), String> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(format!("k must be between 1 and {MAX_K}"))
    }
}

/// States, words, exact π and ρ of the finite chain.
pub fn chain_summary_json(k: u32) -> Result<String, String> {
    check_k(k)?;
    let a = ChainAnalysis::shared(k).map_err(|e| e.to_string())?;
    let states: Vec<Value> = a
        .matrix
        .states
        .iter()
        .zip(&a.pi.values)
        .map(|(s, p)| {
            json!({
                "state": s.to_string(),
                "word": alpha_inv(s).to_string(),
                "pi": format_rational(p),
                "pi_float": p.to_f64(),
            })
        })
        .collect();
    let rho: Vec<String> = a.rho().iter().map(format_rational).collect();
    Ok(json!({ "k": k, "lcd": a.pi.lcd().to_string(), "rho": rho, "states": states }).to_string())
}

/// Runs `n` steps and returns the scaled boundary with the fitted limit curve.
pub fn simulate_json(k: u32, n: u64, seed: u64) -> Result<String, String> {
    check_k(k)?;
    if n == 0 || n > MAX_STEPS {
        return Err(format!("n must be between 1 and {MAX_STEPS}"));
    }
    let a = ChainAnalysis::shared(k).map_err(|e| e.to_string())?;
    let table = TransitionTable::from_matrix(&a.matrix);
    let mut sim = Simulator::new(&table, seed, 0);
    for _ in 0..n {
        sim.step();
    }
    let state = sim.state();
    let core = reconstruct_core(&state, u64::MAX).map_err(|e| e.to_string())?;
    let b = boundary(&core, n);
    let fit = compare_to_limit(&b, k).map_err(|e| e.to_string())?;
    let rho: Vec<f64> = state.ledger.counts.iter().map(|&c| c as f64 / n as f64).collect();
    Ok(json!({
        "k": k,
        "n": n,
        "seed": seed,
        "boundary": b.decimated(DRAWN_VERTICES).vertices,
        "limit": LimitCurve::new(k + 1, fit.gamma).vertices,
        "gamma": fit.gamma,
        "max_deviation": fit.max_deviation,
        "mean_sq_deviation": fit.mean_sq_deviation,
        "rho": rho,
        "reduced": state.reduced.to_string(),
    })
    .to_string())
}

/// Word and jump set for a word like `1-4-2-3-5` or a partition like `3,1`.
pub fn tasep_json(k: u32, input: &str) -> Result<String, String> {
    let word: CyclicState = if input.contains('-') {
        input.parse().map_err(|e: kcore::Error| e.to_string())?
    } else {
        check_k(k)?;
        let p: Partition = input.parse().map_err(|e: kcore::Error| e.to_string())?;
        let b = KBoundedPartition::new(p, k).map_err(|e| e.to_string())?;
        alpha_inv(&ReducedState::new(b).map_err(|e| e.to_string())?)
    };
    let moves: Vec<Value> = jumps(&word)
        .into_iter()
        .map(|j| json!({ "value": j.value, "passed": j.passed, "word": j.to.to_string(), "state": alpha(&j.to).to_string() }))
        .collect();
    Ok(json!({ "word": word.to_string(), "state": alpha(&word).to_string(), "jumps": moves }).to_string())
}

#[wasm_bindgen]
pub fn chain_summary(k: u32) -> Result<String, JsValue> {
    chain_summary_json(k).map_err(|e| JsValue::from_str(&e))
}

/// `seed` is a JS number; it is truncated to an integer.
#[wasm_bindgen]
pub fn simulate(k: u32, n: f64, seed: f64) -> Result<String, JsValue> {
    simulate_json(k, n as u64, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tasep(k: u32, input: &str) -> Result<String, JsValue> {
    tasep_json(k, input).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn chain_summary_for_three() {
        let v = parse(&chain_summary_json(3).unwrap());
        assert_eq!(v["lcd"], "20");
        assert_eq!(v["states"].as_array().unwrap().len(), 6);
        assert_eq!(v["states"][0]["pi"], "3/20");
        assert!(chain_summary_json(9).is_err());
    }

    #[test]
    fn simulation_fits_the_curve() {
        let v = parse(&simulate_json(3, 200_000, 4).unwrap());
        assert!((v["gamma"].as_f64().unwrap() - 0.1).abs() < 2e-3);
        assert_eq!(v["limit"].as_array().unwrap().len(), 4);
        assert!(v["boundary"].as_array().unwrap().len() <= DRAWN_VERTICES + 1);
        assert_eq!(simulate_json(3, 1000, 4).unwrap(), simulate_json(3, 1000, 4).unwrap());
        assert!(simulate_json(3, 0, 4).is_err());
    }

    #[test]
    fn tasep_inputs() {
        let v = parse(&tasep_json(0, "1-4-2-3-5").unwrap());
        assert_eq!(v["state"], "(3,1)");
        let v = parse(&tasep_json(5, "3,3,1,1").unwrap());
        assert_eq!(v["word"], "4-2-3-5-1-6");
        assert!(tasep_json(3, "1-1-2-3").is_err());
    }
}
