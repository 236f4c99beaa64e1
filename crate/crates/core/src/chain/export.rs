//! `chain.json` and the π CSV.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::verify::{a_table, m_k};
use super::{format_rational, ChainAnalysis};
use crate::error::Result;
use crate::partition::Partition;
use crate::report::Finding;
use crate::tasep::alpha_inv;

pub const CHAIN_FORMAT: &str = "kcore.chain/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRow {
    pub index: usize,
    pub parts: Partition,
    pub l: Vec<u32>,
    pub word: String,
    pub dimension: String,
    pub pi: String,
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionRow {
    pub from: usize,
    pub to: usize,
    pub column: u32,
    pub rectangle: Option<u32>,
    pub prob: String,
}

/// Rationals are `num/den` strings; states are keyed by factorial index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainExport {
    pub format: String,
    pub k: u32,
    pub states: Vec<StateRow>,
    pub transitions: Vec<TransitionRow>,
    pub lcd: String,
    pub m_k: String,
    pub rho: Vec<String>,
    pub findings: Vec<Finding>,
}

impl ChainExport {
    pub fn new(a: &ChainAnalysis, findings: Vec<Finding>) -> Self {
        let m = &a.matrix;
        let states = a_table(a)
            .into_iter()
            .enumerate()
            .map(|(index, (s, av))| StateRow {
                index,
                parts: s.partition().clone(),
                l: s.multiplicities().to_vec(),
                word: alpha_inv(&s).to_string(),
                dimension: m.dims[index].to_string(),
                pi: format_rational(&a.pi.values[index]),
                a: format_rational(&av),
            })
            .collect();
        let transitions = m
            .rows
            .iter()
            .enumerate()
            .flat_map(|(from, row)| {
                row.iter().map(move |t| TransitionRow {
                    from,
                    to: t.to,
                    column: t.column,
                    rectangle: t.rectangle,
                    prob: format_rational(&t.prob),
                })
            })
            .collect();
        ChainExport {
            format: CHAIN_FORMAT.into(),
            k: a.k(),
            states,
            transitions,
            lcd: a.pi.lcd().to_string(),
            m_k: m_k(a.k()).to_string(),
            rho: a.rho().iter().map(format_rational).collect(),
            findings,
        }
    }
}

/// `index,state,word,pi,pi_float`.
pub fn write_pi_csv<W: Write>(a: &ChainAnalysis, mut out: W) -> Result<()> {
    use num_traits::ToPrimitive;
    writeln!(out, "index,state,word,pi,pi_float")?;
    for (i, (s, p)) in a.matrix.states.iter().zip(&a.pi.values).enumerate() {
        let f = p.to_f64().unwrap_or(f64::NAN);
        writeln!(out, "{i},\"{}\",{},{},{f:.12}", s.partition().key(), alpha_inv(s), format_rational(p))?;
    }
    Ok(())
}
