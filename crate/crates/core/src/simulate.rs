//! Simulation of the infinite growth process through the finite chain.
//!
//! Rates of the infinite chain factor through rectangle removal, so a run
//! only tracks the reduced state and a ledger of removed rectangles. The full
//! core is rebuilt at checkpoints.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{format_rational, ChainAnalysis, RationalTransitionMatrix};
use crate::combinatorics::{bounded_to_core, expand, rectangle_area, reduce, CorePartition, RectangleLedger, ReducedState};
use crate::dimensions::{strong_dim, DimensionEngine};
use crate::error::{Error, Result};
use crate::posets::{enumerate_bounded, weak_covers_by_column};
use crate::report::{ClaimKind, Finding};

/// Cumulative `f64` rates per state. The last entry of each row is exactly 1.
#[derive(Clone, Debug)]
pub struct TransitionTable {
    pub k: u32,
    pub states: Vec<ReducedState>,
    rows: Vec<Vec<(f64, u32, u32)>>,
}

impl TransitionTable {
    pub fn from_matrix(m: &RationalTransitionMatrix) -> Self {
        let rows = m
            .rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::from_integer(BigInt::from(0));
                let mut out: Vec<(f64, u32, u32)> = row
                    .iter()
                    .map(|t| {
                        acc += &t.prob;
                        (acc.to_f64().expect("finite"), t.to as u32, t.rectangle.unwrap_or(0))
                    })
                    .collect();
                if let Some(last) = out.last_mut() {
                    last.0 = 1.0;
                }
                out
            })
            .collect();
        TransitionTable { k: m.k, states: m.states.clone(), rows }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// `n = |reduced| + Σ_i c_i · i(k+1-i)` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimState {
    pub reduced: ReducedState,
    pub ledger: RectangleLedger,
    pub n: u64,
}

/// One trajectory with its own generator.
pub struct Simulator<'a> {
    table: &'a TransitionTable,
    rng: ChaCha8Rng,
    index: usize,
    ledger: RectangleLedger,
    ledger_area: u64,
    sizes: Vec<u64>,
    n: u64,
}

impl<'a> Simulator<'a> {
    /// Stream `stream` of the ChaCha8 generator seeded with `seed`.
    pub fn new(table: &'a TransitionTable, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let k = table.k;
        Simulator {
            table,
            rng,
            index: 0,
            ledger: RectangleLedger::zero(k),
            ledger_area: 0,
            sizes: table.states.iter().map(ReducedState::size).collect(),
            n: 0,
        }
    }

    /// Advances one step and returns the new state index.
    pub fn step(&mut self) -> usize {
        let row = &self.table.rows[self.index];
        let u: f64 = self.rng.gen();
        let &(_, to, rect) = row.iter().find(|(c, _, _)| u < *c).unwrap_or_else(|| row.last().expect("no absorbing states"));
        if rect > 0 {
            self.ledger.record(rect);
            self.ledger_area += rectangle_area(rect, self.table.k);
        }
        self.index = to as usize;
        self.n += 1;
        assert_eq!(self.n, self.sizes[self.index] + self.ledger_area, "box conservation");
        self.index
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ledger(&self) -> &RectangleLedger {
        &self.ledger
    }

    pub fn state(&self) -> SimState {
        SimState { reduced: self.table.states[self.index].clone(), ledger: self.ledger.clone(), n: self.n }
    }
}

/// Upper bound on parts of a reconstructed partition.
pub const DEFAULT_PART_CAP: u64 = 50_000_000;

/// `𝔠(reduced ∪ ledgered rectangles)`.
pub fn reconstruct_core(s: &SimState, part_cap: u64) -> Result<CorePartition> {
    let k = s.reduced.k();
    let parts: u64 = s.reduced.parts().len() as u64
        + s.ledger.counts.iter().enumerate().map(|(i, &c)| c * (k as u64 - i as u64)).sum::<u64>();
    if parts > part_cap {
        return Err(Error::MemoryCap { cap: part_cap as usize });
    }
    Ok(bounded_to_core(&expand(&s.reduced, &s.ledger)))
}

/// Staircase boundary, coordinates divided by the scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPolyline {
    pub vertices: Vec<(f64, f64)>,
}

/// Rows stacked up the y-axis with the longest at the bottom. The path runs
/// from `(0, ℓ)` to `(λ_1, 0)` through every corner.
pub fn boundary(c: &CorePartition, n: u64) -> BoundaryPolyline {
    let scale = if n == 0 { 1.0 } else { n as f64 };
    let parts = c.parts();
    if parts.is_empty() {
        return BoundaryPolyline { vertices: vec![(0.0, 0.0)] };
    }
    let mut v = vec![(0.0, parts.len() as f64)];
    let mut x = 0u32;
    for row in (0..parts.len()).rev() {
        if parts[row] != x {
            let y = (row + 1) as f64;
            v.push((x as f64, y));
            x = parts[row];
            v.push((x as f64, y));
        }
    }
    v.push((x as f64, 0.0));
    // the loop emits a duplicate of the start when the top row is first
    v.dedup();
    BoundaryPolyline { vertices: v.into_iter().map(|(x, y)| (x / scale, y / scale)).collect() }
}

impl BoundaryPolyline {
    /// Distance from the origin to the curve along angle `theta`. The curve is
    /// monotone, so the polar angle decreases along it.
    pub fn radius(&self, theta: f64) -> f64 {
        let v = &self.vertices;
        if v.len() < 2 {
            return 0.0;
        }
        let angle = |p: (f64, f64)| p.1.atan2(p.0);
        let (mut lo, mut hi) = (0usize, v.len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if angle(v[mid]) >= theta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (a, b) = (v[lo], v[hi]);
        let (dx, dy) = (theta.cos(), theta.sin());
        let (ex, ey) = (b.0 - a.0, b.1 - a.1);
        let den = dx * ey - dy * ex;
        if den.abs() < 1e-300 {
            return (a.0 * a.0 + a.1 * a.1).sqrt();
        }
        (a.0 * ey - a.1 * ex) / den
    }

    /// Every `stride`-th vertex plus both ends, at most `max` vertices. The
    /// curve is monotone, so points move by at most one stride of steps.
    pub fn decimated(&self, max: usize) -> BoundaryPolyline {
        let v = &self.vertices;
        if v.len() <= max || max < 2 {
            return self.clone();
        }
        let stride = (v.len() - 1).div_ceil(max - 1);
        let mut out: Vec<(f64, f64)> = v.iter().step_by(stride).copied().collect();
        if out.last() != v.last() {
            out.push(*v.last().expect("non-empty"));
        }
        BoundaryPolyline { vertices: out }
    }

    pub fn swapped(&self) -> BoundaryPolyline {
        BoundaryPolyline { vertices: self.vertices.iter().rev().map(|&(x, y)| (y, x)).collect() }
    }
}

/// `D_m` with vertices `γ(C(i,2), C(m-i+1,2))`, `i = 1..=m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCurve {
    pub m: u32,
    pub gamma: f64,
    pub vertices: Vec<(f64, f64)>,
}

impl LimitCurve {
    pub fn new(m: u32, gamma: f64) -> Self {
        let c2 = |x: u32| (x as f64) * (x as f64 - 1.0) / 2.0;
        let vertices = (1..=m).map(|i| (gamma * c2(i), gamma * c2(m - i + 1))).collect();
        LimitCurve { m, gamma, vertices }
    }

    pub fn segments(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn polyline(&self) -> BoundaryPolyline {
        BoundaryPolyline { vertices: self.vertices.clone() }
    }
}

/// Number of ray angles used by the fit.
pub const FIT_ANGLES: usize = 512;

fn fit_angles() -> impl Iterator<Item = f64> {
    (0..FIT_ANGLES).map(|j| (j as f64 + 0.5) * std::f64::consts::FRAC_PI_2 / FIT_ANGLES as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitFit {
    pub gamma: f64,
    /// Largest radial gap to `D_{k+1}`.
    pub max_deviation: f64,
    pub mean_sq_deviation: f64,
}

/// Least-squares `γ` over the radii at equally spaced angles, with the
/// boundary compared to `D_{k+1}`.
pub fn compare_to_limit(b: &BoundaryPolyline, k: u32) -> Result<LimitFit> {
    if b.vertices.len() < 2 {
        return Err(Error::Precondition("cannot fit an empty boundary".into()));
    }
    let unit = LimitCurve::new(k + 1, 1.0).polyline();
    let pairs: Vec<(f64, f64)> = fit_angles().map(|t| (b.radius(t), unit.radius(t))).collect();
    let gamma = pairs.iter().map(|(rb, r1)| rb * r1).sum::<f64>() / pairs.iter().map(|(_, r1)| r1 * r1).sum::<f64>();
    let devs: Vec<f64> = pairs.iter().map(|(rb, r1)| (rb - gamma * r1).abs()).collect();
    Ok(LimitFit {
        gamma,
        max_deviation: devs.iter().copied().fold(0.0, f64::max),
        mean_sq_deviation: devs.iter().map(|d| d * d).sum::<f64>() / devs.len() as f64,
    })
}

/// Largest radial gap between two boundaries.
pub fn boundary_distance(a: &BoundaryPolyline, b: &BoundaryPolyline) -> f64 {
    fit_angles().map(|t| (a.radius(t) - b.radius(t)).abs()).fold(0.0, f64::max)
}

/// Ledger counts over `n`.
pub fn empirical_rho(table: &TransitionTable, n: u64, seed: u64) -> Vec<f64> {
    let mut sim = Simulator::new(table, seed, 0);
    for _ in 0..n {
        sim.step();
    }
    sim.ledger().counts.iter().map(|&c| c as f64 / n as f64).collect()
}

/// Finite-chain rates equal the rates computed from full dimensions for
/// every bounded partition up to size `n_max`.
pub fn verify_projection(m: &RationalTransitionMatrix, n_max: u64) -> Finding {
    let k = m.k;
    let mut checked = 0;
    let mut witness = None;
    'outer: for n in 0..=n_max {
        for b in enumerate_bounded(k, n) {
            let d_b = BigInt::from(strong_dim(&b, DimensionEngine::Tableaux));
            let from = m.index_of(&reduce(&b).0);
            for (col, big) in weak_covers_by_column(&b) {
                checked += 1;
                let direct =
                    BigRational::new(BigInt::from(strong_dim(&big, DimensionEngine::Tableaux)), &d_b * BigInt::from(n + 1));
                let t = m.by_column(from, col);
                let ok = t.is_some_and(|t| t.prob == direct && t.to == m.index_of(&reduce(&big).0));
                if !ok {
                    witness = Some(format!("{b} → {big}: direct rate {}", format_rational(&direct)));
                    break 'outer;
                }
            }
        }
    }
    Finding::from_witness(
        "infinite-chain rates project to the finite chain",
        ClaimKind::Theorem,
        Some(k),
        format!("{checked} moves with |B| ≤ {n_max}"),
        witness,
    )
}

/// Where a run writes its files. Paths are optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub occupancy_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_json: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub k: u32,
    pub n: u64,
    pub seed: u64,
    /// Steps between core reconstructions; 0 means only at the end.
    #[serde(default)]
    pub checkpoint_every: u64,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default = "one")]
    pub trajectories: u32,
    #[serde(default = "default_cap")]
    pub part_cap: u64,
}

fn one() -> u32 {
    1
}

fn default_cap() -> u64 {
    DEFAULT_PART_CAP
}

impl SimulationConfig {
    pub fn new(k: u32, n: u64, seed: u64) -> Self {
        SimulationConfig {
            k,
            n,
            seed,
            checkpoint_every: 0,
            outputs: Outputs::default(),
            trajectories: 1,
            part_cap: DEFAULT_PART_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be positive".into()));
        }
        if self.n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        if self.trajectories == 0 {
            return Err(Error::Config("trajectories must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: SimulationConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: u64,
    pub fit: LimitFit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupancyRow {
    pub index: usize,
    pub state: String,
    pub frequency: f64,
    pub standard_error: f64,
    pub pi: f64,
}

impl OccupancyRow {
    /// `|frequency - π|` in standard errors.
    pub fn z(&self) -> f64 {
        if self.standard_error == 0.0 {
            if self.frequency == self.pi {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.frequency - self.pi).abs() / self.standard_error
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub stream: u64,
    pub n: u64,
    pub final_state: SimState,
    pub rho: Vec<f64>,
    pub occupancy: Vec<OccupancyRow>,
    pub checkpoints: Vec<Checkpoint>,
    pub fit: LimitFit,
    /// Final boundary with at most `OUTPUT_VERTICES` vertices.
    pub boundary: BoundaryPolyline,
}

/// Vertex cap for written boundaries.
pub const OUTPUT_VERTICES: usize = 4096;

/// Occupancy standard errors come from this many batch means.
pub const OCCUPANCY_BATCHES: u64 = 100;

/// Runs one trajectory, tracking occupancy by batch means.
pub fn run_trajectory(table: &TransitionTable, pi: &[f64], config: &SimulationConfig, stream: u64) -> Result<Trajectory> {
    config.validate()?;
    let states = table.len();
    let batch = (config.n / OCCUPANCY_BATCHES).max(1);
    let mut counts = vec![0u64; states];
    let mut batch_counts = vec![0u64; states];
    let mut batch_freqs: Vec<Vec<f64>> = Vec::new();
    let mut checkpoints = Vec::new();
    let mut sim = Simulator::new(table, config.seed, stream);
    for step in 1..=config.n {
        let i = sim.step();
        counts[i] += 1;
        batch_counts[i] += 1;
        if step % batch == 0 && (batch_freqs.len() as u64) < OCCUPANCY_BATCHES {
            batch_freqs.push(batch_counts.iter().map(|&c| c as f64 / batch as f64).collect());
            batch_counts.iter_mut().for_each(|c| *c = 0);
        }
        if config.checkpoint_every > 0 && step % config.checkpoint_every == 0 && step < config.n {
            let core = reconstruct_core(&sim.state(), config.part_cap)?;
            checkpoints.push(Checkpoint { n: step, fit: compare_to_limit(&boundary(&core, step), table.k)? });
        }
    }
    let core = reconstruct_core(&sim.state(), config.part_cap)?;
    let b = boundary(&core, config.n);
    let fit = compare_to_limit(&b, table.k)?;
    checkpoints.push(Checkpoint { n: config.n, fit: fit.clone() });
    let nb = batch_freqs.len() as f64;
    let occupancy = (0..states)
        .map(|i| {
            let mean = batch_freqs.iter().map(|f| f[i]).sum::<f64>() / nb;
            let var = batch_freqs.iter().map(|f| (f[i] - mean).powi(2)).sum::<f64>() / (nb - 1.0).max(1.0);
            OccupancyRow {
                index: i,
                state: table.states[i].partition().key(),
                frequency: counts[i] as f64 / config.n as f64,
                standard_error: (var / nb).sqrt(),
                pi: pi[i],
            }
        })
        .collect();
    Ok(Trajectory {
        stream,
        n: config.n,
        final_state: sim.state(),
        rho: sim.ledger().counts.iter().map(|&c| c as f64 / config.n as f64).collect(),
        occupancy,
        checkpoints,
        fit,
        boundary: b.decimated(OUTPUT_VERTICES),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub config: SimulationConfig,
    pub rho_exact: Vec<String>,
    pub trajectories: Vec<Trajectory>,
}

/// Independent trajectories on streams `0..trajectories`, run in parallel.
pub fn simulate(a: &ChainAnalysis, config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    if a.k() != config.k {
        return Err(Error::Config(format!("chain is for k={}, config asks for k={}", a.k(), config.k)));
    }
    let table = TransitionTable::from_matrix(&a.matrix);
    let pi: Vec<f64> = a.pi.values.iter().map(|p| p.to_f64().expect("finite")).collect();
    let trajectories = (0..config.trajectories as u64)
        .into_par_iter()
        .map(|s| run_trajectory(&table, &pi, config, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimulationResult { config: config.clone(), rho_exact: a.rho().iter().map(format_rational).collect(), trajectories })
}

pub fn write_boundary_csv<W: Write>(b: &BoundaryPolyline, mut out: W) -> Result<()> {
    writeln!(out, "x,y")?;
    for (x, y) in &b.vertices {
        writeln!(out, "{x:.9},{y:.9}")?;
    }
    Ok(())
}

pub fn write_rho_csv<W: Write>(result: &SimulationResult, mut out: W) -> Result<()> {
    writeln!(out, "stream,i,rho_empirical,rho_exact")?;
    for t in &result.trajectories {
        for (i, r) in t.rho.iter().enumerate() {
            writeln!(out, "{},{},{r:.9},{}", t.stream, i + 1, result.rho_exact[i])?;
        }
    }
    Ok(())
}

pub fn write_occupancy_csv<W: Write>(result: &SimulationResult, mut out: W) -> Result<()> {
    writeln!(out, "stream,index,state,frequency,standard_error,pi")?;
    for t in &result.trajectories {
        for o in &t.occupancy {
            writeln!(out, "{},{},\"{}\",{:.9},{:.9},{:.9}", t.stream, o.index, o.state, o.frequency, o.standard_error, o.pi)?;
        }
    }
    Ok(())
}

/// Boundary and fitted `D_{k+1}` on one square canvas.
pub fn render_svg(b: &BoundaryPolyline, k: u32, fit: &LimitFit) -> String {
    const SIZE: f64 = 600.0;
    const PAD: f64 = 20.0;
    let curve = LimitCurve::new(k + 1, fit.gamma);
    let extent = b
        .vertices
        .iter()
        .chain(&curve.vertices)
        .flat_map(|&(x, y)| [x, y])
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let s = (SIZE - 2.0 * PAD) / extent;
    let points = |v: &[(f64, f64)]| {
        let mut out = String::new();
        for &(x, y) in v {
            let _ = write!(out, "{:.2},{:.2} ", PAD + x * s, SIZE - PAD - y * s);
        }
        out
    };
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <polyline fill=\"none\" stroke=\"#bbb\" stroke-width=\"1\" points=\"{PAD},{PAD} {PAD},{y0} {x1},{y0}\"/>\n\
         <polyline id=\"boundary\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"{}\"/>\n\
         <polyline id=\"limit\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" points=\"{}\"/>\n\
         <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"14\">k={k}  D_{m}  gamma={:.5}  sup={:.5}</text>\n\
         </svg>\n",
        points(&b.vertices),
        points(&curve.vertices),
        fit.gamma,
        fit.max_deviation,
        y0 = SIZE - PAD,
        x1 = SIZE - PAD,
        tx = PAD + 10.0,
        ty = PAD + 10.0,
        m = k + 1,
    )
}

/// Writes every requested output of the first trajectory, plus the rho and
/// occupancy tables of all of them.
pub fn write_outputs(result: &SimulationResult) -> Result<()> {
    let o = &result.config.outputs;
    let first = &result.trajectories[0];
    if let Some(p) = &o.boundary_csv {
        write_boundary_csv(&first.boundary, std::fs::File::create(p)?)?;
    }
    if let Some(p) = &o.rho_csv {
        write_rho_csv(result, std::fs::File::create(p)?)?;
    }
    if let Some(p) = &o.occupancy_csv {
        write_occupancy_csv(result, std::fs::File::create(p)?)?;
    }
    if let Some(p) = &o.svg {
        std::fs::write(p, render_svg(&first.boundary, result.config.k, &first.fit))?;
    }
    if let Some(p) = &o.report_json {
        serde_json::to_writer_pretty(std::fs::File::create(p)?, result)?;
    }
    Ok(())
}
