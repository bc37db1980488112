//! Numerical solution of the semi-infinite chain
//! `∂_t φ_n = −b_{n+1}φ_{n+1} + b_nφ_{n−1}`, `φ_n(0) = δ_{n0}`,
//! and Krylov complexity `K^{(δ)}(t) = Σ n^δ φ_n(t)²`.
//!
//! The chain is truncated at a hard wall `n = N`. The last `guard_band` sites
//! are monitored. `N` is doubled as soon as their weight exceeds
//! `(10⁻³·abs_tol)²`, which keeps the wall far ahead of any amplitude the
//! error control can see. If the weight ever exceeds `tail_tol` the step is
//! undone and retried on the larger chain.

mod dopri;
mod pade;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::families::LanczosSequence;
use crate::{Error, Result};

use dopri::{dopri_step, DopriWork};
use pade::{pade_step, PadeWork};

/// Time stepper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Unitary (2,2) Padé with step-doubling error control; step size is
    /// not limited by the chain length.
    Pade,
    /// Explicit Dormand–Prince 5(4); step size is bounded by `~3/b_N`.
    Dopri5,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub n_initial: usize,
    pub n_max: usize,
    pub guard_band: usize,
    /// Largest allowed weight in the guard band.
    pub tail_tol: f64,
    pub integrator: Integrator,
    /// Error out at `n_max` instead of flagging the trace.
    pub fail_on_truncation: bool,
    /// Store `φ_0..φ_{k−1}` per output time; `None` stores every site.
    pub record_sites: Option<usize>,
    /// Complexity sums `Σ n^δ φ_n²` kept for `δ = 1..=max_complexity_power`.
    pub max_complexity_power: u32,
    pub h_initial: f64,
    pub h_max: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            n_initial: 256,
            n_max: 4_000_000,
            guard_band: 16,
            tail_tol: 1e-14,
            integrator: Integrator::Pade,
            fail_on_truncation: true,
            record_sites: None,
            max_complexity_power: 2,
            h_initial: 1e-3,
            h_max: 0.5,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        if !(pos(self.rel_tol) && pos(self.abs_tol) && pos(self.tail_tol) && pos(self.h_initial) && pos(self.h_max)) {
            return Err(Error::InvalidParams("tolerances and step sizes must be positive".into()));
        }
        if self.n_initial == 0 || self.n_initial > self.n_max {
            return Err(Error::InvalidParams(format!(
                "need 0 < N_initial ≤ N_max, got {} and {}",
                self.n_initial, self.n_max
            )));
        }
        if self.guard_band == 0 || self.guard_band > self.n_initial {
            return Err(Error::InvalidParams("guard band must be in 1..=N_initial".into()));
        }
        Ok(())
    }
}

/// Wave functions sampled on an output grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainTrace {
    pub label: String,
    pub times: Vec<f64>,
    /// `phi[i][n] = φ_n(times[i])` for the recorded sites.
    pub phi: Vec<Vec<f64>>,
    /// Truncation index `N` (sites `0..=N`) in use at each output time.
    pub n_trunc: Vec<usize>,
    /// `Σ_{n > N − guard} φ_n²`.
    pub tail_mass: Vec<f64>,
    /// `|Σ_{n ≤ N} φ_n² − 1|`: integrator drift.
    pub norm_drift: Vec<f64>,
    /// `Σ_{n ≤ N − guard} φ_n²`.
    pub inner_norm: Vec<f64>,
    /// `complexity[δ−1][i] = Σ n^δ φ_n(times[i])²`.
    pub complexity: Vec<Vec<f64>>,
    pub guard_band: usize,
    /// `phi` holds every site.
    pub full_record: bool,
    /// The tail exceeded `tail_tol` at `N_max` and the run continued anyway.
    pub truncation_limited: bool,
    /// The sequence is finite and the wall is physical.
    pub finite_chain: bool,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl ChainTrace {
    /// `C(t) = φ_0(t)` at each output time.
    pub fn autocorrelation(&self) -> Vec<f64> {
        self.phi.iter().map(|p| p[0]).collect()
    }

    /// `φ_n` at output index `i`, if recorded.
    pub fn phi_at(&self, i: usize, n: usize) -> Option<f64> {
        self.phi.get(i).and_then(|p| p.get(n)).copied()
    }
}

enum Work {
    Pade(PadeWork, Vec<f64>),
    Dopri(DopriWork),
}

/// One trial step; returns the scaled error.
fn trial(b: &[f64], y: &[f64], h: f64, out: &mut [f64], work: &mut Work, cfg: &SolverConfig) -> f64 {
    match work {
        Work::Pade(w, half) => {
            half.resize(y.len(), 0.0);
            pade_step(b, y, h, out, w);
            let coarse = out.to_vec();
            pade_step(b, y, 0.5 * h, half, w);
            pade_step(b, half, 0.5 * h, out, w);
            let mut err: f64 = 0.0;
            for i in 0..y.len() {
                let scale = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(out[i].abs());
                err = err.max((out[i] - coarse[i]).abs() / (15.0 * scale));
            }
            err
        }
        Work::Dopri(w) => dopri_step(b, y, h, out, w, cfg.rel_tol, cfg.abs_tol),
    }
}

fn tail(y: &[f64], guard: usize) -> f64 {
    y[y.len().saturating_sub(guard)..].iter().map(|v| v * v).sum()
}

struct Chain<'a> {
    seq: &'a LanczosSequence,
    n: usize,
    n_cap: usize,
    finite: bool,
    b: Vec<f64>,
}

impl<'a> Chain<'a> {
    fn new(seq: &'a LanczosSequence, cfg: &SolverConfig) -> Result<Self> {
        let (n_cap, finite) = match seq.max_index() {
            Some(m) if m <= cfg.n_max => (m, true),
            _ => (cfg.n_max, false),
        };
        let n = cfg.n_initial.min(n_cap);
        let b = seq.coefficients(n)?;
        Ok(Self { seq, n, n_cap, finite, b })
    }

    fn can_grow(&self) -> bool {
        self.n < self.n_cap
    }

    /// Whether the wall at `n` is a true end of the chain.
    fn at_physical_end(&self) -> bool {
        self.finite && self.n == self.n_cap
    }

    fn grow(&mut self, y: &mut Vec<f64>) -> Result<()> {
        self.n = (2 * self.n).min(self.n_cap);
        self.b = self.seq.coefficients(self.n)?;
        y.resize(self.n + 1, 0.0);
        Ok(())
    }
}

/// Integrates the chain from `t = 0` and samples at the ascending times
/// `t_grid` (all `≥ 0`).
pub fn solve_chain(seq: &LanczosSequence, t_grid: &[f64], cfg: &SolverConfig) -> Result<ChainTrace> {
    cfg.validate()?;
    if t_grid.iter().any(|t| !t.is_finite() || *t < 0.0) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("time grid must be finite, nonnegative and strictly increasing".into()));
    }
    let mut chain = Chain::new(seq, cfg)?;
    let mut y = vec![0.0; chain.n + 1];
    y[0] = 1.0;
    let mut out = vec![0.0; chain.n + 1];
    let mut work = match cfg.integrator {
        Integrator::Pade => Work::Pade(PadeWork::default(), Vec::new()),
        Integrator::Dopri5 => Work::Dopri(DopriWork::default()),
    };
    let powers = cfg.max_complexity_power as usize;
    let mut trace = ChainTrace {
        label: seq.label(),
        times: Vec::with_capacity(t_grid.len()),
        phi: Vec::with_capacity(t_grid.len()),
        n_trunc: Vec::new(),
        tail_mass: Vec::new(),
        norm_drift: Vec::new(),
        inner_norm: Vec::new(),
        complexity: vec![Vec::new(); powers],
        guard_band: cfg.guard_band,
        full_record: cfg.record_sites.is_none(),
        truncation_limited: false,
        finite_chain: chain.finite,
        steps_accepted: 0,
        steps_rejected: 0,
    };
    let mut t = 0.0;
    let mut h = cfg.h_initial;
    for &target in t_grid {
        while t < target {
            let last = target - t <= h.min(cfg.h_max);
            let h_try = if last { target - t } else { h.min(cfg.h_max) };
            out.resize(y.len(), 0.0);
            let err = trial(&chain.b, &y, h_try, &mut out, &mut work, cfg);

            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !(err <= 1.0) {
                trace.steps_rejected += 1;
                h = h_try * factor.min(0.9);
                if h < 1e-14 * (1.0 + t) {
                    return Err(Error::StepFailure { t, h });
                }
                continue;
            }
            let hot = !chain.at_physical_end() && tail(&out, cfg.guard_band) > cfg.tail_tol;
            if hot {
                if chain.can_grow() {
                    // retry from the last accepted state on a longer chain
                    chain.grow(&mut y)?;
                    continue;
                }
                if cfg.fail_on_truncation {
                    return Err(Error::TruncationLimit { n_max: chain.n, t: t + h_try, tail: tail(&out, cfg.guard_band) });
                }
                trace.truncation_limited = true;
            }
            std::mem::swap(&mut y, &mut out);
            t = if last { target } else { t + h_try };
            trace.steps_accepted += 1;
            if !last {
                h = h_try * factor;
            }
            if !chain.at_physical_end() && chain.can_grow() && tail(&y, cfg.guard_band) > (1e-3 * cfg.abs_tol).powi(2) {
                chain.grow(&mut y)?;
            }
        }
        record(&mut trace, &y, chain.n, target, cfg);
    }
    Ok(trace)
}

fn record(trace: &mut ChainTrace, y: &[f64], n: usize, t: f64, cfg: &SolverConfig) {
    let guard = cfg.guard_band.min(y.len());
    let total: f64 = y.iter().map(|v| v * v).sum();
    let inner: f64 = y[..y.len() - guard].iter().map(|v| v * v).sum();
    trace.times.push(t);
    trace.n_trunc.push(n);
    trace.tail_mass.push(total - inner);
    trace.norm_drift.push((total - 1.0).abs());
    trace.inner_norm.push(inner);
    let keep = cfg.record_sites.map_or(y.len(), |k| k.min(y.len()));
    trace.phi.push(y[..keep].to_vec());
    for (d, series) in trace.complexity.iter_mut().enumerate() {
        let delta = d as i32 + 1;
        let s: f64 = y.iter().enumerate().map(|(k, v)| (k as f64).powi(delta) * v * v).sum();
        series.push(s);
    }
}

/// Solves independent sequences in parallel on the same grid.
pub fn solve_many(seqs: &[LanczosSequence], t_grid: &[f64], cfg: &SolverConfig) -> Vec<Result<ChainTrace>> {
    seqs.par_iter().map(|s| solve_chain(s, t_grid, cfg)).collect()
}

/// `K^{(δ)}(t)` with a per-time bound `N^δ · tail_mass` on the guard-band
/// contribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexitySeries {
    pub delta: u32,
    pub values: Vec<f64>,
    pub tail_bound: Vec<f64>,
    pub truncation_limited: bool,
}

pub fn krylov_complexity(trace: &ChainTrace, delta: u32) -> Result<ComplexitySeries> {
    let values = if delta == 0 {
        trace.inner_norm.iter().zip(&trace.tail_mass).map(|(a, b)| a + b).collect::<Vec<_>>()
    } else if let Some(s) = trace.complexity.get(delta as usize - 1) {
        s.clone()
    } else if trace.full_record {
        trace
            .phi
            .iter()
            .map(|p| p.iter().enumerate().map(|(k, v)| (k as f64).powi(delta as i32) * v * v).sum())
            .collect()
    } else {
        return Err(Error::InvalidParams(format!(
            "K^({delta}) needs max_complexity_power ≥ {delta} or a full record"
        )));
    };
    let tail_bound = trace
        .tail_mass
        .iter()
        .zip(&trace.n_trunc)
        .map(|(m, n)| m * (*n as f64).powi(delta as i32))
        .collect();
    Ok(ComplexitySeries { delta, values, tail_bound, truncation_limited: trace.truncation_limited })
}

/// `|Σ_{n ≤ N−guard} φ_n² − 1|` per output time.
pub fn sum_rule_residual(trace: &ChainTrace) -> Vec<f64> {
    trace.inner_norm.iter().map(|s| (s - 1.0).abs()).collect()
}
