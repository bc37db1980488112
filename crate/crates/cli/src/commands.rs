use clap::{Args, ValueEnum};
use krylov_core::chain::{krylov_complexity, solve_chain, sum_rule_residual, ChainTrace, Integrator, SolverConfig};
use krylov_core::deform::{deform_b2_table, delta_sequence, telescoped_sum, DeformationParams};
use krylov_core::families::{complexity_prefactor, hahn_asymptote, hahn_measure, LanczosSequence};
use krylov_core::moments::{b_from_moments, hankel_ledger, moments_from_series, SeriesProvider};
use krylov_core::verify::run_checks;
use krylov_core::{BigRational, Error};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::args::{check_kappa, FamilyArgs, Resolved, TimeGrid, Value};
use crate::output::{float, rational, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Contract { invariant: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract { .. } => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Contract { invariant, detail } => write!(f, "numerical contract violated [{invariant}]: {detail}"),
        }
    }
}

impl From<String> for CliError {
    fn from(m: String) -> Self {
        CliError::Usage(m)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let invariant = match &e {
            Error::InvalidParams(_) | Error::Domain(_) => return CliError::Usage(e.to_string()),
            Error::NonFinite(_) => "finite values",
            Error::Pole { .. } => "pole-free evaluation",
            Error::NonConvergence(_) => "series convergence",
            Error::TruncationLimit { .. } => "truncation tail below tail_tol",
            Error::StepFailure { .. } => "step-size control",
            Error::SingularMinor(_) => "nonzero Hankel minors",
            Error::RouteDisagreement(_) => "Hankel and Chebyshev routes agree",
            Error::ZeroCoefficient(_) => "positive Lanczos coefficients",
            Error::TooFewMoments { .. } => "moment table length",
            Error::NotSymmetric => "symmetric measure",
            Error::Quadrature(_) => "quadrature convergence",
            Error::CaseMismatch { .. } => "vanishing diagonal coefficient",
        };
        CliError::Contract { invariant: invariant.into(), detail: e.to_string() }
    }
}

type Out = Result<Table, CliError>;

fn contract(invariant: &str, detail: String) -> CliError {
    CliError::Contract { invariant: invariant.into(), detail }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyEmit {
    /// `n, b_n` for `n = 1..=n-max`.
    Bn,
    /// `n, b_n²`; exact with `--exact`.
    B2,
    /// `t, φ_0 … φ_{n-max}` from the closed form.
    Phi,
    /// `t, C(t)` from the closed form.
    #[value(name = "C")]
    #[serde(rename = "C")]
    C,
    /// `x, ρ(x)` of the Hahn measure.
    Measure,
    /// `t, C(t), asymptote` for Hahn parameters.
    Asymptote,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct FamilyCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum)]
    pub emit: FamilyEmit,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TimeGrid,
    #[arg(long, default_value = "20")]
    pub x_max: f64,
    #[arg(long, default_value = "0.5")]
    pub x_step: f64,
    /// Rational output for `--emit b2`.
    #[arg(long)]
    pub exact: bool,
}

pub fn family(cmd: &FamilyCmd) -> Out {
    let fam = cmd.family.resolve()?;
    let seq = fam.sequence()?;
    if cmd.exact && cmd.emit != FamilyEmit::B2 {
        return Err(CliError::Usage("--exact applies to --emit b2 only".into()));
    }
    match cmd.emit {
        FamilyEmit::Bn | FamilyEmit::B2 => {
            let mut t = Table::new(["n", if cmd.emit == FamilyEmit::Bn { "b" } else { "b2" }]);
            if cmd.exact {
                for (n, q) in fam.b2_exact(cmd.n_max).iter().enumerate().skip(1) {
                    t.push(vec![n.to_string(), rational(q)]);
                }
            } else {
                let b2 = seq.b_squared(cmd.n_max)?;
                for (n, v) in b2.iter().enumerate().skip(1) {
                    t.push(vec![n.to_string(), float(if cmd.emit == FamilyEmit::Bn { v.sqrt() } else { *v })]);
                }
            }
            Ok(t)
        }
        FamilyEmit::Phi => {
            let mut t = Table::new(std::iter::once("t".to_string()).chain((0..=cmd.n_max).map(|n| format!("phi_{n}"))));
            for s in cmd.grid.points()? {
                let phi = seq
                    .phi_closed_range(cmd.n_max, s)
                    .ok_or_else(|| CliError::Usage(format!("{} has no closed-form φ_n; use `solve`", seq.label())))??;
                t.push(std::iter::once(float(s)).chain(phi.into_iter().map(float)).collect());
            }
            Ok(t)
        }
        FamilyEmit::C => {
            let mut t = Table::new(["t", "C"]);
            for s in cmd.grid.points()? {
                let c = seq
                    .autocorrelation_closed(s)
                    .ok_or_else(|| CliError::Usage(format!("{} has no closed-form C(t); use `solve`", seq.label())))??;
                t.push(vec![float(s), float(c)]);
            }
            Ok(t)
        }
        FamilyEmit::Measure => {
            let p = fam.hahn().ok_or_else(|| CliError::Usage("measure is available for Hahn slices (hahn, mp, linear)".into()))?;
            if !(cmd.x_max.is_finite() && cmd.x_step > 0.0 && cmd.x_max >= 0.0) {
                return Err(CliError::Usage("need x-max ≥ 0 and x-step > 0".into()));
            }
            let n = (cmd.x_max / cmd.x_step * (1.0 + 1e-12)).floor() as i64;
            let mut t = Table::new(["x", "rho"]);
            for k in -n..=n {
                let x = k as f64 * cmd.x_step;
                t.push(vec![float(x), float(hahn_measure(x, &p)?)]);
            }
            Ok(t)
        }
        FamilyEmit::Asymptote => {
            let p = fam.hahn().ok_or_else(|| CliError::Usage("asymptotes are available for Hahn slices".into()))?;
            let mut t = Table::new(["t", "C", "asymptote"]);
            for s in cmd.grid.points()?.into_iter().filter(|&s| s > 0.0) {
                let c = seq.autocorrelation_closed(s).expect("Hahn slices have closed forms")?;
                t.push(vec![float(s), float(c), float(hahn_asymptote(s, &p)?)]);
            }
            Ok(t)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegratorArg {
    Pade,
    Dopri5,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SolverArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// Deform the sequence to stationary value κ.
    #[arg(long)]
    pub kappa: Option<Value>,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TimeGrid,
    #[arg(long, value_enum, default_value = "pade")]
    pub integrator: IntegratorArg,
    #[arg(long, default_value = "1e-10")]
    pub rel_tol: f64,
    #[arg(long, default_value = "1e-12")]
    pub abs_tol: f64,
    /// Largest truncation index before the run is declared truncation-limited.
    #[arg(long, default_value_t = 4_000_000)]
    pub sites_max: usize,
}

impl SolverArgs {
    fn sequence(&self) -> Result<(Resolved, LanczosSequence), CliError> {
        let fam = self.family.resolve()?;
        let mut seq = fam.sequence()?;
        if let Some(k) = &self.kappa {
            check_kappa(k)?;
            seq = seq.deformed(k.float)?;
        }
        Ok((fam, seq))
    }

    fn solve(&self, seq: &LanczosSequence, record: usize, powers: u32) -> Result<ChainTrace, CliError> {
        let cfg = SolverConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            n_max: self.sites_max,
            integrator: match self.integrator {
                IntegratorArg::Pade => Integrator::Pade,
                IntegratorArg::Dopri5 => Integrator::Dopri5,
            },
            record_sites: Some(record),
            max_complexity_power: powers.max(1),
            ..Default::default()
        };
        let tr = solve_chain(seq, &self.grid.points()?, &cfg)?;
        let worst = sum_rule_residual(&tr).into_iter().fold(0.0, f64::max);
        if worst > 1e-8 {
            return Err(contract("unitarity Σφ_n² = 1", format!("max |Σφ_n² − 1| = {worst:e}")));
        }
        Ok(tr)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveEmit {
    #[value(name = "C")]
    #[serde(rename = "C")]
    C,
    Phi,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SolveCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "C")]
    pub emit: SolveEmit,
    /// Highest site written with `--emit phi`.
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
}

pub fn solve(cmd: &SolveCmd) -> Out {
    let (_, seq) = cmd.solver.sequence()?;
    let record = if cmd.emit == SolveEmit::C { 1 } else { cmd.n_max + 1 };
    let tr = cmd.solver.solve(&seq, record, 1)?;
    let mut t = match cmd.emit {
        SolveEmit::C => Table::new(["t".to_string(), "C".to_string()]),
        SolveEmit::Phi => Table::new(std::iter::once("t".to_string()).chain((0..=cmd.n_max).map(|n| format!("phi_{n}")))),
    };
    for (s, phi) in tr.times.iter().zip(&tr.phi) {
        let mut row = vec![float(*s)];
        row.extend((0..record).map(|n| float(phi.get(n).copied().unwrap_or(0.0))));
        t.push(row);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexityEmit {
    /// `t, K^(δ)(t)` from a chain solve.
    Series,
    /// `k_inf` in `K ≃ k∞ e^{2t}` for Hahn slices.
    KInf,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct ComplexityCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "series")]
    pub emit: ComplexityEmit,
    /// Power δ in `K^(δ) = Σ n^δ φ_n²`.
    #[arg(long, default_value_t = 1)]
    pub delta: u32,
}

pub fn complexity(cmd: &ComplexityCmd) -> Out {
    let (fam, seq) = cmd.solver.sequence()?;
    match cmd.emit {
        ComplexityEmit::KInf => {
            if cmd.solver.kappa.is_some() {
                return Err(CliError::Usage("k_inf is defined for undeformed Hahn slices".into()));
            }
            let p = fam.hahn().ok_or_else(|| CliError::Usage("k_inf is available for Hahn slices".into()))?;
            let mut t = Table::new(["k_inf"]);
            t.push(vec![float(complexity_prefactor(&p)?)]);
            Ok(t)
        }
        ComplexityEmit::Series => {
            if !(1..=8).contains(&cmd.delta) {
                return Err(CliError::Usage(format!("--delta must be in 1..=8, got {}", cmd.delta)));
            }
            let tr = cmd.solver.solve(&seq, 1, cmd.delta)?;
            let k = krylov_complexity(&tr, cmd.delta)?;
            let mut t = Table::new(["t".to_string(), format!("K{}", cmd.delta)]);
            for (s, v) in tr.times.iter().zip(&k.values) {
                t.push(vec![float(*s), float(*v)]);
            }
            Ok(t)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SeriesArg {
    /// `sech^η t`.
    SechPower,
    /// `cos(ωt) sech t`.
    CosSech,
    /// `2t / sinh 2t`.
    TwoTOverSinh,
    /// `sin(2ωt) / (ω sinh 2t)`.
    SinOverSinh,
    /// `e^{−t²/2}`.
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvertEmit {
    /// `n, b_n²`.
    B2,
    /// `n, Z_n, A_n, B_n, C_n`.
    Hankel,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct InvertCmd {
    #[arg(long, value_enum)]
    pub series: SeriesArg,
    #[arg(long)]
    pub eta: Option<u32>,
    #[arg(long)]
    pub omega: Option<Value>,
    /// Invert `κ + (1−κ)C(t)` instead.
    #[arg(long)]
    pub kappa: Option<Value>,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "b2")]
    pub emit: InvertEmit,
    /// Rational output.
    #[arg(long)]
    pub exact: bool,
}

impl InvertCmd {
    fn provider(&self) -> Result<SeriesProvider, CliError> {
        let omega = || {
            self.omega.as_ref().map(|w| w.exact.clone()).ok_or_else(|| CliError::Usage("this series needs --omega".into()))
        };
        let base = match self.series {
            SeriesArg::SechPower => match self.eta {
                Some(eta) if eta >= 1 => SeriesProvider::SechPower { eta },
                _ => return Err(CliError::Usage("sech_power needs --eta ≥ 1".into())),
            },
            SeriesArg::CosSech => SeriesProvider::CosSech { omega: omega()? },
            SeriesArg::SinOverSinh => SeriesProvider::SinOverSinh { omega: omega()? },
            SeriesArg::TwoTOverSinh => SeriesProvider::TwoTOverSinh,
            SeriesArg::Gaussian => SeriesProvider::Gaussian,
        };
        match &self.kappa {
            Some(k) => {
                check_kappa(k)?;
                Ok(SeriesProvider::Mixture { kappa: k.exact.clone(), inner: Box::new(base) })
            }
            None => Ok(base),
        }
    }
}

pub fn invert(cmd: &InvertCmd) -> Out {
    if cmd.n_max == 0 || cmd.n_max > 200 {
        return Err(CliError::Usage(format!("--n-max must be in 1..=200, got {}", cmd.n_max)));
    }
    let m = moments_from_series(&cmd.provider()?, cmd.n_max)?;
    let show = |q: &BigRational| if cmd.exact { rational(q) } else { float(q.to_f64().unwrap_or(f64::NAN)) };
    match cmd.emit {
        InvertEmit::B2 => {
            let b2 = b_from_moments(&m, cmd.n_max)?;
            let mut t = Table::new(["n", "b2"]);
            for (n, q) in b2.iter().enumerate().skip(1) {
                t.push(vec![n.to_string(), show(q)]);
            }
            Ok(t)
        }
        InvertEmit::Hankel => {
            if !cmd.exact {
                return Err(CliError::Usage("--emit hankel is exact only; add --exact".into()));
            }
            let ledger = hankel_ledger(&m, cmd.n_max + 1)?;
            let mut t = Table::new(["n", "Z", "A", "B", "C"]);
            for r in ledger.rows() {
                t.push(r.to_vec());
            }
            Ok(t)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformEmit {
    /// `n, b2, b2_deformed`.
    B2,
    /// `K, estimate, telescoped`: κ recovered from the first `2K` deformed
    /// coefficients, and the same from the telescoped closed form.
    Kappa,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct DeformCmd {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub kappa: Value,
    #[arg(long, value_enum, default_value = "b2")]
    pub emit: DeformEmit,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Write every `stride`-th `K` with `--emit kappa`.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// Exact rational arithmetic and output.
    #[arg(long)]
    pub exact: bool,
}

fn deform_rows<T>(b2: &[T], params: &DeformationParams<T>, cmd: &DeformCmd, show: &dyn Fn(&T) -> String) -> Out
where
    T: num_traits::Num + Clone + PartialOrd,
{
    let mut t;
    match cmd.emit {
        DeformEmit::B2 => {
            let d = deform_b2_table(b2, params, cmd.n_max)?;
            t = Table::new(["n", "b2", "b2_deformed"]);
            for n in 1..=cmd.n_max {
                t.push(vec![n.to_string(), show(&b2[n]), show(&d[n])]);
            }
        }
        DeformEmit::Kappa => {
            let d = deform_b2_table(b2, params, 2 * cmd.n_max)?;
            let (def, base) = (delta_sequence(&d, cmd.n_max)?, delta_sequence(b2, cmd.n_max)?);
            t = Table::new(["K", "estimate", "telescoped"]);
            for k in (1..=cmd.n_max).filter(|k| k % cmd.stride == 0 || *k == cmd.n_max) {
                let est = T::one() / def.delta[k + 1].clone();
                let tel = T::one() / (T::one() + telescoped_sum(params, &base.delta[k + 1]));
                t.push(vec![k.to_string(), show(&est), show(&tel)]);
            }
        }
    }
    Ok(t)
}

pub fn deform(cmd: &DeformCmd) -> Out {
    check_kappa(&cmd.kappa)?;
    if cmd.stride == 0 || cmd.n_max == 0 {
        return Err(CliError::Usage("--n-max and --stride must be positive".into()));
    }
    let fam = cmd.family.resolve()?;
    let len = if cmd.emit == DeformEmit::Kappa { 2 * cmd.n_max + 1 } else { cmd.n_max + 1 };
    if cmd.exact {
        let b2 = fam.b2_exact(len);
        deform_rows(&b2, &DeformationParams::new(cmd.kappa.exact.clone())?, cmd, &rational)
    } else {
        let b2 = fam.sequence()?.b_squared(len)?;
        deform_rows(&b2, &DeformationParams::new(cmd.kappa.float)?, cmd, &|x: &f64| float(*x))
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct VerifyCmd {
    /// Run only checks whose module or name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
}

pub fn verify(cmd: &VerifyCmd) -> Out {
    let outcomes = run_checks(cmd.filter.as_deref());
    if outcomes.is_empty() {
        return Err(CliError::Usage(format!("no check matches {:?}", cmd.filter.as_deref().unwrap_or(""))));
    }
    let mut t = Table::new(["module", "name", "passed", "detail"]);
    for o in &outcomes {
        t.push(vec![o.module.clone(), o.name.clone(), o.passed.to_string(), o.detail.clone()]);
    }
    Ok(t)
}

/// Names of failed checks in a `verify` table.
pub fn failed_checks(t: &Table) -> Vec<String> {
    t.rows.iter().filter(|r| r[2] == "false").map(|r| format!("{}::{}", r[0], r[1])).collect()
}
