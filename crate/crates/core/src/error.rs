use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("pole of {func} at {arg}")]
    Pole { func: &'static str, arg: String },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("truncation limit N_max = {n_max} reached at t = {t} with tail mass {tail:e}")]
    TruncationLimit { n_max: usize, t: f64, tail: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },

    #[error("singular Hankel minor: Z_{0} = 0")]
    SingularMinor(usize),

    #[error("inversion routes disagree at n = {0}")]
    RouteDisagreement(usize),

    #[error("zero Lanczos coefficient b_{0}")]
    ZeroCoefficient(usize),

    #[error("moment table too short: need {need} entries, have {have}")]
    TooFewMoments { need: usize, have: usize },

    #[error("deformation requires a symmetric measure")]
    NotSymmetric,

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("continuous Hahn parameters are not in an a~_n = 0 case (n = {n}, |a~_n| = {residual:e})")]
    CaseMismatch { n: usize, residual: f64 },
}
