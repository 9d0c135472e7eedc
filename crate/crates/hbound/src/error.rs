use thiserror::Error;

/// Everything that can go wrong in the library proper.
///
/// Domain errors (bad `k`, empty intervals, singular directions) are kept
/// separate from verification failures: a failed inequality check is reported
/// through the return value of the check, never through this enum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("k must lie in [0, 1), got {0}")]
    KOutOfRange(f64),

    #[error("K must be >= 1, got {0}")]
    BigKOutOfRange(f64),

    #[error("t = {0} is outside (0, 1); the weight map is only defined there")]
    TOutOfRange(f64),

    #[error("t = {t} gives a nonpositive first weight; need 0 < t < 1 - k^2 = {hi}")]
    SplitOutOfDomain { t: f64, hi: f64 },

    #[error("eigenvalue bounds must satisfy 0 < lambda <= Lambda, got lambda = {lambda}, Lambda = {big_lambda}")]
    BadEigenvalues { lambda: f64, big_lambda: f64 },

    #[error("the interval (1-k, 1-k^2) is empty at k = {0}; nothing to optimize")]
    DegenerateInterval(f64),

    #[error("tolerance must be positive and finite, got {0}")]
    BadTol(f64),

    #[error("singular direction: |cos(varsigma) - |mu|| <= 1e-12 at |mu| = {mu_abs}, varsigma = {varsigma}")]
    SingularDirection { mu_abs: f64, varsigma: f64 },

    #[error("degenerate Hessian: a = b = 0 leaves the gradient constant")]
    DegenerateHessian,

    #[error("mode order {order} needs at least {need} angular nodes, grid has {got}; raise n_theta or lower the order")]
    Aliasing { order: usize, need: usize, got: usize },

    #[error("energy J({0}) vanishes; decay exponents are undefined")]
    DegenerateEnergy(f64),

    #[error("radius {r} is not covered by the grid (max {max})")]
    RadiusOutOfGrid { r: f64, max: f64 },

    #[error("bad grid: {0}")]
    BadGrid(String),

    #[error("field `{0}` has a complex antiholomorphic derivative; the distortion bound only applies to gradient fields")]
    NotGradient(String),

    #[error("measured distortion |mu| = {0} reaches or exceeds 1; field is not quasiregular on this grid")]
    DistortionDegenerate(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
