use thiserror::Error;

/// Error type shared by every layer of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("{name} = {value} outside domain [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Adaptive quadrature exhausted its interval budget before reaching the
    /// requested tolerance. Integrands here are smooth, so this signals a
    /// domain bug in the caller rather than a hard integral.
    #[error("quadrature stalled at error {achieved:.3e} (tolerance {tol:.3e})")]
    QuadratureNonConvergence { achieved: f64, tol: f64 },

    /// A root finder could not establish or shrink a sign-changing bracket.
    #[error("bracket failure for {what}: [{lo}, {hi}], f = [{flo:.3e}, {fhi:.3e}]")]
    BracketFailure {
        what: &'static str,
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },

    /// An iterative scheme stopped before reaching its target residual.
    #[error("{what} did not converge: residual {residual:.3e} (target {target:.3e})")]
    NonConvergence {
        what: &'static str,
        residual: f64,
        target: f64,
    },

    /// The coupling pair lies in the bad set where the variational formula
    /// for the surface free energy is not proved.
    #[error("(beta, delta) = ({beta}, {delta}) is not in the good collapsed region (delta_bar = {delta_bar})")]
    NotInGoodRegion {
        beta: f64,
        delta: f64,
        delta_bar: f64,
    },

    /// An operation was invoked in the wrong regime of the phase diagram.
    #[error("regime error: {msg}")]
    Regime { msg: String },

    /// The regime cannot be decided because the point sits on (or within
    /// tolerance of) a regime boundary; the caller must disambiguate.
    #[error("ambiguous regime: |delta - delta_0(q)| = {gap:.3e} < {band:.3e}")]
    AmbiguousRegime { gap: f64, band: f64 },

    /// A size or cap limit of an exact engine was exceeded.
    #[error("{what} = {got} exceeds cap {cap}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    /// An area constraint q N^2 was not an integer.
    #[error("area q*N^2 = {value} is not an integer (N = {n})")]
    NonIntegerArea { value: f64, n: usize },

    /// A covariance assembled from closed forms failed to be positive
    /// definite; signals a tilt-domain bug upstream.
    #[error("Hessian not positive definite: det = {det:.3e}, alpha2 = {alpha2:.3e}")]
    NotPositiveDefinite { det: f64, alpha2: f64 },

    /// A geometric-series constant diverges for these couplings.
    #[error("constant {what} is infinite for beta = {beta}, delta = {delta}")]
    InfiniteConstant {
        what: &'static str,
        beta: f64,
        delta: f64,
    },

    /// Shape classification requested exactly on the concave/convex boundary.
    #[error("degenerate shape point: delta = {delta} equals delta_check = {delta_check}")]
    DegenerateShape { delta: f64, delta_check: f64 },

    /// Structured diagnostic: a transcription assertion failed and the caller
    /// did not opt into the fallback form.
    #[error("transcription check failed for {what}: {detail}")]
    TranscriptionCheck { what: &'static str, detail: String },

    /// I/O or serialization failure in the CLI layer.
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Machine-readable kind tag, used by the CLI for structured stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::QuadratureNonConvergence { .. } => "quadrature",
            Error::BracketFailure { .. } => "bracket",
            Error::NonConvergence { .. } => "convergence",
            Error::NotInGoodRegion { .. } => "c_bad",
            Error::Regime { .. } => "regime",
            Error::AmbiguousRegime { .. } => "ambiguous_regime",
            Error::SizeLimit { .. } => "size_limit",
            Error::NonIntegerArea { .. } => "non_integer_area",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::InfiniteConstant { .. } => "infinite_constant",
            Error::DegenerateShape { .. } => "degenerate_shape",
            Error::TranscriptionCheck { .. } => "transcription",
            Error::Io(_) => "io",
        }
    }
}
