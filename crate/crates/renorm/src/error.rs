//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WickError {
    #[error("missing joint moment for sub-multiset {0}")]
    MissingMoment(String),
    #[error("need moments up to order {needed}, have {have}")]
    InsufficientMoments { needed: usize, have: usize },
    #[error("invalid moment sequence: {0}")]
    BadMomentSequence(String),
    #[error("potential is not symmetric in x")]
    AsymmetricPotential,
    #[error("law is not symmetric")]
    AsymmetricLaw,
    #[error("missing renormalisation constant C_{{{0},{1}}}")]
    MissingConstant(u32, u32),
    #[error("pitchfork derivative a_hat_0' is zero")]
    ZeroPitchforkDerivative,
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("nonlinearity index m must be at least 1")]
    BadNonlinearityIndex,
    #[error("symbol parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator index ({0},{1}): need both even or both odd with l >= 3")]
    BadGeneratorIndex(u32, u32),
    #[error(transparent)]
    Wick(#[from] WickError),
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, above the subset-enumeration limit {1}")]
    VertexLimit(usize, usize),
    #[error("invalid parity: k odd with l even is excluded")]
    BadParity,
    #[error("invalid chaos indices: {0}")]
    BadIndices(String),
    #[error("negative epsilon piece count ({0}); input outside the recognized families")]
    NegativePieces(i64),
    #[error("graph is outside the shapes the reduced checker recognizes")]
    UnrecognizedShape,
    #[error("edge is not smoothed at scale epsilon; nothing to absorb into")]
    NotSmoothed,
    #[error("absorption amount exceeds the available epsilon prefactor")]
    OverAbsorb,
    #[error("vertex has valence {0}, expected exactly 2 kernel edges")]
    BadValence(usize),
    #[error("no hyper-edge with index {0}")]
    NoSuchHyperEdge(usize),
    #[error("no edge with index {0}")]
    NoSuchEdge(usize),
    #[error("unrecognized divergence configuration: {0}")]
    UnrecognizedConfiguration(String),
}

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("epsilon {eps} is below the lattice resolution (h = {h})")]
    EpsBelowResolution { eps: f64, h: f64 },
    #[error("grid of {cells} cells exceeds the limit of {limit}")]
    GridLimit { cells: usize, limit: usize },
    #[error("need at least {0} samples")]
    TooFewSamples(usize),
    #[error("cumulant order {0} unsupported (2..=6)")]
    BadOrder(usize),
    #[error("stationary moments need d = 3, got d = {0}")]
    DimensionUnsupported(usize),
    #[error("need at least {0} data points")]
    TooFewPoints(usize),
    #[error("data points must have distinct epsilon values")]
    DegenerateFit,
    #[error("config parse error: {0}")]
    Config(String),
    #[error(transparent)]
    Wick(#[from] WickError),
}
