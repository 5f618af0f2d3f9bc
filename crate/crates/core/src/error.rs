use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element is a zero divisor in Q[c]/((q+1)c^q - 1)")]
    ZeroDivisor,
    #[error("series valuation error: {0}")]
    Valuation(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("partition sizes differ: |lambda| = {lambda}, |mu| = {mu}")]
    SizeMismatch { lambda: u32, mu: u32 },
    #[error("requested coefficient lies beyond the truncation: {0}")]
    CutoffExceeded(String),
    #[error("unstable (g, n) = ({g}, {n}) is not covered by this operation")]
    UnstableInput { g: u32, n: usize },
    #[error("Laurent working order {0} insufficient")]
    OrderGuard(i64),
    #[error("spectator value {0} lies on a pole")]
    SpectatorAtPole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
