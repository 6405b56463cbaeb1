//! Error type shared by every module of the model.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Config document could not be parsed (malformed JSON, unknown key,
    /// wrong value type). The message names the offending key.
    #[error("config rejected: {0}")]
    Config(String),

    /// A config invariant does not hold.
    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: &'static str, detail: String },

    /// Input outside the mathematical domain of an operation.
    #[error("domain error in {context}: {detail}")]
    Domain {
        context: &'static str,
        detail: String,
    },

    /// No stable mechanical equilibrium exists at this gate voltage.
    #[error("no stable equilibrium: V_G = {gate_voltage} V is beyond pull-in")]
    PullInExceeded { gate_voltage: f64 },

    /// Root bracketing or iteration failed.
    #[error("root finding failed in {context}: {detail}")]
    RootFind {
        context: &'static str,
        detail: String,
    },

    /// Operating point too deep for the near-pull-in perturbation formulas.
    #[error("bias regime error: {0}")]
    BiasRegime(String),

    /// An exponent would overflow the double range.
    #[error("overflow in {context}: exponent magnitude {exponent:.3e} > 700")]
    Overflow {
        context: &'static str,
        exponent: f64,
    },

    /// Quadrature or other numeric evaluation failed its own cross-check.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Degenerate input range (for example N_tx_max == N_tx_min).
    #[error("degenerate range: {0}")]
    DegenerateRange(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
