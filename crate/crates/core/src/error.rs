use thiserror::Error;

use crate::spectrum::Orbital;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("deformation parameter q must be positive and finite, got {0}")]
    InvalidDeformation(f64),

    #[error("invalid quantum numbers n={n}, l={l}: need n >= 1 and 0 <= l <= n-1")]
    InvalidOrbital { n: u32, l: u32 },

    #[error("cannot parse orbital label {0:?}")]
    InvalidLabel(String),

    #[error("moment of inertia must be positive and finite, got {0}")]
    InvalidInertia(f64),

    #[error("ground energy must be negative and finite, got {0}")]
    InvalidGroundEnergy(f64),

    #[error("degenerate spectral denominator: h_q + 1 = {0} <= 0")]
    DegenerateDenominator(f64),

    #[error("orbital bounds out of range: n_max={n_max} (1..=12), l_max={l_max} (0..=5)")]
    InvalidBounds { n_max: u32, l_max: u32 },

    #[error("unknown reference series {0:?} (expected madelung, ion or hydrogenic)")]
    UnknownSeries(String),

    #[error("sequence does not contain reference orbital {0}")]
    MissingOrbital(Orbital),

    #[error("invalid bracket [{lo}, {hi}]: need 0 < q_lo < q_hi")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("non-finite key difference at q={0}")]
    NonFinite(f64),

    #[error("invalid scan range [{lo}, {hi}] with step {step}: need 0 < q_lo < q_hi <= 2 and 0 < step <= 0.05")]
    InvalidScan { lo: f64, hi: f64, step: f64 },

    #[error("electron count {electrons} exceeds atomic number {z}")]
    InvalidElectronCount { z: u32, electrons: u32 },

    #[error("atomic number must be at least 1")]
    InvalidAtomicNumber,

    #[error("cannot place {requested} electrons: orbital universe holds only {capacity}")]
    CapacityExhausted { requested: u32, capacity: u32 },

    #[error("invalid configuration {text:?}: {reason}")]
    InvalidConfiguration { text: String, reason: String },

    #[error("unknown noble-gas core [{0}]")]
    UnknownCore(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("line {line}: {symbol} (z={z}) configuration holds {found} electrons")]
    ElectronMismatch {
        line: u64,
        z: u32,
        symbol: String,
        found: u32,
    },

    #[error("no reference records supplied")]
    EmptyRecords,
}

pub type Result<T> = std::result::Result<T, Error>;
