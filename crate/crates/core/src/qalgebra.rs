//! q-integers and the deformation law.
//!
//! `[x]_q` is always evaluated as the palindromic sum
//! `q^{x-1} + q^{x-3} + ... + q^{-x+1}`, which is exact at `q = 1` and needs
//! no limit handling there.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The deformation parameter `q`, restricted to `(0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Deformation(f64);

impl Deformation {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 {
            Ok(Self(q))
        } else {
            Err(Error::InvalidDeformation(q))
        }
    }

    /// The undeformed point, `q = 1`.
    pub const CLASSICAL: Deformation = Deformation(1.0);

    /// The hydrogen limit `q = 9/5`, where `alpha` vanishes.
    pub const HYDROGENIC: Deformation = Deformation(1.8);

    #[inline]
    pub fn q(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for Deformation {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

/// `[x]_q` by the finite sum form. `[0]_q = 0`.
pub fn q_integer(x: u32, d: Deformation) -> f64 {
    let q = d.q();
    let x = x as i32;
    (0..x).map(|k| q.powi(x - 1 - 2 * k)).sum()
}

/// The linear law `alpha(q) = 3 - 5q/3`.
///
/// Written as `(9 - 5q) / 3` so that `q = 1.8` gives exactly zero and
/// `q = 1` gives the correctly rounded `4/3`.
pub fn alpha(d: Deformation) -> f64 {
    (9.0 - 5.0 * d.q()) / 3.0
}

/// Casimir eigenvalue of `so(3)_q`: `[l]_q [l+1]_q`. Equals `l(l+1)` at `q = 1`.
pub fn casimir_factor(l: u32, d: Deformation) -> f64 {
    q_integer(l, d) * q_integer(l + 1, d)
}
