//! Orbitals and the rotor energy functionals.
//!
//! The ordering key used everywhere is `n^2 + alpha(q) [l]_q [l+1]_q`
//! (that is, `eps + 1`); the square root is dropped since it is monotone.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qalgebra::{alpha, casimir_factor, Deformation};

/// Spectroscopic letters for l = 0, 1, 2, ...
pub const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

/// A subshell `(n, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbital {
    n: u32,
    l: u32,
}

impl Orbital {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n >= 1 && l < n && (l as usize) < ORBITAL_LETTERS.len() {
            Ok(Self { n, l })
        } else {
            Err(Error::InvalidOrbital { n, l })
        }
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    #[inline]
    pub fn l(self) -> u32 {
        self.l
    }

    /// Number of electrons the subshell holds, `2(2l+1)`.
    #[inline]
    pub fn capacity(self) -> u32 {
        2 * (2 * self.l + 1)
    }

    pub fn letter(self) -> char {
        ORBITAL_LETTERS[self.l as usize] as char
    }

    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.n, self.letter())
    }
}

impl FromStr for Orbital {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel(s.to_string());
        let split = s.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let (digits, rest) = s.split_at(split);
        if digits.is_empty() || digits.starts_with('0') || rest.len() != 1 {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        let l = ORBITAL_LETTERS
            .iter()
            .position(|&c| c == rest.as_bytes()[0])
            .ok_or_else(bad)? as u32;
        Orbital::new(n, l).map_err(|_| bad())
    }
}

impl Serialize for Orbital {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Rotor constants: the moment of inertia `I` and the energy scale `E0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotorParameters {
    inertia: f64,
    ground_energy: f64,
}

impl RotorParameters {
    pub fn new(inertia: f64, ground_energy: f64) -> Result<Self> {
        if !(inertia.is_finite() && inertia > 0.0) {
            return Err(Error::InvalidInertia(inertia));
        }
        if !(ground_energy.is_finite() && ground_energy < 0.0) {
            return Err(Error::InvalidGroundEnergy(ground_energy));
        }
        Ok(Self {
            inertia,
            ground_energy,
        })
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }
}

impl Default for RotorParameters {
    /// `I = 1/2`, `E0 = -13.6`: the `q = 9/5` limit then shows the hydrogen spectrum.
    fn default() -> Self {
        Self {
            inertia: 0.5,
            ground_energy: -13.6,
        }
    }
}

/// An orbital together with its ordering key `eps + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyKey {
    pub orbital: Orbital,
    pub value: f64,
}

/// `eps_q(n, l) + 1 = n^2 + alpha(q) [l]_q [l+1]_q`.
pub fn epsilon_key(o: Orbital, d: Deformation) -> EnergyKey {
    let n = o.n() as f64;
    EnergyKey {
        orbital: o,
        value: n * n + alpha(d) * casimir_factor(o.l(), d),
    }
}

/// Eigenvalue of `Lambda^2`, `(n-1)(n+1)`.
fn lambda_sq(o: Orbital) -> f64 {
    let n = o.n() as f64;
    (n - 1.0) * (n + 1.0)
}

/// Eigenvalue of the deformed rotor `h_q = (Lambda^2 + alpha(q)[l][l+1]) / 2I`.
pub fn h_q_eigenvalue(o: Orbital, d: Deformation, p: &RotorParameters) -> f64 {
    (lambda_sq(o) + alpha(d) * casimir_factor(o.l(), d)) / (2.0 * p.inertia())
}

/// Eigenvalue of the undeformed asymmetric rotor `h = (Lambda^2 + alpha L^2) / 2I`.
pub fn novaro_h_eigenvalue(o: Orbital, alpha_const: f64, p: &RotorParameters) -> f64 {
    let l = o.l() as f64;
    (lambda_sq(o) + alpha_const * l * (l + 1.0)) / (2.0 * p.inertia())
}

/// Shell energy `E0 / (h_q + 1)`.
pub fn spectral_energy(o: Orbital, d: Deformation, p: &RotorParameters) -> Result<f64> {
    let denom = h_q_eigenvalue(o, d, p) + 1.0;
    if denom <= 0.0 {
        return Err(Error::DegenerateDenominator(denom));
    }
    Ok(p.ground_energy() / denom)
}
