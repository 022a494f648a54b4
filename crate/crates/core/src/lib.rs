//! q-deformed building-up principle for atoms and monoatomic ions.
//!
//! Orbital energies come from a rotor in four dimensions whose orbital term
//! is replaced by the Casimir eigenvalue of `so(3)_q`. A single parameter
//! `q` moves the filling order between the neutral-atom (Madelung) series,
//! the positive-ion series and the hydrogenic order.
//!
//! ```
//! use qaufbau::{generate_sequence, Deformation};
//!
//! let seq = generate_sequence(Deformation::new(1.8).unwrap(), 2, 1).unwrap();
//! assert_eq!(seq.render(), "1s < 2s = 2p");
//! ```

pub mod aufbau;
pub mod error;
pub mod ordering;
pub mod qalgebra;
pub mod scan;
pub mod spectrum;

pub use aufbau::{
    build_configuration, bundled_reference_configs, count_exceptions, load_reference_configs,
    parse_configuration, ElectronConfiguration, ExceptionReport, NobleGas, ReferenceConfigRecord,
};
pub use error::{Error, Result};
pub use ordering::{
    compare, generate_sequence, reference_series, ComparisonReport, OrbitalSequence,
    ReferenceSeries, SeriesName,
};
pub use qalgebra::{alpha, casimir_factor, q_integer, Deformation};
pub use scan::{classify_regimes, find_crossing, CrossingEvent, RegimeLabel, RegimeProfile};
pub use spectrum::{
    epsilon_key, h_q_eigenvalue, novaro_h_eigenvalue, spectral_energy, EnergyKey, Orbital,
    RotorParameters,
};
