//! Electron configurations by sequential filling of the q-ordered orbitals.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::generate_sequence;
use crate::qalgebra::Deformation;
use crate::spectrum::Orbital;

/// Default filling universe: `n <= 8`, `l <= 3`.
pub const FILL_N_MAX: u32 = 8;
pub const FILL_L_MAX: u32 = 3;

/// Bundled neutral ground-state configurations for `z = 1..=99`.
pub const BUNDLED_GROUND_STATES: &str = include_str!("../data/ground_states.csv");

pub type Occupancies = Vec<(Orbital, u32)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NobleGas {
    He,
    Ne,
    Ar,
    Kr,
    Xe,
    Rn,
}

impl NobleGas {
    pub const ALL: [NobleGas; 6] = [
        NobleGas::He,
        NobleGas::Ne,
        NobleGas::Ar,
        NobleGas::Kr,
        NobleGas::Xe,
        NobleGas::Rn,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            NobleGas::He => "He",
            NobleGas::Ne => "Ne",
            NobleGas::Ar => "Ar",
            NobleGas::Kr => "Kr",
            NobleGas::Xe => "Xe",
            NobleGas::Rn => "Rn",
        }
    }

    pub fn electrons(self) -> u32 {
        match self {
            NobleGas::He => 2,
            NobleGas::Ne => 10,
            NobleGas::Ar => 18,
            NobleGas::Kr => 36,
            NobleGas::Xe => 54,
            NobleGas::Rn => 86,
        }
    }

    /// Closed-shell configuration in Madelung order.
    pub fn occupancies(self) -> Occupancies {
        const SHELLS: [&str; 15] = [
            "1s", "2s", "2p", "3s", "3p", "4s", "3d", "4p", "5s", "4d", "5p", "6s", "4f", "5d",
            "6p",
        ];
        let mut left = self.electrons();
        let mut out = Vec::new();
        for label in SHELLS {
            if left == 0 {
                break;
            }
            let o: Orbital = label.parse().expect("static label");
            out.push((o, o.capacity()));
            left -= o.capacity();
        }
        out
    }
}

impl FromStr for NobleGas {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NobleGas::ALL
            .into_iter()
            .find(|g| g.symbol() == s)
            .ok_or_else(|| Error::UnknownCore(s.to_string()))
    }
}

/// Largest noble-gas configuration that is a proper prefix of `occupancies`.
pub fn noble_core_of(occupancies: &[(Orbital, u32)]) -> Option<NobleGas> {
    let total: u32 = occupancies.iter().map(|(_, k)| k).sum();
    NobleGas::ALL
        .into_iter()
        .rev()
        .find(|g| g.electrons() < total && occupancies.starts_with(&g.occupancies()))
}

/// Renders `[Core] 3d6 4s2`-style text.
pub fn render_occupancies(core: Option<NobleGas>, occupancies: &[(Orbital, u32)]) -> String {
    let skip = core.map_or(0, |g| g.occupancies().len());
    let mut parts: Vec<String> = Vec::new();
    if let Some(g) = core {
        parts.push(format!("[{}]", g.symbol()));
    }
    parts.extend(occupancies[skip..].iter().map(|(o, k)| format!("{o}{k}")));
    parts.join(" ")
}

/// Parses `[Ar] 3d5 4s1`. A core must come first and expands in Madelung order.
pub fn parse_configuration(text: &str) -> Result<Occupancies> {
    let invalid = |reason: String| Error::InvalidConfiguration {
        text: text.to_string(),
        reason,
    };
    let mut out: Occupancies = Vec::new();
    for (i, tok) in text.split_whitespace().enumerate() {
        if let Some(inner) = tok.strip_prefix('[') {
            let symbol = inner
                .strip_suffix(']')
                .ok_or_else(|| invalid(format!("unterminated core {tok:?}")))?;
            if i != 0 {
                return Err(invalid("noble-gas core must come first".into()));
            }
            out.extend(symbol.parse::<NobleGas>()?.occupancies());
            continue;
        }
        let split = tok
            .char_indices()
            .find(|&(k, c)| k > 0 && c.is_ascii_alphabetic())
            .map(|(k, _)| k + 1)
            .ok_or_else(|| invalid(format!("bad term {tok:?}")))?;
        let (label, count) = tok.split_at(split);
        let orbital: Orbital = label.parse()?;
        let count: u32 = count
            .parse()
            .map_err(|_| invalid(format!("bad occupancy in {tok:?}")))?;
        if count == 0 || count > orbital.capacity() {
            return Err(invalid(format!(
                "{orbital} holds 1..={} electrons, got {count}",
                orbital.capacity()
            )));
        }
        if out.iter().any(|(o, _)| *o == orbital) {
            return Err(invalid(format!("{orbital} listed twice")));
        }
        out.push((orbital, count));
    }
    if out.is_empty() {
        return Err(invalid("empty configuration".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElectronConfiguration {
    pub z: u32,
    pub electron_count: u32,
    /// In filling order.
    pub occupancies: Occupancies,
    /// Largest noble-gas configuration that is a proper prefix of `occupancies`.
    pub noble_core: Option<NobleGas>,
}

impl ElectronConfiguration {
    fn new(z: u32, occupancies: Occupancies) -> Self {
        let electron_count = occupancies.iter().map(|(_, k)| k).sum();
        let noble_core = noble_core_of(&occupancies);
        Self {
            z,
            electron_count,
            occupancies,
            noble_core,
        }
    }

    pub fn last_filled(&self) -> Option<(Orbital, u32)> {
        self.occupancies.last().copied()
    }

    /// Occupancy per orbital, ignoring filling order.
    pub fn multiset(&self) -> BTreeMap<Orbital, u32> {
        self.occupancies.iter().copied().collect()
    }

    /// Without the noble-gas abbreviation.
    pub fn render_full(&self) -> String {
        render_occupancies(None, &self.occupancies)
    }
}

impl fmt::Display for ElectronConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_occupancies(self.noble_core, &self.occupancies))
    }
}

/// Fills orbitals `n <= n_max`, `l <= l_max` in key order.
pub fn build_configuration_in(
    z: u32,
    electron_count: u32,
    d: Deformation,
    n_max: u32,
    l_max: u32,
) -> Result<ElectronConfiguration> {
    if z == 0 {
        return Err(Error::InvalidAtomicNumber);
    }
    if electron_count > z {
        return Err(Error::InvalidElectronCount {
            z,
            electrons: electron_count,
        });
    }
    let seq = generate_sequence(d, n_max, l_max)?;
    let capacity: u32 = seq.orbitals().map(Orbital::capacity).sum();
    if electron_count > capacity {
        return Err(Error::CapacityExhausted {
            requested: electron_count,
            capacity,
        });
    }
    let mut left = electron_count;
    let mut occupancies = Vec::new();
    for o in seq.orbitals() {
        if left == 0 {
            break;
        }
        let k = left.min(o.capacity());
        occupancies.push((o, k));
        left -= k;
    }
    Ok(ElectronConfiguration::new(z, occupancies))
}

/// Fills the default universe (`n <= 8`, `l <= 3`, 188 electrons).
pub fn build_configuration(
    z: u32,
    electron_count: u32,
    d: Deformation,
) -> Result<ElectronConfiguration> {
    build_configuration_in(z, electron_count, d, FILL_N_MAX, FILL_L_MAX)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceConfigRecord {
    pub z: u32,
    pub symbol: String,
    pub occupancies: Occupancies,
}

impl ReferenceConfigRecord {
    pub fn multiset(&self) -> BTreeMap<Orbital, u32> {
        self.occupancies.iter().copied().collect()
    }
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    z: u32,
    symbol: String,
    configuration: String,
}

/// Reads `z,symbol,configuration` CSV. Line numbers in errors are 1-based
/// and count the header.
pub fn load_reference_configs<R: Read>(source: R) -> Result<Vec<ReferenceConfigRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().collect::<Vec<_>>() != ["z", "symbol", "configuration"] {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header z,symbol,configuration, got {:?}",
                headers.as_slice()
            ),
        });
    }

    let mut records = Vec::new();
    for row in reader.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = records.len() as u64 + 2;
        if row.z == 0 {
            return Err(Error::Parse {
                line,
                message: "atomic number must be at least 1".into(),
            });
        }
        let occupancies = parse_configuration(&row.configuration).map_err(|e| match e {
            Error::UnknownCore(_) => e,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        })?;
        let found: u32 = occupancies.iter().map(|(_, k)| k).sum();
        if found != row.z {
            return Err(Error::ElectronMismatch {
                line,
                z: row.z,
                symbol: row.symbol,
                found,
            });
        }
        records.push(ReferenceConfigRecord {
            z: row.z,
            symbol: row.symbol,
            occupancies,
        });
    }
    Ok(records)
}

pub fn bundled_reference_configs() -> Vec<ReferenceConfigRecord> {
    load_reference_configs(BUNDLED_GROUND_STATES.as_bytes()).expect("bundled data is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigException {
    pub z: u32,
    pub symbol: String,
    pub reference: String,
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionReport {
    pub q: Deformation,
    pub total: usize,
    pub count: usize,
    pub exceptions: Vec<ConfigException>,
}

impl ExceptionReport {
    pub fn flags(&self, symbol: &str) -> bool {
        self.exceptions.iter().any(|e| e.symbol == symbol)
    }
}

/// Records whose occupancy multiset differs from the neutral-atom build at `d`.
pub fn count_exceptions(
    records: &[ReferenceConfigRecord],
    d: Deformation,
) -> Result<ExceptionReport> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut exceptions = Vec::new();
    for r in records {
        let built = build_configuration(r.z, r.z, d)?;
        if built.multiset() != r.multiset() {
            exceptions.push(ConfigException {
                z: r.z,
                symbol: r.symbol.clone(),
                reference: render_occupancies(noble_core_of(&r.occupancies), &r.occupancies),
                model: built.to_string(),
            });
        }
    }
    Ok(ExceptionReport {
        q: d,
        total: records.len(),
        count: exceptions.len(),
        exceptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dq(q: f64) -> Deformation {
        Deformation::new(q).unwrap()
    }

    fn occ(text: &str) -> Occupancies {
        parse_configuration(text).unwrap()
    }

    #[test]
    fn neon_fills_first_three() {
        let c = build_configuration(10, 10, dq(0.85)).unwrap();
        assert_eq!(c.occupancies, occ("1s2 2s2 2p6"));
        assert_eq!(c.to_string(), "[He] 2s2 2p6");
    }

    #[test]
    fn potassium_and_iron() {
        let k = build_configuration(19, 19, dq(0.85)).unwrap();
        assert_eq!(k.to_string(), "[Ar] 4s1");
        let fe = build_configuration(26, 26, dq(1.2)).unwrap();
        assert_eq!(fe.to_string(), "[Ar] 3d8");
        let fe2 = build_configuration(26, 24, dq(1.2)).unwrap();
        assert_eq!(fe2.to_string(), "[Ar] 3d6");
        assert_eq!(fe2.electron_count, 24);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build_configuration(0, 0, dq(1.0)),
            Err(Error::InvalidAtomicNumber)
        );
        assert!(matches!(
            build_configuration(5, 6, dq(1.0)),
            Err(Error::InvalidElectronCount { .. })
        ));
        assert_eq!(
            build_configuration(200, 189, dq(1.0)),
            Err(Error::CapacityExhausted {
                requested: 189,
                capacity: 188
            })
        );
        assert!(build_configuration(200, 188, dq(1.0)).is_ok());
        let empty = build_configuration(3, 0, dq(1.0)).unwrap();
        assert!(empty.occupancies.is_empty());
        assert_eq!(empty.to_string(), "");
    }

    #[test]
    fn noble_tables() {
        for g in NobleGas::ALL {
            let sum: u32 = g.occupancies().iter().map(|(_, k)| k).sum();
            assert_eq!(sum, g.electrons(), "{g:?}");
        }
        assert_eq!(
            render_occupancies(None, &NobleGas::Kr.occupancies()),
            "1s2 2s2 2p6 3s2 3p6 4s2 3d10 4p6"
        );
    }

    #[test]
    fn parse_examples() {
        assert_eq!(occ("1s2"), vec![("1s".parse().unwrap(), 2)]);
        let cr = occ("[Ar] 3d5 4s1");
        assert_eq!(cr.iter().map(|(_, k)| k).sum::<u32>(), 24);
        assert_eq!(cr.len(), 7);
        assert_eq!(occ("10s2")[0].0.n(), 10);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "1s3", "1s0", "2p7", "1s2 1s1", "1s", "s2", "1x2", "[Ar", "3d5 [Ar]", "1s2 2sx",
        ] {
            assert!(parse_configuration(bad).is_err(), "{bad:?}");
        }
        assert_eq!(
            parse_configuration("[Og] 8s1"),
            Err(Error::UnknownCore("Og".into()))
        );
    }

    #[test]
    fn csv_records() {
        let data = "z,symbol,configuration\n2,He,1s2\n24,Cr,[Ar] 3d5 4s1\n";
        let r = load_reference_configs(data.as_bytes()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].occupancies, occ("1s2"));
        assert_eq!(r[1].symbol, "Cr");
    }

    #[test]
    fn csv_errors() {
        let mismatch = "z,symbol,configuration\n2,He,1s2\n24,Cr,[Ar] 3d5\n";
        assert_eq!(
            load_reference_configs(mismatch.as_bytes()),
            Err(Error::ElectronMismatch {
                line: 3,
                z: 24,
                symbol: "Cr".into(),
                found: 23
            })
        );
        let header = "atomic,symbol,configuration\n1,H,1s1\n";
        assert!(matches!(
            load_reference_configs(header.as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        let not_int = "z,symbol,configuration\n1,H,1s1\nx,He,1s2\n";
        assert!(matches!(
            load_reference_configs(not_int.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
        let bad_term = "z,symbol,configuration\n1,H,1q1\n";
        assert!(matches!(
            load_reference_configs(bad_term.as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        let core = "z,symbol,configuration\n19,K,[Zz] 4s1\n";
        assert_eq!(
            load_reference_configs(core.as_bytes()),
            Err(Error::UnknownCore("Zz".into()))
        );
        let ragged = "z,symbol,configuration\n1,H\n";
        assert!(matches!(
            load_reference_configs(ragged.as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn bundled_data_is_complete() {
        let r = bundled_reference_configs();
        assert_eq!(r.len(), 99);
        assert!(r.iter().enumerate().all(|(i, x)| x.z == i as u32 + 1));
    }

    #[test]
    fn chromium_is_an_exception() {
        let data = "z,symbol,configuration\n20,Ca,[Ar] 4s2\n24,Cr,[Ar] 3d5 4s1\n";
        let records = load_reference_configs(data.as_bytes()).unwrap();
        let report = count_exceptions(&records, dq(0.85)).unwrap();
        assert_eq!(report.count, 1);
        assert!(report.flags("Cr"));
        assert_eq!(report.exceptions[0].model, "[Ar] 4s2 3d4");
        assert_eq!(count_exceptions(&[], dq(0.85)), Err(Error::EmptyRecords));
    }
}
