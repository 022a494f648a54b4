use std::fmt;
use std::fs::File;
use std::path::Path;

use serde::Serialize;

use qaufbau::aufbau::bundled_reference_configs;
use qaufbau::scan::BoundaryCause;
use qaufbau::{
    build_configuration, classify_regimes, count_exceptions, generate_sequence,
    load_reference_configs, reference_series, spectral_energy, Deformation, Error, Orbital,
    ReferenceSeries, RotorParameters,
};

use crate::output::{fixed, json, Csv, Format, Table};

const DEFAULT_N_MAX: u32 = 7;
const DEFAULT_L_MAX: u32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values.
    Usage(String),
    /// Unreadable or malformed input data.
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::ElectronMismatch { .. }
            | Error::UnknownCore(_)
            | Error::InvalidConfiguration { .. }
            | Error::EmptyRecords => CliError::Data(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<String, CliError>;

fn deformation(q: f64) -> Result<Deformation, CliError> {
    Ok(Deformation::new(q)?)
}

#[derive(Serialize)]
struct EnergyRow {
    orbital: Orbital,
    n: u32,
    l: u32,
    key: f64,
    energy: f64,
}

pub fn energies(q: f64, n_max: Option<u32>, l_max: Option<u32>, format: Format) -> CmdResult {
    let d = deformation(q)?;
    let seq = generate_sequence(
        d,
        n_max.unwrap_or(DEFAULT_N_MAX),
        l_max.unwrap_or(DEFAULT_L_MAX),
    )?;
    let rotor = RotorParameters::default();
    let rows = seq
        .entries()
        .iter()
        .map(|e| {
            Ok(EnergyRow {
                orbital: e.orbital,
                n: e.orbital.n(),
                l: e.orbital.l(),
                key: e.value,
                energy: spectral_energy(e.orbital, d, &rotor)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                q: f64,
                rows: Vec<EnergyRow>,
            }
            json(&Out { q, rows })
        }
        Format::Csv => {
            let mut csv = Csv::new(&["orbital", "n", "l", "key", "energy"]);
            for r in &rows {
                csv.row([
                    r.orbital.to_string(),
                    r.n.to_string(),
                    r.l.to_string(),
                    r.key.to_string(),
                    r.energy.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Table => {
            let mut t = Table::new(&["orbital", "n", "l", "eps+1", "energy"]);
            for r in &rows {
                t.row(vec![
                    r.orbital.to_string(),
                    r.n.to_string(),
                    r.l.to_string(),
                    fixed(r.key),
                    fixed(r.energy),
                ]);
            }
            t.render()
        }
    })
}

pub fn order(q: f64, n_max: Option<u32>, l_max: Option<u32>, format: Format) -> CmdResult {
    let d = deformation(q)?;
    let full = generate_sequence(
        d,
        n_max.unwrap_or(DEFAULT_N_MAX),
        l_max.unwrap_or(DEFAULT_L_MAX),
    )?;
    let seq = if n_max.is_none() && l_max.is_none() {
        full.restricted_to(ReferenceSeries::ion().entries())
    } else {
        full
    };

    let group_of = |i: usize| seq.tie_groups().iter().position(|g| g.contains(&i));
    Ok(match format {
        Format::Table => format!("{}\n", seq.render()),
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                orbital: Orbital,
                n: u32,
                l: u32,
                key: f64,
            }
            #[derive(Serialize)]
            struct Out {
                q: f64,
                sequence: String,
                entries: Vec<Entry>,
                tie_groups: Vec<Vec<Orbital>>,
            }
            json(&Out {
                q,
                sequence: seq.render(),
                entries: seq
                    .entries()
                    .iter()
                    .map(|e| Entry {
                        orbital: e.orbital,
                        n: e.orbital.n(),
                        l: e.orbital.l(),
                        key: e.value,
                    })
                    .collect(),
                tie_groups: seq
                    .tie_groups()
                    .iter()
                    .map(|g| g.iter().map(|&i| seq.entries()[i].orbital).collect())
                    .collect(),
            })
        }
        Format::Csv => {
            let mut csv = Csv::new(&["position", "orbital", "n", "l", "key", "tie_group"]);
            for (i, e) in seq.entries().iter().enumerate() {
                csv.row([
                    (i + 1).to_string(),
                    e.orbital.to_string(),
                    e.orbital.n().to_string(),
                    e.orbital.l().to_string(),
                    e.value.to_string(),
                    group_of(i).map(|g| g.to_string()).unwrap_or_default(),
                ]);
            }
            csv.finish()
        }
    })
}

pub fn compare(q: f64, reference: &str, format: Format) -> CmdResult {
    let d = deformation(q)?;
    let series = reference_series(reference)?;
    let seq = generate_sequence(d, DEFAULT_N_MAX, DEFAULT_L_MAX)?;
    let report = qaufbau::compare(&seq, &series)?;

    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                report: &'a qaufbau::ComparisonReport,
                max_deviation_percent: Option<f64>,
            }
            json(&Out {
                report: &report,
                max_deviation_percent: report.max_deviation(),
            })
        }
        Format::Csv => {
            let mut csv = Csv::new(&["reference", "q", "earlier", "later", "deviation_percent"]);
            for inv in &report.inversions {
                csv.row([
                    report.reference.to_string(),
                    q.to_string(),
                    inv.earlier.to_string(),
                    inv.later.to_string(),
                    inv.deviation_percent.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Table => {
            let mut out = format!(
                "reference: {}\nq: {}\nexact match: {}\nmatched prefix: {} of {}\ninversions: {}\n",
                report.reference,
                q,
                report.exact_match,
                report.matched_prefix_len,
                report.reference_len,
                report.inversions.len()
            );
            if !report.inversions.is_empty() {
                let mut t = Table::new(&["  earlier", "later", "deviation %"]);
                for inv in &report.inversions {
                    t.row(vec![
                        format!("  {}", inv.earlier),
                        inv.later.to_string(),
                        fixed(inv.deviation_percent),
                    ]);
                }
                out.push_str(&t.render());
                out.push_str(&format!(
                    "max deviation: {}%\n",
                    fixed(report.max_deviation().unwrap_or(0.0))
                ));
            }
            out
        }
    })
}

pub fn scan(q_min: f64, q_max: f64, step: f64, format: Format) -> CmdResult {
    let profile = classify_regimes(q_min, q_max, step)?;

    Ok(match format {
        Format::Json => json(&profile),
        Format::Csv => {
            let mut csv = Csv::new(&[
                "record", "q_lo", "q_hi", "label", "lower", "upper", "q_star", "residual",
            ]);
            for i in &profile.intervals {
                csv.row([
                    "interval".to_string(),
                    i.q_lo.to_string(),
                    i.q_hi.to_string(),
                    i.label.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
            for c in &profile.crossings {
                csv.row([
                    "crossing".to_string(),
                    c.bracket.0.to_string(),
                    c.bracket.1.to_string(),
                    String::new(),
                    c.pair.0.to_string(),
                    c.pair.1.to_string(),
                    c.q_star.to_string(),
                    c.residual.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Table => {
            let mut out = String::from("regimes\n");
            let mut t = Table::new(&["  q_lo", "q_hi", "label", "boundary"]);
            for (k, i) in profile.intervals.iter().enumerate() {
                let cause = profile.boundaries.get(k).map(|b| match &b.cause {
                    BoundaryCause::Crossing(c) => format!("{}/{} crossing", c.pair.0, c.pair.1),
                    BoundaryCause::DeviationThreshold { .. } => "8% deviation".to_string(),
                });
                t.row(vec![
                    format!("  {}", fixed(i.q_lo)),
                    fixed(i.q_hi),
                    i.label.to_string(),
                    cause.unwrap_or_default(),
                ]);
            }
            out.push_str(&t.render());
            out.push_str(&format!("crossings ({})\n", profile.crossings.len()));
            let mut t = Table::new(&["  lower", "upper", "q*"]);
            for c in &profile.crossings {
                t.row(vec![
                    format!("  {}", c.pair.0),
                    c.pair.1.to_string(),
                    format!("{:.12}", c.q_star),
                ]);
            }
            out.push_str(&t.render());
            let r = profile.recommended_q;
            out.push_str(&format!(
                "recommended q: neutral {}, positive ions {}, highly ionized {}\n",
                r.neutral, r.positive_ions, r.highly_ionized
            ));
            out
        }
    })
}

pub fn config(z: u32, electrons: Option<u32>, q: f64, format: Format) -> CmdResult {
    let d = deformation(q)?;
    let c = build_configuration(z, electrons.unwrap_or(z), d)?;

    Ok(match format {
        Format::Table => format!("{c}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct Occ {
                orbital: Orbital,
                n: u32,
                l: u32,
                occupancy: u32,
            }
            #[derive(Serialize)]
            struct Out {
                z: u32,
                electrons: u32,
                q: f64,
                configuration: String,
                full: String,
                noble_core: Option<&'static str>,
                occupancies: Vec<Occ>,
            }
            json(&Out {
                z: c.z,
                electrons: c.electron_count,
                q,
                configuration: c.to_string(),
                full: c.render_full(),
                noble_core: c.noble_core.map(|g| g.symbol()),
                occupancies: c
                    .occupancies
                    .iter()
                    .map(|&(o, k)| Occ {
                        orbital: o,
                        n: o.n(),
                        l: o.l(),
                        occupancy: k,
                    })
                    .collect(),
            })
        }
        Format::Csv => {
            let mut csv = Csv::new(&["orbital", "n", "l", "occupancy"]);
            for (o, k) in &c.occupancies {
                csv.row([
                    o.to_string(),
                    o.n().to_string(),
                    o.l().to_string(),
                    k.to_string(),
                ]);
            }
            csv.finish()
        }
    })
}

pub fn exceptions(q: f64, data: Option<&Path>, format: Format) -> CmdResult {
    let d = deformation(q)?;
    let records = match data {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
            load_reference_configs(file)?
        }
        None => bundled_reference_configs(),
    };
    let report = count_exceptions(&records, d)?;

    Ok(match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut csv = Csv::new(&["z", "symbol", "reference", "model"]);
            for e in &report.exceptions {
                csv.row([
                    e.z.to_string(),
                    e.symbol.clone(),
                    e.reference.clone(),
                    e.model.clone(),
                ]);
            }
            csv.finish()
        }
        Format::Table => {
            let mut t = Table::new(&["z", "symbol", "reference", "model"]);
            for e in &report.exceptions {
                t.row(vec![
                    e.z.to_string(),
                    e.symbol.clone(),
                    e.reference.clone(),
                    e.model.clone(),
                ]);
            }
            let mut out = t.render();
            out.push_str(&format!(
                "exceptions: {} of {} at q = {}\n",
                report.count, report.total, q
            ));
            out
        }
    })
}
