//! Filling sequences, the reference series and their comparison.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qalgebra::Deformation;
use crate::spectrum::{epsilon_key, EnergyKey, Orbital};

pub const MAX_N: u32 = 12;
pub const MAX_L: u32 = 5;

/// Relative tolerance under which two keys are considered degenerate.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `|a - b| <= 1e-9 * max(1, |a|, |b|)`.
pub fn keys_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Orbitals sorted by their ordering key at a fixed `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitalSequence {
    deformation: Deformation,
    entries: Vec<EnergyKey>,
    tie_groups: Vec<Vec<usize>>,
}

impl OrbitalSequence {
    /// Sorts `orbitals` by key; degenerate runs are ordered by `(n, l)`.
    /// Duplicates are dropped.
    pub fn from_orbitals<I>(d: Deformation, orbitals: I) -> Self
    where
        I: IntoIterator<Item = Orbital>,
    {
        let unique: BTreeSet<Orbital> = orbitals.into_iter().collect();
        let mut entries: Vec<EnergyKey> = unique.into_iter().map(|o| epsilon_key(o, d)).collect();
        entries.sort_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then_with(|| a.orbital.cmp(&b.orbital))
        });

        let mut tie_groups = Vec::new();
        let mut start = 0;
        for i in 1..=entries.len() {
            if i < entries.len() && keys_tie(entries[i - 1].value, entries[i].value) {
                continue;
            }
            if i - start > 1 {
                entries[start..i].sort_by_key(|e| e.orbital);
                tie_groups.push((start..i).collect());
            }
            start = i;
        }

        Self {
            deformation: d,
            entries,
            tie_groups,
        }
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn entries(&self) -> &[EnergyKey] {
        &self.entries
    }

    pub fn tie_groups(&self) -> &[Vec<usize>] {
        &self.tie_groups
    }

    pub fn orbitals(&self) -> impl Iterator<Item = Orbital> + '_ {
        self.entries.iter().map(|e| e.orbital)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn key_of(&self, o: Orbital) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.orbital == o)
            .map(|e| e.value)
    }

    /// Same `q`, keeping only orbitals in `keep`.
    pub fn restricted_to(&self, keep: &[Orbital]) -> Self {
        let keep: BTreeSet<Orbital> = keep.iter().copied().collect();
        Self::from_orbitals(
            self.deformation,
            self.orbitals().filter(|o| keep.contains(o)),
        )
    }

    /// Renders `a < b = c < ...`, with `=` between tied neighbours.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                let tied = self
                    .tie_groups
                    .iter()
                    .any(|g| g.contains(&(i - 1)) && g.contains(&i));
                out.push_str(if tied { " = " } else { " < " });
            }
            out.push_str(&e.orbital.to_string());
        }
        out
    }
}

/// All orbitals with `n <= n_max` and `l <= min(n - 1, l_max)`.
pub fn orbital_universe(n_max: u32, l_max: u32) -> Vec<Orbital> {
    (1..=n_max)
        .flat_map(|n| (0..=l_max.min(n - 1)).map(move |l| (n, l)))
        .map(|(n, l)| Orbital::new(n, l).expect("bounded by construction"))
        .collect()
}

pub fn generate_sequence(d: Deformation, n_max: u32, l_max: u32) -> Result<OrbitalSequence> {
    if !(1..=MAX_N).contains(&n_max) || l_max > MAX_L {
        return Err(Error::InvalidBounds { n_max, l_max });
    }
    Ok(OrbitalSequence::from_orbitals(
        d,
        orbital_universe(n_max, l_max),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesName {
    Madelung,
    Ion,
    Hydrogenic,
    /// A caller-supplied order.
    Custom,
}

impl SeriesName {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesName::Madelung => "madelung",
            SeriesName::Ion => "ion",
            SeriesName::Hydrogenic => "hydrogenic",
            SeriesName::Custom => "custom",
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "madelung" => Ok(SeriesName::Madelung),
            "ion" => Ok(SeriesName::Ion),
            "hydrogenic" => Ok(SeriesName::Hydrogenic),
            _ => Err(Error::UnknownSeries(s.to_string())),
        }
    }
}

const MADELUNG: &str = "1s << 2s < 2p << 3s < 3p << 4s < 3d < 4p << 5s < \
                        4d < 5p << 6s < 4f < 5d < 6p << 7s < 5f < 6d";
const ION: &str = "1s < 2s < 2p < 3s < 3p < 3d < 4s < 4p < 4d < \
                   5s < 5p < 4f < 5d < 6s < 6p < 5f < 6d < 7s";

/// A canonical filling order to compare against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceSeries {
    name: SeriesName,
    entries: Vec<Orbital>,
    /// Indices `i` such that a rare-gas separator `<<` precedes `entries[i]`.
    rare_gas_marks: BTreeSet<usize>,
}

impl ReferenceSeries {
    fn from_notation(name: SeriesName, text: &str) -> Self {
        let mut entries = Vec::new();
        let mut rare_gas_marks = BTreeSet::new();
        let mut pending_mark = false;
        for tok in text.split_whitespace() {
            match tok {
                "<" => {}
                "<<" => pending_mark = true,
                label => {
                    if pending_mark {
                        rare_gas_marks.insert(entries.len());
                        pending_mark = false;
                    }
                    entries.push(label.parse().expect("static series notation"));
                }
            }
        }
        Self {
            name,
            entries,
            rare_gas_marks,
        }
    }

    pub fn madelung() -> Self {
        Self::from_notation(SeriesName::Madelung, MADELUNG)
    }

    pub fn ion() -> Self {
        Self::from_notation(SeriesName::Ion, ION)
    }

    /// Shells by increasing `n`, then `l`.
    pub fn hydrogenic(n_max: u32, l_max: u32) -> Self {
        Self {
            name: SeriesName::Hydrogenic,
            entries: orbital_universe(n_max, l_max),
            rare_gas_marks: BTreeSet::new(),
        }
    }

    pub fn custom(entries: Vec<Orbital>) -> Self {
        Self {
            name: SeriesName::Custom,
            entries,
            rare_gas_marks: BTreeSet::new(),
        }
    }

    pub fn name(&self) -> SeriesName {
        self.name
    }

    pub fn entries(&self) -> &[Orbital] {
        &self.entries
    }

    pub fn rare_gas_marks(&self) -> &BTreeSet<usize> {
        &self.rare_gas_marks
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for ReferenceSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.entries.iter().enumerate() {
            if i > 0 {
                let sep = if self.rare_gas_marks.contains(&i) {
                    " << "
                } else {
                    " < "
                };
                f.write_str(sep)?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Looks up a built-in series. The hydrogenic series spans `n <= 7`, `l <= 3`.
pub fn reference_series(name: &str) -> Result<ReferenceSeries> {
    Ok(match name.parse::<SeriesName>()? {
        SeriesName::Madelung => ReferenceSeries::madelung(),
        SeriesName::Ion => ReferenceSeries::ion(),
        SeriesName::Hydrogenic => ReferenceSeries::hydrogenic(7, 3),
        SeriesName::Custom => unreachable!("not parseable"),
    })
}

/// A pair the model orders opposite to the reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inversion {
    /// Comes first in the reference.
    pub earlier: Orbital,
    /// Comes later in the reference but is filled first by the model.
    pub later: Orbital,
    /// Symmetric relative key difference, in percent.
    pub deviation_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub reference: SeriesName,
    pub q: Deformation,
    pub matched_prefix_len: usize,
    pub reference_len: usize,
    pub inversions: Vec<Inversion>,
    pub exact_match: bool,
}

impl ComparisonReport {
    pub fn pair_deviations(&self) -> impl Iterator<Item = f64> + '_ {
        self.inversions.iter().map(|i| i.deviation_percent)
    }

    pub fn max_deviation(&self) -> Option<f64> {
        self.pair_deviations().reduce(f64::max)
    }
}

/// `100 |a - b| / ((a + b) / 2)`.
pub fn relative_deviation_percent(a: f64, b: f64) -> f64 {
    100.0 * (a - b).abs() / ((a + b) / 2.0)
}

/// Compares `seq`, restricted to the reference's orbitals, against `reference`.
///
/// An inversion is a pair the restricted sequence places in the opposite
/// order to the reference. Outside degenerate groups this is exactly a pair
/// whose keys disagree with the reference beyond [`TIE_TOLERANCE`].
pub fn compare(seq: &OrbitalSequence, reference: &ReferenceSeries) -> Result<ComparisonReport> {
    if let Some(missing) = reference
        .entries()
        .iter()
        .find(|o| seq.key_of(**o).is_none())
    {
        return Err(Error::MissingOrbital(*missing));
    }
    let restricted = seq.restricted_to(reference.entries());
    let position: HashMap<Orbital, usize> = restricted
        .orbitals()
        .enumerate()
        .map(|(i, o)| (o, i))
        .collect();
    let key: HashMap<Orbital, f64> = restricted
        .entries()
        .iter()
        .map(|e| (e.orbital, e.value))
        .collect();

    let matched_prefix_len = restricted
        .orbitals()
        .zip(reference.entries())
        .take_while(|(a, b)| a == *b)
        .count();

    let refs = reference.entries();
    let mut inversions = Vec::new();
    for (i, &earlier) in refs.iter().enumerate() {
        for &later in &refs[i + 1..] {
            if position[&earlier] > position[&later] {
                inversions.push(Inversion {
                    earlier,
                    later,
                    deviation_percent: relative_deviation_percent(key[&earlier], key[&later]),
                });
            }
        }
    }

    Ok(ComparisonReport {
        reference: reference.name(),
        q: seq.deformation(),
        matched_prefix_len,
        reference_len: refs.len(),
        exact_match: inversions.is_empty(),
        inversions,
    })
}
