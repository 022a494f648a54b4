//! Level crossings in `q` and the regime partition of a `q` interval.
//!
//! Regime labels are computed over the orbitals `n <= 7`, `l <= 3`. Each
//! grid point is labelled independently (in parallel), then every change of
//! label between neighbouring grid points is pinned down either to a level
//! crossing found by bisection or, for the Madelung-like tolerance band, to
//! the point where the largest inverted-pair deviation reaches 8%.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::{
    compare, generate_sequence, ComparisonReport, OrbitalSequence, ReferenceSeries,
};
use crate::qalgebra::{alpha, Deformation};
use crate::spectrum::{epsilon_key, Orbital};

/// Upper bound on the final bisection bracket. Bisection actually runs until
/// the midpoint no longer moves, so steep pairs still meet the residual bound.
pub const BRACKET_WIDTH: f64 = 1e-13;

/// Largest inverted-pair deviation (percent) still counted as Madelung-like.
pub const MADELUNG_DEVIATION_LIMIT: f64 = 8.0;

/// Label switches this close to a crossing are attributed to it.
pub const SNAP_DISTANCE: f64 = 1e-6;

pub const REGIME_N_MAX: u32 = 7;
pub const REGIME_L_MAX: u32 = 3;

pub const MAX_SCAN_Q: f64 = 2.0;
pub const MAX_SCAN_STEP: f64 = 0.05;

/// A value `q*` where two orbitals exchange order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingEvent {
    /// `pair.0` lies below `pair.1` at the left end of the bracket.
    pub pair: (Orbital, Orbital),
    pub q_star: f64,
    /// Final bisection bracket around `q_star`.
    pub bracket: (f64, f64),
    /// `|key(a) - key(b)|` at `q_star`.
    pub residual: f64,
}

fn key_difference(a: Orbital, b: Orbital, q: f64) -> Result<f64> {
    let d = Deformation::new(q)?;
    let diff = epsilon_key(a, d).value - epsilon_key(b, d).value;
    if diff.is_finite() {
        Ok(diff)
    } else {
        Err(Error::NonFinite(q))
    }
}

/// Bisects `key(a) - key(b)` on `[q_lo, q_hi]`.
///
/// Returns `None` unless the difference has strictly opposite signs at the
/// two ends, so a degeneracy sitting exactly on an endpoint is not a
/// crossing. With several roots in the bracket any one of them is returned.
pub fn find_crossing(
    a: Orbital,
    b: Orbital,
    q_lo: f64,
    q_hi: f64,
) -> Result<Option<CrossingEvent>> {
    if !(q_lo.is_finite() && q_hi.is_finite() && q_lo > 0.0 && q_lo < q_hi) {
        return Err(Error::InvalidBracket { lo: q_lo, hi: q_hi });
    }
    let mut f_lo = key_difference(a, b, q_lo)?;
    let f_hi = key_difference(a, b, q_hi)?;
    if f_lo == 0.0 || f_hi == 0.0 || (f_lo > 0.0) == (f_hi > 0.0) {
        return Ok(None);
    }
    let pair = if f_lo < 0.0 { (a, b) } else { (b, a) };

    let (mut lo, mut hi) = (q_lo, q_hi);
    let q_star = loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break mid;
        }
        let f_mid = key_difference(a, b, mid)?;
        if f_mid == 0.0 {
            // exact root: report a bracket of the nominal width around it
            lo = (mid - 0.5 * BRACKET_WIDTH).max(lo);
            hi = (mid + 0.5 * BRACKET_WIDTH).min(hi);
            break mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    };

    Ok(Some(CrossingEvent {
        pair,
        q_star,
        bracket: (lo, hi),
        residual: key_difference(a, b, q_star)?.abs(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeLabel {
    MadelungLike,
    IonLike,
    Hydrogenlike,
    /// `alpha(q) < 0`: higher `l` drops below lower `l` within a shell.
    Inverted,
    /// None of the above.
    Unclassified,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::MadelungLike => "madelung-like",
            RegimeLabel::IonLike => "ion-like",
            RegimeLabel::Hydrogenlike => "hydrogenlike",
            RegimeLabel::Inverted => "inverted",
            RegimeLabel::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// True when every orbital of shell `n` precedes every orbital of shell `n+1`.
///
/// Degenerate runs are already ordered by `(n, l)`, so exact hydrogen-limit
/// ties pass.
pub fn shells_hydrogenlike(seq: &OrbitalSequence) -> bool {
    seq.entries()
        .windows(2)
        .all(|w| w[0].orbital.n() <= w[1].orbital.n())
}

/// Label of one `q`, with the comparison that justifies it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointClassification {
    pub q: f64,
    pub label: RegimeLabel,
    pub witness: ComparisonReport,
}

pub fn classify_point(d: Deformation) -> PointClassification {
    let seq = generate_sequence(d, REGIME_N_MAX, REGIME_L_MAX).expect("fixed bounds are valid");
    let against = |reference: ReferenceSeries| {
        compare(&seq, &reference).expect("regime universe covers the reference series")
    };
    let madelung = || against(ReferenceSeries::madelung());

    let (label, witness) = if alpha(d) < 0.0 {
        (RegimeLabel::Inverted, madelung())
    } else if shells_hydrogenlike(&seq) {
        (
            RegimeLabel::Hydrogenlike,
            against(ReferenceSeries::hydrogenic(REGIME_N_MAX, REGIME_L_MAX)),
        )
    } else {
        let ion = against(ReferenceSeries::ion());
        if ion.exact_match {
            (RegimeLabel::IonLike, ion)
        } else {
            let m = madelung();
            if m.pair_deviations().all(|x| x < MADELUNG_DEVIATION_LIMIT) {
                (RegimeLabel::MadelungLike, m)
            } else {
                (RegimeLabel::Unclassified, m)
            }
        }
    };
    PointClassification {
        q: d.q(),
        label,
        witness,
    }
}

fn label_at(q: f64) -> RegimeLabel {
    classify_point(Deformation::new(q).expect("scan points are positive")).label
}

/// What fixes the position of a regime boundary.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundaryCause {
    Crossing(CrossingEvent),
    /// The largest Madelung-series deviation reaches the 8% limit.
    DeviationThreshold {
        bracket: (f64, f64),
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeBoundary {
    pub q: f64,
    pub cause: BoundaryCause,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeInterval {
    pub q_lo: f64,
    pub q_hi: f64,
    pub label: RegimeLabel,
    /// Comparison at the first grid point of the interval (or at its
    /// midpoint, when no grid point falls inside).
    pub witness: ComparisonReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhysicalCase {
    NeutralAtoms,
    /// Ionization degree `1 < N < 7`.
    PositiveIons,
    HighlyIonized,
}

pub fn recommended_q(case: PhysicalCase) -> f64 {
    match case {
        PhysicalCase::NeutralAtoms => 0.85,
        // midpoint of [1.15, 1.30]
        PhysicalCase::PositiveIons => 1.225,
        PhysicalCase::HighlyIonized => 1.7,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecommendedQ {
    pub neutral: f64,
    pub positive_ions: f64,
    pub highly_ionized: f64,
}

impl Default for RecommendedQ {
    fn default() -> Self {
        Self {
            neutral: recommended_q(PhysicalCase::NeutralAtoms),
            positive_ions: recommended_q(PhysicalCase::PositiveIons),
            highly_ionized: recommended_q(PhysicalCase::HighlyIonized),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeProfile {
    pub q_lo: f64,
    pub q_hi: f64,
    pub step: f64,
    pub intervals: Vec<RegimeInterval>,
    pub boundaries: Vec<RegimeBoundary>,
    /// Every level crossing between regime orbitals inside the scanned range.
    pub crossings: Vec<CrossingEvent>,
    pub recommended_q: RecommendedQ,
}

impl RegimeProfile {
    pub fn label_at(&self, q: f64) -> Option<RegimeLabel> {
        self.intervals
            .iter()
            .find(|i| i.q_lo <= q && q <= i.q_hi)
            .map(|i| i.label)
    }
}

/// Grid `q_lo, q_lo + step, ...`, always ending exactly on `q_hi`.
pub fn scan_grid(q_lo: f64, q_hi: f64, step: f64) -> Vec<f64> {
    let span = q_hi - q_lo;
    let mut steps = (span / step).round() as usize;
    if (steps as f64 * step - span).abs() > 1e-9 * step && (steps as f64) * step > span {
        steps -= 1;
    }
    let mut grid: Vec<f64> = (0..=steps).map(|i| q_lo + i as f64 * step).collect();
    grid.retain(|&q| q < q_hi - 1e-9 * step);
    grid.push(q_hi);
    grid
}

fn regime_pairs() -> Vec<(Orbital, Orbital)> {
    let orbitals = crate::ordering::orbital_universe(REGIME_N_MAX, REGIME_L_MAX);
    let mut pairs = Vec::new();
    for (i, &a) in orbitals.iter().enumerate() {
        for &b in &orbitals[i + 1..] {
            pairs.push((a, b));
        }
    }
    pairs
}

/// All sign changes of `key(a) - key(b)` along the grid, bisected.
fn grid_crossings(grid: &[f64], pairs: &[(Orbital, Orbital)]) -> Result<Vec<CrossingEvent>> {
    let per_pair: Vec<Result<Vec<CrossingEvent>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut events = Vec::new();
            let mut last: Option<(f64, f64)> = None;
            for &q in grid {
                let f = key_difference(a, b, q)?;
                if f == 0.0 {
                    continue;
                }
                if let Some((q_prev, f_prev)) = last {
                    if (f > 0.0) != (f_prev > 0.0) {
                        if let Some(ev) = find_crossing(a, b, q_prev, q)? {
                            events.push(ev);
                        }
                    }
                }
                last = Some((q, f));
            }
            Ok(events)
        })
        .collect();
    let mut all = Vec::new();
    for events in per_pair {
        all.extend(events?);
    }
    all.sort_by(|x, y| {
        x.q_star
            .total_cmp(&y.q_star)
            .then_with(|| x.pair.cmp(&y.pair))
    });
    Ok(all)
}

/// Bisects on the label itself between two points of different label.
fn bisect_label(mut lo: f64, mut hi: f64) -> (f64, f64) {
    let left = label_at(lo);
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if label_at(mid) == left {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Boundaries strictly inside one grid cell `[g_lo, g_hi]`.
fn refine_cell(
    g_lo: f64,
    g_hi: f64,
    crossings: &[CrossingEvent],
) -> Vec<(RegimeBoundary, RegimeLabel)> {
    let inside: Vec<&CrossingEvent> = crossings
        .iter()
        .filter(|c| g_lo <= c.q_star && c.q_star <= g_hi)
        .collect();

    // Points between which the ordering is constant.
    let on_lo = inside.iter().find(|c| c.q_star == g_lo).copied();
    let mut cuts: Vec<(f64, Option<&CrossingEvent>)> = vec![(g_lo, on_lo)];
    for c in &inside {
        if c.q_star > cuts.last().unwrap().0 {
            cuts.push((c.q_star, Some(c)));
        }
    }
    cuts.push((g_hi, None));

    let mut out = Vec::new();
    let mut current = label_at(g_lo);
    for w in cuts.windows(2) {
        let ((a, at_a), (b, at_b)) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let width = b - a;
        let inner_lo = a + 1e-6 * width;
        let inner_hi = b - 1e-6 * width;
        let first = label_at(inner_lo);
        if first != current {
            let cause = match at_a {
                Some(ev) => BoundaryCause::Crossing(*ev),
                None => BoundaryCause::DeviationThreshold {
                    bracket: (a, inner_lo),
                },
            };
            out.push((RegimeBoundary { q: a, cause }, first));
            current = first;
        }
        let last = label_at(inner_hi);
        if last != current {
            // Either the deviation band switches here, or the keys of the
            // crossing at `b` already count as tied and the tie-break flipped
            // the order a hair before `q*`.
            let (lo, hi) = bisect_label(inner_lo, inner_hi);
            let boundary = match at_b {
                Some(ev) if (ev.q_star - hi).abs() <= SNAP_DISTANCE => RegimeBoundary {
                    q: ev.q_star,
                    cause: BoundaryCause::Crossing(*ev),
                },
                _ => RegimeBoundary {
                    q: 0.5 * (lo + hi),
                    cause: BoundaryCause::DeviationThreshold { bracket: (lo, hi) },
                },
            };
            out.push((boundary, last));
            current = last;
        }
    }
    let end = label_at(g_hi);
    if end != current {
        // the switch sits on g_hi itself
        let cause = inside
            .iter()
            .rev()
            .find(|c| c.q_star == g_hi)
            .map(|c| BoundaryCause::Crossing(**c))
            .unwrap_or(BoundaryCause::DeviationThreshold {
                bracket: (g_hi, g_hi),
            });
        out.push((RegimeBoundary { q: g_hi, cause }, end));
    }
    out
}

pub fn validate_scan(q_lo: f64, q_hi: f64, step: f64) -> Result<()> {
    let ok = q_lo.is_finite()
        && q_hi.is_finite()
        && step.is_finite()
        && q_lo > 0.0
        && q_lo < q_hi
        && q_hi <= MAX_SCAN_Q
        && step > 0.0
        && step <= MAX_SCAN_STEP;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidScan {
            lo: q_lo,
            hi: q_hi,
            step,
        })
    }
}

/// Partitions `[q_lo, q_hi]` into regimes on a grid of spacing `step`.
pub fn classify_regimes(q_lo: f64, q_hi: f64, step: f64) -> Result<RegimeProfile> {
    validate_scan(q_lo, q_hi, step)?;
    let grid = scan_grid(q_lo, q_hi, step);

    let points: Vec<PointClassification> = grid
        .par_iter()
        .map(|&q| classify_point(Deformation::new(q).expect("validated range")))
        .collect();
    let crossings = grid_crossings(&grid, &regime_pairs())?;

    let mut boundaries: Vec<RegimeBoundary> = Vec::new();
    let mut spans: Vec<(f64, RegimeLabel)> = vec![(q_lo, points[0].label)];
    for (i, w) in points.windows(2).enumerate() {
        if w[0].label == w[1].label {
            continue;
        }
        for (boundary, label) in refine_cell(grid[i], grid[i + 1], &crossings) {
            if label != spans.last().unwrap().1 {
                spans.push((boundary.q, label));
                boundaries.push(boundary);
            }
        }
    }

    let intervals = spans
        .iter()
        .enumerate()
        .map(|(k, &(lo, label))| {
            let hi = spans.get(k + 1).map_or(q_hi, |s| s.0);
            let witness = points
                .iter()
                .find(|p| lo < p.q && p.q < hi && p.label == label)
                .or_else(|| {
                    points
                        .iter()
                        .find(|p| lo <= p.q && p.q <= hi && p.label == label)
                })
                .map(|p| p.witness.clone())
                .unwrap_or_else(|| {
                    classify_point(Deformation::new(0.5 * (lo + hi)).expect("positive")).witness
                });
            RegimeInterval {
                q_lo: lo,
                q_hi: hi,
                label,
                witness,
            }
        })
        .collect();

    Ok(RegimeProfile {
        q_lo,
        q_hi,
        step,
        intervals,
        boundaries,
        crossings,
        recommended_q: RecommendedQ::default(),
    })
}
