mod common;

use common::{explicit_key, orb};
use qaufbau::ordering::orbital_universe;
use qaufbau::scan::{classify_point, BoundaryCause, SNAP_DISTANCE};
use qaufbau::{alpha, classify_regimes, find_crossing, Deformation, RegimeLabel};

fn explicit_difference(a: &str, b: &str, q: f64) -> f64 {
    explicit_key(orb(a), q) - explicit_key(orb(b), q)
}

#[test]
fn four_s_three_d_bracket_oracle() {
    // 4s - 3d = 16 - (9 + alpha [2][3]) changes sign between 1.10 and 1.12
    assert!(explicit_difference("4s", "3d", 1.10) < 0.0);
    assert!(explicit_difference("4s", "3d", 1.12) > 0.0);
    let ev = find_crossing(orb("4s"), orb("3d"), 1.0, 1.3)
        .unwrap()
        .unwrap();
    assert!(ev.q_star > 1.11 && ev.q_star < 1.12);
    assert!(ev.residual <= 1e-12 * 16.0);
    let below = explicit_difference("4s", "3d", ev.q_star - 1e-10);
    let above = explicit_difference("4s", "3d", ev.q_star + 1e-10);
    assert!(below < 0.0 && above > 0.0);
}

#[test]
fn every_crossing_carries_a_certificate() {
    let profile = classify_regimes(0.6, 2.0, 0.01).unwrap();
    assert!(!profile.crossings.is_empty());
    for c in &profile.crossings {
        let (a, b) = c.pair;
        let (lo, hi) = c.bracket;
        assert!(
            lo <= c.q_star && c.q_star <= hi && hi - lo <= 1e-13,
            "{a}/{b}"
        );
        let scale = explicit_key(a, c.q_star).max(1.0);
        assert!(
            c.residual <= 1e-12 * scale,
            "{a}/{b} residual {}",
            c.residual
        );
        // exact degeneracies (alpha = 0) have no strict sign change off the root
        if c.residual == 0.0 && alpha(Deformation::new(c.q_star).unwrap()) == 0.0 {
            continue;
        }
        let f = |q: f64| explicit_key(a, q) - explicit_key(b, q);
        assert!(
            f(c.q_star - 1e-10) < 0.0 && f(c.q_star + 1e-10) > 0.0,
            "{a}/{b} at {}",
            c.q_star
        );
    }
}

#[test]
fn profile_structure() {
    let profile = classify_regimes(0.6, 2.0, 0.01).unwrap();
    let iv = &profile.intervals;
    assert_eq!(iv.first().unwrap().q_lo, 0.6);
    assert_eq!(iv.last().unwrap().q_hi, 2.0);
    for w in iv.windows(2) {
        assert_eq!(w[0].q_hi, w[1].q_lo);
        assert!(w[0].q_lo < w[0].q_hi);
        assert_ne!(w[0].label, w[1].label);
    }
    assert_eq!(profile.boundaries.len(), iv.len() - 1);
    for (b, w) in profile.boundaries.iter().zip(iv.windows(2)) {
        assert_eq!(b.q, w[0].q_hi);
        match &b.cause {
            BoundaryCause::Crossing(ev) => {
                assert!((ev.q_star - b.q).abs() <= SNAP_DISTANCE);
                let universe = orbital_universe(7, 3);
                assert!(universe.contains(&ev.pair.0) && universe.contains(&ev.pair.1));
            }
            BoundaryCause::DeviationThreshold { bracket } => {
                // only the Madelung tolerance band moves without a crossing
                assert!(
                    w[0].label == RegimeLabel::MadelungLike
                        || w[1].label == RegimeLabel::MadelungLike
                );
                assert!(bracket.1 - bracket.0 <= 1e-12);
            }
        }
    }
    for i in iv {
        if i.label == RegimeLabel::Hydrogenlike {
            assert!(alpha(Deformation::new(i.q_lo).unwrap()) >= 0.0);
            assert!(alpha(Deformation::new(i.q_hi).unwrap()) >= 0.0);
        }
    }
}

#[test]
fn endpoint_anchors() {
    let profile = classify_regimes(0.6, 2.0, 0.01).unwrap();
    assert_eq!(profile.label_at(1.2), Some(RegimeLabel::IonLike));
    assert_eq!(profile.label_at(1.7), Some(RegimeLabel::Hydrogenlike));
    assert_eq!(profile.label_at(0.85), Some(RegimeLabel::MadelungLike));
    assert_eq!(profile.label_at(1.9), Some(RegimeLabel::Inverted));
}

#[test]
fn ion_interval_contains_stated_range() {
    let profile = classify_regimes(1.0, 1.5, 0.01).unwrap();
    let ion: Vec<_> = profile
        .intervals
        .iter()
        .filter(|i| i.label == RegimeLabel::IonLike)
        .collect();
    assert_eq!(ion.len(), 1);
    assert!(ion[0].q_lo <= 1.15 + 0.01 && ion[0].q_hi >= 1.30 - 0.01);
    assert!(ion[0].witness.exact_match);
    // the left edge is the 4s/3d exchange
    match &profile.boundaries[0].cause {
        BoundaryCause::Crossing(ev) => {
            assert_eq!(
                (ev.pair.0.to_string(), ev.pair.1.to_string()),
                ("4s".into(), "3d".into())
            )
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn stated_ranges_are_single_intervals() {
    let ion = classify_regimes(1.15, 1.30, 0.01).unwrap();
    assert_eq!(ion.intervals.len(), 1);
    assert_eq!(ion.intervals[0].label, RegimeLabel::IonLike);

    let hydrogen = classify_regimes(1.6, 1.8, 0.01).unwrap();
    assert_eq!(hydrogen.intervals.len(), 1);
    assert_eq!(hydrogen.intervals[0].label, RegimeLabel::Hydrogenlike);
}

#[test]
fn grid_points_agree_with_profile() {
    let profile = classify_regimes(0.8, 2.0, 0.02).unwrap();
    for k in 0..=60 {
        let q = 0.8 + 0.02 * k as f64;
        let point = classify_point(Deformation::new(q).unwrap()).label;
        let near_boundary = profile.boundaries.iter().any(|b| (b.q - q).abs() < 1e-6);
        if !near_boundary {
            assert_eq!(profile.label_at(q), Some(point), "q={q}");
        }
    }
}

#[test]
fn scan_is_deterministic() {
    let a = classify_regimes(0.8, 1.9, 0.01).unwrap();
    let b = classify_regimes(0.8, 1.9, 0.01).unwrap();
    assert_eq!(a, b);
}

#[test]
fn high_l_breaks_hydrogenlike_claim_at_1_6() {
    // the regime labels use l <= 3; with l = 5 shells interleave at q = 1.6
    let d = Deformation::new(1.6).unwrap();
    let seq = qaufbau::generate_sequence(d, 9, 5).unwrap();
    assert!(!qaufbau::scan::shells_hydrogenlike(&seq));
}
