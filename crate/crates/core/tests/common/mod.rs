//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use gadget_forge::division::{build_division, DivisionPlan};
use gadget_forge::first::{admissible_range, build_first, default_abe, FirstParams};
use gadget_forge::{validate, Angle, CreasePattern, Fold, GadgetSpec, Side};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// α and β uniform on (0, π), δ uniform on [0, min(β, π/2)), rejected until
/// the gadget validates.
pub fn sample_valid_spec(rng: &mut ChaCha8Rng) -> GadgetSpec {
    loop {
        let alpha = rng.gen_range(1e-3..PI - 1e-3);
        let bl = rng.gen_range(1e-3..PI - 1e-3);
        let br = rng.gen_range(1e-3..PI - 1e-3);
        let dl = rng.gen_range(0.0..bl.min(PI / 2.0));
        let dr = rng.gen_range(0.0..br.min(PI / 2.0));
        let s = GadgetSpec::new(Angle::from_rad(alpha), Angle::from_rad(bl), Angle::from_rad(br))
            .with_deltas(Angle::from_rad(dl), Angle::from_rad(dr));
        if validate(&s).is_valid() {
            return s;
        }
    }
}

/// As `sample_valid_spec` with both turns zero.
pub fn sample_untwisted_spec(rng: &mut ChaCha8Rng) -> GadgetSpec {
    loop {
        let s = sample_valid_spec(rng).with_deltas(Angle::ZERO, Angle::ZERO);
        if validate(&s).is_valid() {
            return s;
        }
    }
}

/// Flat gadget: α = β_L + β_R.
pub fn sample_flat_spec(rng: &mut ChaCha8Rng) -> GadgetSpec {
    loop {
        let bl = rng.gen_range(0.05..PI / 2.0);
        let br = rng.gen_range(0.05..PI / 2.0);
        let dl = rng.gen_range(0.0..bl.min(PI / 2.0));
        let dr = rng.gen_range(0.0..br.min(PI / 2.0));
        let s = GadgetSpec::new(Angle::from_rad(bl + br), Angle::from_rad(bl), Angle::from_rad(br))
            .with_deltas(Angle::from_rad(dl), Angle::from_rad(dr));
        if validate(&s).is_valid() {
            return s;
        }
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// One assignment table turned into a pattern and its expected labels.
pub struct GoldenCase {
    pub file: &'static str,
    pub build: fn() -> CreasePattern,
}

fn first_with(spec: GadgetSpec, tau: Side, abe: Angle) -> CreasePattern {
    build_first(&spec, FirstParams { tau, abe }).unwrap()
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use gadget_forge::cheng::build_cheng;
    use gadget_forge::onepleat::build_onepleat;
    use gadget_forge::second::build_second;
    use gadget_forge::third::build_third;
    vec![
        GoldenCase { file: "onepleat_tau_L", build: || build_onepleat(&GadgetSpec::cube(), Side::L).unwrap() },
        GoldenCase {
            file: "cheng_tau_L_on_ridge",
            build: || build_cheng(&GadgetSpec::from_degrees(100.0, 60.0, 110.0, 20.0, 5.0), Side::L).unwrap(),
        },
        GoldenCase {
            file: "cheng_tau_L_on_pleat",
            build: || build_cheng(&GadgetSpec::from_degrees(100.0, 85.0, 85.0, 12.0, 12.0), Side::L).unwrap(),
        },
        GoldenCase { file: "third", build: || build_third(&GadgetSpec::cube()).unwrap() },
        GoldenCase { file: "second", build: || build_second(&GadgetSpec::cube(), None).unwrap() },
        GoldenCase {
            file: "first_tau_L_delta0_at_M2",
            build: || {
                let s = GadgetSpec::cube();
                first_with(s, Side::L, default_abe(&s, Side::L))
            },
        },
        GoldenCase {
            file: "first_tau_L_between_m1_m2",
            build: || first_with(GadgetSpec::from_degrees(140.0, 60.0, 100.0, 5.0, 3.0), Side::L, Angle::from_deg(122.0)),
        },
        GoldenCase {
            file: "first_tau_L_above_m2",
            build: || first_with(GadgetSpec::from_degrees(140.0, 60.0, 100.0, 5.0, 3.0), Side::L, Angle::from_deg(125.0)),
        },
        GoldenCase {
            file: "first_tau_R_above_M1",
            build: || first_with(GadgetSpec::from_degrees(128.0, 60.0, 70.0, 8.0, 2.0), Side::R, Angle::from_deg(166.0)),
        },
        GoldenCase {
            file: "first_tau_R_at_M2",
            build: || {
                let s = GadgetSpec::from_degrees(128.0, 60.0, 70.0, 8.0, 2.0);
                first_with(s, Side::R, admissible_range(&s, Side::R, false).hi)
            },
        },
        GoldenCase {
            file: "division_d2_without_g",
            build: || build_division(&GadgetSpec::cube(), &DivisionPlan::equal(2).unwrap()).unwrap(),
        },
        GoldenCase {
            file: "division_d2_with_g",
            build: || {
                build_division(&GadgetSpec::from_degrees(20.0, 100.0, 100.0, 0.0, 0.0), &DivisionPlan::equal(2).unwrap())
                    .unwrap()
            },
        },
    ]
}

/// "M label" / "V label" lines of a golden file, sorted.
pub fn golden_labels(file: &str) -> Vec<String> {
    let text = std::fs::read_to_string(golden_dir().join(format!("{file}.txt"))).unwrap();
    let mut lines: Vec<String> =
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect();
    lines.sort();
    lines
}

/// The pattern's non-border creases in golden-file form, sorted.
pub fn pattern_labels(cp: &CreasePattern) -> Vec<String> {
    let mut v: Vec<String> = cp
        .label_multiset()
        .into_iter()
        .filter(|(f, _)| *f != Fold::Border)
        .map(|(f, l)| format!("{} {l}", f.code()))
        .collect();
    v.sort();
    v
}
