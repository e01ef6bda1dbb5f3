//! Acceptance criteria 1-11 at desk scale: q in {5, 7, 11, 13} exhaustively,
//! q in {17, 19, 23, 25, 49} on 200 seeded configurations plus one
//! representative per signature class. All comparisons are exact.

use std::sync::OnceLock;

use fermat_slice::verify::{self, BatteryOptions, CriterionOutcome, FieldRun, DESK_SCALE};

fn options() -> BatteryOptions {
    BatteryOptions {
        fields: DESK_SCALE.to_vec(),
        probe_depth: 3,
        ..BatteryOptions::default()
    }
}

fn runs() -> &'static [FieldRun] {
    static RUNS: OnceLock<Vec<FieldRun>> = OnceLock::new();
    RUNS.get_or_init(|| {
        let opts = options();
        opts.fields
            .iter()
            .map(|&(p, h)| verify::run_field(p, h, &opts).expect("field analysis"))
            .collect()
    })
}

fn report(outcome: CriterionOutcome) {
    println!("{outcome}");
    for note in &outcome.notes {
        println!("    note: {note}");
    }
    for failure in &outcome.failures {
        println!("    failure: {failure}");
    }
    assert!(outcome.passed(), "{outcome}");
}

#[test]
fn criterion_01_point_counts() {
    report(verify::point_counts(runs()));
}

#[test]
fn criterion_02_case_formulas() {
    report(verify::case_formulas(runs()));
}

#[test]
fn criterion_03_diagonal_oracle() {
    report(verify::diagonal_oracle(&options().fields).unwrap());
}

#[test]
fn criterion_04_linear_components() {
    report(verify::linear_components(runs()));
}

#[test]
fn criterion_05_disjointness() {
    report(verify::disjointness(runs()));
}

#[test]
fn criterion_06_main_theorem() {
    report(verify::main_theorem(runs(), options().limits).unwrap());
}

#[test]
fn criterion_07_stohr_voloch() {
    report(verify::stohr_voloch(runs()).unwrap());
}

#[test]
fn criterion_08_frobenius() {
    report(verify::frobenius(runs()).unwrap());
}

#[test]
fn criterion_09_nonsingularity() {
    report(verify::nonsingularity(runs(), options().probe_depth).unwrap());
}

#[test]
fn criterion_10_thresholds() {
    report(verify::thresholds(runs()));
}

#[test]
fn criterion_11_convention_independence() {
    report(verify::convention_independence(runs(), options().limits).unwrap());
}
