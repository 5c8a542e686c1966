//! Acceptance suite: runs every verification criterion at full range and
//! prints one pass/fail line per criterion.
//!
//! Criteria 1 and 8 share the real sweep, so they are driven together.

use quadlog_cli::verify;

fn assert_report(r: &verify::CriterionReport) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_1_and_8_real_sweep() {
    let (c1, outcomes) = verify::criterion_1_cross_route(false);
    assert_report(&c1);
    let c8 = verify::criterion_8_heuristic(&outcomes, false);
    assert_report(&c8);
}

#[test]
fn criterion_2_imaginary_consistency() {
    assert_report(&verify::criterion_2_imaginary(false));
}

#[test]
fn criterion_3_knot_oracle() {
    assert_report(&verify::criterion_3_knot_oracle(false));
}

#[test]
fn criterion_4_chevalley_pins() {
    assert_report(&verify::criterion_4_chevalley());
}

#[test]
fn criterion_5_padic_core() {
    assert_report(&verify::criterion_5_padic(false));
}

#[test]
fn criterion_6_wcl_robustness() {
    assert_report(&verify::criterion_6_wcl_robustness(false));
}

#[test]
fn criterion_7_class_group_ground_truth() {
    assert_report(&verify::criterion_7_class_numbers(false));
}
