//! One test per entry in the acceptance battery.  Each prints the same
//! pass/fail line as `roughlogic suite` and fails if its criterion fails.

use roughlogic_cli::suite::{self, CriterionResult};

fn assert_passes(result: CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed(), "{}", result.line());
}

#[test]
fn criterion_01_algebra_tables_and_identities() {
    assert_passes(suite::criterion_1());
}

#[test]
fn criterion_02_rule_soundness() {
    assert_passes(suite::criterion_2());
}

#[test]
fn criterion_03_failure_of_contraposition_for_d() {
    assert_passes(suite::criterion_3());
}

#[test]
fn criterion_04_modality_collapse() {
    assert_passes(suite::criterion_4());
}

#[test]
fn criterion_05_translations_preserve_meaning() {
    assert_passes(suite::criterion_5());
}

#[test]
fn criterion_06_transfer_biconditionals() {
    assert_passes(suite::criterion_6());
}

#[test]
fn criterion_07_rough_and_two_node_search_agree() {
    assert_passes(suite::criterion_7());
}

#[test]
fn criterion_08_derivation_fixtures_and_mutations() {
    assert_passes(suite::criterion_8());
}

#[test]
fn criterion_09_forcing_is_persistent() {
    assert_passes(suite::criterion_9());
}

#[test]
fn criterion_10_printing_and_parsing_invert() {
    assert_passes(suite::criterion_10());
}
