//! Every inference rule is sound for the three-valued consequence relation,
//! and each bundled derivation establishes a propositionally valid sequent.

use roughlogic::algebra3::{prop_consequence, PropVerdict};
use roughlogic::proofcheck::{check_proof, fixtures, RuleName};
use roughlogic::syntax::{parse, Formula, Signature};

fn sig() -> Signature {
    Signature::with_relations(&[("a", 0), ("b", 0), ("c", 0)]).unwrap()
}

fn assert_valid(premises: &[&str], conclusion: &str) {
    let sig = sig();
    let premises: Vec<Formula> = premises.iter().map(|t| parse(t, &sig).unwrap()).collect();
    let conclusion = parse(conclusion, &sig).unwrap();
    assert_eq!(
        prop_consequence(&premises, &conclusion).unwrap(),
        PropVerdict::Valid,
        "{premises:?} |- {conclusion} has a countermodel"
    );
}

#[test]
fn all_nineteen_rules_are_sound() {
    // Rules that discharge an assumption are rendered with the defined
    // conditional standing in for the subderivation.
    let cases: [(&[&str], &str); 19] = [
        (&["a", "b"], "a & b"),
        (&["a & b"], "a"),
        (&["a & b"], "b"),
        (&["a"], "a | b"),
        (&["b"], "a | b"),
        (&["a | b", "a -> c", "b -> c"], "c"),
        (&["a -> false"], "~a"),
        (&["a", "~a"], "false"),
        (&["false"], "c"),
        (&[], "a | D a"),
        (&[], "~a | ~~a"),
        (&["D a", "D D a"], "false"),
        (&["a", "D a"], "b | ~b"),
        (&["D ~a"], "~~a"),
        (&["D D a"], "~D a"),
        (&[], "a | ~[]a"),
        (&["~a"], "[]~a"),
        (&["~[]~[]a"], "[]a"),
        (&["a", "~[]a"], "b | ~b"),
    ];
    for (premises, conclusion) in cases {
        assert_valid(premises, conclusion);
    }
}

#[test]
fn fixture_sequents_are_propositionally_valid() {
    for fixture in fixtures::all() {
        let sequent = check_proof(&fixture.tree, fixture.system)
            .unwrap_or_else(|e| panic!("{} does not check: {e}", fixture.name));
        let premises: Vec<Formula> = sequent.assumptions.iter().cloned().collect();
        assert_eq!(
            prop_consequence(&premises, &sequent.conclusion).unwrap(),
            PropVerdict::Valid,
            "{} establishes an invalid sequent",
            fixture.name
        );
    }
}

#[test]
fn single_node_edits_change_or_break_a_fixture() {
    for fixture in fixtures::all() {
        let original = check_proof(&fixture.tree, fixture.system).unwrap();

        // Swap the root rule.
        let mut mutated = fixture.tree.clone();
        mutated.rule = if mutated.rule == RuleName::AndI {
            RuleName::OrIl
        } else {
            RuleName::AndI
        };
        match check_proof(&mutated, fixture.system) {
            Err(_) => {}
            Ok(sequent) => assert_ne!(sequent, original, "{}", fixture.name),
        }

        // Negate the root conclusion.
        let mut mutated = fixture.tree.clone();
        mutated.conclusion = Formula::not(mutated.conclusion);
        match check_proof(&mutated, fixture.system) {
            Err(_) => {}
            Ok(sequent) => assert_ne!(sequent, original, "{}", fixture.name),
        }
    }
}
