//! Natural-deduction proof checking for the propositional fragments of the
//! two systems.
//!
//! A derivation is a tree of rule applications.  Assumptions are `hyp`
//! leaves; a leaf may carry an integer label, in which case some rule
//! below it (`negI`, or either minor branch of `orE`) must discharge that
//! label, and every leaf sharing the label must state the formula the
//! discharging rule expects.  Unlabeled leaves are the open assumptions of
//! the derivation.  Each discharging rule application must use a fresh
//! label, and vacuous discharge is allowed.
//!
//! The elimination rules for the dual operator (`dE`, `dEprime`,
//! `dEclosed`) and for the negated necessity operator (`negBoxE`) carry a
//! side condition: the minor premise must be a closed subderivation — no
//! open assumptions and no labels waiting on a discharge below.
//!
//! Each system fixes a rule set and a language: the dual-operator system
//! rejects the necessity operator and vice versa.  Conditionals are
//! notation and must be expanded before checking.

pub mod fixtures;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::Formula;

/// Which rule set and language a derivation is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofSystem {
    /// Language with the dual operator `D`.
    D,
    /// Language with the necessity operator `[]`.
    Box,
}

impl fmt::Display for ProofSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofSystem::D => f.write_str("d"),
            ProofSystem::Box => f.write_str("box"),
        }
    }
}

macro_rules! rules {
    ($(($variant:ident, $name:literal, $premises:literal)),* $(,)?) => {
        /// The rule applied at one node of a derivation.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum RuleName {
            $($variant),*
        }

        impl RuleName {
            pub const ALL: &'static [RuleName] = &[$(RuleName::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(RuleName::$variant => $name),*
                }
            }

            pub fn parse(s: &str) -> Option<RuleName> {
                match s {
                    $($name => Some(RuleName::$variant),)*
                    _ => None,
                }
            }

            pub fn premise_count(self) -> usize {
                match self {
                    $(RuleName::$variant => $premises),*
                }
            }
        }
    };
}

rules![
    (Hyp, "hyp", 0),
    (AndI, "andI", 2),
    (AndEl, "andEl", 1),
    (AndEr, "andEr", 1),
    (OrIl, "orIl", 1),
    (OrIr, "orIr", 1),
    (OrE, "orE", 3),
    (NegI, "negI", 1),
    (NegE, "negE", 2),
    (Easq, "easq", 1),
    (DI, "dI", 0),
    (DE, "dE", 2),
    (DEprime, "dEprime", 2),
    (DEclosed, "dEclosed", 1),
    (S, "S", 0),
    (CS, "cS", 2),
    (Sprime, "Sprime", 1),
    (CSprime, "cSprime", 1),
    (Reg, "Reg", 2),
    (NegBoxI, "negBoxI", 0),
    (NegBoxE, "negBoxE", 2),
    (BoxS, "boxS", 1),
    (BoxCS, "boxCS", 1),
    (BoxReg, "boxReg", 2),
];

impl RuleName {
    /// Is the rule available in the given system?
    pub fn in_system(self, system: ProofSystem) -> bool {
        use RuleName::*;
        let dual_only = matches!(
            self,
            DI | DE | DEprime | DEclosed | S | CS | Sprime | CSprime | Reg
        );
        let box_only = matches!(self, NegBoxI | NegBoxE | BoxS | BoxCS | BoxReg);
        match system {
            ProofSystem::D => !box_only,
            ProofSystem::Box => !dual_only,
        }
    }

    /// Does the rule discharge assumptions labeled by its node?
    pub fn discharges(self) -> bool {
        matches!(self, RuleName::NegI | RuleName::OrE)
    }

    /// Premise indices that must be closed subderivations.
    fn closed_premises(self) -> &'static [usize] {
        match self {
            RuleName::DE | RuleName::DEprime | RuleName::NegBoxE => &[1],
            RuleName::DEclosed => &[0],
            _ => &[],
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One node of a derivation: a rule whose premises are subderivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: RuleName,
    pub conclusion: Formula,
    pub premises: Vec<ProofTree>,
    pub label: Option<u64>,
}

impl ProofTree {
    pub fn new(rule: RuleName, conclusion: Formula, premises: Vec<ProofTree>) -> Self {
        ProofTree {
            rule,
            conclusion,
            premises,
            label: None,
        }
    }

    pub fn with_label(mut self, label: u64) -> Self {
        self.label = Some(label);
        self
    }

    /// An unlabeled assumption leaf.
    pub fn hyp(formula: Formula) -> Self {
        ProofTree::new(RuleName::Hyp, formula, Vec::new())
    }

    /// An assumption leaf to be discharged by the rule carrying `label`.
    pub fn hyp_labeled(label: u64, formula: Formula) -> Self {
        ProofTree::hyp(formula).with_label(label)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::node_count).sum::<usize>()
    }
}

/// What a checked derivation establishes: its open assumptions entail its
/// conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub assumptions: BTreeSet<Formula>,
    pub conclusion: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.assumptions {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if !first {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

/// Why a node fails to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// The rule does not belong to the system the tree is checked in.
    WrongSystem(RuleName),
    /// The conclusion uses an operator outside the system's language.
    WrongLanguage(ProofSystem),
    /// The conclusion contains an unexpanded `->` or `<->`.
    UnexpandedConditional,
    MissingLabel(RuleName),
    /// Only assumption leaves and discharging rules may carry labels.
    UnexpectedLabel(RuleName),
    /// Two discharging rules share a label.
    DuplicateLabel(u64),
    /// A labeled assumption with no discharging rule below it in scope.
    DanglingLabel(u64),
    /// A labeled assumption states a different formula than the
    /// discharging rule expects.
    DischargeMismatch {
        label: u64,
        expected: Formula,
        found: Formula,
    },
    PremiseCount {
        rule: RuleName,
        expected: usize,
        found: usize,
    },
    SchemaMismatch {
        rule: RuleName,
        detail: &'static str,
    },
    /// The indicated minor premise must be a closed subderivation.
    NotClosed(RuleName),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::WrongSystem(r) => write!(f, "rule {r} is not part of this system"),
            Reason::WrongLanguage(s) => {
                write!(f, "formula uses an operator outside the {s} language")
            }
            Reason::UnexpandedConditional => {
                f.write_str("conditionals are notation; expand them before checking")
            }
            Reason::MissingLabel(r) => write!(f, "rule {r} must carry a discharge label"),
            Reason::UnexpectedLabel(r) => write!(f, "rule {r} cannot carry a label"),
            Reason::DuplicateLabel(l) => write!(f, "label {l} is used by two discharging rules"),
            Reason::DanglingLabel(l) => {
                write!(f, "assumption label {l} is never discharged in scope")
            }
            Reason::DischargeMismatch {
                label,
                expected,
                found,
            } => write!(
                f,
                "assumptions labeled {label} must state {expected}, found {found}"
            ),
            Reason::PremiseCount {
                rule,
                expected,
                found,
            } => write!(f, "rule {rule} takes {expected} premises, found {found}"),
            Reason::SchemaMismatch { rule, detail } => write!(f, "rule {rule}: {detail}"),
            Reason::NotClosed(r) => {
                write!(f, "rule {r} needs a closed minor subderivation")
            }
        }
    }
}

/// A rejection, locating the offending node by premise indices from the
/// root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub reason: Reason,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "at the root: {}", self.reason)
        } else {
            let mut path = String::new();
            for (i, step) in self.path.iter().enumerate() {
                if i > 0 {
                    path.push('.');
                }
                path.push_str(&alloc::format!("{step}"));
            }
            write!(f, "at node {path}: {}", self.reason)
        }
    }
}

impl core::error::Error for CheckError {}

/// The open assumptions of a derivation: formulas of assumption leaves not
/// discharged by a rule below them, in left-to-right leaf order.  Performs
/// no validation.
pub fn open_assumptions(tree: &ProofTree) -> Vec<Formula> {
    let mut open = Vec::new();
    collect_open(tree, &BTreeSet::new(), &mut open);
    open
}

fn collect_open(tree: &ProofTree, active: &BTreeSet<u64>, open: &mut Vec<Formula>) {
    if tree.rule == RuleName::Hyp {
        match tree.label {
            Some(l) if active.contains(&l) => {}
            _ => open.push(tree.conclusion.clone()),
        }
        return;
    }
    for (i, premise) in tree.premises.iter().enumerate() {
        let discharging = match tree.rule {
            RuleName::NegI => i == 0,
            RuleName::OrE => i == 1 || i == 2,
            _ => false,
        };
        if discharging {
            if let Some(l) = tree.label {
                let mut inner = active.clone();
                inner.insert(l);
                collect_open(premise, &inner, open);
                continue;
            }
        }
        collect_open(premise, active, open);
    }
}

/// Validates a derivation against a system and returns the sequent it
/// establishes.
pub fn check_proof(tree: &ProofTree, system: ProofSystem) -> Result<Sequent, CheckError> {
    let mut labels = BTreeSet::new();
    check_label_uniqueness(tree, &mut Vec::new(), &mut labels)?;
    let mut open = Vec::new();
    check_node(tree, system, &BTreeMap::new(), &mut Vec::new(), &mut open)?;
    Ok(Sequent {
        assumptions: open.into_iter().collect(),
        conclusion: tree.conclusion.clone(),
    })
}

fn check_label_uniqueness(
    tree: &ProofTree,
    path: &mut Vec<usize>,
    seen: &mut BTreeSet<u64>,
) -> Result<(), CheckError> {
    if tree.rule.discharges() {
        if let Some(l) = tree.label {
            if !seen.insert(l) {
                return Err(CheckError {
                    path: path.clone(),
                    reason: Reason::DuplicateLabel(l),
                });
            }
        }
    }
    for (i, premise) in tree.premises.iter().enumerate() {
        path.push(i);
        check_label_uniqueness(premise, path, seen)?;
        path.pop();
    }
    Ok(())
}

fn contains_conditional(formula: &Formula) -> bool {
    match formula {
        Formula::Bottom | Formula::Atom(..) => false,
        Formula::Imp(..) | Formula::Iff(..) => true,
        Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => contains_conditional(a),
        Formula::And(a, b) | Formula::Or(a, b) => {
            contains_conditional(a) || contains_conditional(b)
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) => contains_conditional(a),
    }
}

fn fits_language(formula: &Formula, system: ProofSystem) -> bool {
    match system {
        ProofSystem::D => !formula.uses_box(),
        ProofSystem::Box => !formula.uses_dual(),
    }
}

fn fail(path: &[usize], reason: Reason) -> CheckError {
    CheckError {
        path: path.to_vec(),
        reason,
    }
}

fn schema(path: &[usize], rule: RuleName, detail: &'static str) -> CheckError {
    fail(path, Reason::SchemaMismatch { rule, detail })
}

fn check_node(
    node: &ProofTree,
    system: ProofSystem,
    active: &BTreeMap<u64, Formula>,
    path: &mut Vec<usize>,
    open: &mut Vec<Formula>,
) -> Result<(), CheckError> {
    use Formula as F;
    let rule = node.rule;
    if !rule.in_system(system) {
        return Err(fail(path, Reason::WrongSystem(rule)));
    }
    if !fits_language(&node.conclusion, system) {
        return Err(fail(path, Reason::WrongLanguage(system)));
    }
    if contains_conditional(&node.conclusion) {
        return Err(fail(path, Reason::UnexpandedConditional));
    }
    match (rule.discharges(), rule == RuleName::Hyp, node.label) {
        (true, _, None) => return Err(fail(path, Reason::MissingLabel(rule))),
        (false, false, Some(_)) => return Err(fail(path, Reason::UnexpectedLabel(rule))),
        _ => {}
    }
    if node.premises.len() != rule.premise_count() {
        return Err(fail(
            path,
            Reason::PremiseCount {
                rule,
                expected: rule.premise_count(),
                found: node.premises.len(),
            },
        ));
    }

    let c = &node.conclusion;
    let prem = |i: usize| &node.premises[i].conclusion;

    // Scope extensions for discharged assumptions, per premise.
    let mut scopes: Vec<Option<Formula>> = alloc::vec![None; node.premises.len()];

    match rule {
        RuleName::Hyp => {
            match node.label {
                Some(l) => match active.get(&l) {
                    Some(expected) => {
                        if c != expected {
                            return Err(fail(
                                path,
                                Reason::DischargeMismatch {
                                    label: l,
                                    expected: expected.clone(),
                                    found: c.clone(),
                                },
                            ));
                        }
                    }
                    None => return Err(fail(path, Reason::DanglingLabel(l))),
                },
                None => open.push(c.clone()),
            }
            return Ok(());
        }
        RuleName::AndI => {
            if *c != F::and(prem(0).clone(), prem(1).clone()) {
                return Err(schema(path, rule, "conclusion must conjoin the premises"));
            }
        }
        RuleName::AndEl => match prem(0) {
            F::And(a, _) if **a == *c => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "premise must be a conjunction with the conclusion on the left",
                ))
            }
        },
        RuleName::AndEr => match prem(0) {
            F::And(_, b) if **b == *c => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "premise must be a conjunction with the conclusion on the right",
                ))
            }
        },
        RuleName::OrIl => match c {
            F::Or(a, _) if **a == *prem(0) => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must be a disjunction with the premise on the left",
                ))
            }
        },
        RuleName::OrIr => match c {
            F::Or(_, b) if **b == *prem(0) => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must be a disjunction with the premise on the right",
                ))
            }
        },
        RuleName::OrE => match prem(0).clone() {
            F::Or(a, b) => {
                if *prem(1) != *c || *prem(2) != *c {
                    return Err(schema(
                        path,
                        rule,
                        "both minor premises must conclude the conclusion",
                    ));
                }
                scopes[1] = Some(*a);
                scopes[2] = Some(*b);
            }
            _ => return Err(schema(path, rule, "major premise must be a disjunction")),
        },
        RuleName::NegI => match c {
            F::Not(a) => {
                if *prem(0) != F::Bottom {
                    return Err(schema(path, rule, "premise must conclude falsum"));
                }
                scopes[0] = Some((**a).clone());
            }
            _ => return Err(schema(path, rule, "conclusion must be a negation")),
        },
        RuleName::NegE => {
            if *prem(1) != F::not(prem(0).clone()) {
                return Err(schema(
                    path,
                    rule,
                    "second premise must negate the first",
                ));
            }
            if *c != F::Bottom {
                return Err(schema(path, rule, "conclusion must be falsum"));
            }
        }
        RuleName::Easq => {
            if *prem(0) != F::Bottom {
                return Err(schema(path, rule, "premise must be falsum"));
            }
        }
        RuleName::DI => match c {
            F::Or(a, d) if **d == F::dual((**a).clone()) => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must disjoin a formula with its dual",
                ))
            }
        },
        RuleName::DE => match (prem(0), prem(1)) {
            (F::Dual(a), F::Or(a2, b)) if a2 == a && **b == *c => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "premises must be a dual and a disjunction of its body with the conclusion",
                ))
            }
        },
        RuleName::DEprime => match prem(0) {
            F::Dual(a) if **a == *prem(1) && *c == F::Bottom => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "premises must be the dual of the closed premise, concluding falsum",
                ))
            }
        },
        RuleName::DEclosed => {
            if *c != F::not(F::dual(prem(0).clone())) {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must negate the dual of the closed premise",
                ));
            }
        }
        RuleName::S => {
            let good = match c {
                F::Or(l, r) => matches!(&**l, F::Not(a) if **r == F::not(F::not((**a).clone()))),
                _ => false,
            };
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must disjoin a negation with its double negation",
                ));
            }
        }
        RuleName::CS => {
            let good = matches!(prem(0), F::Dual(_))
                && *prem(1) == F::dual(prem(0).clone())
                && *c == F::Bottom;
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premises must be a dual and its dual, concluding falsum",
                ));
            }
        }
        RuleName::Sprime => {
            let good = match prem(0) {
                F::Dual(n) => match &**n {
                    F::Not(a) => *c == F::not(F::not((**a).clone())),
                    _ => false,
                },
                _ => false,
            };
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premise must be a dualized negation, conclusion its double negation",
                ));
            }
        }
        RuleName::CSprime => {
            let good = match prem(0) {
                F::Dual(d) => {
                    matches!(&**d, F::Dual(_)) && *c == F::not((**d).clone())
                }
                _ => false,
            };
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premise must be a doubled dual, conclusion the negated dual",
                ));
            }
        }
        RuleName::Reg => {
            let shape = matches!(c, F::Or(b, n) if **n == F::not((**b).clone()));
            if *prem(1) != F::dual(prem(0).clone()) || !shape {
                return Err(schema(
                    path,
                    rule,
                    "premises must be a formula and its dual, concluding excluded middle",
                ));
            }
        }
        RuleName::NegBoxI => match c {
            F::Or(a, r) if **r == F::not(F::nec((**a).clone())) => {}
            _ => {
                return Err(schema(
                    path,
                    rule,
                    "conclusion must disjoin a formula with its negated necessity",
                ))
            }
        },
        RuleName::NegBoxE => {
            let good = match (prem(0), prem(1)) {
                (F::Not(boxed), F::Or(a2, b)) => {
                    matches!(&**boxed, F::Box(a) if a2 == a) && **b == *c
                }
                _ => false,
            };
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premises must be a negated necessity and a disjunction of its body with the conclusion",
                ));
            }
        }
        RuleName::BoxS => {
            let good = matches!(prem(0), F::Not(_)) && *c == F::nec(prem(0).clone());
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premise must be a negation, conclusion its necessity",
                ));
            }
        }
        RuleName::BoxCS => {
            let good = match c {
                F::Box(a) => {
                    *prem(0) == F::not(F::nec(F::not(F::nec((**a).clone()))))
                }
                _ => false,
            };
            if !good {
                return Err(schema(
                    path,
                    rule,
                    "premise must be the doubly negated necessity pattern of the conclusion",
                ));
            }
        }
        RuleName::BoxReg => {
            let shape = matches!(c, F::Or(b, n) if **n == F::not((**b).clone()));
            if *prem(1) != F::not(F::nec(prem(0).clone())) || !shape {
                return Err(schema(
                    path,
                    rule,
                    "premises must be a formula and its negated necessity, concluding excluded middle",
                ));
            }
        }
    }

    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        if rule.closed_premises().contains(&i) {
            // Strict side condition: the subderivation must stand alone.
            let mut inner_open = Vec::new();
            check_node(premise, system, &BTreeMap::new(), path, &mut inner_open)?;
            if !inner_open.is_empty() {
                path.pop();
                return Err(fail(path, Reason::NotClosed(rule)));
            }
        } else if let Some(formula) = scopes[i].take() {
            let label = node.label.expect("discharging rules carry labels");
            let mut inner = active.clone();
            inner.insert(label, formula);
            check_node(premise, system, &inner, path, open)?;
        } else {
            check_node(premise, system, active, path, open)?;
        }
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra3::{prop_consequence, PropVerdict};
    use crate::syntax::{expand_derived, parse_inferring, Formula, Signature};
    use alloc::vec;

    fn f(text: &str) -> Formula {
        let mut sig = Signature::new();
        parse_inferring(text, &mut sig).unwrap()
    }

    fn node(rule: RuleName, text: &str, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree::new(rule, f(text), premises)
    }

    #[test]
    fn a_single_assumption_proves_itself() {
        let t = ProofTree::hyp(f("p"));
        let sequent = check_proof(&t, ProofSystem::D).unwrap();
        assert_eq!(sequent.assumptions, [f("p")].into_iter().collect());
        assert_eq!(sequent.conclusion, f("p"));
        assert_eq!(alloc::format!("{sequent}"), "p |- p");
    }

    #[test]
    fn conjunction_and_disjunction_rules() {
        let t = node(
            RuleName::AndI,
            "p & (q | q)",
            vec![
                ProofTree::hyp(f("p")),
                node(RuleName::OrIl, "q | q", vec![ProofTree::hyp(f("q"))]),
            ],
        );
        let sequent = check_proof(&t, ProofSystem::D).unwrap();
        assert_eq!(
            sequent.assumptions,
            [f("p"), f("q")].into_iter().collect()
        );

        let bad = node(
            RuleName::AndEl,
            "q",
            vec![ProofTree::hyp(f("p & q"))],
        );
        let err = check_proof(&bad, ProofSystem::D).unwrap_err();
        assert!(matches!(err.reason, Reason::SchemaMismatch { rule: RuleName::AndEl, .. }));
        let ok = node(RuleName::AndEr, "q", vec![ProofTree::hyp(f("p & q"))]);
        assert!(check_proof(&ok, ProofSystem::D).is_ok());
    }

    #[test]
    fn fixtures_all_check_and_report_their_sequents() {
        for fixture in fixtures::all() {
            let sequent = check_proof(&fixture.tree, fixture.system)
                .unwrap_or_else(|e| panic!("{}: {e}", fixture.name));
            assert_eq!(
                sequent.assumptions,
                fixture.assumptions.iter().cloned().collect::<BTreeSet<_>>(),
                "assumptions of {}",
                fixture.name
            );
            assert_eq!(sequent.conclusion, fixture.conclusion, "conclusion of {}", fixture.name);
            assert_eq!(
                open_assumptions(&fixture.tree),
                fixture.assumptions,
                "open assumption order of {}",
                fixture.name
            );
        }
    }

    #[test]
    fn fixture_sequents_are_semantically_valid() {
        for fixture in fixtures::all() {
            let premises: Vec<Formula> =
                fixture.assumptions.iter().map(expand_derived).collect();
            let conclusion = expand_derived(&fixture.conclusion);
            assert_eq!(
                prop_consequence(&premises, &conclusion).unwrap(),
                PropVerdict::Valid,
                "sequent of {}",
                fixture.name
            );
        }
    }

    #[test]
    fn mismatched_binary_costrength_is_rejected() {
        // Premises D p and D D q do not instantiate the schema.
        let t = node(
            RuleName::CS,
            "false",
            vec![ProofTree::hyp(f("D p")), ProofTree::hyp(f("D D q"))],
        );
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert!(matches!(err.reason, Reason::SchemaMismatch { rule: RuleName::CS, .. }));
    }

    #[test]
    fn cross_system_rules_are_rejected() {
        let t = node(RuleName::DI, "p | D p", vec![]);
        assert!(check_proof(&t, ProofSystem::D).is_ok());
        let err = check_proof(&t, ProofSystem::Box).unwrap_err();
        assert_eq!(err.reason, Reason::WrongSystem(RuleName::DI));

        let t = node(RuleName::NegBoxI, "p | ~[]p", vec![]);
        assert!(check_proof(&t, ProofSystem::Box).is_ok());
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::WrongSystem(RuleName::NegBoxI));
    }

    #[test]
    fn language_and_conditionals_are_policed() {
        let t = ProofTree::hyp(f("[]p"));
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::WrongLanguage(ProofSystem::D));

        let t = ProofTree::hyp(f("D p"));
        let err = check_proof(&t, ProofSystem::Box).unwrap_err();
        assert_eq!(err.reason, Reason::WrongLanguage(ProofSystem::Box));

        let t = ProofTree::hyp(f("p -> q"));
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::UnexpandedConditional);
    }

    #[test]
    fn label_bookkeeping_is_enforced() {
        // negI without a label.
        let t = node(
            RuleName::NegI,
            "~p",
            vec![node(
                RuleName::NegE,
                "false",
                vec![ProofTree::hyp_labeled(1, f("p")), ProofTree::hyp(f("~p"))],
            )],
        );
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::MissingLabel(RuleName::NegI));

        let ok = t.clone().with_label(1);
        let sequent = check_proof(&ok, ProofSystem::D).unwrap();
        assert_eq!(sequent.assumptions, [f("~p")].into_iter().collect());

        // Discharged assumption with the wrong formula.
        let mut wrong = ok.clone();
        wrong.premises[0].premises[0].conclusion = f("q");
        let err = check_proof(&wrong, ProofSystem::D).unwrap_err();
        assert!(matches!(err.reason, Reason::SchemaMismatch { rule: RuleName::NegE, .. }));

        // A label nobody discharges.
        let dangling = ProofTree::hyp_labeled(7, f("p"));
        let err = check_proof(&dangling, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::DanglingLabel(7));

        // Two discharging rules sharing a label.
        let dup = node(
            RuleName::NegI,
            "~~p",
            vec![node(
                RuleName::NegE,
                "false",
                vec![
                    ProofTree::hyp_labeled(1, f("~p")),
                    node(
                        RuleName::NegI,
                        "~~p",
                        vec![node(
                            RuleName::NegE,
                            "false",
                            vec![
                                ProofTree::hyp_labeled(1, f("~p")),
                                ProofTree::hyp(f("~~p")),
                            ],
                        )],
                    )
                    .with_label(1),
                ],
            )],
        )
        .with_label(1);
        let err = check_proof(&dup, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::DuplicateLabel(1));

        // Labels on rules that do not discharge.
        let t = node(RuleName::Easq, "p", vec![ProofTree::hyp(f("false"))]).with_label(3);
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::UnexpectedLabel(RuleName::Easq));
    }

    #[test]
    fn discharge_mismatch_reports_both_formulas() {
        // The labeled leaf states q where the discharging rule expects p.
        let t = ProofTree::new(
            RuleName::NegI,
            f("~p"),
            vec![node(
                RuleName::NegE,
                "false",
                vec![ProofTree::hyp_labeled(1, f("q")), ProofTree::hyp(f("~q"))],
            )],
        )
        .with_label(1);
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(
            err.reason,
            Reason::DischargeMismatch {
                label: 1,
                expected: f("p"),
                found: f("q"),
            }
        );
    }

    #[test]
    fn dual_elimination_requires_a_closed_minor() {
        // Closed minor: the disjunction axiom.
        let closed = node(
            RuleName::DE,
            "D q",
            vec![
                ProofTree::hyp(f("D q")),
                node(RuleName::DI, "q | D q", vec![]),
            ],
        );
        let sequent = check_proof(&closed, ProofSystem::D).unwrap();
        assert_eq!(sequent.assumptions, [f("D q")].into_iter().collect());

        // Open minor: a bare assumption.
        let open = node(
            RuleName::DE,
            "q",
            vec![ProofTree::hyp(f("D p")), ProofTree::hyp(f("p | q"))],
        );
        let err = check_proof(&open, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::NotClosed(RuleName::DE));

        // A minor whose assumptions are discharged below the rule does not
        // count as closed.
        let outer = ProofTree::new(
            RuleName::NegI,
            f("~(p | q)"),
            vec![node(
                RuleName::NegE,
                "false",
                vec![
                    node(
                        RuleName::DE,
                        "q",
                        vec![
                            ProofTree::hyp(f("D p")),
                            ProofTree::hyp_labeled(1, f("p | q")),
                        ],
                    ),
                    ProofTree::hyp(f("~q")),
                ],
            )],
        )
        .with_label(1);
        let err = check_proof(&outer, ProofSystem::D).unwrap_err();
        assert_eq!(err.reason, Reason::DanglingLabel(1));
    }

    #[test]
    fn remaining_dual_rules_check() {
        let s_instance = "~D q | ~~D q";
        let seq = check_proof(
            &node(
                RuleName::DEprime,
                "false",
                vec![
                    ProofTree::hyp(f(&alloc::format!("D ({s_instance})"))),
                    node(RuleName::S, s_instance, vec![]),
                ],
            ),
            ProofSystem::D,
        )
        .unwrap();
        assert_eq!(seq.conclusion, Formula::Bottom);

        let seq = check_proof(
            &node(
                RuleName::DEclosed,
                &alloc::format!("~D ({s_instance})"),
                vec![node(RuleName::S, s_instance, vec![])],
            ),
            ProofSystem::D,
        )
        .unwrap();
        assert!(seq.assumptions.is_empty());

        let seq = check_proof(
            &node(
                RuleName::Reg,
                "q | ~q",
                vec![ProofTree::hyp(f("p")), ProofTree::hyp(f("D p"))],
            ),
            ProofSystem::D,
        )
        .unwrap();
        assert_eq!(seq.assumptions.len(), 2);

        let seq = check_proof(
            &node(
                RuleName::Sprime,
                "~~p",
                vec![ProofTree::hyp(f("D ~p"))],
            ),
            ProofSystem::D,
        )
        .unwrap();
        assert_eq!(seq.conclusion, f("~~p"));
    }

    #[test]
    fn remaining_box_rules_check() {
        let seq = check_proof(
            &node(
                RuleName::BoxReg,
                "q | ~q",
                vec![ProofTree::hyp(f("p")), ProofTree::hyp(f("~[]p"))],
            ),
            ProofSystem::Box,
        )
        .unwrap();
        assert_eq!(seq.assumptions.len(), 2);

        let err = check_proof(
            &node(
                RuleName::BoxS,
                "[]p",
                vec![ProofTree::hyp(f("p"))],
            ),
            ProofSystem::Box,
        )
        .unwrap_err();
        assert!(matches!(err.reason, Reason::SchemaMismatch { rule: RuleName::BoxS, .. }));
    }

    #[test]
    fn premise_counts_are_enforced() {
        let t = node(RuleName::AndI, "p & q", vec![ProofTree::hyp(f("p"))]);
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(
            err.reason,
            Reason::PremiseCount {
                rule: RuleName::AndI,
                expected: 2,
                found: 1,
            }
        );
    }

    #[test]
    fn error_paths_locate_the_node() {
        let t = node(
            RuleName::AndI,
            "p & q",
            vec![
                ProofTree::hyp(f("p")),
                node(RuleName::AndEl, "q", vec![ProofTree::hyp(f("p & q"))]),
            ],
        );
        let err = check_proof(&t, ProofSystem::D).unwrap_err();
        assert_eq!(err.path, vec![1]);
        assert_eq!(
            alloc::format!("{err}"),
            "at node 1: rule andEl: premise must be a conjunction with the conclusion on the left"
        );
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in RuleName::ALL {
            assert_eq!(RuleName::parse(rule.as_str()), Some(*rule));
        }
        assert_eq!(RuleName::parse("zap"), None);
        assert_eq!(RuleName::ALL.len(), 24);
    }

    #[test]
    fn vacuous_discharge_is_allowed() {
        let t = ProofTree::new(
            RuleName::NegI,
            f("~p"),
            vec![ProofTree::hyp(f("false"))],
        )
        .with_label(1);
        let seq = check_proof(&t, ProofSystem::D).unwrap();
        assert_eq!(seq.assumptions, [f("false")].into_iter().collect());
    }
}
