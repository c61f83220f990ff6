//! Forcing over a fixed two-node frame.
//!
//! The frame has a root node `1` and a single proper extension `1/2`
//! (so the order is `1 ⊑ 1/2`).  Relation interpretations are monotone:
//! whatever is forced at the root stays forced at the extension.  Negation
//! quantifies over extensions of the current node, the dual operator over
//! restrictions of it, and the necessity operator holds only when its body
//! is forced everywhere.
//!
//! Because forcing is monotone in the node, each formula takes one of
//! three values in a model: 1 when the root forces it, 1/2 when only the
//! extension does, and 0 when neither does.  These values agree with the
//! three-element algebra pointwise.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra3::Three;
use crate::rough_semantics::{element_names, DEFAULT_SEARCH_GUARD};
use crate::syntax::{expand_derived, Formula, Signature};

/// The two nodes of the frame; `One` is the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    One,
    Half,
}

impl Node {
    pub const ALL: [Node; 2] = [Node::One, Node::Half];

    /// Nodes at or above this one in the frame order.
    pub fn up_set(self) -> &'static [Node] {
        match self {
            Node::One => &[Node::One, Node::Half],
            Node::Half => &[Node::Half],
        }
    }

    /// Nodes at or below this one in the frame order.
    pub fn down_set(self) -> &'static [Node] {
        match self {
            Node::One => &[Node::One],
            Node::Half => &[Node::One, Node::Half],
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::One => f.write_str("1"),
            Node::Half => f.write_str("1/2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyUniverse,
    DuplicateElement(String),
    UnknownElement(String),
    UnknownRelation(String),
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    /// A tuple forced at the root must stay forced at the extension.
    NotMonotone(String),
    UnboundVariable(String),
    /// `->` and `<->` are notation; expand them before evaluating.
    DerivedConnective,
    SearchSpaceTooLarge {
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyUniverse => f.write_str("universe must be non-empty"),
            Error::DuplicateElement(e) => write!(f, "element {e} listed twice in the universe"),
            Error::UnknownElement(e) => write!(f, "element {e} is not in the universe"),
            Error::UnknownRelation(r) => write!(f, "relation {r} is not interpreted"),
            Error::ArityMismatch {
                relation,
                expected,
                found,
            } => write!(
                f,
                "relation {relation} has arity {expected} but was given {found} arguments"
            ),
            Error::NotMonotone(r) => write!(
                f,
                "relation {r} forces a tuple at the root but not at the extension"
            ),
            Error::UnboundVariable(v) => write!(f, "variable {v} has no assigned element"),
            Error::DerivedConnective => {
                f.write_str("conditionals are notation; expand them before evaluating")
            }
            Error::SearchSpaceTooLarge { limit } => {
                write!(f, "search would visit more than {limit} models")
            }
        }
    }
}

impl core::error::Error for Error {}

/// The forced tuple sets of one relation symbol at the two nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeRelation {
    pub arity: usize,
    pub at_1: BTreeSet<Vec<String>>,
    pub at_half: BTreeSet<Vec<String>>,
}

impl KripkeRelation {
    pub fn at(&self, node: Node) -> &BTreeSet<Vec<String>> {
        match node {
            Node::One => &self.at_1,
            Node::Half => &self.at_half,
        }
    }
}

/// A constant-domain model over the two-node frame, with an assignment of
/// elements to the free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    universe: Vec<String>,
    relations: BTreeMap<String, KripkeRelation>,
    assignment: BTreeMap<String, String>,
}

impl KripkeModel {
    pub fn new(
        universe: Vec<String>,
        relations: BTreeMap<String, KripkeRelation>,
        assignment: BTreeMap<String, String>,
    ) -> Result<Self, Error> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut seen = BTreeSet::new();
        for e in &universe {
            if !seen.insert(e) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        for (name, rel) in &relations {
            if !rel.at_1.is_subset(&rel.at_half) {
                return Err(Error::NotMonotone(name.clone()));
            }
            for tuple in rel.at_1.iter().chain(&rel.at_half) {
                if tuple.len() != rel.arity {
                    return Err(Error::ArityMismatch {
                        relation: name.clone(),
                        expected: rel.arity,
                        found: tuple.len(),
                    });
                }
                for e in tuple {
                    if !seen.contains(e) {
                        return Err(Error::UnknownElement(e.clone()));
                    }
                }
            }
        }
        for e in assignment.values() {
            if !seen.contains(e) {
                return Err(Error::UnknownElement(e.clone()));
            }
        }
        Ok(KripkeModel {
            universe,
            relations,
            assignment,
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn relations(&self) -> &BTreeMap<String, KripkeRelation> {
        &self.relations
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    pub fn with_assignment(mut self, assignment: BTreeMap<String, String>) -> Result<Self, Error> {
        for e in assignment.values() {
            if !self.universe.contains(e) {
                return Err(Error::UnknownElement(e.clone()));
            }
        }
        self.assignment = assignment;
        Ok(self)
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, rel) in &self.relations {
            sig.declare(name, rel.arity).expect("validated names");
        }
        sig
    }

    fn forces_in(
        &self,
        node: Node,
        formula: &Formula,
        env: &mut BTreeMap<String, String>,
    ) -> Result<bool, Error> {
        match formula {
            Formula::Bottom => Ok(false),
            Formula::Atom(name, args) => {
                let rel = self
                    .relations
                    .get(name)
                    .ok_or_else(|| Error::UnknownRelation(name.clone()))?;
                if args.len() != rel.arity {
                    return Err(Error::ArityMismatch {
                        relation: name.clone(),
                        expected: rel.arity,
                        found: args.len(),
                    });
                }
                let mut tuple = Vec::with_capacity(args.len());
                for v in args {
                    let e = env
                        .get(v)
                        .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                    tuple.push(e.clone());
                }
                Ok(rel.at(node).contains(&tuple))
            }
            Formula::Not(a) => {
                for k in node.up_set() {
                    if self.forces_in(*k, a, env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Dual(a) => {
                for k in node.down_set() {
                    if !self.forces_in(*k, a, env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Box(a) => {
                Ok(self.forces_in(Node::One, a, env)? && self.forces_in(Node::Half, a, env)?)
            }
            Formula::And(a, b) => {
                Ok(self.forces_in(node, a, env)? && self.forces_in(node, b, env)?)
            }
            Formula::Or(a, b) => {
                Ok(self.forces_in(node, a, env)? || self.forces_in(node, b, env)?)
            }
            Formula::Imp(..) | Formula::Iff(..) => Err(Error::DerivedConnective),
            Formula::Forall(x, body) => {
                let saved = env.get(x).cloned();
                for k in node.up_set() {
                    for e in self.universe.clone() {
                        env.insert(x.clone(), e);
                        if !self.forces_in(*k, body, env)? {
                            restore(env, x, saved);
                            return Ok(false);
                        }
                    }
                }
                restore(env, x, saved);
                Ok(true)
            }
            Formula::Exists(x, body) => {
                let saved = env.get(x).cloned();
                for e in self.universe.clone() {
                    env.insert(x.clone(), e);
                    if self.forces_in(node, body, env)? {
                        restore(env, x, saved);
                        return Ok(true);
                    }
                }
                restore(env, x, saved);
                Ok(false)
            }
        }
    }

    /// Does the given node force the formula?  Conditionals must be
    /// expanded first.
    pub fn forces(&self, node: Node, formula: &Formula) -> Result<bool, Error> {
        let mut env = self.assignment.clone();
        self.forces_in(node, formula, &mut env)
    }

    /// The three-valued truth value: 1 when the root forces the formula,
    /// 1/2 when only the extension does, 0 otherwise.
    pub fn value(&self, formula: &Formula) -> Result<Three, Error> {
        if self.forces(Node::One, formula)? {
            Ok(Three::One)
        } else if self.forces(Node::Half, formula)? {
            Ok(Three::Half)
        } else {
            Ok(Three::Zero)
        }
    }
}

fn restore(env: &mut BTreeMap<String, String>, var: &str, saved: Option<String>) {
    match saved {
        Some(e) => {
            env.insert(var.to_owned(), e);
        }
        None => {
            env.remove(var);
        }
    }
}

/// Outcome of a bounded search for a refuting model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KripkeVerdict {
    Valid,
    Countermodel(KripkeModel),
}

/// Searches all models over universes of size `1..=max_universe` for one
/// where the premises all take a higher value than the conclusion.
///
/// Enumeration order: universe sizes ascending (elements named `a`, `b`,
/// ...); relation tables in name order, each read as a ternary counter
/// over the tuples in lexicographic order (digit 0: forced nowhere, 1:
/// forced at the extension only, 2: forced at both nodes) with the first
/// tuple as the most significant digit, later relations varying fastest;
/// and assignments in sorted variable order, later variables fastest.
pub fn kripke_consequence_bounded(
    premises: &[Formula],
    conclusion: &Formula,
    sig: &Signature,
    max_universe: usize,
) -> Result<KripkeVerdict, Error> {
    kripke_consequence_bounded_with_guard(
        premises,
        conclusion,
        sig,
        max_universe,
        DEFAULT_SEARCH_GUARD,
    )
}

pub fn kripke_consequence_bounded_with_guard(
    premises: &[Formula],
    conclusion: &Formula,
    sig: &Signature,
    max_universe: usize,
    guard: usize,
) -> Result<KripkeVerdict, Error> {
    let premises: Vec<Formula> = premises.iter().map(expand_derived).collect();
    let conclusion = expand_derived(conclusion);
    let mut vars = BTreeSet::new();
    for p in &premises {
        vars.extend(p.free_vars());
    }
    vars.extend(conclusion.free_vars());
    let vars: Vec<String> = vars.into_iter().collect();

    let mut visited = 0usize;
    for size in 1..=max_universe {
        let mut walker = ModelWalker::new(sig, size);
        while let Some(model) = walker.current() {
            let mut assignment_digits = alloc::vec![0usize; vars.len()];
            loop {
                visited += 1;
                if visited > guard {
                    return Err(Error::SearchSpaceTooLarge { limit: guard });
                }
                let assignment = vars
                    .iter()
                    .zip(&assignment_digits)
                    .map(|(v, &d)| (v.clone(), model.universe[d].clone()))
                    .collect();
                let candidate = model.clone().with_assignment(assignment)?;
                if refutes(&candidate, &premises, &conclusion)? {
                    return Ok(KripkeVerdict::Countermodel(candidate));
                }
                if !bump_digits(&mut assignment_digits, size) {
                    break;
                }
            }
            if !walker.advance() {
                break;
            }
        }
    }
    Ok(KripkeVerdict::Valid)
}

fn refutes(
    model: &KripkeModel,
    premises: &[Formula],
    conclusion: &Formula,
) -> Result<bool, Error> {
    let mut floor = Three::One;
    for p in premises {
        floor = floor.meet(model.value(p)?);
        if floor == Three::Zero {
            break;
        }
    }
    Ok(floor > model.value(conclusion)?)
}

fn bump_digits(digits: &mut [usize], base: usize) -> bool {
    for pos in (0..digits.len()).rev() {
        if digits[pos] + 1 < base {
            digits[pos] += 1;
            return true;
        }
        digits[pos] = 0;
    }
    false
}

/// Walks every model of a fixed universe size in the documented order.
struct ModelWalker {
    universe: Vec<String>,
    relations: Vec<(String, usize)>,
    tuples: Vec<Vec<Vec<String>>>,
    digits: Vec<Vec<u8>>,
    done: bool,
}

impl ModelWalker {
    fn new(sig: &Signature, size: usize) -> Self {
        let universe = element_names(size);
        let relations: Vec<(String, usize)> = sig
            .relations()
            .map(|(n, a)| (n.to_string(), a))
            .collect();
        let tuples: Vec<Vec<Vec<String>>> = relations
            .iter()
            .map(|&(_, arity)| all_tuples(&universe, arity))
            .collect();
        let digits = tuples.iter().map(|t| alloc::vec![0u8; t.len()]).collect();
        ModelWalker {
            universe,
            relations,
            tuples,
            digits,
            done: false,
        }
    }

    fn current(&self) -> Option<KripkeModel> {
        if self.done {
            return None;
        }
        let mut relations = BTreeMap::new();
        for (i, (name, arity)) in self.relations.iter().enumerate() {
            let mut at_1 = BTreeSet::new();
            let mut at_half = BTreeSet::new();
            for (tuple, &digit) in self.tuples[i].iter().zip(&self.digits[i]) {
                if digit >= 1 {
                    at_half.insert(tuple.clone());
                }
                if digit == 2 {
                    at_1.insert(tuple.clone());
                }
            }
            relations.insert(
                name.clone(),
                KripkeRelation {
                    arity: *arity,
                    at_1,
                    at_half,
                },
            );
        }
        Some(
            KripkeModel::new(self.universe.clone(), relations, BTreeMap::new())
                .expect("walker builds monotone models"),
        )
    }

    fn advance(&mut self) -> bool {
        for rel in (0..self.digits.len()).rev() {
            for pos in (0..self.digits[rel].len()).rev() {
                if self.digits[rel][pos] < 2 {
                    self.digits[rel][pos] += 1;
                    for later in self.digits[rel][pos + 1..].iter_mut() {
                        *later = 0;
                    }
                    for later_rel in self.digits[rel + 1..].iter_mut() {
                        for d in later_rel.iter_mut() {
                            *d = 0;
                        }
                    }
                    return true;
                }
            }
        }
        self.done = true;
        false
    }
}

fn all_tuples(universe: &[String], arity: usize) -> Vec<Vec<String>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            for e in universe {
                let mut t = prefix.clone();
                t.push(e.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Materializes every model over the signature with the given universe
/// size (and an empty assignment), in enumeration order.
pub fn models_of_size(
    sig: &Signature,
    size: usize,
    guard: usize,
) -> Result<Vec<KripkeModel>, Error> {
    let mut walker = ModelWalker::new(sig, size);
    let mut out = Vec::new();
    while let Some(model) = walker.current() {
        if out.len() >= guard {
            return Err(Error::SearchSpaceTooLarge { limit: guard });
        }
        out.push(model);
        if !walker.advance() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use crate::syntax::{self, Formula};
    use alloc::vec;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn sig() -> Signature {
        Signature::with_relations(&[("P", 1)]).unwrap()
    }

    fn sample() -> KripkeModel {
        let mut relations = BTreeMap::new();
        relations.insert(
            "P".to_string(),
            KripkeRelation {
                arity: 1,
                at_1: [vec!["a".to_string()]].into_iter().collect(),
                at_half: [vec!["a".to_string()], vec!["b".to_string()]]
                    .into_iter()
                    .collect(),
            },
        );
        let assignment = [("x".to_string(), "b".to_string())].into_iter().collect();
        KripkeModel::new(strings(&["a", "b"]), relations, assignment).unwrap()
    }

    fn value(model: &KripkeModel, text: &str) -> Three {
        let f = parse(text, &sig()).unwrap();
        model.value(&syntax::expand_derived(&f)).unwrap()
    }

    #[test]
    fn forcing_gives_the_expected_values() {
        let m = sample();
        assert_eq!(value(&m, "P(x)"), Three::Half);
        assert_eq!(value(&m, "~P(x)"), Three::Zero);
        assert_eq!(value(&m, "D P(x)"), Three::One);
        assert_eq!(value(&m, "[]P(x)"), Three::Zero);
        assert_eq!(value(&m, "forall y. P(y)"), Three::Half);
        assert_eq!(value(&m, "exists y. []P(y)"), Three::One);
        assert_eq!(value(&m, "false"), Three::Zero);
        assert_eq!(value(&m, "P(x) | ~P(x)"), Three::Half);
    }

    #[test]
    fn constructor_rejects_bad_models() {
        let mut relations = BTreeMap::new();
        relations.insert(
            "P".to_string(),
            KripkeRelation {
                arity: 1,
                at_1: [vec!["a".to_string()]].into_iter().collect(),
                at_half: BTreeSet::new(),
            },
        );
        assert_eq!(
            KripkeModel::new(strings(&["a"]), relations, BTreeMap::new()),
            Err(Error::NotMonotone("P".to_string()))
        );
        assert_eq!(
            KripkeModel::new(Vec::new(), BTreeMap::new(), BTreeMap::new()),
            Err(Error::EmptyUniverse)
        );
        assert_eq!(
            KripkeModel::new(strings(&["a", "a"]), BTreeMap::new(), BTreeMap::new()),
            Err(Error::DuplicateElement("a".to_string()))
        );
    }

    #[test]
    fn forcing_is_monotone_across_all_small_models() {
        let sig = Signature::with_relations(&[("P", 1), ("T", 0)]).unwrap();
        let texts = [
            "P(x)",
            "~P(x)",
            "D P(x) & T",
            "[](P(x) | T)",
            "forall y. P(y) | D T",
            "exists y. ~P(y)",
            "~(T & P(x)) | []T",
        ];
        let formulas: Vec<Formula> = texts.iter().map(|t| parse(t, &sig).unwrap()).collect();
        for size in 1..=2usize {
            for model in models_of_size(&sig, size, 100_000).unwrap() {
                for e in model.universe().to_owned() {
                    let m = model
                        .clone()
                        .with_assignment([("x".to_string(), e)].into_iter().collect())
                        .unwrap();
                    for f in &formulas {
                        if m.forces(Node::One, f).unwrap() {
                            assert!(m.forces(Node::Half, f).unwrap(), "persistence of {f}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn necessity_agrees_with_its_unfolding() {
        // Forcing the necessity of a formula is the same as forcing the
        // negated dual of it, at either node.
        let sig = Signature::with_relations(&[("P", 1)]).unwrap();
        let texts = ["P(x)", "~P(x)", "P(x) | D P(x)", "forall y. P(y)"];
        for size in 1..=2usize {
            for model in models_of_size(&sig, size, 100_000).unwrap() {
                for e in model.universe().to_owned() {
                    let m = model
                        .clone()
                        .with_assignment([("x".to_string(), e)].into_iter().collect())
                        .unwrap();
                    for t in texts {
                        let f = parse(t, &sig).unwrap();
                        let direct = Formula::nec(f.clone());
                        let unfolded = Formula::not(Formula::dual(f));
                        for node in Node::ALL {
                            assert_eq!(
                                m.forces(node, &direct).unwrap(),
                                m.forces(node, &unfolded).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_search_finds_the_first_countermodel() {
        let sig = sig();
        let p = parse("P(x)", &sig).unwrap();
        let lem = parse("P(x) | ~P(x)", &sig).unwrap();

        assert_eq!(
            kripke_consequence_bounded(&[p.clone()], &p, &sig, 2).unwrap(),
            KripkeVerdict::Valid
        );

        // The first refutation of excluded middle: one element, P forced
        // only at the extension.
        match kripke_consequence_bounded(&[], &lem, &sig, 2).unwrap() {
            KripkeVerdict::Countermodel(m) => {
                assert_eq!(m.universe(), &strings(&["a"]));
                let rel = &m.relations()["P"];
                assert!(rel.at_1.is_empty());
                assert_eq!(
                    rel.at_half,
                    [vec!["a".to_string()]].into_iter().collect::<BTreeSet<_>>()
                );
                assert_eq!(m.assignment()["x"], "a");
                assert_eq!(m.value(&lem).unwrap(), Three::Half);
            }
            KripkeVerdict::Valid => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn guard_limits_the_search() {
        let sig = sig();
        let lem = parse("P(x) | ~P(x)", &sig).unwrap();
        assert_eq!(
            kripke_consequence_bounded_with_guard(&[], &lem, &sig, 1, 1),
            Err(Error::SearchSpaceTooLarge { limit: 1 })
        );
    }

    #[test]
    fn model_count_matches_the_table_space() {
        let sig = Signature::with_relations(&[("P", 1), ("R", 2)]).unwrap();
        // 3^(2 + 4) tables over a two-element universe.
        assert_eq!(models_of_size(&sig, 2, 100_000).unwrap().len(), 729);
        assert_eq!(
            models_of_size(&sig, 2, 10),
            Err(Error::SearchSpaceTooLarge { limit: 10 })
        );
    }
}
