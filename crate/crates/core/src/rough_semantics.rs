//! Three-valued semantics over approximation spaces.
//!
//! An interpretation assigns each relation symbol a set of tuples over the
//! universe of an approximation space.  An atom takes value 1 when the
//! tuple named by its arguments lies in the lower approximation of that
//! set, 1/2 when it lies in the upper approximation only, and 0 otherwise.
//! Connectives are computed pointwise in the three-element algebra, and
//! quantifiers take minima and maxima over the universe.
//!
//! Nullary relation symbols have no boundary region (the only tuple is the
//! empty one and its class is a singleton), so nullary atoms only ever take
//! the values 0 and 1.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra3::{PropValuation, Three};
use crate::roughsets::{self, ApproximationSpace};
use crate::syntax::{expand_derived, Formula, Signature};

/// Upper bound on the number of candidate interpretations a bounded search
/// will visit before giving up.
pub const DEFAULT_SEARCH_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Space(roughsets::Error),
    UnknownRelation(String),
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    UnknownElement(String),
    UnboundVariable(String),
    /// `->` and `<->` are notation; expand them before evaluating.
    DerivedConnective,
    /// The requested construction only handles quantifier-free formulas.
    NotQuantifierFree,
    /// A nullary atom cannot take the value 1/2.
    UnrealizableHalf(String),
    MissingAtom(String),
    SearchSpaceTooLarge {
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Space(e) => write!(f, "{e}"),
            Error::UnknownRelation(r) => write!(f, "relation {r} is not interpreted"),
            Error::ArityMismatch {
                relation,
                expected,
                found,
            } => write!(
                f,
                "relation {relation} has arity {expected} but was given {found} arguments"
            ),
            Error::UnknownElement(e) => write!(f, "element {e} is not in the universe"),
            Error::UnboundVariable(v) => write!(f, "variable {v} has no assigned element"),
            Error::DerivedConnective => {
                f.write_str("conditionals are notation; expand them before evaluating")
            }
            Error::NotQuantifierFree => f.write_str("formula must be quantifier-free"),
            Error::UnrealizableHalf(a) => {
                write!(f, "nullary atom {a} cannot take the value 1/2")
            }
            Error::MissingAtom(a) => write!(f, "no value given for atom {a}"),
            Error::SearchSpaceTooLarge { limit } => {
                write!(f, "search would visit more than {limit} interpretations")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<roughsets::Error> for Error {
    fn from(e: roughsets::Error) -> Self {
        Error::Space(e)
    }
}

/// The tuple set interpreting one relation symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<String>>,
}

/// An approximation space together with relation interpretations and an
/// assignment of elements to the free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoughInterpretation {
    space: ApproximationSpace,
    relations: BTreeMap<String, Relation>,
    assignment: BTreeMap<String, String>,
}

impl RoughInterpretation {
    pub fn new(
        space: ApproximationSpace,
        relations: BTreeMap<String, Relation>,
        assignment: BTreeMap<String, String>,
    ) -> Result<Self, Error> {
        for (name, rel) in &relations {
            for tuple in &rel.tuples {
                if tuple.len() != rel.arity {
                    return Err(Error::ArityMismatch {
                        relation: name.clone(),
                        expected: rel.arity,
                        found: tuple.len(),
                    });
                }
                for e in tuple {
                    if space.index_of(e).is_none() {
                        return Err(Error::UnknownElement(e.clone()));
                    }
                }
            }
        }
        for e in assignment.values() {
            if space.index_of(e).is_none() {
                return Err(Error::UnknownElement(e.clone()));
            }
        }
        Ok(RoughInterpretation {
            space,
            relations,
            assignment,
        })
    }

    pub fn space(&self) -> &ApproximationSpace {
        &self.space
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, rel) in &self.relations {
            sig.declare(name, rel.arity).expect("validated names");
        }
        sig
    }

    /// The value of an atom at a tuple of elements.
    fn atom_value(&self, relation: &str, elements: &[String]) -> Result<Three, Error> {
        let rel = self
            .relations
            .get(relation)
            .ok_or_else(|| Error::UnknownRelation(relation.to_owned()))?;
        if elements.len() != rel.arity {
            return Err(Error::ArityMismatch {
                relation: relation.to_owned(),
                expected: rel.arity,
                found: elements.len(),
            });
        }
        if rel.arity == 0 {
            return Ok(if rel.tuples.contains(&Vec::new()) {
                Three::One
            } else {
                Three::Zero
            });
        }
        let power = self.space.power(rel.arity)?;
        if power.in_lower(elements, &rel.tuples)? {
            Ok(Three::One)
        } else if power.in_upper(elements, &rel.tuples)? {
            Ok(Three::Half)
        } else {
            Ok(Three::Zero)
        }
    }

    fn eval_in(
        &self,
        formula: &Formula,
        env: &mut BTreeMap<String, String>,
    ) -> Result<Three, Error> {
        match formula {
            Formula::Bottom => Ok(Three::Zero),
            Formula::Atom(name, args) => {
                let mut elements = Vec::with_capacity(args.len());
                for v in args {
                    let e = env
                        .get(v)
                        .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                    elements.push(e.clone());
                }
                self.atom_value(name, &elements)
            }
            Formula::Not(a) => Ok(self.eval_in(a, env)?.neg()),
            Formula::Dual(a) => Ok(self.eval_in(a, env)?.dual()),
            Formula::Box(a) => Ok(self.eval_in(a, env)?.necessity()),
            Formula::And(a, b) => Ok(self.eval_in(a, env)?.meet(self.eval_in(b, env)?)),
            Formula::Or(a, b) => Ok(self.eval_in(a, env)?.join(self.eval_in(b, env)?)),
            Formula::Imp(..) | Formula::Iff(..) => Err(Error::DerivedConnective),
            Formula::Forall(x, body) => {
                let mut acc = Three::One;
                let saved = env.get(x).cloned();
                for e in self.space.universe().to_owned() {
                    env.insert(x.clone(), e);
                    acc = acc.meet(self.eval_in(body, env)?);
                }
                restore(env, x, saved);
                Ok(acc)
            }
            Formula::Exists(x, body) => {
                let mut acc = Three::Zero;
                let saved = env.get(x).cloned();
                for e in self.space.universe().to_owned() {
                    env.insert(x.clone(), e);
                    acc = acc.join(self.eval_in(body, env)?);
                }
                restore(env, x, saved);
                Ok(acc)
            }
        }
    }

    /// Evaluates a formula whose free variables are covered by the
    /// interpretation's assignment.  Conditionals must be expanded first.
    pub fn valuate(&self, formula: &Formula) -> Result<Three, Error> {
        let mut env = self.assignment.clone();
        self.eval_in(formula, &mut env)
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

/// Outcome of a bounded search for a refuting interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoughVerdict {
    /// No interpretation within the bound refutes the sequent.
    Valid,
    /// The first refuting interpretation in enumeration order.
    Countermodel(RoughInterpretation),
}

/// Searches all interpretations over universes of size `1..=max_universe`
/// for one where the premises all exceed the conclusion.
///
/// Enumeration order: universe sizes ascending (elements named `a`, `b`,
/// ...); partitions of the universe in restricted-growth order; relation
/// tables for the signature's relations in name order, each table read as
/// a binary counter over the tuples in lexicographic order with the first
/// tuple as the most significant bit, later relations varying fastest; and
/// assignments of elements to the free variables in sorted order, later
/// variables varying fastest.
pub fn rough_consequence_bounded(
    premises: &[Formula],
    conclusion: &Formula,
    sig: &Signature,
    max_universe: usize,
) -> Result<RoughVerdict, Error> {
    rough_consequence_bounded_with_guard(
        premises,
        conclusion,
        sig,
        max_universe,
        DEFAULT_SEARCH_GUARD,
    )
}

pub fn rough_consequence_bounded_with_guard(
    premises: &[Formula],
    conclusion: &Formula,
    sig: &Signature,
    max_universe: usize,
    guard: usize,
) -> Result<RoughVerdict, Error> {
    let premises: Vec<Formula> = premises.iter().map(expand_derived).collect();
    let conclusion = expand_derived(conclusion);
    let mut vars = BTreeSet::new();
    for p in &premises {
        vars.extend(p.free_vars());
    }
    vars.extend(conclusion.free_vars());
    let vars: Vec<String> = vars.into_iter().collect();
    let relations: Vec<(String, usize)> = sig
        .relations()
        .map(|(n, a)| (n.to_string(), a))
        .collect();

    let mut visited = 0usize;
    for size in 1..=max_universe {
        let universe = element_names(size);
        let tuple_counts: Vec<usize> = relations
            .iter()
            .map(|&(_, arity)| size.pow(arity as u32))
            .collect();
        for partition in partitions(size) {
            let blocks = blocks_from_labels(&universe, &partition);
            let space = ApproximationSpace::new(universe.clone(), &blocks)?;
            let mut tables: Vec<u64> = alloc::vec![0; relations.len()];
            loop {
                let mut assignment_digits = alloc::vec![0usize; vars.len()];
                loop {
                    visited += 1;
                    if visited > guard {
                        return Err(Error::SearchSpaceTooLarge { limit: guard });
                    }
                    let interp = build_interpretation(
                        &space,
                        &relations,
                        &tables,
                        &tuple_counts,
                        &vars,
                        &assignment_digits,
                    )?;
                    if refutes(&interp, &premises, &conclusion)? {
                        return Ok(RoughVerdict::Countermodel(interp));
                    }
                    if !bump_digits(&mut assignment_digits, size) {
                        break;
                    }
                }
                if !bump_tables(&mut tables, &tuple_counts) {
                    break;
                }
            }
        }
    }
    Ok(RoughVerdict::Valid)
}

fn refutes(
    interp: &RoughInterpretation,
    premises: &[Formula],
    conclusion: &Formula,
) -> Result<bool, Error> {
    let mut floor = Three::One;
    for p in premises {
        floor = floor.meet(interp.valuate(p)?);
        if floor == Three::Zero {
            break;
        }
    }
    Ok(floor > interp.valuate(conclusion)?)
}

/// Universe element names: single letters for small universes.
pub fn element_names(size: usize) -> Vec<String> {
    (0..size)
        .map(|i| {
            if size <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{}", i + 1)
            }
        })
        .collect()
}

/// All partitions of `{0, .., size-1}` as restricted-growth label strings,
/// in lexicographic order (the single-block partition comes first).
fn partitions(size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = alloc::vec![0usize; size];
    loop {
        out.push(labels.clone());
        // Advance to the next restricted-growth string.
        let mut pos = size;
        loop {
            if pos <= 1 {
                return out;
            }
            pos -= 1;
            let cap = labels[..pos].iter().copied().max().unwrap_or(0) + 1;
            if labels[pos] < cap {
                labels[pos] += 1;
                for l in labels[pos + 1..].iter_mut() {
                    *l = 0;
                }
                break;
            }
        }
    }
}

fn blocks_from_labels(universe: &[String], labels: &[usize]) -> Vec<Vec<String>> {
    let count = labels.iter().copied().max().unwrap_or(0) + 1;
    let mut blocks = alloc::vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l].push(universe[i].clone());
    }
    blocks
}

fn build_interpretation(
    space: &ApproximationSpace,
    relations: &[(String, usize)],
    tables: &[u64],
    tuple_counts: &[usize],
    vars: &[String],
    assignment_digits: &[usize],
) -> Result<RoughInterpretation, Error> {
    let mut rel_map = BTreeMap::new();
    for (i, (name, arity)) in relations.iter().enumerate() {
        let tuples = if *arity == 0 {
            if tables[i] & 1 == 1 {
                [Vec::new()].into_iter().collect()
            } else {
                BTreeSet::new()
            }
        } else {
            let all = space.power(*arity)?.tuples();
            let count = tuple_counts[i];
            all.into_iter()
                .enumerate()
                .filter(|(j, _)| {
                    let bit = count - 1 - j;
                    bit < 64 && tables[i] >> bit & 1 == 1
                })
                .map(|(_, t)| t)
                .collect()
        };
        rel_map.insert(
            name.clone(),
            Relation {
                arity: *arity,
                tuples,
            },
        );
    }
    let assignment = vars
        .iter()
        .zip(assignment_digits)
        .map(|(v, &d)| (v.clone(), space.universe()[d].clone()))
        .collect();
    RoughInterpretation::new(space.clone(), rel_map, assignment)
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

fn bump_tables(tables: &mut [u64], tuple_counts: &[usize]) -> bool {
    for pos in (0..tables.len()).rev() {
        let limit = 1u64 << tuple_counts[pos].min(63);
        if tables[pos] + 1 < limit {
            tables[pos] += 1;
            return true;
        }
        tables[pos] = 0;
    }
    false
}

/// Builds an interpretation on which each atom of the given
/// quantifier-free formulas takes exactly the value the valuation names.
///
/// Every variable gets its own two-element block; an atom worth 1
/// contributes the whole class of its argument tuple, an atom worth 1/2
/// contributes only the class-mate obtained by swapping the first
/// coordinate, and an atom worth 0 contributes nothing.
pub fn realize_valuation(
    formulas: &[&Formula],
    valuation: &PropValuation,
) -> Result<RoughInterpretation, Error> {
    let mut atoms: BTreeMap<String, (String, Vec<String>)> = BTreeMap::new();
    for f in formulas {
        collect_atoms(f, &mut atoms)?;
    }

    let mut vars = BTreeSet::new();
    for (_, args) in atoms.values() {
        vars.extend(args.iter().cloned());
    }
    let mut universe = Vec::new();
    let mut blocks = Vec::new();
    let mut assignment = BTreeMap::new();
    for v in &vars {
        let lo = format!("{v}0");
        let hi = format!("{v}1");
        universe.push(lo.clone());
        universe.push(hi.clone());
        blocks.push(alloc::vec![lo.clone(), hi]);
        assignment.insert(v.clone(), lo);
    }
    if universe.is_empty() {
        universe.push("u".to_string());
        blocks.push(alloc::vec!["u".to_string()]);
    }
    let space = ApproximationSpace::new(universe, &blocks)?;

    let mut relations: BTreeMap<String, Relation> = BTreeMap::new();
    for (key, (name, args)) in &atoms {
        let value = *valuation
            .get(key)
            .ok_or_else(|| Error::MissingAtom(key.clone()))?;
        let rel = relations.entry(name.clone()).or_insert_with(|| Relation {
            arity: args.len(),
            tuples: BTreeSet::new(),
        });
        if args.is_empty() {
            match value {
                Three::One => {
                    rel.tuples.insert(Vec::new());
                }
                Three::Half => return Err(Error::UnrealizableHalf(key.clone())),
                Three::Zero => {}
            }
            continue;
        }
        let base: Vec<String> = args.iter().map(|v| format!("{v}0")).collect();
        match value {
            Three::One => {
                for t in space.power(args.len())?.class_of(&base)? {
                    rel.tuples.insert(t);
                }
            }
            Three::Half => {
                let mut mate = base.clone();
                mate[0] = format!("{}1", args[0]);
                rel.tuples.insert(mate);
            }
            Three::Zero => {}
        }
    }

    RoughInterpretation::new(space, relations, assignment)
}

fn collect_atoms(
    formula: &Formula,
    atoms: &mut BTreeMap<String, (String, Vec<String>)>,
) -> Result<(), Error> {
    match formula {
        Formula::Bottom => Ok(()),
        Formula::Atom(name, args) => {
            let mut key = String::new();
            core::fmt::write(&mut key, format_args!("{formula}")).expect("write to string");
            atoms.insert(key, (name.clone(), args.clone()));
            Ok(())
        }
        Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => collect_atoms(a, atoms),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            collect_atoms(a, atoms)?;
            collect_atoms(b, atoms)
        }
        Formula::Forall(..) | Formula::Exists(..) => Err(Error::NotQuantifierFree),
    }
}
