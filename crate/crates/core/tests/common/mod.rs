//! Seeded random generation of formulas, valuations, and models, shared by
//! the integration suites.  Everything is driven by a ChaCha stream so the
//! suites are reproducible.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use roughlogic::algebra3::{PropValuation, Three};
use roughlogic::kripke_semantics::{KripkeModel, KripkeRelation};
use roughlogic::rough_semantics::{element_names, Relation, RoughInterpretation};
use roughlogic::roughsets::ApproximationSpace;
use roughlogic::syntax::{Formula, Language};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn pick<'a, T>(&mut self, choices: &'a [T]) -> &'a T {
        &choices[self.rng.gen_range(0..choices.len())]
    }

    pub fn three(&mut self) -> Three {
        *self.pick(&Three::ALL)
    }

    /// A quantifier-free formula over nullary atoms.  `conditionals`
    /// additionally allows `->` and `<->`.
    pub fn prop_formula(
        &mut self,
        atoms: &[&str],
        depth: usize,
        lang: Language,
        conditionals: bool,
    ) -> Formula {
        if depth == 0 || self.rng.gen_range(0..6) == 0 {
            return if self.rng.gen_range(0..8) == 0 {
                Formula::Bottom
            } else {
                Formula::prop(self.pick(atoms))
            };
        }
        let top = if conditionals { 7 } else { 5 };
        match self.rng.gen_range(0..top) {
            0 => Formula::not(self.prop_formula(atoms, depth - 1, lang, conditionals)),
            1 => {
                let body = self.prop_formula(atoms, depth - 1, lang, conditionals);
                match lang {
                    Language::Dual => Formula::dual(body),
                    Language::Box => Formula::nec(body),
                }
            }
            2 | 3 => {
                let l = self.prop_formula(atoms, depth - 1, lang, conditionals);
                let r = self.prop_formula(atoms, depth - 1, lang, conditionals);
                if self.rng.gen_bool(0.5) {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                }
            }
            4 => {
                let l = self.prop_formula(atoms, depth - 1, lang, conditionals);
                let r = self.prop_formula(atoms, depth - 1, lang, conditionals);
                if self.rng.gen_bool(0.5) {
                    Formula::or(l, r)
                } else {
                    Formula::and(l, r)
                }
            }
            5 => Formula::imp(
                self.prop_formula(atoms, depth - 1, lang, conditionals),
                self.prop_formula(atoms, depth - 1, lang, conditionals),
            ),
            _ => Formula::iff(
                self.prop_formula(atoms, depth - 1, lang, conditionals),
                self.prop_formula(atoms, depth - 1, lang, conditionals),
            ),
        }
    }

    /// A first-order formula over the given relation symbols, equipped with
    /// quantifiers over `vars`.
    pub fn fo_formula(
        &mut self,
        rels: &[(&str, usize)],
        vars: &[&str],
        depth: usize,
        lang: Language,
    ) -> Formula {
        if depth == 0 || self.rng.gen_range(0..6) == 0 {
            if self.rng.gen_range(0..10) == 0 {
                return Formula::Bottom;
            }
            let &(name, arity) = self.pick(rels);
            let args: Vec<&str> = (0..arity).map(|_| *self.pick(vars)).collect();
            return Formula::atom(name, &args);
        }
        match self.rng.gen_range(0..7) {
            0 => Formula::not(self.fo_formula(rels, vars, depth - 1, lang)),
            1 => {
                let body = self.fo_formula(rels, vars, depth - 1, lang);
                match lang {
                    Language::Dual => Formula::dual(body),
                    Language::Box => Formula::nec(body),
                }
            }
            2 | 3 => {
                let l = self.fo_formula(rels, vars, depth - 1, lang);
                let r = self.fo_formula(rels, vars, depth - 1, lang);
                Formula::and(l, r)
            }
            4 => {
                let l = self.fo_formula(rels, vars, depth - 1, lang);
                let r = self.fo_formula(rels, vars, depth - 1, lang);
                Formula::or(l, r)
            }
            5 => {
                let var = *self.pick(vars);
                Formula::forall(var, self.fo_formula(rels, vars, depth - 1, lang))
            }
            _ => {
                let var = *self.pick(vars);
                Formula::exists(var, self.fo_formula(rels, vars, depth - 1, lang))
            }
        }
    }

    pub fn valuation(&mut self, atoms: &BTreeSet<String>) -> PropValuation {
        atoms
            .iter()
            .map(|a| (a.clone(), self.three()))
            .collect()
    }

    /// A rough interpretation on a universe of the given size, with every
    /// variable in `vars` assigned.
    pub fn rough_model(
        &mut self,
        rels: &[(&str, usize)],
        size: usize,
        vars: &[&str],
    ) -> RoughInterpretation {
        let universe = element_names(size);
        let labels: Vec<usize> = (0..size).map(|_| self.rng.gen_range(0..size)).collect();
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (e, &l) in universe.iter().zip(&labels) {
            groups.entry(l).or_default().push(e.clone());
        }
        let blocks: Vec<Vec<String>> = groups.into_values().collect();
        let space = ApproximationSpace::new(universe.clone(), &blocks).unwrap();

        let mut relations = BTreeMap::new();
        for &(name, arity) in rels {
            let mut chosen = BTreeSet::new();
            for tuple in tuples(&universe, arity) {
                if self.rng.gen_bool(0.5) {
                    chosen.insert(tuple);
                }
            }
            relations.insert(
                name.to_string(),
                Relation {
                    arity,
                    tuples: chosen,
                },
            );
        }

        let assignment = vars
            .iter()
            .map(|v| (v.to_string(), self.pick(&universe).clone()))
            .collect();
        RoughInterpretation::new(space, relations, assignment).unwrap()
    }

    /// A two-node model on a universe of the given size, with every variable
    /// in `vars` assigned.  Monotone by construction.
    pub fn kripke_model(
        &mut self,
        rels: &[(&str, usize)],
        size: usize,
        vars: &[&str],
    ) -> KripkeModel {
        let universe = element_names(size);
        let mut relations = BTreeMap::new();
        for &(name, arity) in rels {
            let mut at_1 = BTreeSet::new();
            let mut at_half = BTreeSet::new();
            for tuple in tuples(&universe, arity) {
                match self.rng.gen_range(0..3) {
                    0 => {}
                    1 => {
                        at_half.insert(tuple);
                    }
                    _ => {
                        at_1.insert(tuple.clone());
                        at_half.insert(tuple);
                    }
                }
            }
            relations.insert(
                name.to_string(),
                KripkeRelation {
                    arity,
                    at_1,
                    at_half,
                },
            );
        }
        let assignment = vars
            .iter()
            .map(|v| (v.to_string(), self.pick(&universe).clone()))
            .collect();
        KripkeModel::new(universe, relations, assignment).unwrap()
    }
}

/// Every tuple over `universe` of the given arity, in lexicographic order.
pub fn tuples(universe: &[String], arity: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &out {
            for e in universe {
                let mut t = t.clone();
                t.push(e.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}
