//! Conversions between approximation-space interpretations and two-node
//! Kripke models that preserve the value of every formula.
//!
//! Rough to Kripke: the new universe has one element per equivalence
//! class, named by the class's first member in universe order.  A relation
//! is forced at the root on the class image of the lower approximation of
//! its tuple set and at the extension on the class image of the upper
//! approximation.
//!
//! Kripke to rough: every element `u` splits into a two-element block
//! `u#0`, `u#1`.  A tuple forced at the extension contributes its all-`0`
//! tagging; a tuple forced at the root contributes every tagging, so its
//! whole class lands in the relation.  Values of formulas are unchanged in
//! both directions, except that a nullary relation forced at the extension
//! only has no rough counterpart (nullary atoms are two-valued over
//! approximation spaces), which is reported as an error.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::kripke_semantics::{self, KripkeModel, KripkeRelation};
use crate::rough_semantics::{self, Relation, RoughInterpretation};
use crate::roughsets::{self, ApproximationSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Rough(rough_semantics::Error),
    Kripke(kripke_semantics::Error),
    /// A nullary relation forced at the extension but not the root cannot
    /// be carried over to an approximation space.
    NullaryBoundary(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Rough(e) => write!(f, "{e}"),
            Error::Kripke(e) => write!(f, "{e}"),
            Error::NullaryBoundary(r) => write!(
                f,
                "nullary relation {r} takes the value 1/2, which no approximation space realizes"
            ),
        }
    }
}

impl core::error::Error for Error {}

impl From<rough_semantics::Error> for Error {
    fn from(e: rough_semantics::Error) -> Self {
        Error::Rough(e)
    }
}

impl From<kripke_semantics::Error> for Error {
    fn from(e: kripke_semantics::Error) -> Self {
        Error::Kripke(e)
    }
}

impl From<roughsets::Error> for Error {
    fn from(e: roughsets::Error) -> Self {
        Error::Rough(rough_semantics::Error::Space(e))
    }
}

/// Collapses an interpretation to its quotient Kripke model.
pub fn to_kripke(interp: &RoughInterpretation) -> Result<KripkeModel, Error> {
    let space = interp.space();
    let blocks = space.blocks();
    let class_names: Vec<String> = blocks.iter().map(|b| b[0].clone()).collect();
    let name_of = |element: &str| -> String {
        class_names[space.block_of(element).expect("element of the space")].clone()
    };
    let image = |tuples: &BTreeSet<Vec<String>>| -> BTreeSet<Vec<String>> {
        tuples
            .iter()
            .map(|t| t.iter().map(|e| name_of(e)).collect())
            .collect()
    };

    let mut relations = BTreeMap::new();
    for (rname, rel) in interp.relations() {
        let (at_1, at_half) = if rel.arity == 0 {
            (rel.tuples.clone(), rel.tuples.clone())
        } else {
            let power = space.power(rel.arity)?;
            (
                image(&power.lower(&rel.tuples)?),
                image(&power.upper(&rel.tuples)?),
            )
        };
        relations.insert(
            rname.clone(),
            KripkeRelation {
                arity: rel.arity,
                at_1,
                at_half,
            },
        );
    }
    let assignment = interp
        .assignment()
        .iter()
        .map(|(v, e)| (v.clone(), name_of(e)))
        .collect();
    KripkeModel::new(class_names, relations, assignment).map_err(Error::Kripke)
}

/// Unfolds a Kripke model into an interpretation over split elements.
pub fn to_rough(model: &KripkeModel) -> Result<RoughInterpretation, Error> {
    let mut universe = Vec::new();
    let mut blocks = Vec::new();
    for u in model.universe() {
        let lo = format!("{u}#0");
        let hi = format!("{u}#1");
        universe.push(lo.clone());
        universe.push(hi.clone());
        blocks.push(alloc::vec![lo, hi]);
    }
    let space = ApproximationSpace::new(universe, &blocks)?;

    let mut relations = BTreeMap::new();
    for (rname, rel) in model.relations() {
        let tuples = if rel.arity == 0 {
            if rel.at_half != rel.at_1 {
                return Err(Error::NullaryBoundary(rname.clone()));
            }
            rel.at_1.clone()
        } else {
            let mut tuples = BTreeSet::new();
            for t in &rel.at_half {
                tuples.insert(t.iter().map(|u| format!("{u}#0")).collect::<Vec<_>>());
            }
            for t in &rel.at_1 {
                for tags in 0..1u64 << rel.arity {
                    tuples.insert(
                        t.iter()
                            .enumerate()
                            .map(|(i, u)| format!("{u}#{}", tags >> i & 1))
                            .collect::<Vec<_>>(),
                    );
                }
            }
            tuples
        };
        relations.insert(
            rname.clone(),
            Relation {
                arity: rel.arity,
                tuples,
            },
        );
    }
    let assignment = model
        .assignment()
        .iter()
        .map(|(v, e)| (v.clone(), format!("{e}#0")))
        .collect();
    RoughInterpretation::new(space, relations, assignment).map_err(Error::Rough)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra3::Three;
    use crate::syntax::parse;
    use crate::syntax::{expand_derived, Signature};
    use alloc::string::ToString;
    use alloc::vec;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn rough_sample() -> RoughInterpretation {
        let space = ApproximationSpace::new(
            strings(&["a", "b", "c"]),
            &[strings(&["a", "b"]), strings(&["c"])],
        )
        .unwrap();
        let mut relations = BTreeMap::new();
        relations.insert(
            "P".to_string(),
            Relation {
                arity: 1,
                tuples: [vec!["a".to_string()], vec!["c".to_string()]]
                    .into_iter()
                    .collect(),
            },
        );
        relations.insert(
            "T".to_string(),
            Relation {
                arity: 0,
                tuples: [Vec::new()].into_iter().collect(),
            },
        );
        let assignment = [("x".to_string(), "a".to_string())].into_iter().collect();
        RoughInterpretation::new(space, relations, assignment).unwrap()
    }

    fn kripke_sample() -> KripkeModel {
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

    fn battery() -> [&'static str; 10] {
        [
            "P(x)",
            "~P(x)",
            "D P(x)",
            "[]P(x)",
            "forall y. P(y)",
            "exists y. []P(y)",
            "P(x) | ~P(x)",
            "D (P(x) & P(x))",
            "~~P(x)",
            "forall y. P(y) | D P(y)",
        ]
    }

    #[test]
    fn quotient_of_the_sample_interpretation() {
        let k = to_kripke(&rough_sample()).unwrap();
        assert_eq!(k.universe(), &strings(&["a", "c"]));
        let p = &k.relations()["P"];
        assert_eq!(p.at_1, [vec!["c".to_string()]].into_iter().collect());
        assert_eq!(
            p.at_half,
            [vec!["a".to_string()], vec!["c".to_string()]]
                .into_iter()
                .collect()
        );
        let t = &k.relations()["T"];
        assert_eq!(t.at_1, [Vec::new()].into_iter().collect());
        assert_eq!(k.assignment()["x"], "a");
    }

    #[test]
    fn quotient_preserves_values() {
        let rough = rough_sample();
        let kripke = to_kripke(&rough).unwrap();
        let sig = Signature::with_relations(&[("P", 1), ("T", 0)]).unwrap();
        for text in battery() {
            let f = expand_derived(&parse(text, &sig).unwrap());
            assert_eq!(
                rough.valuate(&f).unwrap(),
                kripke.value(&f).unwrap(),
                "value of {text}"
            );
        }
    }

    #[test]
    fn unfolding_the_sample_model() {
        let r = to_rough(&kripke_sample()).unwrap();
        assert_eq!(
            r.space().universe(),
            &strings(&["a#0", "a#1", "b#0", "b#1"])
        );
        assert_eq!(
            r.space().blocks(),
            vec![strings(&["a#0", "a#1"]), strings(&["b#0", "b#1"])]
        );
        assert_eq!(
            r.relations()["P"].tuples,
            [
                vec!["a#0".to_string()],
                vec!["a#1".to_string()],
                vec!["b#0".to_string()],
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(r.assignment()["x"], "b#0");
    }

    #[test]
    fn unfolding_preserves_values() {
        let kripke = kripke_sample();
        let rough = to_rough(&kripke).unwrap();
        let sig = Signature::with_relations(&[("P", 1)]).unwrap();
        for text in battery() {
            let f = expand_derived(&parse(text, &sig).unwrap());
            assert_eq!(
                kripke.value(&f).unwrap(),
                rough.valuate(&f).unwrap(),
                "value of {text}"
            );
        }
        assert_eq!(rough.valuate(&parse("P(x)", &sig).unwrap()), Ok(Three::Half));
    }

    #[test]
    fn round_trip_renames_elements_only() {
        let kripke = kripke_sample();
        let back = to_kripke(&to_rough(&kripke).unwrap()).unwrap();
        // The round trip tags every element with `#0`.
        assert_eq!(back.universe(), &strings(&["a#0", "b#0"]));
        let p = &back.relations()["P"];
        let strip = |s: &BTreeSet<Vec<String>>| -> BTreeSet<Vec<String>> {
            s.iter()
                .map(|t| {
                    t.iter()
                        .map(|e| e.trim_end_matches("#0").to_string())
                        .collect()
                })
                .collect()
        };
        assert_eq!(strip(&p.at_1), kripke.relations()["P"].at_1);
        assert_eq!(strip(&p.at_half), kripke.relations()["P"].at_half);
        assert_eq!(back.assignment()["x"], "b#0");
    }

    #[test]
    fn nullary_boundary_is_rejected() {
        let mut relations = BTreeMap::new();
        relations.insert(
            "T".to_string(),
            KripkeRelation {
                arity: 0,
                at_1: BTreeSet::new(),
                at_half: [Vec::new()].into_iter().collect(),
            },
        );
        let model = KripkeModel::new(strings(&["a"]), relations, BTreeMap::new()).unwrap();
        assert_eq!(
            to_rough(&model),
            Err(Error::NullaryBoundary("T".to_string()))
        );
    }
}
