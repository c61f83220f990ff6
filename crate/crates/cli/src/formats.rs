//! JSON file formats: signatures, rough models, two-node models, prop
//! valuations, and proof trees.  Maps serialize with sorted keys, so every
//! rendering is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use roughlogic::algebra3::{PropValuation, Three};
use roughlogic::kripke_semantics::{KripkeModel, KripkeRelation};
use roughlogic::proofcheck::{ProofTree, RuleName};
use roughlogic::rough_semantics::{Relation, RoughInterpretation};
use roughlogic::roughsets::ApproximationSpace;
use roughlogic::syntax::{parse_inferring, Signature};

/// `{"relations": {"P": 1, "R": 2}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigFile {
    pub relations: BTreeMap<String, usize>,
}

impl SigFile {
    pub fn to_signature(&self) -> Result<Signature> {
        let mut sig = Signature::new();
        for (name, &arity) in &self.relations {
            sig.declare(name, arity)
                .map_err(|e| anyhow!("relation {name}: {e}"))?;
        }
        Ok(sig)
    }

    pub fn from_signature(sig: &Signature) -> Self {
        SigFile {
            relations: sig
                .relations()
                .map(|(n, a)| (n.to_string(), a))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

/// A rough model: universe, indiscernibility blocks, relation tables, and
/// the variable assignment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoughModelFile {
    pub universe: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub relations: BTreeMap<String, RelationFile>,
    #[serde(default)]
    pub assignment: BTreeMap<String, String>,
}

impl RoughModelFile {
    pub fn to_interpretation(&self) -> Result<RoughInterpretation> {
        let space = ApproximationSpace::new(self.universe.clone(), &self.blocks)
            .map_err(|e| anyhow!("approximation space: {e}"))?;
        let relations = self
            .relations
            .iter()
            .map(|(name, rel)| {
                let tuples: BTreeSet<Vec<String>> = rel.tuples.iter().cloned().collect();
                (
                    name.clone(),
                    Relation {
                        arity: rel.arity,
                        tuples,
                    },
                )
            })
            .collect();
        RoughInterpretation::new(space, relations, self.assignment.clone())
            .map_err(|e| anyhow!("rough model: {e}"))
    }

    pub fn from_interpretation(interp: &RoughInterpretation) -> Self {
        RoughModelFile {
            universe: interp.space().universe().to_vec(),
            blocks: interp.space().blocks(),
            relations: interp
                .relations()
                .iter()
                .map(|(name, rel)| {
                    (
                        name.clone(),
                        RelationFile {
                            arity: rel.arity,
                            tuples: rel.tuples.iter().cloned().collect(),
                        },
                    )
                })
                .collect(),
            assignment: interp.assignment().clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KripkeRelationFile {
    pub arity: usize,
    pub at_1: Vec<Vec<String>>,
    pub at_half: Vec<Vec<String>>,
}

/// A two-node model: universe, per-node relation tables, and the variable
/// assignment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KripkeModelFile {
    pub universe: Vec<String>,
    pub relations: BTreeMap<String, KripkeRelationFile>,
    #[serde(default)]
    pub assignment: BTreeMap<String, String>,
}

impl KripkeModelFile {
    pub fn to_model(&self) -> Result<KripkeModel> {
        let relations = self
            .relations
            .iter()
            .map(|(name, rel)| {
                (
                    name.clone(),
                    KripkeRelation {
                        arity: rel.arity,
                        at_1: rel.at_1.iter().cloned().collect(),
                        at_half: rel.at_half.iter().cloned().collect(),
                    },
                )
            })
            .collect();
        KripkeModel::new(self.universe.clone(), relations, self.assignment.clone())
            .map_err(|e| anyhow!("two-node model: {e}"))
    }

    pub fn from_model(model: &KripkeModel) -> Self {
        KripkeModelFile {
            universe: model.universe().to_vec(),
            relations: model
                .relations()
                .iter()
                .map(|(name, rel)| {
                    (
                        name.clone(),
                        KripkeRelationFile {
                            arity: rel.arity,
                            at_1: rel.at_1.iter().cloned().collect(),
                            at_half: rel.at_half.iter().cloned().collect(),
                        },
                    )
                })
                .collect(),
            assignment: model.assignment().clone(),
        }
    }
}

/// A propositional valuation: atom text mapped to `"0"`, `"1/2"`, or `"1"`.
pub type ValuationFile = BTreeMap<String, String>;

pub fn valuation_to_file(valuation: &PropValuation) -> ValuationFile {
    valuation
        .iter()
        .map(|(k, v)| (k.clone(), v.to_string()))
        .collect()
}

pub fn valuation_from_file(file: &ValuationFile) -> Result<PropValuation> {
    file.iter()
        .map(|(k, v)| {
            Three::parse(v)
                .map(|t| (k.clone(), t))
                .ok_or_else(|| anyhow!("atom {k}: {v:?} is not one of 0, 1/2, 1"))
        })
        .collect()
}

/// One derivation node: `{"rule": "...", "formula": "...", "premises":
/// [...], "label": 1}`.  The label is only meaningful on `hyp` and on the
/// discharging rules.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofNodeFile {
    pub rule: String,
    pub formula: String,
    #[serde(default)]
    pub premises: Vec<ProofNodeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u64>,
}

impl ProofNodeFile {
    /// Parses the node formulas against a signature inferred across the
    /// whole tree.
    pub fn to_tree(&self, sig: &mut Signature) -> Result<ProofTree> {
        let rule = RuleName::parse(&self.rule)
            .ok_or_else(|| anyhow!("unknown rule name {:?}", self.rule))?;
        let conclusion = parse_inferring(&self.formula, sig)
            .with_context(|| format!("formula {:?}", self.formula))?;
        let premises = self
            .premises
            .iter()
            .map(|p| p.to_tree(sig))
            .collect::<Result<Vec<_>>>()?;
        let mut tree = ProofTree::new(rule, conclusion, premises);
        tree.label = self.label;
        Ok(tree)
    }

    pub fn from_tree(tree: &ProofTree) -> Self {
        ProofNodeFile {
            rule: tree.rule.as_str().to_string(),
            formula: tree.conclusion.to_string(),
            premises: tree.premises.iter().map(Self::from_tree).collect(),
            label: tree.label,
        }
    }
}

/// Reads and parses a JSON file.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Serializes a value as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes a value as pretty JSON.
pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Guesses whether a model file is rough or two-node by its fields.
pub fn sniff_is_rough(text: &str) -> Result<bool> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("blocks") {
        Some(_) => Ok(true),
        None => {
            if value.get("relations").is_some() {
                Ok(false)
            } else {
                bail!("model file has neither \"blocks\" nor \"relations\"")
            }
        }
    }
}
