//! The acceptance battery behind the `suite` subcommand: ten checks
//! covering the algebra tables, rule soundness, refuted strengthenings,
//! modality collapse, the two translations, the two semantics and their
//! transfer constructions, the bundled derivations, persistence, and the
//! parser.  Every random stream is seeded, so the battery is reproducible.

use std::collections::BTreeSet;

use roughlogic::algebra3::{
    atom_keys, eval_prop, prop_consequence, PropVerdict, Three,
};
use roughlogic::kripke_semantics::{kripke_consequence_bounded, KripkeVerdict, Node};
use roughlogic::proofcheck::{check_proof, fixtures, ProofTree, RuleName};
use roughlogic::rough_semantics::{rough_consequence_bounded, RoughVerdict};
use roughlogic::syntax::{
    expand_derived, normalize_modality, parse, relation_arities, translate_s, translate_t,
    Formula, Language, ModalityString, Signature,
};
use roughlogic::transfer::{to_kripke, to_rough};

use crate::gen::{all_valuations, Gen};

/// One line of the battery report.
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    /// `Ok` carries a short summary, `Err` what went wrong.
    pub outcome: Result<String, String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(detail) => format!("PASS  {:2}  {}: {detail}", self.index, self.name),
            Err(detail) => format!("FAIL  {:2}  {}: {detail}", self.index, self.name),
        }
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

fn result(
    index: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<String, String>,
) -> CriterionResult {
    CriterionResult {
        index,
        name,
        outcome: body(),
    }
}

// ---------------------------------------------------------------------------
// 1. Algebra tables.

pub fn criterion_1() -> CriterionResult {
    result(1, "algebra tables and identities", || {
        for x in Three::ALL {
            let neg_oracle = Three::ALL
                .iter()
                .copied()
                .filter(|&y| x.meet(y) == Three::Zero)
                .max()
                .unwrap();
            if x.neg() != neg_oracle {
                return Err(format!("~{x} is {} but the largest disjoint element is {neg_oracle}", x.neg()));
            }
            let dual_oracle = Three::ALL
                .iter()
                .copied()
                .filter(|&y| x.join(y) == Three::One)
                .min()
                .unwrap();
            if x.dual() != dual_oracle {
                return Err(format!("D {x} is {} but the least covering element is {dual_oracle}", x.dual()));
            }
            if x.necessity() != x.dual().neg() {
                return Err(format!("[]{x} differs from ~D {x}"));
            }
        }

        let identities: [(&str, fn(Three) -> bool); 8] = [
            ("~~~x = ~x", |x| x.neg().neg().neg() == x.neg()),
            ("DDDx = Dx", |x| x.dual().dual().dual() == x.dual()),
            ("x & ~x = 0", |x| x.meet(x.neg()) == Three::Zero),
            ("x | Dx = 1", |x| x.join(x.dual()) == Three::One),
            ("~x | ~~x = 1", |x| x.neg().join(x.neg().neg()) == Three::One),
            ("Dx & DDx = 0", |x| x.dual().meet(x.dual().dual()) == Three::Zero),
            ("x & Dx <= x | ~x", |x| x.meet(x.dual()) <= x.join(x.neg())),
            ("D~x = ~~x", |x| x.neg().dual() == x.neg().neg()),
        ];
        for (name, check) in identities {
            for x in Three::ALL {
                if !check(x) {
                    return Err(format!("identity {name} fails at {x}"));
                }
            }
        }
        Ok("complement oracles and 8 identities hold on all of 3".to_string())
    })
}

// ---------------------------------------------------------------------------
// 2. Rule soundness.

const RULE_SEQUENTS: [(&[&str], &str); 19] = [
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

fn prop_sig() -> Signature {
    Signature::with_relations(&[("a", 0), ("b", 0), ("c", 0)]).unwrap()
}

pub fn criterion_2() -> CriterionResult {
    result(2, "rule soundness", || {
        let sig = prop_sig();
        for (premise_texts, conclusion_text) in RULE_SEQUENTS {
            let premises: Vec<Formula> = premise_texts
                .iter()
                .map(|t| parse(t, &sig).unwrap())
                .collect();
            let conclusion = parse(conclusion_text, &sig).unwrap();
            match prop_consequence(&premises, &conclusion).map_err(|e| e.to_string())? {
                PropVerdict::Valid => {}
                PropVerdict::Countermodel(v) => {
                    return Err(format!(
                        "{premise_texts:?} |- {conclusion_text} refuted by {v:?}"
                    ));
                }
            }
        }
        Ok(format!("{} schematic sequents valid", RULE_SEQUENTS.len()))
    })
}

// ---------------------------------------------------------------------------
// 3. Refuted strengthenings.

fn check_refutation(premises: &[Formula], conclusion: &Formula) -> Result<String, String> {
    match prop_consequence(premises, conclusion).map_err(|e| e.to_string())? {
        PropVerdict::Valid => Err(format!("{conclusion} unexpectedly follows")),
        PropVerdict::Countermodel(v) => {
            let floor = premises
                .iter()
                .map(|p| eval_prop(&expand_derived(p), &v).unwrap())
                .min()
                .unwrap_or(Three::One);
            let value = eval_prop(&expand_derived(conclusion), &v).unwrap();
            if floor > value {
                Ok(v.iter()
                    .map(|(k, t)| format!("v({k})={t}"))
                    .collect::<Vec<_>>()
                    .join(", "))
            } else {
                Err(format!("returned witness does not refute {conclusion}"))
            }
        }
    }
}

pub fn criterion_3() -> CriterionResult {
    result(3, "contraposition of D fails", || {
        let sig = Signature::with_relations(&[("P", 0), ("Q", 0)]).unwrap();

        let premises = vec![parse("P -> Q", &sig).unwrap()];
        let conclusion = parse("D Q -> D P", &sig).unwrap();
        let witness = check_refutation(&premises, &conclusion)?;
        if witness != "v(P)=1, v(Q)=1/2" {
            return Err(format!("unexpected first countermodel: {witness}"));
        }

        let premises = vec![parse("P <-> Q", &sig).unwrap()];
        let conclusion = parse("D P <-> D Q", &sig).unwrap();
        let second = check_refutation(&premises, &conclusion)?;

        Ok(format!("witnesses {witness} and {second} re-evaluate to violations"))
    })
}

// ---------------------------------------------------------------------------
// 4. Modality collapse.

type Table = [Three; 3];

fn canonical_tables() -> BTreeSet<Table> {
    [
        [Three::Zero, Three::Half, Three::One],
        [Three::One, Three::Zero, Three::Zero],
        [Three::One, Three::One, Three::Zero],
        [Three::Zero, Three::One, Three::One],
        [Three::Zero, Three::Zero, Three::One],
    ]
    .into_iter()
    .collect()
}

pub fn criterion_4() -> CriterionResult {
    result(4, "modality collapse", || {
        // Strings over {~, D}.
        let mut nonempty = 0usize;
        let mut seen: BTreeSet<Table> = BTreeSet::new();
        for len in 0..=6u32 {
            for mask in 0..(1u64 << len) {
                let text: String = (0..len)
                    .map(|i| if mask >> i & 1 == 1 { 'D' } else { '~' })
                    .collect();
                let modality = ModalityString::parse(&text).unwrap();
                let composed = modality.table();
                let canonical = normalize_modality(&modality).table();
                if composed != canonical {
                    return Err(format!("{text:?} composes to {composed:?}, normalizes to {canonical:?}"));
                }
                seen.insert(composed);
                if len > 0 {
                    nonempty += 1;
                }
            }
        }
        if nonempty != 126 {
            return Err(format!("expected 126 nonempty strings, saw {nonempty}"));
        }
        if seen != canonical_tables() {
            return Err(format!("distinct tables over {{~, D}}: {}", seen.len()));
        }

        // Strings over {~, []}, composed directly.
        let mut seen_box: BTreeSet<Table> = BTreeSet::new();
        for len in 0..=6u32 {
            for mask in 0..(1u64 << len) {
                let mut table = [Three::Zero, Three::Half, Three::One];
                // Apply symbols innermost (rightmost) first.
                for i in (0..len).rev() {
                    let apply = if mask >> i & 1 == 1 {
                        Three::necessity
                    } else {
                        Three::neg
                    };
                    table = [apply(table[0]), apply(table[1]), apply(table[2])];
                }
                seen_box.insert(table);
            }
        }
        if seen_box != canonical_tables() {
            return Err(format!("distinct tables over {{~, []}}: {}", seen_box.len()));
        }

        // Cross-language spot checks between the two presentations.
        let spot = [
            (Three::necessity as fn(Three) -> Three, "~D"),
            (|x: Three| x.necessity().neg(), "D"),
            (|x: Three| x.neg().necessity().neg(), "~~"),
            (|x: Three| x.neg().neg(), "D~"),
        ];
        for (boxy, dual_text) in spot {
            let modality = ModalityString::parse(dual_text).unwrap();
            for x in Three::ALL {
                if boxy(x) != modality.apply(x) {
                    return Err(format!("box expression disagrees with {dual_text:?} at {x}"));
                }
            }
        }

        Ok("126 nonempty strings collapse onto the 5 canonical tables in both presentations".to_string())
    })
}

// ---------------------------------------------------------------------------
// 5. Translations.

pub fn criterion_5() -> CriterionResult {
    result(5, "translations preserve meaning", || {
        let atoms = ["P", "Q", "R", "S"];
        let mut g = Gen::new(0x7a31);
        for round in 0..10_000 {
            let f = g.prop_formula(&atoms, 6, Language::Dual, false);
            let image = translate_s(&translate_t(&f).unwrap()).unwrap();
            for valuation in all_valuations(&atom_keys(&[&f])) {
                let before = eval_prop(&f, &valuation).map_err(|e| e.to_string())?;
                let after = eval_prop(&image, &valuation).map_err(|e| e.to_string())?;
                if before != after {
                    return Err(format!("round {round}: {f} evaluates to {before}, image to {after}"));
                }
            }
        }

        let mut g = Gen::new(0x7a32);
        let atoms = ["P", "Q", "R"];
        for round in 0..1000 {
            let premises: Vec<Formula> = (0..round % 4)
                .map(|_| g.prop_formula(&atoms, 4, Language::Dual, true))
                .collect();
            let conclusion = g.prop_formula(&atoms, 4, Language::Dual, true);
            let t_premises: Vec<Formula> = premises
                .iter()
                .map(|p| translate_t(p).unwrap())
                .collect();
            let t_conclusion = translate_t(&conclusion).unwrap();
            let before = prop_consequence(&premises, &conclusion).map_err(|e| e.to_string())?;
            let after = prop_consequence(&t_premises, &t_conclusion).map_err(|e| e.to_string())?;
            if before != after {
                return Err(format!("round {round}: verdict changed under translation"));
            }
        }
        Ok("10000 formulas and 1000 sequents agree across translation".to_string())
    })
}

// ---------------------------------------------------------------------------
// 6. Transfer biconditionals.

pub fn criterion_6() -> CriterionResult {
    result(6, "transfer biconditionals", || {
        let rels = [("P", 1), ("R", 2)];
        let vars = ["x", "y"];

        let mut g = Gen::new(0x6a01);
        for round in 0..1000 {
            let size = 1 + round % 4;
            let m = g.rough_model(&rels, size, &vars);
            let lang = if round % 2 == 0 { Language::Dual } else { Language::Box };
            let f = g.fo_formula(&rels, &vars, 5, lang);
            let k = to_kripke(&m).map_err(|e| e.to_string())?;
            let value_one = m.valuate(&f).map_err(|e| e.to_string())? == Three::One;
            let forced = k.forces(Node::One, &f).map_err(|e| e.to_string())?;
            if value_one != forced {
                return Err(format!("round {round}: quotient direction fails on {f}"));
            }
        }

        let mut g = Gen::new(0x6a02);
        for round in 0..1000 {
            let size = 1 + round % 4;
            let k = g.kripke_model(&rels, size, &vars);
            let lang = if round % 2 == 0 { Language::Dual } else { Language::Box };
            let f = g.fo_formula(&rels, &vars, 5, lang);
            let m = to_rough(&k).map_err(|e| e.to_string())?;
            let forced = k.forces(Node::One, &f).map_err(|e| e.to_string())?;
            let value_one = m.valuate(&f).map_err(|e| e.to_string())? == Three::One;
            if forced != value_one {
                return Err(format!("round {round}: unfolding direction fails on {f}"));
            }
        }
        Ok("1000 pairs agree in each direction".to_string())
    })
}

// ---------------------------------------------------------------------------
// 7. Rough vs two-node bounded search.

const CURATED: &[(&[&str], &str, usize)] = &[
    // The rule schemas, instantiated with unary atoms.
    (&["P(x)", "Q(x)"], "P(x) & Q(x)", 2),
    (&["P(x) & Q(x)"], "P(x)", 2),
    (&["P(x) & Q(x)"], "Q(x)", 2),
    (&["P(x)"], "P(x) | Q(x)", 2),
    (&["Q(x)"], "P(x) | Q(x)", 2),
    (&["P(x) | Q(x)", "P(x) -> Q(y)", "Q(x) -> Q(y)"], "Q(y)", 2),
    (&["P(x) -> false"], "~P(x)", 2),
    (&["P(x)", "~P(x)"], "false", 2),
    (&["false"], "Q(y)", 2),
    (&[], "P(x) | D P(x)", 2),
    (&[], "~P(x) | ~~P(x)", 2),
    (&["D P(x)", "D D P(x)"], "false", 2),
    (&["P(x)", "D P(x)"], "Q(y) | ~Q(y)", 2),
    (&["D ~P(x)"], "~~P(x)", 2),
    (&["D D P(x)"], "~D P(x)", 2),
    (&[], "P(x) | ~[]P(x)", 2),
    (&["~P(x)"], "[]~P(x)", 2),
    (&["~[]~[]P(x)"], "[]P(x)", 2),
    (&["P(x)", "~[]P(x)"], "Q(y) | ~Q(y)", 2),
    // Constant-domain distribution, checked up to three elements.
    (&["forall x. P(y) | Q(x)"], "P(y) | forall x. Q(x)", 3),
    // Non-theorems.
    (&[], "P(x) | ~P(x)", 2),
    (&["~~P(x)"], "P(x)", 2),
    (&["P(x) -> Q(x)"], "D Q(x) -> D P(x)", 2),
    (&["D Q(x) -> D P(x)"], "P(x) -> Q(x)", 2),
    (&["P(x) <-> Q(x)"], "D P(x) <-> D Q(x)", 2),
    (&["exists x. P(x)"], "forall x. P(x)", 2),
    (&["P(x)"], "[]P(x)", 2),
    (&["P(x)"], "Q(x)", 2),
    (&["D P(x)"], "~P(x)", 2),
    (&["forall x. exists y. R(x,y)"], "exists y. forall x. R(x,y)", 2),
    // Theorems and equivalences.
    (&["P(x)"], "~~P(x)", 2),
    (&["~P(x)"], "D P(x)", 2),
    (&["forall x. P(x)"], "exists x. P(x)", 2),
    (&["forall x. P(x)"], "P(y)", 2),
    (&["forall x. P(x) & Q(x)"], "forall x. P(x)", 2),
    (&["forall x. P(x)", "forall x. Q(x)"], "forall x. P(x) & Q(x)", 2),
    (&["exists x. P(x) | Q(x)"], "(exists x. P(x)) | exists x. Q(x)", 2),
    (&["(exists x. P(x)) | exists x. Q(x)"], "exists x. P(x) | Q(x)", 2),
    (&["~(P(x) | Q(x))"], "~P(x) & ~Q(x)", 2),
    (&["~P(x) & ~Q(x)"], "~(P(x) | Q(x))", 2),
    (&["~(P(x) & Q(x))"], "~P(x) | ~Q(x)", 2),
    (&["D (P(x) & Q(x))"], "D P(x) | D Q(x)", 2),
    (&["D P(x) | D Q(x)"], "D (P(x) & Q(x))", 2),
    (&["[]P(x)"], "P(x)", 2),
    (&["[](P(x) & Q(x))"], "[]P(x) & []Q(x)", 2),
    (&["[]P(x) & []Q(x)"], "[](P(x) & Q(x))", 2),
    (&[], "[]P(x) | ~[]P(x)", 2),
    (&["forall x. []P(x)"], "[]forall x. P(x)", 2),
    (&["[]forall x. P(x)"], "forall x. []P(x)", 2),
    (&["D forall x. P(x)"], "exists x. D P(x)", 2),
    (&["exists x. D P(x)"], "D forall x. P(x)", 2),
    (&["~exists x. P(x)"], "forall x. ~P(x)", 2),
    (&["forall x. ~P(x)"], "~exists x. P(x)", 2),
    (&["~forall x. P(x)"], "exists x. ~P(x)", 2),
    (&["exists x. ~P(x)"], "~forall x. P(x)", 2),
    (&["R(x,y)"], "exists y. R(x,y)", 2),
    (&["forall x. forall y. R(x,y)"], "R(y,x)", 2),
    (&["exists y. forall x. R(x,y)"], "forall x. exists y. R(x,y)", 2),
];

pub fn criterion_7() -> CriterionResult {
    result(7, "rough and two-node search agree", || {
        let sig = Signature::with_relations(&[("P", 1), ("Q", 1), ("R", 2)]).unwrap();
        let mut countermodels = 0usize;
        for &(premise_texts, conclusion_text, bound) in CURATED {
            let premises: Vec<Formula> = premise_texts
                .iter()
                .map(|t| parse(t, &sig).unwrap())
                .collect();
            let conclusion = parse(conclusion_text, &sig).unwrap();

            // Search only over the relations the sequent mentions.
            let mut refs: Vec<&Formula> = premises.iter().collect();
            refs.push(&conclusion);
            let mut small = Signature::new();
            for (name, arity) in relation_arities(&refs).unwrap() {
                small.declare(&name, arity).unwrap();
            }

            let rough = rough_consequence_bounded(&premises, &conclusion, &small, bound)
                .map_err(|e| e.to_string())?;
            let kripke = kripke_consequence_bounded(&premises, &conclusion, &small, bound)
                .map_err(|e| e.to_string())?;
            match (rough, kripke) {
                (RoughVerdict::Valid, KripkeVerdict::Valid) => {}
                (RoughVerdict::Countermodel(m), KripkeVerdict::Countermodel(k)) => {
                    countermodels += 1;
                    let converted = to_kripke(&m).map_err(|e| e.to_string())?;
                    if !refuted_on_kripke(&converted, &premises, &conclusion)? {
                        return Err(format!(
                            "rough witness for {conclusion_text} does not convert"
                        ));
                    }
                    let back = to_rough(&k).map_err(|e| e.to_string())?;
                    if !refuted_on_rough(&back, &premises, &conclusion)? {
                        return Err(format!(
                            "two-node witness for {conclusion_text} does not convert"
                        ));
                    }
                }
                (r, k) => {
                    return Err(format!(
                        "verdicts disagree on {premise_texts:?} |- {conclusion_text}: rough {} vs two-node {}",
                        verdict_name_rough(&r),
                        verdict_name_kripke(&k),
                    ));
                }
            }
        }
        Ok(format!(
            "{} sequents agree ({countermodels} countermodels cross-convert)",
            CURATED.len()
        ))
    })
}

fn verdict_name_rough(v: &RoughVerdict) -> &'static str {
    match v {
        RoughVerdict::Valid => "valid",
        RoughVerdict::Countermodel(_) => "countermodel",
    }
}

fn verdict_name_kripke(v: &KripkeVerdict) -> &'static str {
    match v {
        KripkeVerdict::Valid => "valid",
        KripkeVerdict::Countermodel(_) => "countermodel",
    }
}

fn refuted_on_kripke(
    model: &roughlogic::kripke_semantics::KripkeModel,
    premises: &[Formula],
    conclusion: &Formula,
) -> Result<bool, String> {
    let premises: Vec<Formula> = premises.iter().map(expand_derived).collect();
    let conclusion = expand_derived(conclusion);
    let mut floor = Three::One;
    for p in &premises {
        floor = floor.meet(model.value(p).map_err(|e| e.to_string())?);
    }
    Ok(floor > model.value(&conclusion).map_err(|e| e.to_string())?)
}

fn refuted_on_rough(
    model: &roughlogic::rough_semantics::RoughInterpretation,
    premises: &[Formula],
    conclusion: &Formula,
) -> Result<bool, String> {
    let premises: Vec<Formula> = premises.iter().map(expand_derived).collect();
    let conclusion = expand_derived(conclusion);
    let mut floor = Three::One;
    for p in &premises {
        floor = floor.meet(model.valuate(p).map_err(|e| e.to_string())?);
    }
    Ok(floor > model.valuate(&conclusion).map_err(|e| e.to_string())?)
}

// ---------------------------------------------------------------------------
// 8. Derivation fixtures and mutations.

fn node_at_mut(tree: &mut ProofTree, index: usize) -> Option<&mut ProofTree> {
    fn go<'a>(tree: &'a mut ProofTree, index: &mut usize) -> Option<&'a mut ProofTree> {
        if *index == 0 {
            return Some(tree);
        }
        *index -= 1;
        for premise in &mut tree.premises {
            if let Some(found) = go(premise, index) {
                return Some(found);
            }
        }
        None
    }
    let mut index = index;
    go(tree, &mut index)
}

pub fn criterion_8() -> CriterionResult {
    result(8, "derivation fixtures and mutations", || {
        for fixture in fixtures::all() {
            let sequent = check_proof(&fixture.tree, fixture.system)
                .map_err(|e| format!("{} does not check: {e}", fixture.name))?;
            let expected: BTreeSet<Formula> = fixture.assumptions.iter().cloned().collect();
            if sequent.assumptions != expected || sequent.conclusion != fixture.conclusion {
                return Err(format!("{} establishes the wrong sequent", fixture.name));
            }
            let premises: Vec<Formula> = sequent.assumptions.iter().cloned().collect();
            match prop_consequence(&premises, &sequent.conclusion).map_err(|e| e.to_string())? {
                PropVerdict::Valid => {}
                PropVerdict::Countermodel(_) => {
                    return Err(format!("{} proves an invalid sequent", fixture.name));
                }
            }

            let mut mutations = 0usize;
            let nodes = fixture.tree.node_count();
            for index in 0..nodes {
                let mut mutants: Vec<(String, ProofTree)> = Vec::new();

                let mut probe = fixture.tree.clone();
                let node = node_at_mut(&mut probe, index).unwrap();
                let original_rule = node.rule;
                let original_label = node.label;

                for &rule in RuleName::ALL.iter().filter(|&&r| r != original_rule) {
                    let mut mutant = fixture.tree.clone();
                    node_at_mut(&mut mutant, index).unwrap().rule = rule;
                    mutants.push((format!("rule {} at node {index}", rule.as_str()), mutant));
                }

                let mut mutant = fixture.tree.clone();
                {
                    let node = node_at_mut(&mut mutant, index).unwrap();
                    node.conclusion = Formula::not(node.conclusion.clone());
                }
                mutants.push((format!("negated formula at node {index}"), mutant));

                if let Some(label) = original_label {
                    let mut mutant = fixture.tree.clone();
                    node_at_mut(&mut mutant, index).unwrap().label = Some(label + 101);
                    mutants.push((format!("shifted label at node {index}"), mutant));

                    let mut mutant = fixture.tree.clone();
                    node_at_mut(&mut mutant, index).unwrap().label = None;
                    mutants.push((format!("dropped label at node {index}"), mutant));
                }

                for (description, mutant) in mutants {
                    mutations += 1;
                    if let Ok(mutated_sequent) = check_proof(&mutant, fixture.system) {
                        if mutated_sequent == sequent {
                            return Err(format!(
                                "{}: {description} still proves the same sequent",
                                fixture.name
                            ));
                        }
                    }
                }
            }
            if mutations < 100 {
                return Err(format!(
                    "{}: only {mutations} mutations exercised",
                    fixture.name
                ));
            }
        }
        Ok(format!(
            "{} fixtures accepted; every single-node mutation is rejected or changes the sequent",
            fixtures::all().len()
        ))
    })
}

// ---------------------------------------------------------------------------
// 9. Persistence.

pub fn criterion_9() -> CriterionResult {
    result(9, "forcing is persistent", || {
        let rels = [("P", 1), ("R", 2)];
        let vars = ["x", "y"];
        let mut g = Gen::new(0x9e11);
        for round in 0..10_000 {
            let size = 1 + round % 4;
            let k = g.kripke_model(&rels, size, &vars);
            let lang = if round % 2 == 0 { Language::Dual } else { Language::Box };
            let f = g.fo_formula(&rels, &vars, 5, lang);
            let at_root = k.forces(Node::One, &f).map_err(|e| e.to_string())?;
            if at_root && !k.forces(Node::Half, &f).map_err(|e| e.to_string())? {
                return Err(format!("round {round}: {f} forced at 1 but not at 1/2"));
            }
        }
        Ok("10000 random model/formula pairs persist".to_string())
    })
}

// ---------------------------------------------------------------------------
// 10. Parser round trips.

pub fn criterion_10() -> CriterionResult {
    result(10, "printing and parsing invert", || {
        let sig = Signature::with_relations(&[
            ("P", 1),
            ("R", 2),
            ("Q", 0),
            ("T", 0),
            ("S", 1),
        ])
        .unwrap();
        let mut g = Gen::new(0xa10a);
        for round in 0..10_000 {
            let lang = if round % 2 == 0 { Language::Dual } else { Language::Box };
            let f = g.any_formula(lang, 6);
            let printed = f.to_string();
            let reparsed = parse(&printed, &sig)
                .map_err(|e| format!("round {round}: {printed:?} fails to parse: {e}"))?;
            if reparsed != f {
                return Err(format!("round {round}: {printed:?} parses differently"));
            }
            if reparsed.to_string() != printed {
                return Err(format!("round {round}: printing is unstable on {printed:?}"));
            }
        }
        Ok("10000 formulas round-trip through print and parse".to_string())
    })
}
