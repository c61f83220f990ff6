//! A corpus of checked derivations exercising every distinctive rule:
//! collapse of double negation over the dual and necessity operators,
//! excluded middle for boxed formulas, a necessitated axiom, idempotence
//! of necessity, and an antitonicity instance.  Each fixture records the
//! sequent its tree establishes.

use alloc::vec;
use alloc::vec::Vec;

use super::{ProofSystem, ProofTree, RuleName};
use crate::syntax::Formula;

/// A derivation together with the sequent it is expected to establish.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub system: ProofSystem,
    pub tree: ProofTree,
    /// Open assumptions in leaf order.
    pub assumptions: Vec<Formula>,
    pub conclusion: Formula,
}

fn node(rule: RuleName, conclusion: Formula, premises: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(rule, conclusion, premises)
}

/// From a derivation of the double negation of a boxed formula, conclude
/// the boxed formula itself.  Uses labels `l` and `l + 1`.
///
/// The inner `orE` unfolds the step from the boxed negated-necessity
/// assumption to the negated necessity (necessity is reflexive), and the
/// outer rules contradict it against the given premise.
fn collapse_double_negated_box(phi: Formula, premise: ProofTree, l: u64) -> ProofTree {
    let bphi = Formula::nec(phi);
    let nbphi = Formula::not(bphi.clone());
    let bnbphi = Formula::nec(nbphi.clone());
    let nbnbphi = Formula::not(bnbphi.clone());
    let reflexivity = node(
        RuleName::OrE,
        nbphi.clone(),
        vec![
            node(
                RuleName::NegBoxI,
                Formula::or(nbphi.clone(), nbnbphi.clone()),
                vec![],
            ),
            ProofTree::hyp_labeled(l + 1, nbphi.clone()),
            node(
                RuleName::Easq,
                nbphi.clone(),
                vec![node(
                    RuleName::NegE,
                    Formula::Bottom,
                    vec![
                        ProofTree::hyp_labeled(l, bnbphi.clone()),
                        ProofTree::hyp_labeled(l + 1, nbnbphi.clone()),
                    ],
                )],
            ),
        ],
    )
    .with_label(l + 1);
    node(
        RuleName::BoxCS,
        bphi,
        vec![node(
            RuleName::NegI,
            nbnbphi,
            vec![node(
                RuleName::NegE,
                Formula::Bottom,
                vec![reflexivity, premise],
            )],
        )
        .with_label(l)],
    )
}

/// A closed derivation of excluded middle for a boxed formula.  Uses
/// labels `l` through `l + 5`.
fn boxed_excluded_middle(phi: Formula, l: u64) -> ProofTree {
    let bphi = Formula::nec(phi.clone());
    let nbphi = Formula::not(bphi.clone());
    let nnbphi = Formula::not(nbphi.clone());
    let bnbphi = Formula::nec(nbphi.clone());
    let nbnbphi = Formula::not(bnbphi.clone());

    // Every formula or its double negation; here at the boxed formula.
    let weak_middle = node(
        RuleName::OrE,
        Formula::or(nbphi.clone(), nnbphi.clone()),
        vec![
            node(
                RuleName::NegBoxI,
                Formula::or(nbphi.clone(), nbnbphi.clone()),
                vec![],
            ),
            node(
                RuleName::OrIl,
                Formula::or(nbphi.clone(), nnbphi.clone()),
                vec![ProofTree::hyp_labeled(l, nbphi.clone())],
            ),
            node(
                RuleName::OrIr,
                Formula::or(nbphi.clone(), nnbphi.clone()),
                vec![node(
                    RuleName::NegI,
                    nnbphi.clone(),
                    vec![node(
                        RuleName::NegE,
                        Formula::Bottom,
                        vec![
                            node(
                                RuleName::BoxS,
                                bnbphi.clone(),
                                vec![ProofTree::hyp_labeled(l + 1, nbphi.clone())],
                            ),
                            ProofTree::hyp_labeled(l, nbnbphi.clone()),
                        ],
                    )],
                )
                .with_label(l + 1)],
            ),
        ],
    )
    .with_label(l);

    let flipped = node(
        RuleName::OrE,
        Formula::or(nnbphi.clone(), nbphi.clone()),
        vec![
            weak_middle,
            node(
                RuleName::OrIr,
                Formula::or(nnbphi.clone(), nbphi.clone()),
                vec![ProofTree::hyp_labeled(l + 2, nbphi.clone())],
            ),
            node(
                RuleName::OrIl,
                Formula::or(nnbphi.clone(), nbphi.clone()),
                vec![ProofTree::hyp_labeled(l + 2, nnbphi.clone())],
            ),
        ],
    )
    .with_label(l + 2);

    node(
        RuleName::OrE,
        Formula::or(bphi.clone(), nbphi.clone()),
        vec![
            flipped,
            node(
                RuleName::OrIl,
                Formula::or(bphi.clone(), nbphi.clone()),
                vec![collapse_double_negated_box(
                    phi,
                    ProofTree::hyp_labeled(l + 3, nnbphi),
                    l + 4,
                )],
            ),
            node(
                RuleName::OrIr,
                Formula::or(bphi, nbphi.clone()),
                vec![ProofTree::hyp_labeled(l + 3, nbphi)],
            ),
        ],
    )
    .with_label(l + 3)
}

fn double_negated_dual_collapse(binary: bool) -> Fixture {
    let p = Formula::prop("p");
    let dp = Formula::dual(p);
    let ddp = Formula::dual(dp.clone());
    let nndp = Formula::not(Formula::not(dp.clone()));

    let negated_dual = if binary {
        node(
            RuleName::NegI,
            Formula::not(dp.clone()),
            vec![node(
                RuleName::CS,
                Formula::Bottom,
                vec![
                    ProofTree::hyp_labeled(3, dp.clone()),
                    ProofTree::hyp_labeled(2, ddp.clone()),
                ],
            )],
        )
        .with_label(3)
    } else {
        node(
            RuleName::CSprime,
            Formula::not(dp.clone()),
            vec![ProofTree::hyp_labeled(2, ddp.clone())],
        )
    };

    let tree = node(
        RuleName::OrE,
        dp.clone(),
        vec![
            node(RuleName::DI, Formula::or(dp.clone(), ddp.clone()), vec![]),
            ProofTree::hyp_labeled(1, dp.clone()),
            node(
                RuleName::Easq,
                dp.clone(),
                vec![node(
                    RuleName::NegE,
                    Formula::Bottom,
                    vec![
                        ProofTree::hyp_labeled(1, ddp.clone()),
                        node(
                            RuleName::NegI,
                            Formula::not(ddp.clone()),
                            vec![node(
                                RuleName::NegE,
                                Formula::Bottom,
                                vec![negated_dual, ProofTree::hyp(nndp.clone())],
                            )],
                        )
                        .with_label(2),
                    ],
                )],
            ),
        ],
    )
    .with_label(1);

    Fixture {
        name: if binary {
            "double_negated_dual_collapse_binary"
        } else {
            "double_negated_dual_collapse"
        },
        system: ProofSystem::D,
        tree,
        assumptions: vec![nndp],
        conclusion: dp,
    }
}

fn boxed_negation_to_double_negation() -> Fixture {
    let p = Formula::prop("p");
    let np = Formula::not(p.clone());
    let bnp = Formula::nec(np.clone());
    let nbnp = Formula::not(bnp.clone());

    let tree = node(
        RuleName::NegI,
        Formula::not(np.clone()),
        vec![node(
            RuleName::NegE,
            Formula::Bottom,
            vec![
                node(
                    RuleName::BoxS,
                    bnp,
                    vec![ProofTree::hyp_labeled(1, np)],
                ),
                ProofTree::hyp(nbnp.clone()),
            ],
        )],
    )
    .with_label(1);

    Fixture {
        name: "boxed_negation_to_double_negation",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![nbnp],
        conclusion: Formula::not(Formula::not(p)),
    }
}

fn nested_box_to_double_negation() -> Fixture {
    let p = Formula::prop("p");
    let bp = Formula::nec(p);
    let nbp = Formula::not(bp.clone());
    let nbnbp = Formula::not(Formula::nec(nbp.clone()));

    let tree = node(
        RuleName::NegI,
        Formula::not(nbp.clone()),
        vec![node(
            RuleName::NegE,
            Formula::Bottom,
            vec![
                node(
                    RuleName::BoxCS,
                    bp.clone(),
                    vec![ProofTree::hyp(nbnbp.clone())],
                ),
                ProofTree::hyp_labeled(1, nbp),
            ],
        )],
    )
    .with_label(1);

    Fixture {
        name: "nested_box_to_double_negation",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![nbnbp],
        conclusion: Formula::not(Formula::not(bp)),
    }
}

fn double_negated_box_collapse() -> Fixture {
    let p = Formula::prop("p");
    let bp = Formula::nec(p.clone());
    let nnbp = Formula::not(Formula::not(bp.clone()));
    let tree = collapse_double_negated_box(p, ProofTree::hyp(nnbp.clone()), 1);
    Fixture {
        name: "double_negated_box_collapse",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![nnbp],
        conclusion: bp,
    }
}

fn box_excluded_middle() -> Fixture {
    let p = Formula::prop("p");
    let bp = Formula::nec(p.clone());
    let tree = boxed_excluded_middle(p, 1);
    Fixture {
        name: "box_excluded_middle",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![],
        conclusion: Formula::or(bp.clone(), Formula::not(bp)),
    }
}

fn necessitated_axiom() -> Fixture {
    let q = Formula::prop("q");
    let axiom = Formula::or(q.clone(), Formula::not(Formula::nec(q)));
    let naxiom = Formula::not(Formula::nec(axiom.clone()));

    let double_negated = node(
        RuleName::NegI,
        Formula::not(naxiom.clone()),
        vec![node(
            RuleName::NegBoxE,
            Formula::Bottom,
            vec![
                ProofTree::hyp_labeled(3, naxiom),
                node(
                    RuleName::OrIl,
                    Formula::or(axiom.clone(), Formula::Bottom),
                    vec![node(RuleName::NegBoxI, axiom.clone(), vec![])],
                ),
            ],
        )],
    )
    .with_label(3);

    let tree = collapse_double_negated_box(axiom.clone(), double_negated, 1);
    Fixture {
        name: "necessitated_axiom",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![],
        conclusion: Formula::nec(axiom),
    }
}

fn box_idempotence() -> Fixture {
    let p = Formula::prop("p");
    let bp = Formula::nec(p.clone());
    let bbp = Formula::nec(bp.clone());
    let nbp = Formula::not(bp.clone());
    let nbbp = Formula::not(bbp.clone());

    let double_negated = node(
        RuleName::NegI,
        Formula::not(nbbp.clone()),
        vec![node(
            RuleName::NegE,
            Formula::Bottom,
            vec![
                ProofTree::hyp(bp.clone()),
                node(
                    RuleName::NegBoxE,
                    nbp,
                    vec![
                        ProofTree::hyp_labeled(3, nbbp),
                        boxed_excluded_middle(p, 4),
                    ],
                ),
            ],
        )],
    )
    .with_label(3);

    let tree = collapse_double_negated_box(bp.clone(), double_negated, 1);
    Fixture {
        name: "box_idempotence",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![bp],
        conclusion: bbp,
    }
}

fn box_antitone_instance() -> Fixture {
    let q = Formula::prop("q");
    let r = Formula::prop("r");
    let qr = Formula::and(q.clone(), r);
    let nbq = Formula::not(Formula::nec(q.clone()));
    let nbqr = Formula::not(Formula::nec(qr.clone()));
    let split = Formula::or(q.clone(), nbqr.clone());

    let tree = node(
        RuleName::NegBoxE,
        nbqr.clone(),
        vec![
            ProofTree::hyp(nbq.clone()),
            node(
                RuleName::OrE,
                split.clone(),
                vec![
                    node(
                        RuleName::NegBoxI,
                        Formula::or(qr.clone(), nbqr.clone()),
                        vec![],
                    ),
                    node(
                        RuleName::OrIl,
                        split.clone(),
                        vec![node(
                            RuleName::AndEl,
                            q,
                            vec![ProofTree::hyp_labeled(1, qr)],
                        )],
                    ),
                    node(
                        RuleName::OrIr,
                        split,
                        vec![ProofTree::hyp_labeled(1, nbqr.clone())],
                    ),
                ],
            )
            .with_label(1),
        ],
    );

    Fixture {
        name: "box_antitone_instance",
        system: ProofSystem::Box,
        tree,
        assumptions: vec![nbq],
        conclusion: nbqr,
    }
}

/// Every fixture, in a stable order.
pub fn all() -> Vec<Fixture> {
    vec![
        double_negated_dual_collapse(false),
        double_negated_dual_collapse(true),
        boxed_negation_to_double_negation(),
        nested_box_to_double_negation(),
        double_negated_box_collapse(),
        box_excluded_middle(),
        necessitated_axiom(),
        box_idempotence(),
        box_antitone_instance(),
    ]
}
