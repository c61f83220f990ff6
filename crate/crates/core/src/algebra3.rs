//! The three-element algebra of truth values and propositional consequence
//! over it.
//!
//! The carrier is the chain `0 < 1/2 < 1` with meet and join given by
//! minimum and maximum.  Two unary complements are definable:
//!
//! * [`Three::neg`] sends `x` to the largest `y` with `meet(x, y) = 0`
//!   (so `0 ↦ 1`, `1/2 ↦ 0`, `1 ↦ 0`);
//! * [`Three::dual`] sends `x` to the smallest `y` with `join(x, y) = 1`
//!   (so `0 ↦ 1`, `1/2 ↦ 1`, `1 ↦ 0`).
//!
//! [`Three::necessity`] is the composite `neg ∘ dual` (`0 ↦ 0`, `1/2 ↦ 0`,
//! `1 ↦ 1`); it interprets the `[]` connective.
//!
//! [`prop_consequence`] decides consequence for quantifier-free formulas by
//! sweeping all `3^n` valuations of the occurring atoms and returns the
//! first violating valuation in lexicographic order (atoms sorted by name,
//! values ordered `0 < 1/2 < 1`).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::Formula;

/// A truth value of the three-element chain `0 < 1/2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Three {
    Zero,
    Half,
    One,
}

impl Three {
    /// All values in ascending order.
    pub const ALL: [Three; 3] = [Three::Zero, Three::Half, Three::One];

    /// Lattice meet (minimum).
    #[must_use]
    pub fn meet(self, other: Three) -> Three {
        self.min(other)
    }

    /// Lattice join (maximum).
    #[must_use]
    pub fn join(self, other: Three) -> Three {
        self.max(other)
    }

    /// The largest `y` with `meet(self, y) = 0`.
    #[must_use]
    pub fn neg(self) -> Three {
        match self {
            Three::Zero => Three::One,
            Three::Half | Three::One => Three::Zero,
        }
    }

    /// The smallest `y` with `join(self, y) = 1`.
    #[must_use]
    pub fn dual(self) -> Three {
        match self {
            Three::Zero | Three::Half => Three::One,
            Three::One => Three::Zero,
        }
    }

    /// `neg ∘ dual`; interprets the necessity connective `[]`.
    #[must_use]
    pub fn necessity(self) -> Three {
        self.dual().neg()
    }

    /// Parses `"0"`, `"1/2"` or `"1"`.
    pub fn parse(text: &str) -> Option<Three> {
        match text {
            "0" => Some(Three::Zero),
            "1/2" => Some(Three::Half),
            "1" => Some(Three::One),
            _ => None,
        }
    }
}

impl fmt::Display for Three {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Three::Zero => f.write_str("0"),
            Three::Half => f.write_str("1/2"),
            Three::One => f.write_str("1"),
        }
    }
}

/// Assignment of truth values to atom keys (the printed form of an atom,
/// e.g. `"P(x)"` or `"Q"`).
pub type PropValuation = BTreeMap<String, Three>;

/// Default ceiling on the number of distinct atoms [`prop_consequence`] will
/// sweep (`3^12` valuations).
pub const DEFAULT_ATOM_GUARD: usize = 12;

/// Failure modes of propositional evaluation and consequence checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An atom of the formula has no value in the valuation.
    MissingAtom(String),
    /// The formula contains a quantifier; propositional evaluation is
    /// defined only for quantifier-free formulas.
    Quantifier,
    /// The formula contains `->` or `<->`; expand derived connectives first.
    DerivedConnective,
    /// The sweep would cover more atoms than the configured ceiling.
    TooManyAtoms { count: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MissingAtom(key) => write!(f, "no value for atom {key}"),
            Error::Quantifier => f.write_str("quantifier in propositional evaluation"),
            Error::DerivedConnective => {
                f.write_str("derived connective not expanded; call expand_derived first")
            }
            Error::TooManyAtoms { count, limit } => {
                write!(f, "{count} atoms exceed the sweep ceiling of {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Collects the atom keys of the given formulas (sorted by name).
pub fn atom_keys(formulas: &[&Formula]) -> BTreeSet<String> {
    fn walk(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Bottom => {}
            Formula::Atom(..) => {
                out.insert(f.to_string());
            }
            Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => walk(a, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => walk(a, out),
        }
    }
    let mut out = BTreeSet::new();
    for f in formulas {
        walk(f, &mut out);
    }
    out
}

/// Evaluates a quantifier-free formula with expanded connectives under a
/// valuation.
pub fn eval_prop(formula: &Formula, valuation: &PropValuation) -> Result<Three, Error> {
    match formula {
        Formula::Bottom => Ok(Three::Zero),
        Formula::Atom(..) => {
            let key = formula.to_string();
            valuation
                .get(&key)
                .copied()
                .ok_or(Error::MissingAtom(key))
        }
        Formula::Not(a) => Ok(eval_prop(a, valuation)?.neg()),
        Formula::Dual(a) => Ok(eval_prop(a, valuation)?.dual()),
        Formula::Box(a) => Ok(eval_prop(a, valuation)?.necessity()),
        Formula::And(a, b) => Ok(eval_prop(a, valuation)?.meet(eval_prop(b, valuation)?)),
        Formula::Or(a, b) => Ok(eval_prop(a, valuation)?.join(eval_prop(b, valuation)?)),
        Formula::Imp(..) | Formula::Iff(..) => Err(Error::DerivedConnective),
        Formula::Forall(..) | Formula::Exists(..) => Err(Error::Quantifier),
    }
}

/// Outcome of a propositional consequence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropVerdict {
    /// Under every valuation, the minimum of the premise values is at most
    /// the conclusion value.
    Valid,
    /// The first valuation (in lexicographic order) violating the
    /// consequence.
    Countermodel(PropValuation),
}

/// Checks `premises ⊨ conclusion` over the three-element algebra: for every
/// valuation of the occurring atoms, `min(premise values) ≤ conclusion
/// value`, where the minimum over no premises is `1`.
///
/// Uses the default atom ceiling of [`DEFAULT_ATOM_GUARD`].
pub fn prop_consequence(premises: &[Formula], conclusion: &Formula) -> Result<PropVerdict, Error> {
    prop_consequence_with_guard(premises, conclusion, DEFAULT_ATOM_GUARD)
}

/// [`prop_consequence`] with an explicit ceiling on the number of atoms.
pub fn prop_consequence_with_guard(
    premises: &[Formula],
    conclusion: &Formula,
    max_atoms: usize,
) -> Result<PropVerdict, Error> {
    let premises: Vec<Formula> = premises.iter().map(crate::syntax::expand_derived).collect();
    let conclusion = &crate::syntax::expand_derived(conclusion);
    let mut refs: Vec<&Formula> = premises.iter().collect();
    refs.push(conclusion);
    let atoms: Vec<String> = atom_keys(&refs).into_iter().collect();
    if atoms.len() > max_atoms {
        return Err(Error::TooManyAtoms {
            count: atoms.len(),
            limit: max_atoms,
        });
    }

    let mut digits = alloc::vec![0usize; atoms.len()];
    loop {
        let valuation: PropValuation = atoms
            .iter()
            .zip(digits.iter())
            .map(|(name, &d)| (name.clone(), Three::ALL[d]))
            .collect();

        let mut premise_min = Three::One;
        for p in &premises {
            premise_min = premise_min.meet(eval_prop(p, &valuation)?);
        }
        if premise_min > eval_prop(conclusion, &valuation)? {
            return Ok(PropVerdict::Countermodel(valuation));
        }

        // Odometer step: the last atom varies fastest, so valuations come
        // out in lexicographic order over the sorted atom names.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(PropVerdict::Valid);
            }
            pos -= 1;
            if digits[pos] < 2 {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
    }
}
