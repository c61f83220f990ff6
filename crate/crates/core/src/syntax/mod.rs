//! Formula syntax: abstract syntax trees, signatures, parsing and printing,
//! derived-connective expansion, the two modal-language translations, and
//! modality-string normalization.
//!
//! Formulas come in two pure modal languages over a shared first-order
//! skeleton: the `D` language (with the dual operator) and the `[]` language
//! (with necessity).  A formula using neither operator belongs to both.
//! The parser accepts ASCII syntax (`~`, `D`, `[]`, `&`, `|`, `->`, `<->`,
//! `forall x.`, `exists x.`, `false`) as well as the Unicode aliases
//! `¬ ∧ ∨ → ↔ □ ⊥ ∀ ∃`; the printer always emits ASCII.

mod parse;

pub use parse::{
    parse, parse_in_language, parse_inferring, parse_inferring_in_language, ParseError,
    ParseErrorKind,
};

use alloc::boxed::Box as Heap;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra3::Three;

/// Identifiers that the grammar claims for itself; they cannot name
/// relations.
pub const RESERVED_WORDS: [&str; 4] = ["D", "false", "forall", "exists"];

/// Maps relation names to arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    relations: BTreeMap<String, usize>,
}

/// Rejected signature declarations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    ReservedName(String),
    DuplicateRelation(String),
    /// Relation names must be identifiers: a letter or `_` followed by
    /// letters, digits, or `_`.
    InvalidName(String),
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::ReservedName(n) => write!(f, "{n} is a reserved word"),
            SignatureError::DuplicateRelation(n) => write!(f, "relation {n} declared twice"),
            SignatureError::InvalidName(n) => write!(f, "{n:?} is not a valid relation name"),
        }
    }
}

impl core::error::Error for SignatureError {}

pub(crate) fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a signature from `(name, arity)` pairs.
    pub fn with_relations(pairs: &[(&str, usize)]) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        for (name, arity) in pairs {
            sig.declare(name, *arity)?;
        }
        Ok(sig)
    }

    pub fn is_reserved(name: &str) -> bool {
        RESERVED_WORDS.contains(&name)
    }

    pub fn declare(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if Self::is_reserved(name) {
            return Err(SignatureError::ReservedName(name.into()));
        }
        if !is_ident(name) {
            return Err(SignatureError::InvalidName(name.into()));
        }
        if self.relations.contains_key(name) {
            return Err(SignatureError::DuplicateRelation(name.into()));
        }
        self.relations.insert(name.into(), arity);
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.relations.contains_key(name)
    }

    /// Declared relations in name order.
    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }
}

/// The two pure modal languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    /// Uses the dual operator `D` and not `[]`.
    Dual,
    /// Uses the necessity operator `[]` and not `D`.
    Box,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::Dual => f.write_str("d"),
            Language::Box => f.write_str("box"),
        }
    }
}

/// Which modal operators a formula actually uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanguageClass {
    /// Neither `D` nor `[]`; the formula belongs to both languages.
    Neutral,
    DualOnly,
    BoxOnly,
    /// Both operators occur; such formulas are never produced by the parser.
    Mixed,
}

impl LanguageClass {
    pub fn fits(self, lang: Language) -> bool {
        match (self, lang) {
            (LanguageClass::Neutral, _) => true,
            (LanguageClass::DualOnly, Language::Dual) => true,
            (LanguageClass::BoxOnly, Language::Box) => true,
            _ => false,
        }
    }
}

/// A first-order formula.  `Imp` and `Iff` are parser-level sugar; every
/// semantic operation expects them to have been removed by
/// [`expand_derived`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    /// Relation applied to variables; a 0-ary relation acts as a
    /// propositional letter.
    Atom(String, Vec<String>),
    Not(Heap<Formula>),
    Dual(Heap<Formula>),
    Box(Heap<Formula>),
    And(Heap<Formula>, Heap<Formula>),
    Or(Heap<Formula>, Heap<Formula>),
    Imp(Heap<Formula>, Heap<Formula>),
    Iff(Heap<Formula>, Heap<Formula>),
    Forall(String, Heap<Formula>),
    Exists(String, Heap<Formula>),
}

impl Formula {
    pub fn atom(name: &str, vars: &[&str]) -> Formula {
        Formula::Atom(name.into(), vars.iter().map(|v| (*v).into()).collect())
    }

    /// A 0-ary atom.
    pub fn prop(name: &str) -> Formula {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Heap::new(f))
    }

    pub fn dual(f: Formula) -> Formula {
        Formula::Dual(Heap::new(f))
    }

    /// Necessity (`[]`).
    pub fn nec(f: Formula) -> Formula {
        Formula::Box(Heap::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Heap::new(l), Heap::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Heap::new(l), Heap::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Heap::new(l), Heap::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Heap::new(l), Heap::new(r))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.into(), Heap::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.into(), Heap::new(body))
    }

    pub fn uses_dual(&self) -> bool {
        match self {
            Formula::Dual(_) => true,
            Formula::Bottom | Formula::Atom(..) => false,
            Formula::Not(a) | Formula::Box(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                a.uses_dual()
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.uses_dual() || b.uses_dual()
            }
        }
    }

    pub fn uses_box(&self) -> bool {
        match self {
            Formula::Box(_) => true,
            Formula::Bottom | Formula::Atom(..) => false,
            Formula::Not(a) | Formula::Dual(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => {
                a.uses_box()
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.uses_box() || b.uses_box()
            }
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => false,
            Formula::Bottom | Formula::Atom(..) => true,
            Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
        }
    }

    /// Variables with a free occurrence, sorted by name.
    pub fn free_vars(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Bottom => {}
                Formula::Atom(_, args) => {
                    for v in args {
                        if !bound.contains(v) {
                            out.insert(v.clone());
                        }
                    }
                }
                Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => walk(a, bound, out),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Imp(a, b)
                | Formula::Iff(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    bound.push(x.clone());
                    walk(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Classifies which modal operators occur in `f`.
pub fn language_of(f: &Formula) -> LanguageClass {
    match (f.uses_dual(), f.uses_box()) {
        (false, false) => LanguageClass::Neutral,
        (true, false) => LanguageClass::DualOnly,
        (false, true) => LanguageClass::BoxOnly,
        (true, true) => LanguageClass::Mixed,
    }
}

/// Arities of the relations occurring in the given formulas.
///
/// Fails if the same relation name is applied to argument lists of two
/// different lengths (hand-built trees can do this; parsed ones cannot).
pub fn relation_arities(formulas: &[&Formula]) -> Result<BTreeMap<String, usize>, ArityConflict> {
    fn walk(
        f: &Formula,
        out: &mut BTreeMap<String, usize>,
    ) -> Result<(), ArityConflict> {
        match f {
            Formula::Bottom => Ok(()),
            Formula::Atom(name, args) => match out.get(name) {
                None => {
                    out.insert(name.clone(), args.len());
                    Ok(())
                }
                Some(&a) if a == args.len() => Ok(()),
                Some(&a) => Err(ArityConflict {
                    relation: name.clone(),
                    first: a,
                    second: args.len(),
                }),
            },
            Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => walk(a, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                walk(a, out)?;
                walk(b, out)
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => walk(a, out),
        }
    }
    let mut out = BTreeMap::new();
    for f in formulas {
        walk(f, &mut out)?;
    }
    Ok(out)
}

/// A relation used with two different argument-list lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityConflict {
    pub relation: String,
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for ArityConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation {} used with {} and with {} arguments",
            self.relation, self.first, self.second
        )
    }
}

impl core::error::Error for ArityConflict {}

/// Removes `->` and `<->`.
///
/// `a -> b` becomes `~(a & ~b) & (D a | b)`; in a formula that uses `[]`
/// the second conjunct is `~[]a | b` instead.  Formulas using neither
/// operator get the `D` form.  `a <-> b` is the conjunction of the two
/// directions.
pub fn expand_derived(f: &Formula) -> Formula {
    let box_style = matches!(language_of(f), LanguageClass::BoxOnly);
    expand_in(f, box_style)
}

fn expand_in(f: &Formula, box_style: bool) -> Formula {
    let conditional = |a: Formula, b: Formula| -> Formula {
        let strong = if box_style {
            Formula::not(Formula::nec(a.clone()))
        } else {
            Formula::dual(a.clone())
        };
        Formula::and(
            Formula::not(Formula::and(a, Formula::not(b.clone()))),
            Formula::or(strong, b),
        )
    };
    match f {
        Formula::Bottom | Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(expand_in(a, box_style)),
        Formula::Dual(a) => Formula::dual(expand_in(a, box_style)),
        Formula::Box(a) => Formula::nec(expand_in(a, box_style)),
        Formula::And(a, b) => Formula::and(expand_in(a, box_style), expand_in(b, box_style)),
        Formula::Or(a, b) => Formula::or(expand_in(a, box_style), expand_in(b, box_style)),
        Formula::Imp(a, b) => conditional(expand_in(a, box_style), expand_in(b, box_style)),
        Formula::Iff(a, b) => {
            let a = expand_in(a, box_style);
            let b = expand_in(b, box_style);
            Formula::and(
                conditional(a.clone(), b.clone()),
                conditional(b, a),
            )
        }
        Formula::Forall(x, a) => Formula::forall(x, expand_in(a, box_style)),
        Formula::Exists(x, a) => Formula::exists(x, expand_in(a, box_style)),
    }
}

/// Translation failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslateError {
    /// `translate_t` expects a formula without `[]`.
    SourceUsesBox,
    /// `translate_s` expects a formula without `D`.
    SourceUsesDual,
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::SourceUsesBox => f.write_str("source formula already uses []"),
            TranslateError::SourceUsesDual => f.write_str("source formula already uses D"),
        }
    }
}

impl core::error::Error for TranslateError {}

/// Rewrites every `D a` as `~[]a`, turning a `D`-language formula into a
/// `[]`-language one.
pub fn translate_t(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Bottom | Formula::Atom(..) => Ok(f.clone()),
        Formula::Box(_) => Err(TranslateError::SourceUsesBox),
        Formula::Dual(a) => Ok(Formula::not(Formula::nec(translate_t(a)?))),
        Formula::Not(a) => Ok(Formula::not(translate_t(a)?)),
        Formula::And(a, b) => Ok(Formula::and(translate_t(a)?, translate_t(b)?)),
        Formula::Or(a, b) => Ok(Formula::or(translate_t(a)?, translate_t(b)?)),
        Formula::Imp(a, b) => Ok(Formula::imp(translate_t(a)?, translate_t(b)?)),
        Formula::Iff(a, b) => Ok(Formula::iff(translate_t(a)?, translate_t(b)?)),
        Formula::Forall(x, a) => Ok(Formula::forall(x, translate_t(a)?)),
        Formula::Exists(x, a) => Ok(Formula::exists(x, translate_t(a)?)),
    }
}

/// Rewrites every `[]a` as `~D a`, turning a `[]`-language formula into a
/// `D`-language one.
pub fn translate_s(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Bottom | Formula::Atom(..) => Ok(f.clone()),
        Formula::Dual(_) => Err(TranslateError::SourceUsesDual),
        Formula::Box(a) => Ok(Formula::not(Formula::dual(translate_s(a)?))),
        Formula::Not(a) => Ok(Formula::not(translate_s(a)?)),
        Formula::And(a, b) => Ok(Formula::and(translate_s(a)?, translate_s(b)?)),
        Formula::Or(a, b) => Ok(Formula::or(translate_s(a)?, translate_s(b)?)),
        Formula::Imp(a, b) => Ok(Formula::imp(translate_s(a)?, translate_s(b)?)),
        Formula::Iff(a, b) => Ok(Formula::iff(translate_s(a)?, translate_s(b)?)),
        Formula::Forall(x, a) => Ok(Formula::forall(x, translate_s(a)?)),
        Formula::Exists(x, a) => Ok(Formula::exists(x, translate_s(a)?)),
    }
}

/// Counts occurrences of `target` as a subformula of `host` (a formula is a
/// subformula of itself).  Occurrences never nest, because no formula is a
/// proper subformula of itself.
pub fn count_occurrences(host: &Formula, target: &Formula) -> usize {
    if host == target {
        return 1;
    }
    match host {
        Formula::Bottom | Formula::Atom(..) => 0,
        Formula::Not(a) | Formula::Dual(a) | Formula::Box(a) => count_occurrences(a, target),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            count_occurrences(a, target) + count_occurrences(b, target)
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) => count_occurrences(a, target),
    }
}

/// Replacement with nothing to replace at the requested position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSuchOccurrence {
    pub index: usize,
    pub count: usize,
}

impl fmt::Display for NoSuchOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "occurrence index {} out of range (target occurs {} times)",
            self.index, self.count
        )
    }
}

impl core::error::Error for NoSuchOccurrence {}

/// Replaces the selected occurrences of `target` inside `host` by
/// `replacement`.  Occurrences are numbered from 1 in depth-first
/// (pre-order) traversal.
pub fn replace_subformula(
    host: &Formula,
    target: &Formula,
    replacement: &Formula,
    indices: &BTreeSet<usize>,
) -> Result<Formula, NoSuchOccurrence> {
    let count = count_occurrences(host, target);
    for &i in indices {
        if i == 0 || i > count {
            return Err(NoSuchOccurrence { index: i, count });
        }
    }
    fn go(
        host: &Formula,
        target: &Formula,
        replacement: &Formula,
        indices: &BTreeSet<usize>,
        next: &mut usize,
    ) -> Formula {
        if host == target {
            *next += 1;
            return if indices.contains(next) {
                replacement.clone()
            } else {
                host.clone()
            };
        }
        let rec = |a: &Formula, next: &mut usize| go(a, target, replacement, indices, next);
        match host {
            Formula::Bottom | Formula::Atom(..) => host.clone(),
            Formula::Not(a) => Formula::not(rec(a, next)),
            Formula::Dual(a) => Formula::dual(rec(a, next)),
            Formula::Box(a) => Formula::nec(rec(a, next)),
            Formula::And(a, b) => {
                let l = rec(a, next);
                Formula::and(l, rec(b, next))
            }
            Formula::Or(a, b) => {
                let l = rec(a, next);
                Formula::or(l, rec(b, next))
            }
            Formula::Imp(a, b) => {
                let l = rec(a, next);
                Formula::imp(l, rec(b, next))
            }
            Formula::Iff(a, b) => {
                let l = rec(a, next);
                Formula::iff(l, rec(b, next))
            }
            Formula::Forall(x, a) => Formula::forall(x, rec(a, next)),
            Formula::Exists(x, a) => Formula::exists(x, rec(a, next)),
        }
    }
    let mut next = 0;
    Ok(go(host, target, replacement, indices, &mut next))
}

// ---------------------------------------------------------------------------
// Printing.
//
// Binding strength: prefix operators bind tightest, then `&`, `|`, `->`
// (right-associative), `<->`.  A quantifier extends as far right as
// possible, so a quantified subformula needs parentheses exactly when
// something follows it in the printed text (i.e. when it is not in
// rightmost position).

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Imp(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) | Formula::Dual(_) | Formula::Box(_) => 5,
        Formula::Bottom | Formula::Atom(..) => 6,
        // Quantifiers are handled by position, not by level.
        Formula::Forall(..) | Formula::Exists(..) => 0,
    }
}

fn write_child(
    child: &Formula,
    f: &mut fmt::Formatter<'_>,
    required: u8,
    rightmost: bool,
) -> fmt::Result {
    let parens = match child {
        Formula::Forall(..) | Formula::Exists(..) => !rightmost,
        _ => level(child) < required,
    };
    if parens {
        f.write_str("(")?;
        write_at(child, f, true)?;
        f.write_str(")")
    } else {
        write_at(child, f, rightmost)
    }
}

fn write_at(formula: &Formula, f: &mut fmt::Formatter<'_>, rightmost: bool) -> fmt::Result {
    match formula {
        Formula::Bottom => f.write_str("false"),
        Formula::Atom(name, args) => {
            f.write_str(name)?;
            if !args.is_empty() {
                f.write_str("(")?;
                for (i, v) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(v)?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
        Formula::Not(a) => {
            f.write_str("~")?;
            write_child(a, f, 5, rightmost)
        }
        Formula::Dual(a) => {
            f.write_str("D ")?;
            write_child(a, f, 5, rightmost)
        }
        Formula::Box(a) => {
            f.write_str("[]")?;
            write_child(a, f, 5, rightmost)
        }
        Formula::And(l, r) => {
            write_child(l, f, 4, false)?;
            f.write_str(" & ")?;
            write_child(r, f, 5, rightmost)
        }
        Formula::Or(l, r) => {
            write_child(l, f, 3, false)?;
            f.write_str(" | ")?;
            write_child(r, f, 4, rightmost)
        }
        Formula::Imp(l, r) => {
            write_child(l, f, 3, false)?;
            f.write_str(" -> ")?;
            write_child(r, f, 2, rightmost)
        }
        Formula::Iff(l, r) => {
            write_child(l, f, 2, false)?;
            f.write_str(" <-> ")?;
            write_child(r, f, 1, rightmost)
        }
        Formula::Forall(x, a) => {
            write!(f, "forall {x}. ")?;
            write_at(a, f, true)
        }
        Formula::Exists(x, a) => {
            write!(f, "exists {x}. ")?;
            write_at(a, f, true)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, f, true)
    }
}

// ---------------------------------------------------------------------------
// Modality strings.

/// One symbol of a modality string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalSymbol {
    Neg,
    Dual,
}

impl ModalSymbol {
    fn apply(self, x: Three) -> Three {
        match self {
            ModalSymbol::Neg => x.neg(),
            ModalSymbol::Dual => x.dual(),
        }
    }
}

/// A finite string over `{~, D}`, outermost symbol first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModalityString(pub Vec<ModalSymbol>);

/// A character other than `~`, `¬`, `D`, or whitespace in a modality
/// string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalityParseError {
    pub pos: usize,
    pub found: char,
}

impl fmt::Display for ModalityParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unexpected {:?} at position {} in modality string",
            self.found, self.pos
        )
    }
}

impl core::error::Error for ModalityParseError {}

impl ModalityString {
    /// Parses a string of `~` (or `¬`) and `D` characters; whitespace is
    /// ignored.
    pub fn parse(text: &str) -> Result<Self, ModalityParseError> {
        let mut symbols = Vec::new();
        for (pos, c) in text.chars().enumerate() {
            match c {
                '~' | '¬' => symbols.push(ModalSymbol::Neg),
                'D' => symbols.push(ModalSymbol::Dual),
                c if c.is_whitespace() => {}
                c => return Err(ModalityParseError { pos, found: c }),
            }
        }
        Ok(ModalityString(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies the composite operation to a truth value (innermost symbol
    /// acts first).
    pub fn apply(&self, x: Three) -> Three {
        self.0.iter().rev().fold(x, |v, s| s.apply(v))
    }

    /// The images of `0`, `1/2`, `1`.
    pub fn table(&self) -> [Three; 3] {
        [
            self.apply(Three::Zero),
            self.apply(Three::Half),
            self.apply(Three::One),
        ]
    }
}

impl fmt::Display for ModalityString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                ModalSymbol::Neg => "~",
                ModalSymbol::Dual => "D",
            })?;
        }
        Ok(())
    }
}

/// The five operations on truth values that modality strings can denote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalModality {
    /// `(0, 1/2, 1)`
    Identity,
    /// `(1, 0, 0)`
    Neg,
    /// `(1, 1, 0)`
    Dual,
    /// `(0, 1, 1)`
    NegNeg,
    /// `(0, 0, 1)`
    NegDual,
}

impl CanonicalModality {
    pub const ALL: [CanonicalModality; 5] = [
        CanonicalModality::Identity,
        CanonicalModality::Neg,
        CanonicalModality::Dual,
        CanonicalModality::NegNeg,
        CanonicalModality::NegDual,
    ];

    pub fn apply(self, x: Three) -> Three {
        match self {
            CanonicalModality::Identity => x,
            CanonicalModality::Neg => x.neg(),
            CanonicalModality::Dual => x.dual(),
            CanonicalModality::NegNeg => x.neg().neg(),
            CanonicalModality::NegDual => x.dual().neg(),
        }
    }

    pub fn table(self) -> [Three; 3] {
        [
            self.apply(Three::Zero),
            self.apply(Three::Half),
            self.apply(Three::One),
        ]
    }

    /// The shortest modality string denoting this operation.
    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalModality::Identity => "",
            CanonicalModality::Neg => "~",
            CanonicalModality::Dual => "D",
            CanonicalModality::NegNeg => "~~",
            CanonicalModality::NegDual => "~D",
        }
    }
}

impl fmt::Display for CanonicalModality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Collapses a modality string to the canonical operation it denotes: the
/// empty string is the identity, an odd-length string acts like its
/// innermost symbol, and an even-length string acts like the innermost
/// symbol preceded by one negation.
pub fn normalize_modality(m: &ModalityString) -> CanonicalModality {
    match (m.0.len() % 2, m.0.last()) {
        (_, None) => CanonicalModality::Identity,
        (1, Some(ModalSymbol::Neg)) => CanonicalModality::Neg,
        (1, Some(ModalSymbol::Dual)) => CanonicalModality::Dual,
        (_, Some(ModalSymbol::Neg)) => CanonicalModality::NegNeg,
        (_, Some(ModalSymbol::Dual)) => CanonicalModality::NegDual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;

    #[test]
    fn printing_examples() {
        let f = Formula::forall(
            "x",
            Formula::imp(Formula::atom("P", &["x"]), Formula::Bottom),
        );
        assert_eq!(f.to_string(), "forall x. P(x) -> false");

        let g = Formula::and(
            Formula::not(Formula::atom("P", &["x"])),
            Formula::prop("Q"),
        );
        assert_eq!(g.to_string(), "~P(x) & Q");
    }

    #[test]
    fn quantifier_parenthesization_depends_on_position() {
        let forall = Formula::forall("x", Formula::atom("P", &["x"]));
        let left = Formula::and(forall.clone(), Formula::prop("Q"));
        assert_eq!(left.to_string(), "(forall x. P(x)) & Q");
        let right = Formula::and(Formula::prop("Q"), forall);
        assert_eq!(right.to_string(), "Q & forall x. P(x)");
    }

    #[test]
    fn associativity_in_printing() {
        let a = || Formula::prop("a");
        let b = || Formula::prop("b");
        let c = || Formula::prop("c");
        assert_eq!(
            Formula::and(Formula::and(a(), b()), c()).to_string(),
            "a & b & c"
        );
        assert_eq!(
            Formula::and(a(), Formula::and(b(), c())).to_string(),
            "a & (b & c)"
        );
        assert_eq!(
            Formula::imp(a(), Formula::imp(b(), c())).to_string(),
            "a -> b -> c"
        );
        assert_eq!(
            Formula::imp(Formula::imp(a(), b()), c()).to_string(),
            "(a -> b) -> c"
        );
    }

    #[test]
    fn unary_printing() {
        let p = || Formula::prop("p");
        assert_eq!(Formula::not(Formula::not(p())).to_string(), "~~p");
        assert_eq!(Formula::not(Formula::dual(p())).to_string(), "~D p");
        assert_eq!(Formula::not(Formula::nec(p())).to_string(), "~[]p");
        assert_eq!(
            Formula::dual(Formula::and(p(), p())).to_string(),
            "D (p & p)"
        );
    }

    #[test]
    fn expansion_uses_language_appropriate_conditional() {
        let p = Formula::prop("P");
        let q = Formula::prop("Q");
        let expanded = expand_derived(&Formula::imp(p.clone(), q.clone()));
        assert_eq!(expanded.to_string(), "~(P & ~Q) & (D P | Q)");

        let boxy = expand_derived(&Formula::imp(Formula::nec(p), q));
        assert_eq!(boxy.to_string(), "~([]P & ~Q) & (~[][]P | Q)");
    }

    #[test]
    fn translations_invert_each_other_syntactically_on_modal_free_part() {
        let f = Formula::dual(Formula::atom("P", &["x"]));
        let t = translate_t(&f).unwrap();
        assert_eq!(t.to_string(), "~[]P(x)");
        let back = translate_s(&t).unwrap();
        assert_eq!(back.to_string(), "~~D P(x)");

        assert_eq!(
            translate_t(&Formula::nec(Formula::prop("P"))),
            Err(TranslateError::SourceUsesBox)
        );
        assert_eq!(
            translate_s(&Formula::dual(Formula::prop("P"))),
            Err(TranslateError::SourceUsesDual)
        );
    }

    #[test]
    fn modality_normalization() {
        let cases = [
            ("", CanonicalModality::Identity),
            ("~", CanonicalModality::Neg),
            ("D", CanonicalModality::Dual),
            ("DD", CanonicalModality::NegDual),
            ("D~", CanonicalModality::NegNeg),
            ("~D~D~", CanonicalModality::Neg),
            ("¬D¬D¬", CanonicalModality::Neg),
        ];
        for (text, expected) in cases {
            let m = ModalityString::parse(text).unwrap();
            assert_eq!(normalize_modality(&m), expected, "string {text:?}");
            // The canonical operation must actually compute the same table.
            assert_eq!(m.table(), expected.table(), "string {text:?}");
        }
    }

    #[test]
    fn all_short_modality_strings_collapse_correctly() {
        // Strings of length ≤ 6 denote exactly five distinct operations.
        let mut tables = alloc::collections::BTreeSet::new();
        let mut count = 0usize;
        for len in 0..=6usize {
            for bits in 0..(1usize << len) {
                let symbols: Vec<ModalSymbol> = (0..len)
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            ModalSymbol::Dual
                        } else {
                            ModalSymbol::Neg
                        }
                    })
                    .collect();
                let m = ModalityString(symbols);
                let canon = normalize_modality(&m);
                assert_eq!(m.table(), canon.table(), "string {m}");
                tables.insert(m.table());
                count += 1;
            }
        }
        assert_eq!(count, 127);
        assert_eq!(tables.len(), 5);
    }

    #[test]
    fn replacement_by_occurrence_index() {
        // ((P & Q) | D P) with target P: occurrence 1 is in the conjunction.
        let host = Formula::or(
            Formula::and(Formula::prop("P"), Formula::prop("Q")),
            Formula::dual(Formula::prop("P")),
        );
        let target = Formula::prop("P");
        let replacement = Formula::not(Formula::prop("R"));
        assert_eq!(count_occurrences(&host, &target), 2);

        let one = BTreeSet::from([1usize]);
        let replaced = replace_subformula(&host, &target, &replacement, &one).unwrap();
        assert_eq!(replaced.to_string(), "~R & Q | D P");

        let out_of_range = BTreeSet::from([3usize]);
        assert_eq!(
            replace_subformula(&host, &target, &replacement, &out_of_range),
            Err(NoSuchOccurrence { index: 3, count: 2 })
        );
    }

    #[test]
    fn signature_rejects_reserved_and_duplicates() {
        let mut sig = Signature::new();
        sig.declare("P", 1).unwrap();
        assert_eq!(
            sig.declare("P", 2),
            Err(SignatureError::DuplicateRelation("P".into()))
        );
        for word in RESERVED_WORDS {
            assert_eq!(
                Signature::new().declare(word, 0),
                Err(SignatureError::ReservedName(word.into()))
            );
        }
        assert_eq!(
            Signature::new().declare("1bad", 0),
            Err(SignatureError::InvalidName("1bad".into()))
        );
    }

    #[test]
    fn free_vars_respect_binding() {
        let f = Formula::and(
            Formula::forall("x", Formula::atom("P", &["x", "y"])),
            Formula::atom("P", &["x", "z"]),
        );
        let fv = f.free_vars();
        let names: Vec<&str> = fv.iter().map(|s| s.as_str()).collect();
        assert_eq!(names, ["x", "y", "z"]);
    }

    #[test]
    fn arity_conflicts_are_reported() {
        let f = Formula::and(Formula::atom("P", &["x"]), Formula::prop("P"));
        let err = relation_arities(&[&f]).unwrap_err();
        assert_eq!(format!("{err}"), "relation P used with 1 and with 0 arguments");
    }
}
