//! Three-valued first-order logic with a dual operator `D` and a necessity
//! operator `[]`, interpreted over the three truth values `0 < 1/2 < 1`.
//!
//! The crate provides:
//!
//! * [`syntax`] — formulas, signatures, a parser and printer, translations
//!   between the `D` and `[]` presentations, and modality-string
//!   normalization;
//! * [`algebra3`] — the three-element algebra of truth values and exhaustive
//!   propositional consequence checking over it;
//! * [`roughsets`] — approximation spaces (a universe with an equivalence
//!   relation given by blocks) and lower/upper approximations of tuple sets;
//! * [`rough_semantics`] — valuation of first-order formulas in rough models
//!   and bounded countermodel search;
//! * [`kripke_semantics`] — forcing over the fixed two-node frame `1 < 1/2`
//!   with constant domain, plus model enumeration and bounded search;
//! * [`transfer`] — the constructions converting rough models to Kripke
//!   models and back, with harnesses checking that the two semantics agree;
//! * [`proofcheck`] — a natural-deduction proof checker for both
//!   presentations, with a library of worked derivations as fixtures.
//!
//! Everything in this crate is pure: no IO, no floats, no global state.
//! The crate is `no_std` (it only needs `alloc`).

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra3;
pub mod kripke_semantics;
pub mod proofcheck;
pub mod rough_semantics;
pub mod roughsets;
pub mod syntax;
pub mod transfer;
