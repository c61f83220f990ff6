//! Command-line companion to the `roughlogic` crate: JSON file formats
//! for models, valuations, and derivations, seeded random generators,
//! and the acceptance battery run by `roughlogic suite`.

pub mod formats;
pub mod gen;
pub mod suite;
