//! Algebraic and game-theoretic tooling for two-variable first-order logic on
//! finite words, extended with a "between" predicate and letter thresholds.
//!
//! The crate is organised bottom-up:
//!
//! * [`alphabet`], [`regex`] and [`dfa`] provide words, regular expressions and
//!   minimal complete automata.
//! * [`monoid`] extracts syntactic monoids and decides the variety memberships
//!   (aperiodic, **DA**, **M_eDA**, the successor criterion) that characterise
//!   FO[<], FO²[<], FO²[<,+1] and FO²[<,bet].
//! * [`fo2`] and [`tl`] parse and evaluate two-variable formulas and guarded
//!   temporal formulas, and translate between them.
//! * [`games`] decides the Ehrenfeucht–Fraïssé equivalences `≡_k` and `≡_k^θ`.
//! * [`constructions`] generates the word families and congruences used in the
//!   algebraic arguments.
//! * [`satgen`] holds the corridor-tiling encoder, the threshold-to-between
//!   reduction and a bounded satisfiability search.

pub mod alphabet;
pub mod constructions;
pub mod dfa;
pub mod fo2;
pub mod games;
pub mod monoid;
pub mod regex;
pub mod satgen;
pub(crate) mod syntax;
pub mod tl;

pub use alphabet::{Alphabet, AlphabetError, Word, WordError};
pub use dfa::Dfa;
pub use regex::Regex;
pub use syntax::ParseError;
