//! Words whose left special factors are all prefixes, the bLSP morphisms
//! that generate them, and the fragility automaton deciding which directive
//! words yield such infinite words.

pub mod automaton;
pub mod blsp;
pub mod desub;
pub mod error;
pub mod fragility;
pub mod lsp;
pub mod suffix_automaton;
pub mod suite;
pub mod word;

pub use automaton::{AutomatonState, Recognition, Tail, Violation};
pub use blsp::{BlspMorphism, RootedTree, Substitution};
pub use error::{DesubFailure, Error, Result};
pub use fragility::{FragilityTuple, FragilityWitness};
pub use word::{Letter, LetterSet, Word};
