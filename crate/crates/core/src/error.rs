use thiserror::Error;

use crate::fragility::FragilityTuple;
use crate::word::{Letter, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("word is not LSP")]
    NotLsp,
    #[error("requested length {requested} is shorter than the word ({len})")]
    TooShort { requested: usize, len: usize },
    #[error("invalid letter {0:?}: expected one of a..h")]
    InvalidLetter(char),
    #[error("alphabet of size {0} exceeds the maximum of 8 letters")]
    AlphabetTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("no letter is fixed by the morphism")]
    NoFixedLetter,
    #[error("several letters are fixed by the morphism: {0}")]
    MultipleFixedLetters(Word),
    #[error("image of {0} is not of the form f(γ){0}")]
    BadImageShape(Letter),
    #[error("letter {0} is outside the morphism domain")]
    DomainError(Letter),
    #[error("letters {0}, {1}, {2} are not pairwise distinct")]
    NotATriple(Letter, Letter, Letter),
    #[error("parent links through {0} form a cycle")]
    CyclicParentLinks(Letter),
    #[error("vertex {0} is not connected to the tree")]
    DisconnectedVertex(Letter),

    #[error("not desubstitutable{}: {reason} (witness {witness:?})", depth.map(|d| format!(" at depth {d}")).unwrap_or_default())]
    NotDesubstitutable {
        reason: DesubFailure,
        witness: Word,
        depth: Option<usize>,
    },
    #[error("directive word is empty")]
    EmptyDirective,
    #[error("depth {depth} exceeds the directive length {len}")]
    DepthOutOfRange { depth: usize, len: usize },
    #[error("{}morphism is breaking for {tuple}", step.map(|s| format!("step {s}: ")).unwrap_or_default())]
    Breaking { step: Option<usize>, tuple: FragilityTuple },
    #[error("step {step}: word is not the image of the next word under the directive morphism")]
    NotAnImage { step: usize },
}

/// Why the rooted-tree construction rejected a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesubFailure {
    TwoParents,
    Cycle,
    BlockMismatch,
}

impl std::fmt::Display for DesubFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DesubFailure::TwoParents => "a letter has two distinct parents",
            DesubFailure::Cycle => "the letter graph is cyclic",
            DesubFailure::BlockMismatch => "a block differs from its implied image",
        })
    }
}
