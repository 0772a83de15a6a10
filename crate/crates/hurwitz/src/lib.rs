//! Word reversing, presentation completion and Hurwitz equivalence testing
//! for positively presented groups.
//!
//! The entry points most callers need are [`parse::parse_document`],
//! [`reversing::reverses_to_empty`], [`completion::complete_hurwitz`] and
//! [`solver::hurwitz_test`].

pub mod backends;
pub mod braid;
pub mod completion;
pub mod diagram;
pub mod embedding;
pub mod hurwitz;
pub mod parse;
pub mod presentation;
pub mod reversing;
pub mod solver;
pub mod word;

pub use braid::{BraidLetter, BraidWord};
pub use presentation::{Orientation, Presentation, Relation};
pub use word::{Alphabet, Gen, Letter, PositiveWord, SignedWord};

/// A three-valued answer for questions that may be undecided within a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Truth::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::Yes => "yes",
            Truth::No => "no",
            Truth::Unknown => "unknown",
        }
    }
}
