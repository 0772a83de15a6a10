//! Group oracles: equality and conjugacy search in the group a presentation
//! is meant to present.

mod braid;
mod free;
mod perm;

pub use self::braid::{artin_images, handle_reduce, parse_braid_map, BraidBackend};
pub use self::free::{cyclic_reduction, FreeBackend};
pub use self::perm::{compose, cycle_type, parse_cycles, parse_perm_text, PermBackend};

use crate::word::{Alphabet, Gen, Letter, SignedWord};
use crate::Truth;

/// Canonical representative used as a set key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    Free(SignedWord),
    Perm(Vec<usize>),
    /// Images of the free generators under the Artin representation.
    Braid(Vec<SignedWord>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `c` with `c⁻¹·g·c = h`.
    Found(SignedWord),
    NotConjugate,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BackendError {
    #[error("generator {0} is outside the backend alphabet")]
    UnknownGenerator(Gen),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("image given for undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid backend spec `{0}`")]
    Spec(String),
}

pub trait GroupBackend {
    /// Short human-readable name, e.g. `braid:3`.
    fn name(&self) -> String;

    /// Number of generators the backend interprets.
    fn generator_count(&self) -> usize;

    fn normal_form(&self, w: &SignedWord) -> Result<NormalForm, BackendError>;

    fn equal(&self, a: &SignedWord, b: &SignedWord) -> Result<Truth, BackendError> {
        Ok(Truth::from_bool(self.normal_form(a)? == self.normal_form(b)?))
    }

    /// Searches for `c` with `c⁻¹·g·c = h`.
    fn conjugacy_search(&self, g: &SignedWord, h: &SignedWord, bound: usize) -> Result<Conjugacy, BackendError>;

    /// Whether `conjugacy_search` always gives definite answers.
    fn exact_conjugacy(&self) -> bool;

    fn check(&self, w: &SignedWord) -> Result<(), BackendError> {
        let m = self.generator_count();
        match w.letters().iter().find(|l| l.gen >= m) {
            Some(l) => Err(BackendError::UnknownGenerator(l.gen)),
            None => Ok(()),
        }
    }
}

/// Freely reduced words over `m` generators of length exactly `len`, in
/// shortlex order (positive letter before its inverse, generators ascending).
pub fn reduced_words(m: usize, len: usize) -> Vec<SignedWord> {
    let letters: Vec<Letter> = (0..m).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut layer = vec![SignedWord::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.0.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(SignedWord(v));
            }
        }
        layer = next;
    }
    layer
}

/// Shortest-first search for a conjugator among freely reduced words of
/// length at most `bound`. Returns `None` when nothing was found.
pub fn bfs_conjugator<B: GroupBackend + ?Sized>(
    backend: &B,
    g: &SignedWord,
    h: &SignedWord,
    bound: usize,
) -> Result<Option<SignedWord>, BackendError> {
    let target = backend.normal_form(h)?;
    for len in 0..=bound {
        for c in reduced_words(backend.generator_count(), len) {
            if backend.normal_form(&g.conjugate_by(&c))? == target {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// A backend chosen by a textual spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackendSpec {
    Free,
    Perm(String),
    Braid { strands: usize, map: String },
}

impl BackendSpec {
    /// Parses `free`, `perm:<file>` or `braid:<n>:<map>`.
    pub fn parse(spec: &str) -> Result<BackendSpec, BackendError> {
        let bad = || BackendError::Spec(spec.to_string());
        if spec == "free" {
            return Ok(BackendSpec::Free);
        }
        if let Some(path) = spec.strip_prefix("perm:") {
            if path.is_empty() {
                return Err(bad());
            }
            return Ok(BackendSpec::Perm(path.to_string()));
        }
        if let Some(rest) = spec.strip_prefix("braid:") {
            let (n, map) = rest.split_once(':').ok_or_else(bad)?;
            let strands: usize = n.parse().map_err(|_| bad())?;
            if strands == 0 || map.is_empty() {
                return Err(bad());
            }
            return Ok(BackendSpec::Braid { strands, map: map.to_string() });
        }
        Err(bad())
    }

    /// Builds the backend; `read` resolves file paths for `perm:`.
    pub fn build(
        &self,
        alphabet: &Alphabet,
        read: impl Fn(&str) -> Result<String, BackendError>,
    ) -> Result<Box<dyn GroupBackend>, BackendError> {
        Ok(match self {
            BackendSpec::Free => Box::new(FreeBackend::new(alphabet.len())),
            BackendSpec::Perm(path) => Box::new(PermBackend::from_text(&read(path)?, alphabet)?),
            BackendSpec::Braid { strands, map } => Box::new(BraidBackend::from_map(*strands, map, alphabet)?),
        })
    }
}
