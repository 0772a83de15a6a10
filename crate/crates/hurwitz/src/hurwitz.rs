//! The Hurwitz action of braid groups on tuples of group elements.
//!
//! The action is on the right and braid words act left to right:
//! `σᵢ: (gᵢ, gᵢ₊₁) ↦ (gᵢ₊₁, gᵢ₊₁⁻¹·gᵢ·gᵢ₊₁)`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::backends::{BackendError, GroupBackend, NormalForm};
use crate::braid::{BraidLetter, BraidWord};
use crate::diagram::RewritingStep;
use crate::presentation::{word_conjugacy, Orientation, Presentation, Relation};
use crate::word::{free_reduce, Gen, PositiveWord, SignedWord};

/// A tuple of group elements, each given by a freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSystem {
    pub entries: Vec<SignedWord>,
}

impl GSystem {
    pub fn new(entries: Vec<SignedWord>) -> Self {
        GSystem { entries: entries.iter().map(free_reduce).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The generator system behind this tuple, if every entry is a single
    /// positive letter.
    pub fn as_generators(&self) -> Option<GeneratorSystem> {
        self.entries
            .iter()
            .map(|e| match e.letters() {
                [l] if !l.inverse => Some(l.gen),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(GeneratorSystem::new)
    }
}

/// A tuple of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSystem {
    pub entries: Vec<Gen>,
}

impl GeneratorSystem {
    pub fn new(entries: Vec<Gen>) -> Self {
        GeneratorSystem { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_gsystem(&self) -> GSystem {
        GSystem { entries: self.entries.iter().map(|&g| SignedWord::gen(g)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("σ{index} does not act on a system of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("braid on {strands} strands applied to a system of length {len}")]
    StrandMismatch { strands: usize, len: usize },
    #[error("relation {0} is not a word-conjugacy relation")]
    NotWordConjugacy(usize),
    #[error("relation {rel} used at step {step} has neither a witness nor word-conjugacy shape")]
    MissingWitness { step: usize, rel: usize },
    #[error("relation of length {len} at offset {offset} does not fit {strands} strands")]
    RangeOverflow { offset: usize, len: usize, strands: usize },
    #[error("unknown relation id {0}")]
    UnknownRelation(usize),
}

/// Applies `σᵢ` (or its inverse) to the tuple.
pub fn act_sigma(g: &GSystem, i: usize, inverse: bool) -> Result<GSystem, HurwitzError> {
    if i == 0 || i >= g.len() {
        return Err(HurwitzError::IndexOutOfRange { index: i, len: g.len() });
    }
    let mut out = g.clone();
    apply_letter(&mut out.entries, BraidLetter { index: i, inverse });
    Ok(out)
}

fn apply_letter(e: &mut [SignedWord], l: BraidLetter) {
    let (a, b) = (e[l.index - 1].clone(), e[l.index].clone());
    if l.inverse {
        e[l.index - 1] = b.conjugate_by(&a.inverse());
        e[l.index] = a;
    } else {
        e[l.index] = a.conjugate_by(&b);
        e[l.index - 1] = b;
    }
}

/// Applies the braid letters left to right.
pub fn act_braid(g: &GSystem, beta: &BraidWord) -> Result<GSystem, HurwitzError> {
    if beta.strands() != g.len() {
        return Err(HurwitzError::StrandMismatch { strands: beta.strands(), len: g.len() });
    }
    let mut out = g.clone();
    for &l in beta.letters() {
        apply_letter(&mut out.entries, l);
    }
    Ok(out)
}

/// Every entry `g_k ↦ h⁻¹·g_k·h`.
pub fn conjugate_system(g: &GSystem, h: &SignedWord) -> GSystem {
    GSystem { entries: g.entries.iter().map(|e| e.conjugate_by(h)).collect() }
}

pub fn coxeter_word(a: &GeneratorSystem) -> PositiveWord {
    PositiveWord(a.entries.clone())
}

/// The freely reduced product of the entries.
pub fn coxeter_element(g: &GSystem) -> SignedWord {
    let mut w = SignedWord::empty();
    for e in &g.entries {
        w = w.concat(e);
    }
    free_reduce(&w)
}

/// The braid realizing one application of a word-conjugacy relation at
/// `offset`, in the direction `applied` (lhs → rhs for `Forward`).
pub fn braid_for_word_conjugacy(
    rel: &Relation,
    applied: Orientation,
    offset: usize,
    strands: usize,
) -> Result<BraidWord, HurwitzError> {
    let wc = word_conjugacy(&rel.lhs, &rel.rhs).ok_or(HurwitzError::NotWordConjugacy(rel.id))?;
    let l = wc.v.len() + 1;
    if offset + l > strands {
        return Err(HurwitzError::RangeOverflow { offset, len: l, strands });
    }
    let letters = (1..l).map(|j| BraidLetter::sigma(offset + j)).collect();
    let beta = BraidWord::new(strands, letters).expect("indices checked above");
    Ok(if applied == wc.orientation { beta } else { beta.inverse() })
}

/// The braid for one rewriting step: the word-conjugacy braid when the
/// relation has that shape, otherwise its stored witness shifted to `offset`.
pub fn braid_for_relation(
    rel: &Relation,
    applied: Orientation,
    offset: usize,
    strands: usize,
) -> Option<Result<BraidWord, HurwitzError>> {
    if word_conjugacy(&rel.lhs, &rel.rhs).is_some() {
        return Some(braid_for_word_conjugacy(rel, applied, offset, strands));
    }
    let w = rel.witness.as_ref()?;
    let len = rel.lhs.len();
    if offset + len > strands || w.strands() != len {
        return Some(Err(HurwitzError::RangeOverflow { offset, len, strands }));
    }
    let shifted = w.shifted(offset, strands).expect("fits by the check above");
    Some(Ok(if applied == Orientation::Forward { shifted } else { shifted.inverse() }))
}

/// Concatenates the per-step braids of a rewriting sequence.
pub fn braid_for_rewriting_sequence(
    seq: &[RewritingStep],
    strands: usize,
    p: &Presentation,
) -> Result<BraidWord, HurwitzError> {
    let mut beta = BraidWord::identity(strands);
    for (k, step) in seq.iter().enumerate() {
        let rel = p.relation(step.rel).ok_or(HurwitzError::UnknownRelation(step.rel))?;
        let piece = braid_for_relation(rel, step.orient, step.offset, strands)
            .ok_or(HurwitzError::MissingWitness { step: k, rel: step.rel })??;
        beta = beta.then(&piece).expect("same strand count");
    }
    Ok(beta)
}

/// `σ_{m−1}σ_{m−2}…σ₁`.
pub fn cycling_braid(m: usize) -> BraidWord {
    let letters = (1..m).rev().map(BraidLetter::sigma).collect();
    BraidWord::new(m.max(1), letters).expect("indices below m")
}

/// Reads words over one alphabet as words over another, generator by
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub images: Vec<SignedWord>,
}

impl Interpretation {
    pub fn identity(m: usize) -> Self {
        Interpretation { images: (0..m).map(SignedWord::gen).collect() }
    }

    pub fn word(&self, w: &SignedWord) -> SignedWord {
        w.substitute(&self.images)
    }

    pub fn positive(&self, w: &PositiveWord) -> SignedWord {
        self.word(&w.to_signed())
    }

    pub fn system(&self, g: &GSystem) -> GSystem {
        GSystem { entries: g.entries.iter().map(|e| self.word(e)).collect() }
    }
}

/// Whether `g·β` and `target` agree entrywise under the backend.
pub fn verify_braid<B: GroupBackend + ?Sized>(
    backend: &B,
    g: &GSystem,
    beta: &BraidWord,
    target: &GSystem,
) -> Result<crate::Truth, BackendError> {
    use crate::Truth;
    let Ok(moved) = act_braid(g, beta) else { return Ok(Truth::No) };
    if moved.len() != target.len() {
        return Ok(Truth::No);
    }
    let mut verdict = Truth::Yes;
    for (a, b) in moved.entries.iter().zip(&target.entries) {
        match backend.equal(a, b)? {
            Truth::Yes => {}
            Truth::No => return Ok(Truth::No),
            Truth::Unknown => verdict = Truth::Unknown,
        }
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    Complete(Vec<GSystem>),
    Truncated(Vec<GSystem>),
}

impl Orbit {
    pub fn systems(&self) -> &[GSystem] {
        match self {
            Orbit::Complete(s) | Orbit::Truncated(s) => s,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Orbit::Complete(_))
    }
}

/// Canonical key of a system: the normal forms of its entries.
pub fn system_key<B: GroupBackend + ?Sized>(backend: &B, g: &GSystem) -> Result<Vec<NormalForm>, BackendError> {
    g.entries.iter().map(|e| backend.normal_form(e)).collect()
}

/// Breadth-first closure of `g` under all `σᵢ^{±1}`, stopping after `limit`
/// distinct systems. Entries are replaced by the shortest word seen for their
/// group element so that words stay small.
pub fn hurwitz_orbit<B: GroupBackend + ?Sized>(backend: &B, g: &GSystem, limit: usize) -> Result<Orbit, BackendError> {
    let mut reps: HashMap<NormalForm, SignedWord> = HashMap::new();
    let canon = |w: &SignedWord, reps: &mut HashMap<NormalForm, SignedWord>| -> Result<(NormalForm, SignedWord), BackendError> {
        let nf = backend.normal_form(w)?;
        let rep = reps.entry(nf.clone()).or_insert_with(|| w.clone());
        if w.len() < rep.len() {
            *rep = w.clone();
        }
        Ok((nf, rep.clone()))
    };
    let mut start = Vec::new();
    let mut key = Vec::new();
    for e in &g.entries {
        let (nf, rep) = canon(e, &mut reps)?;
        key.push(nf);
        start.push(rep);
    }
    let start = GSystem { entries: start };
    let mut seen: HashSet<Vec<NormalForm>> = HashSet::from([key]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for i in 1..cur.len() {
            for inverse in [false, true] {
                let mut entries = cur.entries.clone();
                apply_letter(&mut entries, BraidLetter { index: i, inverse });
                let mut key = Vec::with_capacity(entries.len());
                for e in entries.iter_mut() {
                    let (nf, rep) = canon(e, &mut reps)?;
                    key.push(nf);
                    *e = rep;
                }
                if seen.insert(key) {
                    if out.len() >= limit {
                        return Ok(Orbit::Truncated(out));
                    }
                    let next = GSystem { entries };
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(Orbit::Complete(out))
}
