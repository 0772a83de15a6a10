//! Positive presentations, their relations and the reversing index.

use std::collections::BTreeMap;

use crate::braid::BraidWord;
use crate::word::{Alphabet, Gen, PositiveWord};

/// Which way a stored relation `lhs ≡ rhs` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Read as `lhs ≡ rhs`.
    Forward,
    /// Read as `rhs ≡ lhs`.
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Forward => '+',
            Orientation::Backward => '-',
        }
    }
}

/// A positive relation `lhs ≡ rhs`, optionally carrying a Hurwitz witness: a
/// braid on `l(lhs)` strands carrying the tuple of `lhs` letters to the tuple
/// of `rhs` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: usize,
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
    pub witness: Option<BraidWord>,
}

impl Relation {
    /// The pair of sides in the requested orientation.
    pub fn sides(&self, orient: Orientation) -> (&PositiveWord, &PositiveWord) {
        match orient {
            Orientation::Forward => (&self.lhs, &self.rhs),
            Orientation::Backward => (&self.rhs, &self.lhs),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }

    pub fn same_as(&self, a: &PositiveWord, b: &PositiveWord) -> bool {
        (&self.lhs == a && &self.rhs == b) || (&self.lhs == b && &self.rhs == a)
    }
}

/// A decomposition `a·V ≡ V·a′` of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordConjugacy {
    pub a: Gen,
    pub v: PositiveWord,
    pub a_prime: Gen,
    /// `Forward` when `lhs = a·V` and `rhs = V·a′`; `Backward` when the roles
    /// of the sides are swapped.
    pub orientation: Orientation,
}

/// True iff the two sides share a non-empty common prefix or suffix.
pub fn is_reducible(lhs: &PositiveWord, rhs: &PositiveWord) -> bool {
    let (l, r) = (lhs.letters(), rhs.letters());
    (!l.is_empty() && !r.is_empty()) && (l[0] == r[0] || l[l.len() - 1] == r[r.len() - 1])
}

/// Recognizes `aV ≡ Va′` (trying both orientations, `Forward` first).
pub fn word_conjugacy(lhs: &PositiveWord, rhs: &PositiveWord) -> Option<WordConjugacy> {
    let try_read = |left: &PositiveWord, right: &PositiveWord| {
        let (l, r) = (left.letters(), right.letters());
        if l.is_empty() || l.len() != r.len() {
            return None;
        }
        let v = &l[1..];
        if &r[..r.len() - 1] == v {
            Some((l[0], PositiveWord(v.to_vec()), r[r.len() - 1]))
        } else {
            None
        }
    };
    if let Some((a, v, a_prime)) = try_read(lhs, rhs) {
        return Some(WordConjugacy { a, v, a_prime, orientation: Orientation::Forward });
    }
    try_read(rhs, lhs).map(|(a, v, a_prime)| WordConjugacy {
        a,
        v,
        a_prime,
        orientation: Orientation::Backward,
    })
}

/// One letter-prefix (or letter-suffix) decomposition of a relation.
///
/// For the right index, the entry stored under `(s, t)` says
/// `s·s_comp ≡ t·t_comp` is relation `rel` read in `orient`. For the left
/// index, it says `s_comp·s ≡ t_comp·t`.
/// Relations indexed by the pair of letters they start with.
pub type RelationIndex = BTreeMap<(Gen, Gen), Vec<IndexEntry>>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexEntry {
    pub rel: usize,
    pub orient: Orientation,
    pub s_comp: PositiveWord,
    pub t_comp: PositiveWord,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relation {0} has an empty side")]
    EmptySide(usize),
    #[error("relation {0} uses a generator outside the alphabet")]
    UnknownGenerator(usize),
}

/// `⟨𝒮 | ℛ⟩` with the right and left reversing indices kept in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<Relation>,
    right_index: RelationIndex,
    left_index: RelationIndex,
}

impl Presentation {
    pub fn new(alphabet: Alphabet) -> Self {
        Presentation {
            alphabet,
            relations: Vec::new(),
            right_index: BTreeMap::new(),
            left_index: BTreeMap::new(),
        }
    }

    /// Builds a presentation from relation pairs, dropping duplicates up to
    /// orientation.
    pub fn with_relations(
        alphabet: Alphabet,
        pairs: impl IntoIterator<Item = (PositiveWord, PositiveWord)>,
    ) -> Result<Self, PresentationError> {
        let mut p = Presentation::new(alphabet);
        for (a, b) in pairs {
            p.add_relation(a, b, None)?;
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, id: usize) -> Option<&Relation> {
        self.relations.get(id)
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Adds a generator, returning its index.
    pub fn add_generator(&mut self, base_name: &str) -> Gen {
        self.alphabet.push_fresh(base_name)
    }

    pub fn find_relation(&self, a: &PositiveWord, b: &PositiveWord) -> Option<usize> {
        self.relations.iter().position(|r| r.same_as(a, b))
    }

    /// Adds `a ≡ b` and returns its id, or `Ok(None)` if the relation is
    /// already present in either orientation.
    pub fn add_relation(
        &mut self,
        a: PositiveWord,
        b: PositiveWord,
        witness: Option<BraidWord>,
    ) -> Result<Option<usize>, PresentationError> {
        let id = self.relations.len();
        if a.is_empty() || b.is_empty() {
            return Err(PresentationError::EmptySide(id));
        }
        let m = self.alphabet.len();
        if a.letters().iter().chain(b.letters()).any(|&g| g >= m) {
            return Err(PresentationError::UnknownGenerator(id));
        }
        if self.find_relation(&a, &b).is_some() {
            return Ok(None);
        }
        let rel = Relation { id, lhs: a, rhs: b, witness };
        index_relation(&mut self.right_index, &mut self.left_index, &rel);
        self.relations.push(rel);
        Ok(Some(id))
    }

    /// Right-index entries for the pattern `s⁻¹t`, ordered by relation id.
    pub fn right_entries(&self, s: Gen, t: Gen) -> &[IndexEntry] {
        self.right_index.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Left-index entries for the pattern `t·s⁻¹`, ordered by relation id.
    pub fn left_entries(&self, s: Gen, t: Gen) -> &[IndexEntry] {
        self.left_index.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn right_index(&self) -> &RelationIndex {
        &self.right_index
    }

    pub fn left_index(&self) -> &RelationIndex {
        &self.left_index
    }

    /// Rebuilds both indices from the relation list alone.
    pub fn rebuilt_indices(
        &self,
    ) -> (RelationIndex, RelationIndex) {
        let (mut r, mut l) = (BTreeMap::new(), BTreeMap::new());
        for rel in &self.relations {
            index_relation(&mut r, &mut l, rel);
        }
        (r, l)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Relation::is_homogeneous)
    }

    /// The presentation whose relations are the letterwise mirrors of these.
    pub fn mirror(&self) -> Presentation {
        let mut p = Presentation::new(self.alphabet.clone());
        for r in &self.relations {
            let witness = r.witness.as_ref().map(mirror_witness);
            p.add_relation(r.lhs.reversed(), r.rhs.reversed(), witness)
                .expect("mirrored relations stay valid");
        }
        p
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(|r| r.lhs.len().max(r.rhs.len())).max().unwrap_or(0)
    }

    /// One normalized relation per line, preceded by the generator line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("gens:");
        for n in self.alphabet.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str(&format!(
                "rel: {} = {}\n",
                self.alphabet.show_positive(&r.lhs),
                self.alphabet.show_positive(&r.rhs)
            ));
        }
        out
    }

    pub fn show_relation(&self, id: usize) -> String {
        let r = &self.relations[id];
        format!(
            "{} = {}",
            self.alphabet.show_positive(&r.lhs),
            self.alphabet.show_positive(&r.rhs)
        )
    }
}

fn mirror_witness(b: &BraidWord) -> BraidWord {
    // The mirrored presentation presents the opposite group. There, acting by
    // σᵢ on a tuple matches acting by σ_{n−i}⁻¹ on the reversed tuple.
    let n = b.strands();
    let letters = b
        .letters()
        .iter()
        .map(|l| crate::braid::BraidLetter { index: n - l.index, inverse: !l.inverse })
        .collect();
    BraidWord::new(n, letters).expect("indices stay in range")
}

fn index_relation(
    right: &mut RelationIndex,
    left: &mut RelationIndex,
    rel: &Relation,
) {
    for orient in [Orientation::Forward, Orientation::Backward] {
        let (a, b) = rel.sides(orient);
        let (al, bl) = (a.letters(), b.letters());
        let entry = IndexEntry {
            rel: rel.id,
            orient,
            s_comp: PositiveWord(al[1..].to_vec()),
            t_comp: PositiveWord(bl[1..].to_vec()),
        };
        insert_sorted(right.entry((al[0], bl[0])).or_default(), entry);
        let entry = IndexEntry {
            rel: rel.id,
            orient,
            s_comp: PositiveWord(al[..al.len() - 1].to_vec()),
            t_comp: PositiveWord(bl[..bl.len() - 1].to_vec()),
        };
        insert_sorted(left.entry((al[al.len() - 1], bl[bl.len() - 1])).or_default(), entry);
    }
}

fn insert_sorted(v: &mut Vec<IndexEntry>, e: IndexEntry) {
    let pos = v.partition_point(|x| (x.rel, x.orient) < (e.rel, e.orient));
    v.insert(pos, e);
}
