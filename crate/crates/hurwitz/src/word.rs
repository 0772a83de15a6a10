//! Positive and signed words over an interned generator alphabet.

use std::collections::HashMap;
use std::fmt;

/// Interned generator index; dense `0..M` within one alphabet.
pub type Gen = usize;

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word in the free monoid on the generators. The empty word is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord(pub Vec<Gen>);

impl PositiveWord {
    pub fn empty() -> Self {
        PositiveWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        PositiveWord(out)
    }

    pub fn prepend(&self, g: Gen) -> PositiveWord {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(g);
        out.extend_from_slice(&self.0);
        PositiveWord(out)
    }

    pub fn reversed(&self) -> PositiveWord {
        PositiveWord(self.0.iter().rev().copied().collect())
    }

    /// The word read as a signed word with every exponent +1.
    pub fn to_signed(&self) -> SignedWord {
        SignedWord(self.0.iter().map(|&g| Letter::pos(g)).collect())
    }

    /// The formal inverse `w⁻¹` as a signed word.
    pub fn inverse(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|&g| Letter::neg(g)).collect())
    }

    /// Orders words by length first, then lexicographically by generator index.
    pub fn shortlex_cmp(&self, other: &PositiveWord) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Gen>> for PositiveWord {
    fn from(v: Vec<Gen>) -> Self {
        PositiveWord(v)
    }
}

/// A word on generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord(pub Vec<Letter>);

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        SignedWord(vec![l])
    }

    pub fn gen(g: Gen) -> Self {
        SignedWord(vec![Letter::pos(g)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        SignedWord(out)
    }

    pub fn inverse(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Lossless conversion when every letter is positive.
    pub fn to_positive(&self) -> Option<PositiveWord> {
        self.0
            .iter()
            .map(|l| if l.inverse { None } else { Some(l.gen) })
            .collect::<Option<Vec<_>>>()
            .map(PositiveWord)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inverse)
    }

    /// Letterwise mirror: the order of letters is reversed, exponents kept.
    pub fn mirror(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().copied().collect())
    }

    pub fn free_reduce(&self) -> SignedWord {
        free_reduce(self)
    }

    /// `h⁻¹ · self · h`, freely reduced.
    pub fn conjugate_by(&self, h: &SignedWord) -> SignedWord {
        free_reduce(&h.inverse().concat(self).concat(h))
    }

    /// Replaces every generator by its image, freely reducing the result.
    pub fn substitute(&self, images: &[SignedWord]) -> SignedWord {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                out.extend(img.0.iter().rev().map(|x| x.inv()));
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        free_reduce(&SignedWord(out))
    }
}

impl From<PositiveWord> for SignedWord {
    fn from(w: PositiveWord) -> Self {
        w.to_signed()
    }
}

/// Removes every adjacent pair `g g⁻¹` or `g⁻¹ g` until none remain.
pub fn free_reduce(w: &SignedWord) -> SignedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    SignedWord(out)
}

/// Generator names with their interned indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Gen>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from distinct names; returns `None` on a duplicate.
    pub fn from_names<I, S>(names: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::new();
        for n in names {
            a.push(n.into())?;
        }
        Some(a)
    }

    /// Adds a generator; `None` if the name is already taken.
    pub fn push(&mut self, name: String) -> Option<Gen> {
        if self.lookup.contains_key(&name) {
            return None;
        }
        let id = self.names.len();
        self.lookup.insert(name.clone(), id);
        self.names.push(name);
        Some(id)
    }

    /// Adds a generator whose name is derived from `base`, appending
    /// apostrophes until it is fresh.
    pub fn push_fresh(&mut self, base: &str) -> Gen {
        let mut name = base.to_string();
        while self.lookup.contains_key(&name) {
            name.push('\'');
        }
        self.push(name).expect("name is fresh")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<Gen> {
        self.lookup.get(name).copied()
    }

    pub fn gens(&self) -> std::ops::Range<Gen> {
        0..self.names.len()
    }

    pub fn show_positive(&self, w: &PositiveWord) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.0.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    pub fn show_signed(&self, w: &SignedWord) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.0.iter().map(|&l| self.show_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn show_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.name(l.gen))
        } else {
            self.name(l.gen).to_string()
        }
    }

    pub fn display_positive<'a>(&'a self, w: &'a PositiveWord) -> impl fmt::Display + 'a {
        Shown(self.show_positive(w))
    }

    pub fn display_signed<'a>(&'a self, w: &'a SignedWord) -> impl fmt::Display + 'a {
        Shown(self.show_signed(w))
    }
}

struct Shown(String);

impl fmt::Display for Shown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(spec: &[(Gen, bool)]) -> SignedWord {
        SignedWord(spec.iter().map(|&(g, i)| Letter { gen: g, inverse: i }).collect())
    }

    #[test]
    fn free_reduce_examples() {
        let (x, y, z) = (0, 1, 2);
        let w = sw(&[(x, false), (y, false), (y, true), (z, false)]);
        assert_eq!(free_reduce(&w), sw(&[(x, false), (z, false)]));
        assert_eq!(free_reduce(&SignedWord::empty()), SignedWord::empty());
        let w = sw(&[(x, false), (x, true), (x, false)]);
        assert_eq!(free_reduce(&w), sw(&[(x, false)]));
    }

    #[test]
    fn positive_signed_round_trip() {
        let w = PositiveWord(vec![0, 1, 1, 2]);
        assert_eq!(w.to_signed().to_positive(), Some(w.clone()));
        assert_eq!(w.inverse().inverse(), w.to_signed());
        assert!(w.inverse().to_positive().is_none() || w.is_empty());
    }

    #[test]
    fn fresh_names_do_not_collide() {
        let mut a = Alphabet::from_names(["z", "z'"]).unwrap();
        let g = a.push_fresh("z");
        assert_eq!(a.name(g), "z''");
        assert!(Alphabet::from_names(["x", "x"]).is_none());
    }

    #[test]
    fn substitution_reduces() {
        let x = SignedWord::gen(0);
        let y = SignedWord::gen(1);
        let images = vec![y.clone(), x.clone()];
        let w = sw(&[(0, false), (1, true)]);
        assert_eq!(w.substitute(&images), sw(&[(1, false), (0, true)]));
        assert_eq!(x.conjugate_by(&y), sw(&[(1, true), (0, false), (1, false)]));
    }
}
