use std::collections::HashMap;

use super::{reduced_words, BackendError, Conjugacy, GroupBackend, NormalForm};
use crate::braid::{BraidLetter, BraidWord};
use crate::word::{free_reduce, Alphabet, Letter, SignedWord};
use crate::Truth;

/// Parses `x=1,y=2,z=-2.1.2`: each generator maps to a braid word written as
/// dot-separated signed generator indices.
pub fn parse_braid_map(map: &str, strands: usize, alphabet: &Alphabet) -> Result<Vec<BraidWord>, BackendError> {
    let mut images: Vec<Option<BraidWord>> = vec![None; alphabet.len()];
    for (k, entry) in map.split(',').enumerate() {
        let syntax = |message: String| BackendError::Syntax { line: 1, message: format!("entry {}: {message}", k + 1) };
        let (name, word) = entry.split_once('=').ok_or_else(|| syntax("expected `name=index`".into()))?;
        let name = name.trim();
        let g = alphabet.get(name).ok_or_else(|| BackendError::UndeclaredGenerator(name.to_string()))?;
        if images[g].is_some() {
            return Err(syntax(format!("generator `{name}` mapped twice")));
        }
        let mut letters = Vec::new();
        for tok in word.split('.') {
            let tok = tok.trim();
            let (digits, inverse) = match tok.strip_prefix('-') {
                Some(d) => (d, true),
                None => (tok, false),
            };
            let index: usize = digits.parse().map_err(|_| syntax(format!("invalid index `{tok}`")))?;
            letters.push(BraidLetter { index, inverse });
        }
        let bw = BraidWord::new(strands, letters).map_err(|e| syntax(e.to_string()))?;
        images[g] = Some(bw);
    }
    images
        .into_iter()
        .enumerate()
        .map(|(g, img)| img.ok_or_else(|| BackendError::MissingImage(alphabet.name(g).to_string())))
        .collect()
}

/// Repeatedly removes the handle whose end is leftmost. The result is empty
/// exactly when the input is the trivial braid.
pub fn handle_reduce(word: &[BraidLetter]) -> Vec<BraidLetter> {
    let mut w = word.to_vec();
    'outer: loop {
        for j in 0..w.len() {
            let k = w[j].index;
            let Some(i) = (0..j).rev().find(|&i| w[i].index == k || w[i].index + 1 == k) else {
                continue;
            };
            if w[i].index != k || w[i].inverse == w[j].inverse {
                continue;
            }
            let e_inv = w[i].inverse;
            let mut out = Vec::with_capacity(w.len() + 2 * (j - i));
            out.extend_from_slice(&w[..i]);
            for &l in &w[i + 1..j] {
                if l.index == k + 1 {
                    out.push(BraidLetter { index: k + 1, inverse: !e_inv });
                    out.push(BraidLetter { index: k, inverse: l.inverse });
                    out.push(BraidLetter { index: k + 1, inverse: e_inv });
                } else {
                    out.push(l);
                }
            }
            out.extend_from_slice(&w[j + 1..]);
            w = out;
            continue 'outer;
        }
        return w;
    }
}

/// Images of the free generators `x₁ … x_n` under the Artin representation,
/// each letter substituted in turn.
pub fn artin_images(strands: usize, word: &[BraidLetter]) -> Vec<SignedWord> {
    let mut images: Vec<SignedWord> = (0..strands).map(SignedWord::gen).collect();
    for l in word {
        let (a, b) = (l.index - 1, l.index);
        let mut subst: Vec<SignedWord> = (0..strands).map(SignedWord::gen).collect();
        if l.inverse {
            subst[a] = SignedWord::gen(b);
            subst[b] = SignedWord(vec![Letter::neg(b), Letter::pos(a), Letter::pos(b)]);
        } else {
            subst[a] = SignedWord(vec![Letter::pos(a), Letter::pos(b), Letter::neg(a)]);
            subst[b] = SignedWord::gen(a);
        }
        images = images.iter().map(|w| w.substitute(&subst)).collect();
    }
    images
}

/// The braid group on `strands` strands, each generator mapped to a braid
/// word.
#[derive(Clone, Debug)]
pub struct BraidBackend {
    strands: usize,
    images: Vec<BraidWord>,
}

impl BraidBackend {
    pub fn new(strands: usize, images: Vec<BraidWord>) -> Self {
        BraidBackend { strands, images }
    }

    /// Generator `k` (in alphabet order) maps to `σ_{k+1}`.
    pub fn standard(strands: usize) -> Self {
        let images = (1..strands)
            .map(|i| BraidWord::new(strands, vec![BraidLetter::sigma(i)]).expect("index in range"))
            .collect();
        BraidBackend { strands, images }
    }

    pub fn from_map(strands: usize, map: &str, alphabet: &Alphabet) -> Result<Self, BackendError> {
        Ok(BraidBackend { strands, images: parse_braid_map(map, strands, alphabet)? })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn to_braid(&self, w: &SignedWord) -> Result<Vec<BraidLetter>, BackendError> {
        self.check(w)?;
        let mut out = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.gen];
            if l.inverse {
                out.extend(img.inverse().letters());
            } else {
                out.extend(img.letters());
            }
        }
        Ok(out)
    }

    fn exponent_sum(&self, w: &SignedWord) -> Result<i64, BackendError> {
        Ok(self.to_braid(w)?.iter().map(|l| if l.inverse { -1 } else { 1 }).sum())
    }
}

impl GroupBackend for BraidBackend {
    fn name(&self) -> String {
        format!("braid:{}", self.strands)
    }

    fn generator_count(&self) -> usize {
        self.images.len()
    }

    fn normal_form(&self, w: &SignedWord) -> Result<NormalForm, BackendError> {
        Ok(NormalForm::Braid(artin_images(self.strands, &self.to_braid(w)?)))
    }

    fn equal(&self, a: &SignedWord, b: &SignedWord) -> Result<Truth, BackendError> {
        let mut w = self.to_braid(a)?;
        w.extend(self.to_braid(b)?.iter().rev().map(|l| l.inv()));
        Ok(Truth::from_bool(handle_reduce(&w).is_empty()))
    }

    fn conjugacy_search(&self, g: &SignedWord, h: &SignedWord, bound: usize) -> Result<Conjugacy, BackendError> {
        if self.exponent_sum(g)? != self.exponent_sum(h)? {
            return Ok(Conjugacy::NotConjugate);
        }
        // c = c1·c2 conjugates g to h iff c1⁻¹·g·c1 = c2·h·c2⁻¹.
        let m = self.generator_count();
        let mut left: HashMap<NormalForm, SignedWord> = HashMap::new();
        for len in 0..=bound.div_ceil(2) {
            for c1 in reduced_words(m, len) {
                left.entry(self.normal_form(&g.conjugate_by(&c1))?).or_insert(c1);
            }
        }
        let mut best: Option<(usize, SignedWord)> = None;
        for len in 0..=bound / 2 {
            for c2 in reduced_words(m, len) {
                let key = self.normal_form(&h.conjugate_by(&c2.inverse()))?;
                if let Some(c1) = left.get(&key) {
                    let total = c1.len() + c2.len();
                    let c = free_reduce(&c1.concat(&c2));
                    let better = match &best {
                        None => true,
                        Some((t, b)) => total < *t || (total == *t && (c.len(), &c.0) < (b.len(), &b.0)),
                    };
                    if better {
                        best = Some((total, c));
                    }
                }
            }
        }
        match best {
            Some((_, c)) if self.equal(&g.conjugate_by(&c), h)?.is_yes() => Ok(Conjugacy::Found(c)),
            _ => Ok(Conjugacy::Unknown),
        }
    }

    fn exact_conjugacy(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(text: &str, n: usize) -> Vec<BraidLetter> {
        BraidWord::parse(text, n).unwrap().letters().to_vec()
    }

    fn word(v: &[(usize, bool)]) -> SignedWord {
        SignedWord(v.iter().map(|&(g, i)| Letter { gen: g, inverse: i }).collect())
    }

    #[test]
    fn handle_reduction_examples() {
        assert!(handle_reduce(&b("s1 s2 s1 s2^-1 s1^-1 s2^-1", 3)).is_empty());
        assert!(handle_reduce(&b("s1 s3 s1^-1 s3^-1", 4)).is_empty());
        assert!(!handle_reduce(&b("s1 s2 s1^-1 s2^-1", 3)).is_empty());
        assert!(!handle_reduce(&b("s1 s1", 2)).is_empty());
    }

    #[test]
    fn artin_images_detect_relations() {
        assert_eq!(artin_images(3, &b("s1 s2 s1", 3)), artin_images(3, &b("s2 s1 s2", 3)));
        assert_ne!(artin_images(3, &b("s1 s2", 3)), artin_images(3, &b("s2 s1", 3)));
        assert_eq!(artin_images(3, &b("s1 s1^-1", 3)), artin_images(3, &[]));
    }

    #[test]
    fn standard_backend_equalities() {
        let bb = BraidBackend::standard(3);
        let xyx = word(&[(0, false), (1, false), (0, false)]);
        let yxy = word(&[(1, false), (0, false), (1, false)]);
        assert_eq!(bb.equal(&xyx, &yxy).unwrap(), Truth::Yes);
        assert_eq!(bb.normal_form(&xyx).unwrap(), bb.normal_form(&yxy).unwrap());
    }

    #[test]
    fn conjugacy_examples() {
        let bb = BraidBackend::standard(3);
        let x = word(&[(0, false)]);
        let y = word(&[(1, false)]);
        let yxy = word(&[(1, true), (0, false), (1, false)]);
        assert_eq!(bb.conjugacy_search(&x, &yxy, 1).unwrap(), Conjugacy::Found(y.clone()));
        assert_eq!(bb.conjugacy_search(&x, &y, 0).unwrap(), Conjugacy::Unknown);
        assert_eq!(bb.conjugacy_search(&x, &word(&[(0, false), (1, false)]), 3).unwrap(), Conjugacy::NotConjugate);
    }

    #[test]
    fn map_with_words() {
        let a = Alphabet::from_names(["x", "y", "z"]).unwrap();
        let bb = BraidBackend::from_map(3, "x=1,y=2,z=-2.1.2", &a).unwrap();
        let z = word(&[(2, false)]);
        let conj = word(&[(1, true), (0, false), (1, false)]);
        assert_eq!(bb.equal(&z, &conj).unwrap(), Truth::Yes);
        assert!(matches!(BraidBackend::from_map(3, "x=1", &a), Err(BackendError::MissingImage(_))));
        assert!(matches!(BraidBackend::from_map(3, "x=1,y=3,z=1", &a), Err(BackendError::Syntax { .. })));
        assert!(matches!(BraidBackend::from_map(3, "q=1", &a), Err(BackendError::UndeclaredGenerator(_))));
    }
}
