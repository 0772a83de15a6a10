use std::collections::{HashSet, VecDeque};

use super::{BackendError, Conjugacy, GroupBackend, NormalForm};
use crate::word::{Alphabet, Letter, SignedWord};

const ENUMERATION_CAP: usize = 1_000_000;

/// `a` then `b`: `(a*b)[p] = b[a[p]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&p| b[p]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (p, &q) in a.iter().enumerate() {
        out[q] = p;
    }
    out
}

/// Sorted cycle lengths, fixed points included.
pub fn cycle_type(a: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = a[p];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Parses cycle notation such as `(1 2)(3 4 5)` or `()` into 1-based cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("missing permutation".into());
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = body.find(')').ok_or("unclosed cycle")?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let p: usize = tok.parse().map_err(|_| format!("invalid point `{tok}`"))?;
            if p == 0 {
                return Err("points are numbered from 1".into());
            }
            if cycle.contains(&p) || cycles.iter().any(|c: &Vec<usize>| c.contains(&p)) {
                return Err(format!("point {p} repeated"));
            }
            cycle.push(p);
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses `name = (cycles)` lines; `#` starts a comment.
/// A generator name with its permutation as a list of cycles.
pub type NamedCycles = (String, Vec<Vec<usize>>);

pub fn parse_perm_text(text: &str) -> Result<Vec<NamedCycles>, BackendError> {
    let mut out: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| BackendError::Syntax { line: i + 1, message };
        let (name, cycles) = line.split_once('=').ok_or_else(|| syntax("expected `name = (cycles)`".into()))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(crate::parse::is_name_char) {
            return Err(syntax(format!("invalid generator name `{name}`")));
        }
        if out.iter().any(|(n, _)| n == name) {
            return Err(syntax(format!("generator `{name}` given twice")));
        }
        out.push((name.to_string(), parse_cycles(cycles).map_err(syntax)?));
    }
    Ok(out)
}

/// A permutation group given by generator images, acting on the right.
#[derive(Clone, Debug)]
pub struct PermBackend {
    degree: usize,
    images: Vec<Vec<usize>>,
}

impl PermBackend {
    /// Builds from 1-based cycle lists, one per generator in alphabet order.
    pub fn new(cycles: &[Vec<Vec<usize>>]) -> Self {
        let degree = cycles.iter().flatten().flatten().copied().max().unwrap_or(0).max(1);
        let images = cycles
            .iter()
            .map(|cs| {
                let mut p: Vec<usize> = (0..degree).collect();
                for c in cs {
                    for k in 0..c.len() {
                        p[c[k] - 1] = c[(k + 1) % c.len()] - 1;
                    }
                }
                p
            })
            .collect();
        PermBackend { degree, images }
    }

    pub fn from_text(text: &str, alphabet: &Alphabet) -> Result<Self, BackendError> {
        let entries = parse_perm_text(text)?;
        for (name, _) in &entries {
            if alphabet.get(name).is_none() {
                return Err(BackendError::UndeclaredGenerator(name.clone()));
            }
        }
        let mut cycles = Vec::with_capacity(alphabet.len());
        for name in alphabet.names() {
            match entries.iter().find(|(n, _)| n == name) {
                Some((_, c)) => cycles.push(c.clone()),
                None => return Err(BackendError::MissingImage(name.clone())),
            }
        }
        Ok(PermBackend::new(&cycles))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn letter(&self, l: Letter) -> Vec<usize> {
        if l.inverse {
            invert(&self.images[l.gen])
        } else {
            self.images[l.gen].clone()
        }
    }

    /// The permutation of a word, 0-based.
    pub fn eval(&self, w: &SignedWord) -> Result<Vec<usize>, BackendError> {
        self.check(w)?;
        let mut p: Vec<usize> = (0..self.degree).collect();
        for &l in w.letters() {
            p = compose(&p, &self.letter(l));
        }
        Ok(p)
    }
}

impl GroupBackend for PermBackend {
    fn name(&self) -> String {
        format!("perm:{}", self.degree)
    }

    fn generator_count(&self) -> usize {
        self.images.len()
    }

    fn normal_form(&self, w: &SignedWord) -> Result<NormalForm, BackendError> {
        Ok(NormalForm::Perm(self.eval(w)?))
    }

    fn conjugacy_search(&self, g: &SignedWord, h: &SignedWord, _bound: usize) -> Result<Conjugacy, BackendError> {
        let (pg, ph) = (self.eval(g)?, self.eval(h)?);
        if cycle_type(&pg) != cycle_type(&ph) {
            return Ok(Conjugacy::NotConjugate);
        }
        let letters: Vec<Letter> = (0..self.images.len()).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
        let identity: Vec<usize> = (0..self.degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::from([(identity.clone(), SignedWord::empty())]);
        seen.insert(identity);
        while let Some((c, word)) = queue.pop_front() {
            if compose(&compose(&invert(&c), &pg), &c) == ph {
                return Ok(Conjugacy::Found(word));
            }
            for &l in &letters {
                let next = compose(&c, &self.letter(l));
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= ENUMERATION_CAP {
                    return Ok(Conjugacy::Unknown);
                }
                seen.insert(next.clone());
                let mut w = word.0.clone();
                w.push(l);
                queue.push_back((next, SignedWord(w)));
            }
        }
        Ok(Conjugacy::NotConjugate)
    }

    fn exact_conjugacy(&self) -> bool {
        true
    }
}
