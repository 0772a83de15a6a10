//! Braid words on a fixed number of strands.

use std::fmt;

/// One standard generator `σᵢ` or its inverse, with `i` in `1..strands`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn sigma(index: usize) -> Self {
        BraidLetter { index, inverse: false }
    }

    pub fn sigma_inv(index: usize) -> Self {
        BraidLetter { index, inverse: true }
    }

    pub fn inv(self) -> Self {
        BraidLetter { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "s{}^-1", self.index)
        } else {
            write!(f, "s{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("cannot compose braids on {left} and {right} strands")]
    StrandMismatch { left: usize, right: usize },
    #[error("invalid braid token {token:?} at column {column}")]
    Syntax { token: String, column: usize },
}

/// A word in the standard generators of the braid group on `strands` strands.
///
/// Concatenation is composition of right actions: the rightmost letter acts
/// last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        for l in &letters {
            if l.index == 0 || l.index >= strands.max(1) {
                return Err(BraidError::IndexOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn then(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn push(&mut self, l: BraidLetter) -> Result<(), BraidError> {
        if l.index == 0 || l.index >= self.strands {
            return Err(BraidError::IndexOutOfRange { index: l.index, strands: self.strands });
        }
        self.letters.push(l);
        Ok(())
    }

    /// Re-embeds the word on `strands` strands with every index shifted by `offset`.
    pub fn shifted(&self, offset: usize, strands: usize) -> Result<BraidWord, BraidError> {
        let letters = self
            .letters
            .iter()
            .map(|l| BraidLetter { index: l.index + offset, inverse: l.inverse })
            .collect();
        BraidWord::new(strands, letters)
    }

    pub fn power(&self, k: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Parses the text format `s2 s3 s1^-1 s3`; `ε` or blank is the identity.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        let mut column = 1;
        for raw in text.split(' ') {
            let token = raw.trim();
            if !token.is_empty() && token != "ε" {
                letters.push(parse_braid_token(token, column, strands)?);
            }
            column += raw.chars().count() + 1;
        }
        BraidWord::new(strands, letters)
    }
}

fn parse_braid_token(token: &str, column: usize, strands: usize) -> Result<BraidLetter, BraidError> {
    let bad = || BraidError::Syntax { token: token.to_string(), column };
    let rest = token.strip_prefix('s').ok_or_else(bad)?;
    let (digits, inverse) = match rest.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 || index >= strands {
        return Err(BraidError::IndexOutOfRange { index, strands });
    }
    Ok(BraidLetter { index, inverse })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let b = BraidWord::parse("s2 s3 s1^-1 s3", 4).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.to_string(), "s2 s3 s1^-1 s3");
        assert_eq!(BraidWord::parse("ε", 3).unwrap(), BraidWord::identity(3));
        assert_eq!(BraidWord::parse("", 3).unwrap().to_string(), "ε");
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(BraidWord::parse("s0", 3), Err(BraidError::IndexOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("s3", 3), Err(BraidError::IndexOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("t1", 3), Err(BraidError::Syntax { column: 1, .. })));
        assert!(matches!(BraidWord::parse("s1 s^-1", 3), Err(BraidError::Syntax { column: 4, .. })));
    }

    #[test]
    fn inverse_and_shift() {
        let b = BraidWord::parse("s1 s2^-1", 3).unwrap();
        assert_eq!(b.inverse().to_string(), "s2 s1^-1");
        assert_eq!(b.shifted(1, 4).unwrap().to_string(), "s2 s3^-1");
        assert!(b.shifted(1, 3).is_err());
    }
}
