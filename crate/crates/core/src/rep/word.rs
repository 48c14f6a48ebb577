use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A word in named operators: whitespace-separated letters, each a name
/// optionally raised to an integer power, as in `x y^-1 d^2`. The empty
/// word is written `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(String, i64)>);

impl Word {
    pub fn new(letters: Vec<(String, i64)>) -> Self {
        Word(letters.into_iter().filter(|(_, k)| *k != 0).collect())
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|(n, k)| (n.clone(), -k)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Total number of letters counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, k)| k.unsigned_abs() as usize).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, k)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match k {
                1 => write!(f, "{name}")?,
                k => write!(f, "{name}^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split(' ') {
            let at = offset;
            offset += tok.len() + 1;
            if tok.is_empty() || tok == "1" {
                continue;
            }
            let (name, k) = match tok.split_once('^') {
                Some((n, k)) => (n, k.parse::<i64>().map_err(|_| Error::parse(at + n.len() + 1, "bad exponent"))?),
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::parse(at, format!("bad letter '{tok}'")));
            }
            letters.push((name.to_string(), k));
        }
        Ok(Word::new(letters))
    }
}
