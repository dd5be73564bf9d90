use serde::{Deserialize, Serialize};

use super::GroupError;

/// Word over signed generator indices: `i` is the i-th generator (1-based),
/// `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GeneratorWord(Vec<i64>);

impl GeneratorWord {
    pub fn new(letters: Vec<i64>) -> Result<Self, GroupError> {
        if letters.contains(&0) {
            return Err(GroupError::ZeroLetter);
        }
        Ok(GeneratorWord(letters))
    }

    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn letter(l: i64) -> Self {
        assert_ne!(l, 0, "generator letters are nonzero");
        GeneratorWord(vec![l])
    }

    pub fn letters(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Formal inverse: reverse and negate every letter.
    pub fn inverse(&self) -> Self {
        GeneratorWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &GeneratorWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GeneratorWord(v)
    }

    pub fn push(&mut self, l: i64) {
        assert_ne!(l, 0, "generator letters are nonzero");
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &GeneratorWord) {
        self.0.extend_from_slice(&other.0);
    }

    /// `self` repeated `n` times.
    pub fn repeat(&self, n: usize) -> Self {
        GeneratorWord(self.0.repeat(n))
    }
}

impl TryFrom<Vec<i64>> for GeneratorWord {
    type Error = GroupError;

    fn try_from(v: Vec<i64>) -> Result<Self, GroupError> {
        GeneratorWord::new(v)
    }
}

impl From<GeneratorWord> for Vec<i64> {
    fn from(w: GeneratorWord) -> Self {
        w.0
    }
}

impl FromIterator<i64> for GeneratorWord {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let v: Vec<i64> = iter.into_iter().collect();
        GeneratorWord::new(v).expect("generator letters are nonzero")
    }
}
