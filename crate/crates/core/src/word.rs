//! Words in a free group over numbered generators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub const fn inv(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }

    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A finite sequence of letters. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Builds a word from signed generator indices: `+(g+1)` for `g`, `-(g+1)` for `g⁻¹`.
    pub fn from_signed(signed: &[i64]) -> Self {
        Self(
            signed
                .iter()
                .map(|&s| {
                    assert!(s != 0, "signed letter 0 is not a generator");
                    Letter::new(s.unsigned_abs() as usize - 1, s < 0)
                })
                .collect(),
        )
    }

    /// `g^e` as a word of `|e|` letters.
    pub fn power(generator: usize, exponent: i64) -> Self {
        let letter = Letter::new(generator, exponent < 0);
        Self(vec![letter; exponent.unsigned_abs() as usize])
    }

    pub fn generator(generator: usize) -> Self {
        Self(vec![Letter::pos(generator)])
    }

    /// The commutator `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Self(letters)
    }

    /// Free-group product, reduced.
    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.free_reduce();
        for &l in other.letters() {
            push_reduced(&mut out.0, l);
        }
        out
    }

    pub fn free_reduce(&self) -> Self {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut out, l);
        }
        Self(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Exponent sum of each generator, indexed by generator id.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0; generator_count];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }

    /// All distinct cyclic rotations, starting with the word itself.
    pub fn cyclic_conjugates(&self) -> Vec<Word> {
        let n = self.0.len();
        let mut out: Vec<Word> = Vec::with_capacity(n.max(1));
        if n == 0 {
            out.push(Word::identity());
            return out;
        }
        for shift in 0..n {
            let mut letters = Vec::with_capacity(n);
            letters.extend_from_slice(&self.0[shift..]);
            letters.extend_from_slice(&self.0[..shift]);
            let w = Word(letters);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Inserts `other` at `position` and freely reduces the result.
    pub fn insert_reduced(&self, position: usize, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        for &l in self.0[..position]
            .iter()
            .chain(other.0.iter())
            .chain(self.0[position..].iter())
        {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Replaces each generator `g` by `images[g]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let image = &images[l.generator];
            if l.inverse {
                for &m in image.0.iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in &image.0 {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word(out)
    }

    /// Renders the word with the given generator labels, e.g. `a b^-1`.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelledWord { word: self, labels }
    }

    /// Token form used in presentation files: `["a", "b^-1"]`.
    pub fn to_tokens(&self, labels: &[String]) -> Vec<String> {
        self.0
            .iter()
            .map(|l| {
                let name = &labels[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }
}

#[inline]
fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|&last| last.cancels(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Self(letters)
    }
}

struct LabelledWord<'a> {
    word: &'a Word,
    labels: &'a [String],
}

impl fmt::Display for LabelledWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, tok) in self.word.to_tokens(self.labels).iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(tok)?;
        }
        Ok(())
    }
}

/// Free reduction of a word.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}
