//! Reduced words in the free group on `x` and `y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four letters `x`, `x⁻¹`, `y`, `y⁻¹`.
///
/// The discriminant packs the variable in bit 1 and the sign in bit 0, so
/// inverting a letter flips bit 0 and the derived ordering is `x < X < y < Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Letter {
    X = 0,
    XInv = 1,
    Y = 2,
    YInv = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X, Letter::XInv, Letter::Y, Letter::YInv];

    pub fn from_index(i: u8) -> Letter {
        Letter::ALL[(i & 3) as usize]
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn inverse(self) -> Letter {
        Letter::from_index(self.index() ^ 1)
    }

    /// 0 for `x`, 1 for `y`.
    pub fn variable(self) -> usize {
        (self.index() >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.index() & 1 == 1
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::XInv => 'X',
            Letter::Y => 'y',
            Letter::YInv => 'Y',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'x' => Some(Letter::X),
            'X' => Some(Letter::XInv),
            'y' => Some(Letter::Y),
            'Y' => Some(Letter::YInv),
            _ => None,
        }
    }
}

/// One of the eight substitutions `x ↦ x^±1, y ↦ y^±1`, optionally composed
/// with the swap `x ↔ y`. Each is an automorphism of the free group, so
/// precomposing a word with one does not change its image in any group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedSwap {
    pub swap: bool,
    pub invert: [bool; 2],
}

impl SignedSwap {
    pub fn all() -> [SignedSwap; 8] {
        let mut out = [SignedSwap {
            swap: false,
            invert: [false; 2],
        }; 8];
        for (k, s) in out.iter_mut().enumerate() {
            s.swap = k & 4 != 0;
            s.invert = [k & 1 != 0, k & 2 != 0];
        }
        out
    }

    pub fn apply_letter(self, l: Letter) -> Letter {
        let var = l.variable();
        let sign = l.is_inverse() ^ self.invert[var];
        let var = var ^ self.swap as usize;
        Letter::from_index(((var as u8) << 1) | sign as u8)
    }

    pub fn apply(self, w: &Word) -> Word {
        Word {
            letters: w.letters.iter().map(|&l| self.apply_letter(l)).collect(),
        }
    }
}

/// A freely reduced word. The empty word is the identity of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn power(&self, n: usize) -> Word {
        Word::reduce(std::iter::repeat_n(self.letters.iter().copied(), n).flatten())
    }

    pub fn commutator() -> Word {
        Word {
            letters: vec![Letter::X, Letter::Y, Letter::XInv, Letter::YInv],
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Rotation by `k`: the cyclic conjugate starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// The lexicographically least word among all rotations of all signed
    /// swaps of `self`. Meaningful for cyclically reduced words.
    pub fn canonical(&self) -> Word {
        let mut best = self.clone();
        for s in SignedSwap::all() {
            let image = s.apply(self);
            for k in 0..self.len().max(1) {
                let cand = image.rotate(k);
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    /// Every distinct member of the class of `self` under signed swaps and
    /// rotations, sorted.
    pub fn class_members(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(8 * self.len().max(1));
        for s in SignedSwap::all() {
            let image = s.apply(self);
            for k in 0..self.len().max(1) {
                out.push(image.rotate(k));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// True iff `letters` is lexicographically least among all its rotations
/// under all signed swaps.
pub(crate) fn is_canonical_letters(letters: &[Letter]) -> bool {
    let n = letters.len();
    for s in SignedSwap::all() {
        for k in 0..n {
            for i in 0..n {
                let c = s.apply_letter(letters[(i + k) % n]);
                match c.cmp(&letters[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
    }
    true
}

impl Word {
    pub fn is_canonical(&self) -> bool {
        is_canonical_letters(&self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `x`, `X`, `y`, `Y` letters (capitals are inverses); `1` or an
    /// empty string is the empty word. The result is freely reduced.
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| Error::InvalidInput(format!("bad letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(letters))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::reduce(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(w("xXyY"), Word::empty());
        assert_eq!(w("xyYx"), w("xx"));
        assert_eq!(w("xyx").concat(&w("XYX")), Word::empty());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("xyXY").to_string(), "xyXY");
        assert_eq!(Word::empty().to_string(), "1");
        assert!("xz".parse::<Word>().is_err());
        assert_eq!(Word::commutator(), w("xyXY"));
    }

    #[test]
    fn single_letters_share_a_class() {
        assert_eq!(w("x").canonical(), w("x"));
        assert_eq!(w("X").canonical(), w("x"));
        assert_eq!(w("Y").canonical(), w("x"));
        assert_eq!(w("x").class_members().len(), 4);
    }

    #[test]
    fn cyclic_reduction() {
        assert!(w("xy").is_cyclically_reduced());
        assert!(!w("xyX").is_cyclically_reduced());
        assert!(w("x").is_cyclically_reduced());
    }

    #[test]
    fn canonical_is_least_member() {
        let word = w("Yxyyy");
        assert!(!word.is_cyclically_reduced());
        let word = w("Yxyyx");
        let c = word.canonical();
        assert!(c.is_canonical());
        assert_eq!(c, *word.class_members().first().unwrap());
        assert!(!word.is_canonical());
    }

    #[test]
    fn power_and_inverse() {
        assert_eq!(w("xy").power(3), w("xyxyxy"));
        assert_eq!(w("xy").inverse(), w("YX"));
        assert_eq!(w("x").power(0), Word::empty());
    }
}
