//! Signed words over an indexed generating set.
//!
//! A letter is a generator index together with an inversion flag. The
//! external encoding is 1-indexed signed integers: `+3` is the third
//! generator, `-3` its inverse.

use std::fmt;

/// One signed letter of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

pub type Word = Vec<Letter>;

/// Formal inverse: reverse the word and invert every letter.
pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverted()).collect()
}

/// Removes adjacent `x x⁻¹` pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if let Some(&last) = out.last() {
            if last.gen == l.gen && last.inverse != l.inverse {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

/// Free reduction followed by trimming matching first/last letters.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 {
        let first = v[0];
        let last = v[v.len() - 1];
        if first.gen == last.gen && first.inverse != last.inverse {
            v = v[1..v.len() - 1].to_vec();
            v = free_reduce(&v);
        } else {
            break;
        }
    }
    v
}

/// Lexicographically least rotation; canonical representative of a word up
/// to cyclic permutation.
pub fn least_rotation(w: &[Letter]) -> Word {
    if w.is_empty() {
        return Vec::new();
    }
    let mut best = w.to_vec();
    for k in 1..w.len() {
        let mut rot = w[k..].to_vec();
        rot.extend_from_slice(&w[..k]);
        if rot < best {
            best = rot;
        }
    }
    best
}

/// Exponent sums per generator.
pub fn exponent_vector(w: &[Letter], generators: usize) -> Vec<i64> {
    let mut v = vec![0i64; generators];
    for l in w {
        v[l.gen] += if l.inverse { -1 } else { 1 };
    }
    v
}

/// Parses the 1-indexed signed integer encoding. Every entry must be
/// nonzero and have magnitude at most `generators`.
pub fn from_signed(ints: &[i64], generators: usize) -> Result<Word, WordError> {
    let mut w = Word::with_capacity(ints.len());
    for &i in ints {
        if i == 0 {
            return Err(WordError::ZeroLetter);
        }
        let gen = (i.unsigned_abs() as usize) - 1;
        if gen >= generators {
            return Err(WordError::LetterOutOfRange { letter: i, generators });
        }
        w.push(Letter { gen, inverse: i < 0 });
    }
    Ok(w)
}

pub fn to_signed(w: &[Letter]) -> Vec<i64> {
    w.iter()
        .map(|l| {
            let v = (l.gen + 1) as i64;
            if l.inverse {
                -v
            } else {
                v
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    ZeroLetter,
    LetterOutOfRange { letter: i64, generators: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::ZeroLetter => write!(f, "word letters are 1-indexed; 0 is not a letter"),
            WordError::LetterOutOfRange { letter, generators } => {
                write!(f, "letter {letter} out of range for {generators} generators")
            }
        }
    }
}

impl std::error::Error for WordError {}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ints: &[i64]) -> Word {
        from_signed(ints, 9).unwrap()
    }

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        assert_eq!(free_reduce(&w(&[1, 2, -2, -1])), Vec::new());
        assert_eq!(free_reduce(&w(&[1, -2, 2, 3])), w(&[1, 3]));
    }

    #[test]
    fn cyclic_reduction_trims_conjugating_letters() {
        assert_eq!(cyclic_reduce(&w(&[1, 2, 3, -1])), w(&[2, 3]));
        assert_eq!(cyclic_reduce(&w(&[1, 2, -1])), w(&[2]));
    }

    #[test]
    fn inversion_is_an_involution() {
        let word = w(&[1, -3, 2]);
        assert_eq!(invert(&invert(&word)), word);
        assert_eq!(to_signed(&invert(&word)), vec![-2, 3, -1]);
    }

    #[test]
    fn signed_round_trip() {
        let ints = vec![2, -1, 3, 3];
        assert_eq!(to_signed(&from_signed(&ints, 3).unwrap()), ints);
        assert!(from_signed(&[4], 3).is_err());
        assert!(from_signed(&[0], 3).is_err());
    }

    #[test]
    fn exponents_count_signs() {
        assert_eq!(exponent_vector(&w(&[1, 1, -2, 3, -1]), 4), vec![1, -1, 1, 0]);
    }
}
