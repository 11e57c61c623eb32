//! Letters and words in a free group on at most 26 generators.
//!
//! Generators are written `a`, `b`, `c`, ... and their inverses `A`, `B`,
//! `C`, ... . Letters order as `a < A < b < B < ...`, which is the order used
//! for lexicographic canonical forms.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 26;

/// A generator or an inverse generator, encoded as `2 * generator + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator < MAX_GENERATORS);
        Letter((generator as u8) << 1 | inverse as u8)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2k`, usable for lookup tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Letter(i as u8)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator() as u8) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new((c as u8 - b'a') as usize, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            None
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub type Word = Vec<Letter>;

/// Parses a word over the first `rank` generators.
pub fn parse_word(s: &str, rank: usize) -> Result<Word> {
    let s = s.trim();
    let mut out = Vec::with_capacity(s.len());
    for c in s.chars() {
        let l = Letter::from_char(c).ok_or_else(|| Error::MalformedWord {
            word: s.to_string(),
            reason: format!("invalid character {c:?}"),
        })?;
        if l.generator() >= rank {
            return Err(Error::MalformedWord {
                word: s.to_string(),
                reason: format!("letter {c} outside an alphabet of rank {rank}"),
            });
        }
        out.push(l);
    }
    Ok(out)
}

pub fn format_word(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_char()).collect()
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Free reduction.
pub fn reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction; the result is a cyclically reduced word
/// conjugate to `w`.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let r = reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == r[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

pub fn is_cyclically_reduced(w: &[Letter]) -> bool {
    if w.is_empty() {
        return true;
    }
    w.windows(2).all(|p| p[1] != p[0].inverse()) && w[0] != w[w.len() - 1].inverse()
}

pub fn concat(parts: &[&[Letter]]) -> Word {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    reduce(&out)
}

pub fn rotate(w: &[Letter], i: usize) -> Word {
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[i..]);
    out.extend_from_slice(&w[..i]);
    out
}

/// Smallest period `p` dividing `w.len()` with `w` equal to its `p`-rotation.
/// Returns `(root, exponent)`.
pub fn primitive_root(w: &[Letter]) -> (Word, usize) {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[(i + p) % n]) {
            return (w[..p].to_vec(), n / p);
        }
    }
    (w.to_vec(), 1)
}

/// Lexicographically least rotation (Booth's algorithm is overkill at these
/// lengths; a direct scan is used).
pub fn least_rotation(w: &[Letter]) -> Word {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for i in 1..n {
        for k in 0..n {
            let a = w[(i + k) % n];
            let b = w[(best + k) % n];
            if a != b {
                if a < b {
                    best = i;
                }
                break;
            }
        }
    }
    rotate(w, best)
}

/// Enumerates every cyclically reduced word of exactly `len` letters over
/// `rank` generators (all rotations included).
pub fn cyclically_reduced_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur: Word = Vec::with_capacity(len);
    fn go(rank: usize, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            if is_cyclically_reduced(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..2 * rank {
            let l = Letter::from_index(i);
            if cur.last() == Some(&l.inverse()) {
                continue;
            }
            cur.push(l);
            go(rank, len, cur, out);
            cur.pop();
        }
    }
    if len > 0 {
        go(rank, len, &mut cur, &mut out);
    }
    out
}
