use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(alloc::vec![Letter::new(i, false)])
    }

    pub fn gen_inv(i: usize) -> Self {
        Word(alloc::vec![Letter::new(i, true)])
    }

    /// Freely reduces the letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from signed 1-based generator numbers, `-k` meaning the
    /// inverse of generator `k`.
    pub fn from_signed(letters: &[i64]) -> Self {
        Word::from_letters(letters.iter().map(|&s| {
            assert!(s != 0, "signed letters are nonzero");
            Letter::new(s.unsigned_abs() as usize - 1, s < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.sign()).sum()
    }

    /// Exponent sums of generators `0..k`.
    pub fn exponent_vector(&self, k: usize) -> Vec<i64> {
        let mut v = alloc::vec![0; k];
        for l in &self.0 {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Number of letters involving `gen`, either sign.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Strips conjugating prefixes, `u w u^-1 -> w`.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e - s >= 2 && self.0[s] == self.0[e - 1].inv() {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    /// Cyclic permutation starting at letter `i`.
    pub fn rotate(&self, i: usize) -> Word {
        let mut v = self.0[i..].to_vec();
        v.extend_from_slice(&self.0[..i]);
        Word::from_letters(v)
    }

    /// Replaces every generator `j` by `images[j]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                w = w.mul(&img.inverse());
            } else {
                w = w.mul(img);
            }
        }
        w
    }

    /// Renumbers generators through `f`; used when a generator is removed.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_letters(self.0.iter().map(|l| Letter::new(f(l.gen), l.inverse)))
    }

    /// Space-separated rendering with runs written as powers, e.g.
    /// `a^2 b^-1`, and `1` for the identity.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return String::from("1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == l).count();
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            parts.push(match e {
                1 => names[l.gen].clone(),
                _ => format!("{}^{e}", names[l.gen]),
            });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}{}", l.gen, if l.inverse { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

fn lookup(token: &str, names: &[String]) -> Option<Letter> {
    if let Some(i) = names.iter().position(|n| n == token) {
        return Some(Letter::new(i, false));
    }
    names
        .iter()
        .position(|n| n.to_uppercase() != *n && n.to_uppercase() == token)
        .map(|i| Letter::new(i, true))
}

/// Parses a word over the given generator names.
///
/// Tokens are separated by whitespace or `*`. A token is a name, an
/// upper-cased name (the inverse), or either followed by `^k` with a signed
/// integer `k`. `1` denotes the identity. When every name is a single
/// character, runs such as `abAB` are split into letters.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut w = Word::identity();
    let single_char = names.iter().all(|n| n.chars().count() == 1);
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() || bytes[i] == b'*' {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'*' {
            i += 1;
        }
        let token = &text[start..i];
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let e: i64 = e.parse().map_err(|_| Error::Parse {
                    pos: start + b.len() + 1,
                    msg: format!("bad exponent in {token:?}"),
                })?;
                (b, e)
            }
            None => (token, 1),
        };
        if base == "1" {
            continue;
        }
        let letters: Vec<Letter> = if let Some(l) = lookup(base, names) {
            alloc::vec![l]
        } else if single_char && !base.is_empty() {
            let mut v = Vec::new();
            for (off, ch) in base.char_indices() {
                let mut buf = [0u8; 4];
                match lookup(ch.encode_utf8(&mut buf), names) {
                    Some(l) => v.push(l),
                    None => {
                        return Err(Error::Parse {
                            pos: start + off,
                            msg: format!("unknown generator {ch:?}"),
                        })
                    }
                }
            }
            v
        } else {
            return Err(Error::Parse {
                pos: start,
                msg: format!("unknown generator {base:?}"),
            });
        };
        let piece = Word::from_letters(letters).pow(exp);
        w = w.mul(&piece);
    }
    Ok(w)
}
