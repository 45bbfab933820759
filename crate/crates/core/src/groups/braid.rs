use alloc::format;
use alloc::vec::Vec;

use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};

/// Artin action of `sigma_i^{+-1}` (0-based `i`) on the free generators.
fn artin(i: usize, positive: bool, n: usize) -> Vec<Word> {
    let mut img: Vec<Word> = (0..n).map(Word::gen).collect();
    let (a, b) = (Word::gen(i), Word::gen(i + 1));
    if positive {
        img[i] = a.mul(&b).mul(&a.inverse());
        img[i + 1] = a;
    } else {
        img[i] = b.clone();
        img[i + 1] = b.inverse().mul(&a).mul(&b);
    }
    img
}

/// Presentation of the group of a closed braid.
///
/// `word` lists signed 1-based Artin generators, `-i` for `sigma_i^-1`.
/// Generators `x1..xn` are the strands; the relators are
/// `beta(x_i) x_i^-1` with the last one dropped. Meridians are the lowest
/// strand of each component of the closure.
pub fn presentation_from_braid(word: &[i64], strands: usize) -> Result<Presentation> {
    if strands == 0 {
        return Err(Error::validation("a braid needs at least one strand"));
    }
    let mut images: Vec<Word> = (0..strands).map(Word::gen).collect();
    let mut perm: Vec<usize> = (0..strands).collect();
    for &s in word {
        let i = s.unsigned_abs() as usize;
        if s == 0 || i >= strands {
            return Err(Error::validation(format!(
                "braid letter {s} out of range for {strands} strands"
            )));
        }
        let step = artin(i - 1, s > 0, strands);
        images = step.iter().map(|w| w.substitute(&images)).collect();
        perm.swap(i - 1, i);
    }
    let mut relators: Vec<Word> = images
        .iter()
        .enumerate()
        .map(|(i, w)| w.mul(&Word::gen_inv(i)))
        .collect();
    relators.pop();

    let mut seen = alloc::vec![false; strands];
    let mut meridians = Vec::new();
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        meridians.push(s);
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
        }
    }
    let names = (1..=strands).map(|i| format!("x{i}")).collect();
    Presentation::new(names, relators)?.with_meridians(meridians)
}
