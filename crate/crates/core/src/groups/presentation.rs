use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::word::{parse_word, Word};
use crate::error::{Error, Result};
use crate::scalars::IntMatrix;

/// A finite group presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    meridians: Option<Vec<usize>>,
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name != "1"
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(Error::validation(format!("invalid generator name {name:?}")))
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::validation("a presentation needs at least one generator"));
        }
        for (i, g) in generators.iter().enumerate() {
            check_name(g)?;
            if generators[..i].contains(g) {
                return Err(Error::validation(format!("duplicate generator name {g:?}")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(Error::validation("relator references an unknown generator"));
            }
        }
        Ok(Presentation {
            generators,
            relators,
            meridians: None,
        })
    }

    /// Parses relators written over the given names.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| String::from(*s)).collect();
        let rels = relators
            .iter()
            .map(|r| parse_word(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, rels)
    }

    pub fn with_meridians(mut self, meridians: Vec<usize>) -> Result<Self> {
        if meridians.iter().any(|&m| m >= self.generators.len()) {
            return Err(Error::validation("meridian index out of range"));
        }
        self.meridians = Some(meridians);
        Ok(self)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridians(&self) -> Option<&[usize]> {
        self.meridians.as_deref()
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relator_matrix(&self) -> IntMatrix {
        let k = self.generators.len();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_vector(k)).collect();
        IntMatrix::from_fn(rows.len(), k, |i, j| rows[i][j])
    }

    pub fn render_relators(&self) -> Vec<String> {
        self.relators.iter().map(|r| r.render(&self.generators)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        assert_eq!(p.deficiency(), 1);
        assert_eq!(p.relator_matrix().to_rows(), alloc::vec![alloc::vec![1, -1]]);
        assert_eq!(p.render_relators(), alloc::vec!["a b a b^-1 a^-1 b^-1"]);
        assert!(Presentation::parse(&["a", "a"], &[]).is_err());
        assert!(Presentation::parse(&[], &[]).is_err());
    }
}
