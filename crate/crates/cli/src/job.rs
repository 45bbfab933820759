//! The JSON job format and its translation into core objects.
//!
//! Integers may be given as JSON numbers or as strings; polynomial and
//! cyclotomic literals are always strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use twalex_core::groups::{
    abelianization, parse_word, presentation_from_braid, wirtinger_from_pd, EpiToG, FinAbGroup,
    Presentation,
};
use twalex_core::reps::{AbelMap, MatRep};
use twalex_core::scalars::parse::{parse_cyclo, parse_laurent};
use twalex_core::scalars::{CycloField, IntMatrix, LaurentPoly, Matrix};
use twalex_core::covers::CoverSpec;
use twalex_core::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn value(&self) -> Result<i64> {
        match self {
            Num::Int(v) => Ok(*v),
            Num::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("expected an integer, got {s:?}"))),
        }
    }

    fn positive(&self, what: &str) -> Result<u64> {
        let v = self.value()?;
        u64::try_from(v)
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::Validation(format!("{what} must be positive, got {v}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    pub meridians: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidSpec {
    pub strands: Num,
    pub word: Vec<Num>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Images {
    Named(BTreeMap<String, Vec<Vec<String>>>),
    Ordered(Vec<Vec<Vec<String>>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoSpec {
    pub dim: Option<Num>,
    /// `z` in the entries denotes `zeta_conductor`.
    pub conductor: Option<Num>,
    pub images: Images,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub orders: Vec<Num>,
    pub pi_bar: Option<Vec<Vec<Num>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Option<String>,
    pub presentation: Option<PresentationSpec>,
    pub pd: Option<Vec<[Num; 4]>>,
    pub braid: Option<BraidSpec>,
    pub phi: Option<BTreeMap<String, Vec<Num>>>,
    pub rho: Option<RhoSpec>,
    pub cover: Option<CoverJson>,
    pub q: Option<Num>,
    pub polynomial: Option<String>,
    pub conductor: Option<Num>,
}

impl Job {
    pub fn from_json(text: &str) -> Result<Job> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: format!("line {}: {e}", e.line()),
        })
    }

    pub fn has_source(&self) -> bool {
        self.presentation.is_some() || self.pd.is_some() || self.braid.is_some()
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let given = [self.presentation.is_some(), self.pd.is_some(), self.braid.is_some()];
        match given.iter().filter(|&&b| b).count() {
            0 => return Err(Error::Validation("no presentation, pd or braid given".into())),
            1 => {}
            _ => return Err(Error::Validation("give only one of presentation, pd, braid".into())),
        }
        if let Some(spec) = &self.presentation {
            let names = spec.generators.clone();
            let rels = spec
                .relators
                .iter()
                .map(|r| parse_word(r, &names))
                .collect::<Result<Vec<_>>>()?;
            let p = Presentation::new(names, rels)?;
            return match &spec.meridians {
                None => Ok(p),
                Some(ms) => {
                    let idx = ms
                        .iter()
                        .map(|m| {
                            p.generator_index(m).ok_or_else(|| {
                                Error::Validation(format!("unknown meridian generator {m:?}"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    p.with_meridians(idx)
                }
            };
        }
        if let Some(pd) = &self.pd {
            let code = pd
                .iter()
                .map(|x| {
                    Ok([x[0].value()?, x[1].value()?, x[2].value()?, x[3].value()?])
                })
                .collect::<Result<Vec<_>>>()?;
            return wirtinger_from_pd(&code);
        }
        let b = self.braid.as_ref().unwrap();
        let word = b.word.iter().map(Num::value).collect::<Result<Vec<_>>>()?;
        presentation_from_braid(&word, b.strands.positive("strands")? as usize)
    }

    pub fn q(&self) -> Result<Option<u64>> {
        self.q.as_ref().map(|q| q.positive("q")).transpose()
    }

    pub fn group(&self) -> Result<Option<FinAbGroup>> {
        let Some(c) = &self.cover else { return Ok(None) };
        let orders = c
            .orders
            .iter()
            .map(|o| o.positive("group order"))
            .collect::<Result<Vec<_>>>()?;
        FinAbGroup::new(orders).map(Some)
    }

    /// `pi_bar` defaults to the identity when `G` has `n` factors and to
    /// `e_i -> 1` for cyclic `G`; the trivial group needs no matrix.
    pub fn cover(&self, n: usize) -> Result<Option<CoverSpec>> {
        let Some(group) = self.group()? else { return Ok(None) };
        let r = group.rank();
        let matrix = match &self.cover.as_ref().unwrap().pi_bar {
            Some(rows) => {
                if rows.len() != r || rows.iter().any(|row| row.len() != n) {
                    return Err(Error::Validation(format!("pi_bar must be {r}x{n}")));
                }
                let vals = rows
                    .iter()
                    .map(|row| row.iter().map(Num::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                IntMatrix::from_rows(vals)
            }
            None if r == 0 => IntMatrix::zeros(0, n),
            None if r == n => IntMatrix::identity(n),
            None if r == 1 => IntMatrix::from_fn(1, n, |_, _| 1),
            None => {
                return Err(Error::Validation(format!(
                    "pi_bar is required: G has {r} factors and phi has {n} variables"
                )))
            }
        };
        let pi_bar = EpiToG::new(&group, matrix)?;
        Ok(Some(CoverSpec::new(group, pi_bar)))
    }

    pub fn rho_conductor(&self) -> Result<u64> {
        match self.rho.as_ref().and_then(|r| r.conductor.as_ref()) {
            Some(c) => c.positive("rho conductor"),
            None => Ok(1),
        }
    }

    pub fn explicit_conductor(&self) -> Result<Option<u64>> {
        self.conductor.as_ref().map(|c| c.positive("conductor")).transpose()
    }

    pub fn phi(&self, p: &Presentation) -> Result<AbelMap> {
        let Some(map) = &self.phi else {
            return Ok(AbelMap::from_abelianization(&abelianization(p)?));
        };
        let mut images = Vec::with_capacity(p.num_generators());
        for g in p.generators() {
            let v = map
                .get(g)
                .ok_or_else(|| Error::Validation(format!("phi has no image for {g:?}")))?;
            images.push(v.iter().map(Num::value).collect::<Result<Vec<_>>>()?);
        }
        if let Some(extra) = map.keys().find(|k| p.generator_index(k).is_none()) {
            return Err(Error::Validation(format!("phi names unknown generator {extra:?}")));
        }
        let n = images.first().map_or(0, Vec::len);
        if images.iter().any(|v| v.len() != n) {
            return Err(Error::Validation("phi images must have equal length".into()));
        }
        let phi = AbelMap::new(n, images)?;
        phi.validate(p)?;
        Ok(phi)
    }

    /// The representation with entries embedded into `field`.
    pub fn rho(&self, p: &Presentation, field: &Arc<CycloField>, check: bool) -> Result<MatRep> {
        let Some(spec) = &self.rho else {
            return Ok(MatRep::trivial(field, p.num_generators()));
        };
        let declared = match &spec.conductor {
            Some(c) => Some(CycloField::new(c.positive("rho conductor")?)?),
            None => None,
        };
        let mut raw: Vec<&Vec<Vec<String>>> = Vec::new();
        match &spec.images {
            Images::Named(map) => {
                for g in p.generators() {
                    raw.push(map.get(g).ok_or_else(|| {
                        Error::Validation(format!("rho has no image for {g:?}"))
                    })?);
                }
                if let Some(extra) = map.keys().find(|k| p.generator_index(k).is_none()) {
                    return Err(Error::Validation(format!(
                        "rho names unknown generator {extra:?}"
                    )));
                }
            }
            Images::Ordered(list) => {
                if list.len() != p.num_generators() {
                    return Err(Error::Validation(format!(
                        "rho gives {} images for {} generators",
                        list.len(),
                        p.num_generators()
                    )));
                }
                raw.extend(list.iter());
            }
        }
        let dim = match &spec.dim {
            Some(d) => d.positive("rho dim")? as usize,
            None => raw.first().map_or(1, |m| m.len()),
        };
        let mut images = Vec::with_capacity(raw.len());
        for (g, rows) in p.generators().iter().zip(&raw) {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::Validation(format!("rho({g}) is not {dim}x{dim}")));
            }
            let mut m = Matrix::zeros(dim, dim);
            for (i, row) in rows.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    if declared.is_none() && s.contains('z') {
                        return Err(Error::Validation(
                            "rho uses z but declares no conductor".into(),
                        ));
                    }
                    m[(i, j)] = parse_cyclo(s, declared.as_ref())?;
                }
            }
            images.push(m);
        }
        let rho = MatRep::new(field, images)?;
        if check {
            rho.validate(p)?;
        }
        Ok(rho)
    }

    pub fn polynomial(&self, field: &Arc<CycloField>) -> Result<Option<LaurentPoly>> {
        self.polynomial
            .as_ref()
            .map(|s| parse_laurent(s, Some(field), 1))
            .transpose()
    }
}
