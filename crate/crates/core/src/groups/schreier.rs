//! Presentations of the kernel of `pi_bar . phi : pi -> G` for finite
//! abelian `G`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::abelian::{EpiToG, FinAbGroup};
use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A presentation of a finite-index subgroup together with its embedding.
#[derive(Debug, Clone)]
pub struct SubgroupData {
    pub presentation: Presentation,
    /// Image of each subgroup generator as a word in the parent generators.
    pub inclusion: Vec<Word>,
    /// Schreier transversal, indexed like [`FinAbGroup::elements`].
    pub coset_reps: Vec<Word>,
    /// Number of Schreier generators before simplification.
    pub schreier_generators: usize,
}

/// Reidemeister-Schreier rewriting followed by Tietze simplification.
///
/// Cosets are the elements of `G`; the transversal is grown breadth first,
/// trying `x_j` then `x_j^-1` for `j` in generator order. Schreier generators
/// `rep(g) x rep(gx)^-1` that are freely trivial are dropped; the others are
/// named `<gen>_<coset index>`, or keep the parent name when `G` is trivial.
///
/// A deficiency-one parent yields a deficiency-one subgroup presentation;
/// if simplification ever produces an empty relator the deficiency can no
/// longer be certified and an [`Error::Unsupported`] is returned.
pub fn reidemeister_schreier(
    p: &Presentation,
    phi: &[Vec<i64>],
    group: &FinAbGroup,
    pi_bar: &EpiToG,
) -> Result<SubgroupData> {
    let k = p.num_generators();
    if phi.len() != k {
        return Err(Error::validation("phi must give one image per generator"));
    }
    let gimg: Vec<Vec<u64>> = phi.iter().map(|v| pi_bar.apply(group, v)).collect();
    let order = group.order() as usize;
    let elements = group.elements();

    let mut reps: Vec<Option<Word>> = alloc::vec![None; order];
    let id = alloc::vec![0u64; group.rank()];
    reps[group.index_of(&id)] = Some(Word::identity());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let rg = reps[group.index_of(&g)].clone().unwrap();
        for (j, x) in gimg.iter().enumerate() {
            for inverse in [false, true] {
                let h = if inverse { group.sub(&g, x) } else { group.add(&g, x) };
                let hi = group.index_of(&h);
                if reps[hi].is_none() {
                    let mut w = rg.clone();
                    w.push(Letter::new(j, inverse));
                    reps[hi] = Some(w);
                    queue.push_back(h);
                }
            }
        }
    }
    if reps.iter().any(Option::is_none) {
        return Err(Error::validation("pi_bar . phi is not surjective onto G"));
    }
    let reps: Vec<Word> = reps.into_iter().map(Option::unwrap).collect();

    // table[g][j]: Schreier generator for (coset g, generator j), if nontrivial
    let mut table = alloc::vec![alloc::vec![None; k]; order];
    let mut names = Vec::new();
    let mut inclusion = Vec::new();
    for (gi, g) in elements.iter().enumerate() {
        for j in 0..k {
            let h = group.add(g, &gimg[j]);
            let w = reps[gi]
                .mul(&Word::gen(j))
                .mul(&reps[group.index_of(&h)].inverse());
            if w.is_identity() {
                continue;
            }
            table[gi][j] = Some(names.len());
            names.push(if order == 1 {
                p.generators()[j].clone()
            } else {
                format!("{}_{}", p.generators()[j], gi)
            });
            inclusion.push(w);
        }
    }
    let schreier_generators = names.len();

    let mut relators = Vec::with_capacity(order * p.relators().len());
    for (gi, g) in elements.iter().enumerate() {
        for r in p.relators() {
            let mut cur = g.clone();
            let mut out = Word::identity();
            for l in r.letters() {
                if l.inverse {
                    cur = group.sub(&cur, &gimg[l.gen]);
                    if let Some(s) = table[group.index_of(&cur)][l.gen] {
                        out.push(Letter::new(s, true));
                    }
                } else {
                    if let Some(s) = table[group.index_of(&cur)][l.gen] {
                        out.push(Letter::new(s, false));
                    }
                    cur = group.add(&cur, &gimg[l.gen]);
                }
            }
            if group.index_of(&cur) != gi {
                return Err(Error::validation(
                    "a relator does not lie in the kernel of pi_bar . phi",
                ));
            }
            relators.push(out);
        }
    }

    let target = p.deficiency();
    let (names, relators, inclusion) = if order == 1 {
        (names, relators, inclusion)
    } else {
        tietze(names, relators, inclusion)
    };
    if names.is_empty() {
        return Err(Error::Unsupported(String::from(
            "cannot certify deficiency-1 presentation: cover group simplified to the trivial group",
        )));
    }
    let presentation = Presentation::new(names, relators)?;
    if presentation.deficiency() != target && target == 1 {
        return Err(Error::Unsupported(format!(
            "cannot certify deficiency-1 presentation for the cover (got deficiency {})",
            presentation.deficiency()
        )));
    }
    Ok(SubgroupData {
        presentation,
        inclusion,
        coset_reps: reps,
        schreier_generators,
    })
}

/// Eliminates generators occurring exactly once in some relator, shortest
/// relator first, and drops relators that become trivial.
fn tietze(
    mut names: Vec<String>,
    mut rels: Vec<Word>,
    mut inclusion: Vec<Word>,
) -> (Vec<String>, Vec<Word>, Vec<Word>) {
    loop {
        for r in rels.iter_mut() {
            *r = r.cyclically_reduced();
        }
        rels.retain(|r| !r.is_identity());

        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, gen)
        for (ri, r) in rels.iter().enumerate() {
            if best.is_some_and(|(len, _, _)| r.len() >= len) {
                continue;
            }
            let mut seen: Vec<usize> = r.letters().iter().map(|l| l.gen).collect();
            seen.sort_unstable();
            seen.dedup();
            if let Some(&g) = seen.iter().find(|&&g| r.occurrences(g) == 1) {
                best = Some((r.len(), ri, g));
            }
        }
        let Some((_, ri, g)) = best else {
            return (names, rels, inclusion);
        };

        // r = x^e w cyclically, so x = w^-1 (e = 1) or x = w (e = -1)
        let r = rels.remove(ri);
        let pos = r.letters().iter().position(|l| l.gen == g).unwrap();
        let rot = r.rotate(pos);
        let e_inv = rot.letters()[0].inverse;
        let rest = Word::from_letters(rot.letters()[1..].iter().copied());
        let value = if e_inv { rest } else { rest.inverse() };

        let images: Vec<Word> = (0..names.len())
            .map(|i| if i == g { value.clone() } else { Word::gen(i) })
            .collect();
        let shift = |i: usize| if i > g { i - 1 } else { i };
        for w in rels.iter_mut() {
            *w = w.substitute(&images).map_generators(shift);
        }
        names.remove(g);
        inclusion.remove(g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::abelianization;
    use crate::scalars::IntMatrix;
    use alloc::vec;

    fn trefoil() -> Presentation {
        Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap()
    }

    #[test]
    fn trivial_group_echoes_input() {
        let p = trefoil();
        let g = FinAbGroup::trivial();
        let pi = EpiToG::new(&g, IntMatrix::zeros(0, 1)).unwrap();
        let sub = reidemeister_schreier(&p, &[vec![1], vec![1]], &g, &pi).unwrap();
        assert_eq!(sub.presentation, p);
        assert_eq!(sub.inclusion, vec![Word::gen(0), Word::gen(1)]);
    }

    #[test]
    fn trefoil_double_cover() {
        let p = trefoil();
        let g = FinAbGroup::cyclic(2).unwrap();
        let pi = EpiToG::identity(&g).unwrap();
        let sub = reidemeister_schreier(&p, &[vec![1], vec![1]], &g, &pi).unwrap();
        assert_eq!(sub.coset_reps.len(), 2);
        assert_eq!(sub.schreier_generators, 3);
        assert_eq!(sub.presentation.deficiency(), 1);
        for w in &sub.inclusion {
            assert_eq!(w.exponent_vector(2).iter().sum::<i64>() % 2, 0);
        }
    }

    #[test]
    fn hopf_klein_four_cover() {
        let p = Presentation::parse(&["a", "b"], &["a b A B"]).unwrap();
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let pi = EpiToG::identity(&g).unwrap();
        let phi = vec![vec![1, 0], vec![0, 1]];
        let sub = reidemeister_schreier(&p, &phi, &g, &pi).unwrap();
        assert_eq!(sub.coset_reps.len(), 4);
        assert_eq!(sub.presentation.deficiency(), 1);
        assert_eq!(abelianization(&sub.presentation).unwrap().rank, 2);
    }

    #[test]
    fn unknot_cyclic_cover() {
        let p = Presentation::parse(&["a"], &[]).unwrap();
        let g = FinAbGroup::cyclic(3).unwrap();
        let pi = EpiToG::identity(&g).unwrap();
        let sub = reidemeister_schreier(&p, &[vec![1]], &g, &pi).unwrap();
        assert_eq!(sub.presentation.num_generators(), 1);
        assert_eq!(sub.inclusion, vec![Word::gen(0).pow(3)]);
    }
}
