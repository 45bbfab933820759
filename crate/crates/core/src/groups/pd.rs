//! Wirtinger presentations from planar diagram codes.
//!
//! A crossing `X[a, b, c, d]` lists its four edge labels counterclockwise,
//! starting from the incoming under-edge, so the under strand runs `a -> c`
//! and `b`, `d` belong to the over strand. Edges are numbered consecutively
//! along each oriented component (the last label wraps to the first), which
//! fixes the direction of the over strand. The crossing is positive when the
//! over strand runs `d -> b`. For a component with only two edges the
//! direction is read off numerically: positive iff `b - d == 1` or
//! `d - b > 1`.
//!
//! With `o` the over arc, the crossing contributes the relator
//! `x_c^-1 x_o^e x_a x_o^-e`, `e = +1` for positive crossings and `-1` for
//! negative ones. The relator of the last crossing is dropped.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Wirtinger presentation of the link complement described by a PD code.
///
/// Generators are named `x1, x2, ...`, one per arc, ordered by the smallest
/// edge label on the arc. The empty code is the unknot `<x1 | >`.
pub fn wirtinger_from_pd(pd: &[[i64; 4]]) -> Result<Presentation> {
    if pd.is_empty() {
        return Presentation::new(alloc::vec![String::from("x1")], Vec::new())?
            .with_meridians(alloc::vec![0]);
    }
    let mut count: BTreeMap<i64, usize> = BTreeMap::new();
    for x in pd {
        for &l in x {
            *count.entry(l).or_default() += 1;
        }
    }
    if let Some((l, c)) = count.iter().find(|(_, &c)| c != 2) {
        return Err(Error::validation(format!(
            "inconsistent arc labels: edge {l} appears {c} times, expected 2"
        )));
    }
    let labels: Vec<i64> = count.keys().copied().collect();
    let idx = |l: i64| labels.binary_search(&l).unwrap();
    let ne = labels.len();

    let mut comps = UnionFind::new(ne);
    for x in pd {
        comps.union(idx(x[0]), idx(x[2]));
        comps.union(idx(x[1]), idx(x[3]));
    }
    // label indices of each component, ascending; components by first label
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..ne {
        members.entry(comps.find(i)).or_default().push(i);
    }
    let mut succ = alloc::vec![0usize; ne];
    let mut comp_size = alloc::vec![0usize; ne];
    for m in members.values() {
        for (k, &i) in m.iter().enumerate() {
            succ[i] = m[(k + 1) % m.len()];
            comp_size[i] = m.len();
        }
    }

    let mut positive = Vec::with_capacity(pd.len());
    for (n, x) in pd.iter().enumerate() {
        let [a, b, c, d] = x.map(idx);
        if succ[a] != c {
            return Err(Error::validation(format!(
                "inconsistent arc labels at crossing {}: under strand {} -> {} breaks the edge order",
                n + 1,
                x[0],
                x[2]
            )));
        }
        let forward = succ[b] == d;
        let backward = succ[d] == b;
        let pos = match (forward, backward) {
            (true, true) => x[1] - x[3] == 1 || x[3] - x[1] > 1 || comp_size[b] == 1,
            (false, true) => true,
            (true, false) => false,
            (false, false) => {
                return Err(Error::validation(format!(
                    "inconsistent arc labels at crossing {}: over strand {} / {} are not adjacent",
                    n + 1,
                    x[1],
                    x[3]
                )))
            }
        };
        positive.push(pos);
    }

    // arcs: edges glued where they pass over a crossing
    let mut arcs = UnionFind::new(ne);
    for x in pd {
        arcs.union(idx(x[1]), idx(x[3]));
    }
    let mut arc_of = alloc::vec![usize::MAX; ne];
    let mut num_arcs = 0;
    for i in 0..ne {
        let r = arcs.find(i);
        if arc_of[r] == usize::MAX {
            arc_of[r] = num_arcs;
            num_arcs += 1;
        }
        arc_of[i] = arc_of[r];
    }

    let mut relators = Vec::with_capacity(pd.len());
    for (x, &pos) in pd.iter().zip(&positive) {
        let [a, b, c, _] = x.map(idx);
        let (xa, xo, xc) = (arc_of[a], arc_of[b], arc_of[c]);
        relators.push(Word::from_letters([
            Letter::new(xc, true),
            Letter::new(xo, !pos),
            Letter::new(xa, false),
            Letter::new(xo, pos),
        ]));
    }
    relators.pop();

    let names = (1..=num_arcs).map(|i| format!("x{i}")).collect();
    let meridians = members.values().map(|m| arc_of[m[0]]).collect();
    Presentation::new(names, relators)?.with_meridians(meridians)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let p = wirtinger_from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.meridians(), Some(&[0usize][..]));
        for r in p.relators() {
            assert_eq!(r.len(), 4);
            assert_eq!(r.exponent_vector(3).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn hopf_and_unknot() {
        let p = wirtinger_from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.meridians().unwrap().len(), 2);
        let u = wirtinger_from_pd(&[]).unwrap();
        assert_eq!((u.num_generators(), u.relators().len()), (1, 0));
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(wirtinger_from_pd(&[[1, 2, 3, 4]]).is_err());
        assert!(wirtinger_from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 7]]).is_err());
    }
}
