//! Transversal matroids and a presentation search.
//!
//! A transversal matroid of rank `r` has a presentation by `r` cocircuits,
//! so the search runs over multisets of `r` cocircuits. Partial families
//! are pruned when a circuit becomes matchable or a basis stops saturating
//! them.

use std::collections::BTreeSet;

use crate::canon::certificate;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// Size of a largest matching of elements of `x` into the sets of `fam`.
fn matching_size(x: u16, fam: &[u16]) -> usize {
    fn augment(fam: &[u16], x: u16, i: usize, seen: &mut u16, owner: &mut [u8; 16]) -> bool {
        let mut opts = fam[i] & x & !*seen;
        while opts != 0 {
            let e = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            *seen |= 1 << e;
            if owner[e] == u8::MAX || augment(fam, x, owner[e] as usize, seen, owner) {
                owner[e] = i as u8;
                return true;
            }
        }
        false
    }
    let mut owner = [u8::MAX; 16];
    (0..fam.len()).filter(|&i| augment(fam, x, i, &mut 0, &mut owner)).count()
}

/// The transversal matroid of a set family on `0..n`.
pub fn transversal_matroid(n: usize, family: &[SubsetMask]) -> Matroid {
    let fam: Vec<u16> = family.iter().map(|s| s.0).collect();
    Matroid::from_rank_fn(n, |a| matching_size(a.0, &fam))
}

struct Search<'a> {
    r: usize,
    cocircuits: &'a [u16],
    circuits: &'a [u16],
    bases: &'a [u16],
    chosen: Vec<u16>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn feasible(&self) -> bool {
        let j = self.chosen.len();
        self.circuits
            .iter()
            .take_while(|c| c.count_ones() as usize <= j)
            .all(|&c| matching_size(c, &self.chosen) < c.count_ones() as usize)
            && self.bases.iter().all(|&b| matching_size(b, &self.chosen) == j)
    }

    fn run(&mut self, from: usize) -> Result<bool> {
        if self.chosen.len() == self.r {
            return Ok(true);
        }
        for i in from..self.cocircuits.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: format!("transversal search after {} nodes", self.nodes),
                    checkpoint: None,
                });
            }
            self.chosen.push(self.cocircuits[i]);
            if self.feasible() && self.run(i)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// A presentation of `m` by `r(m)` sets, if `m` is transversal, within
/// `budget` search nodes.
pub fn try_transversal(m: &Matroid, budget: u64) -> Result<Option<Vec<SubsetMask>>> {
    let cocircuits: Vec<u16> = m.cocircuits().iter().map(|c| c.0).collect();
    let mut circuits: Vec<u16> = m.circuits().iter().map(|c| c.0).collect();
    circuits.sort_by_key(|c| c.count_ones());
    let bases: Vec<u16> = m.bases().iter().map(|b| b.0).collect();
    let mut s = Search {
        r: m.rank(),
        cocircuits: &cocircuits,
        circuits: &circuits,
        bases: &bases,
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    if !s.run(0)? {
        return Ok(None);
    }
    let family: Vec<SubsetMask> = s.chosen.iter().map(|&c| SubsetMask(c)).collect();
    debug_assert_eq!(transversal_matroid(m.n(), &family), *m);
    Ok(Some(family))
}

pub fn transversal(m: &Matroid) -> Option<Vec<SubsetMask>> {
    try_transversal(m, u64::MAX).expect("unbounded search")
}

pub fn is_transversal(m: &Matroid) -> bool {
    transversal(m).is_some()
}

/// Canonical forms of every transversal matroid on `n` elements whose rank
/// is at most `max_rank`, from all families of at most `max_rank` non-empty sets.
pub fn brute_force_transversal(n: usize, max_rank: usize) -> BTreeSet<Matroid> {
    let sets: Vec<SubsetMask> = (1u16..1 << n).map(SubsetMask).collect();
    let mut out = BTreeSet::new();
    let mut fam = Vec::new();
    fn rec(
        sets: &[SubsetMask],
        from: usize,
        left: usize,
        n: usize,
        fam: &mut Vec<SubsetMask>,
        out: &mut BTreeSet<Matroid>,
    ) {
        out.insert(certificate(&transversal_matroid(n, fam)).canonical());
        if left == 0 {
            return;
        }
        for i in from..sets.len() {
            fam.push(sets[i]);
            rec(sets, i, left - 1, n, fam, out);
            fam.pop();
        }
    }
    rec(&sets, 0, max_rank.min(n), n, &mut fam, &mut out);
    out
}
