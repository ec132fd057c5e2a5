use crate::error::{Error, Result};
use crate::mask::SubsetMask;

use super::Matroid;

impl Matroid {
    /// The dual matroid; its hyperplanes are the complements of our circuits.
    pub fn dual(&self) -> Matroid {
        let n = self.n;
        let mut hyps: Vec<SubsetMask> = self.circuits().into_iter().map(|c| c.complement(n)).collect();
        hyps.sort_unstable();
        Matroid::from_parts(n, n - self.rank, hyps)
    }

    /// Rank function of the dual, `|A| + r(E \ A) - r(E)`.
    pub fn dual_rank_of(&self, a: SubsetMask) -> usize {
        a.len() + self.rank_of(a.complement(self.n)) - self.rank
    }

    /// Restriction to `keep`, relabelled to `0..|keep|` preserving order.
    pub fn restrict(&self, keep: SubsetMask) -> Matroid {
        let elems: Vec<usize> = keep.iter().collect();
        let k = elems.len();
        let r = self.rank_table();
        let table = (0..1usize << k)
            .map(|x| {
                let orig =
                    elems.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0usize, |acc, (_, &e)| acc | 1 << e);
                r[orig]
            })
            .collect();
        Matroid::from_rank_table(k, table)
    }

    /// Deletes `e`; elements above `e` shift down by one.
    pub fn delete(&self, e: usize) -> Matroid {
        assert!(e < self.n);
        let r = self.rank_table();
        let table = (0..1usize << (self.n - 1)).map(|x| r[SubsetMask(x as u16).expand(e).index()]).collect();
        Matroid::from_rank_table(self.n - 1, table)
    }

    /// Contracts `e`; elements above `e` shift down by one.
    pub fn contract(&self, e: usize) -> Matroid {
        assert!(e < self.n);
        let r = self.rank_table();
        let re = r[1 << e];
        let table =
            (0..1usize << (self.n - 1)).map(|x| r[SubsetMask(x as u16).expand(e).with(e).index()] - re).collect();
        Matroid::from_rank_table(self.n - 1, table)
    }

    /// Turns the circuit-hyperplane `h` into a basis.
    pub fn relax(&self, h: SubsetMask) -> Result<Matroid> {
        if !(self.hyperplanes.binary_search(&h).is_ok() && self.is_circuit(h)) {
            return Err(Error::NotCircuitHyperplane(format!("{h}")));
        }
        let mut table = self.rank_table().to_vec();
        table[h.index()] = self.rank as u8;
        Ok(Matroid::from_rank_table(self.n, table))
    }

    /// Truncation to rank `r(M) - 1`.
    pub fn truncate(&self) -> Result<Matroid> {
        if self.rank == 0 {
            return Err(Error::RankZero);
        }
        let cap = (self.rank - 1) as u8;
        let table = self.rank_table().iter().map(|&x| x.min(cap)).collect();
        Ok(Matroid::from_rank_table(self.n, table))
    }

    pub fn loops(&self) -> SubsetMask {
        self.closure(SubsetMask::EMPTY)
    }

    pub fn coloops(&self) -> SubsetMask {
        let full = self.ground();
        SubsetMask::from_elements((0..self.n).filter(|&e| self.rank_of(full.without(e)) < self.rank))
    }

    /// Parallel classes of the non-loop elements, ordered by smallest member.
    pub fn parallel_classes(&self) -> Vec<SubsetMask> {
        let loops = self.loops();
        let mut seen = loops;
        let mut classes = Vec::new();
        for e in 0..self.n {
            if seen.contains(e) {
                continue;
            }
            let class = self.closure(SubsetMask::singleton(e)) - loops;
            seen |= class;
            classes.push(class);
        }
        classes
    }

    /// Series classes: parallel classes of the dual.
    pub fn series_classes(&self) -> Vec<SubsetMask> {
        self.dual().parallel_classes()
    }

    /// Removes loops and keeps the smallest element of each parallel class.
    pub fn simplify(&self) -> Matroid {
        let keep = self.parallel_classes().iter().fold(SubsetMask::EMPTY, |acc, c| acc.with(c.first().unwrap()));
        self.restrict(keep)
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_classes().iter().all(|c| c.len() == 1)
    }
}
