//! Matroids stored by their hyperplanes, with the rank function and its
//! derived families computed on demand.

mod invariants;
mod ops;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};

pub use invariants::{Connectivity, RankPolynomial, RankViolation};

/// A matroid on `{0, .., n-1}` determined by its hyperplanes.
///
/// Hyperplanes are kept strictly increasing as unsigned masks. The rank table
/// (one byte per subset) is built lazily and cached.
pub struct Matroid {
    n: usize,
    rank: usize,
    hyperplanes: Vec<SubsetMask>,
    ranks: OnceLock<Box<[u8]>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid { n: self.n, rank: self.rank, hyperplanes: self.hyperplanes.clone(), ranks: OnceLock::new() }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank == other.rank && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rank.hash(state);
        self.hyperplanes.hash(state);
    }
}

impl PartialOrd for Matroid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matroid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.rank, &self.hyperplanes).cmp(&(other.n, other.rank, &other.hyperplanes))
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, r={}, H=[", self.n, self.rank)?;
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", h.to_digits())?;
        }
        write!(f, "])")
    }
}

/// Flats grouped by rank, each level sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatsByRank {
    pub levels: Vec<Vec<SubsetMask>>,
}

impl FlatsByRank {
    pub fn count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, SubsetMask)> + '_ {
        self.levels.iter().enumerate().flat_map(|(r, l)| l.iter().map(move |&f| (r, f)))
    }
}

/// For each subset `X`, the intersection of all hyperplanes containing `X`
/// (the full set when there are none).
pub(crate) fn closure_table(n: usize, hyperplanes: &[SubsetMask]) -> Vec<u16> {
    let full = SubsetMask::full(n).0;
    let size = 1usize << n;
    let mut cl = vec![full; size];
    for h in hyperplanes {
        cl[h.index()] = h.0;
    }
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..size {
            if x & bit == 0 {
                cl[x] &= cl[x | bit];
            }
        }
    }
    cl
}

fn ranks_from_closure(n: usize, cl: &[u16]) -> Box<[u8]> {
    let size = 1usize << n;
    let mut r = vec![0u8; size];
    for a in 1..size {
        let low = a & a.wrapping_neg();
        let rest = a ^ low;
        r[a] = r[rest] + u8::from(cl[rest] as usize & low == 0);
    }
    r.into_boxed_slice()
}

/// Rank table of the matroid whose bases are `bases`.
pub(crate) fn ranks_from_bases(n: usize, bases: &[SubsetMask]) -> Vec<u8> {
    let size = 1usize << n;
    let mut indep = vec![false; size];
    for b in bases {
        indep[b.index()] = true;
    }
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..size {
            if x & bit == 0 && indep[x | bit] {
                indep[x] = true;
            }
        }
    }
    let mut r = vec![0u8; size];
    for a in 1..size {
        if indep[a] {
            r[a] = (a as u32).count_ones() as u8;
        } else {
            let mut best = 0;
            let mut bits = a;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                best = best.max(r[a ^ low]);
                bits ^= low;
            }
            r[a] = best;
        }
    }
    r
}

impl Matroid {
    /// Builds and validates a matroid from a hyperplane family.
    ///
    /// The family must be an antichain of proper subsets whose complements
    /// satisfy circuit elimination. The rank is inferred; an empty family
    /// gives the rank-0 matroid.
    pub fn from_hyperplanes<I>(n: usize, hyps: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        if n > MAX_ELEMENTS {
            return Err(Error::AxiomViolation(format!("ground set of size {n} exceeds {MAX_ELEMENTS}")));
        }
        let full = SubsetMask::full(n);
        let mut hyps: Vec<SubsetMask> = hyps.into_iter().collect();
        hyps.sort_unstable();
        for w in hyps.windows(2) {
            if w[0] == w[1] {
                return Err(Error::AxiomViolation(format!("duplicate hyperplane {}", w[0])));
            }
        }
        for &h in &hyps {
            if !h.is_subset_of(full) {
                return Err(Error::AxiomViolation(format!("{h} uses elements outside the ground set")));
            }
            if h == full {
                return Err(Error::AxiomViolation("the ground set is not a hyperplane".into()));
            }
        }
        for (i, &a) in hyps.iter().enumerate() {
            for &b in &hyps[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    return Err(Error::AxiomViolation(format!("{a} and {b} are nested")));
                }
            }
        }
        let cl = closure_table(n, &hyps);
        for (i, &a) in hyps.iter().enumerate() {
            for &b in &hyps[i + 1..] {
                let meet = a & b;
                for e in (full - (a | b)).iter() {
                    if cl[meet.with(e).index()] == full.0 {
                        return Err(Error::AxiomViolation(format!("no hyperplane contains ({a} ∩ {b}) ∪ {{{e}}}")));
                    }
                }
            }
        }
        let ranks = ranks_from_closure(n, &cl);
        let rank = ranks[full.index()] as usize;
        debug_assert!(hyps.iter().all(|h| ranks[h.index()] as usize + 1 == rank));
        let m = Matroid { n, rank, hyperplanes: hyps, ranks: OnceLock::new() };
        let _ = m.ranks.set(ranks);
        Ok(m)
    }

    /// Trusted constructor for families already known to be valid and sorted.
    pub(crate) fn from_parts(n: usize, rank: usize, hyperplanes: Vec<SubsetMask>) -> Matroid {
        debug_assert!(hyperplanes.windows(2).all(|w| w[0] < w[1]));
        Matroid { n, rank, hyperplanes, ranks: OnceLock::new() }
    }

    /// Builds the matroid with the given rank table (indexed by subset mask).
    /// The table is assumed to satisfy the rank axioms.
    pub fn from_rank_table(n: usize, ranks: Vec<u8>) -> Matroid {
        assert_eq!(ranks.len(), 1 << n, "rank table has the wrong length");
        let full = SubsetMask::full(n);
        let rank = ranks[full.index()] as usize;
        let mut hyps = Vec::new();
        if rank > 0 {
            for x in 0..1usize << n {
                if ranks[x] as usize + 1 != rank {
                    continue;
                }
                let is_flat = (full - SubsetMask(x as u16)).iter().all(|e| ranks[x | 1 << e] > ranks[x]);
                if is_flat {
                    hyps.push(SubsetMask(x as u16));
                }
            }
        }
        let m = Matroid::from_parts(n, rank, hyps);
        let _ = m.ranks.set(ranks.into_boxed_slice());
        m
    }

    pub fn from_rank_fn(n: usize, f: impl Fn(SubsetMask) -> usize) -> Matroid {
        let table = (0..1usize << n).map(|x| f(SubsetMask(x as u16)) as u8).collect();
        Matroid::from_rank_table(n, table)
    }

    /// Builds the matroid with the given family of bases (assumed valid).
    pub fn from_bases(n: usize, bases: &[SubsetMask]) -> Matroid {
        Matroid::from_rank_table(n, ranks_from_bases(n, bases))
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Matroid {
        assert!(r <= n && n <= MAX_ELEMENTS);
        Matroid::from_rank_fn(n, |a| a.len().min(r))
    }

    /// The free matroid (every element a coloop).
    pub fn free(n: usize) -> Matroid {
        Matroid::uniform(n, n)
    }

    /// The rank-0 matroid (every element a loop).
    pub fn loops_only(n: usize) -> Matroid {
        Matroid::from_parts(n, 0, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn hyperplanes(&self) -> &[SubsetMask] {
        &self.hyperplanes
    }

    #[inline]
    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Rank of every subset, indexed by mask.
    pub fn rank_table(&self) -> &[u8] {
        self.ranks.get_or_init(|| {
            let cl = closure_table(self.n, &self.hyperplanes);
            ranks_from_closure(self.n, &cl)
        })
    }

    #[inline]
    pub fn rank_of(&self, a: SubsetMask) -> usize {
        self.rank_table()[a.index()] as usize
    }

    /// Smallest flat containing `a`.
    pub fn closure(&self, a: SubsetMask) -> SubsetMask {
        self.hyperplanes.iter().filter(|h| a.is_subset_of(**h)).fold(self.ground(), |acc, &h| acc & h)
    }

    pub fn is_flat(&self, a: SubsetMask) -> bool {
        self.closure(a) == a
    }

    pub fn is_independent(&self, a: SubsetMask) -> bool {
        self.rank_of(a) == a.len()
    }

    /// All flats, graded by rank.
    pub fn flats(&self) -> FlatsByRank {
        let cl = closure_table(self.n, &self.hyperplanes);
        let ranks = self.rank_table();
        let mut levels = vec![Vec::new(); self.rank + 1];
        for (x, &c) in cl.iter().enumerate() {
            if c as usize == x {
                levels[ranks[x] as usize].push(SubsetMask(x as u16));
            }
        }
        FlatsByRank { levels }
    }

    /// Minimal dependent sets, in increasing mask order.
    pub fn circuits(&self) -> Vec<SubsetMask> {
        let r = self.rank_table();
        (0..1usize << self.n)
            .filter(|&a| {
                let size = (a as u32).count_ones() as u8;
                size > 0 && r[a] + 1 == size && SubsetMask(a as u16).iter().all(|e| r[a & !(1 << e)] + 1 == size)
            })
            .map(|a| SubsetMask(a as u16))
            .collect()
    }

    /// Complements of the hyperplanes.
    pub fn cocircuits(&self) -> Vec<SubsetMask> {
        let mut c: Vec<SubsetMask> = self.hyperplanes.iter().map(|h| h.complement(self.n)).collect();
        c.sort_unstable();
        c
    }

    pub fn bases(&self) -> Vec<SubsetMask> {
        let r = self.rank_table();
        (0..1usize << self.n)
            .filter(|&a| (a as u32).count_ones() as usize == self.rank && r[a] as usize == self.rank)
            .map(|a| SubsetMask(a as u16))
            .collect()
    }

    pub fn independent_sets(&self) -> Vec<SubsetMask> {
        let r = self.rank_table();
        (0..1usize << self.n)
            .filter(|&a| (a as u32).count_ones() == r[a] as u32)
            .map(|a| SubsetMask(a as u16))
            .collect()
    }

    pub fn count_independent_sets(&self) -> usize {
        let r = self.rank_table();
        (0..1usize << self.n).filter(|&a| (a as u32).count_ones() == r[a] as u32).count()
    }

    /// Sets that are simultaneously circuits and hyperplanes.
    pub fn circuit_hyperplanes(&self) -> Vec<SubsetMask> {
        self.hyperplanes.iter().copied().filter(|&h| h.len() == self.rank && self.is_circuit(h)).collect()
    }

    pub fn is_circuit(&self, a: SubsetMask) -> bool {
        let r = self.rank_table();
        let size = a.len() as u8;
        size > 0 && r[a.index()] + 1 == size && a.iter().all(|e| r[a.without(e).index()] + 1 == size)
    }

    /// Relabels elements so that `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[u8]) -> Matroid {
        assert_eq!(perm.len(), self.n);
        let mut hyps: Vec<SubsetMask> = self.hyperplanes.iter().map(|h| h.permute(perm)).collect();
        hyps.sort_unstable();
        Matroid::from_parts(self.n, self.rank, hyps)
    }
}
