//! Paving matroids through Johnson graphs.
//!
//! The circuit-hyperplanes of a sparse paving matroid of rank `d+1` on `n`
//! elements are exactly an independent set of `J(n, d+1)`, the graph on
//! `(d+1)`-subsets with adjacency "meet in `d` points".

mod nonsparse;
mod orderly;

pub use nonsparse::{count_nonsparse_paving, count_nonsparse_paving_with_k, NonSparseCounts};
pub use orderly::{
    count_self_dual_sparse, enumerate_isets_orderly, estimate_iset_count, iset_children, iset_classes, IsetCounts,
    IsetEstimate, IsetOptions, SelfDualCounts,
};

use crate::error::{Error, Result};
use crate::mask::{k_subsets, SubsetMask};
use crate::matroid::Matroid;

/// `J(n, k)`: the `k`-subsets of `0..n`, adjacent when they meet in `k-1` points.
#[derive(Clone, Debug)]
pub struct JohnsonGraph {
    n: usize,
    k: usize,
    vertices: Vec<SubsetMask>,
    adj: Vec<Vec<u32>>,
}

impl JohnsonGraph {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(1 <= k && k < n && n <= 15, "J({n},{k}) is out of range");
        let vertices: Vec<SubsetMask> = k_subsets(n, k).collect();
        let adj = vertices
            .iter()
            .map(|&a| (0..vertices.len() as u32).filter(|&j| (a & vertices[j as usize]).len() + 1 == k).collect())
            .collect();
        JohnsonGraph { n, k, vertices, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[SubsetMask] {
        &self.vertices
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, a: SubsetMask, b: SubsetMask) -> bool {
        (a & b).len() + 1 == self.k
    }

    /// Whether complementing every vertex is an extra automorphism (`n = 2k`).
    pub fn has_complementation(&self) -> bool {
        self.n == 2 * self.k
    }

    /// Order of the acting group: `n!`, doubled when `n = 2k`.
    pub fn group_order(&self) -> u128 {
        let f: u128 = (1..=self.n as u128).product();
        if self.has_complementation() {
            2 * f
        } else {
            f
        }
    }

    /// Whether `set` is an independent set of vertices.
    pub fn is_independent(&self, set: &[SubsetMask]) -> bool {
        set.iter().all(|s| s.len() == self.k)
            && set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }
}

/// Blocks of size at least `d`, every `d`-subset of the ground set lying in
/// exactly one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPartition {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<SubsetMask>,
}

impl DPartition {
    /// Checks the covering condition; blocks are sorted.
    pub fn new(n: usize, d: usize, mut blocks: Vec<SubsetMask>) -> Result<Self> {
        blocks.sort_unstable();
        blocks.dedup();
        if blocks.iter().any(|b| b.len() < d || !b.is_subset_of(SubsetMask::full(n))) {
            return Err(Error::AxiomViolation("block smaller than d".into()));
        }
        for s in k_subsets(n, d) {
            let c = blocks.iter().filter(|b| s.is_subset_of(**b)).count();
            if c != 1 {
                return Err(Error::AxiomViolation(format!("{s} lies in {c} blocks")));
            }
        }
        Ok(DPartition { n, d, blocks })
    }

    /// Completes pairwise-compatible blocks (any two meet in fewer than `d`
    /// points) with every uncovered `d`-subset.
    pub fn complete(n: usize, d: usize, blocks: &[SubsetMask]) -> Result<Self> {
        for (i, a) in blocks.iter().enumerate() {
            if a.len() < d || blocks[i + 1..].iter().any(|b| (*a & *b).len() >= d) {
                return Err(Error::NotIndependent(format!("block {a} clashes")));
            }
        }
        let mut all = blocks.to_vec();
        all.extend(k_subsets(n, d).filter(|s| !blocks.iter().any(|b| s.is_subset_of(*b))));
        Self::new(n, d, all)
    }

    /// Non-trivial: more than one block and no block equal to the ground set.
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() < 2 || self.blocks.contains(&SubsetMask::full(self.n))
    }

    /// The paving matroid of rank `d+1` with these blocks as hyperplanes.
    pub fn to_matroid(&self) -> Result<Matroid> {
        if self.is_trivial() {
            return Err(Error::AxiomViolation("trivial d-partition".into()));
        }
        let m = Matroid::from_hyperplanes(self.n, self.blocks.iter().copied())?;
        debug_assert_eq!(m.rank(), self.d + 1);
        Ok(m)
    }

    /// The hyperplanes of a paving matroid of rank at least 2.
    pub fn of_paving(m: &Matroid) -> Option<Self> {
        let r = m.rank();
        if r < 2 || m.circuits().iter().any(|c| c.len() < r) {
            return None;
        }
        Self::new(m.n(), r - 1, m.hyperplanes().to_vec()).ok()
    }
}

/// The sparse paving matroid of rank `d+1` whose circuit-hyperplanes are `iset`.
pub fn sparse_paving_from_independent_set(n: usize, d: usize, iset: &[SubsetMask]) -> Result<Matroid> {
    if d + 1 >= n {
        return Err(Error::AxiomViolation(format!("rank {} on {n} elements is not sparse paving material", d + 1)));
    }
    let g_ok = iset.iter().all(|s| s.len() == d + 1)
        && iset.iter().enumerate().all(|(i, &a)| iset[i + 1..].iter().all(|&b| a != b && (a & b).len() < d));
    if !g_ok {
        return Err(Error::NotIndependent(format!("{iset:?} is not independent in J({n},{})", d + 1)));
    }
    DPartition::complete(n, d, iset)?.to_matroid()
}

/// Complements of every block (the Johnson-graph automorphism for `n = 2k`).
pub fn complement_all(n: usize, set: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = set.iter().map(|s| s.complement(n)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask::binomial;

    #[test]
    fn johnson_shapes() {
        let g = JohnsonGraph::new(4, 2);
        assert_eq!(g.vertex_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 4));
        let g = JohnsonGraph::new(10, 4);
        assert_eq!(g.vertex_count(), 210);
        assert!((0..210).all(|v| g.degree(v) == 24));
        assert_eq!(JohnsonGraph::new(10, 5).group_order(), 2 * 3628800);
        assert_eq!(JohnsonGraph::new(9, 4).group_order(), 362880);
    }

    #[test]
    fn empty_set_gives_uniform() {
        for (n, d) in [(5, 1), (6, 2), (8, 3)] {
            let m = sparse_paving_from_independent_set(n, d, &[]).unwrap();
            assert_eq!(m, Matroid::uniform(d + 1, n));
        }
    }

    #[test]
    fn round_trip_and_rejects() {
        let s = |x: &str| SubsetMask::parse_digits(x).unwrap();
        let iset = [s("0123"), s("0145"), s("2367")];
        let m = sparse_paving_from_independent_set(8, 3, &iset).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(m.circuit_hyperplanes(), iset.to_vec());
        let bases = binomial(8, 4) as usize - 3;
        assert_eq!(m.bases().len(), bases);
        assert!(matches!(
            sparse_paving_from_independent_set(8, 3, &[s("0123"), s("0124")]),
            Err(Error::NotIndependent(_))
        ));
        let d = DPartition::of_paving(&m).unwrap();
        assert_eq!(d.to_matroid().unwrap(), m);
        assert!(DPartition::new(5, 2, vec![s("012"), s("34")]).is_err());
    }

    #[test]
    fn paving_hyperplanes_are_d_partitions() {
        let levels = crate::enumerate::enumerate(7, &Default::default()).unwrap();
        for m in levels.iter().flatten() {
            let paving = m.rank() >= 2 && m.circuits().iter().all(|c| c.len() >= m.rank());
            match DPartition::of_paving(m) {
                Some(d) => {
                    assert!(paving && !d.is_trivial());
                    assert_eq!(&d.to_matroid().unwrap(), m);
                }
                None => assert!(!paving),
            }
        }
    }
}
