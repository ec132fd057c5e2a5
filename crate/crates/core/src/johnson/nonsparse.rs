//! Paving matroids that are not sparse, split by the size `k` of their
//! largest hyperplane.
//!
//! A fixed `k`-set `K` is taken as one hyperplane. The other large
//! hyperplanes form an independent set in the graph on sets of sizes
//! `d+1..=k` meeting `K` in fewer than `d` points (adjacent when meeting in
//! at least `d`). Independent sets are enumerated up to the stabilizer of
//! `K`; a matroid with `c` orbits of `k`-hyperplanes arises from `c` such
//! classes, so each one contributes `1/c`.

use std::collections::BTreeMap;

use crate::canon::{certificate, set_system_form};
use crate::mask::SubsetMask;

use super::DPartition;

/// Weighted counts keyed by `(k, number of k-element hyperplanes)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonSparseCounts {
    pub n: usize,
    pub rank: usize,
    pub counts: BTreeMap<(usize, usize), u64>,
}

impl NonSparseCounts {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

fn orbit(gens: &[Vec<u8>], b: SubsetMask) -> Vec<SubsetMask> {
    let mut o = vec![b];
    let mut i = 0;
    while i < o.len() {
        for g in gens {
            let y = o[i].permute(g);
            if !o.contains(&y) {
                o.push(y);
            }
        }
        i += 1;
    }
    o
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Counts for one value of `k`, `rank + 1 <= k <= n - 1`.
pub fn count_nonsparse_paving_with_k(n: usize, rank: usize, k: usize) -> NonSparseCounts {
    assert!(rank >= 2 && rank < k && k < n, "need 2 <= rank < k < n");
    let d = rank - 1;
    // (k-hyperplane count) -> (orbit count c) -> classes seen
    let mut tally: BTreeMap<usize, BTreeMap<u64, u64>> = BTreeMap::new();
    let root_k = SubsetMask::full(k);
    let mut stack: Vec<(SubsetMask, Vec<SubsetMask>)> = vec![(root_k, Vec::new())];
    while let Some((kk, blocks)) = stack.pop() {
        let mut all = blocks.clone();
        all.push(kk);
        let m = DPartition::complete(n, d, &all)
            .and_then(|p| p.to_matroid())
            .expect("compatible blocks give a paving matroid");
        let big: Vec<SubsetMask> = m.hyperplanes().iter().copied().filter(|h| h.len() == k).collect();
        let cert = certificate(&m);
        let mut orbits = 0u64;
        let mut covered: Vec<SubsetMask> = Vec::new();
        for &h in &big {
            if !covered.contains(&h) {
                orbits += 1;
                covered.extend(orbit(&cert.generators, h));
            }
        }
        *tally.entry(big.len()).or_default().entry(orbits).or_insert(0) += 1;

        let pf = set_system_form(n, &[&[kk], &blocks]);
        let mut seen: Vec<SubsetMask> = Vec::new();
        let mut kids = Vec::new();
        for x in (1u16..1 << n).map(SubsetMask) {
            let size = x.len();
            if size <= d
                || size > k
                || (x & kk).len() >= d
                || blocks.iter().any(|&b| (b & x).len() >= d)
                || seen.contains(&x)
            {
                continue;
            }
            seen.extend(orbit(&pf.generators, x));
            let mut t = blocks.clone();
            t.push(x);
            let tf = set_system_form(n, &[&[kk], &t]);
            let last = *tf.classes[1].last().unwrap();
            let b = *t.iter().find(|b| b.permute(&tf.labelling) == last).unwrap();
            if orbit(&tf.generators, b).contains(&x) {
                kids.push((tf.classes[0][0], tf.classes[1].clone()));
            }
        }
        kids.sort_unstable();
        kids.dedup();
        stack.extend(kids);
    }
    let mut counts = BTreeMap::new();
    for (h, by_c) in tally {
        let l = by_c.keys().fold(1u64, |acc, &c| acc / gcd(acc, c) * c);
        let num: u64 = by_c.iter().map(|(&c, &cnt)| cnt * (l / c)).sum();
        assert_eq!(num % l, 0, "weighted count is not an integer");
        counts.insert((k, h), num / l);
    }
    NonSparseCounts { n, rank, counts }
}

/// Non-sparse paving matroids of the given rank on `n` elements.
pub fn count_nonsparse_paving(n: usize, rank: usize) -> NonSparseCounts {
    let mut out = NonSparseCounts { n, rank, counts: BTreeMap::new() };
    for k in rank + 1..n {
        out.counts.extend(count_nonsparse_paving_with_k(n, rank, k).counts);
    }
    out
}
