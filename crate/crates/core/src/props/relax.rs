//! Relaxation of circuit-hyperplanes as a relation between isomorphism classes.

use rayon::prelude::*;

use crate::canon::certificate;
use crate::matroid::Matroid;

/// Canonical forms of the single relaxations of `m`, without repeats.
pub fn relaxations(m: &Matroid) -> Vec<Matroid> {
    let mut out: Vec<Matroid> = m
        .circuit_hyperplanes()
        .into_iter()
        .map(|h| certificate(&m.relax(h).expect("circuit-hyperplane")).canonical())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Edges `(i, j)` such that `members[j]` is a single relaxation of
/// `members[i]`. `members` must be canonical forms, sorted.
pub fn relaxation_edges(members: &[Matroid]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = members
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, m)| {
            relaxations(m)
                .into_iter()
                .filter_map(|r| members.binary_search(&r).ok())
                .map(move |j| (i, j))
                .collect::<Vec<_>>()
        })
        .collect();
    edges.sort_unstable();
    edges
}
