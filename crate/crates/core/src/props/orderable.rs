//! Base-orderability and strong base-orderability.
//!
//! For bases `A` and `B` an exchange bijection must fix `A ∩ B` (sending
//! `a ∈ A ∩ B` elsewhere would make `B \ φ(a) ∪ a` too small), so only
//! bijections `A \ B -> B \ A` are searched.

use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// Whether `X ⊆ A` and `Y ⊆ B` are exchangeable between bases `a` and `b`.
pub fn exchangeable(m: &Matroid, a: SubsetMask, b: SubsetMask, x: SubsetMask, y: SubsetMask) -> bool {
    let r = m.rank();
    let s = (a - x) | y;
    let t = (b - y) | x;
    s.len() == r && t.len() == r && m.rank_of(s) == r && m.rank_of(t) == r
}

fn is_basis(m: &Matroid, s: u16) -> bool {
    m.rank_table()[s as usize] as usize == m.rank() && s.count_ones() as usize == m.rank()
}

/// `adj[i]` is the set of positions `j` in `bs` with `as[i] -> bs[j]` a
/// single-element exchange in both directions.
fn exchange_graph(m: &Matroid, a: u16, b: u16, xs: &[usize], ys: &[usize]) -> Vec<u16> {
    xs.iter()
        .map(|&x| {
            let mut row = 0u16;
            for (j, &y) in ys.iter().enumerate() {
                if is_basis(m, a & !(1 << x) | 1 << y) && is_basis(m, b & !(1 << y) | 1 << x) {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect()
}

fn has_perfect_matching(adj: &[u16]) -> bool {
    fn augment(adj: &[u16], i: usize, seen: &mut u16, owner: &mut [usize]) -> bool {
        let mut opts = adj[i] & !*seen;
        while opts != 0 {
            let j = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            *seen |= 1 << j;
            if owner[j] == usize::MAX || augment(adj, owner[j], seen, owner) {
                owner[j] = i;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; adj.len()];
    (0..adj.len()).all(|i| augment(adj, i, &mut 0, &mut owner))
}

fn base_pairs(m: &Matroid) -> impl Iterator<Item = (u16, u16)> {
    let bases: Vec<u16> = m.bases().iter().map(|b| b.0).collect();
    let mut pairs = Vec::new();
    for (i, &a) in bases.iter().enumerate() {
        for &b in &bases[i + 1..] {
            if (a ^ b).count_ones() > 2 {
                pairs.push((a, b));
            }
        }
    }
    pairs.into_iter()
}

fn elements(x: u16) -> Vec<usize> {
    SubsetMask(x).iter().collect()
}

/// Every pair of bases admits a bijection exchanging single elements.
pub fn base_orderable(m: &Matroid) -> bool {
    base_pairs(m).all(|(a, b)| {
        let xs = elements(a & !b);
        let ys = elements(b & !a);
        has_perfect_matching(&exchange_graph(m, a, b, &xs, &ys))
    })
}

/// Every pair of bases admits a bijection under which every subset is
/// exchangeable with its image.
pub fn strongly_base_orderable(m: &Matroid) -> bool {
    base_pairs(m).all(|(a, b)| {
        let xs = elements(a & !b);
        let ys = elements(b & !a);
        let adj = exchange_graph(m, a, b, &xs, &ys);
        let mut phi = vec![0usize; xs.len()];
        strong_bijection(m, a, b, &xs, &ys, &adj, 0, 0, &mut phi)
    })
}

#[allow(clippy::too_many_arguments)]
fn strong_bijection(
    m: &Matroid,
    a: u16,
    b: u16,
    xs: &[usize],
    ys: &[usize],
    adj: &[u16],
    i: usize,
    used: u16,
    phi: &mut [usize],
) -> bool {
    if i == xs.len() {
        return all_subsets_exchange(m, a, b, xs, ys, phi);
    }
    let mut opts = adj[i] & !used;
    while opts != 0 {
        let j = opts.trailing_zeros() as usize;
        opts &= opts - 1;
        phi[i] = j;
        // subsets of the first i+1 elements that contain element i
        if prefix_ok(m, a, b, xs, ys, phi, i) && strong_bijection(m, a, b, xs, ys, adj, i + 1, used | 1 << j, phi) {
            return true;
        }
    }
    false
}

fn prefix_ok(m: &Matroid, a: u16, b: u16, xs: &[usize], ys: &[usize], phi: &[usize], i: usize) -> bool {
    for sub in 0u32..1 << i {
        let mut x = 1u16 << xs[i];
        let mut y = 1u16 << ys[phi[i]];
        for k in 0..i {
            if sub >> k & 1 == 1 {
                x |= 1 << xs[k];
                y |= 1 << ys[phi[k]];
            }
        }
        if !is_basis(m, a & !x | y) || !is_basis(m, b & !y | x) {
            return false;
        }
    }
    true
}

fn all_subsets_exchange(m: &Matroid, a: u16, b: u16, xs: &[usize], ys: &[usize], phi: &[usize]) -> bool {
    (0u32..1 << xs.len()).all(|sub| {
        let mut x = 0u16;
        let mut y = 0u16;
        for k in 0..xs.len() {
            if sub >> k & 1 == 1 {
                x |= 1 << xs[k];
                y |= 1 << ys[phi[k]];
            }
        }
        is_basis(m, a & !x | y) && is_basis(m, b & !y | x)
    })
}
