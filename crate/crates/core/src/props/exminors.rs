//! Excluded minors for GF(q)-representability across a catalogue.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::certificate;
use crate::matroid::Matroid;

use super::represent::representable;

/// Positions in level `n-1` of the single-element deletions and contractions
/// of each record of level `n` (level 0 has none).
pub fn single_minor_indices(levels: &[Vec<Matroid>]) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![vec![Vec::new(); levels.first().map_or(0, Vec::len)]];
    for n in 1..levels.len() {
        let below = &levels[n - 1];
        let idx = levels[n]
            .par_iter()
            .map(|m| {
                let mut ids: Vec<u32> = (0..n)
                    .flat_map(|e| [m.delete(e), m.contract(e)])
                    .map(|x| {
                        let c = certificate(&x).canonical();
                        below.binary_search(&c).expect("catalogue level is complete") as u32
                    })
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();
        out.push(idx);
    }
    out
}

/// Representability over GF(q) of every record. A record with a
/// non-representable single minor is marked without a search.
pub fn representability_flags(levels: &[Vec<Matroid>], minors: &[Vec<Vec<u32>>], q: u8) -> Vec<Vec<bool>> {
    let mut flags: Vec<Vec<bool>> = Vec::with_capacity(levels.len());
    for (n, level) in levels.iter().enumerate() {
        let row = level
            .par_iter()
            .enumerate()
            .map(|(i, m)| {
                let minors_ok = n == 0 || minors[n][i].iter().all(|&j| flags[n - 1][j as usize]);
                minors_ok && representable(m, q).is_some()
            })
            .collect();
        flags.push(row);
    }
    flags
}

/// Outcome of an excluded-minor scan over one field.
#[derive(Clone, Debug)]
pub struct ExcludedMinors {
    pub q: u8,
    pub representable: Vec<Vec<bool>>,
    /// `(n, index)` of each excluded minor.
    pub minors: Vec<(usize, usize)>,
}

impl ExcludedMinors {
    /// Number of excluded minors for each `(n, rank)`.
    pub fn counts(&self, levels: &[Vec<Matroid>]) -> BTreeMap<(usize, usize), usize> {
        let mut c = BTreeMap::new();
        for &(n, i) in &self.minors {
            *c.entry((n, levels[n][i].rank())).or_insert(0) += 1;
        }
        c
    }
}

/// Non-representable records whose single deletions and contractions are
/// all representable over GF(q).
pub fn excluded_minors(levels: &[Vec<Matroid>], minors: &[Vec<Vec<u32>>], q: u8) -> ExcludedMinors {
    let flags = representability_flags(levels, minors, q);
    let mut found = Vec::new();
    for n in 1..levels.len() {
        for (i, &ok) in flags[n].iter().enumerate() {
            if !ok && minors[n][i].iter().all(|&j| flags[n - 1][j as usize]) {
                found.push((n, i));
            }
        }
    }
    ExcludedMinors { q, representable: flags, minors: found }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_and_ternary_up_to_six() {
        let levels = crate::enumerate::enumerate(6, &Default::default()).unwrap();
        let minors = single_minor_indices(&levels);
        let two = excluded_minors(&levels, &minors, 2);
        assert_eq!(two.minors.len(), 1);
        let (n, i) = two.minors[0];
        assert_eq!(levels[n][i], Matroid::uniform(2, 4));
        let three = excluded_minors(&levels, &minors, 3);
        let got: Vec<&Matroid> = three.minors.iter().map(|&(n, i)| &levels[n][i]).collect();
        assert_eq!(got, [&Matroid::uniform(2, 5), &Matroid::uniform(3, 5)]);
    }
}
