//! Ingleton's inequality
//! `r(A)+r(B)+r(A∪B∪C)+r(A∪B∪D)+r(C∪D) <= r(A∪B)+r(A∪C)+r(A∪D)+r(B∪C)+r(B∪D)`,
//! which holds in every representable matroid.

use std::collections::HashSet;

use crate::canon::certificate;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// Four sets violating the inequality, with both sides evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngletonWitness {
    pub a: SubsetMask,
    pub b: SubsetMask,
    pub c: SubsetMask,
    pub d: SubsetMask,
    pub lhs: usize,
    pub rhs: usize,
}

/// Left and right sides of the inequality for `(a, b, c, d)`.
pub fn ingleton_sides(m: &Matroid, a: SubsetMask, b: SubsetMask, c: SubsetMask, d: SubsetMask) -> (usize, usize) {
    let r = |x: SubsetMask| m.rank_of(x);
    let lhs = r(a) + r(b) + r(a | b | c) + r(a | b | d) + r(c | d);
    let rhs = r(a | b) + r(a | c) + r(a | d) + r(b | c) + r(b | d);
    (lhs, rhs)
}

pub fn ingleton_holds_for(m: &Matroid, a: SubsetMask, b: SubsetMask, c: SubsetMask, d: SubsetMask) -> bool {
    let (l, r) = ingleton_sides(m, a, b, c, d);
    l <= r
}

pub fn ingleton_violation(m: &Matroid) -> Option<IngletonWitness> {
    try_ingleton_violation(m, u64::MAX).expect("unbounded search")
}

/// Searches all quadruples of flats for a violation, giving up after
/// `budget` inner steps.
///
/// Every term is unchanged when a set is replaced by its closure, so flats
/// suffice. In the form `I(A;B) <= I(A;B|C) + I(A;B|D) + I(C;D)` (with
/// `I(X;Y|Z) = r(XZ) + r(YZ) - r(XYZ) - r(Z)`) all terms are non-negative,
/// so only `C` and `D` with `I(A;B|C) < I(A;B)` can take part, and
/// comparable `A`, `B` never violate.
pub fn try_ingleton_violation(m: &Matroid, budget: u64) -> Result<Option<IngletonWitness>> {
    let rt = m.rank_table();
    let r = |x: u16| rt[x as usize] as i32;
    let flats: Vec<u16> = m.flats().iter().map(|(_, f)| f.0).collect();
    let mut steps = 0u64;
    let mut cand: Vec<(u16, i32)> = Vec::new();
    for (i, &a) in flats.iter().enumerate() {
        for &b in &flats[i + 1..] {
            if a & b == a || a & b == b {
                continue;
            }
            let ab = a | b;
            let t = r(a) + r(b) - r(ab);
            if t <= 0 {
                continue;
            }
            cand.clear();
            for &c in &flats {
                let f = r(a | c) + r(b | c) - r(ab | c) - r(c);
                if f < t {
                    cand.push((c, f));
                }
            }
            steps += flats.len() as u64 + (cand.len() * (cand.len() + 1) / 2) as u64;
            if steps > budget {
                return Err(Error::BudgetExceeded {
                    what: format!("Ingleton search after {steps} steps"),
                    checkpoint: None,
                });
            }
            for (x, &(c, fc)) in cand.iter().enumerate() {
                for &(d, fd) in &cand[x..] {
                    if fc + fd + r(c) + r(d) - r(c | d) < t {
                        let (a, b, c, d) = (SubsetMask(a), SubsetMask(b), SubsetMask(c), SubsetMask(d));
                        let (lhs, rhs) = ingleton_sides(m, a, b, c, d);
                        debug_assert!(lhs > rhs);
                        return Ok(Some(IngletonWitness { a, b, c, d, lhs, rhs }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Whether some sequence of single-element deletions and contractions
/// reaches a member of `violators`, a sorted list of canonical forms all on
/// the same number of elements.
///
/// Violations lift from minors to the whole matroid, so this is a sound
/// positive test; it is complete exactly when every minimal violator of the
/// relevant size is listed.
pub fn ingleton_violation_by_minors(m: &Matroid, violators: &[Matroid]) -> bool {
    let Some(size) = violators.first().map(Matroid::n) else {
        return false;
    };
    if m.n() < size {
        return false;
    }
    let mut frontier = vec![certificate(m).canonical()];
    let mut seen: HashSet<Matroid> = HashSet::new();
    while let Some(x) = frontier.pop() {
        if x.n() == size {
            if violators.binary_search(&x).is_ok() {
                return true;
            }
            continue;
        }
        for e in 0..x.n() {
            for y in [x.delete(e), x.contract(e)] {
                let y = certificate(&y).canonical();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every quadruple of subsets, no shortcuts.
    fn brute(m: &Matroid) -> bool {
        let size = 1u16 << m.n();
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    for d in 0..size {
                        let s = |x| SubsetMask(x);
                        if !ingleton_holds_for(m, s(a), s(b), s(c), s(d)) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn small_matroids_satisfy_ingleton() {
        let levels = crate::enumerate::enumerate(4, &Default::default()).unwrap();
        for m in levels.iter().flatten() {
            assert!(!brute(m));
            assert!(ingleton_violation(m).is_none());
        }
    }

    #[test]
    fn vamos_violates() {
        // pairs {0,1} {2,3} {4,5} {6,7}; every union of two pairs except {4,5,6,7} is a circuit-hyperplane
        let pairs = [0b11u16, 0b1100, 0b11_0000, 0b1100_0000];
        let mut ch = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                if (i, j) != (2, 3) {
                    ch.push(SubsetMask(pairs[i] | pairs[j]));
                }
            }
        }
        let m = crate::johnson::sparse_paving_from_independent_set(8, 3, &ch).unwrap();
        let w = ingleton_violation(&m).expect("Vamos matroid violates");
        assert!(w.lhs > w.rhs);
        assert_eq!(ingleton_sides(&m, w.a, w.b, w.c, w.d), (w.lhs, w.rhs));
        assert!(matches!(try_ingleton_violation(&m, 10), Err(Error::BudgetExceeded { .. })));
        assert!(ingleton_violation_by_minors(&m, &[certificate(&m).canonical()]));
    }
}
