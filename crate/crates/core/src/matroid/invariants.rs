use std::fmt;

use crate::mask::SubsetMask;

use super::Matroid;

/// Tutte connectivity; `Infinite` when no separation of any order exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connectivity {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Infinite => write!(f, "inf"),
        }
    }
}

/// Whitney rank generating function `sum x^(r(E)-r(A)) y^(|A|-r(A))`.
///
/// `coeffs[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPolynomial {
    pub coeffs: Vec<Vec<u64>>,
}

impl RankPolynomial {
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let mut total = 0i64;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                total += c as i64 * x.pow(i as u32) * y.pow(j as u32);
            }
        }
        total
    }

    /// Swaps the roles of `x` and `y`.
    pub fn transpose(&self) -> RankPolynomial {
        let rows = self.coeffs.len();
        let cols = self.coeffs.first().map_or(0, Vec::len);
        let coeffs = (0..cols).map(|j| (0..rows).map(|i| self.coeffs[i][j]).collect()).collect();
        RankPolynomial { coeffs }
    }
}

/// First failure found by [`Matroid::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankViolation {
    /// `0 <= r(A) <= |A|` fails.
    Bounds(SubsetMask),
    /// `A ⊆ B` but `r(A) > r(B)`.
    Monotone(SubsetMask, SubsetMask),
    /// `r(A∩B) + r(A∪B) > r(A) + r(B)`.
    Submodular(SubsetMask, SubsetMask),
    /// The stored hyperplanes differ from the flats of rank `r-1`.
    Hyperplanes,
}

impl Matroid {
    pub fn connectivity(&self) -> Connectivity {
        let r = self.rank_table();
        let full = self.ground().index();
        let total = self.rank as i64;
        let mut best: Option<usize> = None;
        for x in 1..full {
            let size = (x as u32).count_ones() as usize;
            let rest = self.n - size;
            let lambda = (r[x] as i64 + r[full ^ x] as i64 - total) as usize;
            let k = lambda + 1;
            if k <= size.min(rest) {
                best = Some(best.map_or(k, |b| b.min(k)));
            }
        }
        best.map_or(Connectivity::Infinite, Connectivity::Finite)
    }

    pub fn rank_polynomial(&self) -> RankPolynomial {
        let r = self.rank_table();
        let mut coeffs = vec![vec![0u64; self.n - self.rank + 1]; self.rank + 1];
        for (a, &ra) in r.iter().enumerate() {
            let size = (a as u32).count_ones() as usize;
            coeffs[self.rank - ra as usize][size - ra as usize] += 1;
        }
        RankPolynomial { coeffs }
    }

    /// Checks the rank axioms on the derived rank function.
    ///
    /// Submodularity is tested on every pair of subsets for `n <= 9` and in
    /// its equivalent local form above that.
    pub fn validate(&self) -> Result<(), RankViolation> {
        let r = self.rank_table();
        let size = 1usize << self.n;
        for a in 0..size {
            if r[a] as u32 > (a as u32).count_ones() {
                return Err(RankViolation::Bounds(SubsetMask(a as u16)));
            }
            for e in 0..self.n {
                let b = a | 1 << e;
                if r[a] > r[b] {
                    return Err(RankViolation::Monotone(SubsetMask(a as u16), SubsetMask(b as u16)));
                }
            }
        }
        if self.n <= 9 {
            for a in 0..size {
                for b in a + 1..size {
                    if r[a & b] as u32 + r[a | b] as u32 > r[a] as u32 + r[b] as u32 {
                        return Err(RankViolation::Submodular(SubsetMask(a as u16), SubsetMask(b as u16)));
                    }
                }
            }
        } else {
            for a in 0..size {
                for e in 0..self.n {
                    for f in e + 1..self.n {
                        if a >> e & 1 == 1 || a >> f & 1 == 1 {
                            continue;
                        }
                        let (ae, af, aef) = (a | 1 << e, a | 1 << f, a | 1 << e | 1 << f);
                        if r[a] as u32 + r[aef] as u32 > r[ae] as u32 + r[af] as u32 {
                            return Err(RankViolation::Submodular(SubsetMask(ae as u16), SubsetMask(af as u16)));
                        }
                    }
                }
            }
        }
        let rebuilt = Matroid::from_rank_table(self.n, r.to_vec());
        if rebuilt.hyperplanes != self.hyperplanes || rebuilt.rank != self.rank {
            return Err(RankViolation::Hyperplanes);
        }
        Ok(())
    }
}
