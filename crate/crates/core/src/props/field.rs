//! Arithmetic in GF(q) for q in {2, 3, 4, 5} through lookup tables.
//!
//! Elements are `0..q`. For prime q they are residues; for GF(4) the element
//! `a1 a0` in binary stands for `a1 x + a0` modulo `x^2 + x + 1`.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    q: u8,
    add: [[u8; 5]; 5],
    mul: [[u8; 5]; 5],
    neg: [u8; 5],
    inv: [u8; 5],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl Field {
    /// The field of order `q`, or `None` outside the supported orders.
    pub fn new(q: u8) -> Option<Field> {
        let mut add = [[0u8; 5]; 5];
        let mut mul = [[0u8; 5]; 5];
        match q {
            2 | 3 | 5 => {
                for a in 0..q {
                    for b in 0..q {
                        add[a as usize][b as usize] = (a + b) % q;
                        mul[a as usize][b as usize] = (a * b) % q;
                    }
                }
            }
            4 => {
                for a in 0..4u8 {
                    for b in 0..4u8 {
                        add[a as usize][b as usize] = a ^ b;
                        // carry-less product, then reduce x^2 -> x + 1
                        let mut p = 0u8;
                        for i in 0..2 {
                            if b >> i & 1 == 1 {
                                p ^= a << i;
                            }
                        }
                        if p & 4 != 0 {
                            p ^= 0b111;
                        }
                        mul[a as usize][b as usize] = p;
                    }
                }
            }
            _ => return None,
        }
        let mut neg = [0u8; 5];
        let mut inv = [0u8; 5];
        for a in 0..q as usize {
            neg[a] = (0..q).find(|&b| add[a][b as usize] == 0).unwrap();
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a][b as usize] == 1).unwrap();
            }
        }
        Some(Field { q, add, mul, neg, inv })
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Rank of the given columns (each a vector of `rows` entries).
    pub fn rank_of_columns(&self, rows: usize, cols: &[&[u8]]) -> usize {
        let mut work: Vec<[u8; 16]> = cols
            .iter()
            .map(|c| {
                let mut v = [0u8; 16];
                v[..rows].copy_from_slice(&c[..rows]);
                v
            })
            .collect();
        let mut rank = 0;
        for row in 0..rows {
            let Some(p) = (rank..work.len()).find(|&j| work[j][row] != 0) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank];
            let pinv = self.inv(pivot[row]);
            for col in &mut work[rank + 1..] {
                let f = col[row];
                if f == 0 {
                    continue;
                }
                let s = self.mul(f, pinv);
                for i in row..rows {
                    col[i] = self.sub(col[i], self.mul(s, pivot[i]));
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u8, 3, 4, 5] {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(Field::new(7).is_none());
        let f4 = Field::new(4).unwrap();
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.add(1, 1), 0);
    }

    #[test]
    fn column_rank() {
        let f = Field::new(3).unwrap();
        let a = [1u8, 1, 0];
        let b = [1u8, 2, 0];
        let c = [2u8, 0, 0];
        assert_eq!(f.rank_of_columns(3, &[&a, &b]), 2);
        assert_eq!(f.rank_of_columns(3, &[&a, &b, &c]), 2);
        let f2 = Field::new(2).unwrap();
        let a = [1u8, 1];
        assert_eq!(f2.rank_of_columns(2, &[&a, &a]), 1);
    }
}
