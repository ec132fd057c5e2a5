//! Representability over small finite fields by backtracking on a reduced
//! standard form `[I | A]`.

use std::fmt;

use crate::mask::SubsetMask;
use crate::matroid::Matroid;

use super::field::Field;

/// A `rows x n` matrix over GF(q); column `i` represents element `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct RepresentationMatrix {
    q: u8,
    rows: usize,
    columns: Vec<Vec<u8>>,
}

impl RepresentationMatrix {
    /// Builds a matrix from its columns. Entries must lie in `0..q`.
    pub fn from_columns(q: u8, rows: usize, columns: Vec<Vec<u8>>) -> Self {
        assert!(Field::new(q).is_some(), "unsupported field order {q}");
        assert!(columns.iter().all(|c| c.len() == rows && c.iter().all(|&x| x < q)));
        RepresentationMatrix { q, rows, columns }
    }

    /// Builds a matrix from rows of signed integers, reduced modulo a prime `q`.
    pub fn from_int_rows(q: u8, rows: &[&[i32]]) -> Self {
        assert!(matches!(q, 2 | 3 | 5), "integer entries need a prime field");
        let n = rows.first().map_or(0, |r| r.len());
        let columns = (0..n).map(|c| rows.iter().map(|r| r[c].rem_euclid(q as i32) as u8).collect()).collect();
        Self::from_columns(q, rows.len(), columns)
    }

    pub fn field_order(&self) -> u8 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.columns[col][row]
    }

    pub fn column(&self, col: usize) -> &[u8] {
        &self.columns[col]
    }

    /// Dimension of the span of the columns in `a`.
    pub fn rank_of(&self, a: SubsetMask) -> usize {
        let f = Field::new(self.q).unwrap();
        let cols: Vec<&[u8]> = a.iter().map(|e| self.columns[e].as_slice()).collect();
        f.rank_of_columns(self.rows, &cols)
    }

    /// The column matroid.
    pub fn to_matroid(&self) -> Matroid {
        Matroid::from_rank_fn(self.cols(), |a| self.rank_of(a))
    }

    /// Whether every subset's column rank equals its rank in `m`.
    pub fn represents(&self, m: &Matroid) -> bool {
        if m.n() != self.cols() {
            return false;
        }
        let r = m.rank_table();
        (0..1usize << m.n()).all(|a| self.rank_of(SubsetMask(a as u16)) == r[a] as usize)
    }
}

impl fmt::Debug for RepresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) {}x{}", self.q, self.rows, self.cols())?;
        write!(f, "{self}")
    }
}

impl fmt::Display for RepresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.columns[c][r])?;
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    m: &'a Matroid,
    field: Field,
    k: usize,
    cols: Vec<Vec<u8>>,
    /// Non-basis columns in processing order with their free rows.
    tasks: Vec<(usize, Vec<usize>)>,
    done: SubsetMask,
}

impl Search<'_> {
    fn column_ok(&self, e: usize) -> bool {
        let others = self.done.without(e);
        let mut sub = others.0;
        loop {
            let s = SubsetMask(sub).with(e);
            if s.len() <= self.k + 1 {
                let cols: Vec<&[u8]> = s.iter().map(|x| self.cols[x].as_slice()).collect();
                let got = self.field.rank_of_columns(self.k, &cols);
                if got != self.m.rank_of(s) {
                    return false;
                }
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & others.0;
        }
    }

    fn run(&mut self, task: usize, pos: usize) -> bool {
        if task == self.tasks.len() {
            return true;
        }
        let (e, ref free) = self.tasks[task];
        if pos == free.len() {
            self.done = self.done.with(e);
            if self.column_ok(e) && self.run(task + 1, 0) {
                return true;
            }
            self.done = self.done.without(e);
            return false;
        }
        let row = free[pos];
        for v in 1..self.field.order() {
            self.cols[e][row] = v;
            if self.run(task, pos + 1) {
                return true;
            }
        }
        self.cols[e][row] = 1;
        false
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// A representation of `m` over GF(q), if one exists.
///
/// The first basis in element order becomes the identity block. Each other
/// column is zero exactly off its fundamental circuit; entries along a
/// spanning forest of the nonzero pattern are fixed to 1 and the rest are
/// searched column by column, checking every small subset of finished
/// columns as soon as a column is complete.
pub fn representable(m: &Matroid, q: u8) -> Option<RepresentationMatrix> {
    let field = Field::new(q).expect("field order must be 2, 3, 4 or 5");
    let n = m.n();
    let k = m.rank();
    let mut basis = SubsetMask::EMPTY;
    for e in 0..n {
        if m.is_independent(basis.with(e)) {
            basis = basis.with(e);
        }
    }
    let bvec: Vec<usize> = basis.iter().collect();
    let mut cols = vec![vec![0u8; k]; n];
    for (i, &b) in bvec.iter().enumerate() {
        cols[b][i] = 1;
    }
    // union-find over rows 0..k and columns k..k+n
    let mut parent: Vec<usize> = (0..k + n).collect();
    let mut tasks = Vec::new();
    for e in (0..n).filter(|&e| !basis.contains(e)) {
        let mut free = Vec::new();
        for (i, &b) in bvec.iter().enumerate() {
            if m.is_independent(basis.without(b).with(e)) {
                let (ri, ce) = (find(&mut parent, i), find(&mut parent, k + e));
                if ri == ce {
                    free.push(i);
                } else {
                    parent[ri] = ce;
                }
                cols[e][i] = 1;
            }
        }
        tasks.push((e, free));
    }
    let mut s = Search { m, field, k, cols, tasks, done: basis };
    if !s.run(0, 0) {
        return None;
    }
    let rep = RepresentationMatrix::from_columns(q, k, s.cols);
    rep.represents(m).then_some(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::certificate;
    use std::collections::BTreeSet;

    /// Column matroids of every `[I | A]`, up to isomorphism.
    fn all_column_matroids(n: usize, k: usize, q: u8) -> BTreeSet<Matroid> {
        let cells = k * (n - k);
        let total = (q as usize).pow(cells as u32);
        let mut out = BTreeSet::new();
        for code in 0..total {
            let mut c = code;
            let mut columns = Vec::new();
            for i in 0..k {
                let mut v = vec![0u8; k];
                v[i] = 1;
                columns.push(v);
            }
            for _ in k..n {
                let mut v = vec![0u8; k];
                for x in v.iter_mut() {
                    *x = (c % q as usize) as u8;
                    c /= q as usize;
                }
                columns.push(v);
            }
            let rep = RepresentationMatrix::from_columns(q, k, columns);
            out.insert(certificate(&rep.to_matroid()).canonical());
        }
        out
    }

    #[test]
    fn agrees_with_exhaustive_matrices() {
        let levels = crate::enumerate::enumerate(5, &Default::default()).unwrap();
        for q in [2u8, 3, 4, 5] {
            for n in 1..=5 {
                let mut expected = BTreeSet::new();
                for k in 0..=n {
                    expected.extend(all_column_matroids(n, k, q));
                }
                for m in &levels[n] {
                    let rep = representable(m, q);
                    if let Some(r) = &rep {
                        assert!(r.represents(m));
                    }
                    assert_eq!(rep.is_some(), expected.contains(m), "q={q} {m:?}");
                }
            }
        }
    }

    #[test]
    fn uniform_lines() {
        assert!(representable(&Matroid::uniform(2, 4), 2).is_none());
        assert!(representable(&Matroid::uniform(2, 4), 3).is_some());
        assert!(representable(&Matroid::uniform(2, 5), 4).is_some());
        assert!(representable(&Matroid::uniform(2, 6), 4).is_none());
        assert!(representable(&Matroid::uniform(2, 6), 5).is_some());
        assert!(representable(&Matroid::uniform(2, 7), 5).is_none());
        assert!(representable(&Matroid::uniform(3, 6), 3).is_none());
        assert!(representable(&Matroid::uniform(3, 6), 4).is_some());
        assert!(representable(&Matroid::uniform(3, 7), 4).is_none());
    }

    #[test]
    fn int_rows_reduce() {
        let rep = RepresentationMatrix::from_int_rows(3, &[&[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(rep.entry(0, 2), 2);
        assert_eq!(rep.rank_of(SubsetMask(0b111)), 2);
        assert_eq!(rep.to_matroid(), Matroid::uniform(2, 3));
    }
}
