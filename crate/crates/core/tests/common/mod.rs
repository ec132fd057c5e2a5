#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use matroid_catalogue::catalogue::{build_property_table, Catalogue, PropertyTable, TableOptions};
use matroid_catalogue::enumerate::{enumerate, EnumOptions};
use matroid_catalogue::{Matroid, SubsetMask};

/// Matroids by size and rank, `n <= 9`; row `r`, column `n`.
pub const ALL: [[u64; 10]; 10] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
    [0, 0, 1, 3, 7, 13, 23, 37, 58, 87],
    [0, 0, 0, 1, 4, 13, 38, 108, 325, 1275],
    [0, 0, 0, 0, 1, 5, 23, 108, 940, 190214],
    [0, 0, 0, 0, 0, 1, 6, 37, 325, 190214],
    [0, 0, 0, 0, 0, 0, 1, 7, 58, 1275],
    [0, 0, 0, 0, 0, 0, 0, 1, 8, 87],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 9],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];
pub const ALL_TOTALS: [u64; 10] = [1, 2, 4, 8, 17, 38, 98, 306, 1724, 383172];

pub const SIMPLE: [[u64; 9]; 9] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 2, 4, 9, 23, 68],
    [0, 0, 0, 0, 1, 3, 11, 49, 617],
    [0, 0, 0, 0, 0, 1, 4, 22, 217],
    [0, 0, 0, 0, 0, 0, 1, 5, 40],
    [0, 0, 0, 0, 0, 0, 0, 1, 6],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
];

pub const SIMPLE_COSIMPLE: [[u64; 9]; 9] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 6, 20, 65],
    [0, 0, 0, 0, 0, 0, 1, 20, 525],
    [0, 0, 0, 0, 0, 0, 0, 1, 65],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
];

pub const SIMPLE_PAVING: [[u64; 9]; 9] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 2, 4, 9, 23, 68],
    [0, 0, 0, 0, 1, 2, 5, 18, 322],
    [0, 0, 0, 0, 0, 1, 2, 5, 39],
    [0, 0, 0, 0, 0, 0, 1, 2, 6],
    [0, 0, 0, 0, 0, 0, 0, 1, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
];

/// `(n, r) -> [all, base-orderable, strongly base-orderable, transversal]`
/// for ranks 2..=6 and sizes up to 8.
#[rustfmt::skip]
pub fn orderability_cells() -> BTreeMap<(usize, usize), [u64; 4]> {
    let rows: [(usize, [[u64; 4]; 7]); 5] = [
        (2, [[1, 1, 1, 1], [3, 3, 3, 3], [7, 7, 7, 7], [13, 13, 13, 13], [23, 23, 23, 22], [37, 37, 37, 34], [58, 58, 58, 50]]),
        (3, [[0; 4], [1, 1, 1, 1], [4, 4, 4, 4], [13, 13, 13, 13], [38, 37, 37, 37], [108, 101, 101, 92], [325, 284, 284, 209]]),
        (4, [[0; 4], [0; 4], [1, 1, 1, 1], [5, 5, 5, 5], [23, 23, 23, 23], [108, 101, 101, 100], [940, 677, 644, 432]]),
        (5, [[0; 4], [0; 4], [0; 4], [1, 1, 1, 1], [6, 6, 6, 6], [37, 37, 37, 37], [325, 284, 284, 272]]),
        (6, [[0; 4], [0; 4], [0; 4], [0; 4], [1, 1, 1, 1], [7, 7, 7, 7], [58, 58, 58, 58]]),
    ];
    let mut out = BTreeMap::new();
    for (r, cells) in rows {
        for (i, c) in cells.into_iter().enumerate() {
            if c[0] > 0 {
                out.insert((i + 2, r), c);
            }
        }
    }
    out
}

pub fn levels(max_n: usize) -> &'static [Vec<Matroid>] {
    static LEVELS: OnceLock<Vec<Vec<Matroid>>> = OnceLock::new();
    let all = LEVELS.get_or_init(|| enumerate(8, &EnumOptions::default()).unwrap());
    &all[..=max_n]
}

pub fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(|| Catalogue::from_levels(levels(8).to_vec()))
}

pub fn table() -> &'static PropertyTable {
    static TABLE: OnceLock<PropertyTable> = OnceLock::new();
    TABLE.get_or_init(|| build_property_table(catalogue(), &TableOptions::default()))
}

/// Rank axioms checked directly on the rank table, with submodularity in
/// its local form `r(A+e) + r(A+f) >= r(A) + r(A+e+f)`.
pub fn rank_axioms_hold(m: &Matroid) -> bool {
    let n = m.n();
    (0..1usize << n).all(|a| {
        let ra = m.rank_of(SubsetMask(a as u16));
        ra <= (a as u32).count_ones() as usize
            && (0..n).filter(|e| a >> e & 1 == 0).all(|e| {
                let rae = m.rank_of(SubsetMask((a | 1 << e) as u16));
                (rae == ra || rae == ra + 1)
                    && (e + 1..n).filter(|f| a >> f & 1 == 0).all(|f| {
                        let raf = m.rank_of(SubsetMask((a | 1 << f) as u16));
                        let raef = m.rank_of(SubsetMask((a | 1 << e | 1 << f) as u16));
                        rae + raf >= ra + raef
                    })
            })
    })
}

/// `sum over A of x^(r(E)-r(A)) y^(|A|-r(A))`, evaluated directly.
pub fn rank_sum(m: &Matroid, x: i64, y: i64) -> i64 {
    let r = m.rank() as u32;
    (0..1usize << m.n())
        .map(|a| {
            let ra = m.rank_of(SubsetMask(a as u16)) as u32;
            x.pow(r - ra) * y.pow((a as u32).count_ones() - ra)
        })
        .sum()
}
