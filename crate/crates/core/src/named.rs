//! A few matroids with names, on elements `0..n`.

use crate::johnson::sparse_paving_from_independent_set;
use crate::mask::SubsetMask;
use crate::matroid::Matroid;
use crate::props::RepresentationMatrix;

fn sets(list: &[&str]) -> Vec<SubsetMask> {
    list.iter().map(|s| SubsetMask::parse_digits(s).expect("digit list")).collect()
}

fn sparse(n: usize, rank: usize, ch: &[SubsetMask]) -> Matroid {
    sparse_paving_from_independent_set(n, rank - 1, ch).expect("named circuit-hyperplanes are independent")
}

fn relax_all(m: Matroid, list: &[&str]) -> Matroid {
    sets(list).into_iter().fold(m, |acc, h| acc.relax(h).expect("named circuit-hyperplane"))
}

pub const FANO_LINES: [&str; 7] = ["012", "034", "056", "135", "146", "236", "245"];

/// The Fano plane `F_7`.
pub fn fano() -> Matroid {
    sparse(7, 3, &sets(&FANO_LINES))
}

/// `F_7^-`: the Fano plane with the line `{2,4,5}` relaxed.
pub fn non_fano() -> Matroid {
    relax_all(fano(), &["245"])
}

/// `AG(3,2)`: the eight points of the binary affine cube, each element's
/// bits giving its coordinates; the circuit-hyperplanes are the 14 planes.
pub fn ag32() -> Matroid {
    let planes: Vec<SubsetMask> =
        (0u16..256).map(SubsetMask).filter(|s| s.len() == 4 && s.iter().fold(0, |acc, e| acc ^ e) == 0).collect();
    sparse(8, 4, &planes)
}

/// `AG(3,2)'`: `AG(3,2)` with the plane `{0,1,2,3}` relaxed.
pub fn ag32_relaxed() -> Matroid {
    relax_all(ag32(), &["0123"])
}

/// The ternary matroid `P_8`, from its standard representation.
pub fn p8() -> Matroid {
    RepresentationMatrix::from_int_rows(
        3,
        &[&[1, 0, 0, 0, 0, 1, 1, -1], &[0, 1, 0, 0, 1, 0, 1, 1], &[0, 0, 1, 0, 1, 1, 0, 1], &[0, 0, 0, 1, -1, 1, 1, 0]],
    )
    .to_matroid()
}

pub const P8_CIRCUIT_HYPERPLANES: [&str; 10] =
    ["0127", "0136", "0235", "1234", "0347", "1256", "0456", "1457", "2467", "3567"];

/// `P_1`: `P_8` with `{3,5,6,7}` relaxed.
pub fn p1() -> Matroid {
    relax_all(p8(), &["3567"])
}

/// `P_2'`: `P_1` with `{0,3,4,7}` relaxed.
pub fn p2_prime() -> Matroid {
    relax_all(p1(), &["0347"])
}

/// `P_2''`: `P_1` with `{1,2,5,6}` relaxed.
pub fn p2_double_prime() -> Matroid {
    relax_all(p1(), &["1256"])
}

/// `P_3`: `P_1` with both `{0,3,4,7}` and `{1,2,5,6}` relaxed.
pub fn p3() -> Matroid {
    relax_all(p1(), &["0347", "1256"])
}

/// Pairs `{0,1}`, `{2,3}`, `{4,5}`, `{6,7}`; every union of two pairs
/// except `{4,5,6,7}` is a circuit-hyperplane.
pub const VAMOS_CIRCUIT_HYPERPLANES: [&str; 5] = ["0123", "0145", "0167", "2345", "2367"];

/// The Vámos matroid `V_8`.
pub fn vamos() -> Matroid {
    sparse(8, 4, &sets(&VAMOS_CIRCUIT_HYPERPLANES))
}

/// `V_8^+`: the Vámos matroid with the transversal `{0,2,4,6}` of its
/// pairs made a sixth circuit-hyperplane; relaxing it gives `V_8` back.
pub fn vamos_plus() -> Matroid {
    let mut ch = sets(&VAMOS_CIRCUIT_HYPERPLANES);
    ch.extend(sets(&["0246"]));
    sparse(8, 4, &ch)
}

/// The seven-element rank-3 matroid used throughout the examples: lines
/// `{0,1,3}`, `{1,2,4}`, `{0,4,6}` and `{2,3,5,6}`.
pub fn seven_point_example() -> Matroid {
    Matroid::from_hyperplanes(7, sets(&["02", "34", "05", "15", "45", "16", "013", "124", "046", "2356"]))
        .expect("valid hyperplanes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::props::{classify, representable};

    #[test]
    fn p8_circuit_hyperplanes() {
        let m = p8();
        assert_eq!(
            m.circuit_hyperplanes(),
            sets(&P8_CIRCUIT_HYPERPLANES)
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        assert!(classify(&m).sparse_paving);
        assert_eq!(m, sparse(8, 4, &sets(&P8_CIRCUIT_HYPERPLANES)));
    }

    #[test]
    fn small_named_facts() {
        assert!(representable(&fano(), 2).is_some());
        assert!(representable(&fano(), 3).is_none());
        assert!(representable(&non_fano(), 2).is_none());
        assert!(representable(&non_fano(), 3).is_some());
        assert!(representable(&ag32(), 2).is_some());
        assert_eq!(ag32().circuit_hyperplanes().len(), 14);
        assert_eq!(vamos().circuit_hyperplanes().len(), 5);
        assert!(is_isomorphic(&vamos_plus().relax(SubsetMask::parse_digits("0246").unwrap()).unwrap(), &vamos()));
        assert!(is_isomorphic(&fano().dual().dual(), &fano()));
        assert_eq!(seven_point_example().flats().count(), 19);
    }
}
