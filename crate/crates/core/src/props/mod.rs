//! Structural properties: paving classes, Ingleton's inequality,
//! representability over small fields, base-orderability and transversality.

mod exminors;
mod field;
mod ingleton;
mod orderable;
mod relax;
mod represent;
mod transversal;

pub use exminors::{excluded_minors, representability_flags, single_minor_indices, ExcludedMinors};
pub use field::Field;
pub use ingleton::{
    ingleton_holds_for, ingleton_sides, ingleton_violation, ingleton_violation_by_minors, try_ingleton_violation,
    IngletonWitness,
};
pub use orderable::{base_orderable, exchangeable, strongly_base_orderable};
pub use relax::{relaxation_edges, relaxations};
pub use represent::{representable, RepresentationMatrix};
pub use transversal::{brute_force_transversal, is_transversal, transversal, transversal_matroid, try_transversal};

use crate::mask::binomial;
use crate::matroid::Matroid;

/// Classification flags and counts of one matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropertyFlags {
    pub simple: bool,
    pub cosimple: bool,
    pub paving: bool,
    pub sparse_paving: bool,
    pub uniform: bool,
    /// Size of a smallest circuit; `None` when there are no circuits.
    pub min_circuit_size: Option<usize>,
    pub bases: usize,
    pub circuits: usize,
    pub cocircuits: usize,
    pub flats: usize,
    pub hyperplanes: usize,
    pub independent_sets: usize,
    pub circuit_hyperplanes: usize,
    pub loops: usize,
    pub coloops: usize,
}

pub fn classify(m: &Matroid) -> PropertyFlags {
    let n = m.n();
    let r = m.rank();
    let circuits = m.circuits();
    let min_circuit_size = circuits.iter().map(|c| c.len()).min();
    let bases = m.bases().len();
    let paving = min_circuit_size.is_none_or(|g| g >= r);
    let sparse_paving = paving && m.hyperplanes().iter().all(|h| h.len() + 1 == r || h.len() == r);
    let dual = m.dual();
    PropertyFlags {
        simple: min_circuit_size.is_none_or(|g| g >= 3),
        cosimple: dual.circuits().iter().all(|c| c.len() >= 3),
        paving,
        sparse_paving,
        uniform: bases as u64 == binomial(n as u64, r as u64),
        min_circuit_size,
        bases,
        circuits: circuits.len(),
        cocircuits: m.cocircuits().len(),
        flats: m.flats().count(),
        hyperplanes: m.hyperplanes().len(),
        independent_sets: m.count_independent_sets(),
        circuit_hyperplanes: m.circuit_hyperplanes().len(),
        loops: m.loops().len(),
        coloops: m.coloops().len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask::SubsetMask;

    #[test]
    fn uniform_flags() {
        let p = classify(&Matroid::uniform(2, 4));
        assert!(p.simple && p.cosimple && p.paving && p.sparse_paving && p.uniform);
        assert_eq!((p.bases, p.circuits, p.hyperplanes, p.flats), (6, 4, 4, 6));
        assert_eq!(p.min_circuit_size, Some(3));
        let free = classify(&Matroid::free(3));
        assert_eq!(free.min_circuit_size, None);
        assert!(free.paving && free.uniform && free.simple && !free.cosimple);
        assert_eq!(free.coloops, 3);
        let z = classify(&Matroid::loops_only(2));
        assert!(!z.simple && z.paving && z.uniform);
        assert_eq!(z.loops, 2);
    }

    #[test]
    fn non_sparse_paving() {
        // rank 3 with a four-point line
        let hyps = [
            0b0000_1111u16,
            0b0001_0001,
            0b0010_0001,
            0b0001_0010,
            0b0010_0010,
            0b0001_0100,
            0b0010_0100,
            0b0001_1000,
            0b0010_1000,
            0b0011_0000,
        ];
        let m = Matroid::from_hyperplanes(6, hyps.iter().map(|&h| SubsetMask(h))).unwrap();
        let p = classify(&m);
        assert!(p.paving && !p.sparse_paving && p.simple);
        assert!(!classify(&m.dual()).paving);
    }
}
