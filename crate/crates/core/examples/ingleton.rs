//! Ingleton census of the matroids on eight elements.

use std::time::Instant;

use matroid_catalogue::enumerate::{enumerate, EnumOptions};
use matroid_catalogue::props::{classify, ingleton_violation};
use rayon::prelude::*;

fn main() {
    let t = Instant::now();
    let levels = enumerate(8, &EnumOptions::default()).expect("enumeration");
    let found: Vec<_> = levels[8].par_iter().filter(|m| ingleton_violation(m).is_some()).collect();
    let sparse_rank4 = found.iter().filter(|m| m.rank() == 4 && classify(m).sparse_paving).count();
    println!("violators on 8 elements: {} ({} sparse paving of rank 4)", found.len(), sparse_rank4);
    println!("elapsed {:.1?}", t.elapsed());
}
