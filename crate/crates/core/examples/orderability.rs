//! Base-orderable, strongly base-orderable and transversal counts by size and rank.

use std::time::Instant;

use matroid_catalogue::enumerate::{enumerate, EnumOptions};
use matroid_catalogue::props::{base_orderable, is_transversal, strongly_base_orderable};
use rayon::prelude::*;

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let levels = enumerate(max_n, &EnumOptions::default()).expect("enumeration");
    for (n, level) in levels.iter().enumerate().skip(2) {
        let t = Instant::now();
        let flags: Vec<(usize, bool, bool, bool)> = level
            .par_iter()
            .map(|m| (m.rank(), base_orderable(m), strongly_base_orderable(m), is_transversal(m)))
            .collect();
        let mut line = format!("n={n}:");
        for r in 2..=n.min(6) {
            let cell: Vec<_> = flags.iter().filter(|f| f.0 == r).collect();
            let bo = cell.iter().filter(|f| f.1).count();
            let sbo = cell.iter().filter(|f| f.2).count();
            let tr = cell.iter().filter(|f| f.3).count();
            line += &format!(" r{r} {}/{bo}/{sbo}/{tr}", cell.len());
        }
        println!("{line}  ({:.1?})", t.elapsed());
    }
}
