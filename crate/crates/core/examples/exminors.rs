//! Excluded minors for representability over GF(2), GF(3), GF(4) and GF(5).

use std::time::Instant;

use matroid_catalogue::enumerate::{enumerate, EnumOptions};
use matroid_catalogue::props::{excluded_minors, single_minor_indices};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let levels = enumerate(max_n, &EnumOptions::default()).expect("enumeration");
    let minors = single_minor_indices(&levels);
    for q in [2u8, 3, 4, 5] {
        let t = Instant::now();
        let ex = excluded_minors(&levels, &minors, q);
        let cells: Vec<String> = ex.counts(&levels).iter().map(|((n, r), c)| format!("({n},{r}):{c}")).collect();
        println!("GF({q}): {} excluded minors [{}] in {:.1?}", ex.minors.len(), cells.join(" "), t.elapsed());
    }
}
