//! Enumerates all matroids up to a given size and prints the size-by-rank table.
//!
//! `cargo run --release --example enumerate -- 8`

use std::time::Instant;

use matroid_catalogue::enumerate::{enumerate, rank_counts, EnumOptions};

fn main() {
    env_logger::init();
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let t = Instant::now();
    let levels = enumerate(max_n, &EnumOptions::default()).expect("enumeration");
    for (n, level) in levels.iter().enumerate() {
        let row: Vec<String> = rank_counts(level).iter().map(usize::to_string).collect();
        println!("n={n:<2} total={:<7} by rank: {}", level.len(), row.join(" "));
    }
    eprintln!("{:.2?}", t.elapsed());
}
