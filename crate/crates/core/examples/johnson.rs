//! Sparse paving matroids as independent sets of Johnson graphs.
//!
//! `cargo run --release --example johnson -- 8 4`

use matroid_catalogue::johnson::{
    count_nonsparse_paving, enumerate_isets_orderly, estimate_iset_count, IsetOptions, JohnsonGraph,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(8), |s| s.parse())?;
    let k: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    let g = JohnsonGraph::new(n, k);
    println!("J({n},{k}): {} vertices of degree {}", g.vertex_count(), g.degree(0));

    let c = enumerate_isets_orderly(&g, &IsetOptions::default())?;
    println!("independent-set classes by size: {:?}", c.by_size);
    println!("sparse paving matroids of rank {k} on {n} elements: {}", c.total());
    if g.has_complementation() {
        println!("classes up to duality: {}", c.complement_total());
    }

    let e = estimate_iset_count(&g, 3, 0.25, 1);
    println!("estimate from a quarter of the size-3 prefixes: {:.0}", e.estimate);

    let ns = count_nonsparse_paving(n, k);
    println!("paving but not sparse paving: {} {:?}", ns.total(), ns.counts);
    Ok(())
}
