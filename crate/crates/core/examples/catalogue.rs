//! Builds the catalogue and property table for small matroids and runs a few queries.
//!
//! `cargo run --release --example catalogue -- 7`

use matroid_catalogue::catalogue::{
    build_property_table, missing_base_triples, query, Catalogue, QueryExpr, TableOptions,
};
use matroid_catalogue::enumerate::{enumerate, EnumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map_or(Ok(7), |s| s.parse())?;
    let cat = Catalogue::from_levels(enumerate(max_n, &EnumOptions::default())?);
    let table = build_property_table(&cat, &TableOptions::default());
    println!("{} records", cat.len());

    let q = QueryExpr::parse("n=6 and rank=3")?.group_by(&["n", "rank"])?.count_distinct("numBases")?;
    print!("{}", query(&table, &q));

    let q = QueryExpr::parse("simple=1 and paving=1")?.group_by(&["n"])?.count();
    print!("{}", query(&table, &q));

    println!("missing (n, r, b): {:?}", missing_base_triples(&table, max_n));
    Ok(())
}
