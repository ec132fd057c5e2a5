//! Catalogue file, property table and queries.

mod query;
mod report;
mod store;
mod table;

pub use query::{count_by_size_rank, missing_base_triples, query, Aggregate, Comparison, Op, QueryExpr, QueryResult};
pub use report::{format_count_matrix, format_quad_matrix};
pub use store::{catalogue_text, parse_catalogue, read_catalogue, write_catalogue, Catalogue, HEADER};
pub use table::{
    build_property_table, column_index, ColumnType, PropertyTable, TableOptions, Value, COLUMNS, TABLE_HEADER,
};
