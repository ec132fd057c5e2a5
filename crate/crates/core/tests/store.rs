//! Catalogue file round trips at full desk scale.

mod common;

use matroid_catalogue::catalogue::{
    catalogue_text, parse_catalogue, read_catalogue, write_catalogue, PropertyTable, Value,
};
use matroid_catalogue::Error;

use common::{catalogue, table};

#[test]
fn round_trip_up_to_eight() {
    let cat = catalogue();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.txt");
    write_catalogue(cat, &path).unwrap();
    let back = read_catalogue(&path).unwrap();
    assert_eq!(&back, cat);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2198 + 2);
    assert_eq!(catalogue_text(&back), text);
    assert!(text.lines().nth(1).unwrap() == "0 0 0 -");
}

#[test]
fn unsorted_line_is_rejected() {
    let text = catalogue_text(catalogue());
    let mut lines: Vec<&str> = text.lines().collect();
    lines.swap(1000, 1001);
    let bad = lines.join("\n") + "\n";
    match parse_catalogue(&bad) {
        Err(Error::Format { line, .. }) => assert!(line == 1001 || line == 1002),
        other => panic!("expected a format error, got {other:?}"),
    }
}

#[test]
fn property_table_cross_references() {
    let t = table();
    let cat = catalogue();
    assert_eq!(t.len(), cat.len());
    for (id, m) in cat.iter() {
        let dual = t.get(id, "dualId").unwrap().as_int().unwrap() as usize;
        assert_eq!(t.get(dual, "dualId").unwrap(), Value::Int(id as u64));
        assert_eq!(cat.get(dual).rank(), m.n() - m.rank());
        if dual == id {
            assert_eq!(2 * m.rank(), m.n());
        }
        let s = t.get(id, "simplificationId").unwrap().as_int().unwrap() as usize;
        assert_eq!(t.get(s, "simple").unwrap(), Value::Bool(true));
        assert_eq!(cat.get(s).rank(), m.rank());
    }
    let back = PropertyTable::from_tsv(&t.to_tsv()).unwrap();
    assert_eq!(&back, t);
}
