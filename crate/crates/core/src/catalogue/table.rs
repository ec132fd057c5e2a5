//! Property table: one row of counts and flags per catalogue record.
//!
//! Serialized as TSV under a `# matroid-properties v1` line, then the column
//! names, then one line per record. Booleans are `0`/`1`, an unbounded value
//! is `inf` and a value that was not computed is `-`.

use std::fmt;
use std::fs;
use std::path::Path;

use log::info;
use rayon::prelude::*;

use crate::canon::certificate;
use crate::error::{Error, Result};
use crate::matroid::{Connectivity, Matroid};
use crate::props::{
    base_orderable, classify, ingleton_violation, is_transversal, representability_flags, single_minor_indices,
    strongly_base_orderable,
};

use super::store::Catalogue;

pub const TABLE_HEADER: &str = "# matroid-properties v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnType {
    Int,
    Bool,
    /// Integer or `inf`.
    Extended,
}

/// Schema of the property table, in column order.
pub const COLUMNS: &[(&str, ColumnType)] = &[
    ("id", ColumnType::Int),
    ("n", ColumnType::Int),
    ("rank", ColumnType::Int),
    ("simple", ColumnType::Bool),
    ("cosimple", ColumnType::Bool),
    ("paving", ColumnType::Bool),
    ("sparsePaving", ColumnType::Bool),
    ("uniform", ColumnType::Bool),
    ("minCircuit", ColumnType::Extended),
    ("numBases", ColumnType::Int),
    ("numCircuits", ColumnType::Int),
    ("numCocircuits", ColumnType::Int),
    ("numFlats", ColumnType::Int),
    ("numHyperplanes", ColumnType::Int),
    ("numIndependent", ColumnType::Int),
    ("numCircuitHyperplanes", ColumnType::Int),
    ("numLoops", ColumnType::Int),
    ("numColoops", ColumnType::Int),
    ("autOrder", ColumnType::Int),
    ("numOrbits", ColumnType::Int),
    ("connectivity", ColumnType::Extended),
    ("gf2", ColumnType::Bool),
    ("gf3", ColumnType::Bool),
    ("gf4", ColumnType::Bool),
    ("gf5", ColumnType::Bool),
    ("ingletonViolation", ColumnType::Bool),
    ("baseOrderable", ColumnType::Bool),
    ("strongBaseOrderable", ColumnType::Bool),
    ("transversal", ColumnType::Bool),
    ("dualId", ColumnType::Int),
    ("simplificationId", ColumnType::Int),
];

/// Alternative column names accepted by [`column_index`].
const ALIASES: &[(&str, &str)] = &[("size", "n"), ("binary", "gf2"), ("ternary", "gf3")];

pub fn column_index(name: &str) -> Result<usize> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, c)| c);
    COLUMNS.iter().position(|(c, _)| *c == name).ok_or_else(|| Error::UnknownColumn(name.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Missing,
    Bool(bool),
    Int(u64),
    Inf,
}

impl Value {
    pub fn as_int(self) -> Option<u64> {
        match self {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }

    fn parse(s: &str, ty: ColumnType) -> Option<Value> {
        match (s, ty) {
            ("-", _) => Some(Value::Missing),
            ("inf", ColumnType::Extended) => Some(Value::Inf),
            ("0", ColumnType::Bool) => Some(Value::Bool(false)),
            ("1", ColumnType::Bool) => Some(Value::Bool(true)),
            (_, ColumnType::Int | ColumnType::Extended) => s.parse().ok().map(Value::Int),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Missing => write!(f, "-"),
            Value::Bool(b) => write!(f, "{}", u8::from(*b)),
            Value::Int(v) => write!(f, "{v}"),
            Value::Inf => write!(f, "inf"),
        }
    }
}

/// Which levels get the expensive columns.
#[derive(Clone, Debug)]
pub struct TableOptions {
    /// Representability, Ingleton, orderability and transversality are
    /// computed for `n <= full_max_n` and left missing above.
    pub full_max_n: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { full_max_n: 8 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyTable {
    rows: Vec<Vec<Value>>,
}

impl PropertyTable {
    pub fn from_rows(rows: Vec<Vec<Value>>) -> Self {
        PropertyTable { rows }
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, id: usize, column: &str) -> Result<Value> {
        Ok(self.rows[id][column_index(column)?])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("{TABLE_HEADER}\n");
        out += &COLUMNS.iter().map(|(c, _)| *c).collect::<Vec<_>>().join("\t");
        out.push('\n');
        for row in &self.rows {
            out += &row.iter().map(Value::to_string).collect::<Vec<_>>().join("\t");
            out.push('\n');
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let fmt = |line: usize, msg: &str| Error::Format { line, msg: msg.to_string() };
        let mut lines = text.lines();
        if lines.next() != Some(TABLE_HEADER) {
            return Err(fmt(1, "missing property table header"));
        }
        let names: Vec<&str> = lines.next().unwrap_or("").split('\t').collect();
        if names.len() != COLUMNS.len() || names.iter().zip(COLUMNS).any(|(a, (b, _))| a != b) {
            return Err(fmt(2, "column names do not match the schema"));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let lineno = i + 3;
            let cells: Vec<&str> = line.split('\t').collect();
            if cells.len() != COLUMNS.len() {
                return Err(fmt(lineno, "wrong number of cells"));
            }
            let row = cells
                .iter()
                .zip(COLUMNS)
                .map(|(c, (name, ty))| {
                    Value::parse(c, *ty).ok_or_else(|| fmt(lineno, &format!("bad value `{c}` for {name}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row[0] != Value::Int(rows.len() as u64) {
                return Err(fmt(lineno, "ids must be consecutive from 0"));
            }
            rows.push(row);
        }
        Ok(PropertyTable { rows })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text)
    }
}

fn extended(v: Option<usize>) -> Value {
    v.map_or(Value::Inf, |k| Value::Int(k as u64))
}

fn int(v: usize) -> Value {
    Value::Int(v as u64)
}

/// Rows in id order; the expensive columns run level by level in parallel.
pub fn build_property_table(cat: &Catalogue, opts: &TableOptions) -> PropertyTable {
    let levels = cat.levels();
    let full = opts.full_max_n.min(cat.max_n());
    let minors = single_minor_indices(&levels[..=full]);
    let rep: Vec<Vec<Vec<bool>>> = (2..=5u8)
        .map(|q| {
            info!("representability over GF({q})");
            representability_flags(&levels[..=full], &minors, q)
        })
        .collect();
    let mut rows = Vec::with_capacity(cat.len());
    for (n, level) in levels.iter().enumerate() {
        info!("properties for n={n}: {} records", level.len());
        let mut part: Vec<Vec<Value>> = level
            .par_iter()
            .enumerate()
            .map(|(i, m)| {
                let mut row = basic_row(cat, n, i, m);
                if n <= full {
                    for flags in &rep {
                        row.push(Value::Bool(flags[n][i]));
                    }
                    row.push(Value::Bool(ingleton_violation(m).is_some()));
                    row.push(Value::Bool(base_orderable(m)));
                    row.push(Value::Bool(strongly_base_orderable(m)));
                    row.push(Value::Bool(is_transversal(m)));
                } else {
                    row.extend([Value::Missing; 8]);
                }
                let dual = cat.find(&certificate(&m.dual()).canonical()).expect("catalogue closed under duality");
                let simple = cat.find(&certificate(&m.simplify()).canonical()).expect("simplification catalogued");
                row.extend([int(dual), int(simple)]);
                row
            })
            .collect();
        rows.append(&mut part);
    }
    PropertyTable { rows }
}

fn basic_row(cat: &Catalogue, n: usize, i: usize, m: &Matroid) -> Vec<Value> {
    let p = classify(m);
    let cert = certificate(m);
    let conn = match m.connectivity() {
        Connectivity::Finite(k) => Some(k),
        Connectivity::Infinite => None,
    };
    vec![
        int(cat.id(n, i)),
        int(n),
        int(m.rank()),
        Value::Bool(p.simple),
        Value::Bool(p.cosimple),
        Value::Bool(p.paving),
        Value::Bool(p.sparse_paving),
        Value::Bool(p.uniform),
        extended(p.min_circuit_size),
        int(p.bases),
        int(p.circuits),
        int(p.cocircuits),
        int(p.flats),
        int(p.hyperplanes),
        int(p.independent_sets),
        int(p.circuit_hyperplanes),
        int(p.loops),
        int(p.coloops),
        Value::Int(cert.aut_order),
        int(cert.element_orbits().len()),
        extended(conn),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate, EnumOptions};

    fn table(n: usize) -> (Catalogue, PropertyTable) {
        let cat = Catalogue::from_levels(enumerate(n, &EnumOptions::default()).unwrap());
        let t = build_property_table(&cat, &TableOptions::default());
        (cat, t)
    }

    #[test]
    fn schema_lookup() {
        assert_eq!(column_index("size").unwrap(), 1);
        assert!(matches!(column_index("nope"), Err(Error::UnknownColumn(_))));
    }

    #[test]
    fn tsv_round_trip_and_cross_references() {
        let (cat, t) = table(5);
        assert_eq!(t.len(), cat.len());
        assert!(t.rows().iter().all(|r| r.len() == COLUMNS.len()));
        let text = t.to_tsv();
        assert_eq!(PropertyTable::from_tsv(&text).unwrap(), t);
        let dual = column_index("dualId").unwrap();
        let simp = column_index("simplificationId").unwrap();
        for (id, row) in t.rows().iter().enumerate() {
            let d = row[dual].as_int().unwrap() as usize;
            assert_eq!(t.rows()[d][dual], Value::Int(id as u64));
            if d == id {
                assert_eq!(2 * cat.get(id).rank(), cat.get(id).n());
            }
            let s = row[simp].as_int().unwrap() as usize;
            assert_eq!(t.get(s, "simple").unwrap(), Value::Bool(true));
        }
        // U_{2,4} is neither binary nor a violator, and is base-orderable
        let u24 = cat.find(&certificate(&Matroid::uniform(2, 4)).canonical()).unwrap();
        assert_eq!(t.get(u24, "gf2").unwrap(), Value::Bool(false));
        assert_eq!(t.get(u24, "gf3").unwrap(), Value::Bool(true));
        assert_eq!(t.get(u24, "connectivity").unwrap(), Value::Inf);
        assert_eq!(t.get(u24, "autOrder").unwrap(), Value::Int(24));
        assert_eq!(t.get(u24, "strongBaseOrderable").unwrap(), Value::Bool(true));
    }

    #[test]
    fn rejects_bad_tsv() {
        let (_, t) = table(2);
        let text = t.to_tsv();
        let broken = text.replacen("\n0\t0\t0\t", "\n0\tx\t0\t", 1);
        assert!(matches!(PropertyTable::from_tsv(&broken), Err(Error::Format { line: 3, .. })));
        assert!(PropertyTable::from_tsv("id\n").is_err());
    }
}
