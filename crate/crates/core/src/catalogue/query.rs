//! Conjunctive filters with optional grouping and counting over a property table.
//!
//! ```text
//! n=6 and rank=3            filter
//! simple = true, n >= 7     `,` also separates terms
//! connectivity != inf
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::mask::binomial;

use super::table::{column_index, ColumnType, PropertyTable, Value, COLUMNS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Op {
    fn holds(self, a: Value, b: Value) -> bool {
        if a == Value::Missing {
            return false;
        }
        match self {
            Op::Lt => a < b,
            Op::Le => a <= b,
            Op::Eq => a == b,
            Op::Ne => a != b,
            Op::Ge => a >= b,
            Op::Gt => a > b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub column: usize,
    pub op: Op,
    pub literal: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aggregate {
    Count,
    CountDistinct(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryExpr {
    pub filter: Vec<Comparison>,
    pub group_by: Vec<usize>,
    pub aggregate: Option<Aggregate>,
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Word(&'a str),
    Op(Op),
    And,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b',' {
            out.push((i, Tok::And));
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let w = &s[start..i];
            out.push((start, if w.eq_ignore_ascii_case("and") { Tok::And } else { Tok::Word(w) }));
        } else {
            let rest = &s[i..];
            let ops: [(&str, Op); 11] = [
                ("<=", Op::Le),
                (">=", Op::Ge),
                ("!=", Op::Ne),
                ("<>", Op::Ne),
                ("==", Op::Eq),
                ("≤", Op::Le),
                ("≥", Op::Ge),
                ("≠", Op::Ne),
                ("<", Op::Lt),
                (">", Op::Gt),
                ("=", Op::Eq),
            ];
            let Some((text, op)) = ops.iter().find(|(t, _)| rest.starts_with(t)) else {
                return Err(Error::Parse {
                    pos: i + 1,
                    msg: format!("unexpected character `{}`", rest.chars().next().unwrap()),
                });
            };
            out.push((i, Tok::Op(*op)));
            i += text.len();
        }
    }
    Ok(out)
}

fn literal(column: &str, ty: ColumnType, word: &str) -> Result<Value> {
    let bad = |what: &str| Error::TypeMismatch { column: column.to_string(), msg: format!("`{word}` is not {what}") };
    match ty {
        ColumnType::Bool => match word {
            "true" | "1" => Ok(Value::Bool(true)),
            "false" | "0" => Ok(Value::Bool(false)),
            _ => Err(bad("a boolean")),
        },
        ColumnType::Int => word.parse().map(Value::Int).map_err(|_| bad("an integer")),
        ColumnType::Extended if word == "inf" => Ok(Value::Inf),
        ColumnType::Extended => word.parse().map(Value::Int).map_err(|_| bad("an integer or inf")),
    }
}

impl QueryExpr {
    /// Parses a filter; the empty string matches every row.
    pub fn parse(filter: &str) -> Result<Self> {
        let toks = tokenize(filter)?;
        let mut out = Vec::new();
        let mut it = toks.into_iter().peekable();
        let end = filter.len() + 1;
        while let Some((pos, tok)) = it.next() {
            let Tok::Word(name) = tok else {
                return Err(Error::Parse { pos: pos + 1, msg: "expected a column name".into() });
            };
            let column = column_index(name)?;
            let (ty_name, ty) = COLUMNS[column];
            let op = match it.next() {
                Some((_, Tok::Op(op))) => op,
                Some((p, _)) => return Err(Error::Parse { pos: p + 1, msg: "expected a comparison operator".into() }),
                None => return Err(Error::Parse { pos: end, msg: "expected a comparison operator".into() }),
            };
            let lit = match it.next() {
                Some((_, Tok::Word(w))) => literal(ty_name, ty, w)?,
                Some((p, _)) => return Err(Error::Parse { pos: p + 1, msg: "expected a value".into() }),
                None => return Err(Error::Parse { pos: end, msg: "expected a value".into() }),
            };
            if ty == ColumnType::Bool && !matches!(op, Op::Eq | Op::Ne) {
                return Err(Error::TypeMismatch {
                    column: ty_name.into(),
                    msg: "booleans only compare with = or !=".into(),
                });
            }
            out.push(Comparison { column, op, literal: lit });
            match it.next() {
                None => break,
                Some((_, Tok::And)) if it.peek().is_some() => {}
                Some((_, Tok::And)) => {
                    return Err(Error::Parse { pos: end, msg: "expected a comparison after `and`".into() })
                }
                Some((p, _)) => {
                    return Err(Error::Parse { pos: p + 1, msg: "expected `and` and another comparison".into() })
                }
            }
        }
        Ok(QueryExpr { filter: out, group_by: Vec::new(), aggregate: None })
    }

    pub fn group_by(mut self, columns: &[&str]) -> Result<Self> {
        self.group_by = columns.iter().map(|c| column_index(c)).collect::<Result<_>>()?;
        Ok(self)
    }

    pub fn count(mut self) -> Self {
        self.aggregate = Some(Aggregate::Count);
        self
    }

    pub fn count_distinct(mut self, column: &str) -> Result<Self> {
        self.aggregate = Some(Aggregate::CountDistinct(column_index(column)?));
        Ok(self)
    }

    pub fn matches(&self, row: &[Value]) -> bool {
        self.filter.iter().all(|c| c.op.holds(row[c.column], c.literal))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl fmt::Display for QueryResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.columns.join("\t"))?;
        for r in &self.rows {
            writeln!(f, "{}", r.iter().map(Value::to_string).collect::<Vec<_>>().join("\t"))?;
        }
        Ok(())
    }
}

/// Runs a query. Without an aggregate, ungrouped queries list `id n rank` of
/// each match and grouped ones list the distinct group keys. Output rows are
/// sorted, so they do not depend on the table's row order.
pub fn query(table: &PropertyTable, q: &QueryExpr) -> QueryResult {
    let name = |c: usize| COLUMNS[c].0.to_string();
    let hits = table.rows().iter().filter(|r| q.matches(r));
    let mut columns: Vec<String> = q.group_by.iter().map(|&c| name(c)).collect();
    let rows = match &q.aggregate {
        None if q.group_by.is_empty() => {
            columns = vec!["id".into(), "n".into(), "rank".into()];
            let mut rows: Vec<Vec<Value>> = hits.map(|r| r[..3].to_vec()).collect();
            rows.sort();
            rows
        }
        None => {
            let keys: BTreeSet<Vec<Value>> = hits.map(|r| q.group_by.iter().map(|&c| r[c]).collect()).collect();
            keys.into_iter().collect()
        }
        Some(agg) => {
            let mut groups: BTreeMap<Vec<Value>, BTreeSet<Value>> = BTreeMap::new();
            let mut counts: BTreeMap<Vec<Value>, u64> = BTreeMap::new();
            for r in hits {
                let key: Vec<Value> = q.group_by.iter().map(|&c| r[c]).collect();
                *counts.entry(key.clone()).or_default() += 1;
                if let Aggregate::CountDistinct(c) = agg {
                    groups.entry(key).or_default().insert(r[*c]);
                }
            }
            if q.group_by.is_empty() {
                counts.entry(Vec::new()).or_default();
                groups.entry(Vec::new()).or_default();
            }
            columns.push(match agg {
                Aggregate::Count => "count".into(),
                Aggregate::CountDistinct(c) => format!("countDistinct({})", name(*c)),
            });
            counts
                .into_iter()
                .map(|(mut key, count)| {
                    let v = match agg {
                        Aggregate::Count => count,
                        Aggregate::CountDistinct(_) => groups[&key].len() as u64,
                    };
                    key.push(Value::Int(v));
                    key
                })
                .collect()
        }
    };
    QueryResult { columns, rows }
}

/// Every `(n, r, b)` with `r <= n <= max_n` and `1 <= b <= C(n, r)` such
/// that no matroid of size `n` and rank `r` has exactly `b` bases.
pub fn missing_base_triples(table: &PropertyTable, max_n: usize) -> Vec<(usize, usize, u64)> {
    let (n, r, b) = (column_index("n").unwrap(), column_index("rank").unwrap(), column_index("numBases").unwrap());
    let seen: BTreeSet<(u64, u64, u64)> =
        table.rows().iter().filter_map(|row| Some((row[n].as_int()?, row[r].as_int()?, row[b].as_int()?))).collect();
    let mut out = Vec::new();
    for n in 0..=max_n {
        for r in 0..=n {
            for b in 1..=binomial(n as u64, r as u64) {
                if !seen.contains(&(n as u64, r as u64, b)) {
                    out.push((n, r, b));
                }
            }
        }
    }
    out
}

/// Count of matching rows per `(n, rank)`.
pub fn count_by_size_rank(table: &PropertyTable, filter: &QueryExpr) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for row in table.rows().iter().filter(|r| filter.matches(r)) {
        let key = (row[1].as_int().unwrap() as usize, row[2].as_int().unwrap() as usize);
        *out.entry(key).or_default() += 1;
    }
    out
}
