//! The catalogue file: one line per matroid, sorted, with a checksum footer.
//!
//! ```text
//! # matroid-catalogue v1
//! 0 0 0 -
//! 1 1 0 0
//! 2 1 1 -
//! ...
//! # sha256 <hex digest of every preceding byte>
//! ```
//!
//! Each record line is `<id> <n> <rank> <hyperplanes>` with hyperplanes as
//! comma-separated lowercase hex masks in increasing order, or `-` for none.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

pub const HEADER: &str = "# matroid-catalogue v1";

/// Canonical forms grouped by ground-set size, each level sorted; a record's
/// id is its position in the concatenation of the levels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalogue {
    levels: Vec<Vec<Matroid>>,
    offsets: Vec<usize>,
}

impl Catalogue {
    /// Wraps complete, sorted levels `0..=max_n`.
    pub fn from_levels(levels: Vec<Vec<Matroid>>) -> Self {
        let mut offsets = Vec::with_capacity(levels.len() + 1);
        let mut at = 0;
        for l in &levels {
            debug_assert!(l.windows(2).all(|w| w[0] < w[1]));
            offsets.push(at);
            at += l.len();
        }
        offsets.push(at);
        Catalogue { levels, offsets }
    }

    pub fn levels(&self) -> &[Vec<Matroid>] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<Vec<Matroid>> {
        self.levels
    }

    pub fn max_n(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Id of the `i`-th matroid on `n` elements.
    pub fn id(&self, n: usize, i: usize) -> usize {
        self.offsets[n] + i
    }

    /// `(n, index)` of a record id.
    pub fn locate(&self, id: usize) -> (usize, usize) {
        let n = self.offsets.partition_point(|&o| o <= id) - 1;
        (n, id - self.offsets[n])
    }

    pub fn get(&self, id: usize) -> &Matroid {
        let (n, i) = self.locate(id);
        &self.levels[n][i]
    }

    /// Id of a matroid given in canonical form.
    pub fn find(&self, canonical: &Matroid) -> Option<usize> {
        let level = self.levels.get(canonical.n())?;
        level.binary_search(canonical).ok().map(|i| self.id(canonical.n(), i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Matroid)> {
        self.levels.iter().flatten().enumerate()
    }
}

fn record_line(id: usize, m: &Matroid) -> String {
    let hyps = if m.hyperplanes().is_empty() {
        "-".to_string()
    } else {
        m.hyperplanes().iter().map(|h| format!("{:x}", h.0)).collect::<Vec<_>>().join(",")
    };
    format!("{id} {} {} {hyps}\n", m.n(), m.rank())
}

/// Serializes the catalogue; the output is identical for identical input.
pub fn catalogue_text(cat: &Catalogue) -> String {
    let mut body = format!("{HEADER}\n");
    for (id, m) in cat.iter() {
        body += &record_line(id, m);
    }
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    body += &format!("# sha256 {digest}\n");
    body
}

pub fn write_catalogue(cat: &Catalogue, path: &Path) -> Result<()> {
    fs::write(path, catalogue_text(cat)).map_err(|e| Error::io(path, e))
}

pub fn read_catalogue(path: &Path) -> Result<Catalogue> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_catalogue(&text)
}

/// Parses catalogue text, checking order, ids, hyperplane axioms and the checksum.
pub fn parse_catalogue(text: &str) -> Result<Catalogue> {
    let fmt = |line: usize, msg: &str| Error::Format { line, msg: msg.to_string() };
    let mut lines = text.split_inclusive('\n').enumerate();
    match lines.next() {
        Some((_, l)) if l.trim_end() == HEADER => {}
        _ => return Err(fmt(1, "missing catalogue header")),
    }
    let mut levels: Vec<Vec<Matroid>> = Vec::new();
    let mut consumed = HEADER.len() + 1;
    let mut prev: Option<Matroid> = None;
    for (next_id, (i, raw)) in lines.enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end();
        if let Some(d) = line.strip_prefix("# sha256 ") {
            let found = hex::encode(Sha256::digest(&text.as_bytes()[..consumed]));
            if found != d {
                return Err(Error::ChecksumMismatch { expected: d.to_string(), found });
            }
            if text.len() != consumed + raw.len() {
                return Err(fmt(lineno + 1, "content after checksum"));
            }
            return Ok(Catalogue::from_levels(levels));
        }
        consumed += raw.len();
        let parts: Vec<&str> = line.split(' ').collect();
        if parts.len() != 4 {
            return Err(fmt(lineno, "expected `<id> <n> <rank> <hyperplanes>`"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| fmt(lineno, "bad number"));
        let (id, n, rank) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if id != next_id {
            return Err(fmt(lineno, "ids must be consecutive from 0"));
        }
        if n > 15 {
            return Err(fmt(lineno, "ground set too large"));
        }
        let hyps: Vec<SubsetMask> = if parts[3] == "-" {
            Vec::new()
        } else {
            parts[3]
                .split(',')
                .map(|h| u16::from_str_radix(h, 16).map(SubsetMask).map_err(|_| fmt(lineno, "bad hex mask")))
                .collect::<Result<_>>()?
        };
        if hyps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(fmt(lineno, "hyperplanes not strictly increasing"));
        }
        let m = Matroid::from_hyperplanes(n, hyps).map_err(|e| fmt(lineno, &e.to_string()))?;
        if m.rank() != rank {
            return Err(fmt(lineno, "rank does not match hyperplanes"));
        }
        if prev.as_ref().is_some_and(|p| *p >= m) {
            return Err(fmt(lineno, "records out of order"));
        }
        while levels.len() <= n {
            levels.push(Vec::new());
        }
        levels[n].push(m.clone());
        prev = Some(m);
    }
    Err(fmt(text.lines().count() + 1, "missing checksum footer"))
}
