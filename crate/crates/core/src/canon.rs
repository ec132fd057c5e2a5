//! Canonical labelling of matroids through their element/hyperplane
//! incidence graphs.
//!
//! The search is individualization-refinement: the partition starts as
//! `[elements | hyperplanes]`, is refined until equitable, and the first
//! smallest non-singleton cell is split by individualizing each of its
//! vertices in turn. Automorphisms found along the way prune children in the
//! same orbit. The canonical leaf is the one whose relabelled hyperplane
//! family is lexicographically least.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// Bipartite incidence graph: vertices `0..n` are elements, `n..n+h` hyperplanes.
#[derive(Clone, Debug)]
pub struct HyperplaneGraph {
    n: usize,
    hyperplanes: Vec<SubsetMask>,
    /// Sizes of the colour classes the hyperplane vertices are split into.
    classes: Vec<usize>,
    nbr: Vec<Vec<u32>>,
}

impl HyperplaneGraph {
    pub fn new(m: &Matroid) -> Self {
        Self::from_classes(m.n(), &[m.hyperplanes()])
    }

    /// Incidence graph of a set system on `0..n` whose blocks come in colour
    /// classes; isomorphisms must preserve colours.
    pub fn from_classes(n: usize, classes: &[&[SubsetMask]]) -> Self {
        let hyps: Vec<SubsetMask> = classes.iter().flat_map(|c| c.iter().copied()).collect();
        let mut nbr = vec![Vec::new(); n + hyps.len()];
        for (i, h) in hyps.iter().enumerate() {
            for e in h.iter() {
                nbr[e].push((n + i) as u32);
                nbr[n + i].push(e as u32);
            }
        }
        let classes = classes.iter().map(|c| c.len()).collect();
        HyperplaneGraph { n, hyperplanes: hyps, classes, nbr }
    }

    pub fn n_elements(&self) -> usize {
        self.n
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.nbr.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hyperplanes.iter().map(|h| h.len()).sum()
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.nbr[v]
    }

    pub fn incidence(&self) -> &[SubsetMask] {
        &self.hyperplanes
    }
}

/// Canonical form of a matroid together with its automorphism data.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// `n` and rank as big-endian `u16`, then the canonical hyperplane masks
    /// in increasing order, each big-endian `u16`.
    pub bytes: Vec<u8>,
    /// `labelling[e]` is the canonical label of element `e`.
    pub labelling: Vec<u8>,
    /// Orbit representative (smallest member) of each element.
    pub orbit_of: Vec<u8>,
    pub aut_order: u64,
    /// Generators of the automorphism group, as element permutations.
    pub generators: Vec<Vec<u8>>,
    pub nodes: u64,
}

impl Certificate {
    /// The canonically relabelled matroid.
    pub fn canonical(&self) -> Matroid {
        let n = u16::from_be_bytes([self.bytes[0], self.bytes[1]]) as usize;
        let rank = u16::from_be_bytes([self.bytes[2], self.bytes[3]]) as usize;
        let hyps = self.bytes[4..].chunks(2).map(|c| SubsetMask(u16::from_be_bytes([c[0], c[1]]))).collect();
        Matroid::from_parts(n, rank, hyps)
    }

    /// Element orbits as masks, ordered by smallest member.
    pub fn element_orbits(&self) -> Vec<SubsetMask> {
        let mut reps: Vec<u8> = self.orbit_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut out = vec![SubsetMask::EMPTY; reps.len()];
        for (e, r) in self.orbit_of.iter().enumerate() {
            let k = reps.binary_search(r).unwrap();
            out[k] = out[k].with(e);
        }
        out
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.orbit_of[a] == self.orbit_of[b]
    }

    /// The element with canonical label 0.
    pub fn distinguished(&self) -> Option<usize> {
        self.labelling.iter().position(|&l| l == 0)
    }

    /// An automorphism (as an element permutation) sending `a` to `b`, built
    /// from the generators.
    pub fn orbit_witness(&self, a: usize, b: usize) -> Option<Vec<u8>> {
        let n = self.labelling.len();
        let ident: Vec<u8> = (0..n as u8).collect();
        let mut how: Vec<Option<Vec<u8>>> = vec![None; n];
        how[a] = Some(ident);
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            let px = how[x].clone().unwrap();
            for g in &self.generators {
                let y = g[x] as usize;
                if how[y].is_none() {
                    // g after px
                    how[y] = Some(px.iter().map(|&t| g[t as usize]).collect());
                    queue.push_back(y);
                }
            }
        }
        how[b].take()
    }
}

#[derive(Clone)]
struct Partition {
    order: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    len: Vec<u32>,
}

impl Partition {
    fn initial(g: &HyperplaneGraph) -> (Self, Vec<u32>) {
        let v = g.vertex_count();
        let order: Vec<u32> = (0..v as u32).collect();
        let pos = order.clone();
        let mut cell = vec![0u32; v];
        let mut len = vec![0u32; v];
        let mut starts = Vec::new();
        if g.n > 0 {
            len[0] = g.n as u32;
            starts.push(0);
        }
        let mut at = g.n;
        for &size in g.classes.iter().filter(|&&s| s > 0) {
            len[at] = size as u32;
            for c in &mut cell[at..at + size] {
                *c = at as u32;
            }
            starts.push(at as u32);
            at += size;
        }
        (Partition { order, pos, cell, len }, starts)
    }

    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        let mut p = 0;
        while p < self.order.len() {
            let l = self.len[p];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, p));
            }
            p += l as usize;
        }
        best.map(|(_, p)| p)
    }

    fn individualize(&mut self, v: u32, scratch: &mut Scratch, g: &HyperplaneGraph) {
        let c = self.cell[v as usize] as usize;
        let l = self.len[c] as usize;
        let p = self.pos[v as usize] as usize;
        let u = self.order[c];
        self.order.swap(c, p);
        self.pos[u as usize] = p as u32;
        self.pos[v as usize] = c as u32;
        self.len[c] = 1;
        self.len[c + 1] = (l - 1) as u32;
        for q in c + 1..c + l {
            self.cell[self.order[q] as usize] = (c + 1) as u32;
        }
        self.refine(g, &[c as u32], scratch);
    }

    fn refine(&mut self, g: &HyperplaneGraph, initial: &[u32], s: &mut Scratch) {
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &c in initial {
            queue.push_back(c);
            s.in_queue[c as usize] = true;
        }
        while let Some(w) = queue.pop_front() {
            s.in_queue[w as usize] = false;
            let wl = self.len[w as usize] as usize;
            s.splitter.clear();
            s.splitter.extend_from_slice(&self.order[w as usize..w as usize + wl]);
            for &x in &s.splitter {
                for &y in &g.nbr[x as usize] {
                    if s.count[y as usize] == 0 {
                        s.touched.push(y);
                    }
                    s.count[y as usize] += 1;
                }
            }
            s.cells.clear();
            for &y in &s.touched {
                let c = self.cell[y as usize];
                if self.len[c as usize] > 1 {
                    s.cells.push(c);
                }
            }
            s.cells.sort_unstable();
            s.cells.dedup();
            for &c in &s.cells {
                let c = c as usize;
                let l = self.len[c] as usize;
                s.pairs.clear();
                for &v in &self.order[c..c + l] {
                    s.pairs.push((s.count[v as usize], v));
                }
                let first = s.pairs[0].0;
                if s.pairs.iter().all(|p| p.0 == first) {
                    continue;
                }
                s.pairs.sort_unstable();
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut start = 0;
                for i in 1..=l {
                    if i == l || s.pairs[i].0 != s.pairs[i - 1].0 {
                        frags.push((c + start, i - start));
                        start = i;
                    }
                }
                for (i, &(_, v)) in s.pairs.iter().enumerate() {
                    self.order[c + i] = v;
                    self.pos[v as usize] = (c + i) as u32;
                }
                for &(fs, fl) in &frags {
                    self.len[fs] = fl as u32;
                    for q in fs..fs + fl {
                        self.cell[self.order[q] as usize] = fs as u32;
                    }
                }
                if s.in_queue[c] {
                    for &(fs, _) in &frags[1..] {
                        s.in_queue[fs] = true;
                        queue.push_back(fs as u32);
                    }
                } else {
                    let mut big = 0;
                    for (k, f) in frags.iter().enumerate() {
                        if f.1 > frags[big].1 {
                            big = k;
                        }
                    }
                    for (k, &(fs, _)) in frags.iter().enumerate() {
                        if k != big {
                            s.in_queue[fs] = true;
                            queue.push_back(fs as u32);
                        }
                    }
                }
            }
            for &y in &s.touched {
                s.count[y as usize] = 0;
            }
            s.touched.clear();
        }
    }
}

struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    splitter: Vec<u32>,
    cells: Vec<u32>,
    pairs: Vec<(u32, u32)>,
}

struct Search<'a> {
    g: &'a HyperplaneGraph,
    scratch: Scratch,
    first_path: Vec<u32>,
    first_key: Vec<u16>,
    first_pos: Vec<u32>,
    best_path: Vec<u32>,
    best_key: Vec<u16>,
    best_pos: Vec<u32>,
    have_leaf: bool,
    gens: Vec<Vec<u32>>,
    aut_order: u64,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

/// Union-find orbits of the generators that fix every vertex of `path`.
fn orbits(gens: &[Vec<u32>], path: &[u32], v: usize) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..v as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        if path.iter().any(|&x| g[x as usize] != x) {
            continue;
        }
        for (x, &y) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, x as u32), find(&mut parent, y));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..v as u32).map(|x| find(&mut parent, x)).collect()
}

impl Search<'_> {
    /// Relabelled incidence of the leaf, hyperplanes taken in position order.
    fn leaf_key(&self, p: &Partition) -> Vec<u16> {
        let n = self.g.n;
        let lab: Vec<u8> = (0..n).map(|e| p.pos[e] as u8).collect();
        p.order[n..].iter().map(|&h| self.g.hyperplanes[h as usize - n].permute(&lab).0).collect()
    }

    /// Handles a leaf whose key equals that of an earlier leaf: records the
    /// automorphism and, when it maps the current path onto the earlier one
    /// below their common prefix, unwinds to that prefix.
    fn equivalent(&mut self, pos: &[u32], target_pos: &[u32], path: &[u32], target: &[u32]) -> Option<usize> {
        let mut target_order = vec![0u32; target_pos.len()];
        for (v, &q) in target_pos.iter().enumerate() {
            target_order[q as usize] = v as u32;
        }
        let gamma: Vec<u32> = pos.iter().map(|&q| target_order[q as usize]).collect();
        let j = path.iter().zip(target).take_while(|(a, b)| a == b).count();
        let fixes = path[..j].iter().all(|&v| gamma[v as usize] == v);
        let maps = j < path.len() && j < target.len() && gamma[path[j] as usize] == target[j];
        if gamma.iter().enumerate().any(|(i, &x)| i as u32 != x) {
            self.gens.push(gamma);
        }
        (fixes && maps).then_some(j)
    }

    /// Returns `Some(t)` to unwind to depth `t`.
    fn visit(&mut self, p: Partition, path: &mut Vec<u32>, on_first: bool) -> Option<usize> {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return Some(0);
        }
        let depth = path.len();
        let Some(c) = p.target_cell() else {
            return self.leaf(&p, path);
        };
        let cell: Vec<u32> = p.order[c..c + p.len[c] as usize].to_vec();
        let mut done: Vec<u32> = Vec::new();
        let mut seen_gens = 0;
        let mut orb: Vec<u32> = Vec::new();
        for &v in &cell {
            if !done.is_empty() {
                if seen_gens != self.gens.len() {
                    orb = orbits(&self.gens, path, self.g.vertex_count());
                    seen_gens = self.gens.len();
                }
                if !orb.is_empty() && done.iter().any(|&d| orb[d as usize] == orb[v as usize]) {
                    continue;
                }
            }
            let mut child = p.clone();
            child.individualize(v, &mut self.scratch, self.g);
            path.push(v);
            let r = self.visit(child, path, on_first && done.is_empty());
            path.pop();
            done.push(v);
            if let Some(t) = r {
                if t < depth {
                    return Some(t);
                }
            }
        }
        if on_first {
            let orb = orbits(&self.gens, path, self.g.vertex_count());
            let fc = cell[0];
            let size = cell.iter().filter(|&&v| orb[v as usize] == orb[fc as usize]).count();
            self.aut_order = self.aut_order.saturating_mul(size as u64);
        }
        None
    }

    fn leaf(&mut self, p: &Partition, path: &[u32]) -> Option<usize> {
        let key = self.leaf_key(p);
        if !self.have_leaf {
            self.have_leaf = true;
            self.first_path = path.to_vec();
            self.first_key = key.clone();
            self.first_pos = p.pos.clone();
            self.best_path = path.to_vec();
            self.best_key = key;
            self.best_pos = p.pos.clone();
            return None;
        }
        if key == self.first_key {
            let (fp, fpath) = (std::mem::take(&mut self.first_pos), std::mem::take(&mut self.first_path));
            let r = self.equivalent(&p.pos, &fp, path, &fpath);
            self.first_pos = fp;
            self.first_path = fpath;
            return r;
        }
        match key.cmp(&self.best_key) {
            std::cmp::Ordering::Less => {
                self.best_key = key;
                self.best_path = path.to_vec();
                self.best_pos = p.pos.clone();
                None
            }
            std::cmp::Ordering::Equal => {
                let (bp, bpath) = (std::mem::take(&mut self.best_pos), std::mem::take(&mut self.best_path));
                let r = self.equivalent(&p.pos, &bp, path, &bpath);
                self.best_pos = bp;
                self.best_path = bpath;
                r
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

/// Default search-node cap; far above anything needed for `n <= 9`.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

pub fn certificate(m: &Matroid) -> Certificate {
    try_certificate(m, DEFAULT_NODE_BUDGET).expect("canonical labelling exceeded its node budget")
}

/// Result of the search shared by matroids and coloured set systems.
struct Labelled {
    labelling: Vec<u8>,
    /// Relabelled blocks in canonical position order.
    key: Vec<u16>,
    orbit_of: Vec<u8>,
    aut_order: u64,
    generators: Vec<Vec<u8>>,
    nodes: u64,
}

fn label(g: &HyperplaneGraph, budget: u64) -> Result<Labelled> {
    let v = g.vertex_count();
    let (mut root, starts) = Partition::initial(g);
    let mut scratch = Scratch {
        count: vec![0; v],
        touched: Vec::new(),
        in_queue: vec![false; v + 1],
        splitter: Vec::new(),
        cells: Vec::new(),
        pairs: Vec::new(),
    };
    root.refine(g, &starts, &mut scratch);
    let mut s = Search {
        g,
        scratch,
        first_path: Vec::new(),
        first_key: Vec::new(),
        first_pos: Vec::new(),
        best_path: Vec::new(),
        best_key: Vec::new(),
        best_pos: Vec::new(),
        have_leaf: false,
        gens: Vec::new(),
        aut_order: 1,
        nodes: 0,
        budget,
        exhausted: false,
    };
    s.visit(root, &mut Vec::new(), true);
    if s.exhausted {
        return Err(Error::BudgetExceeded {
            what: format!("canonical labelling after {budget} nodes"),
            checkpoint: None,
        });
    }
    let n = g.n;
    let orb = orbits(&s.gens, &[], v);
    Ok(Labelled {
        labelling: (0..n).map(|e| s.best_pos[e] as u8).collect(),
        key: s.best_key,
        orbit_of: (0..n).map(|e| orb[e] as u8).collect(),
        aut_order: s.aut_order,
        generators: s.gens.iter().map(|g| g[..n].iter().map(|&x| x as u8).collect()).collect(),
        nodes: s.nodes,
    })
}

/// Canonical labelling with a cap on the number of search nodes.
pub fn try_certificate(m: &Matroid, budget: u64) -> Result<Certificate> {
    let g = HyperplaneGraph::new(m);
    let l = label(&g, budget)?;
    let mut bytes = Vec::with_capacity(4 + 2 * l.key.len());
    bytes.extend_from_slice(&(m.n() as u16).to_be_bytes());
    bytes.extend_from_slice(&(m.rank() as u16).to_be_bytes());
    let mut sorted = l.key;
    sorted.sort_unstable();
    for k in &sorted {
        bytes.extend_from_slice(&k.to_be_bytes());
    }
    Ok(Certificate {
        bytes,
        labelling: l.labelling,
        orbit_of: l.orbit_of,
        aut_order: l.aut_order,
        generators: l.generators,
        nodes: l.nodes,
    })
}

/// Canonical form of a set system on `0..n` with coloured block classes.
#[derive(Clone, Debug)]
pub struct SetSystemForm {
    /// Each class relabelled canonically and sorted.
    pub classes: Vec<Vec<SubsetMask>>,
    pub labelling: Vec<u8>,
    pub aut_order: u64,
    /// Automorphisms as element permutations.
    pub generators: Vec<Vec<u8>>,
}

/// Canonical relabelling of a set system under the symmetric group on
/// `0..n`, keeping every class of blocks as a class. Blocks within a class
/// must be distinct.
pub fn set_system_form(n: usize, classes: &[&[SubsetMask]]) -> SetSystemForm {
    let g = HyperplaneGraph::from_classes(n, classes);
    let l = label(&g, DEFAULT_NODE_BUDGET).expect("canonical labelling exceeded its node budget");
    let mut out = Vec::with_capacity(classes.len());
    let mut at = 0;
    for c in classes {
        let mut part: Vec<SubsetMask> = l.key[at..at + c.len()].iter().map(|&k| SubsetMask(k)).collect();
        part.sort_unstable();
        out.push(part);
        at += c.len();
    }
    SetSystemForm { classes: out, labelling: l.labelling, aut_order: l.aut_order, generators: l.generators }
}

pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> bool {
    a.n() == b.n()
        && a.rank() == b.rank()
        && a.hyperplanes().len() == b.hyperplanes().len()
        && certificate(a).bytes == certificate(b).bytes
}

/// The element receiving canonical label 0.
pub fn distinguished_element(m: &Matroid) -> Result<usize> {
    if m.n() == 0 {
        return Err(Error::EmptyGroundSet);
    }
    Ok(certificate(m).distinguished().unwrap())
}
