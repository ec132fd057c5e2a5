//! Orbit representatives of independent sets in Johnson graphs.
//!
//! Representatives are canonical forms of the block system under the
//! symmetric group. A child `T = S ∪ {v}` of a representative `S` is kept
//! when `v` lies in the `Aut(T)`-orbit of the block of `T` that becomes
//! largest in canonical form, so every class has exactly one parent class
//! and the search tree can be split into independent subtrees.

use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use log::{debug, info};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::canon::{certificate, set_system_form};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

use super::{complement_all, sparse_paving_from_independent_set, JohnsonGraph};

fn block_orbit(gens: &[Vec<u8>], b: SubsetMask) -> Vec<SubsetMask> {
    let mut orbit = vec![b];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = x.permute(g);
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

/// Canonical children of the representative `parent` (itself canonical).
pub fn iset_children(g: &JohnsonGraph, parent: &[SubsetMask]) -> Vec<Vec<SubsetMask>> {
    let n = g.n();
    let pf = set_system_form(n, &[parent]);
    let mut seen: Vec<SubsetMask> = Vec::new();
    let mut kids = Vec::new();
    for &v in g.vertices() {
        if parent.contains(&v) || parent.iter().any(|&p| (p & v).len() + 1 >= g.k()) || seen.contains(&v) {
            continue;
        }
        seen.extend(block_orbit(&pf.generators, v));
        let mut t = parent.to_vec();
        t.push(v);
        let tf = set_system_form(n, &[&t]);
        let last = *tf.classes[0].last().unwrap();
        let b = *t.iter().find(|b| b.permute(&tf.labelling) == last).unwrap();
        if block_orbit(&tf.generators, b).contains(&v) {
            kids.push(tf.classes[0].clone());
        }
    }
    kids.sort_unstable();
    let before = kids.len();
    kids.dedup();
    debug_assert_eq!(before, kids.len());
    kids
}

/// Every orbit representative, all sizes, in depth-first order.
pub fn iset_classes(g: &JohnsonGraph) -> Vec<Vec<SubsetMask>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        let kids = iset_children(g, &s);
        out.push(s);
        stack.extend(kids.into_iter().rev());
    }
    out
}

/// Class counts by independent-set size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsetCounts {
    pub n: usize,
    pub k: usize,
    /// Orbits under the symmetric group.
    pub by_size: Vec<u64>,
    /// When `n = 2k`: orbits under the group extended by complementation.
    pub complement_classes: Vec<u64>,
    /// When `n = 2k`: symmetric-group orbits fixed by complementation.
    pub self_complementary: Vec<u64>,
}

impl IsetCounts {
    fn new(n: usize, k: usize) -> Self {
        IsetCounts { n, k, ..Default::default() }
    }

    pub fn total(&self) -> u64 {
        self.by_size.iter().sum()
    }

    pub fn complement_total(&self) -> u64 {
        self.complement_classes.iter().sum()
    }

    fn bump(v: &mut Vec<u64>, i: usize, by: u64) {
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] += by;
    }

    fn record(&mut self, s: &[SubsetMask]) {
        Self::bump(&mut self.by_size, s.len(), 1);
        if self.n == 2 * self.k {
            let comp = complement_all(self.n, s);
            let cf = set_system_form(self.n, &[&comp]).classes.swap_remove(0);
            if cf.as_slice() == s {
                Self::bump(&mut self.self_complementary, s.len(), 1);
                Self::bump(&mut self.complement_classes, s.len(), 1);
            } else {
                Self::bump(&mut self.complement_classes, s.len(), u64::from(s < cf.as_slice()));
                Self::bump(&mut self.self_complementary, s.len(), 0);
            }
        }
    }

    fn merge(&mut self, o: &IsetCounts) {
        for (i, &x) in o.by_size.iter().enumerate() {
            Self::bump(&mut self.by_size, i, x);
        }
        for (i, &x) in o.complement_classes.iter().enumerate() {
            Self::bump(&mut self.complement_classes, i, x);
        }
        for (i, &x) in o.self_complementary.iter().enumerate() {
            Self::bump(&mut self.self_complementary, i, x);
        }
    }
}

fn subtree(g: &JohnsonGraph, root: Vec<SubsetMask>) -> IsetCounts {
    let mut c = IsetCounts::new(g.n(), g.k());
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        c.record(&s);
        stack.extend(iset_children(g, &s));
    }
    c
}

/// Representatives at depth `depth`, with counts for all shallower classes.
fn frontier(g: &JohnsonGraph, depth: usize) -> (Vec<Vec<SubsetMask>>, IsetCounts) {
    let mut above = IsetCounts::new(g.n(), g.k());
    let mut level = vec![Vec::new()];
    for _ in 0..depth {
        for s in &level {
            above.record(s);
        }
        level = level.iter().flat_map(|s| iset_children(g, s)).collect();
    }
    (level, above)
}

/// Tuning for [`enumerate_isets_orderly`].
#[derive(Clone, Debug)]
pub struct IsetOptions {
    /// Depth at which the tree is cut into independently searched subtrees.
    pub split_depth: usize,
    /// Subtrees per checkpointed batch.
    pub batch: usize,
    /// Directory for the checkpoint file.
    pub checkpoint: Option<PathBuf>,
    /// Stop once this many subtrees have been searched in this run.
    pub max_subtrees: Option<usize>,
}

impl Default for IsetOptions {
    fn default() -> Self {
        IsetOptions { split_depth: 2, batch: 32, checkpoint: None, max_subtrees: None }
    }
}

const MAGIC: &[u8; 8] = b"MATJOHN\x01";

fn put_counts(buf: &mut Vec<u8>, v: &[u64]) {
    buf.extend_from_slice(&(v.len() as u16).to_le_bytes());
    for x in v {
        buf.extend_from_slice(&x.to_le_bytes());
    }
}

fn get_counts(b: &[u8], at: &mut usize) -> Option<Vec<u64>> {
    let len = u16::from_le_bytes(b.get(*at..*at + 2)?.try_into().ok()?) as usize;
    *at += 2;
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push(u64::from_le_bytes(b.get(*at..*at + 8)?.try_into().ok()?));
        *at += 8;
    }
    Some(v)
}

/// Checkpoint: header (magic, n, k, split depth, frontier size, frontier
/// digest), then one record per finished batch:
/// `[body length u32][start u32][end u32][three count vectors][digest 8]`.
struct IsetCheckpoint {
    path: PathBuf,
    file: File,
    done: usize,
    counts: IsetCounts,
}

impl IsetCheckpoint {
    fn open(dir: &Path, g: &JohnsonGraph, depth: usize, front: &[Vec<SubsetMask>]) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("johnson-{}-{}.ckpt", g.n(), g.k()));
        let io = |e| Error::io(&path, e);
        let mut h = Sha256::new();
        for s in front {
            h.update((s.len() as u16).to_le_bytes());
            for b in s {
                h.update(b.0.to_le_bytes());
            }
        }
        let mut header = MAGIC.to_vec();
        header.extend_from_slice(&[g.n() as u8, g.k() as u8, depth as u8]);
        header.extend_from_slice(&(front.len() as u32).to_le_bytes());
        header.extend_from_slice(&h.finalize()[..8]);
        let mut file =
            OpenOptions::new().read(true).write(true).create(true).truncate(false).open(&path).map_err(io)?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes).map_err(io)?;
        let mut counts = IsetCounts::new(g.n(), g.k());
        let mut done = 0;
        let mut good = header.len();
        if bytes.starts_with(&header) {
            let mut at = header.len();
            while let Some(len) = bytes.get(at..at + 4).map(|b| u32::from_le_bytes(b.try_into().unwrap()) as usize) {
                let Some(body) = bytes.get(at + 4..at + 4 + len) else { break };
                let Some(digest) = bytes.get(at + 4 + len..at + 12 + len) else { break };
                if Sha256::digest(body)[..8] != *digest {
                    break;
                }
                let start = u32::from_le_bytes(body[0..4].try_into().unwrap()) as usize;
                let end = u32::from_le_bytes(body[4..8].try_into().unwrap()) as usize;
                let mut p = 8;
                let (Some(a), Some(b), Some(c)) =
                    (get_counts(body, &mut p), get_counts(body, &mut p), get_counts(body, &mut p))
                else {
                    break;
                };
                if start != done {
                    break;
                }
                counts.merge(&IsetCounts {
                    n: g.n(),
                    k: g.k(),
                    by_size: a,
                    complement_classes: b,
                    self_complementary: c,
                });
                done = end;
                at += 12 + len;
                good = at;
            }
            file.set_len(good as u64).map_err(io)?;
            file.seek(SeekFrom::Start(good as u64)).map_err(io)?;
        } else {
            file.set_len(0).map_err(io)?;
            file.seek(SeekFrom::Start(0)).map_err(io)?;
            file.write_all(&header).map_err(io)?;
        }
        file.sync_data().map_err(io)?;
        Ok(IsetCheckpoint { path, file, done, counts })
    }

    fn append(&mut self, start: usize, end: usize, c: &IsetCounts) -> Result<()> {
        let mut body = Vec::new();
        body.extend_from_slice(&(start as u32).to_le_bytes());
        body.extend_from_slice(&(end as u32).to_le_bytes());
        put_counts(&mut body, &c.by_size);
        put_counts(&mut body, &c.complement_classes);
        put_counts(&mut body, &c.self_complementary);
        let mut rec = (body.len() as u32).to_le_bytes().to_vec();
        rec.extend_from_slice(&body);
        rec.extend_from_slice(&Sha256::digest(&body)[..8]);
        let io = |e| Error::io(&self.path, e);
        self.file.write_all(&rec).map_err(io)?;
        self.file.sync_data().map_err(io)?;
        Ok(())
    }
}

/// Counts orbit representatives of independent sets of every size.
pub fn enumerate_isets_orderly(g: &JohnsonGraph, opts: &IsetOptions) -> Result<IsetCounts> {
    let (front, above) = frontier(g, opts.split_depth);
    let mut total = IsetCounts::new(g.n(), g.k());
    total.merge(&above);
    let mut ckpt = match &opts.checkpoint {
        Some(dir) => Some(IsetCheckpoint::open(dir, g, opts.split_depth, &front)?),
        None => None,
    };
    let mut next = 0;
    if let Some(c) = &ckpt {
        total.merge(&c.counts);
        next = c.done;
        if next > 0 {
            info!("J({},{}): resuming after {next} of {} subtrees", g.n(), g.k(), front.len());
        }
    }
    let mut searched = 0;
    while next < front.len() {
        if opts.max_subtrees.is_some_and(|m| searched >= m) {
            return Err(Error::BudgetExceeded {
                what: format!("J({},{}) stopped after {next} of {} subtrees", g.n(), g.k(), front.len()),
                checkpoint: opts.checkpoint.clone(),
            });
        }
        let end = (next + opts.batch.max(1)).min(front.len());
        let parts: Vec<IsetCounts> = front[next..end].par_iter().map(|s| subtree(g, s.clone())).collect();
        let mut block = IsetCounts::new(g.n(), g.k());
        for p in &parts {
            block.merge(p);
        }
        if let Some(c) = ckpt.as_mut() {
            c.append(next, end, &block)?;
        }
        debug!("J({},{}): subtrees {next}..{end} gave {}", g.n(), g.k(), block.total());
        total.merge(&block);
        searched += end - next;
        next = end;
    }
    Ok(total)
}

/// Outcome of a sampled count.
#[derive(Clone, Debug, PartialEq)]
pub struct IsetEstimate {
    pub estimate: f64,
    /// Exact number of classes smaller than the prefix size.
    pub exact_below: u64,
    pub prefixes: usize,
    pub sampled: usize,
    /// Classes found below (and including) the sampled prefixes.
    pub completions: u64,
    pub seed: u64,
    pub fraction: f64,
}

/// Estimates the number of classes by completing the search below a random
/// sample of the representatives of size `prefix_size`.
pub fn estimate_iset_count(g: &JohnsonGraph, prefix_size: usize, fraction: f64, seed: u64) -> IsetEstimate {
    let (front, above) = frontier(g, prefix_size);
    let want = ((front.len() as f64 * fraction).round() as usize).clamp(usize::from(!front.is_empty()), front.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, front.len(), want).into_vec();
    picks.sort_unstable();
    let completions: u64 = picks.par_iter().map(|&i| subtree(g, front[i].clone()).total()).sum();
    let scale = if want == 0 { 0.0 } else { front.len() as f64 / want as f64 };
    IsetEstimate {
        estimate: above.total() as f64 + completions as f64 * scale,
        exact_below: above.total(),
        prefixes: front.len(),
        sampled: want,
        completions,
        seed,
        fraction,
    }
}

/// Self-dual sparse paving matroids of rank `n/2` counted two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCounts {
    pub classes: u64,
    /// Classes whose matroid has the same certificate as its dual.
    pub by_certificate: u64,
    /// Classes fixed by complementing every block.
    pub by_complement: u64,
}

pub fn count_self_dual_sparse(n: usize) -> SelfDualCounts {
    assert!(n >= 2 && n.is_multiple_of(2), "self-dual counting needs an even ground set");
    let k = n / 2;
    let g = JohnsonGraph::new(n, k);
    let classes = iset_classes(&g);
    let by_certificate = classes
        .par_iter()
        .filter(|s| {
            let m = sparse_paving_from_independent_set(n, k - 1, s).expect("independent set");
            certificate(&m).bytes == certificate(&m.dual()).bytes
        })
        .count() as u64;
    let counts = enumerate_isets_orderly(&g, &IsetOptions::default()).expect("no budget set");
    SelfDualCounts {
        classes: classes.len() as u64,
        by_certificate,
        by_complement: counts.self_complementary.iter().sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask::k_subsets;
    use std::collections::BTreeSet;

    /// Orbits of independent sets by brute force over all labelled sets.
    fn brute_orbits(g: &JohnsonGraph) -> Vec<u64> {
        let verts = g.vertices().to_vec();
        let mut seen = BTreeSet::new();
        let mut cur = Vec::new();
        fn rec(
            g: &JohnsonGraph,
            verts: &[SubsetMask],
            from: usize,
            cur: &mut Vec<SubsetMask>,
            seen: &mut BTreeSet<Vec<SubsetMask>>,
        ) {
            seen.insert(set_system_form(g.n(), &[cur]).classes.swap_remove(0));
            for i in from..verts.len() {
                if cur.iter().all(|&c| !g.adjacent(c, verts[i])) {
                    cur.push(verts[i]);
                    rec(g, verts, i + 1, cur, seen);
                    cur.pop();
                }
            }
        }
        rec(g, &verts, 0, &mut cur, &mut seen);
        let mut by = vec![0u64; seen.iter().map(Vec::len).max().unwrap() + 1];
        for s in &seen {
            by[s.len()] += 1;
        }
        by
    }

    #[test]
    fn matches_brute_force_orbits() {
        for (n, k) in [(4, 2), (5, 2), (6, 3), (6, 2), (7, 3)] {
            let g = JohnsonGraph::new(n, k);
            let c = enumerate_isets_orderly(&g, &IsetOptions::default()).unwrap();
            assert_eq!(c.by_size, brute_orbits(&g), "J({n},{k})");
            assert_eq!(iset_classes(&g).len() as u64, c.total());
        }
    }

    #[test]
    fn estimator_exact_and_unbiased() {
        let g = JohnsonGraph::new(7, 3);
        let exact = enumerate_isets_orderly(&g, &IsetOptions::default()).unwrap().total();
        let full = estimate_iset_count(&g, 2, 1.0, 7);
        assert_eq!(full.estimate, exact as f64);
        // averaging the single-prefix estimate over every prefix recovers the exact count
        let (front, above) = frontier(&g, 2);
        let mean: f64 = front
            .iter()
            .map(|s| above.total() as f64 + subtree(&g, s.clone()).total() as f64 * front.len() as f64)
            .sum::<f64>()
            / front.len() as f64;
        assert!((mean - exact as f64).abs() < 1e-6);
    }

    #[test]
    fn checkpoint_resume() {
        let g = JohnsonGraph::new(7, 3);
        let dir = tempfile::tempdir().unwrap();
        let base = enumerate_isets_orderly(&g, &IsetOptions::default()).unwrap();
        let opts = IsetOptions { split_depth: 3, batch: 1, checkpoint: Some(dir.path().into()), max_subtrees: Some(1) };
        let mut runs = 0;
        let got = loop {
            runs += 1;
            match enumerate_isets_orderly(&g, &opts) {
                Ok(c) => break c,
                Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => panic!("{e}"),
            }
        };
        assert!(runs > 1);
        assert_eq!(got, base);
        let path = dir.path().join("johnson-7-3.ckpt");
        let len = std::fs::metadata(&path).unwrap().len();
        OpenOptions::new().write(true).open(&path).unwrap().set_len(len - 5).unwrap();
        let again = enumerate_isets_orderly(
            &g,
            &IsetOptions { split_depth: 3, checkpoint: Some(dir.path().into()), ..Default::default() },
        )
        .unwrap();
        assert_eq!(again, base);
    }

    #[test]
    fn complement_pairing_small() {
        let g = JohnsonGraph::new(6, 3);
        let c = enumerate_isets_orderly(&g, &IsetOptions::default()).unwrap();
        let sd = count_self_dual_sparse(6);
        assert_eq!(sd.by_certificate, sd.by_complement);
        assert_eq!(2 * c.complement_total() - sd.by_complement, c.total());
        assert!(k_subsets(6, 3).count() == g.vertex_count());
    }

    #[test]
    fn first_levels_of_j10_4() {
        let g = JohnsonGraph::new(10, 4);
        let mut level = vec![Vec::new()];
        let mut sizes = vec![1];
        for _ in 0..4 {
            level = level.iter().flat_map(|s| iset_children(&g, s)).collect();
            sizes.push(level.len());
        }
        // a single 4-set is one orbit, so size 1 has one class
        assert_eq!(sizes, [1, 1, 3, 13, 73]);
    }
}
