//! The lattice of flats, modular cuts and single-element extensions.

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

/// A fixed-size set of flat indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatSet {
    words: Vec<u64>,
}

impl FlatSet {
    pub fn new(len: usize) -> Self {
        FlatSet { words: vec![0; len.div_ceil(64)] }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

impl std::fmt::Debug for FlatSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Flats of a matroid indexed in `(rank, mask)` order, with the cover relation.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    n: usize,
    rank: usize,
    flats: Vec<SubsetMask>,
    flat_rank: Vec<u8>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    ranks: Box<[u8]>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Self {
        let by_rank = m.flats();
        let mut flats = Vec::with_capacity(by_rank.count());
        let mut flat_rank = Vec::with_capacity(by_rank.count());
        let mut starts = Vec::new();
        for (r, level) in by_rank.levels.iter().enumerate() {
            starts.push(flats.len());
            flats.extend_from_slice(level);
            flat_rank.extend(std::iter::repeat_n(r as u8, level.len()));
        }
        starts.push(flats.len());
        let mut up = vec![Vec::new(); flats.len()];
        let mut down = vec![Vec::new(); flats.len()];
        for r in 0..m.rank() {
            for i in starts[r]..starts[r + 1] {
                for j in starts[r + 1]..starts[r + 2] {
                    if flats[i].is_subset_of(flats[j]) {
                        up[i].push(j as u32);
                        down[j].push(i as u32);
                    }
                }
            }
        }
        FlatLattice { n: m.n(), rank: m.rank(), flats, flat_rank, up, down, ranks: m.rank_table().into() }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flat(&self, i: usize) -> SubsetMask {
        self.flats[i]
    }

    pub fn flats(&self) -> &[SubsetMask] {
        &self.flats
    }

    pub fn flat_rank(&self, i: usize) -> usize {
        self.flat_rank[i] as usize
    }

    pub fn index_of(&self, f: SubsetMask) -> Option<usize> {
        let r = self.ranks[f.index()];
        let lo = self.flat_rank.partition_point(|&x| x < r);
        let hi = self.flat_rank.partition_point(|&x| x <= r);
        self.flats[lo..hi].binary_search(&f).ok().map(|k| lo + k)
    }

    /// Flats covering flat `i`.
    pub fn upper_covers(&self, i: usize) -> &[u32] {
        &self.up[i]
    }

    /// Flats covered by flat `i`.
    pub fn lower_covers(&self, i: usize) -> &[u32] {
        &self.down[i]
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    #[inline]
    pub fn rank_of(&self, a: SubsetMask) -> usize {
        self.ranks[a.index()] as usize
    }

    /// `r(F) + r(G) = r(F ∪ G) + r(F ∩ G)`, with `r` applied to the plain union.
    #[inline]
    pub fn is_modular_pair(&self, f: SubsetMask, g: SubsetMask) -> bool {
        self.rank_of(f) + self.rank_of(g) == self.rank_of(f | g) + self.rank_of(f & g)
    }

    /// Strict comparability (one flat properly contains the other).
    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i != j && (self.flats[i].is_subset_of(self.flats[j]) || self.flats[j].is_subset_of(self.flats[i]))
    }

    /// The up-set generated by a family of flats.
    pub fn up_set(&self, generators: &[usize]) -> FlatSet {
        let mut s = FlatSet::new(self.len());
        for (j, &f) in self.flats.iter().enumerate() {
            if generators.iter().any(|&g| self.flats[g].is_subset_of(f)) {
                s.insert(j);
            }
        }
        s
    }

    /// Every antichain of the flat poset, the empty one included.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        let adj: Vec<FlatSet> = (0..self.len())
            .map(|i| {
                let mut s = FlatSet::new(self.len());
                for j in 0..self.len() {
                    if self.comparable(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        independent_sets(&adj)
    }

    /// Checks that `members` is an up-set closed under modular-pair meets.
    pub fn check_cut(&self, members: &FlatSet) -> Result<()> {
        for i in members.iter() {
            for &j in &self.up[i] {
                if !members.contains(j as usize) {
                    return Err(Error::InvalidCut(format!(
                        "{} is in the cut but {} is not",
                        self.flats[i], self.flats[j as usize]
                    )));
                }
            }
        }
        let list: Vec<usize> = members.iter().collect();
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                let (f, g) = (self.flats[i], self.flats[j]);
                if self.is_modular_pair(f, g) {
                    let meet = self.index_of(f & g).expect("meet of flats is a flat");
                    if !members.contains(meet) {
                        return Err(Error::InvalidCut(format!(
                            "modular pair {f}, {g} has meet {} outside the cut",
                            f & g
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn modular_cut(&self, members: FlatSet) -> Result<ModularCut> {
        self.check_cut(&members)?;
        Ok(ModularCut { members })
    }

    /// All modular cuts, by a top-down search that only adds a flat when all
    /// of its upper covers are present and propagates modular-pair meets.
    pub fn modular_cuts(&self) -> Vec<ModularCut> {
        let mut out = Vec::new();
        self.for_each_modular_cut(|c| out.push(c.clone()));
        out
    }

    /// Streams the cuts of [`modular_cuts`](Self::modular_cuts) without
    /// collecting them.
    pub fn for_each_modular_cut(&self, mut emit: impl FnMut(&ModularCut)) {
        let mut search = CutSearch {
            lat: self,
            state: vec![State::Open; self.len()],
            chosen: Vec::new(),
            trail: Vec::new(),
            emit: &mut emit,
        };
        search.go(self.len());
    }

    /// All modular cuts, as the closed up-sets of antichains. Slow; used to
    /// cross-check [`modular_cuts`](Self::modular_cuts).
    pub fn modular_cuts_by_antichains(&self) -> Vec<ModularCut> {
        let mut cuts: Vec<ModularCut> = self
            .antichains()
            .iter()
            .map(|a| self.up_set(a))
            .filter(|s| self.check_cut(s).is_ok())
            .map(|members| ModularCut { members })
            .collect();
        cuts.sort();
        cuts
    }

    /// Flats outside the cut covered by some member.
    pub fn collar(&self, cut: &ModularCut) -> FlatSet {
        let mut c = FlatSet::new(self.len());
        for i in cut.members.iter() {
            for &j in &self.down[i] {
                if !cut.contains(j as usize) {
                    c.insert(j as usize);
                }
            }
        }
        c
    }

    /// The single-element extension by a new element `n` determined by `cut`.
    pub fn extend(&self, cut: &ModularCut) -> Matroid {
        let e = self.n;
        let collar = self.collar(cut);
        let new_rank = if cut.is_empty() { self.rank + 1 } else { self.rank };
        let mut hyps = Vec::new();
        for (i, &f) in self.flats.iter().enumerate() {
            let r = self.flat_rank[i] as usize;
            if cut.contains(i) {
                if r + 1 == new_rank {
                    hyps.push(f.with(e));
                }
            } else {
                if r + 1 == new_rank {
                    hyps.push(f);
                }
                if !collar.contains(i) && r + 2 == new_rank {
                    hyps.push(f.with(e));
                }
            }
        }
        hyps.sort_unstable();
        Matroid::from_parts(e + 1, new_rank, hyps)
    }

    /// Like [`extend`](Self::extend) but validates the cut first.
    pub fn try_extend(&self, members: FlatSet) -> Result<Matroid> {
        let cut = self.modular_cut(members)?;
        Ok(self.extend(&cut))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum State {
    Open,
    In,
    Out,
}

struct CutSearch<'a, 'b> {
    lat: &'a FlatLattice,
    state: Vec<State>,
    // flats already processed and included, in processing order
    chosen: Vec<usize>,
    trail: Vec<usize>,
    emit: &'b mut dyn FnMut(&ModularCut),
}

impl CutSearch<'_, '_> {
    /// Decides flats `0..i`, highest index first.
    fn go(&mut self, i: usize) {
        if i == 0 {
            let mut members = FlatSet::new(self.lat.len());
            for &c in &self.chosen {
                members.insert(c);
            }
            (self.emit)(&ModularCut { members });
            return;
        }
        let k = i - 1;
        let forced = self.state[k] == State::In;
        let allowed = forced || self.lat.up[k].iter().all(|&j| self.state[j as usize] == State::In);
        if allowed {
            let mark = self.trail.len();
            if !forced {
                self.state[k] = State::In;
                self.trail.push(k);
            }
            if self.close(k) {
                self.chosen.push(k);
                self.go(k);
                self.chosen.pop();
            }
            self.undo(mark);
        }
        if !forced {
            self.state[k] = State::Out;
            self.go(k);
            self.state[k] = State::Open;
        }
    }

    /// Forces the meets of `k` with every chosen partner forming a modular pair.
    fn close(&mut self, k: usize) -> bool {
        let f = self.lat.flats[k];
        for idx in 0..self.chosen.len() {
            let g = self.lat.flats[self.chosen[idx]];
            if f.is_subset_of(g) || !self.lat.is_modular_pair(f, g) {
                continue;
            }
            let meet = self.lat.index_of(f & g).expect("meet of flats is a flat");
            if !self.force(meet) {
                return false;
            }
        }
        true
    }

    /// Puts flat `x` and every flat above it into the cut.
    fn force(&mut self, x: usize) -> bool {
        if self.state[x] == State::In {
            return true;
        }
        let fx = self.lat.flats[x];
        for j in x..self.lat.len() {
            if fx.is_subset_of(self.lat.flats[j]) {
                match self.state[j] {
                    State::Out => return false,
                    State::Open => {
                        self.state[j] = State::In;
                        self.trail.push(j);
                    }
                    State::In => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let j = self.trail.pop().unwrap();
            self.state[j] = State::Open;
        }
    }
}

/// An up-set of flats closed under intersections of modular pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularCut {
    members: FlatSet,
}

impl ModularCut {
    pub fn members(&self) -> &FlatSet {
        &self.members
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Members with no lower cover inside the cut.
    pub fn minimal_elements(&self, lat: &FlatLattice) -> Vec<usize> {
        self.members.iter().filter(|&i| lat.lower_covers(i).iter().all(|&j| !self.contains(j as usize))).collect()
    }
}

/// Every independent set of the graph with the given adjacency rows.
pub fn independent_sets(adj: &[FlatSet]) -> Vec<Vec<usize>> {
    fn rec(adj: &[FlatSet], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for v in from..adj.len() {
            if cur.iter().all(|&u| !adj[v].contains(u)) {
                cur.push(v);
                rec(adj, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(adj, 0, &mut Vec::new(), &mut out);
    out
}

/// All single-element extensions of `m` as labelled matroids, one per modular cut.
pub fn extensions(m: &Matroid) -> Vec<Matroid> {
    let lat = FlatLattice::new(m);
    lat.modular_cuts().iter().map(|c| lat.extend(c)).collect()
}
