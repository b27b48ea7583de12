//! Individualization-refinement backtracking over vertex-colored complete
//! digraphs (every ordered pair carries a color).
//!
//! Partitions are ordered; refinement splits cells by per-color neighbour
//! counts into a splitter cell, sorting sub-cells by their count vectors, so
//! the result depends only on the graph and the sequence of individualized
//! vertices. A hash of every split is kept as a trace to prune branches that
//! cannot correspond to the first path.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;

use crate::permgrp::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Graph {
    pub n: usize,
    pub ncolors: usize,
    pub colors: Vec<u16>,
}

impl Graph {
    #[inline]
    pub fn color(&self, v: usize, w: usize) -> u16 {
        self.colors[v * self.n + w]
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        self.maps_to(self, p)
    }

    /// Whether `p` carries every colored pair of `self` onto `other`.
    pub fn maps_to(&self, other: &Graph, p: &Permutation) -> bool {
        let n = self.n;
        (0..n).all(|v| {
            let pv = p.apply(v);
            (0..n).all(|w| self.color(v, w) == other.color(pv, p.apply(w)))
        })
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    lab: Vec<u16>,
    /// vertex -> start position of its cell
    cell_of: Vec<u16>,
    /// start position -> cell length (0 elsewhere)
    len: Vec<u16>,
    cells: usize,
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        let mut len = vec![0u16; n];
        if n > 0 {
            len[0] = n as u16;
        }
        Partition {
            lab: (0..n as u16).collect(),
            cell_of: vec![0; n],
            len,
            cells: (n > 0) as usize,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub fn cell(&self, start: usize) -> &[u16] {
        &self.lab[start..start + self.len[start] as usize]
    }

    pub fn lab(&self) -> &[u16] {
        &self.lab
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut k = 0;
        std::iter::from_fn(move || {
            (k < self.lab.len()).then(|| {
                let s = k;
                k += self.len[s] as usize;
                s
            })
        })
    }

    /// First among the smallest non-singleton cells.
    pub fn target(&self) -> Option<usize> {
        self.starts()
            .filter(|&s| self.len[s] > 1)
            .min_by_key(|&s| (self.len[s], s))
    }

    /// Splits `{v}` off the front of its cell; returns the affected starts.
    fn individualize(&mut self, v: usize) -> [usize; 2] {
        let s = self.cell_of[v] as usize;
        let l = self.len[s] as usize;
        let pos = s + self.lab[s..s + l].iter().position(|&x| x as usize == v).unwrap();
        self.lab.swap(s, pos);
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u16;
        for &x in &self.lab[s + 1..s + l] {
            self.cell_of[x as usize] = (s + 1) as u16;
        }
        self.cells += 1;
        [s, s + 1]
    }
}

/// Scratch space for refinement.
pub(crate) struct Refiner<'g> {
    g: &'g Graph,
    counts: Vec<u16>,
    in_queue: Vec<bool>,
}

impl<'g> Refiner<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Refiner {
            g,
            counts: vec![0; g.n * g.ncolors],
            in_queue: vec![false; g.n],
        }
    }

    /// Individualizes `v` and refines to an equitable partition; returns the
    /// trace hash.
    pub fn individualize(&mut self, p: &mut Partition, v: usize) -> u64 {
        let starts = p.individualize(v);
        self.refine(p, &starts)
    }

    pub fn refine(&mut self, p: &mut Partition, initial: &[usize]) -> u64 {
        let n = self.g.n;
        let k = self.g.ncolors;
        let mut h = DefaultHasher::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        self.in_queue.iter_mut().for_each(|b| *b = false);
        for &s in initial {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut splitter: Vec<u16> = Vec::with_capacity(n);
        let mut cell_starts: Vec<usize> = Vec::with_capacity(n);
        while let Some(s) = queue.pop_front() {
            self.in_queue[s] = false;
            if p.is_discrete() {
                break;
            }
            splitter.clear();
            splitter.extend_from_slice(p.cell(s));
            cell_starts.clear();
            cell_starts.extend(p.starts().filter(|&c| p.len[c] > 1));
            for &c in &cell_starts {
                let l = p.len[c] as usize;
                for &v in &p.lab[c..c + l] {
                    let row = &mut self.counts[v as usize * k..(v as usize + 1) * k];
                    row.iter_mut().for_each(|x| *x = 0);
                    for &w in &splitter {
                        row[self.g.color(v as usize, w as usize) as usize] += 1;
                    }
                }
                let counts = &self.counts;
                let key = |v: u16| &counts[v as usize * k..(v as usize + 1) * k];
                let first = key(p.lab[c]);
                if p.lab[c + 1..c + l].iter().all(|&v| key(v) == first) {
                    continue;
                }
                p.lab[c..c + l].sort_by(|&a, &b| key(a).cmp(key(b)));
                c.hash(&mut h);
                let mut run = c;
                for i in c..=c + l {
                    if i == c + l || (i > run && key(p.lab[i]) != key(p.lab[run])) {
                        let rl = i - run;
                        p.len[run] = rl as u16;
                        for &v in &p.lab[run..i] {
                            p.cell_of[v as usize] = run as u16;
                        }
                        (rl as u32).hash(&mut h);
                        key(p.lab[run]).hash(&mut h);
                        if !self.in_queue[run] {
                            self.in_queue[run] = true;
                            queue.push_back(run);
                        }
                        if run != c {
                            p.cells += 1;
                        }
                        run = i;
                    }
                }
            }
        }
        (p.cells as u64).hash(&mut h);
        h.finish()
    }
}

/// One level of the first path.
#[derive(Clone, Debug)]
struct Level {
    /// partition before individualizing at this level
    part: Partition,
    target: usize,
    vertex: usize,
    trace: u64,
}

/// Budget exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct OutOfBudget;

pub(crate) struct Search<'g> {
    g: &'g Graph,
    root_trace: u64,
    levels: Vec<Level>,
    leaf: Vec<u16>,
    pub nodes: u64,
    budget: u64,
}

impl<'g> Search<'g> {
    /// Builds the first path: individualize vertex `0`, then repeatedly the
    /// least vertex of the target cell.
    pub fn new(g: &'g Graph, budget: u64) -> Self {
        let mut r = Refiner::new(g);
        let mut part = Partition::unit(g.n);
        let root_trace = r.individualize(&mut part, 0);
        let mut levels = Vec::new();
        while let Some(target) = part.target() {
            let vertex = *part.cell(target).iter().min().unwrap() as usize;
            let before = part.clone();
            let trace = r.individualize(&mut part, vertex);
            levels.push(Level {
                part: before,
                target,
                vertex,
                trace,
            });
        }
        Search {
            g,
            root_trace,
            levels,
            leaf: part.lab,
            nodes: 0,
            budget,
        }
    }

    /// Generators of the stabilizer of vertex `0` in the automorphism group,
    /// and its order computed as a product of orbit lengths along the path.
    /// `seeds` are known automorphisms fixing `0`.
    pub fn stabilizer(&mut self, seeds: &[Permutation]) -> Result<(Vec<Permutation>, BigUint), OutOfBudget> {
        let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut order = BigUint::from(1u32);
        for i in (0..self.levels.len()).rev() {
            let prefix: Vec<usize> = self.levels[..i].iter().map(|l| l.vertex).collect();
            let fixing = |gens: &[Permutation]| -> Vec<Permutation> {
                gens.iter().filter(|g| prefix.iter().all(|&v| g.apply(v) == v)).cloned().collect()
            };
            let v = self.levels[i].vertex;
            let cell: Vec<u16> = self.levels[i].part.cell(self.levels[i].target).to_vec();
            let mut orbit = orbit_of(self.g.n, v, &fixing(&gens));
            for &u in &cell {
                let u = u as usize;
                if orbit[u] {
                    continue;
                }
                let mut part = self.levels[i].part.clone();
                if let Some(p) = self.descend(self.g, &mut part, i, u)? {
                    gens.push(p);
                    orbit = orbit_of(self.g.n, v, &fixing(&gens));
                }
            }
            order *= BigUint::from(orbit.iter().filter(|&&b| b).count());
        }
        Ok((gens, order))
    }

    /// Searches for a color-preserving bijection from this graph onto
    /// `other` that fixes vertex `0`.
    pub fn isomorphism_to(&mut self, other: &Graph) -> Result<Option<Permutation>, OutOfBudget> {
        let mut r = Refiner::new(other);
        let mut part = Partition::unit(other.n);
        if r.individualize(&mut part, 0) != self.root_trace {
            return Ok(None);
        }
        self.explore(other, &mut part, 0)
    }

    /// Individualizes `u` in place of the path vertex at `level`, then
    /// explores every continuation.
    fn descend(&mut self, other: &Graph, part: &mut Partition, level: usize, u: usize) -> Result<Option<Permutation>, OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        let mut r = Refiner::new(other);
        if r.individualize(part, u) != self.levels[level].trace {
            return Ok(None);
        }
        self.explore(other, part, level + 1)
    }

    fn explore(&mut self, other: &Graph, part: &mut Partition, level: usize) -> Result<Option<Permutation>, OutOfBudget> {
        if level == self.levels.len() {
            if !part.is_discrete() {
                return Ok(None);
            }
            let mut images = vec![0u32; self.g.n];
            for (a, b) in self.leaf.iter().zip(part.lab()) {
                images[*a as usize] = *b as u32;
            }
            let p = Permutation::from_images_unchecked(images);
            return Ok(self.g.maps_to(other, &p).then_some(p));
        }
        let target = self.levels[level].target;
        if part.len[target] != self.levels[level].part.len[target] {
            return Ok(None);
        }
        let cell: Vec<u16> = part.cell(target).to_vec();
        for &w in &cell {
            let mut child = part.clone();
            if let Some(p) = self.descend(other, &mut child, level, w as usize)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    /// Vertices individualized along the first path after `0`.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.vertex).collect()
    }
}

fn orbit_of(n: usize, v: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}
