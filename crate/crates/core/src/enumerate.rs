//! Exhaustive enumeration of the S-rings over a small group.
//!
//! The search keeps the closure `Q` of the basic sets decided so far; every
//! S-ring in the subtree refines `Q`. At each node it picks the undecided
//! element `x` in the smallest class `C` of `Q` and branches on the basic
//! set `Y` containing `x`, which must lie in `C` together with `Y^-1`.
//! Each branch splits `C`, re-stabilizes, and is pruned when a decided set
//! would split. A leaf is reached when every class is decided, and every
//! S-ring is reached along exactly one path.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupSpec, GroupSubset};
use crate::sring::{verify_sring, Refiner, SRing};

/// Default cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Largest group order accepted by [`enumerate_srings`].
pub const ENUMERATION_MAX_ORDER: usize = 34;

/// Largest group order accepted by [`naive_enumerate`].
pub const NAIVE_MAX_ORDER: usize = 14;

const ROOT_CHUNK: usize = 1 << 12;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub node_budget: u64,
    /// Resumable progress file, rewritten after every chunk of root branches.
    pub checkpoint: Option<PathBuf>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub sring: SRing,
    pub rank: usize,
    pub symmetric: bool,
    pub primitive: bool,
}

impl CensusEntry {
    fn new(sring: SRing) -> Self {
        CensusEntry {
            rank: sring.rank(),
            symmetric: sring.is_symmetric(),
            primitive: sring.is_primitive(),
            sring,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationStats {
    pub nodes: u64,
    pub root_branches: u64,
    pub elapsed: Duration,
}

/// All S-rings over one group, sorted by rank and then by class lists.
#[derive(Clone, Debug)]
pub struct SRingCensus {
    pub spec: GroupSpec,
    pub entries: Vec<CensusEntry>,
    pub stats: EnumerationStats,
}

fn census_key(a: &SRing) -> (usize, Vec<Vec<usize>>) {
    (a.rank(), a.classes().iter().map(|c| c.to_vec()).collect())
}

impl SRingCensus {
    fn from_srings(spec: GroupSpec, srings: Vec<SRing>, stats: EnumerationStats) -> Self {
        let mut keyed: Vec<_> = srings.into_iter().map(|a| (census_key(&a), a)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        SRingCensus {
            spec,
            entries: keyed.into_iter().map(|(_, a)| CensusEntry::new(a)).collect(),
            stats,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn srings(&self) -> impl Iterator<Item = &SRing> {
        self.entries.iter().map(|e| &e.sring)
    }

    /// The census file: a short header, then one S-ring per line with
    /// classes separated by `|`. Contains no timing data, so identical
    /// inputs give identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# schur census\n");
        out.push_str(&format!("tool {} {}\n", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("group {}\n", self.spec));
        out.push_str(&format!("count {}\n", self.entries.len()));
        for e in &self.entries {
            out.push_str(&e.sring.to_line());
            out.push('\n');
        }
        out
    }

    /// Parses a census file, re-verifying every entry.
    pub fn from_text(text: &str) -> Result<SRingCensus> {
        let mut spec = None;
        let mut count = None;
        let mut srings = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("tool ") {
                continue;
            }
            if let Some(rest) = line.strip_prefix("group ") {
                spec = Some(rest.trim().parse::<GroupSpec>()?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("count ") {
                count = Some(rest.trim().parse::<usize>().map_err(|e| perr(e.to_string()))?);
                continue;
            }
            let spec = spec.ok_or_else(|| perr("S-ring line before the group header".into()))?;
            let group = Arc::new(spec.build()?);
            let mut classes = Vec::new();
            for part in line.split('|') {
                let mut c = GroupSubset::EMPTY;
                for tok in part.split_whitespace() {
                    let x: usize = tok.parse().map_err(|_| perr(format!("bad element `{tok}`")))?;
                    if x >= group.order() {
                        return Err(perr(format!("element {x} out of range")));
                    }
                    c.insert(x);
                }
                classes.push(c);
            }
            srings.push(verify_sring(group, &classes)?);
        }
        let spec = spec.ok_or(Error::Parse { line: 0, msg: "missing group header".into() })?;
        if let Some(c) = count {
            if c != srings.len() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("header says {c} entries, found {}", srings.len()),
                });
            }
        }
        Ok(SRingCensus::from_srings(spec, srings, EnumerationStats::default()))
    }
}

/// The basic-set candidates for `x` inside its class `c`, indexed lazily.
struct Candidates {
    /// `x`'s inverse pair, included in every symmetric candidate.
    base: GroupSubset,
    /// Optional parts of a symmetric (or, for `c != c^-1`, arbitrary) candidate.
    units: Vec<GroupSubset>,
    /// For asymmetric candidates: pairs `(u, u^-1)` choosable independently.
    pairs: Vec<(usize, usize)>,
    x: usize,
    symmetric_count: u64,
    asymmetric_count: u64,
}

impl Candidates {
    fn new(g: &FiniteGroup, c: GroupSubset, x: usize) -> Self {
        let ci = g.inverse_set(c);
        if ci != c {
            let units = c.iter().filter(|&u| u != x).map(GroupSubset::singleton).collect::<Vec<_>>();
            return Candidates {
                base: GroupSubset::singleton(x),
                symmetric_count: 1u64 << units.len(),
                units,
                pairs: Vec::new(),
                x,
                asymmetric_count: 0,
            };
        }
        let xi = g.inv(x);
        let base: GroupSubset = [x, xi].into_iter().collect();
        let mut units = Vec::new();
        let mut pairs = Vec::new();
        for u in c.iter() {
            let ui = g.inv(u);
            if base.contains(u) || ui < u {
                continue;
            }
            units.push([u, ui].into_iter().collect());
            if ui != u {
                pairs.push((u, ui));
            }
        }
        let asymmetric_count = if xi == x { 0 } else { 3u64.pow(pairs.len() as u32) };
        Candidates {
            base,
            symmetric_count: 1u64 << units.len(),
            units,
            pairs,
            x,
            asymmetric_count,
        }
    }

    fn len(&self) -> u64 {
        self.symmetric_count + self.asymmetric_count
    }

    fn get(&self, i: u64) -> GroupSubset {
        if i < self.symmetric_count {
            let mut y = self.base;
            for (j, &u) in self.units.iter().enumerate() {
                if i >> j & 1 == 1 {
                    y = y.union(u);
                }
            }
            y
        } else {
            let mut rest = i - self.symmetric_count;
            let mut y = GroupSubset::singleton(self.x);
            for &(u, ui) in &self.pairs {
                match rest % 3 {
                    1 => y.insert(u),
                    2 => y.insert(ui),
                    _ => {}
                }
                rest /= 3;
            }
            y
        }
    }
}

struct Search<'a> {
    refiner: &'a Refiner,
    nodes: &'a AtomicU64,
    budget: u64,
}

/// A search node: stabilized labels plus the decided elements.
#[derive(Clone)]
struct Node {
    labels: Vec<u16>,
    decided: GroupSubset,
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::BudgetExceeded { what: "enumeration node", budget: self.budget });
        }
        Ok(())
    }

    /// Decides singleton classes; returns the branching data, or `None` at a leaf.
    fn prepare(&self, node: &mut Node) -> Option<(usize, GroupSubset)> {
        let classes = self.refiner.classes_of(&node.labels);
        for &c in &classes {
            if c.len() == 1 {
                node.decided = node.decided.union(c);
            }
        }
        classes
            .iter()
            .filter(|c| !c.is_subset(node.decided))
            .min_by_key(|c| (c.len(), c.least()))
            .map(|&c| (c.least().unwrap(), c))
    }

    fn child(&self, node: &Node, c: GroupSubset, y: GroupSubset) -> Option<Node> {
        let g = self.refiner.group();
        let yi = g.inverse_set(y);
        let decided = node.decided.union(y).union(yi);
        if y == c {
            return Some(Node { labels: node.labels.clone(), decided });
        }
        let mut labels = node.labels.clone();
        let top = labels.iter().copied().max().unwrap();
        for v in y.iter() {
            labels[v] = top + 1;
        }
        if yi != y {
            for v in yi.iter() {
                labels[v] = top + 2;
            }
        }
        self.refiner.refine(&mut labels, decided).then_some(Node { labels, decided })
    }

    fn dfs(&self, mut node: Node, out: &mut Vec<SRing>) -> Result<()> {
        let Some((x, c)) = self.prepare(&mut node) else {
            out.push(verify_sring(self.refiner.group().clone(), &self.refiner.classes_of(&node.labels))?);
            return Ok(());
        };
        let cands = Candidates::new(self.refiner.group(), c, x);
        for i in 0..cands.len() {
            self.tick()?;
            if let Some(child) = self.child(&node, c, cands.get(i)) {
                self.dfs(child, out)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    group: String,
    next_root: u64,
    nodes: u64,
    found: Vec<Vec<Vec<usize>>>,
}

/// Every S-ring over `group`, with the default budget and no checkpoint.
pub fn enumerate_srings(group: Arc<FiniteGroup>) -> Result<SRingCensus> {
    enumerate_srings_with(group, &EnumerateOptions::default())
}

pub fn enumerate_srings_with(group: Arc<FiniteGroup>, opts: &EnumerateOptions) -> Result<SRingCensus> {
    let start = Instant::now();
    let n = group.order();
    if n > ENUMERATION_MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: ENUMERATION_MAX_ORDER });
    }
    let spec = group.spec();
    let refiner = Refiner::new(group.clone());
    let nodes = AtomicU64::new(0);
    let search = Search {
        refiner: &refiner,
        nodes: &nodes,
        budget: opts.node_budget,
    };
    let mut labels: Vec<u16> = (0..n).map(|x| (x != 0) as u16).collect();
    refiner.refine(&mut labels, GroupSubset::EMPTY);
    let mut root = Node { labels, decided: GroupSubset::singleton(0) };
    let Some((x, c)) = search.prepare(&mut root) else {
        let a = verify_sring(group.clone(), &refiner.classes_of(&root.labels))?;
        let stats = EnumerationStats { nodes: 0, root_branches: 0, elapsed: start.elapsed() };
        return Ok(SRingCensus::from_srings(spec, vec![a], stats));
    };
    let cands = Candidates::new(&group, c, x);
    let total = cands.len();

    let mut found: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut next_root = 0u64;
    if let Some(path) = &opts.checkpoint {
        if let Ok(text) = std::fs::read_to_string(path) {
            let cp: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::Parse { line: 0, msg: format!("checkpoint: {e}") })?;
            if cp.group != spec.to_string() {
                return Err(Error::InvalidArgument(format!(
                    "checkpoint is for {}, not {spec}",
                    cp.group
                )));
            }
            next_root = cp.next_root;
            nodes.store(cp.nodes, Ordering::Relaxed);
            found.extend(cp.found);
        }
    }
    while next_root < total {
        let end = (next_root + ROOT_CHUNK as u64).min(total);
        let batches: Vec<Result<Vec<SRing>>> = (next_root..end)
            .into_par_iter()
            .map(|i| {
                search.tick()?;
                let mut out = Vec::new();
                if let Some(child) = search.child(&root, c, cands.get(i)) {
                    search.dfs(child, &mut out)?;
                }
                Ok(out)
            })
            .collect();
        for batch in batches {
            for a in batch? {
                found.insert(census_key(&a).1);
            }
        }
        next_root = end;
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint {
                group: spec.to_string(),
                next_root,
                nodes: nodes.load(Ordering::Relaxed),
                found: found.iter().cloned().collect(),
            };
            let json = serde_json::to_string(&cp).map_err(|e| Error::Io(e.to_string()))?;
            std::fs::write(path, json)?;
        }
    }
    let srings = found
        .into_iter()
        .map(|classes| {
            let classes: Vec<GroupSubset> = classes.into_iter().map(|c| c.into_iter().collect()).collect();
            verify_sring(group.clone(), &classes)
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = EnumerationStats {
        nodes: nodes.load(Ordering::Relaxed),
        root_branches: total,
        elapsed: start.elapsed(),
    };
    Ok(SRingCensus::from_srings(spec, srings, stats))
}

/// Reference enumeration: every set partition of `G \ {e}`, plus `{e}`,
/// filtered through [`verify_sring`].
pub fn naive_enumerate(group: Arc<FiniteGroup>) -> Result<SRingCensus> {
    let start = Instant::now();
    let n = group.order();
    if n > NAIVE_MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: NAIVE_MAX_ORDER });
    }
    let mut out = Vec::new();
    let mut parts: Vec<GroupSubset> = Vec::with_capacity(n);
    let mut leaves = 0u64;
    naive_rec(&group, 1, &mut parts, &mut out, &mut leaves);
    let stats = EnumerationStats {
        nodes: leaves,
        root_branches: 0,
        elapsed: start.elapsed(),
    };
    Ok(SRingCensus::from_srings(group.spec(), out, stats))
}

fn naive_rec(g: &Arc<FiniteGroup>, x: usize, parts: &mut Vec<GroupSubset>, out: &mut Vec<SRing>, leaves: &mut u64) {
    if x == g.order() {
        *leaves += 1;
        let inverse_closed = parts.iter().all(|&c| {
            let ci = g.inverse_set(c);
            ci == c || parts.contains(&ci)
        });
        if inverse_closed {
            let mut classes = parts.clone();
            classes.push(GroupSubset::singleton(0));
            if let Ok(a) = verify_sring(g.clone(), &classes) {
                out.push(a);
            }
        }
        return;
    }
    for i in 0..parts.len() {
        parts[i].insert(x);
        naive_rec(g, x + 1, parts, out, leaves);
        parts[i].remove(x);
    }
    parts.push(GroupSubset::singleton(x));
    naive_rec(g, x + 1, parts, out, leaves);
    parts.pop();
}
