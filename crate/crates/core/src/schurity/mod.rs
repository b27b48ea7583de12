//! Automorphism groups of S-rings, schurity, and combinatorial isomorphism.
//!
//! The automorphisms of an S-ring are the permutations of the group that
//! preserve the colored complete digraph in which the pair `(x, y)` has the
//! color of the basic set containing `y x^-1`. Right translations are always
//! among them, so it suffices to compute the stabilizer of the identity.

mod search;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgrp::{right_regular_representation, PermGroup, Permutation, RegularCyclic, DEFAULT_ELEMENT_BUDGET};
use crate::sring::SRing;

use search::{Graph, Search};

/// Default cap on backtracking nodes per automorphism or isomorphism search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Largest group order accepted by the automorphism search.
pub const SCHURITY_MAX_ORDER: usize = 80;

/// A three-valued verdict; `Unknown` means a budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// The color graph of an S-ring: `color(x, y)` is the class index of `y x^-1`.
#[derive(Clone, Debug)]
pub struct ColorGraph {
    graph: Graph,
}

impl ColorGraph {
    pub fn new(a: &SRing) -> Self {
        let g = a.group();
        let n = g.order();
        let mut colors = vec![0u16; n * n];
        for x in 0..n {
            let xi = g.inv(x);
            for y in 0..n {
                colors[x * n + y] = a.class_of(g.mul(y, xi)) as u16;
            }
        }
        ColorGraph {
            graph: Graph {
                n,
                ncolors: a.rank(),
                colors,
            },
        }
    }

    pub fn order(&self) -> usize {
        self.graph.n
    }

    pub fn colors(&self) -> usize {
        self.graph.ncolors
    }

    pub fn color(&self, x: usize, y: usize) -> usize {
        self.graph.color(x, y) as usize
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.graph.n && self.graph.is_automorphism(p)
    }

    fn recolored(&self, map: &[usize]) -> ColorGraph {
        let mut g = self.graph.clone();
        g.colors.iter_mut().for_each(|c| *c = map[*c as usize] as u16);
        ColorGraph { graph: g }
    }
}

/// `Aut(A)` together with the stabilizer of the identity.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: PermGroup,
    pub stabilizer: PermGroup,
    pub nodes: u64,
}

/// The full automorphism group of `a`. Fails with
/// [`Error::BudgetExceeded`] when the search needs more than `budget` nodes.
pub fn automorphism_group(a: &SRing, budget: u64) -> Result<AutomorphismGroup> {
    let g = a.group();
    let n = g.order();
    if n > SCHURITY_MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: SCHURITY_MAX_ORDER });
    }
    let cg = ColorGraph::new(a);
    let seeds: Vec<Permutation> = a.cayley_automorphisms().generators().to_vec();
    let mut search = Search::new(&cg.graph, budget);
    let (gens, order) = search
        .stabilizer(&seeds)
        .map_err(|_| Error::BudgetExceeded { what: "automorphism search node", budget })?;
    let stabilizer = PermGroup::with_base(n, gens.clone(), &search.base())?;
    if *stabilizer.order() != order {
        return Err(Error::Alarm(format!(
            "stabilizer order {} disagrees with orbit product {order}",
            stabilizer.order()
        )));
    }
    let mut all = right_regular_representation(g).generators().to_vec();
    all.extend(gens);
    let group = PermGroup::from_generators(n, all)?;
    if *group.order() != stabilizer.order() * BigUint::from(n) {
        return Err(Error::Alarm("automorphism group is not G_r times the stabilizer".into()));
    }
    Ok(AutomorphismGroup {
        group,
        stabilizer,
        nodes: search.nodes,
    })
}

/// Schurity verdict with the data it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurityVerdict {
    pub schurian: Tri,
    /// `|Aut(A)|` as a decimal string, when known.
    pub aut_order: Option<String>,
    pub stabilizer_orbit_sizes: Vec<usize>,
}

/// Whether the orbits of `Aut(A)_e` are exactly the basic sets.
pub fn is_schurian(a: &SRing, budget: u64) -> Result<SchurityVerdict> {
    let aut = match automorphism_group(a, budget) {
        Ok(aut) => aut,
        Err(Error::BudgetExceeded { .. }) => {
            return Ok(SchurityVerdict {
                schurian: Tri::Unknown,
                aut_order: None,
                stabilizer_orbit_sizes: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    Ok(schurity_from(a, &aut))
}

/// The verdict given an already computed automorphism group.
pub fn schurity_from(a: &SRing, aut: &AutomorphismGroup) -> SchurityVerdict {
    let orbits = aut.stabilizer.orbits();
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    SchurityVerdict {
        schurian: Tri::from_bool(orbits.len() == a.rank()),
        aut_order: Some(aut.group.order().to_string()),
        stabilizer_orbit_sizes: sizes,
    }
}

/// Class bijections `phi` from `a` to `b` respecting sizes, the identity,
/// inverses, and every structure constant.
fn class_bijections(a: &SRing, b: &SRing) -> Vec<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return Vec::new();
    }
    let sa = a.structure_constants();
    let sb = b.structure_constants();
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn rec(
        i: usize,
        a: &SRing,
        b: &SRing,
        sa: &crate::sring::StructureConstants,
        sb: &crate::sring::StructureConstants,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let r = phi.len();
        if i == r {
            out.push(phi.clone());
            return;
        }
        if phi[i] != usize::MAX {
            rec(i + 1, a, b, sa, sb, phi, used, out);
            return;
        }
        for j in 0..r {
            if used[j] || a.class(i).len() != b.class(j).len() || (i == 0) != (j == 0) {
                continue;
            }
            let (ii, ji) = (a.inverse_class(i), b.inverse_class(j));
            if (ii == i) != (ji == j) || (ii != i && (phi[ii] != usize::MAX || used[ji])) {
                continue;
            }
            phi[i] = j;
            used[j] = true;
            if ii != i {
                phi[ii] = ji;
                used[ji] = true;
            }
            let assigned: Vec<usize> = (0..r).filter(|&k| phi[k] != usize::MAX).collect();
            let consistent = assigned.iter().all(|&x| {
                assigned.iter().all(|&y| {
                    assigned
                        .iter()
                        .all(|&z| sa.get(x, y, z) == sb.get(phi[x], phi[y], phi[z]))
                })
            });
            if consistent {
                rec(i + 1, a, b, sa, sb, phi, used, out);
            }
            phi[i] = usize::MAX;
            used[j] = false;
            if ii != i {
                phi[ii] = usize::MAX;
                used[ji] = false;
            }
        }
    }
    rec(0, a, b, &sa, &sb, &mut phi, &mut used, &mut out);
    out
}

/// A combinatorial isomorphism from `a` onto `b`: a bijection of the
/// underlying groups carrying basic sets of `a`, seen as colors, onto basic
/// sets of `b`. The map sends the identity to the identity.
pub fn are_isomorphic(a: &SRing, b: &SRing, budget: u64) -> Result<Option<Permutation>> {
    let n = a.group().order();
    if b.group().order() != n {
        return Ok(None);
    }
    if n > SCHURITY_MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: SCHURITY_MAX_ORDER });
    }
    let ga = ColorGraph::new(a);
    let gb = ColorGraph::new(b);
    let mut search = Search::new(&ga.graph, budget);
    for phi in class_bijections(a, b) {
        let mut back = vec![0usize; phi.len()];
        for (i, &j) in phi.iter().enumerate() {
            back[j] = i;
        }
        let recolored = gb.recolored(&back);
        match search.isomorphism_to(&recolored.graph) {
            Ok(Some(p)) => return Ok(Some(p)),
            Ok(None) => {}
            Err(_) => return Err(Error::BudgetExceeded { what: "isomorphism search node", budget }),
        }
    }
    Ok(None)
}

/// Whether `Aut(A)` contains a regular cyclic subgroup, i.e. `A` is
/// isomorphic to an S-ring over the cyclic group of the same order.
pub fn isomorphic_to_sring_over_cyclic(a: &SRing, aut: &AutomorphismGroup, element_budget: u64) -> (Tri, Option<Permutation>) {
    match aut.group.contains_regular_cyclic(a.group().order(), element_budget) {
        RegularCyclic::Found(p) => (Tri::Yes, Some(p)),
        RegularCyclic::Absent => (Tri::No, None),
        RegularCyclic::Unknown { .. } => (Tri::Unknown, None),
    }
}

/// [`isomorphic_to_sring_over_cyclic`] with default budgets, computing `Aut(A)` first.
pub fn isomorphic_to_sring_over_cyclic_default(a: &SRing) -> Result<(Tri, Option<Permutation>)> {
    match automorphism_group(a, DEFAULT_SEARCH_BUDGET) {
        Ok(aut) => Ok(isomorphic_to_sring_over_cyclic(a, &aut, DEFAULT_ELEMENT_BUDGET)),
        Err(Error::BudgetExceeded { .. }) => Ok((Tri::Unknown, None)),
        Err(e) => Err(e),
    }
}
