use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::Budgets;
use crate::diffset::arith::cofactor_prime;
use crate::diffset::is_difference_set;
use crate::enumerate::SRingCensus;
use crate::error::{Error, Result};
use crate::groups::{make_cyclic, GroupSubset};
use crate::permgrp::{PermGroup, Permutation};
use crate::schurity::{automorphism_group, isomorphic_to_sring_over_cyclic, ColorGraph, Tri};
use crate::sring::{cyclotomic, from_difference_set, SRing};

/// The five statements of the classification evaluated on one S-ring over
/// `D_2p`, with the data that backs each positive answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationVerdict {
    pub p: usize,
    pub rank: usize,
    /// (1) rank 2.
    pub rank_two: Tri,
    /// (2) the orbits of some group of automorphisms are the basic sets.
    pub cyclotomic: Tri,
    /// (3) `Aut(A)` has a regular cyclic subgroup.
    pub cyclic_isomorphic: Tri,
    /// (4) wreath product over the rotation subgroup.
    pub wreath: Tri,
    /// (5) `A = A(D)` for a nontrivial difference set `D` and
    /// `p` is 13 or a safe prime.
    pub difference_set: Tri,
    /// Generators of the group of Cayley automorphisms, as image lists.
    pub cyclotomic_witness: Option<Vec<Vec<usize>>>,
    /// Image list of a color-preserving `2p`-cycle.
    pub cycle_witness: Option<Vec<usize>>,
    /// `D` as exponents of the rotation `a`, with its parameters.
    pub difference_set_witness: Option<(Vec<usize>, (usize, usize, usize))>,
    /// Size of the nontrivial basic sets inside the rotations, when those
    /// form an A-subgroup.
    pub m: Option<usize>,
}

impl ClassificationVerdict {
    fn flags(&self) -> [Tri; 5] {
        [self.rank_two, self.cyclotomic, self.cyclic_isomorphic, self.wreath, self.difference_set]
    }

    /// `Yes` if some statement holds, `No` if all are refuted.
    pub fn holds(&self) -> Tri {
        let flags = self.flags();
        if flags.contains(&Tri::Yes) {
            Tri::Yes
        } else if flags.contains(&Tri::Unknown) {
            Tri::Unknown
        } else {
            Tri::No
        }
    }

    /// Compact flag vector such as `1:n 2:y 3:y 4:n 5:n`.
    pub fn flag_string(&self) -> String {
        self.flags()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let c = match t {
                    Tri::Yes => 'y',
                    Tri::No => 'n',
                    Tri::Unknown => '?',
                };
                format!("{}:{c}", i + 1)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Rebuilds every positive statement from its witness and compares
    /// with `a`.
    pub fn revalidate(&self, a: &SRing) -> Result<bool> {
        let group = a.group();
        if (self.rank_two == Tri::Yes) != (a.rank() == 2) {
            return Ok(false);
        }
        if self.cyclotomic == Tri::Yes {
            let Some(gens) = &self.cyclotomic_witness else { return Ok(false) };
            let gens = gens.iter().map(|g| Permutation::new(g.clone())).collect::<Result<Vec<_>>>()?;
            let k = PermGroup::from_generators(group.order(), gens)?;
            if cyclotomic(group.clone(), &k)? != *a {
                return Ok(false);
            }
        }
        if self.cyclic_isomorphic == Tri::Yes {
            let Some(images) = &self.cycle_witness else { return Ok(false) };
            let cycle = Permutation::new(images.clone())?;
            if !cycle.is_full_cycle() || !ColorGraph::new(a).is_automorphism(&cycle) {
                return Ok(false);
            }
        }
        if self.difference_set == Tri::Yes {
            let Some((d, _)) = &self.difference_set_witness else { return Ok(false) };
            if from_difference_set(group.clone(), d.iter().copied().collect())? != *a {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether statement (5) may hold at `p`.
fn five_allowed(p: usize) -> bool {
    p == 13 || cofactor_prime(p as u64, 2).is_some()
}

pub fn classify_sring(a: &SRing, budgets: &Budgets) -> Result<ClassificationVerdict> {
    let group = a.group();
    let p = group
        .dihedral_p()
        .ok_or_else(|| Error::InvalidArgument("classification needs a dihedral group".into()))?;
    let rotations = GroupSubset::full(p);

    let cayley = a.cayley_automorphisms();
    let cyclotomic = cayley.orbits().len() == a.rank();
    let cyclotomic_witness =
        cyclotomic.then(|| cayley.generators().iter().map(|g| g.images().iter().map(|&x| x as usize).collect()).collect());

    let (cyclic_isomorphic, cycle) = match automorphism_group(a, budgets.search) {
        Ok(aut) => isomorphic_to_sring_over_cyclic(a, &aut, budgets.elements),
        Err(Error::BudgetExceeded { .. }) => (Tri::Unknown, None),
        Err(e) => return Err(e),
    };

    let a_set = a.is_a_set(rotations);
    let wreath = a_set && a.is_wreath_over(rotations)?;
    let m = a_set.then(|| a.class(a.class_of(1)).len());

    let difference_set_witness = match_difference_set(a, p)?;
    let difference_set = difference_set_witness.is_some() && five_allowed(p);

    Ok(ClassificationVerdict {
        p,
        rank: a.rank(),
        rank_two: Tri::from_bool(a.rank() == 2),
        cyclotomic: Tri::from_bool(cyclotomic),
        cyclic_isomorphic,
        wreath: Tri::from_bool(wreath),
        difference_set: Tri::from_bool(difference_set),
        cyclotomic_witness,
        cycle_witness: cycle.map(|c| c.images().iter().map(|&x| x as usize).collect()),
        difference_set_witness,
        m,
    })
}

/// Matches the partition `{e}, A#, bD, b(A \ D)` and checks that `D` is a
/// nontrivial difference set in `A`. Of the two classes in `Ab` the one
/// giving the smaller `D` is reported.
fn match_difference_set(a: &SRing, p: usize) -> Result<Option<(Vec<usize>, (usize, usize, usize))>> {
    let rotations = GroupSubset::full(p);
    let nonidentity = rotations.difference(GroupSubset::singleton(0));
    if a.rank() != 4 || !a.classes().contains(&nonidentity) {
        return Ok(None);
    }
    let outer: Vec<GroupSubset> = a.classes().iter().copied().filter(|c| c.is_disjoint(rotations)).collect();
    let Some(&y) = outer.iter().min_by_key(|c| (c.len(), c.least())) else { return Ok(None) };
    // a^i b = b a^(-i)
    let d: GroupSubset = y.iter().map(|x| (p - (x - p)) % p).collect();
    let cyclic = Arc::new(make_cyclic(p)?);
    Ok(is_difference_set(&cyclic, d)?.filter(|r| !r.is_trivial()).map(|r| (r.elements(), r.parameters())))
}

/// Verdicts for every census entry, in census order.
pub fn classify_census(census: &SRingCensus, budgets: &Budgets) -> Result<Vec<ClassificationVerdict>> {
    census.entries.par_iter().map(|e| classify_sring(&e.sring, budgets)).collect()
}
