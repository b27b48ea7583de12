//! Coarsest S-ring refinement of a partition.
//!
//! Each round relabels `z` by its old label, the label of `z^-1`, and the
//! multiset of label pairs `(label(x), label(x^-1 z))` over all `x`. The
//! multiset records every factorization count of `z` through a pair of
//! classes, so the fixed point is the coarsest S-ring partition below the
//! input.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::groups::{FiniteGroup, GroupSubset};

use super::SRing;

/// Precomputed tables for repeated refinement over one group.
#[derive(Clone, Debug)]
pub struct Refiner {
    group: Arc<FiniteGroup>,
    n: usize,
    /// `ldiv[z * n + x] = x^-1 z`.
    ldiv: Vec<u8>,
}

impl Refiner {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut ldiv = vec![0u8; n * n];
        for z in 0..n {
            for x in 0..n {
                ldiv[z * n + x] = group.mul(group.inv(x), z) as u8;
            }
        }
        Refiner { group, n, ldiv }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Refines `labels` in place to the coarsest S-ring partition finer than
    /// it. Returns `false` (leaving `labels` partially refined) as soon as a
    /// class meeting `protected` would split.
    pub fn refine(&self, labels: &mut [u16], protected: GroupSubset) -> bool {
        let n = self.n;
        let width = n + 3;
        let mut sig = vec![0u32; n * width];
        let mut order: Vec<usize> = (0..n).collect();
        let mut new_labels = vec![0u16; n];
        let mut classes = count_labels(labels);
        loop {
            let r = labels.iter().copied().max().unwrap_or(0) as u32 + 1;
            for z in 0..n {
                let s = &mut sig[z * width..(z + 1) * width];
                s[0] = labels[z] as u32;
                s[1] = (z != 0) as u32;
                s[2] = labels[self.group.inv(z)] as u32;
                let row = &self.ldiv[z * n..(z + 1) * n];
                for x in 0..n {
                    s[3 + x] = labels[x] as u32 * r + labels[row[x] as usize] as u32;
                }
                s[3..].sort_unstable();
            }
            order.sort_by(|&a, &b| sig[a * width..(a + 1) * width].cmp(&sig[b * width..(b + 1) * width]));
            let mut next = 0u16;
            for (i, &z) in order.iter().enumerate() {
                if i > 0 && sig[z * width..(z + 1) * width] != sig[order[i - 1] * width..order[i - 1] * width + width] {
                    next += 1;
                }
                new_labels[z] = next;
            }
            let count = next as usize + 1;
            if !protected.is_empty() && count != classes {
                let mut guarded = vec![false; r as usize];
                for z in protected.iter() {
                    guarded[labels[z] as usize] = true;
                }
                let mut rep = vec![u16::MAX; r as usize];
                for z in 0..n {
                    let old = labels[z] as usize;
                    if !guarded[old] {
                        continue;
                    }
                    if rep[old] == u16::MAX {
                        rep[old] = new_labels[z];
                    } else if rep[old] != new_labels[z] {
                        return false;
                    }
                }
            }
            labels.copy_from_slice(&new_labels);
            if count == classes {
                return true;
            }
            classes = count;
        }
    }

    /// Classes of a label vector, in canonical order.
    pub fn classes_of(&self, labels: &[u16]) -> Vec<GroupSubset> {
        let mut by_label: BTreeMap<u16, GroupSubset> = BTreeMap::new();
        for (x, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().insert(x);
        }
        let mut classes: Vec<GroupSubset> = by_label.into_values().collect();
        super::canonical_order(&mut classes);
        classes
    }

    /// The S-ring of a label vector that `refine` has stabilized.
    pub fn to_sring(&self, labels: &[u16]) -> SRing {
        SRing::from_verified_parts(self.group.clone(), self.classes_of(labels))
    }
}

fn count_labels(labels: &[u16]) -> usize {
    let mut seen = vec![false; labels.iter().copied().max().map_or(0, |m| m as usize + 1)];
    labels.iter().filter(|&&l| !std::mem::replace(&mut seen[l as usize], true)).count()
}

/// The smallest S-ring in which every seed set is a union of basic sets.
pub fn sring_closure(group: Arc<FiniteGroup>, seeds: &[GroupSubset]) -> SRing {
    let n = group.order();
    let mut sets: Vec<GroupSubset> = vec![GroupSubset::singleton(0)];
    for &s in seeds {
        sets.push(s.intersection(group.elements()));
        sets.push(group.inverse_set(s.intersection(group.elements())));
    }
    let mut atoms: BTreeMap<Vec<bool>, u16> = BTreeMap::new();
    let mut labels = vec![0u16; n];
    for (x, label) in labels.iter_mut().enumerate() {
        let key: Vec<bool> = sets.iter().map(|s| s.contains(x)).collect();
        let next = atoms.len() as u16;
        *label = *atoms.entry(key).or_insert(next);
    }
    let refiner = Refiner::new(group);
    refiner.refine(&mut labels, GroupSubset::EMPTY);
    refiner.to_sring(&labels)
}
