use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use schur_core::enumerate::{enumerate_srings, SRingCensus};
use schur_core::groups::{make_cyclic, make_dihedral, quotient_group, FiniteGroup, GroupSubset};
use schur_core::schurity::{automorphism_group, is_schurian, schurity_from, Tri, DEFAULT_SEARCH_BUDGET};
use schur_core::sring::{check_identities, quotient_sring, sring_closure, SRing};
use schur_core::verify::{classify_census, Budgets};

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(make_cyclic(n).unwrap())
}

fn dihedral(p: usize) -> Arc<FiniteGroup> {
    Arc::new(make_dihedral(p).unwrap())
}

fn schurian(a: &SRing) -> bool {
    is_schurian(a, DEFAULT_SEARCH_BUDGET).unwrap().schurian == Tri::Yes
}

fn censuses() -> &'static [SRingCensus] {
    static CENSUSES: OnceLock<Vec<SRingCensus>> = OnceLock::new();
    CENSUSES.get_or_init(|| {
        [cyclic(8), cyclic(12), dihedral(5), dihedral(7)]
            .into_iter()
            .map(|g| enumerate_srings(g).unwrap())
            .collect()
    })
}

#[test]
fn prime_order_srings_are_cyclotomic_and_schurian() {
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23] {
        for a in enumerate_srings(cyclic(p)).unwrap().srings() {
            assert_eq!(a.cayley_automorphisms().orbits().len(), a.rank(), "C_{p}: {}", a.to_line());
            assert!(schurian(a), "C_{p}: {}", a.to_line());
        }
    }
}

#[test]
fn cyclotomic_implies_schurian() {
    for census in censuses() {
        let g = census.entries[0].sring.group();
        if g.dihedral_p().is_none() {
            continue;
        }
        for (v, e) in classify_census(census, &Budgets::default()).unwrap().iter().zip(&census.entries) {
            if v.cyclotomic == Tri::Yes {
                assert!(schurian(&e.sring), "{}", e.sring.to_line());
            }
        }
    }
}

/// A wreath product over a normal A-subgroup `H` is schurian exactly when
/// `A_H` and `A_{G/H}` are.
#[test]
fn wreath_schurity_follows_operands() {
    let mut checked = 0;
    for census in censuses() {
        let g = census.entries[0].sring.group().clone();
        let trivial = g.trivial_subgroup();
        let whole = g.whole();
        for a in census.srings() {
            for h in a.a_subgroups() {
                if !h.normal || h.order() == 1 || h.order() == g.order() || !a.is_wreath_over(h.elements).unwrap() {
                    continue;
                }
                let lower = quotient_group(&g, &h, &trivial).unwrap();
                let upper = quotient_group(&g, &whole, &h).unwrap();
                let a_h = quotient_sring(a, &lower).unwrap();
                let a_q = quotient_sring(a, &upper).unwrap();
                assert_eq!(schurian(a), schurian(&a_h) && schurian(&a_q), "{}", a.to_line());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn stabilizer_orbits_refine_basic_sets() {
    for census in censuses() {
        for a in census.srings() {
            let aut = automorphism_group(a, DEFAULT_SEARCH_BUDGET).unwrap();
            for orbit in aut.stabilizer.orbits() {
                let class = a.class(a.class_of(orbit[0]));
                assert!(orbit.iter().all(|&x| class.contains(x)), "{}", a.to_line());
            }
            let v = schurity_from(a, &aut);
            assert_eq!(v.schurian == Tri::Yes, aut.stabilizer.orbits().len() == a.rank());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_lands_in_census(which in 0usize..4, seeds in prop::collection::vec(any::<u32>(), 1..3)) {
        let census = &censuses()[which];
        let g = census.entries[0].sring.group().clone();
        let n = g.order();
        let seeds: Vec<GroupSubset> = seeds
            .iter()
            .map(|&bits| (0..n).filter(|&x| x > 0 && bits >> (x % 32) & 1 == 1).collect())
            .filter(|s: &GroupSubset| !s.is_empty())
            .collect();
        let a = sring_closure(g, &seeds);
        prop_assert!(check_identities(&a.structure_constants()).passed());
        for s in &seeds {
            prop_assert!(a.is_a_set(*s));
        }
        let lines: BTreeSet<String> = census.srings().map(|x| x.to_line()).collect();
        prop_assert!(lines.contains(&a.to_line()));
    }
}
