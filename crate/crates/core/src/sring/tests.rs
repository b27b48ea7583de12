use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::groups::{automorphism_group, make_cyclic, make_dihedral, quotient_group, GroupSpec};
use crate::permgrp::{right_regular_representation, Permutation};

fn cyc(n: usize) -> Arc<FiniteGroup> {
    Arc::new(make_cyclic(n).unwrap())
}

fn dih(p: usize) -> Arc<FiniteGroup> {
    Arc::new(make_dihedral(p).unwrap())
}

fn set(xs: &[usize]) -> GroupSubset {
    xs.iter().copied().collect()
}

/// `x -> t x mod n` on `Z_n`.
fn unit_map(n: usize, t: usize) -> Permutation {
    Permutation::new((0..n).map(|x| x * t % n).collect()).unwrap()
}

/// `a -> a^t, b -> b` on the dihedral group of order `2p`.
fn dihedral_unit_map(p: usize, t: usize) -> Permutation {
    Permutation::new((0..2 * p).map(|x| if x < p { x * t % p } else { p + (x - p) * t % p }).collect()).unwrap()
}

const SINGER: [usize; 4] = [0, 1, 3, 9];

#[test]
fn rank_two_and_discrete_verify() {
    for g in [cyc(1), cyc(2), cyc(7), dih(3), dih(13)] {
        let n = g.order();
        let r2 = verify_sring(g.clone(), SRing::rank_two(g.clone()).classes()).unwrap();
        assert_eq!(r2.rank(), if n == 1 { 1 } else { 2 });
        let zg = verify_sring(g.clone(), SRing::discrete(g.clone()).classes()).unwrap();
        assert_eq!(zg.rank(), n);
    }
}

#[test]
fn rejects_non_constant_counts() {
    let g = cyc(5);
    let err = verify_sring(g, &[set(&[0]), set(&[1, 2]), set(&[3, 4])]).unwrap_err();
    // a*a = a^2 has one factorization through {a,a^2}x{a,a^2}; a has none
    assert_eq!(
        err,
        Error::Axiom(AxiomViolation::NonConstantCount { x: 1, y: 1, class: 1, z: 1, w: 2, count_z: 0, count_w: 1 })
    );
}

#[test]
fn rejects_other_axioms() {
    let g = cyc(4);
    assert_eq!(
        verify_sring(g.clone(), &[set(&[0, 2]), set(&[1, 3])]).unwrap_err(),
        Error::Axiom(AxiomViolation::IdentityNotSingleton)
    );
    assert_eq!(
        verify_sring(g.clone(), &[set(&[0]), set(&[1, 2]), set(&[3])]).unwrap_err(),
        Error::Axiom(AxiomViolation::InverseNotClass { class: 1 })
    );
    assert!(matches!(
        verify_sring(g, &[set(&[0]), set(&[1, 2]), set(&[2, 3])]).unwrap_err(),
        Error::Axiom(AxiomViolation::NotAPartition(2, 2))
    ));
}

#[test]
fn structure_constants_examples() {
    for p in [5usize, 7, 13] {
        let a = SRing::rank_two(cyc(p));
        let sc = a.structure_constants();
        // count (x, y) with x, y nonzero and x + y = 1
        let direct = (1..p).filter(|&x| (1 + p - x) % p != 0).count() as u32;
        assert_eq!(sc.get(1, 1, 1), direct);
        assert_eq!(direct as usize, p - 2);
        let total: u64 = (0..2).map(|z| sc.get(1, 1, z) as u64 * sc.sizes()[z] as u64).sum();
        assert_eq!(total, ((p - 1) * (p - 1)) as u64);
    }
    let a = sring_closure(dih(13), &[from_difference_set(dih(13), set(&SINGER)).unwrap().class(2)]);
    let sc = a.structure_constants();
    for y in 0..a.rank() {
        for z in 0..a.rank() {
            assert_eq!(sc.get(0, y, z), (y == z) as u32);
        }
    }
    let zg = SRing::discrete(dih(5));
    let sc = zg.structure_constants();
    for x in 0..10 {
        for y in 0..10 {
            assert!(sc.row(x, y).iter().all(|&(_, c)| c == 1));
            assert_eq!(sc.row(x, y).len(), 1);
        }
    }
}

#[test]
fn identities_and_mutation() {
    let a = from_difference_set(dih(13), set(&SINGER)).unwrap();
    let sc = a.structure_constants();
    let report = check_identities(&sc);
    assert!(report.passed());
    assert_eq!(report.checks, 4 * 4 * 4 + 2 * 4 * 4);
    let bad = sc.with_entry(2, 3, 1, sc.get(2, 3, 1) + 1);
    assert!(matches!(check_identities(&bad).violation, Some(IdentityViolation::RowSum { x: 2, z: 1, .. })));
    let sc5 = SRing::rank_two(cyc(5)).structure_constants();
    let sum: u32 = (0..2).map(|z| sc5.get(1, 1, z) * sc5.sizes()[z]).sum();
    assert_eq!(sum, 16);
}

#[test]
fn closure_examples() {
    for p in [3usize, 5, 7, 13] {
        assert_eq!(sring_closure(cyc(p), &[]).rank(), 2);
    }
    for n in [1usize, 6, 12] {
        let g = cyc(n);
        if n > 1 {
            assert_eq!(sring_closure(g.clone(), &[set(&[1])]), SRing::discrete(g));
        }
    }
    let g = dih(13);
    let ad = from_difference_set(g.clone(), set(&SINGER)).unwrap();
    let bd = ad.class(1);
    assert_eq!(bd.len(), 4);
    let closed = sring_closure(g, &[bd]);
    assert_eq!(closed, ad);
    assert_eq!(closed.classes().iter().map(|c| c.len()).collect::<Vec<_>>(), vec![1, 4, 9, 12]);
}

#[test]
fn a_subgroups_radical_primitivity() {
    let g = dih(13);
    let r2 = SRing::rank_two(g.clone());
    assert_eq!(r2.a_subgroups().len(), 2);
    assert!(r2.is_primitive());
    let ad = from_difference_set(g.clone(), set(&SINGER)).unwrap();
    let subs: Vec<usize> = ad.a_subgroups().iter().map(|h| h.order()).collect();
    assert_eq!(subs, vec![1, 13, 26]);
    assert!(!ad.is_primitive());
    assert!(!ad.is_wreath_over(GroupSubset::full(13)).unwrap());
    assert_eq!(ad.radical(ad.class(2)).unwrap().order(), 1);
    assert_eq!(ad.radical(set(&[1])), Err(Error::NotAnASet));
    assert!(SRing::discrete(cyc(13)).is_primitive());
    assert_eq!(ad.generated_subgroup(ad.class(2)).unwrap().order(), 26);
    assert_eq!(ad.generated_subgroup(ad.class(3)).unwrap().order(), 13);
    assert_eq!(ad.generated_subgroup(ad.class(3).union(ad.class(0))).unwrap().order(), 13);
}

fn rank_two_wreath(p: usize) -> SRing {
    let g = dih(p);
    let h = g.rotation_subgroup().unwrap();
    let lower = quotient_group(&g, &h, &g.trivial_subgroup()).unwrap();
    let upper = quotient_group(&g, &g.whole(), &h).unwrap();
    let a_h = SRing::rank_two(lower.group.clone());
    let a_q = SRing::rank_two(upper.group.clone());
    wreath(g, &lower, &a_h, &upper, &a_q).unwrap()
}

#[test]
fn wreath_products() {
    for p in [3usize, 5, 13] {
        let w = rank_two_wreath(p);
        assert_eq!(w.rank(), 3);
        assert_eq!(w.classes()[1].len(), p - 1);
        assert_eq!(w.classes()[2], GroupSubset::full(2 * p).difference(GroupSubset::full(p)));
        let a = GroupSubset::full(p);
        assert!(w.is_wreath_over(a).unwrap());
        assert_eq!(w.radical(w.class(2)).unwrap().elements, a);
        // quotient by H gives back the upper operand
        let g = w.group().clone();
        let upper = quotient_group(&g, &g.whole(), &g.rotation_subgroup().unwrap()).unwrap();
        assert_eq!(quotient_sring(&w, &upper).unwrap(), SRing::rank_two(upper.group.clone()));
    }
    // degenerate H = {e}: a copy of the upper operand
    let g = cyc(6);
    let e = g.trivial_subgroup();
    let lower = quotient_group(&g, &e, &e).unwrap();
    let upper = quotient_group(&g, &g.whole(), &e).unwrap();
    let a_q = sring_closure(upper.group.clone(), &[set(&[2, 4])]);
    let w = wreath(g.clone(), &lower, &SRing::discrete(lower.group.clone()), &upper, &a_q).unwrap();
    assert_eq!(w.to_line(), a_q.to_line());
    // degenerate H = G: a copy of the lower operand
    let lower = quotient_group(&g, &g.whole(), &e).unwrap();
    let upper = quotient_group(&g, &g.whole(), &g.whole()).unwrap();
    let a_h = SRing::rank_two(lower.group.clone());
    let w = wreath(g.clone(), &lower, &a_h, &upper, &SRing::discrete(upper.group.clone())).unwrap();
    assert_eq!(w, SRing::rank_two(g));
}

#[test]
fn quotient_examples() {
    let g = dih(7);
    let ad = from_difference_set(g.clone(), set(&[1, 2, 4])).unwrap();
    let upper = quotient_group(&g, &g.whole(), &g.rotation_subgroup().unwrap()).unwrap();
    let q = quotient_sring(&ad, &upper).unwrap();
    assert_eq!(q.group().spec(), GroupSpec::Cyclic(2));
    assert_eq!(q.rank(), 2);
    let e = g.trivial_subgroup();
    let id = quotient_group(&g, &g.whole(), &e).unwrap();
    assert_eq!(quotient_sring(&SRing::discrete(g.clone()), &id).unwrap().rank(), 14);
    let c13 = cyc(13);
    let k = PermGroup::from_generators(13, vec![unit_map(13, 3)]).unwrap();
    let a = cyclotomic(c13.clone(), &k).unwrap();
    let s = quotient_group(&c13, &c13.whole(), &c13.whole()).unwrap();
    let q = quotient_sring(&a, &s).unwrap();
    assert_eq!((q.group().order(), q.rank()), (1, 1));
    // B must be an A-subgroup
    let w = SRing::rank_two(g.clone());
    assert!(matches!(quotient_sring(&w, &upper), Err(Error::NotASection(_))));
}

#[test]
fn cyclotomic_examples() {
    let g = cyc(13);
    assert_eq!(cyclotomic(g.clone(), &PermGroup::trivial(13)).unwrap(), SRing::discrete(g.clone()));
    assert_eq!(cyclotomic(g.clone(), &automorphism_group(&g).unwrap()).unwrap().rank(), 2);
    let k = PermGroup::from_generators(13, vec![unit_map(13, 3)]).unwrap();
    let a = cyclotomic(g.clone(), &k).unwrap();
    let expect = vec![set(&[0]), set(&[1, 3, 9]), set(&[2, 5, 6]), set(&[4, 10, 12]), set(&[7, 8, 11])];
    assert_eq!(a.classes(), &expect[..]);
    let not_aut = Permutation::cycle(13, &[1, 2]).unwrap();
    let bad = PermGroup::from_generators(13, vec![not_aut]).unwrap();
    assert!(matches!(cyclotomic(g, &bad), Err(Error::NotAnAutomorphism { .. })));
}

#[test]
fn schur_construction() {
    let g = dih(5);
    assert_eq!(from_perm_group(g.clone(), &PermGroup::symmetric(10)).unwrap().rank(), 2);
    let gr = right_regular_representation(&g);
    assert_eq!(from_perm_group(g.clone(), &gr).unwrap(), SRing::discrete(g.clone()));
    for t in [2usize, 4] {
        let k0 = PermGroup::from_generators(10, vec![dihedral_unit_map(5, t)]).unwrap();
        let mut gens = gr.generators().to_vec();
        gens.extend(k0.generators().iter().cloned());
        let k = PermGroup::from_generators(10, gens).unwrap();
        assert_eq!(from_perm_group(g.clone(), &k).unwrap(), cyclotomic(g.clone(), &k0).unwrap());
    }
    let k0 = PermGroup::from_generators(10, vec![dihedral_unit_map(5, 2)]).unwrap();
    assert_eq!(from_perm_group(g, &k0), Err(Error::MissingRegular));
}

#[test]
fn difference_set_srings() {
    let g = dih(13);
    let ad = from_difference_set(g.clone(), set(&SINGER)).unwrap();
    let sizes: Vec<usize> = ad.classes().iter().map(|c| c.len()).collect();
    assert_eq!(sizes, vec![1, 4, 9, 12]);
    let comp = GroupSubset::full(13).difference(set(&SINGER));
    assert_eq!(from_difference_set(g.clone(), comp).unwrap(), ad);
    assert_eq!(from_difference_set(g.clone(), set(&[0, 1, 2, 3])), Err(Error::NotADifferenceSet));
    let paley: Vec<usize> = (1..11).map(|x| x * x % 11).collect();
    let a11 = from_difference_set(dih(11), set(&paley)).unwrap();
    let sizes: Vec<usize> = a11.classes().iter().map(|c| c.len()).collect();
    assert_eq!(sizes, vec![1, 5, 6, 10]);
}

#[test]
fn symmetry_and_cayley_automorphisms() {
    assert!(SRing::rank_two(dih(7)).is_symmetric());
    assert!(!SRing::discrete(cyc(3)).is_symmetric());
    let g = dih(13);
    let ad = from_difference_set(g.clone(), set(&SINGER)).unwrap();
    let cay = ad.cayley_automorphisms();
    // 3 * {0,1,3,9} = {0,3,9,1}
    assert!(cay.contains(&dihedral_unit_map(13, 3)));
    assert!(!cay.contains(&dihedral_unit_map(13, 2)));
    let k = PermGroup::from_generators(13, vec![unit_map(13, 3)]).unwrap();
    let a = cyclotomic(cyc(13), &k).unwrap();
    assert!(a.cayley_automorphisms().contains(&unit_map(13, 3)));
    assert_eq!(*a.cayley_automorphisms().order(), 3u32.into());
}

#[test]
fn serialization_round_trip() {
    let ad = from_difference_set(dih(13), set(&SINGER)).unwrap();
    let s = ad.to_serialized();
    assert_eq!(s.group, "D:26");
    assert_eq!(SRing::from_serialized(&s).unwrap(), ad);
    let json = serde_json::to_string(&s).unwrap();
    let back: SerializedSRing = serde_json::from_str(&json).unwrap();
    assert_eq!(back, s);
}

fn arb_seeds(n: usize) -> impl Strategy<Value = Vec<GroupSubset>> {
    proptest::collection::vec(proptest::collection::btree_set(0..n, 1..4), 0..3)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_monotone(seeds in arb_seeds(14), extra in proptest::collection::btree_set(0usize..14, 1..3)) {
        let g = dih(7);
        let a = sring_closure(g.clone(), &seeds);
        prop_assert_eq!(verify_sring(g.clone(), a.classes()).unwrap(), a.clone());
        prop_assert!(check_identities(&a.structure_constants()).passed());
        prop_assert_eq!(sring_closure(g.clone(), a.classes()), a.clone());
        for &s in &seeds {
            prop_assert!(a.is_a_set(s));
        }
        let mut more = seeds.clone();
        more.push(extra.into_iter().collect());
        let b = sring_closure(g, &more);
        for c in b.classes() {
            prop_assert!(c.is_subset(a.class(a.class_of(c.least().unwrap()))));
        }
    }

    #[test]
    fn singleton_products_are_classes(seeds in arb_seeds(12)) {
        let g = cyc(12);
        let a = sring_closure(g.clone(), &seeds);
        for &x in a.classes() {
            for &y in a.classes() {
                if x.len() == 1 || y.len() == 1 {
                    let xy = g.product_set(x, y);
                    prop_assert!(a.classes().contains(&xy));
                }
            }
        }
    }
}
