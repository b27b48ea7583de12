use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::diffset::paley_set;
use crate::enumerate::enumerate_srings;
use crate::groups::{all_automorphisms, make_dihedral, GroupSubset};
use crate::permgrp::PermGroup;
use crate::schurity::Tri;
use crate::sring::{from_difference_set, SRing};

fn d(p: usize) -> Arc<crate::groups::FiniteGroup> {
    Arc::new(make_dihedral(p).unwrap())
}

/// Statement (2) by brute force: some subgroup of `Aut(G)` generated by at
/// most two elements has the basic sets as orbits. Every subgroup of
/// `Aut(D_2p) = AGL(1, p)` is 2-generated.
fn cyclotomic_by_scan(a: &SRing) -> bool {
    let g = a.group();
    let auts: Vec<_> = all_automorphisms(g).unwrap().into_iter().map(|x| x.into_permutation()).collect();
    let classes: BTreeSet<GroupSubset> = a.classes().iter().copied().collect();
    auts.iter().enumerate().any(|(i, x)| {
        auts[i..].iter().any(|y| {
            let k = PermGroup::from_generators(g.order(), vec![x.clone(), y.clone()]).unwrap();
            let orbits: BTreeSet<GroupSubset> = k.orbits().iter().map(|o| o.iter().copied().collect()).collect();
            orbits == classes
        })
    })
}

#[test]
fn classify_examples() {
    let b = Budgets::default();
    let g = d(13);
    let v = classify_sring(&SRing::rank_two(g.clone()), &b).unwrap();
    assert_eq!(v.rank_two, Tri::Yes);
    assert!(v.revalidate(&SRing::rank_two(g.clone())).unwrap());

    let discrete = SRing::discrete(g.clone());
    let v = classify_sring(&discrete, &b).unwrap();
    assert_eq!(v.cyclotomic, Tri::Yes);
    assert!(v.cyclotomic_witness.as_ref().unwrap().iter().all(|g| g.iter().enumerate().all(|(i, &x)| i == x)));
    assert!(v.revalidate(&discrete).unwrap());

    let singer = from_difference_set(g.clone(), [0, 1, 3, 9].into_iter().collect()).unwrap();
    let v = classify_sring(&singer, &b).unwrap();
    assert_eq!(v.difference_set, Tri::Yes);
    assert_eq!(v.difference_set_witness.as_ref().unwrap().1, (13, 4, 1));
    assert_eq!(v.m, Some(12));
    assert_eq!(v.holds(), Tri::Yes);
    assert!(v.revalidate(&singer).unwrap());

    assert!(classify_sring(&SRing::rank_two(Arc::new(crate::groups::make_cyclic(6).unwrap())), &b).is_err());
}

#[test]
fn difference_set_statement_needs_allowed_prime() {
    // 19 is neither 13 nor a safe prime, so A(Paley) does not count for (5)
    let b = Budgets::default();
    let paley = paley_set(19).unwrap();
    let a = from_difference_set(d(19), paley.set()).unwrap();
    let v = classify_sring(&a, &b).unwrap();
    assert!(v.difference_set_witness.is_some());
    assert_eq!(v.difference_set, Tri::No);
}

#[test]
fn cyclotomic_routes_agree() {
    for p in [3, 5, 7] {
        let census = enumerate_srings(d(p)).unwrap();
        for v in classify_census(&census, &Budgets::default()).unwrap().iter().zip(&census.entries) {
            assert_eq!(v.0.cyclotomic.is_yes(), cyclotomic_by_scan(&v.1.sring), "{}", v.1.sring.to_line());
        }
    }
}

#[test]
fn classification_small() {
    let b = Budgets::default();
    let r = verify_classification(5, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    assert!(r.instances.iter().all(|i| !i.detail.contains("5:y")));

    let census = enumerate_srings(d(7)).unwrap();
    let verdicts = classify_census(&census, &b).unwrap();
    let params: BTreeSet<_> = verdicts.iter().filter(|v| v.difference_set.is_yes()).map(|v| v.difference_set_witness.as_ref().unwrap().1).collect();
    assert_eq!(params, BTreeSet::from([(7, 3, 1)]));
    assert!(verify_classification(7, &b).unwrap().is_pass());

    assert!(verify_classification(19, &b).is_err());
    assert!(verify_classification(9, &b).is_err());
}

#[test]
fn evidence_revalidates() {
    let b = Budgets::default();
    for p in [3, 5, 7] {
        let census = enumerate_srings(d(p)).unwrap();
        for (v, e) in classify_census(&census, &b).unwrap().iter().zip(&census.entries) {
            assert!(v.revalidate(&e.sring).unwrap());
            if let Some(c) = &v.cycle_witness {
                assert_eq!(c.len(), 2 * p);
            }
        }
    }
}

#[test]
fn main_theorems_small() {
    let b = Budgets::default();
    for p in [3, 5] {
        let r = verify_main1(p, &b).unwrap();
        assert!(r.is_pass(), "{}", r.to_table());
    }
    assert!(verify_main1(7, &b).is_err());
    let r = verify_main2(17, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    let r = verify_main2(13, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    assert!(r.instances.iter().any(|i| i.label == "singer"));
    assert!(verify_main2(11, &b).is_err());
}

#[test]
fn lemmas() {
    let b = Budgets::default();
    let r = verify_section4_lemmas(5, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    // every lemma is either counted or reported vacuous
    assert_eq!(r.notes.iter().filter(|n| n.contains("checked") || n.contains("vacuous")).count(), 7);
    let r = verify_section4_lemmas(3, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    assert!(r.notes.iter().any(|n| n.contains("vacuous")));
    let r = verify_section4_lemmas(7, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    assert!(r.instances.iter().any(|i| i.label.starts_with("primepower")));
}

#[test]
fn nonschur_rejects_bad_t() {
    let b = Budgets::default();
    assert!(verify_nonschur_family(4, &b).is_err());
    assert!(verify_nonschur_family(1, &b).is_err());
    // t = 5: 101 and 109 are both prime, above the schurity cap
    let r = verify_nonschur_family(5, &b).unwrap();
    assert!(r.is_pass(), "{}", r.to_table());
    assert_eq!(r.instances.len(), 3);
    assert!(r.instances.iter().all(|i| i.label == "p=3373" || i.detail.contains("partial")));
}

#[test]
fn report_tallies() {
    let mut r = TheoremReport::new("x", 1);
    r.push("a", Status::Pass, "");
    r.push("b", Status::FailToVerify, "");
    let r = r.finish(std::time::Duration::from_millis(3));
    assert_eq!((r.passed, r.failed, r.unknown), (1, 0, 1));
    assert_eq!(r.status, Status::FailToVerify);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["status"], "FAIL-TO-VERIFY");
    assert_eq!(json["instances"].as_array().unwrap().len(), 2);
    assert!(r.to_table().contains("FAIL-TO-VERIFY"));

    let empty = TheoremReport::new("y", 1).finish(Default::default());
    assert_eq!(empty.status, Status::FailToVerify);
}
