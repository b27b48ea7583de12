use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn rec(v: usize, d: &[usize]) -> DifferenceSetRecord {
    cyclic_difference_set(v, d).unwrap().unwrap()
}

/// Every nontrivial difference set in `C_p`, by testing all subsets.
fn brute_force(p: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << p {
        let k = mask.count_ones() as usize;
        if k < 2 || k + 2 > p {
            continue;
        }
        let d: Vec<usize> = (0..p).filter(|&x| mask >> x & 1 == 1).collect();
        let mut counts = vec![0usize; p];
        for &x in &d {
            for &y in &d {
                if x != y {
                    counts[(y + p - x) % p] += 1;
                }
            }
        }
        if counts[1..].iter().all(|&c| c == counts[1]) {
            out.insert(d);
        }
    }
    out
}

#[test]
fn recognizes_difference_sets() {
    assert_eq!(rec(13, &[0, 1, 3, 9]).parameters(), (13, 4, 1));
    assert_eq!(rec(11, &[1, 3, 4, 5, 9]).parameters(), (11, 5, 2));
    assert!(cyclic_difference_set(13, &[0, 1, 2, 4]).unwrap().is_none());
    for d in [vec![], vec![5], (0..13).collect::<Vec<_>>(), (1..13).collect()] {
        let r = rec(13, &d);
        assert!(r.is_trivial());
        assert_eq!(r.k * r.k.saturating_sub(1), 12 * r.lambda);
    }
    let d6 = std::sync::Arc::new(crate::groups::make_dihedral(3).unwrap());
    assert_eq!(is_difference_set(&d6, GroupSubset::singleton(0)).unwrap_err(), Error::NonAbelian);
}

#[test]
fn complements() {
    let r = rec(13, &[0, 1, 3, 9]);
    let c = complement(&r);
    assert_eq!(c.parameters(), (13, 9, 6));
    assert_eq!(cyclic_difference_set(13, &c.elements()).unwrap().unwrap().parameters(), (13, 9, 6));
    assert_eq!(complement(&c), r);
    assert_eq!(complement(&rec(11, &[1, 3, 4, 5, 9])).parameters(), (11, 6, 3));
}

#[test]
fn feasible() {
    assert!(feasible_parameters(17).is_empty());
    assert_eq!(feasible_parameters(13), [(4, 1), (9, 6)]);
    assert_eq!(feasible_parameters(11), [(5, 2), (6, 3)]);
    assert_eq!(feasible_parameters(29), [(8, 2), (21, 15)]);
    // composite orders are unfiltered
    assert_eq!(feasible_parameters(16), [(6, 2), (10, 6)]);
}

#[test]
fn multipliers() {
    let r = rec(13, &[0, 1, 3, 9]);
    assert_eq!(multiplier_test(&r, 1).unwrap(), Some(0));
    assert_eq!(multiplier_test(&r, 3).unwrap(), Some(0));
    assert_eq!(multiplier_test(&r, 12).unwrap(), None);
    assert!(multiplier_test(&r, 13).is_err());
    let m = multiplier_group(&r).unwrap();
    assert_eq!(m.multipliers(), [1, 3, 9]);
    assert_eq!(invariant_translate(&r, &m).unwrap(), r.set());
    let shifted = rec(13, &[5, 6, 8, 1]);
    assert_eq!(invariant_translate(&shifted, &multiplier_group(&shifted).unwrap()).unwrap(), r.set());

    let paley = paley_set(11).unwrap();
    let m = multiplier_group(&paley).unwrap();
    assert!(m.multipliers().contains(&3));
    assert_eq!(invariant_translate(&paley, &m).unwrap(), paley.set());

    for p in [7, 11, 13, 19, 23] {
        for r in search_exhaustive(p, SearchMode::UpToTranslation).unwrap() {
            assert_eq!(multiplier_test(&r, p - 1).unwrap(), None, "{r:?}");
        }
    }
}

#[test]
fn exhaustive_matches_brute_force() {
    for p in [3, 5, 7, 11, 13, 17, 19] {
        let found: BTreeSet<Vec<usize>> = search_exhaustive(p, SearchMode::All).unwrap().iter().map(|r| r.elements()).collect();
        assert_eq!(found, brute_force(p), "p = {p}");
    }
}

#[test]
fn up_to_translation() {
    let classes = search_exhaustive(13, SearchMode::UpToTranslation).unwrap();
    let all = search_exhaustive(13, SearchMode::All).unwrap();
    assert_eq!(classes.len() * 13, all.len());
    assert!(classes.iter().all(|r| r.parameters() == (13, 4, 1) || r.parameters() == (13, 9, 6)));
    assert!(classes.iter().any(|r| r.elements() == [0, 1, 3, 9]));
    assert_eq!(translation_classes(&all), translation_classes(&classes));
}

#[test]
fn pruned_matches_exhaustive() {
    for p in [13, 29] {
        let pruned = search_multiplier_pruned(p).unwrap();
        let full = search_exhaustive(p, SearchMode::UpToTranslation).unwrap();
        assert_eq!(translation_classes(&pruned), translation_classes(&full), "p = {p}");
    }
    assert!(search_multiplier_pruned(29).unwrap().is_empty());
    assert!(search_multiplier_pruned(17).is_err());
    assert!(search_multiplier_pruned(11).is_err());
}

#[test]
fn quartic_numbers() {
    // class of z by the quartic character z^f compared with root^f
    let oracle = |p: u64| -> (u64, i64) {
        let f = (p - 1) / 4;
        let g = arith::primitive_root(p);
        let chi = |z: u64| (0..4).find(|&i| arith::pow_mod(z, f, p) == arith::pow_mod(g, f * i, p)).unwrap();
        let one_zero = (1..p - 1).filter(|&z| chi(z) == 1 && chi(z + 1) == 0).count() as u64;
        let x = (-(p as i64)..=p as i64)
            .find(|&x| x.rem_euclid(4) == 1 && (p as i64 - x * x) >= 0 && (p as i64 - x * x) % 4 == 0 && arith::is_square(((p as i64 - x * x) / 4) as u64))
            .unwrap();
        (one_zero, x)
    };
    for p in [5u64, 13, 17, 29, 37, 41, 53, 61] {
        let c = quartic_cyclotomy(p).unwrap();
        let (one_zero, x) = oracle(p);
        assert_eq!(c.number(1, 0), one_zero, "p = {p}");
        assert_eq!(c.x, x);
        assert_eq!((c.x * c.x + 4 * c.y * c.y) as u64, p);
        assert!(c.row_sums_consistent());
        if c.f() % 2 == 1 {
            assert_eq!(c.x_identity_holds(), Some(true), "p = {p}");
            assert_ne!(c.orientation, YOrientation::Neither);
        }
    }
    let c = quartic_cyclotomy(5).unwrap();
    assert!(c.classes.iter().all(|cl| cl.len() == 1));
    assert!(quartic_cyclotomy(7).is_err());
    assert!(quartic_cyclotomy(9).is_err());
}

#[test]
fn named_constructions() {
    assert_eq!(paley_set(11).unwrap().parameters(), (11, 5, 2));
    assert_eq!(paley_set(19).unwrap().parameters(), (19, 9, 4));
    assert!(paley_set(13).is_err());
    let (r, variant) = biquadratic_set(37).unwrap();
    assert_eq!(r.parameters(), (37, 9, 2));
    assert_eq!(variant, BiquadraticVariant::Residues);
    let (r, variant) = biquadratic_set(109).unwrap();
    assert_eq!(r.parameters(), (109, 28, 7));
    assert_eq!(variant, BiquadraticVariant::ResiduesWithZero);
    assert!(biquadratic_set(45).is_err());
    // t = 1: 13 = 4 + 9 gives the Singer set {0, 1, 3, 9}; 5 = 4 + 1 gives a trivial one
    assert_eq!(biquadratic_set(13).unwrap().0.elements(), [0, 1, 3, 9]);
    assert!(biquadratic_set(5).is_err());
}

fn small_sets() -> &'static [DifferenceSetRecord] {
    static FOUND: std::sync::OnceLock<Vec<DifferenceSetRecord>> = std::sync::OnceLock::new();
    FOUND.get_or_init(|| {
        [7usize, 11, 13, 19, 23, 31]
            .iter()
            .flat_map(|&p| search_exhaustive(p, SearchMode::UpToTranslation).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translates_and_multiples_stay_difference_sets(idx in 0usize..1000, t in 1usize..31, c in 0usize..31) {
        let found = small_sets();
        let r = &found[idx % found.len()];
        let v = r.v;
        prop_assume!(arith::gcd(t as u64, v as u64) == 1);
        let image: Vec<usize> = r.elements().iter().map(|&x| (x * t + c) % v).collect();
        let other = cyclic_difference_set(v, &image).unwrap();
        prop_assert_eq!(other.map(|o| o.parameters()), Some(r.parameters()));
    }
}
