use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::classify::{classify_census, ClassificationVerdict};
use super::{Budgets, Status, TheoremReport};
use crate::diffset::arith::{cofactor_prime, factorize, is_fermat_prime, is_prime, is_square_free, pow_mod, projective_representations};
use crate::diffset::{
    biquadratic_set, feasible_parameters, search_exhaustive_with, search_multiplier_pruned, translation_classes, SearchMode,
};
use crate::enumerate::{enumerate_srings_with, EnumerateOptions, SRingCensus};
use crate::error::{Error, Result};
use crate::groups::{make_dihedral, GroupSubset};
use crate::schurity::{automorphism_group, is_schurian, isomorphic_to_sring_over_cyclic, Tri, SCHURITY_MAX_ORDER};
use crate::sring::{from_difference_set, SRing};

/// `p` is a Fermat prime or `rq + 1` with `q` prime and `r` in `{2, 4}`.
pub fn classification_applies(p: usize) -> bool {
    let p = p as u64;
    is_fermat_prime(p) || cofactor_prime(p, 2).is_some() || cofactor_prime(p, 4).is_some()
}

fn tri_status(t: Tri) -> Status {
    match t {
        Tri::Yes => Status::Pass,
        Tri::No => Status::Fail,
        Tri::Unknown => Status::FailToVerify,
    }
}

fn census(p: usize, budgets: &Budgets) -> Result<SRingCensus> {
    let group = Arc::new(make_dihedral(p)?);
    let opts = EnumerateOptions {
        node_budget: budgets.nodes,
        checkpoint: None,
    };
    enumerate_srings_with(group, &opts)
}

/// Runs `fill` on the census of `D_2p`, turning an exhausted enumeration
/// budget into a single unknown instance.
fn with_census(
    theorem: &str,
    p: usize,
    budgets: &Budgets,
    fill: fn(&SRingCensus, &Budgets, &mut TheoremReport) -> Result<()>,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut report = TheoremReport::new(theorem, p as u64);
    match census(p, budgets) {
        Ok(c) => {
            report.note(format!("census of D_{}: {} S-rings", 2 * p, c.len()));
            fill(&c, budgets, &mut report)?;
        }
        Err(e @ Error::BudgetExceeded { .. }) => report.push("census", Status::FailToVerify, e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report.finish(start.elapsed()))
}

fn verdict_detail(v: &ClassificationVerdict) -> String {
    let mut s = format!("rank {} {}", v.rank, v.flag_string());
    if let Some(m) = v.m {
        s += &format!(" m={m}");
    }
    if let Some((_, (k_v, k, l))) = &v.difference_set_witness {
        s += &format!(" D=({k_v},{k},{l})");
    }
    s
}

/// Every S-ring over `D_2p` satisfies one of the five statements.
pub fn verify_classification(p: usize, budgets: &Budgets) -> Result<TheoremReport> {
    if !is_prime(p as u64) || !classification_applies(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a Fermat prime or 2q+1, 4q+1 with q prime"
        )));
    }
    with_census("classification", p, budgets, fill_classification)
}

/// Every S-ring over `D_2p` is schurian.
pub fn verify_main1(p: usize, budgets: &Budgets) -> Result<TheoremReport> {
    let p64 = p as u64;
    if !is_fermat_prime(p64) && cofactor_prime(p64, 4).is_none() {
        return Err(Error::InvalidArgument(format!("{p} is not a Fermat prime or 4q+1 with q prime")));
    }
    with_census("main1", p, budgets, fill_schurity)
}

fn census_parameter(census: &SRingCensus) -> u64 {
    let order = census.spec.order();
    (if order % 2 == 0 && order > 2 { order / 2 } else { order }) as u64
}

fn report_on(
    theorem: &str,
    census: &SRingCensus,
    budgets: &Budgets,
    fill: fn(&SRingCensus, &Budgets, &mut TheoremReport) -> Result<()>,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut report = TheoremReport::new(theorem, census_parameter(census));
    fill(census, budgets, &mut report)?;
    Ok(report.finish(start.elapsed()))
}

/// Classification verdicts for a census over a dihedral group, without
/// the restriction on `p`.
pub fn classification_report(census: &SRingCensus, budgets: &Budgets) -> Result<TheoremReport> {
    report_on("classification", census, budgets, fill_classification)
}

/// Schurity of every entry of a census over any group.
pub fn schurity_report(census: &SRingCensus, budgets: &Budgets) -> Result<TheoremReport> {
    report_on("schurity", census, budgets, fill_schurity)
}

fn fill_classification(census: &SRingCensus, budgets: &Budgets, report: &mut TheoremReport) -> Result<()> {
    let verdicts = classify_census(census, budgets)?;
    let mut counts = [0usize; 5];
    for (i, (v, entry)) in verdicts.iter().zip(&census.entries).enumerate() {
        let mut status = tri_status(v.holds());
        let mut detail = verdict_detail(v);
        if !v.revalidate(&entry.sring)? {
            status = Status::Fail;
            detail += " witness does not re-validate";
        }
        for (c, t) in counts.iter_mut().zip([v.rank_two, v.cyclotomic, v.cyclic_isomorphic, v.wreath, v.difference_set]) {
            *c += t.is_yes() as usize;
        }
        report.push(format!("#{i}"), status, detail);
    }
    report.note(format!(
        "entries satisfying (1)..(5): {} {} {} {} {}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ));
    let params: std::collections::BTreeSet<_> =
        verdicts.iter().filter_map(|v| v.difference_set_witness.as_ref().map(|w| w.1)).collect();
    if !params.is_empty() {
        report.note(format!("difference-set parameters among (5) entries: {params:?}"));
    }
    Ok(())
}

fn fill_schurity(census: &SRingCensus, budgets: &Budgets, report: &mut TheoremReport) -> Result<()> {
    let verdicts: Vec<_> =
        census.entries.par_iter().map(|e| is_schurian(&e.sring, budgets.search)).collect::<Result<_>>()?;
    for (i, (v, entry)) in verdicts.iter().zip(&census.entries).enumerate() {
        let detail = format!(
            "rank {} schurian {} |Aut| {}",
            entry.rank,
            v.schurian,
            v.aut_order.as_deref().unwrap_or("?")
        );
        report.push(format!("#{i}"), tri_status(v.schurian), detail);
    }
    Ok(())
}

/// No nontrivial difference set in `C_p`; at `p = 13` the Singer set is
/// certified instead.
pub fn verify_main2(p: usize, budgets: &Budgets) -> Result<TheoremReport> {
    let p64 = p as u64;
    let in_family = is_fermat_prime(p64) || cofactor_prime(p64, 4).is_some_and(|q| q > 3);
    if !in_family && p != 13 {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a Fermat prime, 13, or 4q+1 with q > 3 prime"
        )));
    }
    let start = Instant::now();
    let mut report = TheoremReport::new("main2", p64);
    report.note(format!("feasible (k, lambda): {:?}", feasible_parameters(p)));
    let found = match search_exhaustive_with(p, SearchMode::UpToTranslation, budgets.diffset) {
        Ok((found, nodes)) => {
            report.note(format!("exhaustive search: {} translation classes, {nodes} nodes", found.len()));
            Some(found)
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            report.push("exhaustive", Status::FailToVerify, e.to_string());
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(found) = &found {
        if p == 13 {
            for r in found {
                let ok = matches!(r.parameters(), (13, 4, 1) | (13, 9, 6));
                report.push(
                    format!("{:?}", r.elements()),
                    if ok { Status::Pass } else { Status::Fail },
                    format!("{:?}", r.parameters()),
                );
            }
            let singer = found.iter().any(|r| r.parameters() == (13, 4, 1));
            report.push(
                "singer",
                if singer { Status::Pass } else { Status::Fail },
                "a (13,4,1) set exists",
            );
        } else {
            let detail = match found.first() {
                None => "no nontrivial difference set".to_string(),
                Some(r) => format!("found {:?} with {:?}", r.elements(), r.parameters()),
            };
            report.push("exhaustive", if found.is_empty() { Status::Pass } else { Status::Fail }, detail);
        }
        if cofactor_prime(p64, 4).is_some_and(|q| q > 2) {
            let pruned = search_multiplier_pruned(p)?;
            let agree = translation_classes(&pruned) == translation_classes(found);
            report.push(
                "pruned",
                if agree { Status::Pass } else { Status::Fail },
                format!("multiplier-pruned search: {} sets, agrees {agree}", pruned.len()),
            );
        }
    }
    Ok(report.finish(start.elapsed()))
}

/// Facts about one census entry needed by the lemma checks.
struct LemmaFacts {
    primitive: bool,
    rank: usize,
    order_two: bool,
    /// Cyclotomic or isomorphic to an S-ring over `C_2p`; only computed
    /// when there is an A-subgroup of order 2.
    l1: Option<Tri>,
    /// Present when the rotations are the only nontrivial proper A-subgroup.
    unique_a: Option<UniqueA>,
}

struct UniqueA {
    m: usize,
    outer: Vec<usize>,
    wreath: bool,
}

fn lemma_facts(a: &SRing, p: usize, budgets: &Budgets) -> Result<LemmaFacts> {
    let n = 2 * p;
    let proper: Vec<GroupSubset> = a
        .a_subgroups()
        .into_iter()
        .map(|h| h.elements)
        .filter(|h| h.len() > 1 && h.len() < n)
        .collect();
    let order_two = proper.iter().any(|h| h.len() == 2);
    let l1 = if !order_two {
        None
    } else if a.cayley_automorphisms().orbits().len() == a.rank() {
        Some(Tri::Yes)
    } else {
        Some(match automorphism_group(a, budgets.search) {
            Ok(aut) => isomorphic_to_sring_over_cyclic(a, &aut, budgets.elements).0,
            Err(Error::BudgetExceeded { .. }) => Tri::Unknown,
            Err(e) => return Err(e),
        })
    };
    let rotations = GroupSubset::full(p);
    let unique_a = if proper == [rotations] {
        Some(UniqueA {
            m: a.class(a.class_of(1)).len(),
            outer: a.classes().iter().filter(|c| c.is_disjoint(rotations)).map(|c| c.len()).collect(),
            wreath: a.is_wreath_over(rotations)?,
        })
    } else {
        None
    };
    Ok(LemmaFacts {
        primitive: proper.is_empty(),
        rank: a.rank(),
        order_two,
        l1,
        unique_a,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    crate::diffset::arith::gcd(a as u64, b as u64) as usize
}

const LEMMAS: [&str; 7] = ["l0", "l1", "easy", "l2", "l3", "primepower", "4q1"];

/// Checks the conclusion of each lemma on every census entry in its regime.
pub fn verify_section4_lemmas(p: usize, budgets: &Budgets) -> Result<TheoremReport> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    with_census("lemmas", p, budgets, fill_lemmas)
}

fn fill_lemmas(census: &SRingCensus, budgets: &Budgets, report: &mut TheoremReport) -> Result<()> {
    let p = census.spec.order() / 2;
    let rq1 = cofactor_prime(p as u64, 2).is_some() || cofactor_prime(p as u64, 4).is_some();
    {
        let facts: Vec<LemmaFacts> =
            census.entries.par_iter().map(|e| lemma_facts(&e.sring, p, budgets)).collect::<Result<_>>()?;
        let mut hits = [0usize; LEMMAS.len()];
        let mut check = |report: &mut TheoremReport, lemma: usize, i: usize, ok: Tri, detail: String| {
            hits[lemma] += 1;
            report.push(format!("{} #{i}", LEMMAS[lemma]), tri_status(ok), detail);
        };
        for (i, f) in facts.iter().enumerate() {
            if f.primitive {
                check(report, 0, i, Tri::from_bool(f.rank == 2), format!("primitive, rank {}", f.rank));
            }
            if let Some(t) = f.l1 {
                check(report, 1, i, t, format!("A-subgroup of order 2, cyclotomic or cyclic-isomorphic {t}"));
            }
            debug_assert!(!(f.order_two && f.unique_a.is_some()));
            let Some(u) = &f.unique_a else { continue };
            let sizes = format!("m={} |Y| in Ab: {:?}", u.m, u.outer);
            let easy = u.outer.iter().all(|&y| y != 1 && y != p - 1);
            check(report, 2, i, Tri::from_bool(easy), sizes.clone());
            if u.m > 1 {
                let ok = factorize(u.m as u64).iter().all(|&(r, e)| {
                    (1..=e).all(|s| {
                        let rs = r.pow(s) as usize;
                        let off: Vec<usize> = u.outer.iter().copied().filter(|y| y % rs != 0).collect();
                        off.len() == 1 && off[0] % rs == 1 % rs
                    })
                });
                check(report, 3, i, Tri::from_bool(ok), sizes.clone());
            }
            let wreath = Tri::from_bool(u.wreath);
            if u.outer.iter().any(|&y| gcd(y, u.m) == 1) {
                check(report, 4, i, wreath, format!("{sizes} wreath {}", u.wreath));
            }
            if factorize(u.m as u64).len() <= 1 {
                check(report, 5, i, wreath, format!("{sizes} wreath {}", u.wreath));
            }
            if rq1 && u.m != p - 1 {
                check(report, 6, i, wreath, format!("{sizes} wreath {}", u.wreath));
            }
        }
        for (name, &h) in LEMMAS.iter().zip(&hits) {
            if h == 0 {
                report.note(format!("{name}: vacuous, no entry in its regime"));
            } else {
                report.note(format!("{name}: {h} entries checked"));
            }
        }
        Ok(())
    }
}

/// Difference counts of the quartic residues mod `p`, optionally with 0,
/// on plain vectors so that `p` is not limited by the group-order cap.
/// Returns `(k, lambda)` when the set is a difference set.
fn quartic_parameters(p: u64, with_zero: bool) -> Option<(u64, u64)> {
    let mut set: Vec<u64> = (1..p).map(|x| pow_mod(x, 4, p)).collect();
    if with_zero {
        set.push(0);
    }
    set.sort_unstable();
    set.dedup();
    let mut counts = vec![0u64; p as usize];
    for &x in &set {
        for &y in &set {
            if x != y {
                counts[((x + p - y) % p) as usize] += 1;
            }
        }
    }
    let lambda = counts[1];
    counts[1..].iter().all(|&c| c == lambda).then_some((set.len() as u64, lambda))
}

/// The biquadratic constructions for `t`, and the arithmetic of the
/// example `3373 = 4 * 29^2 + 9`.
pub fn verify_nonschur_family(t: u64, budgets: &Budgets) -> Result<TheoremReport> {
    if t < 3 || t % 2 == 0 {
        return Err(Error::InvalidArgument(format!("t = {t} must be odd and at least 3")));
    }
    let start = Instant::now();
    let mut report = TheoremReport::new("nonschur", t);
    let t2 = t * t;
    for (c, k, lambda, with_zero) in [(1, t2, (t2 - 1) / 4, false), (9, t2 + 3, (t2 + 3) / 4, true)] {
        let p = 4 * t2 + c;
        let label = format!("p={p}");
        if !is_prime(p) {
            report.note(format!("{p} = 4*{t}^2+{c} is not prime, skipped"));
            continue;
        }
        let mut fails = Vec::new();
        if quartic_parameters(p, with_zero) != Some((k, lambda)) {
            fails.push(format!("quartic residues{} are not a ({p},{k},{lambda}) set", if with_zero { " with 0" } else { "" }));
        }
        let reps = projective_representations(p, p, 64 - p.leading_zeros());
        if !reps.is_empty() {
            fails.push(format!("{p} = (q^(d+1)-1)/(q-1) for {reps:?}"));
        }
        let mut detail = format!("({p},{k},{lambda}) validated, no (q,d) representation");
        if (p as usize) < crate::groups::MAX_ORDER {
            let (rec, _) = biquadratic_set(p as usize)?;
            if rec.parameters() != (p as usize, k as usize, lambda as usize) {
                fails.push(format!("biquadratic_set gives {:?}", rec.parameters()));
            }
            if 2 * p as usize <= SCHURITY_MAX_ORDER {
                let group = Arc::new(make_dihedral(p as usize)?);
                let a = from_difference_set(group, rec.set())?;
                let v = is_schurian(&a, budgets.search)?;
                match v.schurian {
                    Tri::No => detail += &format!(", A(D) over D_{} nonschurian", 2 * p),
                    Tri::Yes => fails.push(format!("A(D) over D_{} is schurian", 2 * p)),
                    Tri::Unknown => detail += ", partial: schurity search over budget",
                }
            } else {
                detail += &format!(", partial: D_{} above the schurity cap", 2 * p);
            }
        } else {
            detail += &format!(", partial: D_{} above the group-order cap", 2 * p);
        }
        if fails.is_empty() {
            report.push(label, Status::Pass, detail);
        } else {
            report.push(label, Status::Fail, fails.join("; "));
        }
    }

    let p = 3373u64;
    let m = (p - 1) / 4;
    let checks = [
        ("prime", is_prime(p)),
        ("1 mod 4", p % 4 == 1),
        ("4*29^2+9", p == 4 * 29 * 29 + 9),
        ("4*3*281+1", p == 4 * 3 * 281 + 1),
        ("(p-1)/4 odd square-free", m % 2 == 1 && is_square_free(m)),
        ("quartic residues with 0 form a (3373,844,211) set", quartic_parameters(p, true) == Some((844, 211))),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report.push(
        "p=3373",
        if failed.is_empty() { Status::Pass } else { Status::Fail },
        if failed.is_empty() {
            checks.iter().map(|c| c.0).collect::<Vec<_>>().join(", ")
        } else {
            format!("failed: {}", failed.join(", "))
        },
    );
    Ok(report.finish(start.elapsed()))
}
