//! Computes `Aut(A)` for every S-ring over a group and reports schurity.
//!
//! `cargo run --release --example schurity_sweep -- D:26`

use std::sync::Arc;
use std::time::Instant;

use schur_core::enumerate::enumerate_srings;
use schur_core::groups::GroupSpec;
use schur_core::schurity::{automorphism_group, isomorphic_to_sring_over_cyclic, schurity_from, Tri, DEFAULT_SEARCH_BUDGET};
use schur_core::permgrp::DEFAULT_ELEMENT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: GroupSpec = std::env::args().nth(1).unwrap_or_else(|| "D:14".into()).parse()?;
    let group = Arc::new(spec.build()?);
    let census = enumerate_srings(group)?;
    println!("{spec}: {} S-rings", census.len());
    let (mut schurian, mut cyclic_iso) = (0, 0);
    for (i, a) in census.srings().enumerate() {
        let t = Instant::now();
        let aut = automorphism_group(a, DEFAULT_SEARCH_BUDGET)?;
        let verdict = schurity_from(a, &aut);
        let (cyc, _) = isomorphic_to_sring_over_cyclic(a, &aut, DEFAULT_ELEMENT_BUDGET);
        schurian += (verdict.schurian == Tri::Yes) as usize;
        cyclic_iso += (cyc == Tri::Yes) as usize;
        println!(
            "#{i:<4} rank {:>3}  schurian {:<7}  |Aut| {:<30}  cyclic {:<7}  {:.1?}",
            a.rank(),
            verdict.schurian,
            verdict.aut_order.unwrap_or_default(),
            cyc,
            t.elapsed()
        );
    }
    println!("schurian: {schurian}/{}  isomorphic to an S-ring over a cyclic group: {cyclic_iso}", census.len());
    Ok(())
}
