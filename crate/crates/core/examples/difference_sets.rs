//! Cyclic difference sets of prime order: exhaustive and multiplier-pruned
//! search, multiplier groups and the Paley construction.
//!
//! `cargo run --release --example difference_sets -- 13`

use schur_core::diffset::{
    invariant_translate, multiplier_group, paley_set, search_exhaustive, search_multiplier_pruned, translation_classes,
    SearchMode,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args().nth(1).unwrap_or_else(|| "13".into()).parse()?;

    let all = search_exhaustive(p, SearchMode::All)?;
    let classes = search_exhaustive(p, SearchMode::UpToTranslation)?;
    println!("C_{p}: {} nontrivial difference sets, {} up to translation", all.len(), classes.len());
    for rec in &classes {
        let m = multiplier_group(rec)?;
        let fixed = invariant_translate(rec, &m)?;
        println!(
            "  {:?} {:?}  multipliers {:?}  invariant translate {:?}",
            rec.parameters(),
            rec.elements(),
            m.multipliers(),
            fixed.to_vec()
        );
    }

    if p % 4 == 1 && p > 5 {
        let pruned = search_multiplier_pruned(p)?;
        let agree = translation_classes(&pruned) == translation_classes(&classes);
        println!("pruned search: {} sets, agrees with exhaustive: {agree}", pruned.len());
    }
    if p % 4 == 3 {
        let rec = paley_set(p)?;
        println!("Paley set {:?} {:?}", rec.parameters(), rec.elements());
    }
    Ok(())
}
