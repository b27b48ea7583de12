//! Runs the theorem checks over one prime and prints the report tables.
//!
//! `cargo run --release --example verify_theorems -- 13`

use schur_core::verify::{
    classification_applies, verify_classification, verify_main1, verify_main2, verify_section4_lemmas, Budgets,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args().nth(1).unwrap_or_else(|| "7".into()).parse()?;
    let budgets = Budgets::default();
    if classification_applies(p) {
        print!("{}", verify_classification(p, &budgets)?.to_table());
    }
    for run in [verify_main1, verify_main2] {
        // out-of-family primes are rejected up front
        if let Ok(report) = run(p, &budgets) {
            print!("{}", report.to_table());
        }
    }
    print!("{}", verify_section4_lemmas(p, &budgets)?.to_table());
    Ok(())
}
