//! Biquadratic residue difference sets for `p = 4t^2 + 1` and `4t^2 + 9`
//! and the schurity of the rank-4 S-ring they define over `D_2p`.
//!
//! `cargo run --release --example nonschur_family -- 3`

use schur_core::verify::{verify_nonschur_family, Budgets};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: u64 = std::env::args().nth(1).unwrap_or_else(|| "3".into()).parse()?;
    let report = verify_nonschur_family(t, &Budgets::default())?;
    print!("{}", report.to_table());
    Ok(())
}
