//! Quartic cyclotomic numbers `(i,j)` for a prime `p = 4f + 1` and the
//! representation `p = x^2 + 4y^2` read off from them.
//!
//! `cargo run --release --example quartic_cyclotomy -- 29`

use schur_core::diffset::{biquadratic_set, quartic_cyclotomy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).unwrap_or_else(|| "29".into()).parse()?;
    let q = quartic_cyclotomy(p)?;
    println!("p = {p}, f = {}, primitive root {}", q.f(), q.root);
    for row in &q.table {
        println!("  {:?}", row);
    }
    println!("x = {}, y = {}, orientation {:?}", q.x, q.y, q.orientation);
    if let Some(ok) = q.x_identity_holds() {
        println!("x = 2f - 1 - 8(1,0): {ok}");
    }
    if let Ok((rec, variant)) = biquadratic_set(p as usize) {
        println!("biquadratic difference set {:?} ({variant:?})", rec.parameters());
    }
    Ok(())
}
