//! Enumerates every S-ring over a group and prints a rank histogram.
//!
//! `cargo run --release --example enumerate_census -- D:26`

use std::collections::BTreeMap;
use std::sync::Arc;

use schur_core::enumerate::{enumerate_srings, naive_enumerate};
use schur_core::groups::GroupSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: GroupSpec = std::env::args().nth(1).unwrap_or_else(|| "D:14".into()).parse()?;
    let naive = std::env::args().any(|a| a == "--naive");
    let group = Arc::new(spec.build()?);
    let census = if naive { naive_enumerate(group)? } else { enumerate_srings(group)? };
    println!("{spec}: {} S-rings ({} nodes, {:.2?})", census.len(), census.stats.nodes, census.stats.elapsed);
    let mut by_rank: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for e in &census.entries {
        let slot = by_rank.entry(e.rank).or_default();
        slot.0 += 1;
        slot.1 += e.symmetric as usize;
    }
    println!("rank  count  symmetric");
    for (rank, (count, sym)) in by_rank {
        println!("{rank:>4}  {count:>5}  {sym:>9}");
    }
    Ok(())
}
