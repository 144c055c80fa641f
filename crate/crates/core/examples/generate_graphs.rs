//! Isomorph-free generation: connected counts and a degree-bounded run.
//!
//!     cargo run --release --example generate_graphs -- 9

use flag_torsion::generate::{collect, generate_connected, GenConfig};
use flag_torsion::to_graph6;

fn main() {
    let top: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    for n in 1..=top {
        let s = generate_connected(n, 0, n - 1, &mut |_| {});
        println!("n={n:2}  connected classes {}", s.emitted);
    }
    // minimum degree >= 4 and maximum degree <= n-4
    let n = top.max(8);
    let tame = collect(GenConfig::connected(n, 4, n - 4));
    println!("n={n}: {} tame graphs, first few:", tame.len());
    for g in tame.iter().take(6) {
        println!("  {}", to_graph6(g));
    }
}
