//! graph6 round trips and canonical codes.
//!
//!     cargo run --example canonical_forms -- 'IheA@GUAo'

use flag_torsion::canon::canonical_labeling;
use flag_torsion::{are_isomorphic, canonical_form, from_graph6, to_graph6, Graph};

fn main() {
    let input = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "IheA@GUAo".into());
    let g = from_graph6(&input).expect("valid graph6");
    let lab = canonical_labeling(&g);
    println!("input      {input}");
    println!("vertices   {}, edges {}", g.order(), g.edge_count());
    println!("canonical  {}", canonical_form(&g).as_str());
    println!("orbits     {}", lab.orbit_count());

    // a relabeled copy lands on the same code
    let n = g.order();
    let perm: Vec<usize> = (0..n).map(|v| (v * 3 + 1) % n).collect();
    let h = if gcd(3, n) == 1 { g.permute(&perm) } else { g };
    println!(
        "relabeled  {} -> isomorphic: {}",
        to_graph6(&h),
        are_isomorphic(&g, &h)
    );

    let c5 = Graph::cycle(5).unwrap();
    println!(
        "C5 self-complementary: {}",
        are_isomorphic(&c5, &c5.complement())
    );
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
