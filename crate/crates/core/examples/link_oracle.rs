//! The link lookup table: which padded small graphs have nontrivial H1.

use flag_torsion::pipeline::{has_cyclic_links, has_cyclic_links_direct, LinkOracle};
use flag_torsion::Graph;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let oracle = LinkOracle::build(n).expect("8 <= n <= 16");
    println!(
        "n={n}: link size {}, {} of {} classes have nontrivial H1",
        oracle.link_size(),
        oracle.base_size(),
        oracle.scanned()
    );
    if n == 12 {
        let ico = icosahedron();
        println!(
            "icosahedron: table says {}, direct says {}",
            has_cyclic_links(&ico, &oracle).unwrap(),
            has_cyclic_links_direct(&ico)
        );
    }
    // circulant C_n(1,2,3): every link is a path-like band, so no cycles
    let mut g = Graph::empty(n).unwrap();
    for v in 0..n {
        for d in 1..=3 {
            g.add_edge(v, (v + d) % n).unwrap();
        }
    }
    match has_cyclic_links(&g, &oracle) {
        Ok(b) => println!(
            "C_{n}(1,2,3): table says {b}, direct says {}",
            has_cyclic_links_direct(&g)
        ),
        Err(e) => println!("C_{n}(1,2,3): {e}"),
    }
}

/// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11. Every link is a C5.
fn icosahedron() -> Graph {
    let mut g = Graph::empty(12).unwrap();
    for i in 0..5 {
        let (u, nu) = (1 + i, 1 + (i + 1) % 5);
        let (l, nl) = (6 + i, 6 + (i + 1) % 5);
        for (a, b) in [(0, u), (u, nu), (11, l), (l, nl), (u, l), (u, nl)] {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}
