//! Small posets: counts, comparability graphs, and the torsion check.

use flag_torsion::h1_clique;
use flag_torsion::poset::{
    comparability_graph, enumerate_posets, verify_small_posets_report, Poset,
};

fn main() {
    let b3 = Poset::boolean_lattice(3).unwrap();
    let g = comparability_graph(&b3);
    println!(
        "boolean lattice B3: {} elements, comparability edges {}",
        b3.len(),
        g.edge_count()
    );
    println!("  H1 of its order complex = {}", h1_clique(&g));
    print!(
        "  text form (size, then upper covers per element):\n{}",
        b3.to_text()
    );

    let top: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    for n in 1..=top {
        println!(
            "n={n}: {} posets up to isomorphism",
            enumerate_posets(n, &mut |_| {})
        );
    }
    for level in verify_small_posets_report(top) {
        println!(
            "n={}: {} classes, {} with torsion, {} with induced C5",
            level.n, level.classes, level.torsion, level.induced_c5
        );
    }
}
