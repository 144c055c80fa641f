//! Surface recognition and collapsing on a few complexes.
//!
//! Pass graph6 strings to classify their clique complexes instead.

use flag_torsion::classify::{classify_graph, classify_simplicial, report_row, REPORT_HEADER};
use flag_torsion::from_graph6;
use flag_torsion::homology::{rp2_six, SimplicialComplex};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if !args.is_empty() {
        println!("{REPORT_HEADER}");
        for s in &args {
            let g = from_graph6(s).expect("valid graph6");
            println!("{}", report_row(&g, &classify_graph(&g)));
        }
        return;
    }

    let rp2 = rp2_six();
    let c = classify_simplicial(&rp2);
    println!("projective plane: {} (euler {})", c.label, c.surface.euler);

    // RP2 with an extra triangle glued on an edge collapses back onto it
    let mut facets: Vec<Vec<usize>> = rp2.facets().to_vec();
    facets.push(vec![0, 1, 6]);
    let fin = SimplicialComplex::new(7, facets.clone()).unwrap();
    println!("with a fin: {}", classify_simplicial(&fin).label);

    // a free loop on top gives the RP2 v S1 homology
    facets.pop();
    facets.extend([vec![0, 6], vec![6, 7], vec![0, 7]]);
    let wedge = SimplicialComplex::new(8, facets).unwrap();
    let w = classify_simplicial(&wedge);
    println!("with a loop: {}  H1 = {}", w.label, w.homology[1]);
}
