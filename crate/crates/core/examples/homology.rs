//! Integral homology of clique complexes and of a triangulated projective plane.

use flag_torsion::homology::{clique_complex, homology_all, rp2_six, smith_normal_form, IntMatrix};
use flag_torsion::{h1_clique, Graph};

fn main() {
    let rp2 = rp2_six();
    println!(
        "six-vertex projective plane, f-vector {:?}",
        rp2.face_counts()
    );
    for (k, h) in homology_all(&rp2).iter().enumerate() {
        println!("  H{k} = {h}");
    }

    for n in [4, 5, 6] {
        let c = Graph::cycle(n).unwrap();
        println!("C{n}: H1 of clique complex = {}", h1_clique(&c));
    }

    let mut oct = Graph::complete(6).unwrap();
    for v in 0..3 {
        oct.remove_edge(v, v + 3);
    }
    let hs = homology_all(&clique_complex(&oct, None));
    println!(
        "octahedron: {}",
        hs.iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );

    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let f = smith_normal_form(&m);
    println!(
        "Smith form of a 3x3 example: rank {}, factors {:?}",
        f.rank,
        f.factors_u64()
    );
}
