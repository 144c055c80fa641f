//! Integral simplicial homology via Smith normal form.

mod complex;
mod snf;

pub use complex::{
    boundary_matrix, clique_complex, maximal_cliques, ComplexError, Simplex, SimplicialComplex,
};
pub use snf::{smith_normal_form, smith_normal_form_big, IntMatrix, SmithForm};

use crate::graph::Graph;
use num_bigint::BigUint;
use std::fmt;

/// `Z^betti ⊕ Z/d1 ⊕ ... ⊕ Z/dm` with `d1 | d2 | ... | dm`, every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    /// Panics unless `torsion` is a divisibility chain of entries `>= 2`.
    pub fn new(betti: usize, torsion: &[u64]) -> Self {
        assert!(
            torsion.iter().all(|&d| d >= 2),
            "torsion coefficients must be >= 2"
        );
        assert!(
            torsion.windows(2).all(|w| w[1] % w[0] == 0),
            "torsion must form a divisibility chain"
        );
        HomologyGroup {
            betti,
            torsion: torsion.iter().map(|&d| BigUint::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("torsion coefficient fits in u64"))
            .collect()
    }

    /// Direct sum; torsion is re-normalized into invariant-factor form.
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let k = self.torsion.len() + other.torsion.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, d) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m.set(
                i,
                i,
                i64::try_from(d).expect("torsion coefficient fits in i64"),
            );
        }
        HomologyGroup {
            betti: self.betti + other.betti,
            torsion: smith_normal_form(&m).torsion(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn rank_of(m: &IntMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        smith_normal_form(m).rank
    }
}

/// `H_k(c; Z)`.
pub fn homology(c: &SimplicialComplex, k: usize) -> HomologyGroup {
    let chains = c.faces(k).len();
    if chains == 0 {
        return HomologyGroup::trivial();
    }
    let rank_in = if k == 0 {
        0
    } else {
        rank_of(&boundary_matrix(k, c))
    };
    let up = boundary_matrix(k + 1, c);
    let (rank_out, torsion) = if up.cols() == 0 {
        (0, Vec::new())
    } else {
        let f = smith_normal_form(&up);
        (f.rank, f.torsion())
    };
    HomologyGroup {
        betti: chains - rank_in - rank_out,
        torsion,
    }
}

/// `H_0 .. H_dim`.
pub fn homology_all(c: &SimplicialComplex) -> Vec<HomologyGroup> {
    match c.dim() {
        None => Vec::new(),
        Some(d) => (0..=d).map(|k| homology(c, k)).collect(),
    }
}

/// `∂_2` of the clique complex, edges by rows and triangles by columns, both
/// lexicographic. Built straight from the adjacency masks.
pub fn clique_boundary_2(g: &Graph) -> IntMatrix {
    let n = g.order();
    let mut edge_index = [[usize::MAX; 16]; 16];
    let mut edges = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                edge_index[u][v] = edges;
                edges += 1;
            }
        }
    }
    let mut triangles = Vec::new();
    for u in 0..n {
        let up = g.neighbors(u).0 & !((2u32 << u) - 1) as u16;
        for v in crate::graph::VertexSet(up) {
            let common = up & g.neighbors(v).0 & !((2u32 << v) - 1) as u16;
            for w in crate::graph::VertexSet(common) {
                triangles.push((u, v, w));
            }
        }
    }
    let mut m = IntMatrix::zeros(edges, triangles.len());
    for (j, &(u, v, w)) in triangles.iter().enumerate() {
        m.set(edge_index[v][w], j, 1);
        m.set(edge_index[u][w], j, -1);
        m.set(edge_index[u][v], j, 1);
    }
    m
}

/// `H_1(Cl(g); Z)`, computed on the 2-skeleton.
///
/// `rank ∂_1 = n - (components of g)`, so only `∂_2` needs a Smith form.
pub fn h1_clique(g: &Graph) -> HomologyGroup {
    let n = g.order();
    let edges = g.edge_count();
    if n == 0 || edges == 0 {
        return HomologyGroup::trivial();
    }
    let rank1 = n - g.component_count();
    let d2 = clique_boundary_2(g);
    let (rank2, torsion) = if d2.cols() == 0 {
        (0, Vec::new())
    } else {
        let f = smith_normal_form(&d2);
        (f.rank, f.torsion())
    };
    HomologyGroup {
        betti: edges - rank1 - rank2,
        torsion,
    }
}

/// `H_1(Cl(g); Z)` has torsion.
pub fn has_h1_torsion(g: &Graph) -> bool {
    h1_clique(g).has_torsion()
}

/// `H_1(Cl(g); Z) != 0`.
pub fn h1_nontrivial(g: &Graph) -> bool {
    !h1_clique(g).is_trivial()
}

/// The six-vertex triangulation of the real projective plane obtained as the
/// antipodal quotient of the icosahedron: 6 vertices, 15 edges, 10 triangles.
pub fn rp2_six() -> SimplicialComplex {
    // icosahedron: poles 0 / 11, upper ring 1..=5, lower ring 6..=10 with
    // lower vertex 6 + i sitting between upper vertices i + 1 and i + 2
    let upper = |i: usize| 1 + i % 5;
    let lower = |i: usize| 6 + i % 5;
    let mut ico: Vec<[usize; 3]> = Vec::new();
    for i in 0..5 {
        ico.push([0, upper(i), upper(i + 1)]);
        ico.push([upper(i), upper(i + 1), lower(i)]);
        ico.push([lower(i), lower(i + 1), upper(i + 1)]);
        ico.push([11, lower(i), lower(i + 1)]);
    }
    // antipode: 0 <-> 11, upper i <-> lower (i + 2) (opposite on the belt)
    let antipode = |v: usize| match v {
        0 => 11,
        11 => 0,
        1..=5 => lower(v - 1 + 2),
        _ => upper(v - 6 + 3),
    };
    let class = |v: usize| v.min(antipode(v));
    let mut names: Vec<usize> = (0..12).map(class).collect();
    names.sort_unstable();
    names.dedup();
    let rename = |v: usize| names.iter().position(|&x| x == class(v)).expect("class");
    SimplicialComplex::new(
        6,
        ico.iter().map(|t| t.iter().map(|&v| rename(v)).collect()),
    )
    .expect("six-vertex quotient")
}
