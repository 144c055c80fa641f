//! Simplicial complexes given by their facets, clique complexes, boundary maps.

use super::snf::IntMatrix;
use crate::graph::{Graph, VertexSet};
use std::collections::HashMap;
use std::fmt;

/// Sorted vertex tuple.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet {facet:?} uses vertex {vertex}, complex has {n} vertices")]
    VertexOutOfRange {
        facet: Vec<usize>,
        vertex: usize,
        n: usize,
    },
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("line {line}: cannot parse {token:?} as a vertex index")]
    Parse { line: usize, token: String },
}

/// A simplicial complex on vertices `0..n`, stored as its inclusion-maximal faces.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Simplex>,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl SimplicialComplex {
    /// Builds a complex from any generating list of simplices; faces of other
    /// listed simplices are dropped so that only facets remain.
    pub fn new<I>(n: usize, simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(s));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(ComplexError::VertexOutOfRange {
                    facet: s,
                    vertex: v,
                    n,
                });
            }
            if !s.is_empty() {
                all.push(s);
            }
        }
        // larger simplices first so each candidate only checks earlier keepers
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut facets: Vec<Simplex> = Vec::new();
        for s in all {
            if !facets.iter().any(|f| f.len() > s.len() && is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets })
    }

    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    /// The full simplex on `0..n`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![(0..n).collect()],
        }
    }

    /// Vertex-count bound: vertices are `0..n` (some may be unused).
    pub fn vertex_bound(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Dimension, `None` for the void complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// Vertices that appear in some facet.
    pub fn used_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.facets.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// All `k`-dimensional faces, lexicographically sorted.
    pub fn faces(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(k + 1);
        for f in self.facets.iter().filter(|f| f.len() > k) {
            push_subsets(f, k + 1, 0, &mut buf, &mut out);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `f_k` for `k = 0..=dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.faces(k).len()).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Faces of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        let mut gens = Vec::new();
        let mut buf = Vec::new();
        for f in &self.facets {
            if f.len() <= d + 1 {
                gens.push(f.clone());
            } else {
                push_subsets(f, d + 1, 0, &mut buf, &mut gens);
            }
        }
        SimplicialComplex::new(self.n, gens).expect("faces of a valid complex")
    }

    /// Parses one facet per line, vertex indices separated by whitespace.
    /// Blank lines and `#` comments are skipped; the vertex bound is max index + 1.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut facets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let facet = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| ComplexError::Parse {
                        line: i + 1,
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            facets.push(facet);
        }
        let n = facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        SimplicialComplex::new(n, facets)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Relabels vertices by `map` (old vertex -> new vertex).
    pub fn relabel(&self, map: &[usize]) -> SimplicialComplex {
        let n = map.iter().map(|&v| v + 1).max().unwrap_or(0).max(self.n);
        SimplicialComplex::new(
            n,
            self.facets
                .iter()
                .map(|f| f.iter().map(|&v| map[v]).collect()),
        )
        .expect("relabeling is injective on a valid complex")
    }
}

fn push_subsets(f: &[usize], k: usize, start: usize, buf: &mut Vec<usize>, out: &mut Vec<Simplex>) {
    if buf.len() == k {
        out.push(buf.clone());
        return;
    }
    let left = k - buf.len();
    for i in start..=f.len().saturating_sub(left) {
        if f.len() < left {
            break;
        }
        buf.push(f[i]);
        push_subsets(f, k, i + 1, buf, out);
        buf.pop();
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(n={}, facets={:?})",
            self.n, self.facets
        )
    }
}

/// Maximal cliques of `g` (Bron–Kerbosch with pivoting), each sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<Simplex> {
    fn bk(g: &Graph, r: u16, p: u16, x: u16, out: &mut Vec<Simplex>) {
        if p == 0 {
            if x == 0 {
                out.push(VertexSet(r).iter().collect());
            }
            return;
        }
        let pivot = VertexSet(p | x)
            .iter()
            .max_by_key(|&u| (g.neighbors(u).0 & p).count_ones())
            .expect("p nonempty");
        let mut p = p;
        let mut x = x;
        for v in VertexSet(p & !g.neighbors(pivot).0) {
            let nv = g.neighbors(v).0;
            bk(g, r | 1 << v, p & nv, x & nv, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    if g.order() > 0 {
        bk(g, 0, g.vertices().0, 0, &mut out);
    }
    out.sort();
    out
}

/// Clique complex of `g`, optionally truncated to faces of dimension `<= max_dim`.
pub fn clique_complex(g: &Graph, max_dim: Option<usize>) -> SimplicialComplex {
    let cliques = maximal_cliques(g);
    let c = SimplicialComplex {
        n: g.order(),
        facets: cliques,
    };
    match max_dim {
        Some(d) if c.dim().is_some_and(|cd| cd > d) => c.skeleton(d),
        _ => c,
    }
}

/// `∂_k`: rows are the lexicographically ordered `(k-1)`-faces, columns the `k`-faces.
/// The face missing the `i`-th vertex gets sign `(-1)^i`.
pub fn boundary_matrix(k: usize, c: &SimplicialComplex) -> IntMatrix {
    assert!(k >= 1, "boundary maps start at k = 1");
    let lower = c.faces(k - 1);
    let upper = c.faces(k);
    boundary_between(&lower, &upper)
}

pub(crate) fn boundary_between(lower: &[Simplex], upper: &[Simplex]) -> IntMatrix {
    let index: HashMap<&[usize], usize> = lower
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    let mut face = Vec::new();
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            face.clear();
            face.extend(
                s.iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i)
                    .map(|(_, &v)| v),
            );
            let r = index[face.as_slice()];
            m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}
