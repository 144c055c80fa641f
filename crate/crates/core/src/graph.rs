//! Small undirected simple graphs stored as per-vertex neighbor bit masks.

use std::fmt;

/// Largest supported vertex count. Every adjacency row fits in a `u16`.
pub const MAX_VERTICES: usize = 16;

/// A set of vertex positions as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u16, |m, v| m | (1 << v)))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone)]
pub struct Members(u16);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("operation needs at least {needed} vertices, graph has {n}")]
    TooFewVertices { needed: usize, n: usize },
}

/// An undirected simple graph on at most [`MAX_VERTICES`] vertices.
///
/// `adj[v]` holds the neighbor set of `v`; rows at positions `>= n` are zero.
/// The zero-vertex graph exists only as a degenerate result of [`Graph::induced`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, checking symmetry, loops and range.
    pub fn from_adjacency(rows: &[u16]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            if row & !full != 0 {
                let vertex = (row & !full).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for u in VertexSet(row) {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        Ok(g)
    }

    /// Cycle `0-1-...-(n-1)-0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { needed: 3, n });
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < MAX_VERTICES && v < MAX_VERTICES {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    /// Vertex count.
    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u16] {
        &self.adj[..self.n as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < MAX_VERTICES && self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u32 << u) - 1) as u16)
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// The graph whose edges are the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.order()).0;
        let mut out = *self;
        for v in 0..self.order() {
            out.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        out
    }

    /// Subgraph induced by `s`, relabeled by increasing original index.
    /// An empty `s` yields the zero-vertex graph.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let s = s.intersection(self.vertices());
        let mut out = Graph {
            n: s.len() as u8,
            adj: [0; MAX_VERTICES],
        };
        for (i, v) in s.iter().enumerate() {
            out.adj[i] = compress(self.adj[v] & s.0, s.0);
        }
        out
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if n < 2 {
            return Err(GraphError::TooFewVertices { needed: 2, n });
        }
        let mut rest = self.vertices();
        rest.remove(v);
        Ok(self.induced(rest))
    }

    /// `lk(v)` padded with isolated vertices back up to `n` vertices.
    ///
    /// The neighbors of `v` keep their positions; every other vertex, `v` included,
    /// becomes isolated.
    pub fn link_padded(&self, v: usize) -> Result<Graph, GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        let nb = self.adj[v];
        let mut out = *self;
        for u in 0..n {
            out.adj[u] = if nb >> u & 1 == 1 {
                self.adj[u] & nb
            } else {
                0
            };
        }
        Ok(out)
    }

    /// Same graph with `k` extra isolated vertices appended.
    pub fn pad(&self, k: usize) -> Result<Graph, GraphError> {
        let n = self.order() + k;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut out = *self;
        out.n = n as u8;
        Ok(out)
    }

    /// Disjoint union, `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let shift = self.order();
        let mut out = self.pad(other.order())?;
        for (i, &row) in other.rows().iter().enumerate() {
            out.adj[shift + i] = row << shift;
        }
        Ok(out)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut out = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (v, &pv) in perm.iter().enumerate() {
            out.adj[pv] = VertexSet(self.adj[v])
                .iter()
                .fold(0, |m, u| m | 1 << perm[u]);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return false;
        }
        self.component_of(0).len() == n
    }

    /// Connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = 1u16 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u16;
            for u in VertexSet(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    pub fn component_count(&self) -> usize {
        let mut left = self.vertices();
        let mut count = 0;
        while let Some(v) = left.first() {
            left = left.difference(self.component_of(v));
            count += 1;
        }
        count
    }

    /// Every degree lies in `[4, n - 4]`. Never true for `n <= 7`.
    pub fn is_tame(&self) -> bool {
        let n = self.order();
        n >= 8 && self.min_degree() >= 4 && self.max_degree() <= n - 4
    }

    pub fn has_induced_c5(&self) -> bool {
        self.find_induced_c5().is_some()
    }

    /// Some 5-set of vertices inducing a 5-cycle.
    ///
    /// Candidate vertices need at least two neighbors among those still eligible, so
    /// the set is shrunk to its 2-core first; inside each subset all degrees must be 2
    /// and the subgraph connected.
    pub fn find_induced_c5(&self) -> Option<VertexSet> {
        let mut core = self.vertices().0;
        loop {
            let shrunk = VertexSet(core)
                .iter()
                .filter(|&v| (self.adj[v] & core).count_ones() >= 2)
                .fold(0u16, |m, v| m | 1 << v);
            if shrunk == core {
                break;
            }
            core = shrunk;
        }
        let verts: Vec<usize> = VertexSet(core).iter().collect();
        if verts.len() < 5 {
            return None;
        }
        let mut found = None;
        for_each_subset(&verts, 5, &mut |s: u16| {
            let ok = VertexSet(s)
                .iter()
                .all(|v| (self.adj[v] & s).count_ones() == 2)
                && self.component_of(s.trailing_zeros() as usize).0 & s == s;
            if ok {
                found = Some(VertexSet(s));
            }
            ok
        });
        found
    }
}

/// Calls `f` on each `k`-subset (as a mask) of `verts`, stopping once `f` returns true.
fn for_each_subset(verts: &[usize], k: usize, f: &mut dyn FnMut(u16) -> bool) -> bool {
    fn rec(verts: &[usize], k: usize, acc: u16, f: &mut dyn FnMut(u16) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in 0..=verts.len().saturating_sub(k) {
            if verts.len() < k {
                break;
            }
            if rec(&verts[i + 1..], k - 1, acc | 1 << verts[i], f) {
                return true;
            }
        }
        false
    }
    rec(verts, k, 0, f)
}

/// Packs the bits of `x` selected by `mask` into the low bits, in order.
#[inline]
fn compress(x: u16, mask: u16) -> u16 {
    let mut out = 0u16;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}", self.order())?;
        for (u, v) in self.edges() {
            write!(f, " {u}-{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::to_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    fn octahedron() -> Graph {
        let mut g = Graph::complete(6).unwrap();
        for i in 0..3 {
            g.remove_edge(i, i + 3);
        }
        g
    }

    fn naive_has_induced_c5(g: &Graph) -> bool {
        let n = g.order();
        (0u32..1 << n).filter(|s| s.count_ones() == 5).any(|s| {
            let h = g.induced(VertexSet(s as u16));
            h.rows().iter().all(|r| r.count_ones() == 2) && h.is_connected()
        })
    }

    #[test]
    fn complement_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let pentagram = Graph::from_edges(5, (0..5).map(|i| (i, (i + 2) % 5))).unwrap();
        assert_eq!(c5.complement(), pentagram);
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn induced_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(
            k5.induced(VertexSet::from_vertices([0, 2, 4])),
            Graph::complete(3).unwrap()
        );
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(
            c6.induced(VertexSet::from_vertices([0, 2, 4])),
            Graph::empty(3).unwrap()
        );
        // outer pentagon of the Petersen graph
        let p = petersen();
        assert_eq!(
            p.induced(VertexSet::from_vertices(0..5)),
            Graph::cycle(5).unwrap()
        );
        assert_eq!(p.induced(VertexSet::EMPTY).order(), 0);
    }

    #[test]
    fn delete_vertex_examples() {
        let k4 = Graph::complete(4).unwrap();
        for v in 0..4 {
            assert_eq!(k4.delete_vertex(v).unwrap(), Graph::complete(3).unwrap());
        }
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.delete_vertex(0).unwrap(), Graph::path(4).unwrap());
        assert_eq!(c5.delete_vertex(4).unwrap(), Graph::path(4).unwrap());
        assert!(matches!(
            c5.delete_vertex(5),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 5 })
        ));
        assert!(Graph::empty(1).unwrap().delete_vertex(0).is_err());
    }

    #[test]
    fn link_padded_examples() {
        let k5 = Graph::complete(5).unwrap();
        let l = k5.link_padded(2).unwrap();
        assert_eq!(l.order(), 5);
        assert_eq!(l.degree(2), 0);
        assert_eq!(l.delete_vertex(2).unwrap(), Graph::complete(4).unwrap());

        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(star.link_padded(0).unwrap(), Graph::empty(5).unwrap());

        let oct = octahedron();
        for v in 0..6 {
            let l = oct.link_padded(v).unwrap();
            assert_eq!(l.edge_count(), 4);
            let cyc: Vec<_> = (0..6).filter(|&u| l.degree(u) == 2).collect();
            assert_eq!(cyc.len(), 4);
            assert_eq!(
                l.induced(VertexSet::from_vertices(cyc.clone()))
                    .edge_count(),
                4
            );
            assert!(l.induced(VertexSet::from_vertices(cyc)).is_connected());
        }
        assert!(oct.link_padded(6).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(2).unwrap().is_connected());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(!Graph::empty(0).unwrap().is_connected());
        assert_eq!(
            Graph::from_edges(5, [(0, 1), (2, 3)])
                .unwrap()
                .component_count(),
            3
        );
    }

    #[test]
    fn tameness() {
        for n in 1..=7 {
            assert!(!Graph::complete(n).unwrap().is_tame());
            assert!(!Graph::empty(n).unwrap().is_tame());
        }
        assert!(!Graph::complete(5).unwrap().is_tame());
        // K_{4,4} is 4-regular on 8 vertices
        let k44 = Graph::from_edges(8, (0..4).flat_map(|i| (4..8).map(move |j| (i, j)))).unwrap();
        assert!(k44.is_tame());
    }

    #[test]
    fn induced_c5() {
        assert!(Graph::cycle(5).unwrap().has_induced_c5());
        assert!(!Graph::cycle(6).unwrap().has_induced_c5());
        assert!(!Graph::complete(7).unwrap().has_induced_c5());
        let p = petersen();
        assert!(p.has_induced_c5());
        let s = p.find_induced_c5().unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(
            p.induced(s)
                .rows()
                .iter()
                .filter(|r| r.count_ones() == 2)
                .count(),
            5
        );
    }

    #[test]
    fn induced_c5_agrees_with_naive_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..3000 {
            let n = rng.gen_range(1..=9);
            let p: f64 = rng.gen_range(0.2..0.8);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(g.has_induced_c5(), naive_has_induced_c5(&g), "{g:?}");
        }
    }

    #[test]
    fn adjacency_validation() {
        assert_eq!(Graph::from_adjacency(&[0b1]), Err(GraphError::SelfLoop(0)));
        assert!(matches!(
            Graph::from_adjacency(&[0b100, 0b0]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        // asymmetric rows get symmetrized edge by edge
        let g = Graph::from_adjacency(&[0b10, 0b0]).unwrap();
        assert!(g.has_edge(1, 0));
        assert_eq!(Graph::empty(17), Err(GraphError::TooManyVertices(17)));
    }

    #[test]
    fn disjoint_union_and_padding() {
        let g = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.component_count(), 2);
        assert_eq!(
            Graph::cycle(4).unwrap().pad(4).unwrap().component_count(),
            5
        );
    }
}
