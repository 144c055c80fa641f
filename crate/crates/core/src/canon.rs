//! Canonical labeling by equitable partition refinement and a pruned search tree.
//!
//! The search individualizes vertices of the first non-singleton cell, refines,
//! and compares the relabeled graphs at the discrete leaves. Leaves that produce
//! an already-seen relabeled graph yield automorphisms; those prune sibling
//! subtrees (orbit pruning) and cut the current subtree short (jump back to the
//! level where the two leaf paths diverge). Only automorphism-based pruning is
//! used, so the minimum over explored leaves equals the minimum over all leaves.

use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::graph6::to_graph6;
use std::cmp::Ordering;
use std::fmt;

const GRAPH6_MAX_LEN: usize = 1 + (MAX_VERTICES * (MAX_VERTICES - 1) / 2).div_ceil(6);

/// Vertex map: `perm[v]` is the image of `v`.
pub type Perm = [u8; MAX_VERTICES];

/// graph6 bytes of the canonically relabeled graph. Equal iff isomorphic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalCode {
    len: u8,
    bytes: [u8; GRAPH6_MAX_LEN],
}

impl CanonicalCode {
    fn from_graph(g: &Graph) -> Self {
        let s = to_graph6(g);
        let mut bytes = [0u8; GRAPH6_MAX_LEN];
        bytes[..s.len()].copy_from_slice(s.as_bytes());
        CanonicalCode {
            len: s.len() as u8,
            bytes,
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes[..self.len as usize]
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(self.as_bytes()).expect("graph6 is ASCII")
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        crate::graph6::from_graph6(self.as_str()).expect("canonical code is valid graph6")
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_bytes().cmp(other.as_bytes())
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Output of [`canonical_labeling`].
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `lab[i]` is the vertex placed at canonical position `i`.
    pub lab: Perm,
    /// The graph relabeled so that `lab[i]` becomes `i`.
    pub canon: Graph,
    /// Generators of the automorphism group (identity omitted).
    pub generators: Vec<Perm>,
    /// `orbits[v]` is the smallest vertex in the automorphism orbit of `v`.
    pub orbits: Perm,
}

impl Labeling {
    pub fn code(&self) -> CanonicalCode {
        CanonicalCode::from_graph(&self.canon)
    }

    /// Inverse of `lab`: canonical position of each vertex.
    pub fn positions(&self) -> Perm {
        let mut pos = [0u8; MAX_VERTICES];
        for (i, &v) in self.lab[..self.canon.order()].iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        pos
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbits[u] == self.orbits[v]
    }

    pub fn orbit_count(&self) -> usize {
        (0..self.canon.order())
            .filter(|&v| self.orbits[v] as usize == v)
            .count()
    }
}

/// Ordered partition of the vertex set into cells (bit masks).
#[derive(Clone, Copy)]
struct Cells {
    len: u8,
    cell: [u16; MAX_VERTICES],
}

impl Cells {
    fn unit(n: usize) -> Self {
        let mut cell = [0u16; MAX_VERTICES];
        let len = if n > 0 {
            cell[0] = VertexSet::full(n).0;
            1
        } else {
            0
        };
        Cells { len, cell }
    }

    #[inline]
    fn cells(&self) -> &[u16] {
        &self.cell[..self.len as usize]
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len as usize == n
    }

    fn target(&self) -> Option<usize> {
        self.cells().iter().position(|c| c.count_ones() > 1)
    }

    /// Replaces cell `i` by `{v}` followed by the rest of the cell.
    fn individualize(&self, i: usize, v: usize) -> Cells {
        let mut out = *self;
        let len = self.len as usize;
        out.cell.copy_within(i + 1..len, i + 2);
        out.cell[i] = 1 << v;
        out.cell[i + 1] = self.cell[i] & !(1 << v);
        out.len += 1;
        out
    }
}

/// Refines `p` until it is equitable, starting from the given splitter queue.
///
/// A cell is split by the number of neighbors its members have in the splitter;
/// fragments keep the position of the old cell, ordered by increasing count.
fn refine(adj: &[u16], p: &mut Cells, initial: &[u16]) {
    let n = adj.len();
    let mut queue = [0u16; 4 * MAX_VERTICES * MAX_VERTICES];
    let mut head = 0;
    let mut tail = 0;
    for &w in initial {
        queue[tail] = w;
        tail += 1;
    }
    while head < tail && !p.is_discrete(n) {
        let w = queue[head];
        head += 1;
        let mut i = 0;
        while i < p.len as usize {
            let x = p.cell[i];
            if x & (x - 1) == 0 {
                i += 1;
                continue;
            }
            let mut by_count = [0u16; MAX_VERTICES + 1];
            let mut lo = usize::MAX;
            let mut hi = 0;
            let mut rest = x;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let c = (adj[v] & w).count_ones() as usize;
                by_count[c] |= 1 << v;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                i += 1;
                continue;
            }
            let frags = by_count[lo..=hi].iter().filter(|&&m| m != 0).count();
            let len = p.len as usize;
            p.cell.copy_within(i + 1..len, i + frags);
            let mut j = i;
            for &m in by_count[lo..=hi].iter().filter(|&&m| m != 0) {
                p.cell[j] = m;
                if tail < queue.len() {
                    queue[tail] = m;
                    tail += 1;
                }
                j += 1;
            }
            p.len += (frags - 1) as u8;
            i = j;
        }
    }
}

struct UnionFind([u8; MAX_VERTICES]);

impl UnionFind {
    fn new() -> Self {
        let mut p = [0u8; MAX_VERTICES];
        for (i, x) in p.iter_mut().enumerate() {
            *x = i as u8;
        }
        UnionFind(p)
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] as usize != v {
            self.0[v] = self.0[self.0[v] as usize];
            v = self.0[v] as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.0[hi] = lo as u8;
        }
    }
}

struct Leaf {
    key: u128,
    lab: Perm,
    path: Vec<u8>,
}

struct Search<'a> {
    adj: &'a [u16],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Perm>,
}

/// Bits of the relabeled graph in graph6 order, first bit most significant.
fn leaf_key(adj: &[u16], lab: &Perm) -> u128 {
    let n = adj.len();
    let mut pos = [0u8; MAX_VERTICES];
    for i in 0..n {
        pos[lab[i] as usize] = i as u8;
    }
    let mut key = 0u128;
    for j in 1..n {
        let mut row = 0u16;
        let mut nb = adj[lab[j] as usize];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            row |= 1 << pos[u];
        }
        let col = (row & ((1u16 << j) - 1)).reverse_bits() >> (16 - j);
        key = key << j | col as u128;
    }
    key
}

impl Search<'_> {
    fn lab_of(&self, p: &Cells) -> Perm {
        let mut lab = [0u8; MAX_VERTICES];
        for (i, &c) in p.cells().iter().enumerate() {
            lab[i] = c.trailing_zeros() as u8;
        }
        lab
    }

    fn record_automorphism(&mut self, from: &Perm, to: &Perm) {
        let mut gamma = [0u8; MAX_VERTICES];
        for i in 0..MAX_VERTICES {
            gamma[i] = i as u8;
        }
        for i in 0..self.n {
            gamma[from[i] as usize] = to[i];
        }
        if (0..self.n).any(|v| gamma[v] as usize != v) {
            self.generators.push(gamma);
        }
    }

    /// Returns `Some(level)` to abandon everything below the node at `level`.
    fn visit(&mut self, p: Cells, path: &mut Vec<u8>) -> Option<usize> {
        let level = path.len();
        let Some(t) = p.target() else {
            return self.leaf(&p, path);
        };
        let tcell = p.cell[t];
        let mut tried = 0u16;
        for v in VertexSet(tcell) {
            if tried != 0 {
                let mut uf = UnionFind::new();
                for g in &self.generators {
                    if path.iter().all(|&x| g[x as usize] == x) {
                        for u in VertexSet(tcell) {
                            uf.union(u, g[u] as usize);
                        }
                    }
                }
                let root = uf.find(v);
                if VertexSet(tried).iter().any(|w| uf.find(w) == root) {
                    continue;
                }
            }
            tried |= 1 << v;
            let mut child = p.individualize(t, v);
            refine(self.adj, &mut child, &[1 << v]);
            path.push(v as u8);
            let jump = self.visit(child, path);
            path.pop();
            match jump {
                Some(l) if l < level => return Some(l),
                _ => {}
            }
        }
        None
    }

    fn leaf(&mut self, p: &Cells, path: &[u8]) -> Option<usize> {
        let lab = self.lab_of(p);
        let key = leaf_key(self.adj, &lab);
        let common = |other: &[u8]| path.iter().zip(other).take_while(|(a, b)| a == b).count();
        match (&self.first, &self.best) {
            (None, _) => {
                let leaf = Leaf {
                    key,
                    lab,
                    path: path.to_vec(),
                };
                self.best = Some(Leaf {
                    key,
                    lab,
                    path: path.to_vec(),
                });
                self.first = Some(leaf);
                None
            }
            (Some(first), _) if first.key == key => {
                let (to, l) = (first.lab, common(&first.path));
                self.record_automorphism(&lab, &to);
                Some(l)
            }
            (_, Some(best)) if best.key == key => {
                let (to, l) = (best.lab, common(&best.path));
                self.record_automorphism(&lab, &to);
                Some(l)
            }
            (_, Some(best)) if key < best.key => {
                self.best = Some(Leaf {
                    key,
                    lab,
                    path: path.to_vec(),
                });
                None
            }
            _ => None,
        }
    }
}

fn search(adj: &[u16], initial: Cells) -> Labeling {
    let n = adj.len();
    let mut p = initial;
    let splitters: Vec<u16> = p.cells().to_vec();
    refine(adj, &mut p, &splitters);
    let mut s = Search {
        adj,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::with_capacity(n);
    s.visit(p, &mut path);
    let best = s.best.expect("search reaches at least one leaf");

    let mut uf = UnionFind::new();
    for g in &s.generators {
        for v in 0..n {
            uf.union(v, g[v] as usize);
        }
    }
    let mut orbits = [0u8; MAX_VERTICES];
    for (v, o) in orbits.iter_mut().enumerate().take(n) {
        *o = uf.find(v) as u8;
    }
    let mut pos = vec![0usize; n];
    for i in 0..n {
        pos[best.lab[i] as usize] = i;
    }
    let g = Graph::from_adjacency(adj).expect("valid adjacency");
    Labeling {
        lab: best.lab,
        canon: g.permute(&pos),
        generators: s.generators,
        orbits,
    }
}

/// Canonical labeling of `g` together with its automorphism group.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    if g.order() == 0 {
        return Labeling {
            lab: [0; MAX_VERTICES],
            canon: *g,
            generators: Vec::new(),
            orbits: [0; MAX_VERTICES],
        };
    }
    search(g.rows(), Cells::unit(g.order()))
}

/// Canonical labeling respecting an ordered vertex coloring: `colors` is a list
/// of disjoint vertex sets covering `0..n`, and only color-preserving maps count.
/// Two colored graphs get the same canonical graph iff some color-preserving
/// isomorphism exists (for colorings listed in the same order).
pub fn canonical_labeling_colored(g: &Graph, colors: &[VertexSet]) -> Labeling {
    let n = g.order();
    let mut cells = Cells::unit(0);
    let mut covered = 0u16;
    for c in colors.iter().filter(|c| !c.is_empty()) {
        assert_eq!(covered & c.0, 0, "color classes overlap");
        covered |= c.0;
        cells.cell[cells.len as usize] = c.0;
        cells.len += 1;
    }
    assert_eq!(
        covered,
        VertexSet::full(n).0,
        "colors must cover every vertex"
    );
    if n == 0 {
        return canonical_labeling(g);
    }
    search(g.rows(), cells)
}

/// Relabeling-invariant code of `g`.
///
/// Isolated vertices carry no structure, so they are set aside and placed after
/// the canonically labeled remainder. This keeps padded link graphs cheap.
pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_graph(g).1
}

fn canonical_graph(g: &Graph) -> (Graph, CanonicalCode) {
    let n = g.order();
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
    if isolated == 0 || isolated == n {
        let l = canonical_labeling(g);
        let code = l.code();
        return (l.canon, code);
    }
    let core = g.induced(VertexSet::from_vertices(
        (0..n).filter(|&v| g.degree(v) > 0),
    ));
    let canon = canonical_labeling(&core)
        .canon
        .pad(isolated)
        .expect("same vertex count as g");
    (canon, CanonicalCode::from_graph(&canon))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_form(g) == canonical_form(h)
}

/// Sorted, deduplicated canonical codes with binary-search membership.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CanonicalSet {
    codes: Vec<CanonicalCode>,
}

impl CanonicalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.contains_code(&canonical_form(g))
    }

    pub fn contains_code(&self, code: &CanonicalCode) -> bool {
        self.codes.binary_search(code).is_ok()
    }

    pub fn codes(&self) -> &[CanonicalCode] {
        &self.codes
    }

    /// Sorted file of graph6 lines, one per code.
    pub fn write_to<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for c in &self.codes {
            writeln!(w, "{c}")?;
        }
        Ok(())
    }

    /// Reads graph6 lines and canonicalizes each; input order is irrelevant.
    pub fn read_from<R: std::io::BufRead>(r: R) -> Result<Self, crate::graph6::ReadError> {
        let graphs = crate::graph6::read_graphs(r)?;
        Ok(build_canonical_set(graphs.iter()))
    }
}

impl<'a> FromIterator<&'a Graph> for CanonicalSet {
    fn from_iter<I: IntoIterator<Item = &'a Graph>>(iter: I) -> Self {
        build_canonical_set(iter)
    }
}

pub fn build_canonical_set<'a, I: IntoIterator<Item = &'a Graph>>(graphs: I) -> CanonicalSet {
    let mut codes: Vec<CanonicalCode> = graphs.into_iter().map(canonical_form).collect();
    codes.sort_unstable();
    codes.dedup();
    CanonicalSet { codes }
}
