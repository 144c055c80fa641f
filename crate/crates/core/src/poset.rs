//! Small posets, their comparability graphs, and the exhaustive torsion check
//! on order complexes.

use crate::canon::{canonical_labeling_colored, CanonicalCode};
use crate::graph::{Graph, VertexSet};
use crate::homology::has_h1_torsion;
use std::collections::HashSet;
use std::fmt;

/// Largest poset [`enumerate_posets`] handles: the labeling encoding uses
/// `2n` vertices.
pub const MAX_POSET: usize = 8;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset size {0} outside 1..=16")]
    Size(usize),
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("{0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive through {0}")]
    NotTransitive(usize),
    #[error("bit outside the ground set in row {0}")]
    OutOfRange(usize),
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Partial order on `0..n`; `leq[x]` is the up-set `{ y : x <= y }`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Poset {
    n: u8,
    leq: [u16; 16],
}

impl Poset {
    pub fn from_leq(rows: &[u16]) -> Result<Self, PosetError> {
        let n = rows.len();
        if n == 0 || n > 16 {
            return Err(PosetError::Size(n));
        }
        let mut leq = [0u16; 16];
        leq[..n].copy_from_slice(rows);
        let p = Poset { n: n as u8, leq };
        p.validate()?;
        Ok(p)
    }

    /// Total order `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self, PosetError> {
        let rows: Vec<u16> = (0..n).map(|x| (VertexSet::full(n).0 >> x) << x).collect();
        Self::from_leq(&rows)
    }

    pub fn antichain(n: usize) -> Result<Self, PosetError> {
        let rows: Vec<u16> = (0..n).map(|x| 1 << x).collect();
        Self::from_leq(&rows)
    }

    /// Subsets of `0..k` under inclusion; element `i` is the set with bit mask `i`.
    pub fn boolean_lattice(k: usize) -> Result<Self, PosetError> {
        let n = 1usize << k;
        let rows: Vec<u16> = (0..n)
            .map(|x| (0..n).filter(|&y| x & y == x).fold(0u16, |m, y| m | 1 << y))
            .collect();
        Self::from_leq(&rows)
    }

    /// Builds the order generated by the cover pairs `(x, y)` meaning `x < y`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n == 0 || n > 16 {
            return Err(PosetError::Size(n));
        }
        let mut leq = [0u16; 16];
        for (x, row) in leq.iter_mut().enumerate().take(n) {
            *row = 1 << x;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(PosetError::OutOfRange(x.max(y)));
            }
            leq[x] |= 1 << y;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut up = leq[x];
                for y in VertexSet(leq[x]) {
                    up |= leq[y];
                }
                if up != leq[x] {
                    leq[x] = up;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::from_leq(&leq[..n])
    }

    pub fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        let full = VertexSet::full(n).0;
        for x in 0..n {
            let row = self.leq[x];
            if row & !full != 0 {
                return Err(PosetError::OutOfRange(x));
            }
            if row >> x & 1 == 0 {
                return Err(PosetError::NotReflexive(x));
            }
            for y in VertexSet(row) {
                if y != x && self.leq[y] >> x & 1 == 1 {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
                if self.leq[y] & !row != 0 {
                    return Err(PosetError::NotTransitive(y));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x] >> y & 1 == 1
    }

    pub fn up_set(&self, x: usize) -> VertexSet {
        VertexSet(self.leq[x])
    }

    pub fn down_set(&self, y: usize) -> VertexSet {
        VertexSet::from_vertices((0..self.len()).filter(|&x| self.leq(x, y)))
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> VertexSet {
        let strict = self.leq[x] & !(1 << x);
        let mut covers = strict;
        for y in VertexSet(strict) {
            covers &= !(self.leq[y] & !(1 << y));
        }
        VertexSet(covers)
    }

    pub fn is_down_closed(&self, s: VertexSet) -> bool {
        s.iter().all(|y| self.down_set(y).is_subset(s))
    }

    /// New maximal element `n` placed above exactly the down-closed set `below`.
    pub fn extend_maximal(&self, below: VertexSet) -> Poset {
        debug_assert!(self.is_down_closed(below) && self.len() < 16);
        let m = self.len();
        let mut out = *self;
        for x in below {
            out.leq[x] |= 1 << m;
        }
        out.leq[m] = 1 << m;
        out.n += 1;
        out
    }

    /// Canonical code of the bipartite encoding `x -- y'` iff `x <= y`, with
    /// the two sides as ordered color classes. Two posets share a code iff
    /// they are isomorphic.
    pub fn canonical_code(&self) -> CanonicalCode {
        let n = self.len();
        assert!(n <= MAX_POSET, "encoding needs 2n <= 16 vertices");
        let mut g = Graph::empty(2 * n).expect("2n <= 16");
        for x in 0..n {
            for y in VertexSet(self.leq[x]) {
                g.add_edge(x, n + y).expect("in range");
            }
        }
        let low = VertexSet::full(n);
        let high = VertexSet(low.0 << n);
        canonical_labeling_colored(&g, &[low, high]).code()
    }

    /// Renames `x` to `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> Poset {
        let mut leq = [0u16; 16];
        for x in 0..self.len() {
            for y in VertexSet(self.leq[x]) {
                leq[perm[x]] |= 1 << perm[y];
            }
        }
        Poset { n: self.n, leq }
    }

    /// Text form: `n`, then one line per element with its upper covers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for x in 0..self.len() {
            let covers: Vec<String> = self.upper_covers(x).iter().map(|y| y.to_string()).collect();
            s.push_str(&covers.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Poset, PosetError> {
        let mut lines = text.lines().enumerate();
        let (_, head) = lines.next().ok_or(PosetError::Parse {
            line: 1,
            reason: "empty input".into(),
        })?;
        let n: usize = head.trim().parse().map_err(|_| PosetError::Parse {
            line: 1,
            reason: format!("bad size {head:?}"),
        })?;
        let mut pairs = Vec::new();
        let mut rows = 0;
        for (i, line) in lines.take(n) {
            rows += 1;
            for tok in line.split_whitespace() {
                let y: usize = tok.parse().map_err(|_| PosetError::Parse {
                    line: i + 1,
                    reason: format!("bad element {tok:?}"),
                })?;
                pairs.push((i - 1, y));
            }
        }
        if rows != n {
            return Err(PosetError::Parse {
                line: rows + 2,
                reason: format!("expected {n} element lines, found {rows}"),
            });
        }
        Poset::from_relations(n, &pairs)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({:?})", &self.leq[..self.len()])
    }
}

/// Edge between every two distinct comparable elements. Its clique complex is
/// the order complex.
pub fn comparability_graph(p: &Poset) -> Graph {
    let n = p.len();
    let mut rows = vec![0u16; n];
    for x in 0..n {
        let strict = p.leq[x] & !(1 << x);
        rows[x] |= strict;
        for y in VertexSet(strict) {
            rows[y] |= 1 << x;
        }
    }
    Graph::from_adjacency(&rows).expect("symmetric, loop-free")
}

/// `g` has an induced 5-cycle, so it is not a comparability graph.
pub fn obstructs_comparability(g: &Graph) -> bool {
    g.has_induced_c5()
}

/// Emits one poset per isomorphism class on `n` elements and returns the
/// class count. Every poset arises from a smaller one by adding a maximal
/// element above a down-closed set; classes are deduplicated by canonical code.
pub fn enumerate_posets(n: usize, sink: &mut dyn FnMut(&Poset)) -> usize {
    assert!(
        (1..=MAX_POSET).contains(&n),
        "poset enumeration supports 1..=8"
    );
    let mut level = vec![Poset::antichain(1).expect("n = 1")];
    for _ in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            let m = p.len();
            for s in 0u16..(1 << m) {
                let below = VertexSet(s);
                if p.is_down_closed(below) {
                    let q = p.extend_maximal(below);
                    if seen.insert(q.canonical_code()) {
                        next.push(q);
                    }
                }
            }
        }
        level = next;
    }
    for p in &level {
        sink(p);
    }
    level.len()
}

/// Per-size outcome of [`verify_small_posets_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetLevel {
    pub n: usize,
    pub classes: usize,
    pub torsion: usize,
    pub induced_c5: usize,
}

impl fmt::Display for PosetLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} classes={} torsion={} induced_c5={}",
            self.n, self.classes, self.torsion, self.induced_c5
        )
    }
}

/// Computes `H_1` of every order complex on `1..=n` elements directly, and
/// checks each comparability graph for an induced 5-cycle.
pub fn verify_small_posets_report(n: usize) -> Vec<PosetLevel> {
    (1..=n)
        .map(|k| {
            let mut lvl = PosetLevel {
                n: k,
                classes: 0,
                torsion: 0,
                induced_c5: 0,
            };
            lvl.classes = enumerate_posets(k, &mut |p| {
                let g = comparability_graph(p);
                lvl.torsion += has_h1_torsion(&g) as usize;
                lvl.induced_c5 += g.has_induced_c5() as usize;
            });
            lvl
        })
        .collect()
}

/// No poset on at most `n` elements has torsion in `H_1` of its order complex.
pub fn verify_small_posets(n: usize) -> bool {
    verify_small_posets_report(n).iter().all(|l| l.torsion == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(Poset::chain(4).is_ok());
        assert_eq!(
            Poset::from_leq(&[0b01, 0b10, 0]),
            Err(PosetError::NotReflexive(2))
        );
        assert_eq!(
            Poset::from_leq(&[0b11, 0b11]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert_eq!(
            Poset::from_leq(&[0b011, 0b110, 0b100]),
            Err(PosetError::NotTransitive(1))
        );
        assert_eq!(Poset::from_leq(&[0b101]), Err(PosetError::OutOfRange(0)));
        assert_eq!(Poset::from_leq(&[]), Err(PosetError::Size(0)));
    }

    #[test]
    fn comparability_examples() {
        let anti = comparability_graph(&Poset::antichain(5).unwrap());
        assert_eq!(anti.edge_count(), 0);
        assert_eq!(
            comparability_graph(&Poset::chain(4).unwrap()),
            Graph::complete(4).unwrap()
        );
        // bottom 0, atoms 1 and 2, top 3: a 4-cycle plus the chord {0, 3}
        let b2 = comparability_graph(&Poset::boolean_lattice(2).unwrap());
        let expected = Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        assert_eq!(b2, expected);
    }

    #[test]
    fn obstruction_examples() {
        assert!(obstructs_comparability(&Graph::cycle(5).unwrap()));
        assert!(!obstructs_comparability(&Graph::complete(6).unwrap()));
        assert!(!obstructs_comparability(&Graph::cycle(4).unwrap()));
    }

    #[test]
    fn covers_and_text() {
        let b2 = Poset::boolean_lattice(2).unwrap();
        assert_eq!(b2.upper_covers(0), VertexSet::from_vertices([1, 2]));
        assert_eq!(b2.upper_covers(3), VertexSet(0));
        assert_eq!(b2.to_text(), "4\n1 2\n3\n3\n\n");
        assert_eq!(Poset::parse(&b2.to_text()).unwrap(), b2);
        assert!(Poset::parse("3\n1\n").is_err());
        assert!(Poset::parse("x\n").is_err());
    }

    #[test]
    fn code_is_label_invariant() {
        let p = Poset::from_relations(5, &[(0, 1), (1, 2), (0, 3), (4, 2)]).unwrap();
        let q = p.permute(&[3, 0, 4, 1, 2]);
        assert!(q.validate().is_ok());
        assert_eq!(p.canonical_code(), q.canonical_code());
        let vee = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let wedge = Poset::from_relations(3, &[(1, 0), (2, 0)]).unwrap();
        assert_ne!(vee.canonical_code(), wedge.canonical_code());
        assert_eq!(comparability_graph(&vee), comparability_graph(&wedge));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_posets(n, &mut |_| {})).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn small_posets_are_torsion_free() {
        assert!(verify_small_posets(5));
        for l in verify_small_posets_report(5) {
            assert_eq!(l.induced_c5, 0);
        }
    }
}
