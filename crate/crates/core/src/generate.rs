//! Isomorph-free generation by canonical augmentation (vertex addition).
//!
//! A graph on `k + 1` vertices is produced from a parent on `k` vertices by
//! adding vertex `k` with neighbor mask `S`. The child is kept iff
//!
//! 1. `S` is the smallest mask in its orbit under the parent's automorphism group, and
//! 2. the new vertex lies in the orbit of the child's canonical deletion vertex.
//!
//! The canonical deletion vertex is chosen among vertices of maximum degree,
//! then maximum neighbor-degree sum, and among those the one with the largest
//! canonical position. The two cheap invariants decide most children without a
//! canonical labeling.
//!
//! Deleting a vertex never raises a degree and lowers each by at most one, so
//! `max degree <= dmax` and `min degree >= dmin - (vertices still to add)` are
//! enforced at every level. Connectivity is only checked on the final graphs.

use crate::canon::{canonical_labeling, Perm};
use crate::graph::{Graph, MAX_VERTICES};
use std::ops::AddAssign;

/// What to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub dmin: usize,
    pub dmax: usize,
    pub connected: bool,
}

impl GenConfig {
    pub fn connected(n: usize, dmin: usize, dmax: usize) -> Self {
        GenConfig {
            n,
            dmin,
            dmax,
            connected: true,
        }
    }

    pub fn all(n: usize) -> Self {
        GenConfig {
            n,
            dmin: 0,
            dmax: n.saturating_sub(1),
            connected: false,
        }
    }

    /// No graph can satisfy the bounds.
    pub fn is_degenerate(&self) -> bool {
        self.n == 0 || self.n > MAX_VERTICES || self.dmin > self.dmax || self.dmin > self.n - 1
    }

    fn dmax_eff(&self) -> usize {
        self.dmax.min(self.n.saturating_sub(1))
    }
}

/// Counters from one generation run. Merged by summation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenSummary {
    /// Graphs handed to the sink.
    pub emitted: u64,
    /// Accepted graphs below the final size.
    pub interior: u64,
    /// Full canonical labelings computed.
    pub labelings: u64,
}

impl AddAssign for GenSummary {
    fn add_assign(&mut self, o: GenSummary) {
        self.emitted += o.emitted;
        self.interior += o.interior;
        self.labelings += o.labelings;
    }
}

/// Generator for one [`GenConfig`]; the search tree can be cut at any level
/// into independent subtrees.
#[derive(Clone, Debug)]
pub struct Generator {
    cfg: GenConfig,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Self {
        Generator { cfg }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    /// Runs the whole search, emitting one graph per isomorphism class.
    pub fn run(&self, sink: &mut dyn FnMut(&Graph)) -> GenSummary {
        let mut summary = GenSummary::default();
        if self.cfg.is_degenerate() {
            return summary;
        }
        let root = Graph::empty(1).expect("one vertex");
        self.descend(&root, sink, &mut summary);
        summary
    }

    /// Roots of the subtrees obtained by cutting the search at `level` vertices
    /// (clamped to `1..=n`), in emission order.
    pub fn subtree_roots(&self, level: usize) -> Vec<Graph> {
        let mut out = Vec::new();
        if self.cfg.is_degenerate() {
            return out;
        }
        let level = level.clamp(1, self.cfg.n);
        let mut summary = GenSummary::default();
        let root = Graph::empty(1).expect("one vertex");
        self.collect_level(&root, level, &mut out, &mut summary);
        out
    }

    /// Generates every final graph below `root`, a graph returned by
    /// [`Generator::subtree_roots`].
    pub fn run_subtree(&self, root: &Graph, sink: &mut dyn FnMut(&Graph)) -> GenSummary {
        let mut summary = GenSummary::default();
        self.descend(root, sink, &mut summary);
        summary
    }

    fn collect_level(
        &self,
        g: &Graph,
        level: usize,
        out: &mut Vec<Graph>,
        summary: &mut GenSummary,
    ) {
        if g.order() == level {
            out.push(*g);
            return;
        }
        self.for_each_child(g, summary, &mut |child, summary| {
            self.collect_level(child, level, out, summary)
        });
    }

    fn descend(&self, g: &Graph, sink: &mut dyn FnMut(&Graph), summary: &mut GenSummary) {
        if g.order() == self.cfg.n {
            if self.leaf_ok(g) {
                summary.emitted += 1;
                sink(g);
            }
            return;
        }
        if g.order() > 1 {
            summary.interior += 1;
        }
        self.for_each_child(g, summary, &mut |child, summary| {
            self.descend(child, sink, summary)
        });
    }

    fn leaf_ok(&self, g: &Graph) -> bool {
        let n = g.order();
        let ok_deg = (0..n).all(|v| {
            let d = g.degree(v);
            d >= self.cfg.dmin && d <= self.cfg.dmax
        });
        ok_deg && (!self.cfg.connected || g.is_connected())
    }

    fn for_each_child(
        &self,
        parent: &Graph,
        summary: &mut GenSummary,
        f: &mut dyn FnMut(&Graph, &mut GenSummary),
    ) {
        let k = parent.order();
        let n = self.cfg.n;
        debug_assert!(k < n);
        let dmax = self.cfg.dmax_eff();
        let need = self.cfg.dmin.saturating_sub(n - (k + 1));

        let mut deg = [0usize; MAX_VERTICES];
        let mut by_deg = [0u16; MAX_VERTICES + 1];
        for (v, d) in deg.iter_mut().enumerate().take(k) {
            *d = parent.degree(v);
            by_deg[*d] |= 1 << v;
        }
        let top = (0..k).map(|v| deg[v]).max().unwrap_or(0);
        let saturated = if dmax <= MAX_VERTICES {
            by_deg[dmax]
        } else {
            0
        };
        // vertices that fall short of `need` unless joined to the new vertex
        let mut must = 0u16;
        for (v, &d) in deg.iter().enumerate().take(k) {
            if d + 1 < need {
                return;
            }
            if d < need {
                must |= 1 << v;
            }
        }
        if must & saturated != 0 {
            return;
        }

        let generators = {
            summary.labelings += 1;
            canonical_labeling(parent).generators
        };
        let mut seen = if generators.is_empty() {
            Vec::new()
        } else {
            vec![0u64; (1usize << k).div_ceil(64)]
        };

        let lo = need.max(top);
        for s_mask in 0u32..1 << k {
            let s_mask = s_mask as u16;
            let s = s_mask.count_ones() as usize;
            if s < lo || s > dmax || s_mask & saturated != 0 || s_mask & must != must {
                continue;
            }
            // new vertex needs maximum degree in the child
            if s == top && s_mask & by_deg[top] != 0 {
                continue;
            }
            if !seen.is_empty() {
                if seen[s_mask as usize / 64] >> (s_mask % 64) & 1 == 1 {
                    continue;
                }
                mark_orbit(s_mask, &generators, k, &mut seen);
            }

            let mut child = parent.pad(1).expect("k < n <= 16");
            for u in crate::graph::VertexSet(s_mask) {
                child.add_edge(u, k).expect("in range");
            }
            if self.is_canonical_extension(&child, s_mask, &deg, &by_deg, summary) {
                f(&child, summary);
            }
        }
    }

    fn is_canonical_extension(
        &self,
        child: &Graph,
        s_mask: u16,
        deg: &[usize; MAX_VERTICES],
        by_deg: &[u16; MAX_VERTICES + 1],
        summary: &mut GenSummary,
    ) -> bool {
        let k = child.order() - 1;
        let s = s_mask.count_ones() as usize;
        let mut ties = by_deg[s] & !s_mask;
        if s >= 1 {
            ties |= by_deg[s - 1] & s_mask;
        }
        if ties == 0 {
            return true;
        }
        let child_deg = |v: usize| -> usize {
            if v == k {
                s
            } else {
                deg[v] + (s_mask >> v & 1) as usize
            }
        };
        let nsum = |v: usize| -> usize { child.neighbors(v).iter().map(child_deg).sum() };
        let mine = nsum(k);
        let mut rivals = 0u16;
        for v in crate::graph::VertexSet(ties) {
            let x = nsum(v);
            if x > mine {
                return false;
            }
            if x == mine {
                rivals |= 1 << v;
            }
        }
        if rivals == 0 {
            return true;
        }
        summary.labelings += 1;
        let lab = canonical_labeling(child);
        let pos = lab.positions();
        let chosen = crate::graph::VertexSet(rivals | 1 << k)
            .iter()
            .max_by_key(|&v| pos[v])
            .expect("nonempty");
        lab.same_orbit(chosen, k)
    }
}

fn apply(g: &Perm, mask: u16) -> u16 {
    let mut out = 0u16;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << g[v];
    }
    out
}

/// Marks every mask in the orbit of `start` under the group generated by `gens`.
fn mark_orbit(start: u16, gens: &[Perm], _k: usize, seen: &mut [u64]) {
    let mut stack = vec![start];
    seen[start as usize / 64] |= 1 << (start % 64);
    while let Some(m) = stack.pop() {
        for g in gens {
            let img = apply(g, m);
            let (w, b) = (img as usize / 64, img % 64);
            if seen[w] >> b & 1 == 0 {
                seen[w] |= 1 << b;
                stack.push(img);
            }
        }
    }
}

/// One representative per isomorphism class of connected `n`-vertex graphs with
/// all degrees in `[dmin, dmax]`. Unsatisfiable bounds give an empty stream.
pub fn generate_connected(
    n: usize,
    dmin: usize,
    dmax: usize,
    sink: &mut dyn FnMut(&Graph),
) -> GenSummary {
    Generator::new(GenConfig::connected(n, dmin, dmax)).run(sink)
}

/// One representative per isomorphism class of all `n`-vertex graphs.
pub fn generate_all(n: usize, sink: &mut dyn FnMut(&Graph)) -> GenSummary {
    Generator::new(GenConfig::all(n)).run(sink)
}

/// Convenience: collect into a vector.
pub fn collect(cfg: GenConfig) -> Vec<Graph> {
    let mut out = Vec::new();
    Generator::new(cfg).run(&mut |g| out.push(*g));
    out
}
