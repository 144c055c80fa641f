//! Topological classification of torsion survivors: surface recognition,
//! greedy elementary collapses, and a homology-signature fallback.

use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::homology::{clique_complex, homology_all, HomologyGroup, Simplex, SimplicialComplex};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Outcome of [`surface_check`]. `orientable` is only meaningful when
/// `is_closed_surface` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub is_pure_2d: bool,
    pub is_closed_surface: bool,
    pub orientable: bool,
    pub euler: i64,
    pub connected: bool,
}

impl SurfaceReport {
    /// Connected closed non-orientable surface with χ = 1.
    pub fn is_rp2(&self) -> bool {
        self.is_closed_surface && self.connected && !self.orientable && self.euler == 1
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn is_connected_complex(c: &SimplicialComplex) -> bool {
    let used = c.used_vertices();
    if used.is_empty() {
        return false;
    }
    let mut parent: Vec<usize> = (0..c.vertex_bound()).collect();
    for f in c.facets() {
        for w in f.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, used[0]);
    used.iter().all(|&v| find(&mut parent, v) == root)
}

/// Orientation (+1 or -1) that triangle `t`, oriented by `sign` relative to its
/// sorted order, induces on the sorted edge `e`.
fn induced_sign(t: &[usize], sign: i8, e: (usize, usize)) -> i8 {
    // sorted triangle (a, b, c) has boundary (b, c) - (a, c) + (a, b)
    let missing = t
        .iter()
        .position(|&v| v != e.0 && v != e.1)
        .expect("edge of triangle");
    let s = if missing == 1 { -1 } else { 1 };
    s * sign
}

/// Closed-surface test, orientability and Euler characteristic of a
/// 2-dimensional complex.
pub fn surface_check(c: &SimplicialComplex) -> SurfaceReport {
    let euler = c.euler_characteristic();
    let connected = is_connected_complex(c);
    let is_pure_2d = !c.facets().is_empty() && c.facets().iter().all(|f| f.len() == 3);
    let mut report = SurfaceReport {
        is_pure_2d,
        is_closed_surface: false,
        orientable: false,
        euler,
        connected,
    };
    if !is_pure_2d {
        return report;
    }
    let tris = c.facets();
    let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            edge_tris.entry(e).or_default().push(i);
        }
    }
    if edge_tris.values().any(|ts| ts.len() != 2) {
        return report;
    }
    // each vertex link is 2-regular here; it must also be a single cycle
    for v in c.used_vertices() {
        let link: Vec<(usize, usize)> = edge_tris
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(&e, _)| e)
            .collect();
        let ring: Vec<usize> = link
            .iter()
            .map(|&(a, b)| if a == v { b } else { a })
            .collect();
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in tris.iter().filter(|t| t.contains(&v)) {
            let others: Vec<usize> = t.iter().copied().filter(|&u| u != v).collect();
            adj.entry(others[0]).or_default().push(others[1]);
            adj.entry(others[1]).or_default().push(others[0]);
        }
        let (mut prev, mut cur, mut steps) = (usize::MAX, ring[0], 0);
        loop {
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&u| u != prev)
                .expect("2-regular");
            prev = cur;
            cur = next;
            steps += 1;
            if cur == ring[0] {
                break;
            }
        }
        if steps != ring.len() {
            return report;
        }
    }
    report.is_closed_surface = connected;
    // orientation propagation across shared edges
    let mut sign = vec![0i8; tris.len()];
    let mut orientable = true;
    for start in 0..tris.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let t = &tris[i];
            for e in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let j = *edge_tris[&e]
                    .iter()
                    .find(|&&j| j != i)
                    .expect("two triangles");
                let want = -induced_sign(t, sign[i], e);
                let needed = want * induced_sign(&tris[j], 1, e);
                if sign[j] == 0 {
                    sign[j] = needed;
                    stack.push(j);
                } else if sign[j] != needed {
                    orientable = false;
                }
            }
        }
    }
    report.orientable = orientable;
    report
}

/// All faces of `c` with the number of faces one dimension up containing each.
fn face_table(c: &SimplicialComplex) -> BTreeMap<Simplex, usize> {
    let mut faces: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in c.facets() {
        let k = f.len();
        for mask in 1u32..(1 << k) {
            let s: Simplex = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| f[i])
                .collect();
            faces.entry(s).or_insert(0);
        }
    }
    let keys: Vec<Simplex> = faces.keys().cloned().collect();
    for s in keys {
        for i in 0..s.len() {
            if s.len() > 1 {
                let mut b = s.clone();
                b.remove(i);
                *faces.get_mut(&b).expect("closed under faces") += 1;
            }
        }
    }
    faces
}

fn collapse_with(c: &SimplicialComplex, first: Option<&Simplex>) -> SimplicialComplex {
    let mut faces = face_table(c);
    let mut free: BTreeSet<Simplex> = faces
        .iter()
        .filter(|(_, &cnt)| cnt == 1)
        .map(|(s, _)| s.clone())
        .collect();
    let mut forced = first.cloned();
    loop {
        let sigma = match forced.take() {
            Some(s) if free.contains(&s) => s,
            _ => match free.iter().next() {
                Some(s) => s.clone(),
                None => break,
            },
        };
        let tau = (0..c.vertex_bound())
            .filter(|v| !sigma.contains(v))
            .map(|v| {
                let mut t = sigma.clone();
                t.push(v);
                t.sort_unstable();
                t
            })
            .find(|t| faces.contains_key(t))
            .expect("free face has a coface");
        for s in [&tau, &sigma] {
            faces.remove(s);
            free.remove(s);
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut b = s.clone();
                    b.remove(i);
                    if let Some(cnt) = faces.get_mut(&b) {
                        *cnt -= 1;
                        if *cnt == 1 {
                            free.insert(b);
                        } else {
                            free.remove(&b);
                        }
                    }
                }
            }
        }
    }
    let maximal: Vec<Simplex> = faces
        .into_iter()
        .filter(|(_, cnt)| *cnt == 0)
        .map(|(s, _)| s)
        .collect();
    SimplicialComplex::new(c.vertex_bound(), maximal).expect("faces of a valid complex")
}

/// Repeated elementary collapses, always removing the lexicographically
/// smallest free face together with its unique coface, until none is left.
pub fn greedy_collapse(c: &SimplicialComplex) -> SimplicialComplex {
    collapse_with(c, None)
}

/// Free faces of `c` in lexicographic order.
pub fn free_faces(c: &SimplicialComplex) -> Vec<Simplex> {
    face_table(c)
        .into_iter()
        .filter(|(_, cnt)| *cnt == 1)
        .map(|(s, _)| s)
        .collect()
}

/// Greedy collapse, then if the core is not ℝP², retry with each other free
/// face of `c` as the first move (up to `limit` of them). Returns the first
/// core that is an ℝP², else the plain greedy core.
pub fn collapse_toward_rp2(c: &SimplicialComplex, limit: usize) -> (SimplicialComplex, bool) {
    let core = greedy_collapse(c);
    if surface_check(&core).is_rp2() {
        return (core, true);
    }
    for first in free_faces(c).iter().skip(1).take(limit) {
        let alt = collapse_with(c, Some(first));
        if surface_check(&alt).is_rp2() {
            return (alt, true);
        }
    }
    (core, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Rp2Homeomorphic,
    CollapsesToRp2,
    Rp2WedgeS1Homology,
    Other,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 4] = [
        ClassLabel::Rp2Homeomorphic,
        ClassLabel::CollapsesToRp2,
        ClassLabel::Rp2WedgeS1Homology,
        ClassLabel::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Rp2Homeomorphic => "RP2_HOMEOMORPHIC",
            ClassLabel::CollapsesToRp2 => "COLLAPSES_TO_RP2",
            ClassLabel::Rp2WedgeS1Homology => "RP2_WEDGE_S1_HOMOLOGY",
            ClassLabel::Other => "OTHER",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Free faces tried as alternative first moves when the greedy core misses.
pub const BACKTRACK_LIMIT: usize = 64;

/// Full classification record for one graph.
#[derive(Clone, Debug)]
pub struct Classification {
    pub label: ClassLabel,
    /// `H_0 .. H_dim` of the full clique complex.
    pub homology: Vec<HomologyGroup>,
    pub surface: SurfaceReport,
    /// Homology of the collapsed core, when a collapse was attempted.
    pub core_homology: Option<Vec<HomologyGroup>>,
}

fn homology_upto(c: &SimplicialComplex, k: usize) -> Vec<HomologyGroup> {
    let mut hs = homology_all(c);
    hs.resize(hs.len().max(k + 1), HomologyGroup::trivial());
    hs
}

/// Classifies a simplicial complex by the priority order
/// surface → collapse → homology signature → other.
pub fn classify_simplicial(c: &SimplicialComplex) -> Classification {
    let homology = homology_upto(c, 2);
    let surface = surface_check(c);
    if surface.is_rp2() {
        return Classification {
            label: ClassLabel::Rp2Homeomorphic,
            homology,
            surface,
            core_homology: None,
        };
    }
    let (core, is_rp2) = collapse_toward_rp2(c, BACKTRACK_LIMIT);
    let core_homology = Some(homology_upto(&core, 2));
    let label = if is_rp2 {
        ClassLabel::CollapsesToRp2
    } else if homology[0] == HomologyGroup::free(1)
        && homology[1] == HomologyGroup::new(1, &[2])
        && homology[2].is_trivial()
    {
        ClassLabel::Rp2WedgeS1Homology
    } else {
        ClassLabel::Other
    };
    Classification {
        label,
        homology,
        surface,
        core_homology,
    }
}

/// Full record for the clique complex of `g`.
pub fn classify_graph(g: &Graph) -> Classification {
    classify_simplicial(&clique_complex(g, None))
}

/// Label of the clique complex of `g`.
pub fn classify_complex(g: &Graph) -> ClassLabel {
    classify_graph(g).label
}

pub const REPORT_HEADER: &str =
    "graph6\tlabel\thomology\tpure_2d\tclosed_surface\torientable\teuler\tconnected";

/// One TSV report line.
pub fn report_row(g: &Graph, c: &Classification) -> String {
    let hs: Vec<String> = c.homology.iter().map(|h| h.to_string()).collect();
    let s = &c.surface;
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        to_graph6(g),
        c.label,
        hs.join(";"),
        s.is_pure_2d as u8,
        s.is_closed_surface as u8,
        (s.is_closed_surface && s.orientable) as u8,
        s.euler,
        s.connected as u8
    )
}

/// Counts per label, in [`ClassLabel::ALL`] order.
pub fn label_counts<'a, I: IntoIterator<Item = &'a ClassLabel>>(labels: I) -> [usize; 4] {
    let mut out = [0; 4];
    for l in labels {
        out[*l as usize] += 1;
    }
    out
}
