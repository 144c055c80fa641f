//! Slow, independent reference implementations used as oracles.
#![allow(dead_code)]

use flag_torsion::Graph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Invariant factors by the textbook reduction: move a smallest nonzero entry
/// to the corner, clear its row and column by division with remainder, and
/// fold in any entry the pivot fails to divide. Exact BigInt throughout.
pub fn naive_invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            if !a[i][t].is_zero() {
                done = false;
            }
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // pivot must divide the rest; otherwise add the offending row
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let density: f64 = rng.gen_range(0.2..1.0);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(-bound..=bound)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph with edge probability drawn from `p`.
pub fn random_graph_in(rng: &mut impl Rng, n: usize, p: std::ops::Range<f64>) -> Graph {
    let p = rng.gen_range(p);
    random_graph(rng, n, p)
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Every labeled graph on `n` vertices, indexed by the upper-triangle bits.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |bits| {
        let mut g = Graph::empty(n).unwrap();
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    })
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographically largest upper-triangle bit string over all relabelings.
pub fn brute_canonical(g: &Graph) -> u128 {
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    let mut best = 0u128;
    loop {
        let mut key = 0u128;
        for v in 1..n {
            for u in 0..v {
                key = key << 1 | g.has_edge(p[u], p[v]) as u128;
            }
        }
        best = best.max(key);
        if !next_perm(&mut p) {
            return best;
        }
    }
}

/// Induced C5 by checking every 5-subset for a 2-regular connected induced graph.
pub fn naive_has_induced_c5(g: &Graph) -> bool {
    let n = g.order();
    let verts: Vec<usize> = (0..n).collect();
    let mut idx = [0usize, 1, 2, 3, 4];
    if n < 5 {
        return false;
    }
    loop {
        let s: Vec<usize> = idx.iter().map(|&i| verts[i]).collect();
        let deg_ok = s
            .iter()
            .all(|&a| s.iter().filter(|&&b| b != a && g.has_edge(a, b)).count() == 2);
        if deg_ok {
            // 2-regular on 5 vertices is C5 or C3+C2 (impossible), so connected
            return true;
        }
        let mut k = 5;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if idx[k] < n - 5 + k {
                idx[k] += 1;
                for j in k + 1..5 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All cliques as sorted vertex lists, by brute force over subsets.
pub fn brute_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    (1u32..1 << n)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| {
            s.iter()
                .all(|&a| s.iter().all(|&b| a == b || g.has_edge(a, b)))
        })
        .collect()
}
