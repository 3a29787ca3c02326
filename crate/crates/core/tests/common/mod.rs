//! Independent reference implementations used only by tests: brute-force
//! isomorphism, labelled generation by degree sequence, direct matrix
//! products and random chemical graphs.

#![allow(dead_code, clippy::too_many_arguments, clippy::type_complexity)]

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use nutforge::{Graph, KernelVector};

/// `A x` computed entry by entry from adjacency lists.
pub fn adjacency_times(g: &Graph, x: &KernelVector) -> Vec<BigInt> {
    (0..g.order())
        .map(|v| g.neighbours(v).iter().map(|&u| x.entries()[u].clone()).sum())
        .collect()
}

pub fn annihilates(g: &Graph, x: &KernelVector) -> bool {
    x.len() == g.order() && !x.is_zero() && adjacency_times(g, x).iter().all(Zero::is_zero)
}

/// Connectivity by breadth-first search.
pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Bridges by deleting each edge and re-testing connectivity.
pub fn bridges_by_deletion(g: &Graph) -> Vec<(usize, usize)> {
    let edges = g.edges();
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let rest: Vec<_> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            !connected(g.order(), &rest)
        })
        .map(|(_, &e)| e)
        .collect()
}

/// Per-vertex invariant: degree, then the sizes of successive BFS layers.
fn vertex_profile(g: &Graph, s: usize) -> Vec<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut layers = vec![0usize; n];
    while let Some(v) = queue.pop_front() {
        layers[dist[v]] += 1;
        for &w in g.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut p = vec![g.degree(s)];
    p.extend(layers);
    p
}

/// Isomorphism-invariant fingerprint of a graph.
pub fn fingerprint(g: &Graph) -> Vec<Vec<usize>> {
    let mut f: Vec<Vec<usize>> = (0..g.order()).map(|v| vertex_profile(g, v)).collect();
    f.sort();
    f.push(vec![g.order(), g.size()]);
    f
}

/// Backtracking isomorphism test.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.size() != b.size() || fingerprint(a) != fingerprint(b) {
        return false;
    }
    let pa: Vec<_> = (0..n).map(|v| vertex_profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| vertex_profile(b, v)).collect();
    // map vertices of `a` in BFS order so each new vertex has a mapped neighbour
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in a.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    fn extend(
        i: usize,
        order: &[usize],
        a: &Graph,
        b: &Graph,
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for w in 0..b.order() {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(i + 1, order, a, b, pa, pb, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, a, b, &pa, &pb, &mut map, &mut used)
}

/// Isomorphism classes of a stream of graphs, bucketed by fingerprint.
#[derive(Default)]
pub struct Classes {
    buckets: HashMap<Vec<Vec<usize>>, Vec<Graph>>,
}

impl Classes {
    pub fn insert(&mut self, g: Graph) -> bool {
        let bucket = self.buckets.entry(fingerprint(&g)).or_default();
        if bucket.iter().any(|h| isomorphic(h, &g)) {
            return false;
        }
        bucket.push(g);
        true
    }

    pub fn len(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Graph> {
        self.buckets.values().flatten()
    }

    /// Whether some class contains a graph isomorphic to `g`.
    pub fn contains(&self, g: &Graph) -> bool {
        self.buckets
            .get(&fingerprint(g))
            .is_some_and(|b| b.iter().any(|h| isomorphic(h, g)))
    }
}

/// Every labelled simple graph on `degrees.len()` vertices with exactly the
/// given degree sequence. Each graph is produced once: vertices are
/// completed in index order and each picks its remaining neighbours as a
/// set among later vertices.
pub fn labelled_with_degrees(degrees: &[usize], emit: &mut impl FnMut(&[(usize, usize)])) {
    fn rec(
        v: usize,
        left: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        emit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        let n = left.len();
        if v == n {
            emit(edges);
            return;
        }
        if left[v] == 0 {
            rec(v + 1, left, edges, emit);
            return;
        }
        let need = left[v];
        let candidates: Vec<usize> = (v + 1..n).filter(|&w| left[w] > 0).collect();
        if candidates.len() < need {
            return;
        }
        // choose `need` candidates
        let mut pick = Vec::with_capacity(need);
        fn choose(
            start: usize,
            need: usize,
            v: usize,
            candidates: &[usize],
            pick: &mut Vec<usize>,
            left: &mut Vec<usize>,
            edges: &mut Vec<(usize, usize)>,
            emit: &mut dyn FnMut(&[(usize, usize)]),
        ) {
            if pick.len() == need {
                let saved = left[v];
                left[v] = 0;
                for &w in pick.iter() {
                    left[w] -= 1;
                    edges.push((v, w));
                }
                rec(v + 1, left, edges, emit);
                for &w in pick.iter() {
                    left[w] += 1;
                    edges.pop();
                }
                left[v] = saved;
                return;
            }
            for i in start..candidates.len() {
                if candidates.len() - i < need - pick.len() {
                    break;
                }
                pick.push(candidates[i]);
                choose(i + 1, need, v, candidates, pick, left, edges, emit);
                pick.pop();
            }
        }
        choose(0, need, v, &candidates, &mut pick, left, edges, emit);
    }
    let mut left = degrees.to_vec();
    rec(0, &mut left, &mut Vec::new(), emit);
}

/// Isomorphism classes of connected simple graphs with `v3` degree-3 and
/// `v2` degree-2 vertices, found by labelled enumeration.
pub fn brute_force_leafless(v3: usize, v2: usize) -> Classes {
    let mut degrees = vec![3; v3];
    degrees.extend(std::iter::repeat_n(2, v2));
    let n = degrees.len();
    let mut classes = Classes::default();
    labelled_with_degrees(&degrees, &mut |edges| {
        if connected(n, edges) {
            classes.insert(Graph::from_edges(n, edges).unwrap());
        }
    });
    classes
}

/// Random connected graph with maximum degree at most 3.
pub fn random_chemical(rng: &mut StdRng, n: usize, extra_edges: usize) -> Graph {
    let mut g = Graph::empty(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let v = order[i];
        let open: Vec<usize> = order[..i].iter().copied().filter(|&u| g.degree(u) < 3).collect();
        let u = open[rng.gen_range(0..open.len())];
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..extra_edges * 4 {
        if g.size() >= n - 1 + extra_edges {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) && g.degree(u) < 3 && g.degree(v) < 3 {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}
