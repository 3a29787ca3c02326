//! Simple undirected graphs on dense vertex labels `0..order`.
//!
//! Every other module works on [`Graph`]. Values are immutable once built;
//! the constructions produce new graphs rather than editing in place.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonicalForm};
use crate::error::{Error, Result};

/// An undirected edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalises an edge so that the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Counts of vertices by degree, for graphs of maximum degree at most 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSignature {
    pub v3: usize,
    pub v2: usize,
    pub v1: usize,
    pub v0: usize,
}

impl DegreeSignature {
    pub fn order(&self) -> usize {
        self.v0 + self.v1 + self.v2 + self.v3
    }

    /// Edge count implied by the degree counts (half the degree sum).
    pub fn size(&self) -> usize {
        (3 * self.v3 + 2 * self.v2 + self.v1) / 2
    }
}

impl fmt::Display for DegreeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(v3={}, v2={}, v1={}, v0={})",
            self.v3, self.v2, self.v1, self.v0
        )
    }
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges(order: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<Edge> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("valid complete bipartite graph")
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&w| w + shift).collect()),
        );
        Graph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Appends a new isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::InvalidEdge(u, v, "endpoint out of range"));
        }
        if u == v {
            return Err(Error::InvalidEdge(u, v, "self-loop"));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidEdge(u, v, "repeated edge")),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge(edge(u, v)));
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        Ok(())
    }

    /// Applies a vertex relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut adj = vec![Vec::new(); self.order()];
        for (v, nbrs) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = nbrs.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adj[perm[v]] = mapped;
        }
        Graph { adj }
    }

    /// Deletes the given vertices and compacts the labels of the rest,
    /// preserving their relative order. Returns the new graph and the map
    /// from old labels to new ones (`None` for deleted vertices).
    pub fn remove_vertices(&self, doomed: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let n = self.order();
        let mut map = vec![None; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !doomed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.add_edge(a, b).expect("relabelled edges stay simple");
            }
        }
        (g, map)
    }

    /// Subgraph spanned by an edge subset on the same vertex set.
    pub fn edge_subgraph(&self, edges: &[Edge]) -> Result<Graph> {
        Graph::from_edges(self.order(), edges)
    }

    /// Connected-component label for every vertex, and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_avoiding(&vec![false; self.order()])
    }

    fn components_avoiding(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if removed[s] || label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !removed[w] && label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    pub fn degree_signature(&self) -> Result<DegreeSignature> {
        let mut sig = DegreeSignature::default();
        for v in 0..self.order() {
            match self.degree(v) {
                0 => sig.v0 += 1,
                1 => sig.v1 += 1,
                2 => sig.v2 += 1,
                3 => sig.v3 += 1,
                degree => return Err(Error::DegreeTooHigh { vertex: v, degree }),
            }
        }
        Ok(sig)
    }

    /// Connected with maximum degree at most 3.
    pub fn is_chemical(&self) -> bool {
        self.max_degree() <= 3 && self.is_connected()
    }

    pub fn is_leafless(&self) -> bool {
        self.min_degree() >= 2
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cut edges of a connected graph, sorted, via an iterative low-link
    /// depth-first search.
    pub fn bridges(&self) -> Result<Vec<Edge>> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let n = self.order();
        let mut out = Vec::new();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbour index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(edge(parent, v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_bridge(&self, u: usize, v: usize) -> Result<bool> {
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge(edge(u, v)));
        }
        Ok(self.bridges()?.contains(&edge(u, v)))
    }

    /// Vertex connectivity capped at 3.
    ///
    /// Deleting a set of `k` vertices that leaves a disconnected graph, or at
    /// most one vertex, certifies connectivity `k`; sets of size 0, 1 and 2
    /// are tried in turn.
    pub fn connectivity(&self) -> usize {
        let n = self.order();
        let mut removed = vec![false; n];
        let broken = |removed: &[bool], k: usize| {
            n - k <= 1 || self.components_avoiding(removed).1 > 1
        };
        if broken(&removed, 0) {
            return 0;
        }
        for a in 0..n {
            removed[a] = true;
            if broken(&removed, 1) {
                return 1;
            }
            removed[a] = false;
        }
        for a in 0..n {
            removed[a] = true;
            for b in a + 1..n {
                removed[b] = true;
                if broken(&removed, 2) {
                    return 2;
                }
                removed[b] = false;
            }
            removed[a] = false;
        }
        3
    }

    /// Isomorphism-class key; see [`canon`].
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canon::canonical_form(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}
