//! Planarity testing with checkable witnesses.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset): starting from a cycle, fragments of the not-yet-embedded
//! part are placed into faces that contain all of their attachment
//! vertices, one path at a time, forced fragments first. Block rotations are
//! concatenated at cut vertices. When a block cannot be embedded, a
//! Kuratowski subgraph is extracted by deleting every edge whose removal
//! keeps the graph non-planar.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// Cyclic neighbour order at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "planar_witness", rename_all = "lowercase")]
pub enum Witness {
    Embedding(RotationSystem),
    Kuratowski(KuratowskiWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub witness: Witness,
}

impl RotationSystem {
    fn successor(&self, w: usize, u: usize) -> usize {
        let rot = &self.rotations[w];
        let i = rot.iter().position(|&x| x == u).expect("dart present");
        rot[(i + 1) % rot.len()]
    }

    /// Number of face orbits traced by `(u, w) -> (w, succ_w(u))`; a graph
    /// without edges has one face.
    pub fn face_count(&self) -> usize {
        let n = self.rotations.len();
        let mut seen: Vec<Vec<bool>> = self.rotations.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = 0;
        for u in 0..n {
            for i in 0..self.rotations[u].len() {
                if seen[u][i] {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (u, self.rotations[u][i]);
                loop {
                    let idx = self.rotations[a].iter().position(|&x| x == b).unwrap();
                    if seen[a][idx] {
                        break;
                    }
                    seen[a][idx] = true;
                    let c = self.successor(b, a);
                    a = b;
                    b = c;
                }
            }
        }
        faces.max(1)
    }

    /// Checks that this is a rotation system of `g` (each vertex lists its
    /// neighbours exactly once) and that `n - m + f = 2` holds for the
    /// connected graph `g`.
    pub fn satisfies_euler(&self, g: &Graph) -> bool {
        if self.rotations.len() != g.order() || !g.is_connected() {
            return false;
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbours(v) {
                return false;
            }
        }
        g.order() as i64 - g.size() as i64 + self.face_count() as i64 == 2
    }

    /// One line per vertex: `v: a b c`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            let list: Vec<String> = rot.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{v}: {}\n", list.join(" ")));
        }
        out
    }
}

/// Edge sets of the biconnected blocks (a bridge is a block on its own).
pub fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbours(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(edge(e.0, e.1));
                            if e == (parent, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Embeds a 2-connected block given on local labels `0..k`; returns the
/// rotation at each local vertex, or `None` if the block is non-planar.
fn embed_block(k: usize, adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    if k == 2 {
        return Some(vec![vec![1], vec![0]]);
    }
    // initial cycle through vertex 0
    let a = adj[0][0];
    let mut prev = vec![usize::MAX; k];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if prev[w] == usize::MAX && !(v == a && w == 0) {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut cycle = vec![0];
    let mut cur = prev[0];
    while cur != a {
        cycle.push(cur);
        cur = prev[cur];
    }
    cycle.push(a);

    let mut in_h = vec![false; k];
    let mut edge_in_h = vec![vec![false; k]; k];
    for (i, &v) in cycle.iter().enumerate() {
        let w = cycle[(i + 1) % cycle.len()];
        in_h[v] = true;
        edge_in_h[v][w] = true;
        edge_in_h[w][v] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        // fragments: (attachments, path between the first two attachments)
        let mut fragments: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for u in 0..k {
            if !in_h[u] {
                continue;
            }
            for &v in &adj[u] {
                if u < v && in_h[v] && !edge_in_h[u][v] {
                    fragments.push((vec![u, v], vec![u, v]));
                }
            }
        }
        let mut comp = vec![usize::MAX; k];
        for s in 0..k {
            if in_h[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = s;
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &adj[v] {
                    if !in_h[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            let mut attach: Vec<usize> = members
                .iter()
                .flat_map(|&v| adj[v].iter().copied())
                .filter(|&w| in_h[w])
                .collect();
            attach.sort_unstable();
            attach.dedup();
            debug_assert!(attach.len() >= 2, "2-connected blocks have no pendant fragments");
            let from = attach[0];
            // BFS inside the component from the neighbours of `from` to a
            // component vertex adjacent to a different attachment.
            let mut prev = vec![usize::MAX; k];
            let mut queue = VecDeque::new();
            for &c in &adj[from] {
                if comp[c] == id {
                    prev[c] = from;
                    queue.push_back(c);
                }
            }
            let mut path = None;
            while let Some(v) = queue.pop_front() {
                if let Some(&to) = adj[v].iter().find(|&&w| in_h[w] && w != from) {
                    let mut p = vec![to, v];
                    let mut cur = prev[v];
                    while cur != from {
                        p.push(cur);
                        cur = prev[cur];
                    }
                    p.push(from);
                    p.reverse();
                    path = Some(p);
                    break;
                }
                for &w in &adj[v] {
                    if comp[w] == id && prev[w] == usize::MAX {
                        prev[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            fragments.push((attach, path.expect("fragment has two attachments")));
        }
        if fragments.is_empty() {
            break;
        }
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; k];
                f.iter().for_each(|&v| s[v] = true);
                s
            })
            .collect();
        let mut choice: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (fi, (attach, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| attach.iter().all(|&v| face_sets[f][v]))
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if choice.is_none_or(|(c, _, _)| admissible.len() < c) {
                choice = Some((admissible.len(), fi, admissible[0]));
            }
        }
        let (_, fi, face_idx) = choice.unwrap();
        let path = &fragments[fi].1;
        let (a, b) = (path[0], *path.last().unwrap());
        let face = faces.swap_remove(face_idx);
        let len = face.len();
        let i = face.iter().position(|&v| v == a).unwrap();
        let j = face.iter().position(|&v| v == b).unwrap();
        let interior = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..len).map(|t| face[(i + t) % len]).take_while_inclusive(b);
        f1.extend(interior.iter().rev());
        let mut f2: Vec<usize> = (0..len).map(|t| face[(j + t) % len]).take_while_inclusive(a);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            in_h[w[0]] = true;
            in_h[w[1]] = true;
            edge_in_h[w[0]][w[1]] = true;
            edge_in_h[w[1]][w[0]] = true;
        }
    }

    // rotation: after dart (u -> w) on a face comes (w -> x); succ_w(u) = x
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for f in &faces {
        let len = f.len();
        for t in 0..len {
            let (u, w, x) = (f[t], f[(t + 1) % len], f[(t + 2) % len]);
            succ[w].push((u, x));
        }
    }
    let mut rotations = Vec::with_capacity(k);
    for (w, pairs) in succ.iter().enumerate() {
        let start = adj[w][0];
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            let next = pairs.iter().find(|&&(u, _)| u == cur)?.1;
            if next == start {
                break;
            }
            rot.push(next);
            cur = next;
            if rot.len() > adj[w].len() {
                return None;
            }
        }
        rotations.push(rot);
    }
    Some(rotations)
}

trait TakeWhileInclusive {
    fn take_while_inclusive(self, stop: usize) -> Vec<usize>;
}

impl<I: Iterator<Item = usize>> TakeWhileInclusive for I {
    fn take_while_inclusive(self, stop: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for v in self {
            out.push(v);
            if v == stop {
                break;
            }
        }
        out
    }
}

/// Rotation system of a planar embedding of `g`, or `None` if `g` is not
/// planar. Works on disconnected graphs too (components are independent).
pub fn embed(g: &Graph) -> Option<RotationSystem> {
    let n = g.order();
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |v: usize| verts.binary_search(&v).unwrap();
        let mut adj = vec![Vec::new(); verts.len()];
        for &(u, v) in &block {
            adj[local(u)].push(local(v));
            adj[local(v)].push(local(u));
        }
        let rot = embed_block(verts.len(), &adj)?;
        for (lv, r) in rot.into_iter().enumerate() {
            rotations[verts[lv]].extend(r.into_iter().map(|x| verts[x]));
        }
    }
    Some(RotationSystem { rotations })
}

pub fn is_planar(g: &Graph) -> bool {
    // Euler bound: a simple planar graph on n >= 3 vertices has m <= 3n - 6.
    if g.order() >= 3 && g.size() > 3 * g.order() - 6 {
        return false;
    }
    embed(g).is_some()
}

/// Minimal non-planar edge subset of a non-planar graph.
fn kuratowski_edges(g: &Graph) -> Vec<Edge> {
    let mut current = g.edges();
    let mut i = 0;
    while i < current.len() {
        let mut trial = current.clone();
        trial.remove(i);
        let h = Graph::from_edges(g.order(), &trial).expect("subset of simple edges");
        if is_planar(&h) {
            i += 1;
        } else {
            current = trial;
        }
    }
    current
}

/// Classifies an edge set as a subdivision of K5 or K3,3 by suppressing
/// degree-2 vertices; `None` if it is neither.
pub fn classify_kuratowski(order: usize, edges: &[Edge]) -> Option<KuratowskiKind> {
    let h = Graph::from_edges(order, edges).ok()?;
    let branch: Vec<usize> = (0..order).filter(|&v| h.degree(v) >= 3).collect();
    if (0..order).any(|v| h.degree(v) == 1) {
        return None;
    }
    let mut visited_inner = vec![false; order];
    let mut contracted: Vec<Edge> = Vec::new();
    for &b in &branch {
        for &first in h.neighbours(b) {
            let (mut prev, mut cur) = (b, first);
            while h.degree(cur) == 2 {
                visited_inner[cur] = true;
                let next = *h.neighbours(cur).iter().find(|&&w| w != prev)?;
                prev = cur;
                cur = next;
            }
            if cur == b {
                return None;
            }
            if b < cur {
                contracted.push((b, cur));
            }
        }
    }
    // every degree-2 vertex must lie on a branch path
    if (0..order).any(|v| h.degree(v) == 2 && !visited_inner[v]) {
        return None;
    }
    let mut sorted = contracted.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != contracted.len() {
        return None;
    }
    let deg = |v: usize| sorted.iter().filter(|&&(a, b)| a == v || b == v).count();
    match branch.len() {
        5 if sorted.len() == 10 && branch.iter().all(|&v| deg(v) == 4) => Some(KuratowskiKind::K5),
        6 if sorted.len() == 9 && branch.iter().all(|&v| deg(v) == 3) => {
            // bipartite with sides of size 3
            let a = branch[0];
            let side_b: Vec<usize> = sorted
                .iter()
                .filter_map(|&(x, y)| if x == a { Some(y) } else if y == a { Some(x) } else { None })
                .collect();
            let side_a: Vec<usize> = branch.iter().copied().filter(|v| !side_b.contains(v)).collect();
            let complete = side_a
                .iter()
                .all(|&x| side_b.iter().all(|&y| sorted.contains(&edge(x, y))));
            complete.then_some(KuratowskiKind::K33)
        }
        _ => None,
    }
}

/// Planarity verdict with an embedding or a Kuratowski subgraph.
pub fn test_planarity(g: &Graph) -> Result<PlanarityVerdict> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Some(rot) = (g.order() < 3 || g.size() <= 3 * g.order() - 6)
        .then(|| embed(g))
        .flatten()
    {
        debug_assert!(rot.satisfies_euler(g));
        return Ok(PlanarityVerdict {
            planar: true,
            witness: Witness::Embedding(rot),
        });
    }
    let edges = kuratowski_edges(g);
    let kind = classify_kuratowski(g.order(), &edges)
        .expect("edge-minimal non-planar graphs are Kuratowski subdivisions");
    Ok(PlanarityVerdict {
        planar: false,
        witness: Witness::Kuratowski(KuratowskiWitness { kind, edges }),
    })
}

impl PlanarityVerdict {
    /// Re-checks the witness against `g` from scratch.
    pub fn witness_checks(&self, g: &Graph) -> bool {
        match (&self.witness, self.planar) {
            (Witness::Embedding(rot), true) => {
                rot.satisfies_euler(g)
                    && (g.order() < 3 || g.size() <= 3 * g.order() - 6)
            }
            (Witness::Kuratowski(k), false) => {
                k.edges.iter().all(|&(u, v)| g.has_edge(u, v))
                    && classify_kuratowski(g.order(), &k.edges) == Some(k.kind)
            }
            _ => false,
        }
    }
}
