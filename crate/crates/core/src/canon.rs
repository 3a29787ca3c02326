//! Canonical labelling by partition refinement and individualisation.
//!
//! The search works on a dense symmetric matrix of small multiplicities
//! (diagonal entries count loops) with an optional initial vertex colouring,
//! so the same code labels simple graphs and the cubic multigraph skeletons
//! used during enumeration. Subtrees whose roots lie in one orbit of an
//! already discovered automorphism group (restricted to the pointwise
//! stabiliser of the current path) are skipped.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_ORDER: usize = 256;

/// Byte key identifying an isomorphism class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonically labelled graph this key encodes.
    pub fn to_graph(&self) -> Graph {
        let n = u16::from_be_bytes([self.0[0], self.0[1]]) as usize;
        let mut g = Graph::empty(n);
        let mut bit = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if (self.0[2 + bit / 8] >> (7 - bit % 8)) & 1 == 1 {
                    g.add_edge(i, j).expect("decoded edges are simple");
                }
                bit += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Canonical form of a simple graph: order followed by the packed upper
/// triangle of the canonically relabelled adjacency matrix.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            bound: MAX_CANON_ORDER,
        });
    }
    let labelling = canonical_labelling(g);
    let h = g.relabel(&labelling);
    let mut bytes = Vec::with_capacity(2 + n * n / 16 + 1);
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    let mut acc = 0u8;
    let mut nbits = 0;
    for i in 0..n {
        for j in i + 1..n {
            acc = (acc << 1) | h.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 8 {
                bytes.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(acc << (8 - nbits));
    }
    Ok(CanonicalForm(bytes))
}

/// Permutation sending each vertex of `g` to its canonical position.
pub fn canonical_labelling(g: &Graph) -> Vec<usize> {
    let m = DenseMatrix::from_graph(g);
    Canoniser::new(&m, None).run().0
}

/// Dense symmetric multiplicity matrix; `get(v, v)` is the loop count at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<u8>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut m = DenseMatrix::zeros(g.order());
        for (u, v) in g.edges() {
            m.set(u, v, 1);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.data[u * self.n + v]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, w: u8) {
        self.data[u * self.n + v] = w;
        self.data[v * self.n + u] = w;
    }

    pub fn permuted(&self, perm: &[usize]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                out.data[perm[u] * self.n + perm[v]] = self.get(u, v);
            }
        }
        out
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }
}

/// Canonical labelling and certificate (the relabelled matrix, preceded by
/// the colour of each position) of a coloured multiplicity matrix.
pub fn canonical_matrix(m: &DenseMatrix, colours: Option<&[u32]>) -> (Vec<usize>, Vec<u8>) {
    Canoniser::new(m, colours).run()
}

type Cells = Vec<Vec<usize>>;

struct Canoniser<'a> {
    m: &'a DenseMatrix,
    colours: Option<&'a [u32]>,
    nbrs: Vec<Vec<(usize, u8)>>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Canoniser<'a> {
    fn new(m: &'a DenseMatrix, colours: Option<&'a [u32]>) -> Self {
        let n = m.order();
        let nbrs = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v && m.get(v, u) > 0)
                    .map(|u| (u, m.get(v, u)))
                    .collect()
            })
            .collect();
        Canoniser {
            m,
            colours,
            nbrs,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn run(mut self) -> (Vec<usize>, Vec<u8>) {
        let n = self.m.order();
        let mut cells: Cells = match self.colours {
            None => {
                if n == 0 {
                    Vec::new()
                } else {
                    vec![(0..n).collect()]
                }
            }
            Some(c) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&v| c[v]);
                let mut cells: Cells = Vec::new();
                for v in order {
                    match cells.last_mut() {
                        Some(cell) if c[cell[0]] == c[v] => cell.push(v),
                        _ => cells.push(vec![v]),
                    }
                }
                cells
            }
        };
        self.refine(&mut cells);
        let mut path = Vec::new();
        self.search(&cells, &mut path);
        let (cert, perm) = self.best.expect("search visits at least one leaf");
        (perm, cert)
    }

    /// Splits cells by the multiset of (neighbour cell, multiplicity) pairs
    /// until the partition is equitable.
    fn refine(&self, cells: &mut Cells) {
        let n = self.m.order();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len() + 4);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u64>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut key: Vec<u64> = self.nbrs[v]
                            .iter()
                            .map(|&(u, w)| ((cell_of[u] as u64) << 8) | w as u64)
                            .collect();
                        key.sort_unstable();
                        key.push(u64::MAX - self.m.get(v, v) as u64);
                        (key, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            let done = next.len() == cells.len();
            *cells = next;
            if done {
                return;
            }
        }
    }

    fn certificate(&self, perm: &[usize]) -> Vec<u8> {
        let n = self.m.order();
        let mut inv = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut cert = Vec::with_capacity(n * n + 4 * n);
        if let Some(c) = self.colours {
            for &v in &inv {
                cert.extend_from_slice(&c[v].to_be_bytes());
            }
        }
        for &u in &inv {
            for &v in &inv {
                cert.push(self.m.get(u, v));
            }
        }
        cert
    }

    fn search(&mut self, cells: &Cells, path: &mut Vec<usize>) {
        let n = self.m.order();
        if cells.len() == n {
            let mut perm = vec![0; n];
            for (i, cell) in cells.iter().enumerate() {
                perm[cell[0]] = i;
            }
            let cert = self.certificate(&perm);
            match &self.best {
                None => self.best = Some((cert, perm)),
                Some((best, best_perm)) => match cert.cmp(best) {
                    Ordering::Greater => self.best = Some((cert, perm)),
                    Ordering::Equal => {
                        let mut inv_best = vec![0; n];
                        for (v, &p) in best_perm.iter().enumerate() {
                            inv_best[p] = v;
                        }
                        let auto: Vec<usize> = (0..n).map(|v| inv_best[perm[v]]).collect();
                        if auto.iter().enumerate().any(|(v, &w)| v != w) {
                            self.automorphisms.push(auto);
                        }
                    }
                    Ordering::Less => {}
                },
            }
            return;
        }
        let target = cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &candidates {
            if !explored.is_empty() && self.same_orbit_as_explored(w, &explored, path) {
                continue;
            }
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![w]);
            child.push(cells[target].iter().copied().filter(|&v| v != w).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut child);
            path.push(w);
            self.search(&child, path);
            path.pop();
            explored.push(w);
        }
    }

    fn same_orbit_as_explored(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.m.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.automorphisms {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, auto[v]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn invariant_under_every_relabelling_small() {
        let petersen_like = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3), (1, 5)],
        )
        .unwrap();
        let key = petersen_like.canonical_form().unwrap();
        for perm in all_permutations(7) {
            assert_eq!(petersen_like.relabel(&perm).canonical_form().unwrap(), key);
        }
        let decoded = key.to_graph();
        assert_eq!(decoded.canonical_form().unwrap(), key);
        assert_eq!(decoded, petersen_like.relabel(&canonical_labelling(&petersen_like)));
    }

    #[test]
    fn distinguishes_cycle_from_two_triangles() {
        let tri = Graph::cycle(3);
        assert_ne!(
            Graph::cycle(6).canonical_form().unwrap(),
            tri.disjoint_union(&tri).canonical_form().unwrap()
        );
        assert_ne!(
            Graph::complete_bipartite(3, 3).canonical_form().unwrap(),
            prism().canonical_form().unwrap()
        );
    }

    fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    #[test]
    fn multigraph_loops_and_parallel_edges_are_distinguished() {
        // theta vs dumbbell on two vertices
        let mut theta = DenseMatrix::zeros(2);
        theta.set(0, 1, 3);
        let mut dumbbell = DenseMatrix::zeros(2);
        dumbbell.set(0, 1, 1);
        dumbbell.set(0, 0, 1);
        dumbbell.set(1, 1, 1);
        assert_ne!(canonical_matrix(&theta, None).1, canonical_matrix(&dumbbell, None).1);
        let swapped = dumbbell.permuted(&[1, 0]);
        assert_eq!(
            canonical_matrix(&swapped, None).1,
            canonical_matrix(&dumbbell, None).1
        );
    }

    #[test]
    fn colours_are_respected() {
        let g = DenseMatrix::from_graph(&Graph::path(3));
        let a = canonical_matrix(&g, Some(&[0, 0, 1])).1;
        let b = canonical_matrix(&g, Some(&[1, 0, 0])).1;
        let c = canonical_matrix(&g, Some(&[0, 1, 0])).1;
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn order_bound() {
        assert!(matches!(
            Graph::empty(MAX_CANON_ORDER + 1).canonical_form(),
            Err(Error::OrderTooLarge { .. })
        ));
    }
}
