//! Exhaustive generation of connected leafless chemical graphs and the nut
//! census.
//!
//! Suppressing the degree-2 vertices of a connected leafless chemical graph
//! with `v3 > 0` leaves a connected cubic multigraph (loops and parallel
//! edges allowed), its skeleton. Graphs are generated by distributing the
//! `v2` degree-2 vertices over skeleton edges and deduplicated by canonical
//! form. Skeletons on `k + 2` vertices come from those on `k` by joining two
//! subdivided edge positions, or by replacing a loop with two pendant
//! loops; every connected cubic multigraph on four or more vertices reduces
//! by one of the two inverse moves.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_matrix, CanonicalForm, DenseMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{nullity_mod_prime, verify_nut};
use crate::realise::ParameterPair;

/// Order bound used when none is configured.
pub const DEFAULT_MAX_ORDER: usize = 14;

/// Connected cubic multigraph; diagonal entries count loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    matrix: DenseMatrix,
}

impl Skeleton {
    fn from_matrix(matrix: DenseMatrix) -> Self {
        let (perm, _) = canonical_matrix(&matrix, None);
        Skeleton {
            matrix: matrix.permuted(&perm),
        }
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    /// Multiplicity of `{u, v}`; loops at `u` when `u == v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        self.matrix.get(u, v)
    }

    /// Edge multiset in lexicographic order, one entry per copy.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::with_capacity(3 * n / 2);
        for u in 0..n {
            for v in u..n {
                for _ in 0..self.matrix.get(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.order())
            .map(|u| self.matrix.get(v, u) as usize * if u == v { 2 } else { 1 })
            .sum()
    }

    pub fn loops(&self) -> usize {
        (0..self.order()).map(|v| self.matrix.get(v, v) as usize).sum()
    }

    /// Fewest degree-2 vertices needed to make a simple graph: two per
    /// loop and one per extra parallel copy.
    pub fn deficiency(&self) -> usize {
        let n = self.order();
        let mut d = 2 * self.loops();
        for u in 0..n {
            for v in u + 1..n {
                d += (self.matrix.get(u, v) as usize).saturating_sub(1);
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && self.matrix.get(v, u) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn key(&self) -> &[u8] {
        self.matrix.as_bytes()
    }

    fn theta() -> Self {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, 3);
        Skeleton::from_matrix(m)
    }

    fn dumbbell() -> Self {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, 1);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        Skeleton::from_matrix(m)
    }

    fn widened(&self) -> DenseMatrix {
        let k = self.order();
        let mut m = DenseMatrix::zeros(k + 2);
        for u in 0..k {
            for v in u..k {
                m.set(u, v, self.matrix.get(u, v));
            }
        }
        m
    }

    /// All skeletons on two more vertices produced by one move.
    fn children(&self) -> Vec<Skeleton> {
        let k = self.order();
        let (x, y) = (k, k + 1);
        let edges = self.edges();
        let mut out = Vec::new();
        let bump = |m: &mut DenseMatrix, u: usize, v: usize, d: i32| {
            let w = m.get(u, v) as i32 + d;
            m.set(u, v, w as u8);
        };
        for i in 0..edges.len() {
            for j in i..edges.len() {
                if j > i && edges[j] == edges[j - 1] && j - 1 > i {
                    continue; // same pair of edge classes already handled
                }
                let mut m = self.widened();
                let (a, b) = edges[i];
                bump(&mut m, a, b, -1);
                if i == j {
                    bump(&mut m, a, x, 1);
                    bump(&mut m, x, y, 2);
                    bump(&mut m, y, b, 1);
                } else {
                    let (c, d) = edges[j];
                    bump(&mut m, c, d, -1);
                    bump(&mut m, a, x, 1);
                    bump(&mut m, x, b, 1);
                    bump(&mut m, c, y, 1);
                    bump(&mut m, y, d, 1);
                    bump(&mut m, x, y, 1);
                }
                out.push(Skeleton::from_matrix(m));
            }
        }
        for a in 0..k {
            if self.matrix.get(a, a) > 0 {
                let mut m = self.widened();
                bump(&mut m, a, a, -1);
                for leaf in [x, y] {
                    bump(&mut m, a, leaf, 1);
                    bump(&mut m, leaf, leaf, 1);
                }
                out.push(Skeleton::from_matrix(m));
            }
        }
        out
    }
}

/// Skeleton levels by order 2, 4, 6, ...; extended on demand.
fn skeleton_cache() -> &'static Mutex<Vec<std::sync::Arc<Vec<Skeleton>>>> {
    static CACHE: OnceLock<Mutex<Vec<std::sync::Arc<Vec<Skeleton>>>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(vec![std::sync::Arc::new(vec![
            Skeleton::theta(),
            Skeleton::dumbbell(),
        ])])
    })
}

fn skeleton_level(v3: usize) -> std::sync::Arc<Vec<Skeleton>> {
    let mut cache = skeleton_cache().lock().expect("skeleton cache poisoned");
    while cache.len() < v3 / 2 {
        let prev = cache.last().expect("base level present").clone();
        let mut found: HashMap<Vec<u8>, Skeleton> = prev
            .par_iter()
            .flat_map_iter(|s| s.children())
            .map(|s| (s.key().to_vec(), s))
            .collect();
        let mut level: Vec<(Vec<u8>, Skeleton)> = found.drain().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        cache.push(std::sync::Arc::new(level.into_iter().map(|(_, s)| s).collect()));
    }
    cache[v3 / 2 - 1].clone()
}

/// All connected cubic multigraphs on `v3` vertices up to isomorphism.
pub fn enumerate_skeletons(v3: usize, max_order: usize) -> Result<Vec<Skeleton>> {
    if v3 % 2 == 1 {
        return Err(Error::OddV3(v3));
    }
    if v3 > max_order {
        return Err(Error::OrderBoundExceeded {
            order: v3,
            bound: max_order,
        });
    }
    if v3 == 0 {
        return Ok(Vec::new());
    }
    Ok(skeleton_level(v3).as_ref().clone())
}

/// Calls `emit` with every admissible number of degree-2 vertices per
/// skeleton edge summing to `v2`: loops get at least two, and within a
/// parallel class at most one copy stays unsubdivided. Counts are
/// non-decreasing within a class, since copies are interchangeable.
fn distribute(edges: &[(usize, usize)], v2: usize, emit: &mut impl FnMut(&[usize])) {
    let e = edges.len();
    let min_at = |i: usize, prev: usize| -> usize {
        let (a, b) = edges[i];
        if a == b {
            2
        } else if i > 0 && edges[i - 1] == edges[i] {
            prev.max(1)
        } else {
            0
        }
    };
    // suffix lower bound on what edges i.. still need
    let mut need = vec![0usize; e + 1];
    for i in (0..e).rev() {
        let (a, b) = edges[i];
        let own = if a == b {
            2
        } else if i > 0 && edges[i - 1] == edges[i] {
            1
        } else {
            0
        };
        need[i] = need[i + 1] + own;
    }
    fn rec(
        i: usize,
        left: usize,
        counts: &mut Vec<usize>,
        need: &[usize],
        min_at: &dyn Fn(usize, usize) -> usize,
        same_as_prev: &dyn Fn(usize) -> bool,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if i == need.len() - 1 {
            if left == 0 {
                emit(counts);
            }
            return;
        }
        let prev = if i > 0 && same_as_prev(i) { counts[i - 1] } else { 0 };
        let lo = min_at(i, prev);
        let rest = need[i + 1];
        if left < lo + rest {
            return;
        }
        for c in lo..=left - rest {
            counts.push(c);
            rec(i + 1, left - c, counts, need, min_at, same_as_prev, emit);
            counts.pop();
        }
    }
    let same_as_prev = |i: usize| edges[i - 1] == edges[i];
    let mut counts = Vec::with_capacity(e);
    rec(0, v2, &mut counts, &need, &min_at, &same_as_prev, emit);
}

/// Simple graph obtained by subdividing skeleton edge `i` `counts[i]` times.
fn subdivide(v3: usize, edges: &[(usize, usize)], counts: &[usize]) -> Graph {
    let v2: usize = counts.iter().sum();
    let mut g = Graph::empty(v3 + v2);
    let mut next = v3;
    for (&(a, b), &c) in edges.iter().zip(counts) {
        let mut prev = a;
        for _ in 0..c {
            g.add_edge(prev, next).expect("fresh vertex");
            prev = next;
            next += 1;
        }
        g.add_edge(prev, b).expect("distribution keeps the graph simple");
    }
    g
}

fn check_bound(p: ParameterPair, max_order: usize) -> Result<()> {
    if p.order() > max_order {
        return Err(Error::OrderBoundExceeded {
            order: p.order(),
            bound: max_order,
        });
    }
    Ok(())
}

/// Canonical forms of all connected leafless chemical graphs with
/// signature `p`, sorted.
pub fn leafless_forms(p: ParameterPair, max_order: usize) -> Result<Vec<CanonicalForm>> {
    check_bound(p, max_order)?;
    if p.v3 == 0 {
        return Ok(if p.v2 >= 3 {
            vec![Graph::cycle(p.v2).canonical_form()?]
        } else {
            Vec::new()
        });
    }
    let skeletons = skeleton_level(p.v3);
    let forms: HashSet<CanonicalForm> = skeletons
        .par_iter()
        .filter(|s| s.deficiency() <= p.v2)
        .map(|s| {
            let edges = s.edges();
            let mut local = HashSet::new();
            distribute(&edges, p.v2, &mut |counts| {
                let g = subdivide(p.v3, &edges, counts);
                local.insert(g.canonical_form().expect("order within canonical bound"));
            });
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    let mut out: Vec<CanonicalForm> = forms.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Every connected leafless chemical graph with signature `p`, one per
/// isomorphism class, canonically labelled and in canonical-form order.
pub fn enumerate_leafless(p: ParameterPair, max_order: usize) -> Result<Vec<Graph>> {
    Ok(leafless_forms(p, max_order)?
        .iter()
        .map(CanonicalForm::to_graph)
        .collect())
}

/// Nut test with a modular pre-filter: a full-rank reduction modulo a
/// prime proves the rational nullity is zero.
pub fn is_nut_filtered(g: &Graph) -> bool {
    nullity_mod_prime(g) != 0 && verify_nut(g).is_nut
}

/// Nut graphs among the leafless chemical graphs with signature `p`.
pub fn enumerate_nuts(p: ParameterPair, max_order: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_leafless(p, max_order)?
        .into_par_iter()
        .filter(is_nut_filtered)
        .collect())
}

pub fn count_nuts(p: ParameterPair, max_order: usize) -> Result<usize> {
    Ok(leafless_forms(p, max_order)?
        .par_iter()
        .filter(|f| is_nut_filtered(&f.to_graph()))
        .count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCell {
    /// Connected leafless chemical graphs with this signature.
    pub leafless: usize,
    /// How many of them are nut graphs.
    pub nuts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub max_n: usize,
    pub cells: BTreeMap<(usize, usize), CensusCell>,
}

impl CensusTable {
    pub fn get(&self, v3: usize, v2: usize) -> Option<CensusCell> {
        self.cells.get(&(v3, v2)).copied()
    }

    /// `v3,v2,count,leafless`, one row per signature.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v3,v2,count,leafless\n");
        for (&(v3, v2), c) in &self.cells {
            out.push_str(&format!("{v3},{v2},{},{}\n", c.nuts, c.leafless));
        }
        out
    }
}

/// Every signature with `v3 + v2 <= max_n`, including empty cells.
pub fn census_signatures(max_n: usize) -> Vec<ParameterPair> {
    (0..=max_n)
        .step_by(2)
        .flat_map(|v3| (0..=max_n - v3).map(move |v2| ParameterPair { v3, v2 }))
        .collect()
}

/// Leafless and nut counts for every signature of order at most `max_n`.
pub fn census(max_n: usize, max_order: usize) -> Result<CensusTable> {
    if max_n > max_order {
        return Err(Error::OrderBoundExceeded {
            order: max_n,
            bound: max_order,
        });
    }
    let mut cells = BTreeMap::new();
    for p in census_signatures(max_n) {
        let forms = leafless_forms(p, max_order)?;
        let nuts = forms
            .par_iter()
            .filter(|f| is_nut_filtered(&f.to_graph()))
            .count();
        cells.insert(
            (p.v3, p.v2),
            CensusCell {
                leafless: forms.len(),
                nuts,
            },
        );
    }
    Ok(CensusTable { max_n, cells })
}

/// A cell of the published census table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReferenceCell {
    /// No connected leafless chemical graph has the signature.
    Empty,
    Count(u64),
}

impl fmt::Display for ReferenceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceCell::Empty => f.write_str("empty"),
            ReferenceCell::Count(c) => write!(f, "{c}"),
        }
    }
}

impl ReferenceCell {
    /// Whether a computed cell agrees: `Empty` needs no leafless graphs; a
    /// count needs that many nut graphs, and a zero count needs at least
    /// one leafless graph.
    pub fn matches(&self, cell: CensusCell) -> bool {
        match *self {
            ReferenceCell::Empty => cell.leafless == 0,
            ReferenceCell::Count(0) => cell.nuts == 0 && cell.leafless > 0,
            ReferenceCell::Count(c) => cell.nuts as u64 == c,
        }
    }
}

const REFERENCE_TEXT: &str = include_str!("../data/census_table.txt");

/// Published counts for `v3 + v2 <= 22`, keyed by `(v3, v2)`.
pub fn reference_table() -> &'static BTreeMap<(usize, usize), ReferenceCell> {
    static TABLE: OnceLock<BTreeMap<(usize, usize), ReferenceCell>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = BTreeMap::new();
        for line in REFERENCE_TEXT.lines().filter(|l| !l.trim_start().starts_with('#')) {
            let mut toks = line.split_whitespace();
            let Some(head) = toks.next() else { continue };
            let v2: usize = head.trim_end_matches(':').parse().expect("row label");
            for (col, tok) in toks.enumerate() {
                let cell = match tok {
                    "-" => continue,
                    "E" => ReferenceCell::Empty,
                    t => ReferenceCell::Count(t.parse().expect("count")),
                };
                table.insert((2 * col, v2), cell);
            }
        }
        table
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusMismatch {
    pub v3: usize,
    pub v2: usize,
    pub expected: ReferenceCell,
    pub found: CensusCell,
}

impl fmt::Display for CensusMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): reference {}, computed {} nut of {} leafless",
            self.v3, self.v2, self.expected, self.found.nuts, self.found.leafless
        )
    }
}

/// Cells of `table` that disagree with the reference.
pub fn compare_with_reference(table: &CensusTable) -> Vec<CensusMismatch> {
    table
        .cells
        .iter()
        .filter_map(|(&(v3, v2), &found)| {
            let expected = *reference_table().get(&(v3, v2))?;
            (!expected.matches(found)).then_some(CensusMismatch {
                v3,
                v2,
                expected,
                found,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(v3: usize, v2: usize) -> ParameterPair {
        ParameterPair::new(v3, v2).unwrap()
    }

    #[test]
    fn skeleton_counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6)
            .map(|k| enumerate_skeletons(2 * k, 14).unwrap().len())
            .collect();
        assert_eq!(counts, [2, 5, 17, 71, 388, 2592]);
        for s in enumerate_skeletons(6, 14).unwrap() {
            assert!(s.is_connected());
            assert!((0..6).all(|v| s.degree(v) == 3));
        }
        assert!(enumerate_skeletons(0, 14).unwrap().is_empty());
        assert!(matches!(
            enumerate_skeletons(16, 14),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }

    #[test]
    fn small_leafless_families() {
        assert_eq!(enumerate_leafless(pair(0, 5), 14).unwrap(), vec![Graph::cycle(5)
            .relabel(&crate::canon::canonical_labelling(&Graph::cycle(5)))]);
        let k4 = enumerate_leafless(pair(4, 0), 14).unwrap();
        assert_eq!(k4.len(), 1);
        assert_eq!(k4[0].size(), 6);
        assert_eq!(enumerate_leafless(pair(6, 0), 14).unwrap().len(), 2);
        assert!(enumerate_leafless(pair(2, 0), 14).unwrap().is_empty());
        assert_eq!(enumerate_leafless(pair(2, 2), 14).unwrap().len(), 1);
        assert!(matches!(
            enumerate_leafless(pair(8, 8), 14),
            Err(Error::OrderBoundExceeded { order: 16, bound: 14 })
        ));
    }

    #[test]
    fn nut_count_examples() {
        assert_eq!(count_nuts(pair(8, 3), 14).unwrap(), 7);
        assert_eq!(count_nuts(pair(12, 0), 14).unwrap(), 9);
        assert_eq!(count_nuts(pair(4, 10), 14).unwrap(), 2);
        assert_eq!(count_nuts(pair(2, 7), 14).unwrap(), 1);
    }

    #[test]
    fn small_census_against_reference() {
        let t = census(11, 14).unwrap();
        assert_eq!(t.get(8, 3).unwrap().nuts, 7);
        assert_eq!(t.get(10, 1).unwrap().nuts, 0);
        assert_eq!(t.get(6, 5).unwrap().nuts, 0);
        assert!((0..=11).all(|v2| t.get(0, v2).unwrap().nuts == 0));
        assert_eq!(compare_with_reference(&t), vec![]);
        assert!(t.to_csv().starts_with("v3,v2,count,leafless\n0,0,0,0\n"));
    }

    #[test]
    fn reference_table_shape() {
        let t = reference_table();
        assert_eq!(t.get(&(18, 0)), Some(&ReferenceCell::Count(5541)));
        assert_eq!(t.get(&(0, 0)), Some(&ReferenceCell::Empty));
        assert_eq!(t.get(&(2, 2)), Some(&ReferenceCell::Count(0)));
        assert_eq!(t.get(&(22, 1)), None);
        // one cell per even v3 and v2 with v3 + v2 <= 22
        assert_eq!(t.len(), (0..=22).step_by(2).map(|v3| 23 - v3).sum::<usize>());
    }

    #[test]
    fn reference_cell_semantics() {
        let none = CensusCell { leafless: 0, nuts: 0 };
        let some = CensusCell { leafless: 3, nuts: 0 };
        assert!(ReferenceCell::Empty.matches(none));
        assert!(!ReferenceCell::Empty.matches(some));
        assert!(ReferenceCell::Count(0).matches(some));
        assert!(!ReferenceCell::Count(0).matches(none));
    }
}
