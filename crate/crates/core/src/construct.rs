//! Nut-preserving expansions and their kernel-vector propagation.
//!
//! * bridge insertion: two new vertices `x, y` spliced into a bridge `uv`
//!   as the path `u x y v`;
//! * subdivision: four new vertices `w, x, y, z` spliced into any edge;
//! * Fowler expansion at a vertex `v` of degree `d`: the star at `v` is
//!   replaced by `v - q_i`, `p_i - q_j` (`i != j`) and `p_i - u_i`.
//!
//! New vertices are always appended after the existing labels in the order
//! listed above (`q_1..q_d` then `p_1..p_d` for Fowler, where `u_i` is the
//! `i`-th neighbour of `v` in increasing label order).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::kernel::{check_kernel_vector, KernelVector};
use crate::seeds::SeedRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConstructionStep {
    Bridge { u: usize, v: usize },
    Subdivide4 { u: usize, v: usize },
    Fowler { vertex: usize },
}

impl ConstructionStep {
    /// Change in `(v3, v2)` caused by this step on graph `g`.
    pub fn signature_delta(&self, g: &Graph) -> (usize, usize) {
        match *self {
            ConstructionStep::Bridge { .. } => (0, 2),
            ConstructionStep::Subdivide4 { .. } => (0, 4),
            ConstructionStep::Fowler { vertex } => match g.degree(vertex) {
                3 => (6, 0),
                d => (0, 2 * d),
            },
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            ConstructionStep::Bridge { u, v } => bridge_insert(g, (u, v)),
            ConstructionStep::Subdivide4 { u, v } => subdivide4(g, (u, v)),
            ConstructionStep::Fowler { vertex } => fowler_expand(g, vertex),
        }
    }

    pub fn propagate(&self, g: &Graph, x: &KernelVector) -> Result<KernelVector> {
        match *self {
            ConstructionStep::Bridge { u, v } => bridge_kernel(g, (u, v), x),
            ConstructionStep::Subdivide4 { u, v } => subdivide4_kernel(g, (u, v), x),
            ConstructionStep::Fowler { vertex } => fowler_kernel(g, vertex, x),
        }
    }
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConstructionStep::Bridge { u, v } => write!(f, "bridge {u} {v}"),
            ConstructionStep::Subdivide4 { u, v } => write!(f, "subdivide4 {u} {v}"),
            ConstructionStep::Fowler { vertex } => write!(f, "fowler {vertex}"),
        }
    }
}

impl FromStr for ConstructionStep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad integer {t:?}"));
        match parts.as_slice() {
            ["bridge", u, v] => Ok(ConstructionStep::Bridge { u: num(u)?, v: num(v)? }),
            ["subdivide4", u, v] => Ok(ConstructionStep::Subdivide4 { u: num(u)?, v: num(v)? }),
            ["fowler", w] => Ok(ConstructionStep::Fowler { vertex: num(w)? }),
            _ => Err(format!("unrecognised step {s:?}")),
        }
    }
}

/// A seed id plus the steps that rebuild a target graph from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub seed_id: String,
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionTrace {
    pub fn new(seed_id: impl Into<String>) -> Self {
        ConstructionTrace {
            seed_id: seed_id.into(),
            steps: Vec::new(),
        }
    }

    /// Line-oriented text form: `seed: <id>` followed by one step per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("seed: {}\n", self.seed_id);
        for step in &self.steps {
            out.push_str(&format!("{step}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = crate::format::content_lines(text);
        let (no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty trace"))?;
        let seed_id = first
            .trim()
            .strip_prefix("seed:")
            .ok_or_else(|| Error::parse(no, 1, "expected `seed: <id>`"))?
            .trim()
            .to_string();
        let steps = lines
            .map(|(no, l)| l.parse().map_err(|e: String| Error::parse(no, 1, e)))
            .collect::<Result<_>>()?;
        Ok(ConstructionTrace { seed_id, steps })
    }
}

fn require_bridge(g: &Graph, (u, v): Edge) -> Result<()> {
    if !g.has_edge(u, v) || !g.is_bridge(u, v)? {
        return Err(Error::NotABridge(edge(u, v)));
    }
    Ok(())
}

fn require_kernel(g: &Graph, x: &KernelVector) -> Result<()> {
    if !check_kernel_vector(g, x)? {
        return Err(Error::NotAKernelVector);
    }
    Ok(())
}

/// `B(G, uv)`: the path `u x y v` replaces the bridge `uv`.
pub fn bridge_insert(g: &Graph, (u, v): Edge) -> Result<Graph> {
    require_bridge(g, (u, v))?;
    let mut h = g.clone();
    h.remove_edge(u, v)?;
    let x = h.add_vertex();
    let y = h.add_vertex();
    h.add_edge(u, x)?;
    h.add_edge(x, y)?;
    h.add_edge(y, v)?;
    Ok(h)
}

/// Vertices on `u`'s side of the bridge `uv`.
fn side_of(g: &Graph, (u, v): Edge) -> Vec<bool> {
    let mut h = g.clone();
    h.remove_edge(u, v).expect("bridge is an edge");
    let (label, _) = h.components();
    label.iter().map(|&c| c == label[u]).collect()
}

/// Kernel vector of `B(G, uv)`: `u`'s side is negated, `x` gets `-x[v]`
/// and `y` gets `x[u]`.
pub fn bridge_kernel(g: &Graph, (u, v): Edge, x: &KernelVector) -> Result<KernelVector> {
    require_bridge(g, (u, v))?;
    require_kernel(g, x)?;
    let side = side_of(g, (u, v));
    let a = x.entries()[u].clone();
    let b = x.entries()[v].clone();
    let mut out: Vec<BigInt> = x
        .entries()
        .iter()
        .zip(&side)
        .map(|(e, &neg)| if neg { -e } else { e.clone() })
        .collect();
    out.push(-b);
    out.push(a);
    Ok(KernelVector::new(out))
}

/// Inverse of [`bridge_insert`]: removes the degree-2 vertices `x, y` of a
/// path `u x y v` and joins `u` to `v`. The kernel vector, if given, is
/// carried back by negating `u`'s side again.
pub fn bridge_reduce(
    h: &Graph,
    path: [usize; 4],
    x: Option<&KernelVector>,
) -> Result<(Graph, Option<KernelVector>)> {
    let [u, px, py, v] = path;
    for (a, b) in [(u, px), (px, py), (py, v)] {
        if !h.has_edge(a, b) {
            return Err(Error::NoSuchEdge(edge(a, b)));
        }
    }
    for w in [px, py] {
        if h.degree(w) != 2 {
            return Err(Error::PreconditionUnmet(format!("vertex {w} is not of degree 2")));
        }
    }
    let (mut g, map) = h.remove_vertices(&[px, py]);
    let (nu, nv) = (map[u].unwrap(), map[v].unwrap());
    g.add_edge(nu, nv)?;
    let kernel = match x {
        None => None,
        Some(x) => {
            let side = side_of(&g, (nu, nv));
            let mut out = vec![BigInt::from(0); g.order()];
            for (old, slot) in map.iter().enumerate() {
                if let Some(new) = *slot {
                    let e = &x.entries()[old];
                    out[new] = if side[new] { -e } else { e.clone() };
                }
            }
            Some(KernelVector::new(out))
        }
    };
    Ok((g, kernel))
}

/// `S(G, uv)`: the path `u w x y z v` replaces the edge `uv`.
pub fn subdivide4(g: &Graph, (u, v): Edge) -> Result<Graph> {
    if !g.has_edge(u, v) {
        return Err(Error::NoSuchEdge(edge(u, v)));
    }
    let mut h = g.clone();
    h.remove_edge(u, v)?;
    let base = h.order();
    for _ in 0..4 {
        h.add_vertex();
    }
    let path = [u, base, base + 1, base + 2, base + 3, v];
    for pair in path.windows(2) {
        h.add_edge(pair[0], pair[1])?;
    }
    Ok(h)
}

/// Kernel vector of `S(G, uv)`: with `a = x[u]` and `b = x[v]` the new
/// vertices carry `b, -a, -b, a`.
pub fn subdivide4_kernel(g: &Graph, (u, v): Edge, x: &KernelVector) -> Result<KernelVector> {
    if !g.has_edge(u, v) {
        return Err(Error::NoSuchEdge(edge(u, v)));
    }
    require_kernel(g, x)?;
    let a = x.entries()[u].clone();
    let b = x.entries()[v].clone();
    let mut out = x.entries().to_vec();
    out.extend([b.clone(), -a.clone(), -b, a]);
    Ok(KernelVector::new(out))
}

/// `F(G, v)` for a vertex of degree at least 2.
pub fn fowler_expand(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.order() {
        return Err(Error::NoSuchVertex(v));
    }
    let d = g.degree(v);
    if d < 2 {
        return Err(Error::DegreeTooLow { vertex: v, degree: d });
    }
    let nbrs = g.neighbours(v).to_vec();
    let mut h = g.clone();
    for &u in &nbrs {
        h.remove_edge(v, u)?;
    }
    let base = h.order();
    for _ in 0..2 * d {
        h.add_vertex();
    }
    let q = |i: usize| base + i;
    let p = |i: usize| base + d + i;
    for i in 0..d {
        h.add_edge(v, q(i))?;
        h.add_edge(p(i), nbrs[i])?;
        for j in 0..d {
            if i != j {
                // each unordered {p_i, q_j} pair is distinct
                h.add_edge(p(i), q(j))?;
            }
        }
    }
    Ok(h)
}

/// Kernel vector of `F(G, v)`: `v` gets `(1 - d) x[v]`, `q_i` gets
/// `x[u_i]`, every `p_i` gets `x[v]`.
pub fn fowler_kernel(g: &Graph, v: usize, x: &KernelVector) -> Result<KernelVector> {
    if v >= g.order() {
        return Err(Error::NoSuchVertex(v));
    }
    let d = g.degree(v);
    if d < 2 {
        return Err(Error::DegreeTooLow { vertex: v, degree: d });
    }
    require_kernel(g, x)?;
    let xv = x.entries()[v].clone();
    let mut out = x.entries().to_vec();
    out[v] = BigInt::from(1 - d as i64) * &xv;
    out.extend(g.neighbours(v).iter().map(|&u| x.entries()[u].clone()));
    out.extend(std::iter::repeat_n(xv, d));
    Ok(KernelVector::new(out))
}

/// Replays steps on a graph and kernel vector, attaching the failing step
/// index to any error. The returned vector is normalised.
pub fn apply_steps(
    g: &Graph,
    x: &KernelVector,
    steps: &[ConstructionStep],
) -> Result<(Graph, KernelVector)> {
    let mut g = g.clone();
    let mut x = x.clone();
    for (index, step) in steps.iter().enumerate() {
        let wrap = |e: Error| Error::StepSiteInvalid {
            index,
            source: Box::new(e),
        };
        let nx = step.propagate(&g, &x).map_err(wrap)?;
        g = step.apply(&g).map_err(wrap)?;
        x = nx;
    }
    Ok((g, x.normalised()))
}

/// Replays a trace from its seed.
pub fn apply_trace(seed: &SeedRecord, trace: &ConstructionTrace) -> Result<(Graph, KernelVector)> {
    if seed.id != trace.seed_id {
        return Err(Error::UnknownSeed(trace.seed_id.clone()));
    }
    apply_steps(&seed.graph, &seed.kernel, &trace.steps)
}
