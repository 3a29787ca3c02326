//! Existence of chemical nut graphs by degree signature, and a constructive
//! planner that builds one from a seed graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::construct::{apply_steps, ConstructionStep, ConstructionTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::KernelVector;
use crate::seeds::{all_seeds, SeedFlag, SeedRecord};

/// Degree signature `(v3, v2)` of a leafless chemical graph; `v3` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParameterPair {
    pub v3: usize,
    pub v2: usize,
}

impl ParameterPair {
    pub fn new(v3: usize, v2: usize) -> Result<Self> {
        if v3 % 2 == 1 {
            return Err(Error::OddV3(v3));
        }
        Ok(ParameterPair { v3, v2 })
    }

    pub fn order(&self) -> usize {
        self.v3 + self.v2
    }

    pub fn size(&self) -> usize {
        self.v2 + 3 * self.v3 / 2
    }
}

impl fmt::Display for ParameterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v3, self.v2)
    }
}

/// Pairs with `v3 >= 8` that admit no chemical nut graph.
pub const EXCEPTIONS: [(usize, usize); 11] = [
    (8, 0),
    (8, 1),
    (8, 2),
    (8, 4),
    (10, 0),
    (10, 1),
    (10, 2),
    (12, 1),
    (14, 0),
    (14, 2),
    (16, 0),
];

/// The only realisable pair with no planar realisation.
pub const NON_PLANAR_ONLY: (usize, usize) = (20, 0);

/// Which rule decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `v3 = 0`: the graph is a cycle, and cycles are never nut graphs.
    Cycle,
    /// `v3 = 2`: realisable iff `v2` is odd and at least 7.
    TwoCubic,
    /// `v3 = 4`: realisable iff `v2` is even and at least 10.
    FourCubic,
    /// `v3 = 6`: realisable iff `v2 >= 7`.
    SixCubic,
    /// `v3 >= 8` and the pair is one of the finite exceptions.
    Exception,
    /// `v3 >= 8` and not an exception.
    General,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Cycle => "v3 = 0: cycles are not nut graphs",
            Rule::TwoCubic => "v3 = 2: need v2 odd and v2 >= 7",
            Rule::FourCubic => "v3 = 4: need v2 even and v2 >= 10",
            Rule::SixCubic => "v3 = 6: need v2 >= 7",
            Rule::Exception => "v3 >= 8: listed exception",
            Rule::General => "v3 >= 8: realisable",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealisabilityVerdict {
    pub realisable: bool,
    pub planar_realisable: bool,
    pub reason: Rule,
}

/// Decides whether a chemical nut graph with signature `p` exists, and
/// whether a planar one does.
pub fn is_realisable(p: ParameterPair) -> RealisabilityVerdict {
    let ParameterPair { v3, v2 } = p;
    let (realisable, reason) = match v3 {
        0 => (false, Rule::Cycle),
        2 => (v2 % 2 == 1 && v2 >= 7, Rule::TwoCubic),
        4 => (v2 % 2 == 0 && v2 >= 10, Rule::FourCubic),
        6 => (v2 >= 7, Rule::SixCubic),
        _ if EXCEPTIONS.contains(&(v3, v2)) => (false, Rule::Exception),
        _ => (true, Rule::General),
    };
    RealisabilityVerdict {
        realisable,
        planar_realisable: realisable && (v3, v2) != NON_PLANAR_ONLY,
        reason,
    }
}

/// Cubic polyhedral (planar 3-connected) nut graphs exist exactly for
/// `v2 = 0` and `v3` in {12, 18} or `v3 >= 24`.
pub fn is_polyhedral_realisable(p: ParameterPair) -> bool {
    p.v2 == 0 && (p.v3 == 12 || p.v3 == 18 || p.v3 >= 24)
}

/// Cubic nut graphs embeddable on the torus exist exactly for even orders
/// from 20 on.
pub fn is_toroidal_cubic_realisable(n: usize) -> bool {
    n.is_multiple_of(2) && n >= 20
}

/// Edge counts `m` of chemical nut graphs on `n` vertices.
pub fn betti_spectrum(n: usize) -> BTreeSet<usize> {
    (2..=n)
        .step_by(2)
        .filter_map(|v3| {
            let p = ParameterPair { v3, v2: n - v3 };
            is_realisable(p).realisable.then(|| p.size())
        })
        .collect()
}

/// For `v2 >= 9/2 v3 + 1`, removing a long thread of degree-2 vertices
/// shows realisability is periodic in `v2` with period 4. Returns whether
/// the oracle respects that. Also needs `v2 >= 4` so the lower pair exists.
pub fn check_reduction_recurrence(p: ParameterPair) -> Result<bool> {
    if 2 * p.v2 < 9 * p.v3 + 2 || p.v2 < 4 {
        return Err(Error::PreconditionUnmet(format!(
            "{p}: need v2 >= 9/2 v3 + 1 and v2 >= 4"
        )));
    }
    let lower = ParameterPair { v3: p.v3, v2: p.v2 - 4 };
    Ok(is_realisable(p).realisable == is_realisable(lower).realisable)
}

/// Steps taking a seed to the target signature, if the seed can reach it.
fn plan_steps(seed: &SeedRecord, target: ParameterPair) -> Option<usize> {
    if seed.v3 > target.v3 || !(target.v3 - seed.v3).is_multiple_of(6) || seed.v2 > target.v2 {
        return None;
    }
    let d = target.v2 - seed.v2;
    if !d.is_multiple_of(2) {
        return None;
    }
    if d % 4 == 2 && seed.flag != SeedFlag::B {
        return None;
    }
    Some((target.v3 - seed.v3) / 6 + d / 4 + d % 4 / 2)
}

/// Picks the seed for `target`: fewest steps, then smallest id. Non-planar
/// seeds are skipped when a planar output is required.
pub fn choose_seed(target: ParameterPair, require_planar: bool) -> Option<&'static SeedRecord> {
    all_seeds()
        .iter()
        .filter(|s| !require_planar || s.flag.is_planar())
        .filter_map(|s| plan_steps(s, target).map(|k| (k, s)))
        .min_by(|(ka, a), (kb, b)| ka.cmp(kb).then_with(|| a.id.cmp(&b.id)))
        .map(|(_, s)| s)
}

/// Builds a chemical nut graph with signature `p`: Fowler expansions at the
/// lowest-index degree-3 vertex first, then four-fold subdivisions of the
/// lowest edge, then at most one bridge insertion at the lowest bridge.
pub fn realise(
    p: ParameterPair,
    require_planar: bool,
) -> Result<(Graph, KernelVector, ConstructionTrace)> {
    let verdict = is_realisable(p);
    if !verdict.realisable {
        return Err(Error::NotRealisable { v3: p.v3, v2: p.v2 });
    }
    if require_planar && !verdict.planar_realisable {
        return Err(Error::NotPlanarRealisable { v3: p.v3, v2: p.v2 });
    }
    let seed = choose_seed(p, require_planar).ok_or(Error::NotRealisable { v3: p.v3, v2: p.v2 })?;
    let mut trace = ConstructionTrace::new(seed.id.clone());
    let mut g = seed.graph.clone();
    let mut x = seed.kernel.clone();
    let mut push = |step: ConstructionStep, g: &mut Graph, x: &mut KernelVector| -> Result<()> {
        let (ng, nx) = apply_steps(g, x, std::slice::from_ref(&step))?;
        *g = ng;
        *x = nx;
        trace.steps.push(step);
        Ok(())
    };
    for _ in 0..(p.v3 - seed.v3) / 6 {
        let vertex = (0..g.order())
            .find(|&v| g.degree(v) == 3)
            .expect("seeds have cubic vertices");
        push(ConstructionStep::Fowler { vertex }, &mut g, &mut x)?;
    }
    let d = p.v2 - seed.v2;
    for _ in 0..d / 4 {
        let (u, v) = g.edges()[0];
        push(ConstructionStep::Subdivide4 { u, v }, &mut g, &mut x)?;
    }
    if d % 4 == 2 {
        let (u, v) = *g.bridges()?.first().expect("planner picked a bridged seed");
        push(ConstructionStep::Bridge { u, v }, &mut g, &mut x)?;
    }
    Ok((g, x.normalised(), trace))
}
