//! Embedded database of seed nut graphs.
//!
//! Each data file holds one graph: parameter line, role list (the
//! appendices it is listed in), class flag, an edge list and the kernel
//! vector. A graph listed in several appendices yields one record per role.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_edge_lines, parse_header, tokens};
use crate::graph::{Edge, Graph};
use crate::kernel::{verify_nut, KernelVector};
use crate::planarity::is_planar;

/// Which list a seed belongs to: general, polyhedral or toroidal seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SeedRole {
    S,
    Pi,
    N,
}

impl SeedRole {
    pub fn tag(self) -> &'static str {
        match self {
            SeedRole::S => "S",
            SeedRole::Pi => "PI",
            SeedRole::N => "N",
        }
    }
}

impl FromStr for SeedRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "S" => Ok(SeedRole::S),
            "PI" | "Π" => Ok(SeedRole::Pi),
            "N" => Ok(SeedRole::N),
            _ => Err(format!("unknown seed role {s:?}")),
        }
    }
}

/// Structural class of a seed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SeedFlag {
    /// Planar with a bridge.
    B,
    /// Planar, 2-connected, bridgeless.
    P,
    /// Planar and 3-connected (polyhedral).
    Pi,
    /// Non-planar.
    N,
}

impl SeedFlag {
    pub fn tag(self) -> &'static str {
        match self {
            SeedFlag::B => "B",
            SeedFlag::P => "P",
            SeedFlag::Pi => "PI",
            SeedFlag::N => "N",
        }
    }

    pub fn is_planar(self) -> bool {
        self != SeedFlag::N
    }

    /// Class computed from the graph itself.
    pub fn classify(g: &Graph) -> Option<SeedFlag> {
        if !g.is_connected() {
            return None;
        }
        if !is_planar(g) {
            return Some(SeedFlag::N);
        }
        if !g.bridges().ok()?.is_empty() {
            return Some(SeedFlag::B);
        }
        match g.connectivity() {
            c if c >= 3 => Some(SeedFlag::Pi),
            2 => Some(SeedFlag::P),
            _ => None,
        }
    }
}

impl FromStr for SeedFlag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "B" => Ok(SeedFlag::B),
            "P" => Ok(SeedFlag::P),
            "PI" | "Π" => Ok(SeedFlag::Pi),
            "N" => Ok(SeedFlag::N),
            _ => Err(format!("unknown seed flag {s:?}")),
        }
    }
}

impl fmt::Display for SeedFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedRecord {
    /// Stable key such as `S-2-7`, `PI-12-0` or `N-20-0`.
    pub id: String,
    pub role: SeedRole,
    /// Every role the same graph is listed under.
    pub roles: Vec<SeedRole>,
    pub v3: usize,
    pub v2: usize,
    pub n: usize,
    pub m: usize,
    pub graph: Graph,
    pub kernel: KernelVector,
    pub flag: SeedFlag,
}

impl SeedRecord {
    pub fn edges(&self) -> Vec<Edge> {
        self.graph.edges()
    }

    /// Text in the data-file format.
    pub fn to_text(&self) -> String {
        let roles: Vec<&str> = self.roles.iter().map(|r| r.tag()).collect();
        let mut out = format!(
            "params: v3={} v2={}\nroles: {}\nflag: {}\n{} {}\n",
            self.v3,
            self.v2,
            roles.join(" "),
            self.flag,
            self.n,
            self.m
        );
        for (u, v) in self.graph.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out.push_str(&format!("kernel: {}\n", self.kernel.to_strings().join(" ")));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "role": self.role.tag(),
            "roles": self.roles.iter().map(|r| r.tag()).collect::<Vec<_>>(),
            "v3": self.v3,
            "v2": self.v2,
            "n": self.n,
            "m": self.m,
            "flag": self.flag.tag(),
            "edges": self.graph.edges(),
            "kernel": self.kernel.to_strings(),
        })
    }
}

fn seed_id(role: SeedRole, v3: usize, v2: usize) -> String {
    format!("{}-{v3}-{v2}", role.tag())
}

/// Value after `key:` on a significant line, with the column where it starts.
fn keyed<'a>(line_no: usize, line: &'a str, key: &str) -> Result<(usize, &'a str)> {
    let trimmed = line.trim_start();
    let indent = line.len() - trimmed.len();
    let rest = trimmed
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::parse(line_no, indent + 1, format!("expected `{key}:` line")))?;
    Ok((indent + key.len() + 2, rest))
}

/// Parses one data-file record. The id and role come from the first listed
/// role. Structural checks only; certification is done by [`verify_seed`].
pub fn parse_seed(text: &str) -> Result<SeedRecord> {
    let mut lines = content_lines(text).peekable();
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(text.lines().count().max(1), 1, format!("missing {what}")))
    };

    let (no, line) = next("params line")?;
    let (offset, rest) = keyed(no, line, "params")?;
    let mut v3 = None;
    let mut v2 = None;
    for (col, tok) in tokens(rest) {
        let col = offset + col - 1;
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(no, col, format!("expected key=value, found {tok:?}")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::parse(no, col + k.len() + 1, format!("bad count {v:?}")))?;
        match k {
            "v3" => v3 = Some(v),
            "v2" => v2 = Some(v),
            _ => return Err(Error::parse(no, col, format!("unknown parameter {k:?}"))),
        }
    }
    let (v3, v2) = match (v3, v2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::parse(no, 1, "params line needs v3= and v2=")),
    };

    let (no, line) = next("roles line")?;
    let (offset, rest) = keyed(no, line, "roles")?;
    let roles = tokens(rest)
        .map(|(col, tok)| tok.parse::<SeedRole>().map_err(|e| Error::parse(no, offset + col - 1, e)))
        .collect::<Result<Vec<_>>>()?;
    if roles.is_empty() {
        return Err(Error::parse(no, offset, "no roles listed"));
    }

    let (no, line) = next("flag line")?;
    let (offset, rest) = keyed(no, line, "flag")?;
    let flag_tokens: Vec<_> = tokens(rest).collect();
    let flag = match flag_tokens.as_slice() {
        [(col, tok)] => tok.parse::<SeedFlag>().map_err(|e| Error::parse(no, offset + col - 1, e))?,
        _ => return Err(Error::parse(no, offset, "flag line needs exactly one flag")),
    };

    let (no, line) = next("header `n m`")?;
    let (n, m) = parse_header(no, line)?;
    let edges = parse_edge_lines(&mut lines, n, m, |l| l.trim_start().starts_with("kernel"))?;

    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(text.lines().count().max(1), 1, "missing kernel line"))?;
    let (offset, rest) = keyed(no, line, "kernel")?;
    let mut entries = Vec::with_capacity(n);
    for (col, tok) in tokens(rest) {
        let value = tok
            .parse::<num_bigint::BigInt>()
            .map_err(|_| Error::parse(no, offset + col - 1, format!("bad kernel entry {tok:?}")))?;
        entries.push(value);
    }
    if entries.len() != n {
        return Err(Error::parse(
            no,
            offset,
            format!("kernel has {} entries, expected {n}", entries.len()),
        ));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, 1, "trailing content after kernel line"));
    }

    let edge_list: Vec<Edge> = edges.iter().map(|&(e, _)| e).collect();
    let graph = Graph::from_edges(n, &edge_list)?;
    Ok(SeedRecord {
        id: seed_id(roles[0], v3, v2),
        role: roles[0],
        roles,
        v3,
        v2,
        n,
        m,
        graph,
        kernel: KernelVector::new(entries),
        flag,
    })
}

const DATA: &[&str] = &[
    include_str!("../data/seeds/2-7.txt"),
    include_str!("../data/seeds/4-10.txt"),
    include_str!("../data/seeds/6-7.txt"),
    include_str!("../data/seeds/6-8.txt"),
    include_str!("../data/seeds/8-3.txt"),
    include_str!("../data/seeds/8-6.txt"),
    include_str!("../data/seeds/10-3.txt"),
    include_str!("../data/seeds/10-4.txt"),
    include_str!("../data/seeds/10-5.txt"),
    include_str!("../data/seeds/12-0.txt"),
    include_str!("../data/seeds/12-2.txt"),
    include_str!("../data/seeds/12-3.txt"),
    include_str!("../data/seeds/14-1.txt"),
    include_str!("../data/seeds/14-4.txt"),
    include_str!("../data/seeds/16-1.txt"),
    include_str!("../data/seeds/16-2.txt"),
    include_str!("../data/seeds/18-1.txt"),
    include_str!("../data/seeds/20-0.txt"),
    include_str!("../data/seeds/20-2.txt"),
    include_str!("../data/seeds/22-0.txt"),
    include_str!("../data/seeds/26-0.txt"),
    include_str!("../data/seeds/28-0.txt"),
    include_str!("../data/seeds/22-0-toroidal.txt"),
    include_str!("../data/seeds/24-0-toroidal.txt"),
];

/// Number of distinct embedded graphs.
pub fn distinct_seed_graphs() -> usize {
    DATA.len()
}

/// Every seed record, one per (graph, role), ordered by role then
/// parameters.
pub fn all_seeds() -> &'static [SeedRecord] {
    static SEEDS: OnceLock<Vec<SeedRecord>> = OnceLock::new();
    SEEDS.get_or_init(|| {
        let mut out = Vec::new();
        for text in DATA {
            let base = parse_seed(text).expect("embedded seed data parses");
            for &role in &base.roles {
                let mut rec = base.clone();
                rec.role = role;
                rec.id = seed_id(role, rec.v3, rec.v2);
                out.push(rec);
            }
        }
        out.sort_by_key(|r| (r.role, r.v3, r.v2));
        out
    })
}

pub fn find_seed(id: &str) -> Option<&'static SeedRecord> {
    all_seeds().iter().find(|r| r.id.eq_ignore_ascii_case(id))
}

/// Records with the given parameters, in any role.
pub fn seeds_with(v3: usize, v2: usize) -> impl Iterator<Item = &'static SeedRecord> {
    all_seeds().iter().filter(move |r| r.v3 == v3 && r.v2 == v2)
}

/// Outcome of certifying one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedCheck {
    pub id: String,
    pub flag: SeedFlag,
    pub failures: Vec<String>,
}

impl SeedCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedReport {
    pub checks: Vec<SeedCheck>,
}

impl SeedReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    /// One line per record.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed() {
                out.push_str(&format!("{} ok flag={}\n", c.id, c.flag));
            } else {
                out.push_str(&format!("{} FAIL {}\n", c.id, c.failures.join("; ")));
            }
        }
        out
    }
}

/// Certifies a record: parameter arithmetic, chemical nut property, kernel
/// agreement up to scale, degree signature and class flag.
pub fn verify_seed(rec: &SeedRecord) -> SeedCheck {
    let mut failures = Vec::new();
    let g = &rec.graph;
    if rec.n != rec.v3 + rec.v2 || !rec.v3.is_multiple_of(2) || 2 * rec.m != 2 * rec.v2 + 3 * rec.v3 {
        failures.push("parameter arithmetic".to_string());
    }
    if g.order() != rec.n || g.size() != rec.m {
        failures.push(format!("graph has n={} m={}", g.order(), g.size()));
    }
    match g.degree_signature() {
        Ok(s) if s.v3 == rec.v3 && s.v2 == rec.v2 && s.v1 == 0 && s.v0 == 0 => {}
        Ok(s) => failures.push(format!("degree signature {s}")),
        Err(e) => failures.push(e.to_string()),
    }
    let cert = verify_nut(g);
    if !cert.is_chemical_nut {
        failures.push(format!("not a chemical nut graph (nullity {})", cert.nullity));
    }
    match &cert.kernel {
        // Stored vectors are kept verbatim; one is a multiple of the
        // primitive vector, so compare primitive forms.
        Some(k) if *k == rec.kernel.normalised() => {}
        Some(_) => failures.push("stored kernel differs from computed kernel".to_string()),
        None => {}
    }
    match SeedFlag::classify(g) {
        Some(f) if f == rec.flag => {}
        Some(f) => failures.push(format!("flag {} but graph classifies as {f}", rec.flag)),
        None => failures.push("graph fits no class".to_string()),
    }
    SeedCheck {
        id: rec.id.clone(),
        flag: rec.flag,
        failures,
    }
}

pub fn verify_all_seeds() -> SeedReport {
    SeedReport {
        checks: all_seeds().iter().map(verify_seed).collect(),
    }
}
