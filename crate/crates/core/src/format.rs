//! Text interchange formats: the `n m` edge list and graph6.
//!
//! Edge-list files start with a line `n m` followed by `m` lines `u v`
//! (0-based). Blank lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Iterator over significant lines as `(1-based line number, text)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Parses whitespace-separated unsigned integers, reporting the column of
/// the first bad token.
pub(crate) fn parse_usizes(line_no: usize, line: &str) -> Result<Vec<usize>> {
    tokens(line)
        .map(|(col, tok)| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line_no, col, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

/// Whitespace-separated tokens with their 1-based starting column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = offset + start + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).peekable();
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input; expected header `n m`"))?;
    let (n, m) = parse_header(header_no, header)?;
    let edges = parse_edge_lines(&mut lines, n, m, |_| false)?;
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, 1, "trailing content after edge list"));
    }
    Graph::from_edges(n, &edges.iter().map(|&(e, _)| e).collect::<Vec<_>>())
}

pub(crate) fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize)> {
    match parse_usizes(line_no, line)?.as_slice() {
        &[n, m] => Ok((n, m)),
        _ => Err(Error::parse(line_no, 1, "header must be `n m`")),
    }
}

/// Reads edge lines until `stop` accepts a line, which is left unconsumed,
/// or the input ends; fails unless exactly `m` edges were read. Returns the
/// edges with their line numbers.
pub(crate) fn parse_edge_lines<'a, I>(
    lines: &mut std::iter::Peekable<I>,
    n: usize,
    m: usize,
    stop: impl Fn(&str) -> bool,
) -> Result<Vec<(Edge, usize)>>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut edges = Vec::with_capacity(m);
    while let Some(&(no, line)) = lines.peek() {
        if stop(line) {
            break;
        }
        lines.next();
        let vals = parse_usizes(no, line)?;
        let &[u, v] = vals.as_slice() else {
            return Err(Error::parse(no, 1, "edge line must be `u v`"));
        };
        if u >= n || v >= n {
            return Err(Error::parse(no, 1, format!("vertex index out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::parse(no, 1, "self-loop"));
        }
        if edges.iter().any(|&((a, b), _)| (a, b) == crate::graph::edge(u, v)) {
            return Err(Error::parse(no, 1, format!("repeated edge ({u}, {v})")));
        }
        edges.push((crate::graph::edge(u, v), no));
    }
    if edges.len() != m {
        return Err(Error::CountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(edges)
}

// graph6 -------------------------------------------------------------------

fn encode_order(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::parse(1, 1, "empty graph6 input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |i: usize, msg: &str| Error::parse(1, i + 1, msg.to_string());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(i, "byte outside graph6 range 63..=126"));
        }
    }
    let (n, mut pos) = match bytes {
        [] => return Err(bad(0, "missing order")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad(2, "truncated order"));
            }
            (rest[..6].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad(1, "truncated order"));
            }
            (rest[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(bad(
            bytes.len().min(pos + need),
            &format!("expected {need} data bytes for order {n}, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            if (cur >> (5 - bit % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Input format selector shared by the CLI and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

/// Parses with an explicit format, or guesses: graph6 if the first
/// significant line is a single token not made of digits.
pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph> {
    let fmt = format.unwrap_or_else(|| {
        let first = content_lines(text).next().map(|(_, l)| l.trim()).unwrap_or("");
        if !first.is_empty()
            && !first.contains(char::is_whitespace)
            && !first.chars().all(|c| c.is_ascii_digit())
        {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        }
    });
    match fmt {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}
