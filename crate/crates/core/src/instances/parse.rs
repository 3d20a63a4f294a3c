use std::collections::HashSet;

use super::{BipartiteGraph, Hypergraph, InstanceError, MonotoneCnf};

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines<'a>(
    text: &'a str,
    comment: impl Fn(&str) -> bool + 'a,
) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(move |(_, l)| !l.is_empty() && !comment(l))
}

fn numbers(line: usize, s: &str) -> Result<Vec<i64>, InstanceError> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| InstanceError::BadToken { line, token: t.to_string() }))
        .collect()
}

fn header(line: usize, s: &str, fields: usize) -> Result<Vec<usize>, InstanceError> {
    let bad = |detail: String| InstanceError::MalformedHeader { line, detail };
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != fields {
        return Err(bad(format!("expected {fields} fields, found {}", parts.len())));
    }
    parts.iter().map(|t| t.parse::<usize>().map_err(|_| bad(format!("`{t}` is not a count")))).collect()
}

fn check_count(expected: usize, found: usize) -> Result<(), InstanceError> {
    if expected == found {
        Ok(())
    } else {
        Err(InstanceError::CountMismatch { expected, found })
    }
}

/// Parses the `n k` format: a header line then `k` lines of 1-based vertex
/// ids. Lines starting with `#` are comments.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, InstanceError> {
    let mut lines = content_lines(text, |l| l.starts_with('#'));
    let (hline, h) = lines.next().ok_or(InstanceError::MalformedHeader { line: 1, detail: "missing header".into() })?;
    let hdr = header(hline, h, 2)?;
    let (n, k) = (hdr[0], hdr[1]);
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut edge = Vec::new();
        for x in numbers(line, l)? {
            if x < 1 || x as usize > n {
                return Err(InstanceError::VertexOutOfRange { line, vertex: x, max: n });
            }
            edge.push(x as usize - 1);
        }
        edges.push((line, edge));
    }
    check_count(k, edges.len())?;
    if n == 0 {
        return Err(InstanceError::MalformedHeader { line: hline, detail: "vertex count must be positive".into() });
    }
    Hypergraph::with_lines(n, edges)
}

/// Parses the `n1 n2 k` format followed by `k` lines `u v`.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, InstanceError> {
    let mut lines = content_lines(text, |l| l.starts_with('#'));
    let (hline, h) = lines.next().ok_or(InstanceError::MalformedHeader { line: 1, detail: "missing header".into() })?;
    let hdr = header(hline, h, 3)?;
    let (n1, n2, k) = (hdr[0], hdr[1], hdr[2]);
    if n1 == 0 || n2 == 0 {
        return Err(InstanceError::MalformedHeader { line: hline, detail: "part sizes must be positive".into() });
    }
    let mut edges = Vec::new();
    for (line, l) in lines {
        let xs = numbers(line, l)?;
        if xs.len() != 2 {
            return Err(InstanceError::BadToken { line, token: l.to_string() });
        }
        let (u, v) = (xs[0], xs[1]);
        if u < 1 || u as usize > n1 {
            return Err(InstanceError::LeftOutOfRange { line, id: u, max: n1 });
        }
        if v < 1 || v as usize > n2 {
            return Err(InstanceError::RightOutOfRange { line, id: v, max: n2 });
        }
        edges.push((line, (u as usize - 1, v as usize - 1)));
    }
    check_count(k, edges.len())?;
    BipartiteGraph::with_lines(n1, n2, edges)
}

/// Parses DIMACS CNF, accepting only all-positive clauses. Repeated literals
/// inside one clause collapse; repeated clauses are an error.
pub fn parse_dimacs(text: &str) -> Result<MonotoneCnf, InstanceError> {
    let mut lines = content_lines(text, |l| l.starts_with('c') || l.starts_with('%'));
    let (hline, h) =
        lines.next().ok_or(InstanceError::MalformedHeader { line: 1, detail: "missing `p cnf` line".into() })?;
    let parts: Vec<&str> = h.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
        return Err(InstanceError::MalformedHeader { line: hline, detail: "expected `p cnf <vars> <clauses>`".into() });
    }
    let hdr = header(hline, &parts[2..].join(" "), 2)?;
    let (n, k) = (hdr[0], hdr[1]);

    let mut seen = HashSet::new();
    let mut clauses = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut start = None;
    for (line, l) in lines {
        for x in numbers(line, l)? {
            start.get_or_insert(line);
            if x == 0 {
                let clause_line = start.take().unwrap_or(line);
                if current.is_empty() {
                    return Err(InstanceError::EmptyClause { line: clause_line });
                }
                current.sort_unstable();
                current.dedup();
                if !seen.insert(current.clone()) {
                    return Err(InstanceError::DuplicateEdge { line: clause_line });
                }
                clauses.push(std::mem::take(&mut current));
            } else if x < 0 {
                return Err(InstanceError::NonMonotone { line, literal: x });
            } else if x as usize > n {
                return Err(InstanceError::VertexOutOfRange { line, vertex: x, max: n });
            } else {
                current.push(x as usize - 1);
            }
        }
    }
    if !current.is_empty() {
        // a final clause without its terminating 0
        current.sort_unstable();
        current.dedup();
        if !seen.insert(current.clone()) {
            return Err(InstanceError::DuplicateEdge { line: start.unwrap_or(hline) });
        }
        clauses.push(current);
    }
    check_count(k, clauses.len())?;
    MonotoneCnf::new(n, clauses)
}
