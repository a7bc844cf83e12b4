//! Text formats for graphs and actions.
//!
//! Graph files start with `finehyp-graph v1` and contain `v <id> [label]`,
//! `e <id> <id>` and optional `f <id>` lines, the last marking frontier
//! vertices. Action files start with `finehyp-action v1` and contain
//! `gen <letter> <order>`, `fd <vertex>`, `act <letter> <vertex> <vertex>` and
//! `section <vertex> <domain vertex> <word>` lines. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::action::ActionData;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId};
use crate::group::{FreeProduct, GroupElement};

pub const GRAPH_HEADER: &str = "finehyp-graph v1";
pub const ACTION_HEADER: &str = "finehyp-action v1";

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(GRAPH_HEADER);
    out.push('\n');
    for v in g.vertices() {
        match g.label(v) {
            Some(l) if l != v.to_string() => writeln!(out, "v {v} {l}"),
            _ => writeln!(out, "v {v}"),
        }
        .expect("string write");
    }
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u(), e.v()).expect("string write");
    }
    for v in g.vertices().filter(|&v| g.is_frontier(v)) {
        writeln!(out, "f {v}").expect("string write");
    }
    out
}

/// Meaningful lines with their 1-based numbers; checks the header.
fn lines<'a>(text: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>> {
    let mut out = Vec::new();
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != header {
                return Err(Error::parse(i + 1, format!("expected header {header:?}")));
            }
            seen_header = true;
            continue;
        }
        out.push((i + 1, line.split_whitespace().collect()));
    }
    if !seen_header {
        return Err(Error::parse(1, format!("missing header {header:?}")));
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(line: usize, parts: &[&str], i: usize, what: &str) -> Result<T> {
    parts
        .get(i)
        .ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {:?}", parts[i])))
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let lines = lines(text, GRAPH_HEADER)?;
    let mut vertex_line: HashMap<VertexId, usize> = HashMap::new();
    let mut labels: Vec<(VertexId, String)> = Vec::new();
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    let mut frontier: Vec<(usize, VertexId)> = Vec::new();
    for (ln, parts) in &lines {
        let ln = *ln;
        match parts[0] {
            "v" => {
                if parts.len() > 3 {
                    return Err(Error::parse(ln, "vertex line has extra fields"));
                }
                let id: VertexId = field(ln, parts, 1, "vertex id")?;
                if let Some(prev) = vertex_line.insert(id, ln) {
                    return Err(Error::parse(ln, format!("vertex {id} already declared on line {prev}")));
                }
                if let Some(l) = parts.get(2) {
                    labels.push((id, l.to_string()));
                }
            }
            "e" => {
                if parts.len() != 3 {
                    return Err(Error::parse(ln, "edge line needs two vertex ids"));
                }
                edges.push((ln, field(ln, parts, 1, "vertex id")?, field(ln, parts, 2, "vertex id")?));
            }
            "f" => frontier.push((ln, field(ln, parts, 1, "vertex id")?)),
            other => return Err(Error::parse(ln, format!("unknown record {other:?}"))),
        }
    }
    let n = vertex_line.len();
    if n == 0 {
        return Err(Error::parse(1, "graph has no vertices"));
    }
    if let Some((&id, &ln)) = vertex_line.iter().find(|(&id, _)| id >= n) {
        return Err(Error::parse(ln, format!("vertex ids must be 0..{n}, found {id}")));
    }
    let mut b = GraphBuilder::new(n);
    for (id, l) in labels {
        b.set_label(id, l).map_err(|e| Error::parse(vertex_line[&id], e.to_string()))?;
    }
    for (ln, u, v) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(Error::parse(ln, format!("edge uses undeclared vertex {x}")));
            }
        }
        if u == v {
            return Err(Error::parse(ln, format!("loop at vertex {u}")));
        }
        if b.has_edge(u, v) {
            return Err(Error::parse(ln, format!("duplicate edge {u} {v}")));
        }
        b.add_edge(u, v)?;
    }
    for (ln, v) in frontier {
        b.set_frontier(v, true).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    if let Some(v) = b.first_unreachable() {
        return Err(Error::parse(vertex_line[&v], format!("graph is disconnected: vertex {v} is unreachable from vertex 0")));
    }
    b.build().map_err(|e| Error::parse(1, e.to_string()))
}

pub fn write_action(g: &Graph, ad: &ActionData) -> String {
    let mut out = String::new();
    out.push_str(ACTION_HEADER);
    out.push('\n');
    for &(c, p) in ad.group.factors() {
        writeln!(out, "gen {c} {p}").expect("string write");
    }
    for &v in &ad.fundamental_domain {
        writeln!(out, "fd {v}").expect("string write");
    }
    for &(c, _) in ad.group.factors() {
        let map = ad.generator_map(c).expect("declared generator");
        for (v, w) in map.iter().enumerate() {
            if let Some(w) = w {
                writeln!(out, "act {c} {v} {w}").expect("string write");
            }
        }
    }
    for a in g.vertices() {
        writeln!(out, "section {a} {} {}", ad.project_v(a), ad.sigma(a)).expect("string write");
    }
    out
}

/// Reads an action on `g` and validates it.
pub fn read_action(g: &Graph, text: &str) -> Result<ActionData> {
    let lines = lines(text, ACTION_HEADER)?;
    let n = g.num_vertices();
    let mut factors: Vec<(char, u32)> = Vec::new();
    let mut domain = Vec::new();
    let mut acts: Vec<(usize, char, VertexId, VertexId)> = Vec::new();
    let mut sections: Vec<(usize, VertexId, VertexId, String)> = Vec::new();
    let vertex = |ln: usize, parts: &[&str], i: usize| -> Result<VertexId> {
        let v: VertexId = field(ln, parts, i, "vertex id")?;
        if v >= n {
            return Err(Error::parse(ln, format!("unknown vertex {v}")));
        }
        Ok(v)
    };
    let letter = |ln: usize, parts: &[&str]| -> Result<char> {
        let s = parts.get(1).ok_or_else(|| Error::parse(ln, "missing generator"))?;
        let mut cs = s.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(Error::parse(ln, format!("generator {s:?} must be one letter"))),
        }
    };
    for (ln, parts) in &lines {
        let ln = *ln;
        match parts[0] {
            "gen" => factors.push((letter(ln, parts)?, field(ln, parts, 2, "order")?)),
            "fd" => domain.push(vertex(ln, parts, 1)?),
            "act" => acts.push((ln, letter(ln, parts)?, vertex(ln, parts, 2)?, vertex(ln, parts, 3)?)),
            "section" => {
                let word = parts.get(3).ok_or_else(|| Error::parse(ln, "missing section word"))?;
                sections.push((ln, vertex(ln, parts, 1)?, vertex(ln, parts, 2)?, word.to_string()));
            }
            other => return Err(Error::parse(ln, format!("unknown record {other:?}"))),
        }
    }
    let group = FreeProduct::new(&factors)?;
    let mut maps: Vec<Vec<Option<VertexId>>> = vec![vec![None; n]; factors.len()];
    for (ln, c, v, w) in acts {
        let i = factors
            .iter()
            .position(|(d, _)| *d == c)
            .ok_or_else(|| Error::parse(ln, format!("undeclared generator {c}")))?;
        if maps[i][v].replace(w).is_some() {
            return Err(Error::parse(ln, format!("image of {v} under {c} given twice")));
        }
    }
    let mut project: Vec<Option<VertexId>> = vec![None; n];
    let mut sigma: Vec<Option<GroupElement>> = vec![None; n];
    for (ln, a, v, word) in sections {
        if project[a].is_some() {
            return Err(Error::parse(ln, format!("section of {a} given twice")));
        }
        project[a] = Some(v);
        sigma[a] = Some(group.parse(&word).map_err(|e| Error::parse(ln, e.to_string()))?);
    }
    let project = project
        .into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| Error::input(format!("no section line for vertex {a}"))))
        .collect::<Result<Vec<_>>>()?;
    let sigma = sigma.into_iter().map(|s| s.expect("filled with project")).collect();
    ActionData::new(g, group, maps, domain, project, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::bass_serre_tree;

    #[test]
    fn graph_round_trip() {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 1).unwrap();
        b.add_edge(1, 2).unwrap();
        b.set_label(1, "mid").unwrap();
        b.set_frontier(2, true).unwrap();
        let g = b.build().unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "finehyp-graph v1\nv 0\nv 1 mid\nv 2\ne 0 1\ne 1 2\nf 2\n");
        let h = read_graph(&text).unwrap();
        assert_eq!(write_graph(&h), text);
    }

    #[test]
    fn graph_diagnostics_name_the_line() {
        let err = |t: &str| read_graph(t).unwrap_err().to_string();
        assert_eq!(err("finehyp-graph v1\nv 0\nv 1\ne 0 0\n"), "line 4: loop at vertex 0");
        assert_eq!(err("finehyp-graph v1\nv 0\nv 1\ne 0 1\ne 1 0\n"), "line 5: duplicate edge 1 0");
        assert!(err("finehyp-graph v1\nv 0\nv 1\nv 2\ne 0 1\n").starts_with("line 4: graph is disconnected"));
        assert!(err("graph\n").starts_with("line 1"));
    }

    #[test]
    fn action_round_trip() {
        let (g, ad, _) = bass_serre_tree(2, 3, 3, 0).unwrap();
        let text = write_action(&g, &ad);
        let back = read_action(&g, &text).unwrap();
        assert_eq!(write_action(&g, &back), text);
        // Breaking one section is caught.
        let broken = text.replacen("section 1 1 e", "section 1 1 a", 1);
        assert!(matches!(read_action(&g, &broken), Err(Error::Invariant(_))));
    }
}
