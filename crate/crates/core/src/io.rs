//! Edge-list text format.
//!
//! ```text
//! #graph n            then lines `u v`      (u < v)
//! #digraph n          then lines `u > v`
//! #bipartite n m      then lines `i j`      (i in [n], j in [m])
//! #hypergraph n k     then lines `a1 ... ak` (a_t in part t, 1..=n)
//! ```
//!
//! Labels are 1-indexed in the file and 0-indexed in memory. Lines are written
//! in canonical lexicographic order, so `write(parse(s)) == s` for any file
//! this module wrote. An auxiliary graph may be preceded by a provenance line
//! `#aux kind=B|D|H seed=<seed> pi=<images>`.

use std::fmt::Write as _;

use crate::graph::{BipartiteGraph, Digraph, Graph, GraphError, KPartiteHypergraph, Permutation};
use crate::sampling::RandomSeed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeList {
    Graph(Graph),
    Digraph(Digraph),
    Bipartite(BipartiteGraph),
    Hypergraph(KPartiteHypergraph),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    B,
    D,
    H,
}

impl AuxKind {
    fn tag(self) -> &'static str {
        match self {
            AuxKind::B => "B",
            AuxKind::D => "D",
            AuxKind::H => "H",
        }
    }
}

/// Provenance of an auxiliary graph: which reduction, which stream, which π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxHeader {
    pub kind: AuxKind,
    pub seed: RandomSeed,
    pub pi: Permutation,
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("#graph {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("#digraph {}\n", d.n());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{} > {}", u + 1, v + 1);
    }
    out
}

pub fn write_bipartite(b: &BipartiteGraph) -> String {
    let mut out = format!("#bipartite {} {}\n", b.left(), b.right());
    for (i, j) in b.edges() {
        let _ = writeln!(out, "{} {}", i + 1, j + 1);
    }
    out
}

/// Panics if the parts are not all the same size (the format has one `n`).
pub fn write_hypergraph(h: &KPartiteHypergraph) -> String {
    let n = h.uniform_part_size().expect("edge-list format needs equal part sizes");
    let mut out = format!("#hypergraph {} {}\n", n, h.k());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|a| (a + 1).to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn write_edge_list(list: &EdgeList) -> String {
    match list {
        EdgeList::Graph(g) => write_graph(g),
        EdgeList::Digraph(d) => write_digraph(d),
        EdgeList::Bipartite(b) => write_bipartite(b),
        EdgeList::Hypergraph(h) => write_hypergraph(h),
    }
}

pub fn write_aux(header: &AuxHeader, body: &EdgeList) -> String {
    let pi: Vec<String> = header.pi.images().iter().map(|x| (x + 1).to_string()).collect();
    format!(
        "#aux kind={} seed={} pi={}\n{}",
        header.kind.tag(),
        header.seed,
        pi.join(","),
        write_edge_list(body)
    )
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_label(tok: &str, line: usize, size: usize) -> Result<usize, GraphError> {
    let x: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad vertex label `{tok}`")))?;
    if x == 0 || x > size {
        return Err(parse_err(line, format!("label {x} outside 1..={size}")));
    }
    Ok(x - 1)
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

fn parse_aux_header(text: &str) -> Result<AuxHeader, GraphError> {
    let mut kind = None;
    let mut seed = None;
    let mut pi = None;
    for field in text.split_whitespace().skip(1) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("bad aux field `{field}`")))?;
        match key {
            "kind" => {
                kind = Some(match value {
                    "B" => AuxKind::B,
                    "D" => AuxKind::D,
                    "H" => AuxKind::H,
                    _ => return Err(parse_err(1, format!("unknown aux kind `{value}`"))),
                })
            }
            "seed" => seed = Some(value.parse::<RandomSeed>().map_err(|e| parse_err(1, e))?),
            "pi" => {
                let images = if value.is_empty() {
                    Vec::new()
                } else {
                    value
                        .split(',')
                        .map(|x| match x.parse::<usize>() {
                            Ok(v) if v >= 1 => Ok(v - 1),
                            _ => Err(parse_err(1, format!("bad permutation entry `{x}`"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?
                };
                pi = Some(Permutation::from_images(images)?);
            }
            _ => return Err(parse_err(1, format!("unknown aux field `{key}`"))),
        }
    }
    Ok(AuxHeader {
        kind: kind.ok_or_else(|| parse_err(1, "aux header missing kind"))?,
        seed: seed.ok_or_else(|| parse_err(1, "aux header missing seed"))?,
        pi: pi.ok_or_else(|| parse_err(1, "aux header missing pi"))?,
    })
}

/// Parses an edge list, with an optional leading `#aux` line.
pub fn parse_edge_list(text: &str) -> Result<(Option<AuxHeader>, EdgeList), GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (mut lineno, mut header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let aux = if header.starts_with("#aux") {
        let aux = parse_aux_header(header)?;
        (lineno, header) = lines.next().ok_or_else(|| parse_err(2, "missing kind header"))?;
        Some(aux)
    } else {
        None
    };

    let mut head = header
        .strip_prefix('#')
        .ok_or_else(|| parse_err(lineno, "expected `#kind` header"))?
        .split_whitespace();
    let kind = head.next().unwrap_or("");
    let body = lines.filter(|(_, l)| !l.trim().is_empty());

    let list = match kind {
        "graph" => {
            let n = parse_count(head.next(), lineno, "vertex count")?;
            let mut g = Graph::empty(n);
            for (ln, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let [a, b] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `u v`"));
                };
                let (u, v) = (parse_label(a, ln, n)?, parse_label(b, ln, n)?);
                g.try_add_edge(u, v).map_err(|e| parse_err(ln, e.to_string()))?;
            }
            EdgeList::Graph(g)
        }
        "digraph" => {
            let n = parse_count(head.next(), lineno, "vertex count")?;
            let mut d = Digraph::empty(n);
            for (ln, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let [a, ">", b] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `u > v`"));
                };
                let (u, v) = (parse_label(a, ln, n)?, parse_label(b, ln, n)?);
                d.try_add_arc(u, v).map_err(|e| parse_err(ln, e.to_string()))?;
            }
            EdgeList::Digraph(d)
        }
        "bipartite" => {
            let left = parse_count(head.next(), lineno, "left part size")?;
            let right = parse_count(head.next(), lineno, "right part size")?;
            let mut b = BipartiteGraph::empty(left, right);
            for (ln, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let [x, y] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `i j`"));
                };
                b.add_edge(parse_label(x, ln, left)?, parse_label(y, ln, right)?);
            }
            EdgeList::Bipartite(b)
        }
        "hypergraph" => {
            let n = parse_count(head.next(), lineno, "part size")?;
            let k = parse_count(head.next(), lineno, "uniformity")?;
            let mut h = KPartiteHypergraph::empty(k, n);
            for (ln, l) in body {
                let edge = l
                    .split_whitespace()
                    .map(|t| parse_label(t, ln, n))
                    .collect::<Result<Vec<_>, _>>()?;
                if edge.len() != k {
                    return Err(parse_err(ln, format!("expected {k} vertices")));
                }
                h.add_edge(edge)?;
            }
            EdgeList::Hypergraph(h)
        }
        other => return Err(parse_err(lineno, format!("unknown kind `{other}`"))),
    };
    if head.next().is_some() {
        return Err(parse_err(lineno, "trailing tokens in header"));
    }
    Ok((aux, list))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_bipartite, sample_gnp, sample_permutation};
    use proptest::prelude::*;

    #[test]
    fn graph_text_is_canonical() {
        let g = Graph::from_edges(4, &[(2, 0), (1, 3), (0, 1)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "#graph 4\n1 2\n1 3\n2 4\n");
        let (aux, parsed) = parse_edge_list(&text).unwrap();
        assert!(aux.is_none());
        assert_eq!(parsed, EdgeList::Graph(g));
    }

    #[test]
    fn digraph_and_hypergraph_text() {
        let mut d = Digraph::empty(3);
        d.add_arc(2, 0);
        d.add_arc(0, 1);
        assert_eq!(write_digraph(&d), "#digraph 3\n1 > 2\n3 > 1\n");

        let mut h = KPartiteHypergraph::empty(3, 2);
        h.add_edge(vec![1, 0, 1]).unwrap();
        let text = write_hypergraph(&h);
        assert_eq!(text, "#hypergraph 2 3\n2 1 2\n");
        assert_eq!(parse_edge_list(&text).unwrap().1, EdgeList::Hypergraph(h));
    }

    #[test]
    fn aux_header_round_trip() {
        let seed = RandomSeed { root: 5, experiment: 6, trial: 7, object: 8 };
        let header = AuxHeader {
            kind: AuxKind::D,
            seed,
            pi: sample_permutation(5, seed),
        };
        let body = EdgeList::Digraph(Digraph::complete(5));
        let text = write_aux(&header, &body);
        assert!(text.starts_with("#aux kind=D seed=5:6:7:8 pi="));
        let (aux, parsed) = parse_edge_list(&text).unwrap();
        assert_eq!(aux, Some(header));
        assert_eq!(parsed, body);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("#graph 3\n1 1\n").is_err());
        assert!(parse_edge_list("#graph 3\n1 4\n").is_err());
        assert!(parse_edge_list("#graph 3\n0 1\n").is_err());
        assert!(parse_edge_list("#digraph 3\n1 2\n").is_err());
        assert!(parse_edge_list("#hypergraph 2 3\n1 2\n").is_err());
        assert!(parse_edge_list("#tree 3\n").is_err());
        assert!(parse_edge_list("#aux kind=Q seed=1 pi=1\n#graph 1\n").is_err());
        assert!(parse_edge_list("#aux kind=B seed=1 pi=1,1\n#graph 2\n").is_err());
    }

    proptest! {
        #[test]
        fn graph_round_trip_is_bit_exact(n in 1usize..30, p in 0.0f64..=1.0, s in any::<u64>()) {
            let g = sample_gnp(n, p, RandomSeed::new(s)).unwrap();
            let text = write_graph(&g);
            let (_, parsed) = parse_edge_list(&text).unwrap();
            prop_assert_eq!(write_edge_list(&parsed), text);
            prop_assert_eq!(parsed, EdgeList::Graph(g));
        }

        #[test]
        fn bipartite_round_trip_is_bit_exact(l in 1usize..15, r in 1usize..15, s in any::<u64>()) {
            let b = sample_bipartite(l, r, 0.4, RandomSeed::new(s)).unwrap();
            let text = write_bipartite(&b);
            let (_, parsed) = parse_edge_list(&text).unwrap();
            prop_assert_eq!(write_edge_list(&parsed), text);
            prop_assert_eq!(parsed, EdgeList::Bipartite(b));
        }
    }
}
