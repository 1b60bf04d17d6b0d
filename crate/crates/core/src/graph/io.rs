//! Plain-text graph files.
//!
//! Header line `n m`, then `m` lines `u v` with 0-based vertices. In the
//! undirected format `u < v` is required; in the oriented format the line
//! is the arc `u -> v`. Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use super::{Graph, OrientedGraph};
use crate::{Error, Result};

fn parse_pairs(text: &str, require_increasing: bool) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let perr = |line: usize, message: String| Error::Parse { line, message };
    let two_numbers = |line: usize, l: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(perr(line, format!("expected two integers, found {:?}", l)));
        }
        let a = fields[0]
            .parse()
            .map_err(|_| perr(line, format!("invalid integer {:?}", fields[0])))?;
        let b = fields[1]
            .parse()
            .map_err(|_| perr(line, format!("invalid integer {:?}", fields[1])))?;
        Ok((a, b))
    };

    let (header_line, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
    let (n, m) = two_numbers(header_line, header)?;
    if n > Graph::MAX_ORDER {
        return Err(perr(header_line, format!("order {n} exceeds the limit of {}", Graph::MAX_ORDER)));
    }

    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = header_line;
    for (line, l) in lines {
        last_line = line;
        if pairs.len() == m {
            return Err(perr(line, format!("more than the declared {m} edges")));
        }
        let (u, v) = two_numbers(line, l)?;
        if u >= n || v >= n {
            return Err(perr(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(perr(line, format!("loop at vertex {u}")));
        }
        if require_increasing && u >= v {
            return Err(perr(line, format!("expected u < v, found {u} {v}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(perr(line, format!("duplicate edge {u} {v}")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(perr(last_line, format!("declared {m} edges, found {}", pairs.len())));
    }
    Ok((n, pairs))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, pairs) = parse_pairs(text, true)?;
    Graph::new(n, pairs)
}

pub fn parse_oriented(text: &str) -> Result<OrientedGraph> {
    let (n, pairs) = parse_pairs(text, false)?;
    OrientedGraph::from_arcs(n, pairs)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_oriented(og: &OrientedGraph) -> String {
    let mut out = format!("{} {}\n", og.n(), og.base().m());
    for (t, h) in og.arcs() {
        writeln!(out, "{t} {h}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_arcs() {
        let og = parse_oriented("# oddly oriented C4\n4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
        assert_eq!(og.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("3 2\n0 1\n2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_graph("# c\n3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_oriented("2 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_oriented("2 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_graph("").is_err());
    }

    fn arb_oriented() -> impl Strategy<Value = OrientedGraph> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(0u8..3, k))
        })
        .prop_map(|(n, pairs, pick)| {
            let arcs = pairs.into_iter().zip(pick).filter_map(|((u, v), p)| match p {
                0 => None,
                1 => Some((u, v)),
                _ => Some((v, u)),
            });
            OrientedGraph::from_arcs(n, arcs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn write_then_read_is_identity(og in arb_oriented()) {
            prop_assert_eq!(&parse_oriented(&write_oriented(&og)).unwrap(), &og);
            prop_assert_eq!(&parse_graph(&write_graph(og.base())).unwrap(), og.base());
        }
    }
}
